"""Finite etale spaces over finite (hence discrete) base spaces.

A finite Hausdorff space is discrete, so a finite Boolean space carries no
extra data beyond its point set and every surjection of finite sets is a
surjective local homeomorphism; topology is implicit throughout, which is
recorded here because it collapses the Hausdorff distinction of the
meets-vs-Hausdorff correspondence at desk scale.

Sections are represented as subsets of the total space with injective
projection, so the restriction and join constructions are literal set
operations (intersection with a fiber preimage, union with a complement
restriction).
"""

from dataclasses import dataclass, field
from itertools import product

from . import balg, bset
from .errors import (
    FiberViolation,
    NotCompatible,
    NotCovering,
    NotNested,
    NotSurjective,
)


class FinEtaleSpace:
    """Surjection p: E -> X of finite sets with a stalk index."""

    def __init__(self, total, base, proj):
        self.total = total
        self.base = base
        self.proj = proj
        self.fibers = {
            x: tuple(e for e in total if proj[e] == x) for x in base
        }

    def __repr__(self):
        return f"<FinEtaleSpace {len(self.total)} over {len(self.base)}>"

    def p(self, e):
        return self.proj[e]


def validate_etale(total, base, proj):
    total = tuple(str(e) for e in total)
    base = tuple(str(x) for x in base)
    if len(set(total)) != len(total) or len(set(base)) != len(base):
        raise ValueError("duplicate ids")
    for e in total:
        if e not in proj:
            raise ValueError(f"projection not total: missing {e!r}")
        if proj[e] not in base:
            raise ValueError(f"projection image {proj[e]!r} not a base point")
    image = {proj[e] for e in total}
    for x in base:
        if x not in image:
            raise NotSurjective((x,))
    return FinEtaleSpace(total, base, {e: proj[e] for e in total})


@dataclass(frozen=True)
class LocalSection:
    """Subset of the total space on which the projection is injective."""

    space: FinEtaleSpace = field(compare=False)
    members: frozenset = field()

    @property
    def footprint(self):
        """The base set this section is over."""
        return frozenset(self.space.proj[e] for e in self.members)

    @property
    def ident(self):
        sp = self.space
        return "{" + ",".join(e for e in sp.total if e in self.members) + "}"

    def over(self, x):
        """The unique member over base point x."""
        for e in self.members:
            if self.space.proj[e] == x:
                return e
        raise KeyError(x)

    def __repr__(self):
        return f"Section({self.ident})"


def make_section(space, members):
    members = frozenset(members)
    seen = {}
    for e in members:
        x = space.proj[e]
        if x in seen:
            raise ValueError(f"not a section: {seen[x]!r} and {e!r} share fiber {x!r}")
        seen[x] = e
    return LocalSection(space, members)


def sections_over(sp, A):
    """All sections over the base subset A: one fiber choice per point.

    Deterministic order: the product of fiber choices, points in base order.
    The empty subset yields the single empty section.
    """
    points = [x for x in sp.base if x in frozenset(A)]
    out = []
    for choice in product(*(sp.fibers[x] for x in points)):
        out.append(LocalSection(sp, frozenset(choice)))
    return tuple(out)


def construct_section(sp, A):
    """The lexicographically least transversal over A."""
    points = [x for x in sp.base if x in frozenset(A)]
    return LocalSection(sp, frozenset(sp.fibers[x][0] for x in points))


def all_sections(sp):
    """Every local section, ordered by base-subset bitmask then fiber choice."""
    n = len(sp.base)
    out = []
    for mask in range(1 << n):
        A = frozenset(sp.base[i] for i in range(n) if mask >> i & 1)
        out.extend(sections_over(sp, A))
    return tuple(out)


def restrict_section(C, A, B):
    """C|^A_B = C ∩ p^{-1}(B), for B ⊆ A = p(C)."""
    A, B = frozenset(A), frozenset(B)
    if C.footprint != A:
        raise NotNested(tuple(sorted(A ^ C.footprint)), detail="A is not the footprint of C")
    if not B <= A:
        raise NotNested(tuple(sorted(B - A)))
    return LocalSection(C.space, frozenset(e for e in C.members if C.space.proj[e] in B))


def sections_compatible(a, b):
    """Compatibility in the dual order: greatest common restriction projects
    onto the footprint intersection, which means agreement on the overlap."""
    overlap = a.footprint & b.footprint
    agree = frozenset(
        x for x in overlap if a.over(x) == b.over(x)
    )
    return agree == overlap


def join_sections(a, b):
    """a ∨ b = a ∪ b|_{p(b) \\ p(a)}; checked equal to the least upper bound."""
    sp = a.space
    if not sections_compatible(a, b):
        bad = next(
            x for x in a.footprint & b.footprint if a.over(x) != b.over(x)
        )
        raise NotCompatible((a.ident, b.ident, bad))
    tail = frozenset(e for e in b.members if sp.proj[e] not in a.footprint)
    c = LocalSection(sp, a.members | tail)
    if __debug__:
        ubs = [
            s for s in all_sections(sp)
            if _section_leq(a, s) and _section_leq(b, s)
        ]
        least = [s for s in ubs if all(_section_leq(s, t) for t in ubs)]
        assert least == [c], (a, b, least)
    return c


def _section_leq(s, t):
    # s = t restricted to p(s); for sections that is plain containment,
    # since t holds at most one point per base point
    return s.members <= t.members


def dual_bset(sp):
    """The Boolean set of sections over the powerset algebra of the base.

    All subsets of a finite discrete space are compact-open.  The returned
    Boolean set carries ``sections`` (element id -> member frozenset) and
    ``space`` attributes for downstream use.  Cached per space so repeated
    dualizations share one object.
    """
    try:
        return sp._dual
    except AttributeError:
        pass
    base_alg, id_of, set_of = balg.powerset_balg(sp.base, balg.render_braces(sp.base))
    stalks = {}
    members = {}
    for eid, A in set_of.items():
        secs = sections_over(sp, A)
        stalks[eid] = tuple(s.ident for s in secs)
        for s in secs:
            members[s.ident] = s.members
    restrictions = {}
    for upper, lower in base_alg.cover_pairs:
        B = set_of[lower]
        m = {}
        for sid in stalks[upper]:
            kept = frozenset(e for e in members[sid] if sp.proj[e] in B)
            m[sid] = "{" + ",".join(e for e in sp.total if e in kept) + "}"
        restrictions[(upper, lower)] = m
    P = bset.validate_presheaf(base_alg, stalks, restrictions)
    X = bset.validate_boolean_set(P)
    X.sections = members
    X.space = sp
    X.base_sets = set_of
    sp._dual = X
    return X


# ------------------------------------------------------ relational morphisms

@dataclass(eq=False)
class RelationalMorphism:
    """Set-valued fiber-respecting map with computed flags.

    Continuity and properness are identically true for finite discrete
    spaces and recorded as constants so reports state what was computed.
    """

    source: FinEtaleSpace
    target: FinEtaleSpace
    phi: dict
    phibar: dict
    locally_injective: bool
    locally_surjective: bool
    partial_map: bool
    continuous: bool = True
    proper: bool = True

    @property
    def covering(self):
        return self.locally_injective and self.locally_surjective


def validate_relational_morphism(phi, phibar, sp, tq):
    """Check the fiber condition and compute the morphism flags.

    Locally surjective uses the strong reading: for every target point y and
    every base point e with q(y) = phibar(e) there is x over e with y in
    phi(x).
    """
    for x in sp.base:
        if x not in phibar or phibar[x] not in tq.base:
            raise ValueError(f"base map not total at {x!r}")
    norm = {}
    for e in sp.total:
        if e not in phi:
            raise ValueError(f"phi not total: missing {e!r}")
        img = frozenset(phi[e])
        for f in img:
            if f not in tq.proj:
                raise ValueError(f"phi({e!r}) contains unknown point {f!r}")
        norm[e] = img
    for e in sp.total:
        want = phibar[sp.proj[e]]
        for f in norm[e]:
            if tq.proj[f] != want:
                raise FiberViolation((e,), detail=f"{f!r} lies over {tq.proj[f]!r}, not {want!r}")

    inj = True
    for x in sp.base:
        fib = sp.fibers[x]
        for i, e1 in enumerate(fib):
            for e2 in fib[i + 1:]:
                if norm[e1] & norm[e2]:
                    inj = False
    surj = True
    for e in sp.base:
        for y in tq.fibers[phibar[e]]:
            if not any(y in norm[x] for x in sp.fibers[e]):
                surj = False
    partial = all(len(norm[e]) <= 1 for e in sp.total)
    return RelationalMorphism(sp, tq, norm, dict(phibar), inj, surj, partial)


def identity_relational(sp):
    return validate_relational_morphism(
        {e: {e} for e in sp.total}, {x: x for x in sp.base}, sp, sp
    )


def compose_relational(psi, phi):
    """(psi ∘ phi)(x) = union of psi over phi(x)."""
    assert phi.target is psi.source
    out = {
        e: frozenset(z for f in phi.phi[e] for z in psi.phi[f])
        for e in phi.source.total
    }
    bar = {x: psi.phibar[phi.phibar[x]] for x in phi.source.base}
    return validate_relational_morphism(out, bar, phi.source, psi.target)


def relational_eq(f, g):
    return f.phi == g.phi and f.phibar == g.phibar


def require_covering(rm):
    if not rm.covering:
        kind = "locally injective" if not rm.locally_injective else "locally surjective"
        raise NotCovering((), detail=f"not {kind}")
    return rm


def etale_struct_eq(S, T):
    return (
        set(S.total) == set(T.total)
        and set(S.base) == set(T.base)
        and S.proj == T.proj
    )


def enumerate_covering_relational(sp, tq):
    """All covering relational morphisms sp -> tq.

    Per base point, a covering morphism is exactly a function from the target
    fiber over the image point back to the source fiber (each target point is
    claimed by one source point); enumerate base maps, then those functions.
    """
    for bar_choice in product(tq.base, repeat=len(sp.base)):
        phibar = dict(zip(sp.base, bar_choice))
        per_point = []
        for e in sp.base:
            src = sp.fibers[e]
            dst = tq.fibers[phibar[e]]
            per_point.append([dict(zip(dst, owners)) for owners in product(src, repeat=len(dst))])
        for combo in product(*per_point):
            phi = {x: set() for x in sp.total}
            for claims in combo:
                for y, owner in claims.items():
                    phi[owner].add(y)
            rm = validate_relational_morphism(phi, phibar, sp, tq)
            if rm.covering:
                yield rm
