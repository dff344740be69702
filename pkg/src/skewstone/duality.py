"""The two contravariant dualization functors and their round trips.

One direction sends a Boolean set to the etale space of its ultrafilters
over the ultrafilters of the base; the other sends an etale space to the
Boolean set of its sections over the powerset of the base.  Both double-dual
comparison maps are constructed and verified to be isomorphisms, morphisms
are dualized in both directions, and the meets/Hausdorff and
meet-preservation/partial-map correspondences are computed with both sides
evaluated independently.

Base ultrafilters are represented by their atoms in the finite case, but all
logic here goes through the FilterSet interface so the computations mirror
the filter-theoretic constructions rather than the atom shortcut.
"""

from dataclasses import dataclass, field

from . import balg, bset, etale
from .errors import NoBinaryMeets, NotProper
from .report import CheckItem, Report


@dataclass(frozen=True)
class BSetUltrafilter:
    """Ultrafilter of a Boolean set: a conjugacy class over a base ultrafilter."""

    bset: "bset.BooleanSet" = field(compare=False)
    members: frozenset = field()
    base_filter: balg.FilterSet = field(compare=False)
    ident: str = field(compare=False)

    def __contains__(self, x):
        return x in self.members

    def __repr__(self):
        return f"Ultra({self.ident})"


def bset_ultrafilters(X):
    """All ultrafilters of X, grouped by base ultrafilter.

    For each base ultrafilter F, the preimage of F is partitioned into
    conjugacy classes (sharing a lower bound whose projection lies in F);
    the classes are checked to be disjoint prime filters projecting onto F.
    """
    try:
        return X._ultra
    except AttributeError:
        pass
    out = []
    for F in X.base.ultrafilters():
        pre = [x for x in X.elements if X.p(x) in F.members]
        rel = {}
        for a in pre:
            for b in pre:
                rel[a, b] = any(
                    X.leq_elem(c, a) and X.leq_elem(c, b) for c in pre
                )
        for a in pre:
            assert rel[a, a]
            for b in pre:
                assert rel[a, b] == rel[b, a]
                for c in pre:
                    assert not (rel[a, b] and rel[b, c]) or rel[a, c], (a, b, c)
        seen = set()
        classes = []
        for a in pre:
            if a in seen:
                continue
            cls = frozenset(b for b in pre if rel[a, b])
            seen |= cls
            classes.append(cls)
        for cls in classes:
            rep = next(x for x in X.elements if x in cls)
            atom = F.generator
            u = BSetUltrafilter(X, cls, F, f"[{rep}]@{atom}")
            _assert_is_ultrafilter(X, u, pre)
            out.append(u)
        for i, c in enumerate(classes):
            for d in classes[i + 1:]:
                assert not (c & d)
    X._ultra = tuple(out)
    return X._ultra


def _assert_is_ultrafilter(X, u, preimage):
    F = u.base_filter
    assert {X.p(x) for x in u.members} == F.members
    for x in u.members:
        for y in X.elements:
            if X.leq_elem(x, y):
                assert y in u.members, (x, y)
    for x in u.members:
        for y in u.members:
            assert any(
                X.leq_elem(c, x) and X.leq_elem(c, y) for c in u.members
            ), (x, y)
    # primeness: a compatible join lands in u only through one of its parts
    for x in X.elements:
        for y in X.elements:
            if X.compatible_elems(x, y) and X.join(x, y) in u.members:
                assert x in u.members or y in u.members, (x, y)


def ultrafilters_containing(X, a):
    """The ultrafilters of X containing the element a."""
    return tuple(u for u in bset_ultrafilters(X) if a in u)


def bset_to_etale(X):
    """Etale space of ultrafilters over the base's ultrafilters.

    Base points are named by the generating atom of each base ultrafilter;
    the returned space carries ``points`` (id -> BSetUltrafilter) and
    ``base_filters`` (id -> FilterSet) indexes.  Cached per Boolean set.
    """
    try:
        return X._etale
    except AttributeError:
        pass
    ultras = bset_ultrafilters(X)
    base_filters = {F.generator: F for F in X.base.ultrafilters()}
    total = tuple(u.ident for u in ultras)
    proj = {u.ident: u.base_filter.generator for u in ultras}
    sp = etale.validate_etale(total, tuple(base_filters), proj)
    sp.points = {u.ident: u for u in ultras}
    sp.base_filters = base_filters
    X._etale = sp
    return sp


# -------------------------------------------------------------- double duals

def bset_double_dual(X):
    """The comparison isomorphism from X onto the section set of its dual.

    Elements map to the set of ultrafilters containing them, base elements
    to their Stone map image; the result is validated as a Boolean-set
    morphism and checked bijective with morphism inverse.
    """
    sp = bset_to_etale(X)
    D = etale.dual_bset(sp)
    phi = {}
    for a in X.elements:
        pts = frozenset(u.ident for u in ultrafilters_containing(X, a))
        phi[a] = "{" + ",".join(e for e in sp.total if e in pts) + "}"
    phibar = {}
    for e in X.base.elements:
        atoms = frozenset(F.generator for F in X.base.stone_map(e))
        phibar[e] = "{" + ",".join(x for x in sp.base if x in atoms) + "}"
    m = bset.validate_bset_morphism(phi, phibar, X, D)
    assert len(set(phi.values())) == len(D.elements) == len(X.elements)
    inverse = {v: k for k, v in phi.items()}
    inv_bar = {v: k for k, v in phibar.items()}
    bset.validate_bset_morphism(inverse, inv_bar, D, X)
    return m


@dataclass(eq=False)
class EtaleIso:
    """Bijection pair commuting with the projections."""

    source: etale.FinEtaleSpace
    target: etale.FinEtaleSpace
    point_map: dict
    base_map: dict

    def as_relational(self):
        return etale.validate_relational_morphism(
            {e: {self.point_map[e]} for e in self.source.total},
            dict(self.base_map),
            self.source,
            self.target,
        )


def _validate_etale_iso(iso):
    sp, tq = iso.source, iso.target
    assert sorted(iso.point_map) == sorted(sp.total)
    assert sorted(iso.point_map.values()) == sorted(tq.total)
    assert sorted(iso.base_map) == sorted(sp.base)
    assert sorted(iso.base_map.values()) == sorted(tq.base)
    for e in sp.total:
        assert tq.proj[iso.point_map[e]] == iso.base_map[sp.proj[e]], e
    return iso


def etale_double_dual(sp):
    """The comparison isomorphism from a space onto the ultrafilter space of
    its section set: a point maps to the class of sections through it, a
    base point to the singleton subset naming its principal ultrafilter."""
    D = etale.dual_bset(sp)
    sp2 = bset_to_etale(D)
    point_map = {}
    for a in sp.total:
        through = frozenset(sid for sid, mem in D.sections.items() if a in mem)
        matches = [u.ident for u in sp2.points.values() if u.members == through]
        assert len(matches) == 1, (a, through)
        point_map[a] = matches[0]
    base_map = {x: "{" + x + "}" for x in sp.base}
    return _validate_etale_iso(EtaleIso(sp, sp2, point_map, base_map))


# --------------------------------------------------------- morphism dualization

def dual_of_relational(rm):
    """Dualize a covering relational morphism to a section-level morphism,
    contravariantly: a section pulls back to the points whose image meets it,
    a base subset pulls back along the base map."""
    etale.require_covering(rm)
    sp, tq = rm.source, rm.target
    DS, DT = etale.dual_bset(sp), etale.dual_bset(tq)
    phi = {}
    for sid in DT.elements:
        x = DT.sections[sid]
        pre = frozenset(e for e in sp.total if rm.phi[e] & x)
        phi[sid] = "{" + ",".join(e for e in sp.total if e in pre) + "}"
    phibar = {}
    for aid in DT.base.elements:
        A = DT.base_sets[aid]
        pre = frozenset(e for e in sp.base if rm.phibar[e] in A)
        phibar[aid] = "{" + ",".join(x for x in sp.base if x in pre) + "}"
    return bset.validate_bset_morphism(phi, phibar, DT, DS)


def dual_of_bset_morphism(m):
    """Dualize a Boolean-set morphism to a covering relational morphism
    between the ultrafilter spaces, contravariantly.

    An ultrafilter G of the target maps to the set of source ultrafilters
    contained in the elementwise preimage of G; the base map is the preimage
    of base ultrafilters, which needs the base hom to be proper.
    """
    if not balg.is_proper_hom(m.base_hom):
        wit = next(
            t for t in m.target.base.elements
            if not any(m.target.base.leq(t, v) for v in m.base_hom.mapping.values())
        )
        raise NotProper((wit,))
    X, Y = m.source, m.target
    spx, spy = bset_to_etale(X), bset_to_etale(Y)
    phibar = {}
    for F in Y.base.ultrafilters():
        pre = frozenset(
            e for e in X.base.elements if m.base_hom.mapping[e] in F.members
        )
        assert X.base.is_filter(pre), F
        matches = [G.generator for G in X.base.ultrafilters() if G.members == pre]
        assert len(matches) == 1, (F, pre)
        phibar[F.generator] = matches[0]
    phi = {}
    for u in bset_ultrafilters(Y):
        pre = frozenset(x for x in X.elements if m.mapping[x] in u.members)
        fprime = phibar[u.base_filter.generator]
        # the preimage is a union of conjugacy classes over the pulled-back
        # base ultrafilter: any class meeting it is contained in it
        for v in bset_ultrafilters(X):
            if v.base_filter.generator == fprime and v.members & pre:
                assert v.members <= pre, (u.ident, v.ident)
        images = frozenset(
            v.ident for v in bset_ultrafilters(X) if v.members <= pre
        )
        phi[u.ident] = images
    rm = etale.validate_relational_morphism(phi, phibar, spy, spx)
    assert rm.covering, "dual of a Boolean-set morphism must be covering"
    return rm


# ----------------------------------------------------- correspondence checks

def has_binary_meets(X):
    return X.has_binary_meets


def dual_is_hausdorff(X):
    """Hausdorffness of the ultrafilter space under the topology generated
    by the sets of ultrafilters through each element.

    Two points are separated iff some pair of disjoint basic opens contains
    them (unions of basics cannot separate when no basics do), so pairwise
    basic separation is the honest full check.
    """
    ultras = bset_ultrafilters(X)
    basic = {a: frozenset(u.ident for u in ultrafilters_containing(X, a)) for a in X.elements}
    for i, g in enumerate(ultras):
        for h in ultras[i + 1:]:
            if not any(
                g.ident in basic[a] and h.ident in basic[b] and not (basic[a] & basic[b])
                for a in X.elements for b in X.elements
            ):
                return False
    return True


@dataclass
class MeetHausdorffReport:
    has_meets: bool
    dual_hausdorff: bool

    @property
    def equivalent(self):
        return self.has_meets == self.dual_hausdorff

    def __str__(self):
        return (
            f"binary meets: {self.has_meets}; dual Hausdorff: {self.dual_hausdorff}; "
            f"equivalence {'holds' if self.equivalent else 'FAILS'}"
        )


def check_meets_vs_hausdorff(X):
    """Both sides of the meets/Hausdorff correspondence, computed honestly.

    At finite scale both values are always true (every finite Boolean set
    has binary meets and every finite dual is discrete), so the report
    records what was computed rather than a vacuous implication.
    """
    return MeetHausdorffReport(has_binary_meets(X), dual_is_hausdorff(X))


@dataclass
class MeetPartialReport:
    preserves_meets: bool
    dual_partial_map: bool

    @property
    def equivalent(self):
        return self.preserves_meets == self.dual_partial_map

    def __str__(self):
        return (
            f"meet-preserving: {self.preserves_meets}; dual partial map: "
            f"{self.dual_partial_map}; equivalence {'holds' if self.equivalent else 'FAILS'}"
        )


def check_meet_partial_correspondence(m):
    """Meet preservation of the morphism versus partiality of its dual,
    both sides computed independently (meets by exhaustive pair scan)."""
    X, Y = m.source, m.target
    if not X.has_binary_meets or not Y.has_binary_meets:
        raise NoBinaryMeets(())
    preserves = all(
        m.mapping[X.meet_elem(x, y)] == Y.meet_elem(m.mapping[x], m.mapping[y])
        for x in X.elements for y in X.elements
    )
    dual = dual_of_bset_morphism(m)
    return MeetPartialReport(preserves, dual.partial_map)


# ----------------------------------------------------------------- functor laws

def check_functor_laws_bset(f, g):
    """Identity and composition laws for dualizing Boolean-set morphisms
    f: X -> Y and g: Y -> Z, plus the double-dual naturality squares."""
    X, Y, Z = f.source, f.target, g.target
    items = []

    for name, obj in (("X", X), ("Y", Y), ("Z", Z)):
        d = dual_of_bset_morphism(bset.identity_bset_morphism(obj))
        ident = etale.identity_relational(bset_to_etale(obj))
        items.append(CheckItem(f"dual_identity_{name}", etale.relational_eq(d, ident)))

    gf = bset.compose_bset_morphisms(g, f)
    lhs = dual_of_bset_morphism(gf)
    rhs = etale.compose_relational(dual_of_bset_morphism(f), dual_of_bset_morphism(g))
    items.append(CheckItem("dual_composition", etale.relational_eq(lhs, rhs)))

    for name, m in (("f", f), ("g", g), ("gf", gf)):
        dd = dual_of_relational(dual_of_bset_morphism(m))
        left = bset.compose_bset_morphisms(dd, bset_double_dual(m.source))
        right = bset.compose_bset_morphisms(bset_double_dual(m.target), m)
        items.append(CheckItem(f"naturality_{name}", bset.bset_morphism_eq(left, right)))
    return Report(items)


def check_functor_laws_relational(chi, psi):
    """Identity and composition laws for dualizing relational covering
    morphisms chi: S -> T and psi: T -> U, plus the etale-side naturality."""
    S, T, U = chi.source, chi.target, psi.target
    items = []

    for name, sp in (("S", S), ("T", T), ("U", U)):
        d = dual_of_relational(etale.identity_relational(sp))
        ident = bset.identity_bset_morphism(etale.dual_bset(sp))
        items.append(CheckItem(f"dual_identity_{name}", bset.bset_morphism_eq(d, ident)))

    pc = etale.compose_relational(psi, chi)
    lhs = dual_of_relational(pc)
    rhs = bset.compose_bset_morphisms(dual_of_relational(chi), dual_of_relational(psi))
    items.append(CheckItem("dual_composition", bset.bset_morphism_eq(lhs, rhs)))

    for name, rm in (("chi", chi), ("psi", psi), ("psi_chi", pc)):
        dd = dual_of_bset_morphism(dual_of_relational(rm))
        left = etale.compose_relational(dd, etale_double_dual(rm.source).as_relational())
        right = etale.compose_relational(etale_double_dual(rm.target).as_relational(), rm)
        items.append(CheckItem(f"naturality_{name}", etale.relational_eq(left, right)))
    return Report(items)


# ----------------------------------------------- dual-space topology suite

def check_topology(X):
    """The ten properties of the section topology of the dual space, checked
    exhaustively: the sets of ultrafilters through elements form a base,
    respect meets/joins/order, are sections, project onto Stone map images,
    are compact (finite guard), and exhaust the local sections of the dual.
    """
    sp = bset_to_etale(X)
    L = {a: frozenset(u.ident for u in ultrafilters_containing(X, a)) for a in X.elements}
    items = []

    def add(law, ok, witness=()):
        items.append(CheckItem(law, ok, witness))

    ok, wit = True, ()
    for a in X.elements:
        for b in X.elements:
            common = L[a] & L[b]
            for gid in common:
                if not any(gid in L[c] and L[c] <= common for c in X.elements):
                    ok, wit = False, (a, b, gid)
    add("base_for_topology", ok, wit)

    ok, wit = True, ()
    for a in X.elements:
        for b in X.elements:
            m = X.meet_elem(a, b)
            if m is not None and L[m] != L[a] & L[b]:
                ok, wit = False, (a, b)
    add("meet_is_intersection", ok, wit)

    ok, wit = True, ()
    for a in X.elements:
        for b in X.elements:
            if (L[a] == L[b]) != (a == b):
                ok, wit = False, (a, b)
    add("injective_on_elements", ok, wit)

    ok, wit = True, ()
    for a in X.elements:
        for b in X.elements:
            if (L[a] <= L[b]) != X.leq_elem(a, b):
                ok, wit = False, (a, b)
    add("order_reflecting", ok, wit)

    ok, wit = True, ()
    for a in X.elements:
        if len({sp.proj[g] for g in L[a]}) != len(L[a]):
            ok, wit = False, (a,)
    add("is_local_section", ok, wit)

    ok, wit = True, ()
    for a in X.elements:
        for b in X.elements:
            if X.compatible_elems(a, b) and L[X.join(a, b)] != L[a] | L[b]:
                ok, wit = False, (a, b)
    add("join_is_union", ok, wit)

    ok, wit = True, ()
    for a in X.elements:
        for b in X.elements:
            union = L[a] | L[b]
            is_section = len({sp.proj[g] for g in union}) == len(union)
            if is_section and not X.compatible_elems(a, b):
                ok, wit = False, (a, b)
    add("union_section_implies_compatible", ok, wit)

    ok, wit = True, ()
    for a in X.elements:
        proj_img = frozenset(sp.proj[g] for g in L[a])
        stone = frozenset(F.generator for F in X.base.stone_map(X.p(a)))
        if proj_img != stone:
            ok, wit = False, (a,)
    add("projects_onto_stone_image", ok, wit)

    # compactness of each point set: tautological at finite scale, recorded
    # as the guard that the dual has finitely many points
    add("compact", isinstance(len(sp.total), int))

    ok, wit = True, ()
    lsets = set(L.values())
    for s in etale.all_sections(sp):
        if s.members not in lsets:
            ok, wit = False, (s.ident,)
    add("sections_exhausted", ok, wit)
    return Report(items)
