"""Right-hand skew Boolean algebras as double Cayley tables.

A carrier with two band operations (circ, bullet) and a zero, axiom-checked
exhaustively: both operations are bands, the absorption identities tie them
together, commutation in one operation is equivalent to commutation in the
other, zero annihilates circ, and every principal down-set
``x↓ = {x∘s∘x : s}`` is a unital Boolean algebra under the natural order
(validated through :mod:`skewstone.balg`).  Axiom checking is O(n^3) over
triples with early exit; intended feasible bound about 512 elements.
"""

from dataclasses import dataclass

from . import balg
from .errors import (
    NoBinaryMeets,
    NotABand,
    NotAMorphism,
    QuotientNotBoolean,
    SkewAxiomViolation,
    StructureError,
)
from .report import CheckItem, Report


class SkewAlgebra:
    """Validated right-hand skew Boolean algebra.

    ``circ`` and ``bullet`` are index matrices in element order.  Immutable
    after validation; all derived structure (natural order, principal
    down-set algebras, the gamma quotient) is cached.
    """

    def __init__(self, elements, index, circ, bullet, zero_i):
        self.elements = elements
        self.index = index
        self.circ_t = circ
        self.bullet_t = bullet
        self._zero_i = zero_i

    def __repr__(self):
        return f"<SkewAlgebra {len(self.elements)} elements>"

    @property
    def zero(self):
        return self.elements[self._zero_i]

    def circ(self, x, y):
        return self.elements[self.circ_t[self.index[x]][self.index[y]]]

    def bullet(self, x, y):
        return self.elements[self.bullet_t[self.index[x]][self.index[y]]]

    def leq(self, x, y):
        """Natural partial order: x <= y iff x = x∘y."""
        i, j = self.index[x], self.index[y]
        return self.circ_t[i][j] == i

    def down_closure(self, x):
        """x↓ = {x∘s∘x : s}, in element order."""
        i = self.index[x]
        circ = self.circ_t
        seen = sorted({circ[circ[i][s]][i] for s in range(len(self.elements))})
        return tuple(self.elements[k] for k in seen)

    def down_algebra(self, x):
        """x↓ as a validated unital Boolean algebra under the natural order."""
        try:
            cache = self._down_algs
        except AttributeError:
            cache = self._down_algs = {}
        if x not in cache:
            members = self.down_closure(x)
            pairs = [(u, v) for u in members for v in members if self.leq(u, v)]
            cache[x] = balg.validate_balg(members, pairs, self.zero)
        return cache[x]


def _band_check(elements, table, op):
    n = len(elements)
    for i in range(n):
        if table[i][i] != i:
            raise NotABand((elements[i],), op, "idempotent")
    for i in range(n):
        ti = table[i]
        for j in range(n):
            tij = table[ti[j]]
            tj = table[j]
            for k in range(n):
                if tij[k] != ti[tj[k]]:
                    raise NotABand((elements[i], elements[j], elements[k]), op, "assoc")


def _as_index_table(elements, index, rows, what):
    n = len(elements)
    if len(rows) != n:
        raise ValueError(f"{what} table needs {n} rows, got {len(rows)}")
    out = []
    for r, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"{what} row {elements[r]!r} needs {n} entries")
        try:
            out.append([index[v] for v in row])
        except KeyError as k:
            raise ValueError(f"{what} entry {k.args[0]!r} is not an element") from None
    return out


def validate_skew(elements, circ_table, bullet_table, zero):
    """Check SB1 through SB5 exhaustively and return the validated algebra.

    Tables are row-major in element order.  On failure the diagnostic names
    the violated axiom with a witness tuple; the SB5 check materializes each
    x↓ and validates it as a unital Boolean algebra under the natural order.
    """
    elements, index = balg._index_elements(elements)
    if zero not in index:
        raise ValueError(f"zero {zero!r} is not an element")
    circ = _as_index_table(elements, index, circ_table, "circ")
    bullet = _as_index_table(elements, index, bullet_table, "bullet")
    n = len(elements)
    z = index[zero]

    _band_check(elements, circ, "circ")
    _band_check(elements, bullet, "bullet")

    for i in range(n):
        for j in range(n):
            if circ[i][bullet[i][j]] != i or circ[bullet[j][i]][i] != i:
                raise SkewAxiomViolation("SB1", (elements[i], elements[j]))
            if bullet[i][circ[i][j]] != i or bullet[circ[j][i]][i] != i:
                raise SkewAxiomViolation("SB1", (elements[i], elements[j]))

    for i in range(n):
        for j in range(n):
            if circ[circ[i][j]][i] != circ[j][i]:
                raise SkewAxiomViolation("SB2", (elements[i], elements[j]))
            if bullet[bullet[i][j]][i] != bullet[i][j]:
                raise SkewAxiomViolation("SB2", (elements[i], elements[j]))

    for i in range(n):
        for j in range(n):
            if (bullet[i][j] == bullet[j][i]) != (circ[i][j] == circ[j][i]):
                raise SkewAxiomViolation("SB3", (elements[i], elements[j]))

    for i in range(n):
        if circ[z][i] != z or circ[i][z] != z:
            raise SkewAxiomViolation("SB4", (elements[i],))

    S = SkewAlgebra(elements, index, circ, bullet, z)
    for x in elements:
        try:
            S.down_algebra(x)
        except StructureError as inner:
            raise SkewAxiomViolation(
                "SB5", (x,), detail=f"x↓ fails {inner.law} witness=({','.join(inner.witness)})"
            ) from inner
    return S


# ------------------------------------------------------------- derived order

def natural_leq(S, x, y):
    """x <= y iff x = x∘y; equivalently y = x•y (asserted in debug runs)."""
    out = S.leq(x, y)
    if __debug__:
        assert out == (S.bullet(x, y) == y), (x, y)
    return out


def skew_rel_complement(S, x, y):
    """x\\y: the complement of y∘x inside the unital Boolean algebra x↓."""
    return S.down_algebra(x).rel_complement(x, S.circ(y, x))


def meet(S, x, y):
    """Greatest lower bound under the natural order, by exhaustive scan.

    Returns None when absent; absence is a first-class outcome.
    """
    lower = [z for z in S.elements if S.leq(z, x) and S.leq(z, y)]
    for m in lower:
        if all(S.leq(z, m) for z in lower):
            return m
    return None


def is_wedge_algebra(S):
    return all(
        meet(S, x, y) is not None for x in S.elements for y in S.elements
    )


# ----------------------------------------------------------- gamma quotient

@dataclass(eq=False)
class GammaQuotient:
    """Partition by Green's R-relation of (S,∘) with its Boolean quotient."""

    algebra: balg.FinBooleanAlgebra
    class_of: dict
    classes: dict

    def members(self, class_id):
        return self.classes[class_id]


def gamma_classes(S):
    """Partition x R y iff x∘y = y and y∘x = x; quotient validated as Boolean.

    The relation is computed from the right-normal-band characterization and
    cross-checked to be a congruence for both operations, and the quotient
    meet/join tables induced by circ and bullet are checked to agree with the
    validated lattice structure.
    """
    try:
        return S._gamma
    except AttributeError:
        pass
    n = len(S.elements)
    circ, bullet = S.circ_t, S.bullet_t
    related = [
        [circ[i][j] == j and circ[j][i] == i for j in range(n)] for i in range(n)
    ]
    for i in range(n):
        for j in range(n):
            if related[i][j] != related[j][i]:
                raise QuotientNotBoolean((S.elements[i], S.elements[j]), "not symmetric")
            for k in range(n):
                if related[i][j] and related[j][k] and not related[i][k]:
                    raise QuotientNotBoolean(
                        (S.elements[i], S.elements[j], S.elements[k]), "not transitive"
                    )
    cls_idx = [-1] * n
    reps = []
    for i in range(n):
        if cls_idx[i] < 0:
            reps.append(i)
            for j in range(i, n):
                if related[i][j]:
                    cls_idx[j] = len(reps) - 1
    names = [f"[{S.elements[r]}]" for r in reps]

    for i in range(n):
        for j in range(n):
            if cls_idx[circ[i][j]] != cls_idx[circ[reps[cls_idx[i]]][reps[cls_idx[j]]]]:
                raise QuotientNotBoolean((S.elements[i], S.elements[j]), "circ not a congruence")
            if cls_idx[bullet[i][j]] != cls_idx[bullet[reps[cls_idx[i]]][reps[cls_idx[j]]]]:
                raise QuotientNotBoolean((S.elements[i], S.elements[j]), "bullet not a congruence")

    k = len(reps)
    qmeet = [[cls_idx[circ[reps[i]][reps[j]]] for j in range(k)] for i in range(k)]
    qjoin = [[cls_idx[bullet[reps[i]][reps[j]]] for j in range(k)] for i in range(k)]
    pairs = [(names[i], names[j]) for i in range(k) for j in range(k) if qmeet[i][j] == i]
    try:
        alg = balg.validate_balg(names, pairs, names[cls_idx[S.index[S.zero]]])
    except StructureError as inner:
        raise QuotientNotBoolean((), f"quotient fails {inner.law}") from inner
    for i in range(k):
        for j in range(k):
            if alg.meet(names[i], names[j]) != names[qmeet[i][j]]:
                raise QuotientNotBoolean((names[i], names[j]), "circ does not induce meet")
            if alg.join(names[i], names[j]) != names[qjoin[i][j]]:
                raise QuotientNotBoolean((names[i], names[j]), "bullet does not induce join")

    class_of = {S.elements[i]: names[cls_idx[i]] for i in range(n)}
    classes = {
        name: tuple(S.elements[i] for i in range(n) if cls_idx[i] == c)
        for c, name in enumerate(names)
    }
    S._gamma = GammaQuotient(alg, class_of, classes)
    return S._gamma


# -------------------------------------------------------------- consequences

def check_consequences(S):
    """Exhaustively verify the derived identities of a validated algebra:
    circ distributes over bullet on both sides, gamma classes are flat
    (right zero for circ, left zero for bullet), (S,∘) is right normal,
    and zero is the bullet identity.
    """
    n = len(S.elements)
    circ, bullet = S.circ_t, S.bullet_t
    els = S.elements
    items = []

    def scan3(law, pred):
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if not pred(i, j, k):
                        items.append(CheckItem(law, False, (els[i], els[j], els[k])))
                        return
        items.append(CheckItem(law, True))

    scan3("circ_over_bullet_left",
          lambda i, j, k: circ[i][bullet[j][k]] == bullet[circ[i][j]][circ[i][k]])
    scan3("circ_over_bullet_right",
          lambda i, j, k: circ[bullet[j][k]][i] == bullet[circ[j][i]][circ[k][i]])

    gq = gamma_classes(S)
    flat_c = flat_b = True
    wit_c = wit_b = ()
    for i in range(n):
        for j in range(n):
            if gq.class_of[els[i]] == gq.class_of[els[j]]:
                if flat_c and circ[i][j] != j:
                    flat_c, wit_c = False, (els[i], els[j])
                if flat_b and bullet[i][j] != i:
                    flat_b, wit_b = False, (els[i], els[j])
    items.append(CheckItem("gamma_right_zero_circ", flat_c, wit_c))
    items.append(CheckItem("gamma_left_zero_bullet", flat_b, wit_b))

    rn = True
    wit = ()
    for i in range(n):
        for j in range(n):
            if circ[circ[i][j]][i] != circ[j][i]:
                rn, wit = False, (els[i], els[j])
                break
        if not rn:
            break
    items.append(CheckItem("right_normal_circ", rn, wit))

    z = S.index[S.zero]
    mid = all(bullet[z][i] == i and bullet[i][z] == i for i in range(n))
    items.append(CheckItem("bullet_identity_zero", mid))
    return Report(items)


# ----------------------------------------------------------------- morphisms

@dataclass(eq=False)
class SkewMorphism:
    """Map preserving circ, bullet and zero, with its induced quotient hom."""

    source: SkewAlgebra
    target: SkewAlgebra
    mapping: dict
    induced: balg.BAHom


def validate_skew_morphism(mapping, S, T):
    for x in S.elements:
        if x not in mapping:
            raise ValueError(f"map not total: missing {x!r}")
        if mapping[x] not in T.index:
            raise ValueError(f"image {mapping[x]!r} not in target")
    if mapping[S.zero] != T.zero:
        raise NotAMorphism((S.zero,), "zero")
    for x in S.elements:
        for y in S.elements:
            if mapping[S.circ(x, y)] != T.circ(mapping[x], mapping[y]):
                raise NotAMorphism((x, y), "circ")
            if mapping[S.bullet(x, y)] != T.bullet(mapping[x], mapping[y]):
                raise NotAMorphism((x, y), "bullet")
    gs, gt = gamma_classes(S), gamma_classes(T)
    qmap = {}
    for x in S.elements:
        c = gs.class_of[x]
        img = gt.class_of[mapping[x]]
        assert qmap.setdefault(c, img) == img, ("induced map not well-defined", x)
    induced = balg.validate_bahom(qmap, gs.algebra, gt.algebra)
    return SkewMorphism(S, T, dict(mapping), induced)


def is_wedge_morphism(phi):
    """Whether the morphism preserves binary meets of the natural order."""
    S, T = phi.source, phi.target
    if not is_wedge_algebra(S) or not is_wedge_algebra(T):
        raise NoBinaryMeets(())
    for x in S.elements:
        for y in S.elements:
            if phi.mapping[meet(S, x, y)] != meet(T, phi.mapping[x], phi.mapping[y]):
                return False
    return True


def compose_skew_morphisms(g, f):
    assert f.target is g.source
    return validate_skew_morphism(
        {x: g.mapping[f.mapping[x]] for x in f.source.elements}, f.source, g.target
    )


def skew_struct_eq(S, T):
    """Equality as labeled structures: same ids, same zero, same tables."""
    if set(S.elements) != set(T.elements) or S.zero != T.zero:
        return False
    return all(
        S.circ(x, y) == T.circ(x, y) and S.bullet(x, y) == T.bullet(x, y)
        for x in S.elements for y in S.elements
    )


def enumerate_skew_morphisms(S, T):
    """All morphisms S -> T, by backtracking with partial closure pruning."""
    els = S.elements
    n = len(els)
    assign = {}

    def consistent(k):
        xk = els[k]
        for i in range(k + 1):
            xi = els[i]
            for a, b in ((xi, xk), (xk, xi)):
                c = S.circ(a, b)
                if c in assign and assign[c] != T.circ(assign[a], assign[b]):
                    return False
                d = S.bullet(a, b)
                if d in assign and assign[d] != T.bullet(assign[a], assign[b]):
                    return False
        return True

    def rec(k):
        if k == n:
            try:
                yield validate_skew_morphism(dict(assign), S, T)
            except (NotAMorphism, AssertionError):
                pass
            return
        x = els[k]
        choices = (T.zero,) if x == S.zero else T.elements
        for img in choices:
            assign[x] = img
            if consistent(k):
                yield from rec(k + 1)
            del assign[x]

    yield from rec(0)
