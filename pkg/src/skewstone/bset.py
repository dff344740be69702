"""Presheaves over finite meet semilattices and Boolean sets.

A presheaf assigns a finite stalk to each base element and a restriction map
to each Hasse covering pair; composite restrictions along longer chains are
derived after path-independence validation and cached.  A Boolean set is a
presheaf over a Boolean algebra with global support, a minimum element, a
trivial zero stalk, and joins of compatible pairs.

Joins and meets are always computed by exhaustive bound scans, never by
formula, so they double as independent oracles for the restriction-formula
operations (circ, setminus, bullet).
"""

import random
from dataclasses import dataclass
from itertools import product

from . import balg, skew
from .errors import (
    BM1Violation,
    BM2Violation,
    EmptySizes,
    InternalMissingJoin,
    MissingJoin,
    MissingRestriction,
    NoGlobalSupport,
    NoMinimum,
    NotRightNormal,
    PathDependent,
    StalkCollision,
    StructureError,
    ZeroStalkNotTrivial,
)


class Presheaf:
    """Validated presheaf of sets; immutable, safe for concurrent reads."""

    def __init__(self, base, stalks, cover_maps, rest):
        self.base = base
        self.stalks = stalks
        self.cover_maps = cover_maps
        self._rest = rest
        self.elements = tuple(
            x for e in base.elements for x in stalks[e]
        )
        self.index = {x: i for i, x in enumerate(self.elements)}
        self.stalk_of = {x: e for e in base.elements for x in stalks[e]}
        self._order_masks()

    def __repr__(self):
        return f"<{type(self).__name__} {len(self.elements)} elements over {len(self.base.elements)}>"

    def p(self, x):
        return self.stalk_of[x]

    def restrict(self, x, f):
        """x|^p(x)_f for f <= p(x)."""
        try:
            return self._rest[x][f]
        except KeyError:
            raise ValueError(f"restriction of {x!r} to {f!r} is not defined") from None

    @property
    def has_global_support(self):
        return all(self.stalks[e] for e in self.base.elements)

    def _order_masks(self):
        # leq per the restriction order: x <= y iff x = y|_{p(x)}
        n = len(self.elements)
        below = [0] * n
        above = [0] * n
        for j, y in enumerate(self.elements):
            ry = self._rest[y]
            for f, x in ry.items():
                i = self.index[x]
                below[j] |= 1 << i
                above[i] |= 1 << j
        self._below = below
        self._above = above

    def leq_elem(self, x, y):
        return self._below[self.index[y]] >> self.index[x] & 1 == 1

    def lower_bounds(self, x, y):
        m = self._below[self.index[x]] & self._below[self.index[y]]
        return tuple(z for i, z in enumerate(self.elements) if m >> i & 1)

    def upper_bounds(self, x, y):
        m = self._above[self.index[x]] & self._above[self.index[y]]
        return tuple(z for i, z in enumerate(self.elements) if m >> i & 1)

    def meet_elem(self, x, y):
        """Greatest lower bound by exhaustive scan, or None."""
        m = self._below[self.index[x]] & self._below[self.index[y]]
        k = balg._greatest(m, self._below)
        return self.elements[k] if k >= 0 else None

    def join_elem(self, x, y):
        """Least upper bound by exhaustive scan, or None."""
        m = self._above[self.index[x]] & self._above[self.index[y]]
        k = balg._least(m, self._above)
        return self.elements[k] if k >= 0 else None

    def compatible_elems(self, x, y):
        m = self.meet_elem(x, y)
        return m is not None and self.p(m) == self.base.meet(self.p(x), self.p(y))


def _cover_paths(base, e, f):
    """All descending Hasse chains from e to f, as tuples of ids."""
    if e == f:
        return [(e,)]
    out = []
    for upper, lower in base.cover_pairs:
        if upper == e and base.leq(f, lower):
            out.extend((e,) + rest for rest in _cover_paths(base, lower, f))
    return out


def validate_presheaf(base, stalks, restrictions):
    """Validate stalk and restriction data over an already validated base.

    ``stalks`` maps base elements to sequences of ids (missing keys mean
    empty stalks); ``restrictions`` maps Hasse cover pairs (upper, lower) to
    per-element target maps.  Composite restrictions are computed along every
    descending chain and checked to be path-independent.
    """
    stalk_map = {}
    seen = {}
    for e in base.elements:
        members = tuple(str(x) for x in stalks.get(e, ()))
        for x in members:
            if x in seen:
                raise StalkCollision((x,))
            seen[x] = e
        stalk_map[e] = members
    for e in stalks:
        if e not in base.index:
            raise ValueError(f"stalk key {e!r} is not a base element")

    covers = set(base.cover_pairs)
    for pair in restrictions:
        if tuple(pair) not in covers:
            raise ValueError(f"restriction {pair!r} is not a Hasse covering pair")
    cover_maps = {}
    for e, f in base.cover_pairs:
        given = restrictions.get((e, f))
        if given is None:
            if stalk_map[e]:
                raise MissingRestriction((e, f))
            given = {}
        m = {}
        for x in stalk_map[e]:
            if x not in given:
                raise MissingRestriction((e, f, x))
            y = given[x]
            if y not in stalk_map[f]:
                raise MissingRestriction((e, f, x), detail=f"target {y!r} not in stalk {f!r}")
            m[x] = y
        cover_maps[(e, f)] = m

    rest = {x: {} for e in base.elements for x in stalk_map[e]}
    for e in base.elements:
        for f in base.down_set(e):
            paths = _cover_paths(base, e, f)
            for x in stalk_map[e]:
                values = []
                for path in paths:
                    v = x
                    for up, lo in zip(path, path[1:]):
                        v = cover_maps[(up, lo)][v]
                    values.append((v, path))
                v0, p0 = values[0]
                for v, pth in values[1:]:
                    if v != v0:
                        raise PathDependent(
                            (x, ">".join(p0), ">".join(pth)),
                            detail=f"{v0!r} vs {v!r}",
                        )
                rest[x][f] = v0
    return Presheaf(base, stalk_map, cover_maps, rest)


# ------------------------------------------------------------ order and ops

def bs_order(P, x, y):
    """x <= y iff x is the restriction of y to p(x)."""
    return P.leq_elem(x, y)


def compatible(P, x, y):
    """x ~ y iff the meet exists and projects onto p(x) ∧ p(y)."""
    return P.compatible_elems(x, y)


class BooleanSet(Presheaf):
    """Presheaf over a Boolean algebra with minimum and compatible joins."""

    def __init__(self, base, stalks, cover_maps, rest, zero):
        super().__init__(base, stalks, cover_maps, rest)
        self.zero = zero

    def join(self, x, y):
        j = self.join_elem(x, y)
        if j is None:
            raise InternalMissingJoin((x, y))
        return j

    def circ(self, x, y):
        return self.restrict(y, self.base.meet(self.p(x), self.p(y)))

    def setminus(self, y, x):
        return self.restrict(y, self.base.rel_complement(self.p(y), self.p(x)))

    def bullet(self, x, y):
        return self.join(x, self.setminus(y, x))

    @property
    def has_binary_meets(self):
        try:
            return self._has_meets
        except AttributeError:
            self._has_meets = all(
                self.meet_elem(x, y) is not None
                for x in self.elements for y in self.elements
            )
            return self._has_meets


def validate_boolean_set(P):
    """Upgrade a validated presheaf over a Boolean algebra to a Boolean set.

    Checks global support, the trivial zero stalk, the minimum element, and
    the existence of least upper bounds for all compatible pairs (joins found
    by exhaustive scan); the projection of each join is asserted to be the
    join of the projections.
    """
    base = P.base
    if not isinstance(base, balg.FinBooleanAlgebra):
        raise ValueError("Boolean set base must be a validated Boolean algebra")
    for e in base.elements:
        if not P.stalks[e]:
            raise NoGlobalSupport((e,))
    zstalk = P.stalks[base.bottom]
    if len(zstalk) > 1:
        raise ZeroStalkNotTrivial(zstalk[:2])
    zero = zstalk[0]
    if not all(P.leq_elem(zero, x) for x in P.elements):
        raise NoMinimum((zero,))
    for x in P.elements:
        for y in P.elements:
            if P.compatible_elems(x, y):
                j = P.join_elem(x, y)
                if j is None:
                    raise MissingJoin((x, y))
                assert P.p(j) == base.join(P.p(x), P.p(y)), (x, y, j)
    return BooleanSet(base, P.stalks, P.cover_maps, P._rest, zero)


def bs_circ(X, x, y):
    """x∘y = y restricted to p(x) ∧ p(y)."""
    return X.circ(x, y)


def bs_setminus(X, y, x):
    """y\\x = y restricted to p(y) \\ p(x)."""
    return X.setminus(y, x)


def bs_bullet(X, x, y):
    """x•y = x ∨ (y\\x); the join is found by least-upper-bound scan."""
    return X.bullet(x, y)


# ------------------------------------------------------- skew correspondence

def to_skew(X):
    """Cayley tables from circ/bullet; the output passes full axiom checking."""
    try:
        return X._skew
    except AttributeError:
        pass
    els = X.elements
    circ = [[X.circ(x, y) for y in els] for x in els]
    bullet = [[X.bullet(x, y) for y in els] for x in els]
    X._skew = skew.validate_skew(els, circ, bullet, X.zero)
    return X._skew


def from_skew(S):
    """Boolean set on the gamma quotient: stalks are classes, restriction is
    left multiplication by any member of the target class (well-definedness
    asserted)."""
    gq = skew.gamma_classes(S)
    base = gq.algebra
    stalks = {c: gq.classes[c] for c in base.elements}
    restrictions = {}
    for upper, lower in base.cover_pairs:
        m = {}
        for x in stalks[upper]:
            values = {S.circ(y, x) for y in stalks[lower]}
            assert len(values) == 1, ("restriction not well-defined", x, lower)
            m[x] = values.pop()
        restrictions[(upper, lower)] = m
    P = validate_presheaf(base, stalks, restrictions)
    return validate_boolean_set(P)


def bset_struct_eq(X, Y):
    """Structural equality: identical carriers and restriction tables, with
    bases identified along the projection-induced bijection (which must be a
    Boolean algebra isomorphism)."""
    if set(X.elements) != set(Y.elements) or X.zero != Y.zero:
        return False
    bmap = {}
    for e in X.base.elements:
        stalk = X.stalks[e]
        targets = {Y.p(x) for x in stalk}
        if len(targets) != 1:
            return False
        bmap[e] = targets.pop()
    if len(set(bmap.values())) != len(Y.base.elements):
        return False
    for e in X.base.elements:
        for f in X.base.elements:
            if X.base.leq(e, f) != Y.base.leq(bmap[e], bmap[f]):
                return False
    for x in X.elements:
        for f in X.base.down_set(X.p(x)):
            if X.restrict(x, f) != Y.restrict(x, bmap[f]):
                return False
    return True


def bset_isomorphic(X, Y):
    """Brute-force isomorphism search for small instances.

    Returns (base_map, element_map) or None; an isomorphism is a base algebra
    isomorphism plus stalk bijections commuting with all restrictions.
    """
    base_iso = balg.find_balg_isomorphism(X.base, Y.base)
    if base_iso is None:
        return None
    for e in X.base.elements:
        if len(X.stalks[e]) != len(Y.stalks[base_iso[e]]):
            return None

    order = sorted(X.base.elements, key=lambda e: -len(X.base.down_set(e)))

    def rec(k, emap):
        if k == len(order):
            return dict(emap)
        e = order[k]
        xs = X.stalks[e]
        for perm in _permutations(Y.stalks[base_iso[e]]):
            trial = dict(emap)
            ok = True
            for x, y in zip(xs, perm):
                trial[x] = y
            for x in xs:
                for f in X.base.down_set(e):
                    xr = X.restrict(x, f)
                    if xr in trial and trial[xr] != Y.restrict(trial[x], base_iso[f]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                result = rec(k + 1, trial)
                if result is not None:
                    return result
        return None

    emap = rec(0, {})
    if emap is None:
        return None
    return base_iso, emap


def _permutations(seq):
    from itertools import permutations as _p
    return _p(seq)


# ----------------------------------------------------------------- morphisms

@dataclass(eq=False)
class BSetMorphism:
    """Element map with its base homomorphism; BM1 and BM2 validated."""

    source: BooleanSet
    target: BooleanSet
    mapping: dict
    base_hom: balg.BAHom


def derive_base_map(X, Y, mapping):
    """The unique base map satisfying the commuting square, if any."""
    out = {}
    for e in X.base.elements:
        targets = {Y.p(mapping[x]) for x in X.stalks[e]}
        if len(targets) != 1:
            a, b = sorted(X.stalks[e], key=X.index.__getitem__)[:2]
            raise BM1Violation((a,), detail=f"stalk {e!r} maps into several stalks")
        out[e] = targets.pop()
    return out


def validate_bset_morphism(phi, phibar, X, Y):
    """Check the commuting square and restriction compatibility on every
    element and comparable pair; join preservation and skew-operation
    preservation are consequences and asserted."""
    for x in X.elements:
        if x not in phi:
            raise ValueError(f"map not total: missing {x!r}")
        if phi[x] not in Y.index:
            raise ValueError(f"image {phi[x]!r} not in target")
    if phibar is None:
        phibar = derive_base_map(X, Y, phi)
    base_hom = balg.validate_bahom(phibar, X.base, Y.base)
    for x in X.elements:
        if phibar[X.p(x)] != Y.p(phi[x]):
            raise BM1Violation((x,))
    for x in X.elements:
        a = X.p(x)
        for b in X.base.down_set(a):
            if phi[X.restrict(x, b)] != Y.restrict(phi[x], phibar[b]):
                raise BM2Violation((x, a, b))
    m = BSetMorphism(X, Y, dict(phi), base_hom)
    _assert_morphism_consequences(m)
    return m


def _assert_morphism_consequences(m):
    X, Y, phi = m.source, m.target, m.mapping
    for x in X.elements:
        for y in X.elements:
            if X.compatible_elems(x, y):
                assert phi[X.join(x, y)] == Y.join(phi[x], phi[y]), (x, y)
    SX, SY = to_skew(X), to_skew(Y)
    for x in X.elements:
        for y in X.elements:
            assert phi[SX.circ(x, y)] == SY.circ(phi[x], phi[y]), (x, y)
            assert phi[SX.bullet(x, y)] == SY.bullet(phi[x], phi[y]), (x, y)


def identity_bset_morphism(X):
    return validate_bset_morphism(
        {x: x for x in X.elements}, {e: e for e in X.base.elements}, X, X
    )


def compose_bset_morphisms(g, f):
    assert f.target is g.source
    return validate_bset_morphism(
        {x: g.mapping[f.mapping[x]] for x in f.source.elements},
        {e: g.base_hom.mapping[f.base_hom.mapping[e]] for e in f.source.base.elements},
        f.source,
        g.target,
    )


def bset_morphism_eq(f, g):
    return f.mapping == g.mapping and f.base_hom.mapping == g.base_hom.mapping


def enumerate_bset_morphisms(X, Y, proper_only=False):
    """All morphisms X -> Y: brute force over base homs, then over maps on the
    top stalk, propagating along restrictions and validating each candidate.

    Every element of a Boolean set over a finite (hence unital) base is the
    restriction of a top-stalk element, so the top choices determine the map.
    """
    top = X.base.top
    for phibar in _enumerate_bahoms(X.base, Y.base):
        if proper_only and not balg.is_proper_mapping(X.base, Y.base, phibar):
            continue
        target_stalk = Y.stalks[phibar[top]]
        for choice in product(target_stalk, repeat=len(X.stalks[top])):
            phi = {}
            ok = True
            for t, img in zip(X.stalks[top], choice):
                for f in X.base.down_set(top):
                    x = X.restrict(t, f)
                    y = Y.restrict(img, phibar[f])
                    if phi.setdefault(x, y) != y:
                        ok = False
                        break
                if not ok:
                    break
            if not ok or len(phi) != len(X.elements):
                continue
            try:
                yield validate_bset_morphism(phi, dict(phibar), X, Y)
            except StructureError:
                continue


def _enumerate_bahoms(A, B):
    """All Boolean algebra homomorphisms A -> B, brute force with pruning on
    the generating joins of atoms."""
    atoms = A.atoms
    for choice in product(B.elements, repeat=len(atoms)):
        amap = dict(zip(atoms, choice))
        mapping = {}
        for e in A.elements:
            mapping[e] = B.join_all(amap[a] for a in atoms if A.leq(a, e))
        ok = all(
            mapping[A.meet(x, y)] == B.meet(mapping[x], mapping[y])
            and mapping[A.join(x, y)] == B.join(mapping[x], mapping[y])
            for x in A.elements for y in A.elements
        )
        if ok and mapping[A.bottom] == B.bottom:
            yield mapping


# ------------------------------------------------------- right normal bands

class RightNormalBand:
    """Band whose circ satisfies x∘y∘x = y∘x."""

    def __init__(self, elements, index, table):
        self.elements = elements
        self.index = index
        self.table = table

    def circ(self, x, y):
        return self.elements[self.table[self.index[x]][self.index[y]]]

    def leq(self, x, y):
        i, j = self.index[x], self.index[y]
        return self.table[i][j] == i

    def __repr__(self):
        return f"<RightNormalBand {len(self.elements)} elements>"


def validate_band(elements, table):
    elements, index = balg._index_elements(elements)
    t = skew._as_index_table(elements, index, table, "circ")
    skew._band_check(elements, t, "circ")
    n = len(elements)
    for i in range(n):
        for j in range(n):
            if t[t[i][j]][i] != t[j][i]:
                raise NotRightNormal((elements[i], elements[j]))
    return RightNormalBand(elements, index, t)


def band_gamma(S):
    """Classes of x R y iff x∘y = y and y∘x = x, with deterministic names."""
    n = len(S.elements)
    t = S.table
    cls_idx = [-1] * n
    reps = []
    for i in range(n):
        if cls_idx[i] < 0:
            reps.append(i)
            for j in range(i, n):
                if t[i][j] == j and t[j][i] == i:
                    cls_idx[j] = len(reps) - 1
    names = [f"[{S.elements[r]}]" for r in reps]
    return cls_idx, reps, names


def band_to_presheaf(S):
    """Stalks are gamma classes over the quotient meet semilattice."""
    cls_idx, reps, names = band_gamma(S)
    t = S.table
    k = len(reps)
    pairs = [
        (names[i], names[j])
        for i in range(k) for j in range(k)
        if cls_idx[t[reps[i]][reps[j]]] == i
    ]
    base = balg.validate_meet_semilattice(names, pairs)
    for i in range(k):
        for j in range(k):
            assert base.meet(names[i], names[j]) == names[cls_idx[t[reps[i]][reps[j]]]]
    stalks = {
        name: tuple(S.elements[i] for i in range(len(S.elements)) if cls_idx[i] == c)
        for c, name in enumerate(names)
    }
    restrictions = {}
    for upper, lower in base.cover_pairs:
        m = {}
        for x in stalks[upper]:
            values = {S.circ(y, x) for y in stalks[lower]}
            assert len(values) == 1, ("restriction not well-defined", x, lower)
            m[x] = values.pop()
        restrictions[(upper, lower)] = m
    return validate_presheaf(base, stalks, restrictions)


def presheaf_to_band(P):
    """The circ reduct x∘y = y|_{p(x)∧p(y)}; needs global support to be
    mutually inverse with band_to_presheaf."""
    if not P.has_global_support:
        empty = next(e for e in P.base.elements if not P.stalks[e])
        raise NoGlobalSupport((empty,))
    els = P.elements
    table = [
        [P.restrict(y, P.base.meet(P.p(x), P.p(y))) for y in els] for x in els
    ]
    return validate_band(els, table)


def band_struct_eq(S, T):
    if set(S.elements) != set(T.elements):
        return False
    return all(
        S.circ(x, y) == T.circ(x, y) for x in S.elements for y in S.elements
    )


def presheaf_struct_eq(P, Q):
    """Same convention as bset_struct_eq, for bare presheaves."""
    if set(P.elements) != set(Q.elements):
        return False
    bmap = {}
    for e in P.base.elements:
        stalk = P.stalks[e]
        if not stalk:
            return False
        targets = {Q.p(x) for x in stalk}
        if len(targets) != 1:
            return False
        bmap[e] = targets.pop()
    if len(set(bmap.values())) != len(Q.base.elements):
        return False
    for e in P.base.elements:
        for f in P.base.elements:
            if P.base.leq(e, f) != Q.base.leq(bmap[e], bmap[f]):
                return False
    for x in P.elements:
        for f in P.base.down_set(P.p(x)):
            if P.restrict(x, f) != Q.restrict(x, bmap[f]):
                return False
    return True


def is_boolean_band(S):
    """Quotient Boolean plus joins of compatible pairs (x ~ y iff x∘y = y∘x)."""
    cls_idx, reps, names = band_gamma(S)
    t = S.table
    k = len(reps)
    pairs = [
        (names[i], names[j])
        for i in range(k) for j in range(k)
        if cls_idx[t[reps[i]][reps[j]]] == i
    ]
    bottoms = [
        c for c in range(k)
        if all(cls_idx[t[reps[c]][reps[d]]] == c for d in range(k))
    ]
    if len(bottoms) != 1:
        return False
    try:
        balg.validate_balg(names, pairs, names[bottoms[0]])
    except StructureError:
        return False
    n = len(S.elements)
    for i in range(n):
        for j in range(n):
            if t[i][j] == t[j][i]:
                ubs = [
                    z for z in range(n)
                    if t[i][z] == i and t[j][z] == j
                ]
                if not any(all(t[z][u] == z for u in ubs) for z in ubs):
                    return False
    return True


# ------------------------------------------------------------ sieves, sheaves

def is_covering_sieve(B, c, members):
    """Down-closed family below c whose join is c (the empty join is bottom)."""
    members = frozenset(members)
    for a in members:
        if not B.leq(a, c):
            return False
    for a in members:
        for b in B.down_set(a):
            if b not in members:
                return False
    return B.join_all(members) == c


def covering_sieves(B, c):
    """All covering sieves of c, ordered by the subset bitmask of ↓c."""
    down = B.down_set(c)
    out = []
    for mask in range(1 << len(down)):
        s = frozenset(down[i] for i in range(len(down)) if mask >> i & 1)
        if is_covering_sieve(B, c, s):
            out.append(s)
    return out


def _matching_families(P, sieve):
    """All coherent assignments a -> x_a over the sieve (restriction-closed)."""
    sieve = sorted(sieve, key=lambda e: -len(P.base.down_set(e)))

    def rec(k, fam):
        if k == len(sieve):
            yield dict(fam)
            return
        a = sieve[k]
        for x in P.stalks[a]:
            ok = True
            for b, xb in fam.items():
                if P.base.leq(a, b) and P.restrict(xb, a) != x:
                    ok = False
                    break
                if P.base.leq(b, a) and P.restrict(x, b) != xb:
                    ok = False
                    break
            if ok:
                fam[a] = x
                yield from rec(k + 1, fam)
                del fam[a]

    yield from rec(0, {})


def sheaf_condition(P):
    """Unique amalgamation for every matching family of every covering sieve."""
    B = P.base
    for c in B.elements:
        for sieve in covering_sieves(B, c):
            for fam in _matching_families(P, sieve):
                glue = [
                    z for z in P.stalks[c]
                    if all(P.restrict(z, a) == fam[a] for a in sieve)
                ]
                if len(glue) != 1:
                    return False
    return True


# ------------------------------------------------------------------ builders

ATOM_LETTERS = "abcdefghij"


def generate_boolean_set(atom_stalk_sizes, seed=None):
    """Canonical Boolean set over the powerset of k atoms.

    The stalk over a subset is the product of the chosen atom stalks below
    it (singleton over bottom), restrictions are projections.  The seed only
    permutes stalk-element labels; the structure is unchanged.  The output is
    validated, not assumed valid.
    """
    sizes = tuple(atom_stalk_sizes)
    if not sizes:
        raise EmptySizes(())
    if any(s < 1 for s in sizes):
        raise ValueError("stalk sizes must be at least 1")
    if len(sizes) > len(ATOM_LETTERS):
        raise ValueError(f"at most {len(ATOM_LETTERS)} atoms supported")
    atoms = ATOM_LETTERS[: len(sizes)]
    rng = random.Random(seed)
    labels = {}
    for a, s in zip(atoms, sizes):
        names = [f"{a}{i + 1}" for i in range(s)]
        if seed is not None:
            rng.shuffle(names)
        labels[a] = tuple(names)

    def subset_id(s):
        if not s:
            return "0"
        if len(s) == len(atoms):
            return "1"
        if len(s) == 1:
            return next(iter(s))
        return "".join(a for a in atoms if a in s)

    base, id_of, set_of = balg.powerset_balg(tuple(atoms), subset_id)

    def elem_id(parts):
        if not parts:
            return "0"
        if len(parts) == 1:
            return parts[0]
        return "(" + ",".join(parts) + ")"

    stalks = {}
    members_of = {}
    for eid, s in set_of.items():
        present = [a for a in atoms if a in s]
        tuples = list(product(*(labels[a] for a in present)))
        stalks[eid] = tuple(elem_id(list(t)) for t in tuples)
        members_of[eid] = {elem_id(list(t)): dict(zip(present, t)) for t in tuples}

    restrictions = {}
    for upper, lower in base.cover_pairs:
        keep = [a for a in atoms if a in set_of[lower]]
        m = {}
        for x, choice in members_of[upper].items():
            m[x] = elem_id([choice[a] for a in keep])
        restrictions[(upper, lower)] = m

    P = validate_presheaf(base, stalks, restrictions)
    return validate_boolean_set(P)


def constant_bset(base):
    """One element per stalk; all restrictions forced."""
    stalks = {e: (f"c{e}",) for e in base.elements}
    restrictions = {
        (e, f): {f"c{e}": f"c{f}"} for e, f in base.cover_pairs
    }
    return validate_boolean_set(validate_presheaf(base, stalks, restrictions))
