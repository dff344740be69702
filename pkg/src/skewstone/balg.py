"""Finite generalized Boolean algebras with derived order tables.

A (generalized) Boolean algebra is a relatively complemented distributive
lattice with a bottom element; a unital one also has a top.  Every finite
lattice with a bottom is automatically unital (the join of all elements is a
top), so the distinction matters only for the infinite objects that are out
of representational reach here.

Only the partial order is taken as input.  Meet, join and relative-complement
tables are derived during validation and cached; element ids are opaque
strings, all derived tables use dense integer indices in input order, which
fixes every deterministic choice downstream.  Exhaustive validation is O(n^3)
over triples; the intended feasible bound is about 256 elements.
"""

from dataclasses import dataclass, field
from itertools import permutations

from .errors import (
    NoBottom,
    NoRelativeComplement,
    NotAHomomorphism,
    NotALattice,
    NotAPoset,
    NotDisjoint,
    NotDistinct,
    NotDistributive,
    ZeroArgument,
)
from .report import CheckItem, Report


def _index_elements(elements):
    elements = tuple(str(e) for e in elements)
    index = {}
    for i, e in enumerate(elements):
        if e in index:
            raise ValueError(f"duplicate element id {e!r}")
        index[e] = i
    return elements, index


def _closure(n, pairs):
    """Reflexive-transitive closure as bitmask rows: up[i] = {j : i <= j}."""
    up = [1 << i for i in range(n)]
    for i, j in pairs:
        up[i] |= 1 << j
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if up[i] & bit:
                up[i] |= up[k]
    return up


def _down_masks(n, up):
    down = [0] * n
    for i in range(n):
        row = up[i]
        for j in range(n):
            if row >> j & 1:
                down[j] |= 1 << i
    return down


def _greatest(mask, down):
    """Maximum of the elements in ``mask``, or -1 if none dominates them all."""
    m = mask
    while m:
        i = (m & -m).bit_length() - 1
        if mask & ~down[i] == 0:
            return i
        m &= m - 1
    return -1


def _least(mask, up):
    m = mask
    while m:
        i = (m & -m).bit_length() - 1
        if mask & ~up[i] == 0:
            return i
        m &= m - 1
    return -1


def _check_poset(elements, index, leq_pairs):
    n = len(elements)
    pairs = []
    for x, y in leq_pairs:
        if x not in index or y not in index:
            raise ValueError(f"order pair ({x!r}, {y!r}) uses undeclared elements")
        pairs.append((index[x], index[y]))
    up = _closure(n, pairs)
    for i in range(n):
        for j in range(i + 1, n):
            if up[i] >> j & 1 and up[j] >> i & 1:
                raise NotAPoset((elements[i], elements[j]))
    return up


class FinMeetSemilattice:
    """Finite meet semilattice over opaque string ids.

    Built by :func:`validate_meet_semilattice`; immutable after construction
    and safe for concurrent reads.
    """

    def __init__(self, elements, index, up, down, meet_table):
        self.elements = elements
        self.index = index
        self._up = up
        self._down = down
        self._meet = meet_table

    def __repr__(self):
        return f"<{type(self).__name__} {len(self.elements)} elements>"

    def leq(self, x, y):
        return self._up[self.index[x]] >> self.index[y] & 1 == 1

    def meet(self, x, y):
        return self.elements[self._meet[self.index[x]][self.index[y]]]

    def down_set(self, x):
        m = self._down[self.index[x]]
        return tuple(e for i, e in enumerate(self.elements) if m >> i & 1)

    def up_set(self, x):
        m = self._up[self.index[x]]
        return tuple(e for i, e in enumerate(self.elements) if m >> i & 1)

    @property
    def cover_pairs(self):
        """Hasse covers as (upper, lower) pairs, in element order."""
        try:
            return self._covers
        except AttributeError:
            pass
        covers = []
        for i, e in enumerate(self.elements):
            strict = self._down[i] & ~(1 << i)
            for j in range(len(self.elements)):
                if strict >> j & 1 and self._up[j] & strict == 1 << j:
                    covers.append((e, self.elements[j]))
        self._covers = tuple(covers)
        return self._covers

    def comparable_pairs(self):
        """All (upper, lower) pairs with lower <= upper, including equal ones."""
        for i, e in enumerate(self.elements):
            m = self._down[i]
            for j, f in enumerate(self.elements):
                if m >> j & 1:
                    yield e, f


def validate_meet_semilattice(elements, leq_pairs):
    elements, index = _index_elements(elements)
    n = len(elements)
    up = _check_poset(elements, index, leq_pairs)
    down = _down_masks(n, up)
    meet = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            m = _greatest(down[i] & down[j], down)
            if m < 0:
                raise NotALattice((elements[i], elements[j]), "meet")
            meet[i][j] = m
    return FinMeetSemilattice(elements, index, up, down, meet)


@dataclass(frozen=True)
class FilterSet:
    """A filter (or, with dual invariants, an ideal) of a finite algebra.

    Equality and hashing look at the member set only; the algebra reference
    is context.
    """

    algebra: "FinBooleanAlgebra" = field(compare=False)
    members: frozenset = field()

    @property
    def generator(self):
        """The unique minimal member; every filter of a finite poset is ``↑x``."""
        alg = self.algebra
        for x in self.members:
            if all(alg.leq(x, y) for y in self.members):
                return x
        raise ValueError("not a principal up-set")

    def __contains__(self, x):
        return x in self.members

    def __repr__(self):
        return f"Filter({sorted(self.members)})"


class FinBooleanAlgebra(FinMeetSemilattice):
    """Validated relatively complemented distributive lattice with bottom."""

    def __init__(self, elements, index, up, down, meet_t, join_t, bottom_i, comp_in):
        super().__init__(elements, index, up, down, meet_t)
        self._join = join_t
        self._bottom_i = bottom_i
        self._comp_in = comp_in

    @property
    def bottom(self):
        return self.elements[self._bottom_i]

    @property
    def top(self):
        t = _greatest((1 << len(self.elements)) - 1, self._down)
        return self.elements[t]

    @property
    def atoms(self):
        try:
            return self._atoms
        except AttributeError:
            base = 1 << self._bottom_i
            self._atoms = tuple(
                e for i, e in enumerate(self.elements)
                if i != self._bottom_i and self._down[i] == base | 1 << i
            )
            return self._atoms

    def join(self, x, y):
        return self.elements[self._join[self.index[x]][self.index[y]]]

    def join_all(self, xs):
        acc = self._bottom_i
        for x in xs:
            acc = self._join[acc][self.index[x]]
        return self.elements[acc]

    def rel_complement(self, e, f):
        """The unique c <= e with c ∧ (e∧f) = 0 and c ∨ (e∧f) = e."""
        i = self.index[e]
        m = self._meet[i][self.index[f]]
        return self.elements[self._comp_in[i, m]]

    # -- filters and ideals ------------------------------------------------

    def principal_filter(self, x):
        return FilterSet(self, frozenset(self.up_set(x)))

    def principal_ideal(self, x):
        return FilterSet(self, frozenset(self.down_set(x)))

    def all_filters(self):
        """Every filter, as a principal up-set per generator, in element order."""
        return tuple(self.principal_filter(x) for x in self.elements)

    def all_ideals(self):
        return tuple(self.principal_ideal(x) for x in self.elements)

    def is_filter(self, members):
        members = frozenset(members)
        if not members:
            return False
        for a in members:
            for b in self.up_set(a):
                if b not in members:
                    return False
        for a in members:
            for b in members:
                if not any(self.leq(c, a) and self.leq(c, b) for c in members):
                    return False
        return True

    def is_ideal(self, members):
        members = frozenset(members)
        if not members:
            return False
        for a in members:
            for b in self.down_set(a):
                if b not in members:
                    return False
        return all(self.join(a, b) in members for a in members for b in members)

    def is_prime_filter(self, members):
        members = frozenset(members)
        if not self.is_filter(members) or len(members) == len(self.elements):
            return False
        for a in self.elements:
            for b in self.elements:
                if self.join(a, b) in members and a not in members and b not in members:
                    return False
        return True

    def is_prime_ideal(self, members):
        members = frozenset(members)
        if not self.is_ideal(members) or len(members) == len(self.elements):
            return False
        for a in self.elements:
            for b in self.elements:
                if self.meet(a, b) in members and a not in members and b not in members:
                    return False
        return True

    def ultrafilters(self):
        """All maximal proper filters, ordered by generator index.

        Enumerates every filter as a principal up-set and keeps the maximal
        proper ones, then asserts the classical properties on them: each
        ultrafilter is prime, and every non-bottom element lies in one.
        """
        try:
            return self._ultra
        except AttributeError:
            pass
        everything = frozenset(self.elements)
        proper = [f for f in self.all_filters() if f.members != everything]
        ultra = tuple(
            f for f in proper
            if not any(f.members < g.members for g in proper)
        )
        for f in ultra:
            assert self.is_prime_filter(f.members), f
        for x in self.elements:
            if x != self.bottom:
                assert any(x in f for f in ultra), x
        self._ultra = ultra
        return ultra

    def stone_map(self, a):
        """M(a): the set of ultrafilters containing a."""
        return frozenset(f for f in self.ultrafilters() if a in f)


def validate_balg(elements, leq_pairs, bottom):
    """Validate a partial order as a generalized Boolean algebra.

    Takes the order relation only (reflexive-transitive closure is implied)
    and derives meet/join/relative-complement tables, or raises a diagnostic
    naming the first failed law with a witness tuple.
    """
    elements, index = _index_elements(elements)
    n = len(elements)
    if bottom not in index:
        raise ValueError(f"declared bottom {bottom!r} is not an element")
    up = _check_poset(elements, index, leq_pairs)
    down = _down_masks(n, up)

    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            m = _greatest(down[i] & down[j], down)
            if m < 0:
                raise NotALattice((elements[i], elements[j]), "meet")
            meet[i][j] = m
            u = _least(up[i] & up[j], up)
            if u < 0:
                raise NotALattice((elements[i], elements[j]), "join")
            join[i][j] = u

    bot = index[bottom]
    full = (1 << n) - 1
    if up[bot] != full:
        for i in range(n):
            if not up[bot] >> i & 1:
                raise NoBottom((bottom, elements[i]))

    for a in range(n):
        ma = meet[a]
        for b in range(n):
            jb = join[b]
            mab = ma[b]
            for c in range(n):
                if ma[jb[c]] != join[mab][ma[c]]:
                    raise NotDistributive((elements[a], elements[b], elements[c]))

    comp_in = {}
    for b in range(n):
        db = down[b]
        m = db
        while m:
            a = (m & -m).bit_length() - 1
            m &= m - 1
            found = [c for c in range(n)
                     if db >> c & 1 and meet[c][a] == bot and join[c][a] == b]
            if not found:
                raise NoRelativeComplement((elements[a], elements[b]))
            assert len(found) == 1, (elements[a], elements[b], found)
            comp_in[b, a] = found[0]

    return FinBooleanAlgebra(elements, index, up, down, meet, join, bot, comp_in)


# ----------------------------------------------------- free-function forms

def rel_complement(B, e, f):
    return B.rel_complement(e, f)


def ultrafilters(B):
    return B.ultrafilters()


def stone_map(B, a):
    return B.stone_map(a)


def separating_ultrafilter(B, a, b):
    """First ultrafilter (in generator order) containing exactly one of a, b."""
    if a == b:
        raise NotDistinct((a, b))
    if a == B.bottom or b == B.bottom:
        raise ZeroArgument((a, b))
    for f in B.ultrafilters():
        if (a in f) != (b in f):
            return f
    raise AssertionError(f"no separating ultrafilter for {a!r}, {b!r}")


def _members(f):
    return f.members if isinstance(f, FilterSet) else frozenset(f)


def extend_filter_avoiding_ideal(B, F, I):
    """First ultrafilter containing the filter F and disjoint from the ideal I."""
    fm, im = _members(F), _members(I)
    if not B.is_filter(fm):
        raise ValueError("F is not a filter")
    if not B.is_ideal(im):
        raise ValueError("I is not an ideal")
    common = fm & im
    if common:
        raise NotDisjoint((sorted(common)[0],))
    for u in B.ultrafilters():
        if fm <= u.members and not (im & u.members):
            return u
    raise AssertionError("no extension ultrafilter found")


@dataclass(eq=False)
class BAHom:
    """Validated homomorphism of finite Boolean algebras."""

    source: FinBooleanAlgebra
    target: FinBooleanAlgebra
    mapping: dict


def validate_bahom(mapping, source, target):
    for x in source.elements:
        if x not in mapping:
            raise ValueError(f"map not total: missing {x!r}")
        if mapping[x] not in target.index:
            raise ValueError(f"image {mapping[x]!r} not in target")
    if mapping[source.bottom] != target.bottom:
        raise NotAHomomorphism((source.bottom,), "bottom")
    for x in source.elements:
        for y in source.elements:
            if mapping[source.meet(x, y)] != target.meet(mapping[x], mapping[y]):
                raise NotAHomomorphism((x, y), "meet")
            if mapping[source.join(x, y)] != target.join(mapping[x], mapping[y]):
                raise NotAHomomorphism((x, y), "join")
    return BAHom(source, target, dict(mapping))


def is_proper_hom(h):
    """True iff every target element lies below some image element."""
    image = set(h.mapping.values())
    return all(
        any(h.target.leq(t, v) for v in image) for t in h.target.elements
    )


def is_proper_mapping(source, target, mapping):
    return all(
        any(target.leq(t, mapping[s]) for s in source.elements)
        for t in target.elements
    )


# -------------------------------------------------------------------- helpers

def powerset_balg(points, render):
    """Powerset Boolean algebra of a finite point set.

    ``render`` turns a frozenset of points into an element id.  Returns
    (algebra, id_of, set_of) with both direction maps; subsets are ordered by
    binary counting over the point order, so the output is deterministic.
    """
    points = tuple(points)
    n = len(points)
    subsets = []
    for mask in range(1 << n):
        subsets.append(frozenset(points[i] for i in range(n) if mask >> i & 1))
    id_of = {}
    for s in subsets:
        sid = render(s)
        if sid in id_of.values() or s in id_of:
            raise ValueError(f"subset renderer not injective at {sid!r}")
        id_of[s] = sid
    set_of = {sid: s for s, sid in id_of.items()}
    pairs = [
        (id_of[s], id_of[t]) for s in subsets for t in subsets if s <= t
    ]
    alg = validate_balg([id_of[s] for s in subsets], pairs, id_of[frozenset()])
    return alg, id_of, set_of


def render_braces(points):
    """Canonical ``{u,v}`` subset id, members in input order."""
    def render(s, _points=tuple(points)):
        return "{" + ",".join(p for p in _points if p in s) + "}"
    return render


def balg_struct_eq(A, B):
    return (
        A.elements == B.elements
        and A._up == B._up
        and A.bottom == B.bottom
    )


def classical_properties_report(B):
    """The six classical facts about filters and ideals, checked exhaustively:
    nonzero elements lie in ultrafilters, ultrafilters are exactly the prime
    filters, maximal proper ideals are exactly the prime ideals, prime ideal
    complements are prime filters, disjoint filter/ideal pairs extend to
    separating ultrafilters, and distinct nonzero pairs are separated; plus
    the Stone map being an isomorphism onto the ultrafilter powerset.
    """
    items = []
    ultra = B.ultrafilters()
    items.append(CheckItem(
        "nonzero_in_ultrafilter",
        all(any(x in f for f in ultra) for x in B.elements if x != B.bottom),
    ))
    everything = frozenset(B.elements)
    primes = {f.members for f in B.all_filters() if B.is_prime_filter(f.members)}
    items.append(CheckItem(
        "ultrafilters_are_prime_filters", {f.members for f in ultra} == primes,
    ))
    proper_ideals = [i for i in B.all_ideals() if i.members != everything]
    maximal = {
        i.members for i in proper_ideals
        if not any(i.members < j.members for j in proper_ideals)
    }
    prime_ideals = {
        i.members for i in B.all_ideals() if B.is_prime_ideal(i.members)
    }
    items.append(CheckItem("maximal_ideals_are_prime", maximal == prime_ideals))
    items.append(CheckItem(
        "prime_ideal_complement_is_prime_filter",
        all(B.is_prime_filter(everything - m) for m in prime_ideals),
    ))
    ok = True
    for f in B.all_filters():
        for i in B.all_ideals():
            if not (f.members & i.members):
                try:
                    extend_filter_avoiding_ideal(B, f, i)
                except AssertionError:
                    ok = False
    items.append(CheckItem("filter_extension_avoiding_ideal", ok))
    ok = all(
        (a in separating_ultrafilter(B, a, b)) != (b in separating_ultrafilter(B, a, b))
        for a in B.elements for b in B.elements
        if a != b and a != B.bottom and b != B.bottom
    )
    items.append(CheckItem("separation_of_distinct_nonzero", ok))
    subsets_hit = {frozenset(B.stone_map(a)) for a in B.elements}
    items.append(CheckItem(
        "stone_map_isomorphism",
        len(subsets_hit) == len(B.elements) == 2 ** len(ultra)
        and all(
            B.stone_map(B.meet(a, b)) == B.stone_map(a) & B.stone_map(b)
            and B.stone_map(B.join(a, b)) == B.stone_map(a) | B.stone_map(b)
            for a in B.elements for b in B.elements
        ),
    ))
    return Report(items)


def find_balg_isomorphism(A, B):
    """Isomorphism A -> B as an id map, or None.

    Brute force over atom matchings; an element maps to the join of the
    images of the atoms below it.
    """
    if len(A.elements) != len(B.elements) or len(A.atoms) != len(B.atoms):
        return None
    for perm in permutations(B.atoms):
        amap = dict(zip(A.atoms, perm))
        mapping = {}
        for e in A.elements:
            mapping[e] = B.join_all(amap[a] for a in A.atoms if A.leq(a, e))
        if len(set(mapping.values())) != len(A.elements):
            continue
        ok = all(
            A.leq(x, y) == B.leq(mapping[x], mapping[y])
            for x in A.elements for y in A.elements
        )
        if ok:
            return mapping
    return None
