"""Finite posets and lattices.

Elements are the indices ``0..n-1`` of an element table of display names.
The order is stored as two lists of int bitsets: ``down[a]`` has bit ``b``
set iff ``b <= a`` and ``up[a]`` has bit ``b`` set iff ``a <= b``.
Join and meet tables are computed once at construction.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from .errors import NotALattice, NotAPartialOrder, SizeCapExceeded, UnknownElement

DEFAULT_ELEMENT_CAP = 4096


def element_cap(cap=None):
    """The active size cap: explicit argument, then $QF_ELEMENT_CAP, then the default."""
    if cap is not None:
        return int(cap)
    env = os.environ.get("QF_ELEMENT_CAP")
    if env:
        return int(env)
    return DEFAULT_ELEMENT_CAP


def bits(mask):
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask):
    return bin(mask).count("1")


class FinitePoset:
    """A finite partial order on the indices of ``names``."""

    def __init__(self, names, down):
        self.names = tuple(names)
        self._down = tuple(down)
        n = len(self.names)
        up = [0] * n
        for a in range(n):
            for b in bits(self._down[a]):
                up[b] |= 1 << a
        self._up = tuple(up)
        self._index = {name: i for i, name in enumerate(self.names)}

    @property
    def size(self):
        return len(self.names)

    def __len__(self):
        return len(self.names)

    @property
    def elements(self):
        return range(len(self.names))

    def index(self, name):
        """Index of an element given by name (or already an index)."""
        if name in self._index:
            return self._index[name]
        if isinstance(name, int) and not isinstance(name, bool) and 0 <= name < len(self.names):
            return name
        raise UnknownElement(f"no element named {name!r}")

    def check(self, a):
        if not (isinstance(a, int) and 0 <= a < len(self.names)):
            raise UnknownElement(f"no element with index {a!r}")
        return a

    def leq(self, a, b):
        return (self._down[b] >> a) & 1 == 1

    def lt(self, a, b):
        return a != b and self.leq(a, b)

    def down_mask(self, a):
        return self._down[a]

    def up_mask(self, a):
        return self._up[a]

    def downset(self, a):
        return bits(self._down[a])

    def upset(self, a):
        return bits(self._up[a])

    def leq_pairs(self):
        """All pairs (a, b) with a <= b, sorted."""
        return [(a, b) for b in range(len(self.names)) for a in bits(self._down[b])]

    def covers(self):
        """Pairs (a, b) where b covers a, sorted by (a, b)."""
        out = []
        for a in range(len(self.names)):
            above = self._up[a] & ~(1 << a)
            for b in bits(above):
                between = above & self._down[b] & ~(1 << b)
                if not between:
                    out.append((a, b))
        return out

    def lower_covers(self, b):
        return [a for a, c in self.covers() if c == b]

    def heights(self):
        """Length of the longest chain from a minimal element up to each element."""
        order = sorted(range(len(self.names)), key=lambda a: popcount(self._down[a]))
        h = [0] * len(self.names)
        for b in order:
            below = self._down[b] & ~(1 << b)
            h[b] = max((h[a] + 1 for a in bits(below)), default=0)
        return h

    def is_downset(self, mask):
        return all(self._down[a] & ~mask == 0 for a in bits(mask))

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.names == other.names
            and self._down == other._down
        )

    def __hash__(self):
        return hash((self.names, self._down))

    def __repr__(self):
        return f"{type(self).__name__}({list(self.names)!r})"


def _order_masks(names, leq, close):
    n = len(names)
    index = {name: i for i, name in enumerate(names)}
    if len(index) != n:
        raise NotAPartialOrder("element names are not distinct")
    down = [0] * n
    for pair in leq:
        try:
            a, b = pair
        except (TypeError, ValueError):
            raise NotAPartialOrder(f"malformed order pair {pair!r}") from None
        if a not in index or b not in index:
            raise UnknownElement(f"order pair {pair!r} mentions an unknown element")
        down[index[b]] |= 1 << index[a]
    if close:
        for a in range(n):
            down[a] |= 1 << a
        # Warshall on bitsets
        for k in range(n):
            kb = 1 << k
            for a in range(n):
                if down[a] & kb:
                    down[a] |= down[k]
    for a in range(n):
        if not (down[a] >> a) & 1:
            raise NotAPartialOrder(f"not reflexive at {names[a]!r}")
    for a in range(n):
        for b in bits(down[a]):
            if down[b] & ~down[a]:
                raise NotAPartialOrder(f"not transitive through {names[b]!r} <= {names[a]!r}")
            if b != a and (down[b] >> a) & 1:
                raise NotAPartialOrder(f"not antisymmetric: {names[a]!r} and {names[b]!r}")
    return down


def build_poset(elements, leq, *, close=False, cap=None):
    """Validated finite poset. ``leq`` is a collection of (name, name) pairs."""
    names = list(elements)
    if len(names) > element_cap(cap):
        raise SizeCapExceeded(f"{len(names)} elements exceeds the cap {element_cap(cap)}")
    return FinitePoset(names, _order_masks(names, leq, close))


class FiniteLattice(FinitePoset):
    """A finite lattice with precomputed join and meet tables."""

    def __init__(self, names, down):
        super().__init__(names, down)
        n = len(self.names)
        if n == 0:
            raise NotALattice("a lattice needs at least one element")
        # position in a linear extension: fewer elements below comes first
        order = sorted(range(n), key=lambda a: (popcount(self._down[a]), a))
        pos = [0] * n
        for p, a in enumerate(order):
            pos[a] = p
        up_lin = [0] * n
        down_lin = [0] * n
        for a in range(n):
            for b in bits(self._up[a]):
                up_lin[a] |= 1 << pos[b]
            for b in bits(self._down[a]):
                down_lin[a] |= 1 << pos[b]
        up_lin_at = [up_lin[order[p]] for p in range(n)]
        down_lin_at = [down_lin[order[p]] for p in range(n)]
        join = [[0] * n for _ in range(n)]
        meet = [[0] * n for _ in range(n)]
        for a in range(n):
            ja, ma = join[a], meet[a]
            for b in range(a, n):
                ub = up_lin[a] & up_lin[b]
                if not ub:
                    raise NotALattice(f"{self.names[a]!r} and {self.names[b]!r} have no upper bound")
                low = (ub & -ub).bit_length() - 1
                if ub & ~up_lin_at[low]:
                    raise NotALattice(f"{self.names[a]!r} and {self.names[b]!r} have no least upper bound")
                ja[b] = join[b][a] = order[low]
                lb = down_lin[a] & down_lin[b]
                if not lb:
                    raise NotALattice(f"{self.names[a]!r} and {self.names[b]!r} have no lower bound")
                high = lb.bit_length() - 1
                if lb & ~down_lin_at[high]:
                    raise NotALattice(f"{self.names[a]!r} and {self.names[b]!r} have no greatest lower bound")
                ma[b] = meet[b][a] = order[high]
        self._join = tuple(tuple(row) for row in join)
        self._meet = tuple(tuple(row) for row in meet)
        self.bottom = order[0]
        self.top = order[-1]

    def join(self, a, b):
        return self._join[a][b]

    def meet(self, a, b):
        return self._meet[a][b]

    def join_all(self, items):
        out = self.bottom
        row = self._join
        for x in items:
            out = row[out][x]
        return out

    def meet_all(self, items):
        out = self.top
        row = self._meet
        for x in items:
            out = row[out][x]
        return out

    def join_mask(self, mask):
        return self.join_all(bits(mask))

    @property
    def join_table(self):
        return self._join

    @property
    def meet_table(self):
        return self._meet

    def dual(self):
        """The same elements with the order reversed."""
        up = [self._up[a] for a in range(len(self.names))]
        return FiniteLattice(self.names, up)

    def interval(self, lo, hi):
        """The interval [lo, hi] as a lattice, keeping the element names."""
        mask = self._up[lo] & self._down[hi]
        return induced_lattice(self, bits(mask))


def build_lattice(elements, leq, *, close=False, cap=None):
    """Validated finite lattice.

    ``leq`` is a collection of (name, name) pairs which must already be
    reflexive and transitive unless ``close`` is set.
    """
    names = list(elements)
    if not names:
        raise NotALattice("a lattice needs at least one element")
    if len(names) > element_cap(cap):
        raise SizeCapExceeded(f"{len(names)} elements exceeds the cap {element_cap(cap)}")
    return FiniteLattice(names, _order_masks(names, leq, close))


def lattice_from_leq(names, leq_fn, *, cap=None):
    """Lattice on ``names`` with order given by a predicate on indices."""
    n = len(names)
    if n > element_cap(cap):
        raise SizeCapExceeded(f"{n} elements exceeds the cap {element_cap(cap)}")
    down = [0] * n
    for b in range(n):
        for a in range(n):
            if leq_fn(a, b):
                down[b] |= 1 << a
    # validate through the shared checker
    pairs = [(names[a], names[b]) for b in range(n) for a in bits(down[b])]
    return FiniteLattice(list(names), _order_masks(list(names), pairs, False))


def induced_lattice(L, subset, names=None):
    """The order induced by L on ``subset`` (a list of indices), which must be a lattice."""
    subset = list(subset)
    pos = {a: i for i, a in enumerate(subset)}
    down = []
    for a in subset:
        m = 0
        for b in bits(L.down_mask(a)):
            if b in pos:
                m |= 1 << pos[b]
        down.append(m)
    labels = list(names) if names is not None else [L.names[a] for a in subset]
    return FiniteLattice(labels, down)


# --- standard lattices ---------------------------------------------------


def chain(n, names=None):
    """The n-element chain 0 < 1 < ... < n-1."""
    labels = list(names) if names is not None else [str(i) for i in range(n)]
    return FiniteLattice(labels, [(1 << (i + 1)) - 1 for i in range(n)])


def boolean_lattice(k):
    """Powerset of a k-element set; element i is the subset with bitmask i."""
    n = 1 << k
    names = ["{" + ",".join(str(j + 1) for j in range(k) if i >> j & 1) + "}" for i in range(n)]
    return lattice_from_leq(names, lambda a, b: a & ~b == 0)


def diamond():
    """M3: bottom, three pairwise incomparable atoms, top."""
    return build_lattice(
        ["0", "a", "b", "c", "1"],
        [("0", x) for x in "abc"] + [(x, "1") for x in "abc"] + [("0", "1")],
        close=True,
    )


def pentagon():
    """N5: 0 < a < c < 1 and 0 < b < 1 with b incomparable to a and c."""
    return build_lattice(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
        close=True,
    )


# --- classification ------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    distributive: bool
    modular: bool


def modular_pair(L, x, b):
    """(x ^ b) v a == (x v a) ^ b for every a <= b."""
    L.check(x)
    L.check(b)
    xb = L.meet(x, b)
    for a in bits(L.down_mask(b)):
        if L.join(xb, a) != L.meet(L.join(x, a), b):
            return False
    return True


def dual_modular_pair(L, x, b):
    """The modular pair condition read in the opposite order:
    (x v b) ^ a == (x ^ a) v b for every a >= b."""
    L.check(x)
    L.check(b)
    xb = L.join(x, b)
    for a in bits(L.up_mask(b)):
        if L.meet(xb, a) != L.join(L.meet(x, a), b):
            return False
    return True


def is_left_modular(L, x):
    """(x, b) is a modular pair for every b."""
    return all(modular_pair(L, x, b) for b in L.elements)


def is_right_modular(L, b):
    """(x, b) is a modular pair for every x."""
    return all(modular_pair(L, x, b) for x in L.elements)


def is_left_dual_modular(L, x):
    return all(dual_modular_pair(L, x, b) for b in L.elements)


def is_right_dual_modular(L, b):
    return all(dual_modular_pair(L, x, b) for x in L.elements)


def is_distributive(L):
    J, M = L.join_table, L.meet_table
    n = len(L)
    for x in range(n):
        for y in range(n):
            for z in range(y + 1, n):
                if M[x][J[y][z]] != J[M[x][y]][M[x][z]]:
                    return False
    return True


def is_modular(L):
    return all(modular_pair(L, x, b) for x in L.elements for b in L.elements)


def classify(L):
    return Classification(distributive=is_distributive(L), modular=is_modular(L))


def join_irreducibles(L):
    """Elements other than the bottom with exactly one lower cover, in index order."""
    lower = [0] * len(L)
    for a, b in L.covers():
        lower[b] += 1
    out = [j for j in L.elements if j != L.bottom and lower[j] == 1]
    for x in L.elements:
        if L.join_all(j for j in out if L.leq(j, x)) != x:
            raise AssertionError("join-irreducibles fail to generate the lattice")
    return out


def meet_irreducibles(L):
    upper = [0] * len(L)
    for a, b in L.covers():
        upper[a] += 1
    return [m for m in L.elements if m != L.top and upper[m] == 1]


# --- isomorphism ---------------------------------------------------------


def _invariant(L, a):
    return (popcount(L.down_mask(a)), popcount(L.up_mask(a)))


def find_isomorphism(L1, L2, *, compatible=None):
    """An order isomorphism L1 -> L2 as a list, or None.

    ``compatible(partial)`` may reject a partial assignment (a dict from
    L1 indices to L2 indices) to impose further structure.
    """
    if len(L1) != len(L2):
        return None
    inv1 = [_invariant(L1, a) for a in L1.elements]
    inv2 = [_invariant(L2, a) for a in L2.elements]
    if sorted(inv1) != sorted(inv2):
        return None
    order = sorted(L1.elements, key=lambda a: (popcount(L1.down_mask(a)), a))
    assign = {}
    used = set()

    def consistent(a, b):
        for a2, b2 in assign.items():
            if L1.leq(a, a2) != L2.leq(b, b2) or L1.leq(a2, a) != L2.leq(b2, b):
                return False
        return True

    def search(k):
        if k == len(order):
            return True
        a = order[k]
        for b in L2.elements:
            if b in used or inv2[b] != inv1[a] or not consistent(a, b):
                continue
            assign[a] = b
            used.add(b)
            if (compatible is None or compatible(assign)) and search(k + 1):
                return True
            del assign[a]
            used.discard(b)
        return False

    if not search(0):
        return None
    return [assign[a] for a in L1.elements]


def is_isomorphic(L1, L2):
    return find_isomorphism(L1, L2) is not None


# --- corpus of small lattices -------------------------------------------


def all_lattices(n):
    """One representative of every isomorphism class of lattices with n elements.

    Bottom is index 0 and top is index n-1; the inner elements carry every
    partial order that makes the whole a lattice.
    """
    if n <= 0:
        return []
    if n == 1:
        return [chain(1)]
    if n == 2:
        return [chain(2)]
    m = n - 2
    found = []
    seen = {}
    for down in _inner_posets(m):
        full = [1]
        for a in range(m):
            full.append((down[a] << 1) | 1)
        full.append((1 << n) - 1)
        names = [str(i) for i in range(n)]
        try:
            L = FiniteLattice(names, full)
        except NotALattice:
            continue
        key = tuple(sorted(_invariant(L, a) for a in L.elements))
        bucket = seen.setdefault(key, [])
        if any(find_isomorphism(L, other) is not None for other in bucket):
            continue
        bucket.append(L)
        found.append(L)
    return found


def _inner_posets(m):
    """All partial orders on range(m) given as down masks, labelled."""
    pairs = [(a, b) for a in range(m) for b in range(m) if a < b]
    # choose a natural labelling: a < b in the order only if a < b as ints
    for choice in itertools.product((0, 1), repeat=len(pairs)):
        down = [1 << a for a in range(m)]
        for (a, b), c in zip(pairs, choice):
            if c:
                down[b] |= 1 << a
        ok = True
        for b in range(m):
            for a in bits(down[b]):
                if down[a] & ~down[b]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield down
