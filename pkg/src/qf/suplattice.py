"""Join-preserving maps between finite lattices.

Covers adjoints, the image factorization, the normality flags of a map,
the totally-below relation, supercontinuity and dual bases, and downset
lattices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NotJoinPreserving, NotMeetPreserving, NotSupercontinuous, SizeCapExceeded
from .lattice import FiniteLattice, FinitePoset, bits, chain, element_cap, induced_lattice, join_irreducibles


class LatticeMap:
    """A total map between the element tables of two finite lattices."""

    __slots__ = ("source", "target", "table")

    def __init__(self, source, target, table):
        table = tuple(table)
        if len(table) != len(source):
            raise ValueError("map table does not cover the source")
        for y in table:
            target.check(y)
        self.source = source
        self.target = target
        self.table = table

    def __call__(self, a):
        return self.table[a]

    def __eq__(self, other):
        return (
            isinstance(other, LatticeMap)
            and self.table == other.table
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"{type(self).__name__}({list(self.table)})"

    def is_monotone(self):
        S, T, f = self.source, self.target, self.table
        return all(T.leq(f[a], f[b]) for a, b in S.leq_pairs())

    def is_join_preserving(self):
        S, T, f = self.source, self.target, self.table
        if f[S.bottom] != T.bottom:
            return False
        n = len(S)
        for a in range(n):
            for b in range(a + 1, n):
                if f[S.join(a, b)] != T.join(f[a], f[b]):
                    return False
        return True

    def is_meet_preserving(self):
        S, T, f = self.source, self.target, self.table
        if f[S.top] != T.top:
            return False
        n = len(S)
        for a in range(n):
            for b in range(a + 1, n):
                if f[S.meet(a, b)] != T.meet(f[a], f[b]):
                    return False
        return True

    def is_injective(self):
        return len(set(self.table)) == len(self.table)

    def is_surjective(self):
        return len(set(self.table)) == len(self.target)

    def image(self):
        return sorted(set(self.table))


class SupMorphism(LatticeMap):
    """A map preserving all joins, the empty join included. Checked on construction."""

    __slots__ = ()

    def __init__(self, source, target, table):
        super().__init__(source, target, table)
        if not self.is_join_preserving():
            raise NotJoinPreserving("map does not preserve joins")


def identity(L):
    return SupMorphism(L, L, range(len(L)))


def compose(g, f):
    """g after f."""
    if f.target != g.source:
        raise ValueError("maps are not composable")
    table = [g.table[y] for y in f.table]
    if isinstance(f, SupMorphism) and isinstance(g, SupMorphism):
        return SupMorphism(f.source, g.target, table)
    return LatticeMap(f.source, g.target, table)


def _as_sup(f):
    if isinstance(f, SupMorphism):
        return f
    if not f.is_join_preserving():
        raise NotJoinPreserving("map does not preserve joins")
    return f


def right_adjoint(f):
    """f_*(y) = join of all x with f(x) <= y. The result preserves meets."""
    f = _as_sup(f)
    S, T = f.source, f.target
    table = []
    for y in T.elements:
        table.append(S.join_all(x for x in S.elements if T.leq(f.table[x], y)))
    return LatticeMap(T, S, table)


def left_adjoint(g):
    """g_!(a) = meet of all d with a <= g(d), for a meet-preserving g."""
    if not g.is_meet_preserving():
        raise NotMeetPreserving("map does not preserve meets")
    S, T = g.source, g.target
    table = []
    for a in T.elements:
        table.append(S.meet_all(d for d in S.elements if T.leq(a, g.table[d])))
    return SupMorphism(T, S, table)


def image_factorization(f):
    """Split f as mono after epi through the image, ordered as in the target."""
    f = _as_sup(f)
    img = f.image()
    middle = induced_lattice(f.target, img)
    pos = {y: i for i, y in enumerate(img)}
    epi = SupMorphism(f.source, middle, [pos[y] for y in f.table])
    mono = SupMorphism(middle, f.target, img)
    return epi, mono


# --- normality -------------------------------------------------------------


@dataclass(frozen=True)
class NormalityProfile:
    normal_mono: bool
    normal_epi: bool
    mono_normal: bool
    epi_normal: bool
    composably_mono_normal: bool
    composably_epi_normal: bool
    strict: bool
    composably_strict: bool


def _image_downward_closed(f):
    T = f.target
    img = 0
    for y in f.table:
        img |= 1 << y
    return all(T.down_mask(y) & ~img == 0 for y in bits(img))


def is_mono_normal(f):
    """The monic factor of f is a normal mono: the image is a downset."""
    return _image_downward_closed(_as_sup(f))


def is_epi_normal(f, upper=None):
    """The epic factor of f is a normal epi: f_* f (x) = x v f_*(0)."""
    f = _as_sup(f)
    upper = upper or right_adjoint(f)
    S = f.source
    k = upper.table[f.target.bottom]
    return all(upper.table[f.table[x]] == S.join(x, k) for x in S.elements)


def composably_epi_normal(f, upper=None):
    """x v f_*(a) >= f_*(f(x) v a) for every a in the target and x in the source."""
    f = _as_sup(f)
    upper = upper or right_adjoint(f)
    S, T = f.source, f.target
    for a in T.elements:
        fa = upper.table[a]
        for x in S.elements:
            if not S.leq(upper.table[T.join(f.table[x], a)], S.join(x, fa)):
                return False
    return True


def composably_mono_normal(f, upper=None):
    """y ^ f(b) <= f(f_*(y) ^ b) for every b in the source and y in the target."""
    f = _as_sup(f)
    upper = upper or right_adjoint(f)
    S, T = f.source, f.target
    for b in S.elements:
        fb = f.table[b]
        for y in T.elements:
            if not T.leq(T.meet(y, fb), f.table[S.meet(upper.table[y], b)]):
                return False
    return True


def composably_strict(f, upper=None):
    """f restricted to every principal downset, and f followed by every
    closed quotient x -> x v a, are both mono-normal and epi-normal."""
    f = _as_sup(f)
    upper = upper or right_adjoint(f)
    S, T = f.source, f.target
    ft, ut = f.table, upper.table
    zero_pre = ut[T.bottom]
    for b in S.elements:
        fb = ft[b]
        # image of the restriction is a downset
        for z in bits(T.down_mask(fb)):
            if not T.leq(z, ft[S.meet(ut[z], b)]):
                return False
        # restricted kernel congruence is generated by its bottom class
        kb = S.meet(zero_pre, b)
        for x in bits(S.down_mask(b)):
            if S.meet(ut[ft[x]], b) != S.join(x, kb):
                return False
    for a in T.elements:
        ua = ut[a]
        for x in S.elements:
            if ut[T.join(ft[x], a)] != S.join(x, ua):
                return False
        # image of the quotient composite is a downset of the upset of a
        for z in bits(T.up_mask(a) & T.down_mask(T.join(ft[S.top], a))):
            if not T.leq(z, T.join(ft[ut[z]], a)):
                return False
    return True


def normality_profile(f):
    f = _as_sup(f)
    upper = right_adjoint(f)
    mono_n = is_mono_normal(f)
    epi_n = is_epi_normal(f, upper)
    return NormalityProfile(
        normal_mono=f.is_injective() and mono_n,
        normal_epi=f.is_surjective() and epi_n,
        mono_normal=mono_n,
        epi_normal=epi_n,
        composably_mono_normal=composably_mono_normal(f, upper),
        composably_epi_normal=composably_epi_normal(f, upper),
        strict=mono_n and epi_n,
        composably_strict=composably_strict(f, upper),
    )


def downset_inclusion(L, b):
    """The inclusion of the principal downset of b, a normal mono."""
    members = L.downset(b)
    sub = induced_lattice(L, members)
    return SupMorphism(sub, L, members)


def closed_quotient(L, a):
    """x -> x v a onto the principal upset of a, a normal epi."""
    members = L.upset(a)
    sub = induced_lattice(L, members)
    pos = {y: i for i, y in enumerate(members)}
    return SupMorphism(L, sub, [pos[L.join(x, a)] for x in L.elements])


# --- totally below, supercontinuity, dual bases -----------------------------


def totally_below(L):
    """Pairs (b, a) with b totally below a.

    b is totally below a exactly when a is not below the join of the
    join-irreducibles that are not above b.
    """
    J = join_irreducibles(L)
    out = set()
    for b in L.elements:
        rest = L.join_all(j for j in J if not L.leq(b, j))
        for a in L.elements:
            if not L.leq(a, rest):
                out.add((b, a))
    return frozenset(out)


def totally_below_by_subsets(L):
    """The same relation straight from the definition, quantifying over every
    subset. Exponential; meant for small lattices in tests."""
    n = len(L)
    joins = []
    for mask in range(1 << n):
        joins.append((mask, L.join_mask(mask)))
    out = set()
    for b in L.elements:
        above_b = L.up_mask(b)
        for a in L.elements:
            if all(mask & above_b for mask, s in joins if L.leq(a, s)):
                out.add((b, a))
    return frozenset(out)


def way_below_sets(L, rel=None):
    rel = rel if rel is not None else totally_below(L)
    below = [0] * len(L)
    for b, a in rel:
        below[a] |= 1 << b
    return below


def is_supercontinuous(L):
    below = way_below_sets(L)
    return all(L.join_mask(below[a]) == a for a in L.elements)


def omega():
    """The two-element lattice of truth values."""
    return chain(2, ["0", "1"])


@dataclass(frozen=True)
class DualBasis:
    lattice: FiniteLattice
    r: tuple
    sigma: tuple

    def check(self):
        L = self.lattice
        for a in L.elements:
            got = L.join_all(r for r, s in zip(self.r, self.sigma) if s(a) == 1)
            if got != a:
                return False
        return True


def dual_basis(L):
    """r_x = x and sigma_x(a) = [x totally below a], for supercontinuous L."""
    if not is_supercontinuous(L):
        raise NotSupercontinuous("lattice is not supercontinuous")
    rel = totally_below(L)
    Om = omega()
    sigma = []
    for x in L.elements:
        sigma.append(SupMorphism(L, Om, [1 if (x, a) in rel else 0 for a in L.elements]))
    basis = DualBasis(L, tuple(L.elements), tuple(sigma))
    if not basis.check():
        raise AssertionError("dual basis identity fails")
    return basis


# --- downsets ----------------------------------------------------------------


@dataclass(frozen=True)
class DownsetLattice:
    lattice: FiniteLattice
    downsets: tuple
    join_map: SupMorphism | None


def downset_lattice(P, cap=None):
    """Downsets of a finite poset ordered by inclusion.

    When P is a lattice, ``join_map`` sends each downset to its join.
    """
    limit = element_cap(cap)
    found = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for d in frontier:
            for a in P.elements:
                e = d | P.down_mask(a)
                if e not in found:
                    found.add(e)
                    if len(found) > limit:
                        raise SizeCapExceeded(f"more than {limit} downsets")
                    nxt.append(e)
        frontier = nxt
    downsets = sorted(found, key=lambda m: (bin(m).count("1"), m))
    names = ["{" + ",".join(str(P.names[a]) for a in bits(m)) + "}" for m in downsets]
    down = []
    for m in downsets:
        dm = 0
        for i, m2 in enumerate(downsets):
            if m2 & ~m == 0:
                dm |= 1 << i
        down.append(dm)
    D = FiniteLattice(names, down)
    join_map = None
    if isinstance(P, FiniteLattice):
        join_map = SupMorphism(D, P, [P.join_mask(m) for m in downsets])
    return DownsetLattice(D, tuple(downsets), join_map)


def enumerate_sup_morphisms(S, T):
    """Every join-preserving map S -> T. Brute force over join-irreducible images."""
    J = join_irreducibles(S)
    out = []
    for images in itertools.product(T.elements, repeat=len(J)):
        table = [T.join_all(images[i] for i, j in enumerate(J) if S.leq(j, x)) for x in S.elements]
        f = LatticeMap(S, T, table)
        if f.is_join_preserving():
            out.append(SupMorphism(S, T, table))
    return out


__all__ = [
    "LatticeMap",
    "SupMorphism",
    "NormalityProfile",
    "DualBasis",
    "DownsetLattice",
    "FinitePoset",
    "identity",
    "compose",
    "right_adjoint",
    "left_adjoint",
    "image_factorization",
    "normality_profile",
    "is_mono_normal",
    "is_epi_normal",
    "composably_epi_normal",
    "composably_mono_normal",
    "composably_strict",
    "downset_inclusion",
    "closed_quotient",
    "totally_below",
    "totally_below_by_subsets",
    "is_supercontinuous",
    "omega",
    "dual_basis",
    "downset_lattice",
    "enumerate_sup_morphisms",
]
