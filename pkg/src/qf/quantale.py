"""Finite commutative quantales.

A quantale here is a finite lattice with a commutative, associative
multiplication that distributes over joins and has a unit. Two-sided
quantales (unit = top) are the main objects; frames are the ones whose
multiplication is the meet.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BadUnit,
    NotAHomomorphism,
    NotANucleus,
    NotAssociative,
    NotBilinear,
    NotCommutative,
    NotTwoSided,
    SearchCapExceeded,
)
from .lattice import FiniteLattice, bits, chain, find_isomorphism, induced_lattice, join_irreducibles, popcount
from .suplattice import SupMorphism, normality_profile, right_adjoint
from .lattice import is_left_modular, is_right_modular, is_left_dual_modular, is_right_dual_modular

DEFAULT_SEARCH_CAP = 10**6


class FiniteQuantale:
    """Lattice + multiplication table + unit. Build through ``build_quantale``."""

    def __init__(self, lattice, mult, unit):
        self.lattice = lattice
        self.mult = tuple(tuple(row) for row in mult)
        self.unit = unit
        self._res = None

    # lattice passthroughs
    @property
    def names(self):
        return self.lattice.names

    @property
    def elements(self):
        return self.lattice.elements

    def __len__(self):
        return len(self.lattice)

    @property
    def size(self):
        return len(self.lattice)

    @property
    def bottom(self):
        return self.lattice.bottom

    @property
    def top(self):
        return self.lattice.top

    def leq(self, a, b):
        return self.lattice.leq(a, b)

    def join(self, a, b):
        return self.lattice.join(a, b)

    def meet(self, a, b):
        return self.lattice.meet(a, b)

    def index(self, name):
        return self.lattice.index(name)

    def mul(self, a, b):
        return self.mult[a][b]

    def mul_all(self, items):
        out = self.unit
        for x in items:
            out = self.mult[out][x]
        return out

    def power(self, a, n):
        out = self.unit
        for _ in range(n):
            out = self.mult[out][a]
        return out

    @property
    def two_sided(self):
        return self.unit == self.lattice.top

    @property
    def is_frame(self):
        L = self.lattice
        return all(self.mult[a][b] == L.meet(a, b) for a in L.elements for b in L.elements)

    @property
    def residuation_table(self):
        if self._res is None:
            L = self.lattice
            n = len(L)
            res = []
            for a in range(n):
                row = self.mult[a]
                res.append(tuple(L.join_all(c for c in range(n) if L.leq(row[c], b)) for b in range(n)))
            self._res = tuple(res)
        return self._res

    def residuate(self, a, b):
        """a -o b: the largest c with a*c <= b."""
        return self.residuation_table[a][b]

    def bullet(self, a):
        """a -o 0."""
        return self.residuation_table[a][self.lattice.bottom]

    def __eq__(self, other):
        return (
            isinstance(other, FiniteQuantale)
            and self.lattice == other.lattice
            and self.mult == other.mult
            and self.unit == other.unit
        )

    def __hash__(self):
        return hash((self.lattice, self.mult, self.unit))

    def __repr__(self):
        return f"FiniteQuantale({list(self.names)!r})"


def build_quantale(L, mult, unit, *, check=True):
    """Validated quantale on lattice L.

    ``mult`` is an n-by-n table of indices or a function of two indices;
    ``unit`` an index or element name.
    """
    n = len(L)
    if callable(mult):
        table = [[mult(a, b) for b in range(n)] for a in range(n)]
    else:
        table = [list(row) for row in mult]
        if len(table) != n or any(len(row) != n for row in table):
            raise NotBilinear("multiplication table has the wrong shape")
    for row in table:
        for c in row:
            L.check(c)
    unit = L.index(unit)
    Q = FiniteQuantale(L, table, unit)
    if check:
        check_quantale(Q)
    return Q


def check_quantale(Q):
    L, M, n = Q.lattice, Q.mult, len(Q)
    for a in range(n):
        for b in range(a + 1, n):
            if M[a][b] != M[b][a]:
                raise NotCommutative(f"{L.names[a]}*{L.names[b]} differs from {L.names[b]}*{L.names[a]}")
    for a in range(n):
        if M[Q.unit][a] != a:
            raise BadUnit(f"{L.names[Q.unit]} is not a unit at {L.names[a]}")
    J = L.join_table
    for a in range(n):
        row = M[a]
        if row[L.bottom] != L.bottom:
            raise NotBilinear(f"{L.names[a]}*0 is not 0")
        for b in range(n):
            rb = row[b]
            Jb = J[b]
            for c in range(b + 1, n):
                if row[Jb[c]] != J[rb][row[c]]:
                    raise NotBilinear(
                        f"{L.names[a]}*({L.names[b]} v {L.names[c]}) is not distributed"
                    )
    # with bilinearity in hand, associativity on join-irreducibles suffices
    gens = join_irreducibles(L)
    for a in gens:
        for b in gens:
            ab = M[a][b]
            for c in gens:
                if M[ab][c] != M[a][M[b][c]]:
                    raise NotAssociative(f"({L.names[a]}*{L.names[b]})*{L.names[c]} is not associative")


def frame_of(L):
    """The lattice L with meet as multiplication; must be distributive to be valid."""
    return build_quantale(L, lambda a, b: L.meet(a, b), L.top)


def omega_quantale():
    return frame_of(chain(2, ["0", "1"]))


def dual_numbers():
    """D: the chain 0 < e < 1 with e*e = 0."""
    return chain_quantale(1, generator="e")


def sierpinski():
    """The chain 0 < m < 1 with m*m = m, the opens of the Sierpinski space."""
    return frame_of(chain(3, ["0", "m", "1"]))


def chain_quantale(k, generator="g"):
    """C_k: powers of a generator g with g^(k+1) = 0, as a chain of k+2 elements.

    Index 0 is 0, index i (1 <= i <= k) is g^(k+1-i), index k+1 is 1.
    """
    names = ["0"]
    for e in range(k, 0, -1):
        names.append(generator if e == 1 else f"{generator}^{e}")
    names.append("1")
    L = chain(k + 2, names)

    def exponent(i):
        return None if i == 0 else k + 1 - i

    def index_of(e):
        return 0 if e is None or e > k else k + 1 - e

    def mult(a, b):
        ea, eb = exponent(a), exponent(b)
        if ea is None or eb is None:
            return 0
        return index_of(ea + eb)

    return build_quantale(L, mult, k + 1)


def chain_exponent(C, a):
    """The exponent e of g^e for an element of a chain quantale; None for 0."""
    k = len(C) - 2
    return None if a == 0 else k + 1 - a


# --- homomorphisms and nuclei ----------------------------------------------


class QuantaleHom:
    """A join-, unit- and product-preserving map. Checked on construction."""

    __slots__ = ("source", "target", "table")

    def __init__(self, source, target, table, *, check=True):
        self.source = source
        self.target = target
        self.table = tuple(table)
        if check:
            problem = hom_problem(source, target, self.table)
            if problem:
                raise NotAHomomorphism(problem)

    def __call__(self, a):
        return self.table[a]

    def __eq__(self, other):
        return isinstance(other, QuantaleHom) and self.table == other.table and self.source == other.source and self.target == other.target

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"QuantaleHom({list(self.table)})"

    def as_sup(self):
        return SupMorphism(self.source.lattice, self.target.lattice, self.table)


def hom_problem(Q, P, f):
    """None if f is a quantale homomorphism Q -> P, else a description."""
    if len(f) != len(Q):
        return "table does not cover the source"
    S, T = Q.lattice, P.lattice
    if f[S.bottom] != T.bottom:
        return "bottom not preserved"
    if f[Q.unit] != P.unit:
        return "unit not preserved"
    n = len(S)
    for a in range(n):
        fa = f[a]
        for b in range(a, n):
            if f[S.join(a, b)] != T.join(fa, f[b]):
                return "joins not preserved"
            if f[Q.mult[a][b]] != P.mult[fa][f[b]]:
                return "products not preserved"
    return None


class Nucleus:
    """Inflationary, monotone, idempotent, with nu(a)nu(b) <= nu(ab)."""

    __slots__ = ("quantale", "table")

    def __init__(self, quantale, table, *, check=True):
        self.quantale = quantale
        self.table = tuple(table)
        if check:
            problem = nucleus_problem(quantale, self.table)
            if problem:
                raise NotANucleus(problem)

    def __call__(self, a):
        return self.table[a]

    def fixpoints(self):
        return [a for a in self.quantale.elements if self.table[a] == a]


def nucleus_problem(Q, nu):
    L = Q.lattice
    n = len(L)
    if len(nu) != n:
        return "table does not cover the quantale"
    for a in range(n):
        if not L.leq(a, nu[a]):
            return f"not inflationary at {L.names[a]}"
        if nu[nu[a]] != nu[a]:
            return f"not idempotent at {L.names[a]}"
    for a, b in L.leq_pairs():
        if not L.leq(nu[a], nu[b]):
            return "not monotone"
    for a in range(n):
        for b in range(a, n):
            if not L.leq(Q.mult[nu[a]][nu[b]], nu[Q.mult[a][b]]):
                return f"nu({L.names[a]})nu({L.names[b]}) exceeds nu of the product"
    return None


def nucleus_quotient(nu):
    """The quotient on the fixpoints of nu, with product nu(a*b), and the
    surjection a -> nu(a)."""
    Q = nu.quantale
    fix = nu.fixpoints()
    pos = {a: i for i, a in enumerate(fix)}
    sub = induced_lattice(Q.lattice, fix)
    mult = [[pos[nu.table[Q.mult[a][b]]] for b in fix] for a in fix]
    R = FiniteQuantale(sub, mult, pos[nu.table[Q.unit]])
    check_quantale(R)
    hom = QuantaleHom(Q, R, [pos[nu.table[a]] for a in Q.elements])
    return R, hom


def closed_nucleus(Q, c):
    """x -> x v c."""
    return Nucleus(Q, [Q.join(x, c) for x in Q.elements])


def two_sided_nucleus(Q):
    """a -> a * top."""
    return Nucleus(Q, [Q.mul(a, Q.top) for a in Q.elements])


def _require_two_sided(Q):
    if not Q.two_sided:
        raise NotTwoSided("the quantale is not two-sided")


def semiprimes(Q):
    """Elements a with b*b <= a implying b <= a."""
    L = Q.lattice
    out = []
    for a in Q.elements:
        if all(L.leq(b, a) for b in Q.elements if L.leq(Q.mult[b][b], a)):
            out.append(a)
    return out


def localic_nucleus(Q):
    """Sends a to the least semiprime element above it."""
    _require_two_sided(Q)
    L = Q.lattice
    sp = semiprimes(Q)
    return Nucleus(Q, [L.meet_all(s for s in sp if L.leq(a, s)) for a in Q.elements])


def localic_reflection(Q):
    """The frame of semiprime elements and the reflection map onto it."""
    R, hom = nucleus_quotient(localic_nucleus(Q))
    if not R.is_frame:
        raise AssertionError("localic reflection did not produce a frame")
    return R, hom


def quotient_nucleus(Q, pairs):
    """Nucleus of the least quantale congruence identifying each pair (a, b).

    Its fixpoints are the c with a -o c == b -o c for every pair.
    """
    L = Q.lattice
    fix = [c for c in Q.elements if all(Q.residuate(a, c) == Q.residuate(b, c) for a, b in pairs)]
    return Nucleus(Q, [L.meet_all(c for c in fix if L.leq(x, c)) for x in Q.elements])


def quotient_by_relations(Q, pairs):
    return nucleus_quotient(quotient_nucleus(Q, pairs))


def primes(Q):
    """p != top with a*b <= p implying a <= p or b <= p."""
    _require_two_sided(Q)
    L = Q.lattice
    out = []
    for p in Q.elements:
        if p == L.top:
            continue
        ok = True
        for a in Q.elements:
            if L.leq(a, p):
                continue
            for b in Q.elements:
                if not L.leq(b, p) and L.leq(Q.mult[a][b], p):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(p)
    return out


# --- principal elements ------------------------------------------------------


@dataclass(frozen=True)
class PrincipalProfile:
    weak_meet: bool
    weak_join: bool
    meet: bool
    join: bool
    weak_principal: bool
    principal: bool
    strong_principal: bool


def multiplication_map(Q, k):
    """x -> k*x as a join-preserving endomorphism of the carrier."""
    return SupMorphism(Q.lattice, Q.lattice, Q.mult[k])


def is_weak_meet_principal(Q, k):
    L, M = Q.lattice, Q.mult
    return all(M[k][Q.residuate(k, x)] == L.meet(x, k) for x in Q.elements)


def is_weak_join_principal(Q, k):
    L, M = Q.lattice, Q.mult
    kb = Q.bullet(k)
    return all(Q.residuate(k, M[k][x]) == L.join(x, kb) for x in Q.elements)


def is_meet_principal(Q, k):
    L, M = Q.lattice, Q.mult
    for x in Q.elements:
        kx = Q.residuate(k, x)
        for b in Q.elements:
            if M[k][L.meet(kx, b)] != L.meet(x, M[k][b]):
                return False
    return True


def is_join_principal(Q, k):
    L, M = Q.lattice, Q.mult
    for x in Q.elements:
        kx = M[k][x]
        for a in Q.elements:
            if Q.residuate(k, L.join(kx, a)) != L.join(x, Q.residuate(k, a)):
                return False
    return True


def is_strong_principal(Q, k):
    """Multiplication by k is strict, k is modular on both sides and k -o 0
    is dual modular on both sides."""
    L = Q.lattice
    prof = normality_profile(multiplication_map(Q, k))
    if not prof.strict:
        return False
    kb = Q.bullet(k)
    return (
        is_left_modular(L, k)
        and is_right_modular(L, k)
        and is_left_dual_modular(L, kb)
        and is_right_dual_modular(L, kb)
    )


def principal_profile(Q, k):
    _require_two_sided(Q)
    Q.lattice.check(k)
    wm = is_weak_meet_principal(Q, k)
    wj = is_weak_join_principal(Q, k)
    m = is_meet_principal(Q, k)
    j = is_join_principal(Q, k)
    return PrincipalProfile(
        weak_meet=wm,
        weak_join=wj,
        meet=m,
        join=j,
        weak_principal=wm and wj,
        principal=m and j,
        strong_principal=is_strong_principal(Q, k),
    )


# --- homomorphism search -------------------------------------------------------


def enumerate_homs(Q, P, *, cap=DEFAULT_SEARCH_CAP):
    """All quantale homomorphisms Q -> P.

    A hom is determined by its values on the join-irreducibles of Q; values
    are assigned in a linear extension order, pruning on monotonicity and on
    products whose support is already assigned.
    """
    S, T = Q.lattice, P.lattice
    J = sorted(join_irreducibles(S), key=lambda a: (popcount(S.down_mask(a)), a))
    pos = {j: i for i, j in enumerate(J)}
    below = [[pos[j] for j in J if S.leq(j, x)] for x in S.elements]
    lower_j = [[pos[j2] for j2 in J if j2 != j and S.leq(j2, j)] for j in J]
    checks = [[] for _ in J]
    for i1, j1 in enumerate(J):
        for i2 in range(i1, len(J)):
            j2 = J[i2]
            support = below[Q.mult[j1][j2]]
            ready = max([i2] + support)
            checks[ready].append((i1, i2, support))
    vals = [0] * len(J)
    found = []
    count = 0

    def search(i):
        nonlocal count
        if i == len(J):
            table = [T.join_all(vals[t] for t in below[x]) for x in S.elements]
            if hom_problem(Q, P, table) is None:
                found.append(QuantaleHom(Q, P, table, check=False))
            return
        for v in T.elements:
            count += 1
            if count > cap:
                raise SearchCapExceeded(f"more than {cap} candidate assignments")
            if any(not T.leq(vals[t], v) for t in lower_j[i]):
                continue
            vals[i] = v
            if all(P.mult[vals[a]][vals[b]] == T.join_all(vals[t] for t in sup) for a, b, sup in checks[i]):
                search(i + 1)

    search(0)
    return found


def valuations(Q, height, *, cap=DEFAULT_SEARCH_CAP):
    """Homomorphisms into the chain quantale C_height."""
    _require_two_sided(Q)
    return enumerate_homs(Q, chain_quantale(height), cap=cap)


@dataclass(frozen=True)
class DHom:
    hom: QuantaleHom
    p: int
    j: int


def is_d_pair(Q, p, j):
    """p prime, p*p <= j <= p, and a*b <= j implies a <= j or b <= p."""
    L = Q.lattice
    if p == L.top or p not in primes(Q):
        return False
    if not (L.leq(Q.mult[p][p], j) and L.leq(j, p)):
        return False
    for a in Q.elements:
        if L.leq(a, j):
            continue
        for b in Q.elements:
            if L.leq(Q.mult[a][b], j) and not L.leq(b, p):
                return False
    return True


def d_pairs(Q):
    _require_two_sided(Q)
    L = Q.lattice
    out = []
    for p in primes(Q):
        for j in L.downset(p):
            if is_d_pair(Q, p, j):
                out.append((p, j))
    return out


def hom_from_pair(Q, p, j, D=None):
    """x -> 0 if x <= j, e if x <= p, else 1."""
    D = D or dual_numbers()
    L = Q.lattice
    table = [0 if L.leq(x, j) else (1 if L.leq(x, p) else 2) for x in Q.elements]
    return QuantaleHom(Q, D, table)


def homs_to_D(Q, *, cap=DEFAULT_SEARCH_CAP):
    """Every hom Q -> D with its pair (p, j) = (f_*(e), f_*(0)).

    Checks that each pair satisfies the prime/primary conditions, that the
    pair rebuilds the hom, and that every valid pair arises this way.
    """
    _require_two_sided(Q)
    D = dual_numbers()
    out = []
    for f in enumerate_homs(Q, D, cap=cap):
        upper = right_adjoint(f.as_sup())
        p, j = upper.table[1], upper.table[0]
        if not is_d_pair(Q, p, j):
            raise AssertionError("hom to D produced an invalid pair")
        if hom_from_pair(Q, p, j, D) != f:
            raise AssertionError("pair does not rebuild its hom")
        out.append(DHom(f, p, j))
    pairs = d_pairs(Q)
    if sorted(pairs) != sorted((h.p, h.j) for h in out):
        raise AssertionError("homs to D and valid pairs are not in bijection")
    return out


# --- isomorphism ---------------------------------------------------------


def find_quantale_isomorphism(Q1, Q2):
    """A lattice isomorphism that also matches products and units, or None."""
    if len(Q1) != len(Q2):
        return None

    def compatible(assign):
        for a, fa in assign.items():
            for b, fb in assign.items():
                c = Q1.mult[a][b]
                if c in assign and assign[c] != Q2.mult[fa][fb]:
                    return False
        if Q1.unit in assign and assign[Q1.unit] != Q2.unit:
            return False
        return True

    iso = find_isomorphism(Q1.lattice, Q2.lattice, compatible=compatible)
    if iso is None:
        return None
    if hom_problem(Q1, Q2, iso) is not None:
        return None
    return iso


def is_isomorphic(Q1, Q2):
    return find_quantale_isomorphism(Q1, Q2) is not None
