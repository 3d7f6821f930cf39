"""Finite commutative rings and their ideal theory.

Rings are given by addition and multiplication tables over an element
table. Builders cover Z/n, products, quotients F_p[t]/(f) and quotients of
F_p[x1..xk] by monomials.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

from .errors import NotLocal, NotMultiplicativeSet, RingAxiomViolation, SizeCapExceeded, UsageError
from .lattice import FiniteLattice, element_cap, find_isomorphism
from .presentation import Gen, ONE, ZERO, Join, Presentation, Prod, Relation
from .quantale import (
    FiniteQuantale,
    QuantaleHom,
    check_quantale,
    chain_quantale,
    frame_of,
    hom_problem,
    homs_to_D,
    localic_nucleus,
    localic_reflection,
    primes,
    principal_profile,
    quotient_nucleus,
    nucleus_quotient,
    valuations,
)


class FiniteCommRing:
    """A finite commutative unital ring. Build through ``from_tables`` or a builder."""

    def __init__(self, names, add, mul, zero, one, label=""):
        self.names = tuple(names)
        self.add = tuple(tuple(r) for r in add)
        self.mul = tuple(tuple(r) for r in mul)
        self.zero = zero
        self.one = one
        self.label = label
        n = len(self.names)
        self.neg = tuple(next(b for b in range(n) if self.add[a][b] == zero) for a in range(n))

    def __len__(self):
        return len(self.names)

    @property
    def size(self):
        return len(self.names)

    @property
    def elements(self):
        return range(len(self.names))

    def sub(self, a, b):
        return self.add[a][self.neg[b]]

    def power(self, a, k):
        out = self.one
        for _ in range(k):
            out = self.mul[out][a]
        return out

    def index(self, name):
        if name in self.names:
            return self.names.index(name)
        raise UsageError(f"no ring element named {name!r}")

    @cached_property
    def units(self):
        return frozenset(a for a in self.elements if self.one in self.mul[a])

    @property
    def is_field(self):
        return len(self) >= 2 and len(self.units) == len(self) - 1

    def __eq__(self, other):
        return (
            isinstance(other, FiniteCommRing)
            and self.names == other.names
            and self.add == other.add
            and self.mul == other.mul
            and self.zero == other.zero
            and self.one == other.one
        )

    def __hash__(self):
        return hash((self.names, self.add, self.mul))

    def __repr__(self):
        return f"FiniteCommRing({self.label or list(self.names)!r})"


def from_tables(names, add, mul, zero, one, *, label="", cap=None):
    """Validated ring from tables; raises RingAxiomViolation on failure."""
    names = list(names)
    n = len(names)
    if n > element_cap(cap):
        raise SizeCapExceeded(f"{n} elements exceeds the cap")
    if len(set(names)) != n:
        raise RingAxiomViolation("element names are not distinct")
    for tname, t in (("add", add), ("mul", mul)):
        if len(t) != n or any(len(row) != n for row in t):
            raise RingAxiomViolation(f"{tname} table has the wrong shape")
        for row in t:
            for c in row:
                if not (isinstance(c, int) and 0 <= c < n):
                    raise RingAxiomViolation(f"{tname} table entry {c!r} out of range")
    A, M = add, mul
    for a in range(n):
        if A[zero][a] != a:
            raise RingAxiomViolation("zero is not additive identity")
        if M[one][a] != a:
            raise RingAxiomViolation("one is not multiplicative identity")
        if zero not in A[a]:
            raise RingAxiomViolation(f"{names[a]} has no additive inverse")
        for b in range(n):
            if A[a][b] != A[b][a]:
                raise RingAxiomViolation("addition is not commutative")
            if M[a][b] != M[b][a]:
                raise RingAxiomViolation("multiplication is not commutative")
    for a in range(n):
        for b in range(n):
            ab, mab = A[a][b], M[a][b]
            for c in range(n):
                if A[ab][c] != A[a][A[b][c]]:
                    raise RingAxiomViolation("addition is not associative")
                if M[mab][c] != M[a][M[b][c]]:
                    raise RingAxiomViolation("multiplication is not associative")
                if M[a][A[b][c]] != A[mab][M[a][c]]:
                    raise RingAxiomViolation("multiplication does not distribute over addition")
    return FiniteCommRing(names, add, mul, zero, one, label)


def zmod(n):
    if n < 2:
        raise RingAxiomViolation("Z/n needs n >= 2")
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    mul = [[(a * b) % n for b in range(n)] for a in range(n)]
    return from_tables([str(a) for a in range(n)], add, mul, 0, 1, label=f"Z/{n}")


def product(R1, R2):
    pairs = [(a, b) for a in R1.elements for b in R2.elements]
    pos = {p: i for i, p in enumerate(pairs)}
    names = [f"({R1.names[a]},{R2.names[b]})" for a, b in pairs]
    add = [[pos[(R1.add[a][c], R2.add[b][d])] for c, d in pairs] for a, b in pairs]
    mul = [[pos[(R1.mul[a][c], R2.mul[b][d])] for c, d in pairs] for a, b in pairs]
    label = f"{_wrap(R1.label)} x {_wrap(R2.label)}"
    return from_tables(names, add, mul, pos[(R1.zero, R2.zero)], pos[(R1.one, R2.one)], label=label)


def _wrap(label):
    return f"({label})" if " x " in label else label


def _poly_name(coeffs, var="t"):
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        if e == 0:
            terms.append(str(c))
        else:
            mono = var if e == 1 else f"{var}^{e}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


def polyquot(p, coeffs, var="t", cap=None):
    """F_p[t]/(f) for prime p and monic f = c0 + c1 t + ... + t^d, given
    as the coefficient list [c0, c1, ..., 1] from low to high degree."""
    coeffs = [int(c) % p for c in coeffs]
    if p < 2 or any(p % q == 0 for q in range(2, int(math.isqrt(p)) + 1)):
        raise RingAxiomViolation(f"{p} is not prime")
    d = len(coeffs) - 1
    if d < 1 or coeffs[-1] != 1:
        raise RingAxiomViolation("polynomial must be monic of degree at least 1")
    if p**d > element_cap(cap):
        raise SizeCapExceeded(f"F_{p}[{var}]/(f) has {p ** d} elements")
    elems = list(itertools.product(range(p), repeat=d))
    elems.sort(key=lambda c: (sum(1 for x in c if x), tuple(reversed(c))))
    pos = {e: i for i, e in enumerate(elems)}

    def reduce(poly):
        poly = list(poly)
        for e in range(len(poly) - 1, d - 1, -1):
            c = poly[e] % p
            if c:
                for k in range(d + 1):
                    poly[e - d + k] = (poly[e - d + k] - c * coeffs[k]) % p
        return tuple(x % p for x in poly[:d]) + (0,) * max(0, d - len(poly))

    def mul(a, b):
        out = [0] * (2 * d)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return reduce(out)

    add = [[pos[tuple((x + y) % p for x, y in zip(a, b))] for b in elems] for a in elems]
    mult = [[pos[mul(a, b)] for b in elems] for a in elems]
    names = [_poly_name(e, var) for e in elems]
    zero = pos[(0,) * d]
    one = pos[(1,) + (0,) * (d - 1)]
    label = f"F{p}[{var}]/({_poly_name(coeffs, var)})"
    return from_tables(names, add, mult, zero, one, label=label)


def monomial_ring(p, variables, killed, cap=None):
    """F_p[variables] modulo the ideal generated by the given monomials.

    ``killed`` lists monomials as exponent tuples; every variable must have
    a killed pure power so that the quotient is finite.
    """
    k = len(variables)
    killed = [tuple(m) for m in killed]
    for i in range(k):
        if not any(all(e == 0 for j, e in enumerate(m) if j != i) and m[i] > 0 for m in killed):
            raise RingAxiomViolation(f"no power of {variables[i]} is killed; quotient is infinite")

    def dead(m):
        return any(all(x >= y for x, y in zip(m, km)) for km in killed)

    bound = [min(m[i] for m in killed if all(e == 0 for j, e in enumerate(m) if j != i) and m[i] > 0) for i in range(k)]
    standard = [m for m in itertools.product(*(range(b) for b in bound)) if not dead(m)]
    standard.sort(key=lambda m: (sum(m), tuple(-x for x in m)))
    if p ** len(standard) > element_cap(cap):
        raise SizeCapExceeded("monomial quotient is too large")
    spos = {m: i for i, m in enumerate(standard)}
    elems = list(itertools.product(range(p), repeat=len(standard)))
    elems.sort(key=lambda c: (sum(1 for x in c if x), tuple(reversed(c))))
    pos = {e: i for i, e in enumerate(elems)}

    def mul(a, b):
        out = [0] * len(standard)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                m = tuple(u + v for u, v in zip(standard[i], standard[j]))
                if not dead(m):
                    out[spos[m]] = (out[spos[m]] + x * y) % p
        return tuple(out)

    def mono_name(m):
        parts = []
        for v, e in zip(variables, m):
            if e:
                parts.append(v if e == 1 else f"{v}^{e}")
        return "".join(parts) or "1"

    def name(c):
        terms = []
        for i in range(len(standard) - 1, -1, -1):
            if c[i]:
                mn = mono_name(standard[i])
                terms.append(mn if c[i] == 1 and mn != "1" else (str(c[i]) if mn == "1" else f"{c[i]}{mn}"))
        return "+".join(terms) if terms else "0"

    add = [[pos[tuple((x + y) % p for x, y in zip(a, b))] for b in elems] for a in elems]
    mult = [[pos[mul(a, b)] for b in elems] for a in elems]
    zero = pos[(0,) * len(standard)]
    one = pos[tuple(1 if m == (0,) * k else 0 for m in standard)]
    gens = ",".join(mono_name(m) for m in killed)
    label = f"F{p}[{','.join(variables)}]/({gens})"
    return from_tables([name(e) for e in elems], add, mult, zero, one, label=label)


def parse_ring(spec):
    """Build a ring from a short description.

    ``zmod N``; ``poly P c0 c1 ... 1`` for F_P[t]/(c0 + c1 t + ... + t^d);
    ``mono P x,y x^2 x*y y^2`` for a monomial quotient; ``json PATH``;
    and ``A x B`` for the product of two such rings.
    """
    spec = spec.strip()
    if " x " in spec:
        left, right = spec.split(" x ", 1)
        return product(parse_ring(left), parse_ring(right))
    words = spec.split()
    if not words:
        raise UsageError("empty ring description")
    kind, args = words[0], words[1:]
    try:
        if kind == "zmod" and len(args) == 1:
            return zmod(int(args[0]))
        if kind == "poly" and len(args) >= 3:
            return polyquot(int(args[0]), [int(a) for a in args[1:]])
        if kind == "mono" and len(args) >= 3:
            variables = args[1].split(",")
            killed = [_parse_monomial(m, variables) for m in args[2:]]
            return monomial_ring(int(args[0]), variables, killed)
        if kind == "json" and len(args) == 1:
            from .serialize import load_json, ring_from_json

            return ring_from_json(load_json(args[0]))
    except ValueError as exc:
        raise UsageError(f"bad ring description {spec!r}: {exc}") from None
    raise UsageError(f"bad ring description {spec!r}")


def _parse_monomial(text, variables):
    exps = [0] * len(variables)
    for factor in text.split("*"):
        base, _, power = factor.partition("^")
        if base not in variables:
            raise ValueError(f"unknown variable {base!r}")
        exps[variables.index(base)] += int(power) if power else 1
    return tuple(exps)


# --- ideals ---------------------------------------------------------------------


@dataclass(frozen=True)
class Ideal:
    ring: FiniteCommRing = field(compare=False, repr=False, hash=False)
    members: frozenset

    def __contains__(self, a):
        return a in self.members

    def __len__(self):
        return len(self.members)

    @property
    def is_whole(self):
        return self.ring.one in self.members


def principal_members(R, a):
    return frozenset(R.mul[r][a] for r in R.elements)


def ideal_sum(R, I, J):
    return frozenset(R.add[i][j] for i in I for j in J)


def ideal_generated(R, gens):
    out = frozenset([R.zero])
    for g in gens:
        if g not in out:
            out = ideal_sum(R, out, principal_members(R, g))
    return out


def ideal_product(R, I, J):
    return ideal_generated(R, {R.mul[i][j] for i in I for j in J})


def is_ideal(R, members):
    members = frozenset(members)
    if R.zero not in members:
        return False
    for a in members:
        for b in members:
            if R.add[a][b] not in members:
                return False
        for r in R.elements:
            if R.mul[r][a] not in members:
                return False
    return True


def all_ideals(R):
    """Every ideal, found by closing the principal ideals under sums."""
    found = {principal_members(R, a) for a in R.elements}
    work = list(found)
    while work:
        I = work.pop()
        for a in R.elements:
            if a in I:
                continue
            J = ideal_sum(R, I, principal_members(R, a))
            if J not in found:
                found.add(J)
                work.append(J)
    return sorted(found, key=lambda I: (len(I), sorted(I)))


def ideal_name(R, members):
    """A short label (a, b, ...) from a smallest generating set."""
    if members == frozenset([R.zero]):
        return "(0)"
    if R.one in members:
        return "(1)"
    pool = sorted(members)
    for k in range(1, 4):
        for combo in itertools.combinations(pool, k):
            if ideal_generated(R, combo) == members:
                return "(" + ",".join(R.names[c] for c in combo) + ")"
    gens = []
    cur = frozenset([R.zero])
    for a in pool:
        if a not in cur:
            gens.append(a)
            cur = ideal_generated(R, gens)
    return "(" + ",".join(R.names[c] for c in gens) + ")"


def radical_members(R, members):
    out = set()
    for x in R.elements:
        y = x
        for _ in range(len(R) + 1):
            if y in members:
                out.add(x)
                break
            y = R.mul[y][x]
    return frozenset(out)


def radical(I):
    return Ideal(I.ring, radical_members(I.ring, I.members))


def is_prime_members(R, members):
    if R.one in members:
        return False
    for a in R.elements:
        if a in members:
            continue
        for b in R.elements:
            if b not in members and R.mul[a][b] in members:
                return False
    return True


def is_primary_members(R, members):
    if R.one in members:
        return False
    rad = radical_members(R, members)
    for a in R.elements:
        if a in members:
            continue
        for b in R.elements:
            if R.mul[a][b] in members and b not in rad:
                return False
    return True


def prime_spectrum(R):
    return [Ideal(R, I) for I in all_ideals(R) if is_prime_members(R, I)]


def maximal_ideals(R):
    proper = [I for I in all_ideals(R) if R.one not in I]
    return [Ideal(R, I) for I in proper if not any(I < J for J in proper)]


def is_local(R):
    return len(maximal_ideals(R)) == 1


def cotangent_dim(R):
    """dim of m/m^2 over R/m for a local ring with maximal ideal m."""
    maxes = maximal_ideals(R)
    if len(maxes) != 1:
        raise NotLocal(f"ring has {len(maxes)} maximal ideals")
    m = maxes[0].members
    q = len(R) // len(m)
    m2 = ideal_product(R, m, m)
    ratio = len(m) // len(m2)
    dim = round(math.log(ratio, q)) if ratio > 1 else 0
    if q**dim != ratio:
        raise AssertionError("m/m^2 is not a vector space over the residue field")
    return dim


def primary_pairs(R):
    """(P, J) with P prime, J P-primary and J containing P^2."""
    out = []
    ideals = all_ideals(R)
    for P in ideals:
        if not is_prime_members(R, P):
            continue
        P2 = ideal_product(R, P, P)
        for J in ideals:
            if P2 <= J and radical_members(R, J) == P and is_primary_members(R, J):
                out.append((Ideal(R, P), Ideal(R, J)))
    return out


# --- the quantale of ideals ---------------------------------------------------


@dataclass
class IdealQuantale:
    ring: FiniteCommRing
    quantale: FiniteQuantale
    ideals: tuple  # element index -> frozenset of members

    def element_of(self, members):
        return self.ideals.index(frozenset(members))

    def ideal(self, a):
        return Ideal(self.ring, self.ideals[a])


def ideal_quantale(R):
    """Idl(R): ideals under inclusion with the ideal product."""
    ideals = tuple(all_ideals(R))
    names = [ideal_name(R, I) for I in ideals]
    down = []
    for I in ideals:
        mask = 0
        for k, J in enumerate(ideals):
            if J <= I:
                mask |= 1 << k
        down.append(mask)
    L = FiniteLattice(names, down)
    pos = {I: k for k, I in enumerate(ideals)}
    n = len(ideals)
    mult = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            mult[a][b] = mult[b][a] = pos[ideal_product(R, ideals[a], ideals[b])]
    Q = FiniteQuantale(L, mult, pos[frozenset(R.elements)])
    check_quantale(Q)
    return IdealQuantale(R, Q, ideals)


def rad_frame(R):
    """Radical ideals under inclusion, with intersection as product."""
    rads = sorted({radical_members(R, I) for I in all_ideals(R)}, key=lambda I: (len(I), sorted(I)))
    names = [ideal_name(R, I) for I in rads]
    down = []
    for I in rads:
        mask = 0
        for k, J in enumerate(rads):
            if J <= I:
                mask |= 1 << k
        down.append(mask)
    L = FiniteLattice(names, down)
    pos = {I: k for k, I in enumerate(rads)}
    for a, I in enumerate(rads):
        for b, J in enumerate(rads):
            if pos[radical_members(R, ideal_product(R, I, J))] != L.meet(a, b):
                raise AssertionError("radical of a product is not the intersection")
    F = frame_of(L)
    return IdealQuantale(R, F, tuple(rads))


def zariski_check(R):
    """Compare the localic reflection of Idl(R) with the radical ideals.

    Returns a pair of flags: the semiprime ideals are exactly the radical
    ideals and the reflection is order-isomorphic to the radical-ideal
    lattice; the prime elements of Idl(R) are exactly the prime ideals.
    """
    IQ = ideal_quantale(R)
    loc, _ = localic_reflection(IQ.quantale)
    nu = localic_nucleus(IQ.quantale)
    semiprime = {IQ.ideals[a] for a in IQ.quantale.elements if nu.table[a] == a}
    rad_sets = {radical_members(R, I) for I in IQ.ideals}
    iso = find_isomorphism(loc.lattice, rad_frame(R).quantale.lattice) is not None
    prime_elems = {IQ.ideals[p] for p in primes(IQ.quantale)}
    spec = {P.members for P in prime_spectrum(R)}
    return semiprime == rad_sets and iso, prime_elems == spec


# --- element-indexed presentation of Idl(R) -------------------------------------


def ideal_presentation(R):
    """One generator per ring element with 0 = 0, 1 = 1, products of
    generators given by the ring product and each sum below the join."""
    gen = [f"r{a}" for a in R.elements]
    rels = [Relation(Gen(gen[R.zero]), "=", ZERO), Relation(Gen(gen[R.one]), "=", ONE)]
    for a in R.elements:
        for b in R.elements:
            if b < a:
                continue
            rels.append(Relation(Prod(Gen(gen[a]), Gen(gen[b])), "=", Gen(gen[R.mul[a][b]])))
            rels.append(Relation(Gen(gen[R.add[a][b]]), "<=", Join(Gen(gen[a]), Gen(gen[b]))))
    return Presentation(f"ideals_{R.label or 'R'}".replace("/", "_").replace(" ", ""), tuple(gen), tuple(rels))


# --- localisation ------------------------------------------------------------------


def check_multiplicative(R, S):
    S = frozenset(S)
    if R.one not in S:
        raise NotMultiplicativeSet("S does not contain 1")
    for a in S:
        for b in S:
            if R.mul[a][b] not in S:
                raise NotMultiplicativeSet("S is not closed under multiplication")
    return S


def powers(R, f):
    out = {R.one}
    x = R.one
    while True:
        x = R.mul[x][f]
        if x in out:
            return frozenset(out)
        out.add(x)


@dataclass
class RingLocalisation:
    ring: FiniteCommRing
    hom: tuple  # element of R -> element of the localisation
    pair_class: dict  # (r, s) -> element of the localisation


def localise_ring(R, S):
    """S^-1 R as fractions (r, s) with (r, s) ~ (r', s') when t(r s' - r' s) = 0
    for some t in S."""
    S = sorted(check_multiplicative(R, S))
    torsion = frozenset(x for x in R.elements if any(R.mul[t][x] == R.zero for t in S))
    reps = []
    pair_class = {}
    for r in R.elements:
        for s in S:
            for k, (r2, s2) in enumerate(reps):
                if R.sub(R.mul[r][s2], R.mul[r2][s]) in torsion:
                    pair_class[(r, s)] = k
                    break
            else:
                pair_class[(r, s)] = len(reps)
                reps.append((r, s))
    n = len(reps)

    def name(r, s):
        return R.names[r] if s == R.one else f"{R.names[r]}/{R.names[s]}"

    names = [name(r, s) for r, s in reps]
    add = [[pair_class[(R.add[R.mul[r][s2]][R.mul[r2][s]], R.mul[s][s2])] for r2, s2 in reps] for r, s in reps]
    mul = [[pair_class[(R.mul[r][r2], R.mul[s][s2])] for r2, s2 in reps] for r, s in reps]
    zero = pair_class[(R.zero, R.one)]
    one = pair_class[(R.one, R.one)]
    if n == 1:
        ring = FiniteCommRing(names, add, mul, zero, one, "0")
    else:
        ring = from_tables(names, add, mul, zero, one, label=f"{R.label}[S^-1]")
    hom = tuple(pair_class[(r, R.one)] for r in R.elements)
    return RingLocalisation(ring, hom, pair_class)


@dataclass
class SemiringLocalisation:
    quantale: FiniteQuantale
    hom: QuantaleHom
    order_ok: bool


def quantale_powers(Q, a):
    out = {Q.unit}
    x = Q.unit
    while True:
        x = Q.mul(x, a)
        if x in out:
            return frozenset(out)
        out.add(x)


def check_multiplicative_q(Q, S):
    S = frozenset(S)
    if Q.unit not in S:
        raise NotMultiplicativeSet("S does not contain the unit")
    for a in S:
        for b in S:
            if Q.mul(a, b) not in S:
                raise NotMultiplicativeSet("S is not closed under multiplication")
    return S


def localise_semiring(Q, S):
    """Quotient of Q by s = 1 for s in S, with the check that [x] <= [y]
    exactly when x*s <= y for some s in S."""
    S = check_multiplicative_q(Q, S)
    R, hom = nucleus_quotient(quotient_nucleus(Q, [(s, Q.unit) for s in sorted(S)]))
    ok = True
    for x in Q.elements:
        for y in Q.elements:
            lhs = R.leq(hom.table[x], hom.table[y])
            rhs = any(Q.leq(Q.mul(x, s), y) for s in S)
            if lhs != rhs:
                ok = False
    return SemiringLocalisation(R, hom, ok)


def glueing_holds(Q, cover):
    """For a cover (join = top), x <= y whenever every localisation at the
    powers of a cover element has [x] <= [y]."""
    if Q.lattice.join_all(cover) != Q.top:
        raise ValueError("elements do not cover the top")
    locs = [localise_semiring(Q, quantale_powers(Q, a)) for a in cover]
    for x in Q.elements:
        for y in Q.elements:
            if all(l.quantale.leq(l.hom.table[x], l.hom.table[y]) for l in locs) and not Q.leq(x, y):
                return False
    return True


# --- locally principal ideals ---------------------------------------------------


@dataclass(frozen=True)
class LocallyPrincipalRow:
    ideal: str
    principal: bool
    locally_principal: bool
    witnesses: tuple

    @property
    def agree(self):
        return self.principal == self.locally_principal


def _is_principal_members(R, members):
    return any(principal_members(R, a) == members for a in members)


def locally_principal_crosscheck(R):
    """For each ideal, the principal flag in Idl(R) next to a direct search
    for f1..fk generating R with the ideal principal in every R[1/fi]."""
    IQ = ideal_quantale(R)
    locs = {f: localise_ring(R, powers(R, f)) for f in R.elements}
    rows = []
    for a, I in enumerate(IQ.ideals):
        flag = principal_profile(IQ.quantale, a).principal
        good = []
        for f, loc in locs.items():
            image = ideal_generated(loc.ring, {loc.hom[x] for x in I})
            if _is_principal_members(loc.ring, image):
                good.append(f)
        brute = R.one in ideal_generated(R, good)
        rows.append(LocallyPrincipalRow(IQ.quantale.names[a], flag, brute, tuple(R.names[f] for f in good)))
    return rows


# --- valuations --------------------------------------------------------------------

INF = None


def _vadd(x, y, k):
    if x is None or y is None:
        return None
    s = x + y
    return None if s > k else s


def _vge(x, y):
    """x >= y in N u {inf}."""
    if x is None:
        return True
    if y is None:
        return False
    return x >= y


def _vmin(x, y):
    if x is None:
        return y
    if y is None:
        return x
    return min(x, y)


def prevaluations(R, k):
    """Maps v: R -> {0..k, inf} with v(0) = inf, v(1) = 0,
    v(a+b) >= min(v(a), v(b)) and v(ab) = v(a) + v(b) (saturating above k)."""
    n = len(R)
    order = [R.zero, R.one] + [a for a in R.elements if a not in (R.zero, R.one)]
    pos = {a: i for i, a in enumerate(order)}
    checks = [[] for _ in range(n)]
    for a in R.elements:
        for b in R.elements:
            if b < a:
                continue
            ready = max(pos[a], pos[b], pos[R.add[a][b]], pos[R.mul[a][b]])
            checks[ready].append((a, b))
    values = list(range(k + 1)) + [INF]
    v = {}
    out = []

    def ok(a, b):
        s, p = R.add[a][b], R.mul[a][b]
        return _vge(v[s], _vmin(v[a], v[b])) and v[p] == _vadd(v[a], v[b], k)

    def search(i):
        if i == n:
            out.append(tuple(v[a] for a in R.elements))
            return
        a = order[i]
        if a == R.zero:
            choices = [INF]
        elif a == R.one:
            choices = [0]
        else:
            choices = values
        for c in choices:
            v[a] = c
            if all(ok(x, y) for x, y in checks[i]):
                search(i + 1)
        del v[a]

    search(0)
    return out


def valuation_of_prevaluation(IQ, v, k, C=None):
    """I -> join of g^v(a) over a in I, as a table into C_k."""
    C = C or chain_quantale(k)

    def idx(e):
        return 0 if e is None else k + 1 - e

    table = []
    for I in IQ.ideals:
        table.append(C.lattice.join_all(idx(v[a]) for a in I))
    return table


@dataclass(frozen=True)
class PrevaluationReport:
    prevaluations: tuple
    valuations: int
    bijective: bool


def prevaluation_crosscheck(R, k):
    IQ = ideal_quantale(R)
    C = chain_quantale(k)
    pv = prevaluations(R, k)
    homs = {h.table for h in valuations(IQ.quantale, k)}
    images = []
    for v in pv:
        t = tuple(valuation_of_prevaluation(IQ, v, k, C))
        if hom_problem(IQ.quantale, C, t) is not None:
            images.append(None)
        else:
            images.append(t)
    bij = None not in images and len(set(images)) == len(images) and set(images) == homs
    return PrevaluationReport(tuple(pv), len(homs), bij)


def d_hom_crosscheck(R):
    """Pairs (p, j) from homs Idl(R) -> D against primary pairs of R.

    Returns (pairs from homs, pairs from ideals), both as sets of member sets.
    """
    IQ = ideal_quantale(R)
    from_homs = {(IQ.ideals[h.p], IQ.ideals[h.j]) for h in homs_to_D(IQ.quantale)}
    from_ring = {(P.members, J.members) for P, J in primary_pairs(R)}
    return from_homs, from_ring


# --- corpora ---------------------------------------------------------------------


def _monic_polys(p, d):
    for tail in itertools.product(range(p), repeat=d):
        yield list(tail) + [1]


def builder_rings(max_order=16):
    """Z/n, F_2 and F_3 polynomial quotients, and products of two of these,
    all of order at most max_order."""
    zs = [zmod(n) for n in range(2, max_order + 1)]
    polys = []
    for p in (2, 3):
        d = 1
        while p**d <= max_order:
            for f in _monic_polys(p, d):
                polys.append((d, polyquot(p, f)))
            d += 1
    out = zs + [R for _, R in polys]
    # degree one quotients are copies of Z/p and are left out of products
    factors = zs + [R for d, R in polys if d >= 2]
    for i, A in enumerate(factors):
        for B in factors[i:]:
            if len(A) * len(B) <= max_order:
                out.append(product(A, B))
    return out


def local_rings(max_order=16):
    """Finite local rings of order at most max_order from the builders plus
    monomial quotients of F_p[x, y] with two-dimensional cotangent space."""
    out = [R for R in builder_rings(max_order) if is_local(R)]
    quotients = [
        (2, [(2, 0), (1, 1), (0, 2)]),
        (2, [(2, 0), (0, 2)]),
        (2, [(3, 0), (1, 1), (0, 2)]),
        (3, [(2, 0), (1, 1), (0, 2)]),
    ]
    for p, killed in quotients:
        # order is p to the number of surviving monomials
        if p ** _surviving_monomials(killed) <= max_order:
            out.append(monomial_ring(p, ["x", "y"], killed))
    return out


def _surviving_monomials(killed):
    bound = max(sum(k) for k in killed) + 1
    count = 0
    for i in range(bound):
        for j in range(bound):
            if not any(i >= a and j >= b for a, b in killed):
                count += 1
    return count
