"""Materialize the finite two-sided quantale presented by a Presentation.

Elements of the free two-sided commutative quantale on a set of generators
are downsets of commutative monomials, ordered so that m <= m' when m' divides
m. Downsets are monomial ideals, stored by their minimal generators.

A relation u <= v (u, v finite sets of monomials) holds in the quotient iff
every stored element D satisfies ``(D : v) * u  within  D``. Closing an ideal
under that rule for every relation gives the least element above it, and the
closed ideals are exactly the quotient. Ideal chains stabilize because
monomial ideals satisfy the ascending chain condition, so closure always
terminates.

The finite part of the job is enumerating classes of monomials: breadth
first by degree, multiplying by generators, until no new class appears.
In quantic mode the search gives up above ``degree_cap`` unless ``truncate``
is set, in which case every monomial of degree ``degree_cap + 1`` is sent
to 0.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

from .errors import CapExceeded, ElementCapExceeded
from .lattice import FiniteLattice, element_cap
from .presentation import (
    One,
    Gen,
    Join,
    Prod,
    Relation,
    Zero,
    evaluate,
    substitute,
    term_generators,
)
from .quantale import FiniteQuantale, check_quantale


def degree_cap_override(cap):
    env = os.environ.get("QF_DEGREE_CAP")
    if env:
        return int(env)
    return cap


# --- monoids -------------------------------------------------------------------


class ExponentMonoid:
    """Free commutative monoid on n generators; monomials are exponent tuples."""

    idempotent = False

    def __init__(self, n):
        self.n = n
        self.one = (0,) * n

    def gen(self, i):
        return tuple(1 if k == i else 0 for k in range(self.n))

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def divides(self, a, b):
        return all(x <= y for x, y in zip(a, b))

    def residual(self, g, w):
        """Generator of the monomials m with g | m*w."""
        return tuple(x - y if x > y else 0 for x, y in zip(g, w))

    def lcm(self, a, b):
        return tuple(x if x > y else y for x, y in zip(a, b))

    def degree(self, a):
        return sum(a)

    def exponents(self, a):
        return a

    def key(self, a):
        return (sum(a), tuple(-x for x in a))

    def all_of_degree(self, d):
        for combo in itertools.combinations_with_replacement(range(self.n), d):
            m = [0] * self.n
            for i in combo:
                m[i] += 1
            yield tuple(m)


class SquarefreeMonoid:
    """Free commutative idempotent monoid; monomials are bitmasks."""

    idempotent = True

    def __init__(self, n):
        self.n = n
        self.one = 0

    def gen(self, i):
        return 1 << i

    def mul(self, a, b):
        return a | b

    def divides(self, a, b):
        return a & ~b == 0

    def residual(self, g, w):
        return g & ~w

    def lcm(self, a, b):
        return a | b

    def degree(self, a):
        return bin(a).count("1")

    def exponents(self, a):
        return tuple((a >> i) & 1 for i in range(self.n))

    def key(self, a):
        return (self.degree(a), tuple(-x for x in self.exponents(a)))


def _minimize(monoid, items):
    kept = []
    for m in sorted(set(items), key=monoid.key):
        if not any(monoid.divides(k, m) for k in kept):
            kept.append(m)
    return frozenset(kept)


class IdealArithmetic:
    """Monomial ideal operations and relation closure for a fixed monoid."""

    def __init__(self, monoid, relations):
        self.monoid = monoid
        self.relations = [(frozenset(u), frozenset(v)) for u, v in relations]
        self._cache = {}

    def minimize(self, items):
        return _minimize(self.monoid, items)

    def contains(self, ideal, m):
        div = self.monoid.divides
        return any(div(g, m) for g in ideal)

    def subset(self, a, b):
        return all(self.contains(b, g) for g in a)

    def product(self, a, b):
        mul = self.monoid.mul
        return self.minimize(mul(x, y) for x in a for y in b)

    def colon(self, ideal, w):
        res = self.monoid.residual
        return self.minimize(res(g, w) for g in ideal)

    def intersect(self, a, b):
        lcm = self.monoid.lcm
        return self.minimize(lcm(x, y) for x in a for y in b)

    def colon_set(self, ideal, v):
        out = None
        for w in v:
            c = self.colon(ideal, w)
            out = c if out is None else self.intersect(out, c)
            if not out:
                return out
        if out is None:
            return frozenset([self.monoid.one])
        return out

    def close(self, ideal):
        ideal = self.minimize(ideal)
        hit = self._cache.get(ideal)
        if hit is not None:
            return hit
        start = ideal
        changed = True
        while changed:
            changed = False
            for u, v in self.relations:
                c = self.colon_set(ideal, v)
                if not c:
                    continue
                extra = self.product(c, u)
                if not self.subset(extra, ideal):
                    ideal = self.minimize(ideal | extra)
                    changed = True
        self._cache[start] = ideal
        self._cache[ideal] = ideal
        return ideal


# --- term compilation ---------------------------------------------------------


def compile_term(t, monoid, index):
    """The minimal monomials of a term, with generators numbered by ``index``."""
    if isinstance(t, Zero):
        return frozenset()
    if isinstance(t, One):
        return frozenset([monoid.one])
    if isinstance(t, Gen):
        return frozenset([monoid.gen(index[t.name])])
    a = compile_term(t.left, monoid, index)
    b = compile_term(t.right, monoid, index)
    if isinstance(t, Prod):
        return _minimize(monoid, (monoid.mul(x, y) for x in a for y in b))
    return _minimize(monoid, a | b)


def eliminate_definitions(generators, relations):
    """Drop relations g = t where g does not occur in t, substituting t for g.

    Returns the remaining generators, the remaining relations and the
    substitution (generator name -> term over the remaining generators).
    """
    rels = list(relations)
    active = list(generators)
    env = {}
    progress = True
    while progress:
        progress = False
        for k, rel in enumerate(rels):
            if rel.op != "=":
                continue
            for side, other in ((rel.lhs, rel.rhs), (rel.rhs, rel.lhs)):
                if isinstance(side, Gen) and side.name in active and side.name not in term_generators(other):
                    g = side.name
                    sub = {g: other}
                    env = {h: substitute(t, sub) for h, t in env.items()}
                    env[g] = other
                    active.remove(g)
                    rels = [
                        Relation(substitute(r.lhs, sub), r.op, substitute(r.rhs, sub), r.line)
                        for i, r in enumerate(rels)
                        if i != k
                    ]
                    progress = True
                    break
            if progress:
                break
    return active, rels, env


# --- the engine ----------------------------------------------------------------


@dataclass
class Saturation:
    """A materialized presentation.

    ``quantale`` carries labelled elements; ``generator_map`` sends every
    generator name (including eliminated ones) to its element; ``ideals``
    holds, per element, the minimal monomials of its closed ideal over
    ``variables``.
    """

    presentation: object
    quantale: FiniteQuantale
    generator_map: dict
    variables: tuple
    ideals: tuple
    monoid: object
    substitutions: dict = field(default_factory=dict)
    arithmetic: IdealArithmetic | None = None
    element_of_ideal: dict = field(default_factory=dict)

    def element_of_term(self, t):
        """Element denoted by a term over the presentation's generators."""
        return evaluate(t, self.quantale, self.generator_map)

    def monomial_name(self, m):
        return monomial_name(self.monoid, self.variables, m)


def monomial_name(monoid, variables, m):
    exps = monoid.exponents(m)
    parts = []
    for name, e in zip(variables, exps):
        parts.extend([name] * e)
    return "*".join(parts) if parts else "1"


def saturate(P, *, degree_cap=None, element_cap_=None, truncate=False, eliminate=True):
    """Materialize P as a finite quantale.

    Raises CapExceeded when new monomial classes keep appearing beyond the
    degree cap (quantic mode without ``truncate``), and ElementCapExceeded
    when the quotient has more elements than the element cap.
    """
    cap_degree = degree_cap if degree_cap is not None else degree_cap_override(P.degree_cap)
    limit = element_cap(element_cap_)
    if eliminate:
        variables, rels, env = eliminate_definitions(P.generators, P.relations)
    else:
        variables, rels, env = list(P.generators), list(P.relations), {}
    variables = tuple(variables)
    n = len(variables)
    monoid = SquarefreeMonoid(n) if P.idempotent else ExponentMonoid(n)
    index = {g: i for i, g in enumerate(variables)}
    pairs = []
    for rel in rels:
        lhs = compile_term(rel.lhs, monoid, index)
        rhs = compile_term(rel.rhs, monoid, index)
        pairs.append((lhs, rhs))
        if rel.op == "=":
            pairs.append((rhs, lhs))
    if truncate and not P.idempotent:
        for m in monoid.all_of_degree(cap_degree + 1):
            pairs.append((frozenset([m]), frozenset()))
    # relations u <= v where u is already below v syntactically are no-ops
    pairs = [(u, v) for u, v in pairs if not all(any(monoid.divides(w, x) for w in v) for x in u)]
    arith = IdealArithmetic(monoid, pairs)

    bottom = arith.close(frozenset())
    top = arith.close(frozenset([monoid.one]))
    reps = {bottom: None, top: monoid.one}
    frontier = [(monoid.one, top)] if top != bottom else []
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for m, ideal in frontier:
            for i in range(n):
                g = monoid.gen(i)
                mg = monoid.mul(m, g)
                if monoid.idempotent and mg == m:
                    continue
                cls = arith.close(arith.product(ideal, frozenset([g])))
                if cls not in reps:
                    reps[cls] = mg
                    nxt.append((mg, cls))
                    if len(reps) > limit:
                        raise ElementCapExceeded(f"more than {limit} monomial classes")
                elif reps[cls] is not None and monoid.key(mg) < monoid.key(reps[cls]):
                    reps[cls] = mg
        if nxt and not monoid.idempotent and depth > cap_degree:
            raise CapExceeded(
                f"new monomial classes still appear at degree {depth} (cap {cap_degree})",
                degree=cap_degree,
            )
        frontier = nxt

    classes = list(reps)
    elements = set(classes)
    work = list(classes)
    while work:
        e = work.pop()
        for c in classes:
            if arith.subset(c, e):
                continue
            j = arith.close(e | c)
            if j not in elements:
                elements.add(j)
                work.append(j)
                if len(elements) > limit:
                    raise ElementCapExceeded(f"more than {limit} elements")

    below = {e: [c for c in classes if arith.subset(c, e)] for e in elements}
    ordered = sorted(elements, key=lambda e: (len(below[e]), _ideal_key(monoid, e)))
    pos = {e: i for i, e in enumerate(ordered)}
    size = len(ordered)

    # element labels from the maximal monomial classes below each element
    labels = []
    for e in ordered:
        if e == bottom:
            labels.append("0")
            continue
        if e == top:
            labels.append("1")
            continue
        cs = [c for c in below[e] if reps[c] is not None]
        maximal = [c for c in cs if not any(d != c and arith.subset(c, d) for d in cs)]
        names = [monomial_name(monoid, variables, reps[c]) for c in sorted(maximal, key=lambda c: monoid.key(reps[c]))]
        labels.append(" | ".join(names))

    down = []
    for e in ordered:
        mask = 0
        for f in ordered:
            if arith.subset(f, e):
                mask |= 1 << pos[f]
        down.append(mask)
    lattice = FiniteLattice(labels, down)

    cls_index = [pos[c] for c in classes]
    cls_of = {c: k for k, c in enumerate(classes)}
    prod = [[0] * len(classes) for _ in classes]
    for a, ca in enumerate(classes):
        for b in range(a, len(classes)):
            cb = classes[b]
            ra, rb = reps[ca], reps[cb]
            if ra is None or rb is None:
                val = pos[bottom]
            else:
                val = pos[arith.close(frozenset([monoid.mul(ra, rb)]))]
            prod[a][b] = prod[b][a] = val
    max_classes = []
    for e in ordered:
        cs = below[e]
        maximal = [cls_of[c] for c in cs if not any(d != c and arith.subset(c, d) for d in cs)]
        max_classes.append(maximal)
    mult = [[0] * size for _ in range(size)]
    for x in range(size):
        for y in range(x, size):
            val = lattice.join_all(prod[a][b] for a in max_classes[x] for b in max_classes[y])
            mult[x][y] = mult[y][x] = val
    Q = FiniteQuantale(lattice, mult, pos[top])
    if size <= 256:
        check_quantale(Q)

    gmap = {}
    for g in variables:
        gmap[g] = pos[arith.close(frozenset([monoid.gen(index[g])]))]
    for g, t in env.items():
        gmap[g] = pos[arith.close(compile_term(t, monoid, index))]
    # the input relations must hold in the output
    for rel in P.relations:
        lv = evaluate(rel.lhs, Q, gmap)
        rv = evaluate(rel.rhs, Q, gmap)
        ok = lv == rv if rel.op == "=" else Q.leq(lv, rv)
        if not ok:
            raise AssertionError(f"relation {rel} fails in the saturation")
    del cls_index
    return Saturation(
        presentation=P,
        quantale=Q,
        generator_map={g: gmap[g] for g in P.generators},
        variables=variables,
        ideals=tuple(ordered),
        monoid=monoid,
        substitutions=env,
        arithmetic=arith,
        element_of_ideal=pos,
    )


def _ideal_key(monoid, ideal):
    return tuple(sorted(monoid.key(m) for m in ideal))
