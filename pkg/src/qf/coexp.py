"""Coexponential presentations over the three-element chains D and S,
tangent bundles, the largest derivation and the comparison map.

Both A = D (e*e = 0) and A = S (m*m = m, the Sierpinski frame) have the chain
0 < middle < 1 as underlying lattice with dual basis r = (middle, 1),
sigma_middle = [x >= middle], sigma_1 = [x = 1].

Generator naming. For A = D, g (-) sigma_1 is written ``g`` and
g (-) sigma_middle is written ``dg``. For A = S they are ``g0`` and ``g1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import SearchCapExceeded
from .lattice import bits
from .presentation import (
    explicit_idempotents,
    ONE,
    Gen,
    One,
    Presentation,
    Prod,
    Relation,
    Zero,
    join_leaves,
    join_of,
    evaluate,
    normalize,
)
from .quantale import DEFAULT_SEARCH_CAP, QuantaleHom, dual_numbers, enumerate_homs, hom_problem, sierpinski
from .saturation import ExponentMonoid, compile_term, saturate
from .suplattice import dual_basis


@dataclass(frozen=True)
class DualBasisA:
    which: str
    quantale: object
    r: tuple
    sigma: tuple  # one 0/1 table per basis element, indexed by the carrier

    def value(self, x, a):
        return self.sigma[x][a] == 1

    def check(self):
        A = self.quantale
        for a in A.elements:
            if A.lattice.join_all(r for x, r in enumerate(self.r) if self.value(x, a)) != a:
                return False
        return True


def base_quantale(which):
    if which == "D":
        return dual_numbers()
    if which == "S":
        return sierpinski()
    raise ValueError(f"unknown base {which!r}; expected D or S")


def dual_basis_of(which):
    A = base_quantale(which)
    full = dual_basis(A.lattice)
    middle, top = 1, 2
    basis = DualBasisA(which, A, (middle, top), (full.sigma[middle].table, full.sigma[top].table))
    if not basis.check():
        raise AssertionError("dual basis identity fails")
    return basis


def coexp_names(which, generators):
    """Names of g (-) sigma_x for each generator, as {(g, x): name} with x = 0
    for the middle basis element and x = 1 for the top one."""
    taken = set(generators)
    names = {}
    if which == "D":
        prefix = "d"
        while any(prefix + g in taken for g in generators):
            prefix += "_"
        for g in generators:
            names[(g, 1)] = g
            names[(g, 0)] = prefix + g
    else:
        for g in generators:
            names[(g, 1)] = g + "0"
            names[(g, 0)] = g + "1"
    if len(set(names.values())) != len(names):
        raise ValueError("coexponential generator names collide")
    return names


def coexp(which, P, *, normalized=None):
    """Presentation of the coexponential of the quantale presented by P over A."""
    basis = dual_basis_of(which)
    A = basis.quantale
    P = explicit_idempotents(P)
    Pn = normalized if normalized is not None else normalize(P)
    names = coexp_names(which, Pn.generators)
    X = range(len(basis.r))

    def g_at(g, x):
        return Gen(names[(g, x)])

    gens = []
    for g in Pn.generators:
        gens.extend([names[(g, 1)], names[(g, 0)]])
    rels = []
    # (i) each generator against the dual basis
    for g in Pn.generators:
        for x in X:
            rhs = join_of(g_at(g, y) for y in X if basis.value(x, basis.r[y]))
            if rhs == g_at(g, x):
                continue
            rels.append(Relation(g_at(g, x), "=", rhs))
    for rel in Pn.relations:
        lhs, rhs = rel.lhs, rel.rhs
        if isinstance(rhs, One):
            # (iv) e = 1
            for x in X:
                val = ONE if basis.value(x, A.unit) else Zero()
                rels.append(Relation(g_at(lhs.name, x), "=", val))
        elif isinstance(lhs, Prod):
            # (iii) a*b = c
            a, b, c = lhs.left.name, lhs.right.name, rhs.name
            for x in X:
                terms = []
                for y in X:
                    for y2 in X:
                        if basis.value(x, A.mul(basis.r[y], basis.r[y2])):
                            terms.append(Prod(g_at(a, y), g_at(b, y2)))
                rels.append(Relation(g_at(c, x), "=", join_of(terms)))
        else:
            # (ii) join of S = t
            leaves = [] if isinstance(lhs, Zero) else [t.name for t in join_leaves(lhs)]
            for x in X:
                rels.append(Relation(g_at(rhs.name, x), "=", join_of(g_at(s, x) for s in leaves)))
    name = f"{P.name or 'Q'}_coexp_{which}"
    return Presentation(name, tuple(gens), tuple(rels), False, P.degree_cap)


def loc_coexp(which, P, *, normalized=None):
    """Localic reflection of the coexponential, computed by saturating the
    coexponential presentation in frame mode."""
    pres = coexp(which, P, normalized=normalized)
    return saturate(replace(pres, idempotent=True, name=f"{P.name or 'Q'}_loc_{which}"))


# --- derivations --------------------------------------------------------------


@dataclass
class Derivation:
    """A derivation of P's quantale into a frame F, given on generators."""

    frame: object
    generators: tuple
    base: dict  # i(g)
    bound: dict  # beta(g)
    partial: dict  # d(g)
    candidates: int = 0

    def value_on_monomial(self, monoid, m, values=None):
        return _leibniz(self.frame, monoid, self.generators, self.base, values or self.partial, m)

    def value_on_set(self, monoid, u, values=None):
        F = self.frame
        return F.lattice.join_all(self.value_on_monomial(monoid, m, values) for m in u)


def _base_on_monomial(F, gens, base, m):
    out = F.top
    for k, e in enumerate(m):
        if e:
            out = F.meet(out, base[gens[k]])
    return out


def _leibniz(F, monoid, gens, base, d, m):
    """d(m) = join over generators g dividing m of i(m/g) ^ d(g); d(1) = 1."""
    if not any(m):
        return F.top
    out = F.bottom
    for k, e in enumerate(m):
        if not e:
            continue
        rest = tuple(v - 1 if j == k else v for j, v in enumerate(m))
        out = F.join(out, F.meet(_base_on_monomial(F, gens, base, rest), d[gens[k]]))
    return out


def largest_derivation(P, locS=None, *, cap=DEFAULT_SEARCH_CAP):
    """The pointwise largest derivation d with i <= d <= beta on generators,
    where i and beta send g to the classes of g0 and g1 in the localic
    reflection of the coexponential over S."""
    P = explicit_idempotents(P)
    if locS is None:
        locS = loc_coexp("S", P)
    F = locS.quantale
    Pn_names = coexp_names("S", normalize(P).generators)
    gens = tuple(P.generators)
    base = {g: locS.generator_map[Pn_names[(g, 1)]] for g in gens}
    bound = {g: locS.generator_map[Pn_names[(g, 0)]] for g in gens}
    monoid = ExponentMonoid(len(gens))
    index = {g: k for k, g in enumerate(gens)}
    pairs = []
    for rel in P.relations:
        u = compile_term(rel.lhs, monoid, index)
        v = compile_term(rel.rhs, monoid, index)
        pairs.append((u, v))
        if rel.op == "=":
            pairs.append((v, u))

    def base_set(u):
        return F.lattice.join_all(_base_on_monomial(F, gens, base, m) for m in u)

    for u, v in pairs:
        if not F.leq(base_set(u), base_set(v)):
            raise AssertionError("base map does not respect the relations")

    # a relation can be checked once every generator it mentions is assigned
    def last_gen(u, v):
        used = [k for m in list(u) + list(v) for k, e in enumerate(m) if e]
        return max(used, default=-1)

    checks = [[] for _ in gens]
    for u, v in pairs:
        k = last_gen(u, v)
        if k >= 0:
            checks[k].append((u, v))
    options = []
    for g in gens:
        options.append([c for c in F.elements if F.leq(base[g], c) and F.leq(c, bound[g])])
    values = {}
    best = dict(base)
    count = 0

    def value_set(u):
        return F.lattice.join_all(_leibniz(F, monoid, gens, base, values, m) for m in u)

    def search(k):
        nonlocal count
        if k == len(gens):
            for g in gens:
                best[g] = F.join(best[g], values[g])
            return
        g = gens[k]
        for c in options[k]:
            count += 1
            if count > cap:
                raise SearchCapExceeded(f"more than {cap} derivation candidates")
            values[g] = c
            if all(F.leq(value_set(u), value_set(v)) for u, v in checks[k]):
                search(k + 1)
        del values[g]

    search(0)
    values.update(best)
    for u, v in pairs:
        if not F.leq(value_set(u), value_set(v)):
            raise AssertionError("supremum of derivations is not a derivation")
    return Derivation(F, gens, base, bound, dict(best), count)


# --- tangent report ---------------------------------------------------------------


@dataclass
class TangentReport:
    pres: Presentation
    locD: object  # Saturation
    locS: object  # Saturation
    partial: dict  # generator -> element of locS
    dmap: tuple  # element of locD -> element of locS
    injective: bool
    derivation: Derivation = field(repr=False, default=None)

    @property
    def nonsingular(self):
        return self.injective

    def partial_names(self):
        names = self.locS.quantale.names
        return {g: names[e] for g, e in self.partial.items()}

    def to_json(self):
        from .serialize import lattice_to_json

        return {
            "locD": lattice_to_json(self.locD.quantale.lattice),
            "locS": lattice_to_json(self.locS.quantale.lattice),
            "partial": self.partial_names(),
            "dmap": [[a, b] for a, b in enumerate(self.dmap)],
            "nonsingular": self.injective,
        }


def tangent_report(P, *, cap=DEFAULT_SEARCH_CAP):
    P = explicit_idempotents(P)
    Pn = normalize(P)
    locD = loc_coexp("D", P, normalized=Pn)
    locS = loc_coexp("S", P, normalized=Pn)
    der = largest_derivation(P, locS, cap=cap)
    F = locS.quantale
    gens = tuple(P.generators)
    monoid = ExponentMonoid(len(gens))
    index = {g: k for k, g in enumerate(gens)}
    defs = Pn.definition_map
    d_names = coexp_names("D", Pn.generators)
    image = {}
    for h in Pn.generators:
        t = Gen(h) if h in index else defs[h]
        u = compile_term(t, monoid, index)
        i_val = F.lattice.join_all(_base_on_monomial(F, gens, der.base, m) for m in u)
        d_val = der.value_on_set(monoid, u)
        image[d_names[(h, 1)]] = i_val
        image[d_names[(h, 0)]] = d_val
    # the assignment must satisfy every relation of the coexponential over D
    pres_D = coexp("D", P, normalized=Pn)
    for rel in pres_D.relations:
        lv, rv = evaluate(rel.lhs, F, image), evaluate(rel.rhs, F, image)
        if lv != rv:
            raise AssertionError(f"comparison assignment violates {rel}")
    QD = locD.quantale
    table = []
    for ideal in locD.ideals:
        val = F.bottom
        for m in ideal:
            part = F.top
            for k in bits(m):
                part = F.meet(part, image[locD.variables[k]])
            val = F.join(val, part)
        table.append(val)
    problem = hom_problem(QD, F, table)
    if problem:
        raise AssertionError(f"comparison map is not a frame homomorphism: {problem}")
    for g in gens:
        if table[locD.generator_map[d_names[(g, 1)]]] != der.base[g]:
            raise AssertionError("comparison map misses the base constraint")
        if not F.leq(table[locD.generator_map[d_names[(g, 0)]]], der.bound[g]):
            raise AssertionError("comparison map exceeds the bound")
    injective = len(set(table)) == len(table)
    return TangentReport(P, locD, locS, dict(der.partial), tuple(table), injective, der)


def constrained_frame_homs(report):
    """Every frame hom locD -> locS with g -> i(g) and dg <= beta(g) on the
    presentation's generators. Brute force; used to confirm that the
    comparison map is the largest of them."""
    der = report.derivation
    QD, F = report.locD.quantale, report.locS.quantale
    names = coexp_names("D", normalize(report.pres).generators)
    out = []
    for h in enumerate_homs(QD, F):
        ok = True
        for g in report.pres.generators:
            if h.table[report.locD.generator_map[names[(g, 1)]]] != der.base[g]:
                ok = False
                break
            if not F.leq(h.table[report.locD.generator_map[names[(g, 0)]]], der.bound[g]):
                ok = False
                break
        if ok:
            out.append(h)
    return out


def is_largest_comparison(report):
    homs = constrained_frame_homs(report)
    F = report.locS.quantale
    mine = QuantaleHom(report.locD.quantale, F, report.dmap)
    if mine not in homs:
        return False
    return all(all(F.leq(h.table[a], report.dmap[a]) for a in range(len(report.dmap))) for h in homs)
