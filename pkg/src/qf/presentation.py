"""Presentations of two-sided commutative quantales by generators and relations.

Text format, one declaration per line, ``#`` starts a comment::

    name q2
    gens x, y
    idempotent            # optional: every element is idempotent (frame mode)
    cap 6                 # optional degree cap for saturation
    rel y*y = x*x*x
    rel x <= y | 1

``*`` binds tighter than ``|``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

from .errors import DuplicateGenerator, PresentationSyntaxError, UndeclaredGenerator

DEFAULT_DEGREE_CAP = 6


# --- terms -----------------------------------------------------------------


@dataclass(frozen=True)
class Zero:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class One:
    def __str__(self):
        return "1"


@dataclass(frozen=True)
class Gen:
    name: str
    line: int | None = field(default=None, compare=False, repr=False)
    col: int | None = field(default=None, compare=False, repr=False)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Prod:
    left: object
    right: object

    def __str__(self):
        return f"{_wrap_factor(self.left)}*{_wrap_factor(self.right)}"


@dataclass(frozen=True)
class Join:
    left: object
    right: object

    def __str__(self):
        return f"{self.left} | {self.right}"


def _wrap_factor(t):
    return f"({t})" if isinstance(t, Join) else str(t)


ZERO = Zero()
ONE = One()


def prod_of(items):
    items = list(items)
    if not items:
        return ONE
    out = items[0]
    for t in items[1:]:
        out = Prod(out, t)
    return out


def join_of(items):
    items = list(items)
    if not items:
        return ZERO
    out = items[0]
    for t in items[1:]:
        out = Join(out, t)
    return out


def term_generators(t):
    """Generator names occurring in a term, in first-occurrence order."""
    out = []

    def walk(u):
        if isinstance(u, Gen):
            if u.name not in out:
                out.append(u.name)
        elif isinstance(u, (Prod, Join)):
            walk(u.left)
            walk(u.right)

    walk(t)
    return out


def join_leaves(t):
    if isinstance(t, Join):
        return join_leaves(t.left) + join_leaves(t.right)
    return [t]


def prod_leaves(t):
    if isinstance(t, Prod):
        return prod_leaves(t.left) + prod_leaves(t.right)
    return [t]


def substitute(t, env):
    """Replace generators by terms according to ``env``."""
    if isinstance(t, Gen):
        return env.get(t.name, t)
    if isinstance(t, Prod):
        return Prod(substitute(t.left, env), substitute(t.right, env))
    if isinstance(t, Join):
        return Join(substitute(t.left, env), substitute(t.right, env))
    return t


def evaluate(t, quantale, assignment):
    """Value of a term in a quantale; ``assignment`` maps generator names to elements."""
    if isinstance(t, Zero):
        return quantale.bottom
    if isinstance(t, One):
        return quantale.unit
    if isinstance(t, Gen):
        return assignment[t.name]
    if isinstance(t, Prod):
        return quantale.mul(evaluate(t.left, quantale, assignment), evaluate(t.right, quantale, assignment))
    return quantale.join(evaluate(t.left, quantale, assignment), evaluate(t.right, quantale, assignment))


# --- presentations -------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    lhs: object
    op: str  # "=" or "<="
    rhs: object
    line: int | None = field(default=None, compare=False)

    def __str__(self):
        return f"{self.lhs} {self.op} {self.rhs}"


@dataclass(frozen=True)
class Presentation:
    name: str
    generators: tuple
    relations: tuple
    idempotent: bool = False
    degree_cap: int = DEFAULT_DEGREE_CAP
    # fresh generators introduced by normalization, with their defining terms
    definitions: tuple = ()

    def __post_init__(self):
        if self.degree_cap <= 0:
            raise ValueError("degree cap must be positive")
        declared = set(self.generators)
        if len(declared) != len(self.generators):
            raise DuplicateGenerator("generator declared twice")
        for rel in self.relations:
            for side in (rel.lhs, rel.rhs):
                for g in term_generators(side):
                    if g not in declared:
                        raise UndeclaredGenerator(f"{g} is not declared")

    @property
    def definition_map(self):
        return dict(self.definitions)

    def with_relations(self, extra):
        return replace(self, relations=tuple(self.relations) + tuple(extra))

    def to_text(self):
        lines = []
        if self.name:
            lines.append(f"name {self.name}")
        if self.generators:
            lines.append("gens " + ", ".join(self.generators))
        if self.idempotent:
            lines.append("idempotent")
        if self.degree_cap != DEFAULT_DEGREE_CAP:
            lines.append(f"cap {self.degree_cap}")
        for rel in self.relations:
            lines.append(f"rel {rel}")
        return "\n".join(lines) + "\n"

    def __str__(self):
        return self.to_text()


def relation(lhs, op, rhs):
    return Relation(lhs, op, rhs)


# --- parser ----------------------------------------------------------------

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(?P<op><=|=)|(?P<sym>[*|()])|(?P<num>[0-9]+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<bad>\S))")


class _Tokens:
    def __init__(self, text, line, offset):
        self.items = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            kind = m.lastgroup
            col = m.start(kind) + 1 + offset
            if kind == "bad":
                raise PresentationSyntaxError(f"unexpected character {m.group(kind)!r}", line, col)
            self.items.append((kind, m.group(kind), col))
            pos = m.end()
        self.i = 0
        self.line = line
        self.end_col = len(text) + 1 + offset

    def peek(self):
        return self.items[self.i] if self.i < len(self.items) else (None, None, self.end_col)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, msg):
        _, val, col = self.peek()
        got = "end of line" if val is None else repr(val)
        raise PresentationSyntaxError(f"{msg}, found {got}", self.line, col)


def _parse_term(tokens):
    parts = [_parse_summand(tokens)]
    while tokens.peek()[1] == "|":
        tokens.take()
        parts.append(_parse_summand(tokens))
    return join_of(parts)


def _parse_summand(tokens):
    parts = [_parse_factor(tokens)]
    while tokens.peek()[1] == "*":
        tokens.take()
        parts.append(_parse_factor(tokens))
    return prod_of(parts)


def _parse_factor(tokens):
    kind, val, col = tokens.peek()
    if kind == "num":
        tokens.take()
        if val == "0":
            return ZERO
        if val == "1":
            return ONE
        raise PresentationSyntaxError(f"only the constants 0 and 1 are allowed, found {val!r}", tokens.line, col)
    if kind == "id":
        tokens.take()
        return Gen(val, tokens.line, col)
    if val == "(":
        tokens.take()
        t = _parse_term(tokens)
        if tokens.peek()[1] != ")":
            tokens.error("expected ')'")
        tokens.take()
        return t
    tokens.error("expected a term")


def parse_term(text, line=1):
    tokens = _Tokens(text, line, 0)
    t = _parse_term(tokens)
    if tokens.peek()[0] is not None:
        tokens.error("unexpected input after term")
    return t


def parse(text, *, name=""):
    """Parse presentation text."""
    gens = []
    gen_pos = {}
    rels = []
    idempotent = False
    cap = DEFAULT_DEGREE_CAP
    pres_name = name
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        indent = len(body) - len(body.lstrip())
        word, _, rest = stripped.partition(" ")
        rest_offset = indent + len(word) + 1 + (len(rest) - len(rest.lstrip()))
        rest = rest.strip()
        if word == "name":
            if not _IDENT.fullmatch(rest):
                raise PresentationSyntaxError("name expects one identifier", lineno, rest_offset + 1)
            pres_name = rest
        elif word == "gens":
            col = rest_offset + 1
            for piece in rest.split(","):
                ident = piece.strip()
                pcol = col + (len(piece) - len(piece.lstrip()))
                if not _IDENT.fullmatch(ident):
                    raise PresentationSyntaxError(f"bad generator name {ident!r}", lineno, pcol)
                if ident in gen_pos:
                    raise DuplicateGenerator(f"line {lineno}, col {pcol}: generator {ident} declared twice")
                gen_pos[ident] = (lineno, pcol)
                gens.append(ident)
                col += len(piece) + 1
        elif word == "idempotent":
            if rest:
                raise PresentationSyntaxError("idempotent takes no argument", lineno, rest_offset + 1)
            idempotent = True
        elif word == "cap":
            if not re.fullmatch(r"[0-9]+", rest) or int(rest) <= 0:
                raise PresentationSyntaxError("cap expects a positive integer", lineno, rest_offset + 1)
            cap = int(rest)
        elif word == "rel":
            tokens = _Tokens(rest, lineno, rest_offset)
            lhs = _parse_term(tokens)
            kind, op, col = tokens.peek()
            if kind != "op":
                tokens.error("expected '=' or '<='")
            tokens.take()
            rhs = _parse_term(tokens)
            if tokens.peek()[0] is not None:
                tokens.error("unexpected input after relation")
            rels.append(Relation(lhs, op, rhs, lineno))
        else:
            raise PresentationSyntaxError(f"unknown declaration {word!r}", lineno, indent + 1)
    declared = set(gens)
    for rel in rels:
        for side in (rel.lhs, rel.rhs):
            _check_declared(side, declared)
    return Presentation(pres_name, tuple(gens), tuple(rels), idempotent, cap)


def _check_declared(t, declared):
    if isinstance(t, Gen):
        if t.name not in declared:
            raise UndeclaredGenerator(f"line {t.line}, col {t.col}: generator {t.name} is not declared")
    elif isinstance(t, (Prod, Join)):
        _check_declared(t.left, declared)
        _check_declared(t.right, declared)


def load(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    stem = re.sub(r"\.qpres$", "", path.replace("\\", "/").rsplit("/", 1)[-1])
    default = stem if _IDENT.fullmatch(stem) else ""
    return parse(text, name=default)


def explicit_idempotents(P):
    """Frame mode spelled out as relations g*g = g, with the flag cleared.

    Idempotent generators make every element idempotent in a commutative
    two-sided quantale, so the presented quantale does not change."""
    if not P.idempotent:
        return P
    extra = [Relation(Prod(Gen(g), Gen(g)), "=", Gen(g)) for g in P.generators]
    return replace(P, relations=tuple(P.relations) + tuple(extra), idempotent=False)


# --- normal form -------------------------------------------------------------------


def is_normal(rel):
    """Relations of the three shapes: (join of generators or 0) = g,
    g*h = k, and g = 1."""
    if rel.op != "=":
        return False
    lhs, rhs = rel.lhs, rel.rhs
    if isinstance(rhs, One):
        return isinstance(lhs, Gen)
    if not isinstance(rhs, Gen):
        return False
    if isinstance(lhs, Zero) or isinstance(lhs, Gen):
        return True
    if isinstance(lhs, Prod):
        return isinstance(lhs.left, Gen) and isinstance(lhs.right, Gen)
    if isinstance(lhs, Join):
        return all(isinstance(t, Gen) for t in join_leaves(lhs))
    return False


def normalize(P):
    """An equivalent presentation whose relations all have the normal shapes.

    Compound subterms are named by fresh generators ``_t1, _t2, ...``; the
    constants become generators ``_one`` (with ``_one = 1``) and ``_zero``
    (with ``0 = _zero``) when needed. Relations already in normal shape are
    kept as they are.
    """
    names = set(P.generators)
    gens = list(P.generators)
    out = []
    defs = list(P.definitions)
    memo = {}
    counter = [0]

    def fresh(prefix):
        while True:
            counter[0] += 1
            cand = f"{prefix}{counter[0]}"
            if cand not in names:
                names.add(cand)
                gens.append(cand)
                return cand

    def named(prefix, name):
        if name not in names:
            names.add(name)
            gens.append(name)
            return name
        return fresh(prefix)

    def flatten(t):
        if isinstance(t, Gen):
            return t.name
        key = t
        if key in memo:
            return memo[key]
        if isinstance(t, One):
            g = named("_one", "_one")
            out.append(Relation(Gen(g), "=", ONE))
        elif isinstance(t, Zero):
            g = named("_zero", "_zero")
            out.append(Relation(ZERO, "=", Gen(g)))
        elif isinstance(t, Prod):
            a, b = flatten(t.left), flatten(t.right)
            g = fresh("_t")
            out.append(Relation(Prod(Gen(a), Gen(b)), "=", Gen(g)))
        else:
            leaves = []
            for leaf in join_leaves(t):
                name = flatten(leaf)
                if name not in leaves:
                    leaves.append(name)
            g = fresh("_t")
            out.append(Relation(join_of(Gen(x) for x in leaves), "=", Gen(g)))
        memo[key] = g
        defs.append((g, t))
        return g

    for rel in P.relations:
        if is_normal(rel):
            out.append(rel)
            continue
        if rel.op == "<=":
            a, b = flatten(rel.lhs), flatten(rel.rhs)
            out.append(Relation(Join(Gen(a), Gen(b)), "=", Gen(b), rel.line))
            continue
        lhs, rhs = rel.lhs, rel.rhs
        if isinstance(rhs, One) and not isinstance(lhs, One):
            out.append(Relation(Gen(flatten(lhs)), "=", ONE, rel.line))
            continue
        target = flatten(rhs)
        if isinstance(lhs, Prod):
            out.append(Relation(Prod(Gen(flatten(lhs.left)), Gen(flatten(lhs.right))), "=", Gen(target), rel.line))
        elif isinstance(lhs, Join):
            leaves = []
            for leaf in join_leaves(lhs):
                name = flatten(leaf)
                if name not in leaves:
                    leaves.append(name)
            out.append(Relation(join_of(Gen(x) for x in leaves), "=", Gen(target), rel.line))
        elif isinstance(lhs, Zero):
            out.append(Relation(ZERO, "=", Gen(target), rel.line))
        else:
            out.append(Relation(Gen(flatten(lhs)), "=", Gen(target), rel.line))
    # definitions of fresh generators, expressed over the original generators
    expanded = []
    env = {}
    for g, t in defs:
        full = substitute(t, env)
        env[g] = full
        expanded.append((g, full))
    return Presentation(P.name, tuple(gens), tuple(out), P.idempotent, P.degree_cap, tuple(expanded))


# --- canonical presentation of a finite quantale -------------------------------


def canonical_presentation(Q, name="canonical"):
    """Generators are the join-irreducibles of Q (the top is written 1 when it
    is itself join-irreducible). Relations give each product of generators
    as a join of generators, every join relation among generators, and the
    top as a join of generators."""
    from .lattice import join_irreducibles

    if not Q.two_sided:
        from .errors import NotTwoSided

        raise NotTwoSided("the quantale is not two-sided")
    L = Q.lattice
    J = join_irreducibles(L)
    top_is_ji = L.top in J
    gen_of = {j: f"j{j}" for j in J if j != L.top}
    gens = tuple(gen_of[j] for j in J if j != L.top)

    def term(j):
        return ONE if j == L.top else Gen(gen_of[j])

    def maximal_below(x):
        below = [j for j in J if L.leq(j, x)]
        return [j for j in below if not any(k != j and L.leq(j, k) for k in below)]

    def join_term(x):
        return join_of(term(j) for j in maximal_below(x))

    rels = []
    seen = set()

    def add(rel):
        key = str(rel)
        if key not in seen:
            seen.add(key)
            rels.append(rel)

    real = [j for j in J if j != L.top]
    for i, a in enumerate(real):
        for b in real[i:]:
            add(Relation(Prod(term(a), term(b)), "=", join_term(Q.mul(a, b))))
    for b in L.elements:
        for c in L.elements:
            if c < b:
                continue
            cover = set(maximal_below(b)) | set(maximal_below(c))
            if L.top in cover:
                continue
            rhs = join_of(term(j) for j in sorted(cover))
            for j in real:
                if j in cover:
                    continue
                if L.leq(j, L.join(b, c)):
                    add(Relation(term(j), "<=", rhs))
    if not top_is_ji:
        add(Relation(ONE, "<=", join_term(L.top)))
    return Presentation(name, gens, tuple(rels))
