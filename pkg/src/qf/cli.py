"""Command line front end: ``qf <verb> ...``.

Exit status 0 on success, 1 on a domain error (its name is printed on
standard error), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

from . import serialize
from .coexp import coexp, loc_coexp, tangent_report
from .dot import emit_dot
from .errors import QFError, SchemaError, UsageError
from .lattice import classify
from .presentation import load as load_presentation
from .quantale import (
    find_quantale_isomorphism,
    homs_to_D,
    localic_reflection,
    nucleus_quotient,
    primes,
    principal_profile,
    two_sided_nucleus,
    valuations,
)
from .rings import (
    d_hom_crosscheck,
    ideal_name,
    ideal_quantale,
    localise_ring,
    localise_semiring,
    principal_members,
    locally_principal_crosscheck,
    parse_ring,
    prevaluation_crosscheck,
    rad_frame,
)
from .saturation import saturate

QUANTALE_ERRORS = "SchemaError, SyntaxError, UndeclaredGenerator, DuplicateGenerator, CapExceeded, ElementCapExceeded, NotAssociative, NotCommutative, NotBilinear, BadUnit"
RING_ERRORS = "RingAxiomViolation, SizeCapExceeded, SchemaError"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"UsageError: {message}", file=sys.stderr)
        raise SystemExit(2)


# --- input helpers ------------------------------------------------------------------


def _load_quantale(path, truncate=False):
    """A quantale from a .qpres presentation or a quantale JSON file."""
    if path.endswith(".qpres"):
        P = load_presentation(path)
        return saturate(P, truncate=truncate).quantale
    doc = serialize.load_json(path)
    return serialize.quantale_from_json(doc)


def _load_any(path, truncate=False):
    if path.endswith(".qpres"):
        P = load_presentation(path)
        return "quantale", saturate(P, truncate=truncate).quantale
    doc = serialize.load_json(path)
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected an object")
    if "add" in doc:
        return "ring", serialize.ring_from_json(doc)
    if "mult" in doc:
        return "quantale", serialize.quantale_from_json(doc)
    return "lattice", serialize.lattice_from_json(doc)


def _quantale_source(args):
    if getattr(args, "ring", None):
        return ideal_quantale(parse_ring(args.ring)).quantale
    if not getattr(args, "input", None):
        raise UsageError("give an input file or --ring")
    return _load_quantale(args.input, getattr(args, "truncate", False))


def _write(args, text):
    if args.out:
        directory = os.path.dirname(os.path.abspath(args.out))
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qf-", suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, args.out)
    else:
        sys.stdout.write(text)


def _emit_quantale(args, Q, name="Q"):
    if getattr(args, "dot", False):
        _write(args, emit_dot(Q.lattice, name=name))
    else:
        _write(args, serialize.dumps(serialize.quantale_to_json(Q)))


# --- verbs -------------------------------------------------------------------------


def cmd_build(args):
    P = load_presentation(args.input)
    sat = saturate(P, truncate=args.truncate)
    _emit_quantale(args, sat.quantale, P.name or "Q")


def cmd_show(args):
    kind, obj = _load_any(args.input, args.truncate)
    if args.dot:
        if kind == "ring":
            raise UsageError("--dot needs a lattice or quantale")
        L = obj if kind == "lattice" else obj.lattice
        _write(args, emit_dot(L))
        return
    if kind == "ring":
        out = {"kind": "ring", "size": len(obj), "elements": list(obj.names), "field": obj.is_field}
    else:
        L = obj if kind == "lattice" else obj.lattice
        c = classify(L)
        out = {
            "kind": kind,
            "size": len(L),
            "elements": list(L.names),
            "covers": [[a, b] for a, b in L.covers()],
            "distributive": c.distributive,
            "modular": c.modular,
        }
        if kind == "quantale":
            out["unit"] = obj.names[obj.unit]
            out["two_sided"] = obj.two_sided
            out["frame"] = obj.is_frame
    _write(args, serialize.dumps(out))


def cmd_check(args):
    kind, obj = _load_any(args.input, args.truncate)
    _write(args, serialize.dumps({"valid": True, "kind": kind, "size": len(obj)}))


def cmd_primes(args):
    Q = _quantale_source(args)
    _write(args, serialize.dumps({"primes": [Q.names[p] for p in primes(Q)]}))


def cmd_reflect(args):
    Q = _quantale_source(args)
    if args.two_sided:
        R, _ = nucleus_quotient(two_sided_nucleus(Q))
    else:
        R, _ = localic_reflection(Q)
    _emit_quantale(args, R, "reflection")


def cmd_coexp(args):
    P = load_presentation(args.input)
    if args.localic:
        sat = loc_coexp(args.over, P)
        _emit_quantale(args, sat.quantale, f"loc_{args.over}")
    else:
        if args.dot:
            raise UsageError("--dot needs --localic")
        _write(args, coexp(args.over, P).to_text())


def cmd_tangent(args):
    P = load_presentation(args.input)
    report = tangent_report(P)
    if args.dot:
        text = emit_dot(report.locD.quantale.lattice, name="locD") + emit_dot(report.locS.quantale.lattice, name="locS")
        _write(args, text)
    else:
        _write(args, serialize.dumps(report.to_json()))


def cmd_ring(args):
    R = parse_ring(args.ring)
    _write(args, serialize.dumps(serialize.ring_to_json(R)))


def cmd_idl(args):
    IQ = ideal_quantale(parse_ring(args.ring))
    _emit_quantale(args, IQ.quantale, "Idl")


def cmd_rad(args):
    RF = rad_frame(parse_ring(args.ring))
    _emit_quantale(args, RF.quantale, "Rad")


def cmd_principal(args):
    Q = _quantale_source(args)
    rows = []
    for k in Q.elements:
        p = principal_profile(Q, k)
        rows.append(
            {
                "element": Q.names[k],
                "weak_meet": p.weak_meet,
                "weak_join": p.weak_join,
                "meet": p.meet,
                "join": p.join,
                "weak_principal": p.weak_principal,
                "principal": p.principal,
                "strong_principal": p.strong_principal,
            }
        )
    _write(args, serialize.dumps(rows))


def cmd_homs_to_d(args):
    Q = _quantale_source(args)
    homs = homs_to_D(Q)
    out = {
        "homs": [
            {"map": {Q.names[a]: h.hom.target.names[h.hom.table[a]] for a in Q.elements}, "p": Q.names[h.p], "j": Q.names[h.j]}
            for h in homs
        ]
    }
    if args.ring:
        R = parse_ring(args.ring)
        from_homs, from_ring = d_hom_crosscheck(R)
        out["primary_pairs"] = [[ideal_name(R, P), ideal_name(R, J)] for P, J in sorted(from_ring, key=lambda x: (len(x[0]), sorted(x[0]), len(x[1]), sorted(x[1])))]
        out["match"] = from_homs == from_ring
    _write(args, serialize.dumps(out))


def cmd_valuations(args):
    Q = _quantale_source(args)
    homs = valuations(Q, args.height)
    out = {
        "height": args.height,
        "count": len(homs),
        "valuations": [{Q.names[a]: h.target.names[h.table[a]] for a in Q.elements} for h in homs],
    }
    _write(args, serialize.dumps(out))


def _multiplicative_closure(R, gens):
    S = {R.one}
    frontier = [R.one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = R.mul[x][g]
                if y not in S:
                    S.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(S)


def cmd_localise(args):
    R = parse_ring(args.ring)
    gens = [R.index(e) for e in args.element]
    S = _multiplicative_closure(R, gens)
    loc = localise_ring(R, S)
    IQ = ideal_quantale(R)
    Sbar = {IQ.element_of(principal_members(R, s)) for s in S}
    semi = localise_semiring(IQ.quantale, Sbar)
    iso = find_quantale_isomorphism(ideal_quantale(loc.ring).quantale, semi.quantale) is not None
    out = {
        "S": [R.names[s] for s in sorted(S)],
        "ring": serialize.ring_to_json(loc.ring),
        "hom": [[a, b] for a, b in enumerate(loc.hom)],
        "semiring": serialize.quantale_to_json(semi.quantale),
        "order_check": semi.order_ok,
        "ideals_match": iso,
    }
    _write(args, serialize.dumps(out))


def cmd_crosscheck(args):
    R = parse_ring(args.ring)
    rows = locally_principal_crosscheck(R)
    out = [
        {
            "ideal": r.ideal,
            "principal": r.principal,
            "locally_principal": r.locally_principal,
            "agree": r.agree,
            "witnesses": list(r.witnesses),
        }
        for r in rows
    ]
    _write(args, serialize.dumps(out))


def cmd_prevaluations(args):
    R = parse_ring(args.ring)
    rep = prevaluation_crosscheck(R, args.height)
    out = {
        "height": args.height,
        "prevaluations": [{R.names[a]: ("inf" if v[a] is None else v[a]) for a in R.elements} for v in rep.prevaluations],
        "valuations": rep.valuations,
        "bijective": rep.bijective,
    }
    _write(args, serialize.dumps(out))


def cmd_conjecture(args):
    from .conjecture import conjecture_table

    rows = conjecture_table(args.max_order)
    _write(args, serialize.dumps(rows))


# --- parser ------------------------------------------------------------------------


def _errors(text):
    return f"errors: {text}"


def build_parser():
    parser = _Parser(prog="qf", description="Finite quantales, frames and ideal lattices of finite rings.")
    sub = parser.add_subparsers(dest="verb", metavar="verb", parser_class=_Parser)
    sub.required = True

    def verb(name, func, help_text, errors):
        p = sub.add_parser(name, help=help_text, description=help_text, epilog=_errors(errors))
        p.set_defaults(func=func)
        p.add_argument("--out", help="write the result here instead of standard output")
        return p

    def quantale_input(p, ring=True):
        p.add_argument("input", nargs="?", help="a .qpres presentation or quantale JSON file")
        p.add_argument("--truncate", action="store_true", help="send monomials above the degree cap to 0")
        if ring:
            p.add_argument("--ring", help="use Idl(R) for the ring described, e.g. 'zmod 6'")

    p = verb("build", cmd_build, "Saturate a presentation into a quantale.", "SyntaxError, UndeclaredGenerator, DuplicateGenerator, CapExceeded, ElementCapExceeded")
    p.add_argument("input")
    p.add_argument("--truncate", action="store_true", help="send monomials above the degree cap to 0")
    p.add_argument("--dot", action="store_true", help="emit the Hasse diagram as DOT")

    p = verb("show", cmd_show, "Summarize a presentation, lattice, quantale or ring.", QUANTALE_ERRORS + ", NotAPartialOrder, NotALattice, RingAxiomViolation")
    p.add_argument("input")
    p.add_argument("--truncate", action="store_true")
    p.add_argument("--dot", action="store_true")

    p = verb("check", cmd_check, "Validate an input file.", QUANTALE_ERRORS + ", NotAPartialOrder, NotALattice, RingAxiomViolation")
    p.add_argument("input")
    p.add_argument("--truncate", action="store_true")

    p = verb("primes", cmd_primes, "List the prime elements.", QUANTALE_ERRORS + ", NotTwoSided")
    quantale_input(p)

    p = verb("reflect", cmd_reflect, "Localic (default) or two-sided reflection.", QUANTALE_ERRORS + ", NotTwoSided")
    quantale_input(p)
    p.add_argument("--two-sided", action="store_true", help="quotient by a -> a*top instead")
    p.add_argument("--dot", action="store_true")

    p = verb("coexp", cmd_coexp, "Coexponential presentation over D or S.", "SyntaxError, UndeclaredGenerator, DuplicateGenerator, ElementCapExceeded")
    p.add_argument("input")
    p.add_argument("--over", choices=["D", "S"], required=True)
    p.add_argument("--localic", action="store_true", help="saturate its localic reflection")
    p.add_argument("--dot", action="store_true")

    p = verb("tangent", cmd_tangent, "Tangent report: both localic coexponentials, the largest derivation, the comparison map and the nonsingularity verdict.", "SyntaxError, UndeclaredGenerator, DuplicateGenerator, ElementCapExceeded, SearchCapExceeded")
    p.add_argument("input")
    p.add_argument("--dot", action="store_true")

    p = verb("ring", cmd_ring, "Build a ring and print its tables.", RING_ERRORS + ", UsageError")
    p.add_argument("--ring", required=True, help="zmod N | poly P c0 ... 1 | mono P x,y x^2 ... | json PATH | A x B")

    p = verb("idl", cmd_idl, "The quantale of ideals of a ring.", RING_ERRORS)
    p.add_argument("--ring", required=True)
    p.add_argument("--dot", action="store_true")

    p = verb("rad", cmd_rad, "The frame of radical ideals of a ring.", RING_ERRORS)
    p.add_argument("--ring", required=True)
    p.add_argument("--dot", action="store_true")

    p = verb("principal", cmd_principal, "Principal-element flags for every element.", QUANTALE_ERRORS + ", NotTwoSided")
    quantale_input(p)

    p = verb("homs-to-d", cmd_homs_to_d, "Homomorphisms into D with their (p, j) pairs; with --ring also the primary pairs.", QUANTALE_ERRORS + ", NotTwoSided, SearchCapExceeded")
    quantale_input(p)

    p = verb("valuations", cmd_valuations, "Homomorphisms into the chain quantale C_K.", QUANTALE_ERRORS + ", NotTwoSided, SearchCapExceeded")
    quantale_input(p)
    p.add_argument("--height", type=int, required=True)

    p = verb("localise", cmd_localise, "Localise a ring at the submonoid generated by the given elements, next to the semiring localisation of its ideals.", RING_ERRORS + ", NotMultiplicativeSet, UsageError")
    p.add_argument("--ring", required=True)
    p.add_argument("--element", action="append", default=[], help="a ring element name; repeatable")

    p = verb("crosscheck-locally-principal", cmd_crosscheck, "Compare principal elements of Idl(R) with locally principal ideals.", RING_ERRORS)
    p.add_argument("--ring", required=True)

    p = verb("prevaluations", cmd_prevaluations, "Prevaluations of height K and their match with valuations of Idl(R).", RING_ERRORS)
    p.add_argument("--ring", required=True)
    p.add_argument("--height", type=int, required=True)

    p = verb("conjecture", cmd_conjecture, "Table of finite local rings: is a field versus injectivity of the comparison map of Idl(R).", "SearchCapExceeded, ElementCapExceeded")
    p.add_argument("--max-order", type=int, default=16)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        print(f"UsageError: {exc}", file=sys.stderr)
        return 2
    except QFError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"UsageError: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
