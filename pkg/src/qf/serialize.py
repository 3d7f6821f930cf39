"""JSON encodings of lattices, quantales, rings and tangent reports.

Lattice:  {"elements": [names], "leq": [[i, j], ...]}
Quantale: lattice fields + {"mult": [[i, j, k], ...], "unit": i}
Ring:     {"elements": [names], "add": [[i, j, k], ...], "mul": [...], "zero": i, "one": i}

Field order is fixed, so equal values encode to identical text.
"""

from __future__ import annotations

import json

from .errors import QFError, SchemaError
from .lattice import FiniteLattice, _order_masks


def lattice_to_json(L):
    return {
        "elements": [str(x) for x in L.names],
        "leq": [[a, b] for a, b in L.leq_pairs()],
    }


def quantale_to_json(Q):
    out = lattice_to_json(Q.lattice)
    n = len(Q)
    out["mult"] = [[a, b, Q.mult[a][b]] for a in range(n) for b in range(n)]
    out["unit"] = Q.unit
    return out


def ring_to_json(R):
    n = len(R)
    return {
        "elements": [str(x) for x in R.names],
        "add": [[a, b, R.add[a][b]] for a in range(n) for b in range(n)],
        "mul": [[a, b, R.mul[a][b]] for a in range(n) for b in range(n)],
        "zero": R.zero,
        "one": R.one,
    }


def _format(obj, level):
    pad = "  " * (level + 1)
    end = "  " * level
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_format(v, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(x, (dict, list, tuple)) for x in obj):
            # rows of scalars stay on one line
            return json.dumps(list(obj), ensure_ascii=False)
        return "[\n" + ",\n".join(pad + _format(x, level + 1) for x in obj) + "\n" + end + "]"
    return json.dumps(obj, ensure_ascii=False)


def dumps(obj):
    """Indented JSON with scalar lists kept inline; deterministic."""
    return _format(obj, 0) + "\n"


# --- loading -------------------------------------------------------------------


def _expect(cond, path, detail):
    if not cond:
        raise SchemaError(path, detail)


def _index(value, n, path):
    _expect(isinstance(value, int) and not isinstance(value, bool), path, "expected an integer index")
    _expect(0 <= value < n, path, f"index {value} out of range 0..{n - 1}")
    return value


def _elements(doc, path="$"):
    _expect(isinstance(doc, dict), path, "expected an object")
    _expect("elements" in doc, path, "missing field 'elements'")
    names = doc["elements"]
    _expect(isinstance(names, list) and names, f"{path}.elements", "expected a nonempty list")
    for k, x in enumerate(names):
        _expect(isinstance(x, str), f"{path}.elements[{k}]", "expected a string")
    _expect(len(set(names)) == len(names), f"{path}.elements", "names are not distinct")
    return names


def _table(doc, key, n, path):
    _expect(key in doc, path, f"missing field '{key}'")
    rows = doc[key]
    _expect(isinstance(rows, list), f"{path}.{key}", "expected a list of triples")
    table = [[None] * n for _ in range(n)]
    for k, row in enumerate(rows):
        where = f"{path}.{key}[{k}]"
        _expect(isinstance(row, list) and len(row) == 3, where, "expected a triple [i, j, k]")
        a, b, c = (_index(v, n, f"{where}[{t}]") for t, v in enumerate(row))
        _expect(table[a][b] is None or table[a][b] == c, where, "conflicting entry")
        table[a][b] = c
    for a in range(n):
        for b in range(n):
            _expect(table[a][b] is not None, f"{path}.{key}", f"missing entry for ({a}, {b})")
    return table


def lattice_from_json(doc, path="$"):
    names = _elements(doc, path)
    n = len(names)
    _expect("leq" in doc, path, "missing field 'leq'")
    pairs = doc["leq"]
    _expect(isinstance(pairs, list), f"{path}.leq", "expected a list of pairs")
    named = []
    for k, pair in enumerate(pairs):
        where = f"{path}.leq[{k}]"
        _expect(isinstance(pair, list) and len(pair) == 2, where, "expected a pair [i, j]")
        a, b = (_index(v, n, f"{where}[{t}]") for t, v in enumerate(pair))
        named.append((names[a], names[b]))
    return FiniteLattice(names, _order_masks(names, named, False))


def quantale_from_json(doc, path="$"):
    from .quantale import build_quantale

    L = lattice_from_json(doc, path)
    n = len(L)
    mult = _table(doc, "mult", n, path)
    _expect("unit" in doc, path, "missing field 'unit'")
    unit = _index(doc["unit"], n, f"{path}.unit")
    return build_quantale(L, mult, unit)


def ring_from_json(doc, path="$"):
    from .rings import from_tables

    names = _elements(doc, path)
    n = len(names)
    add = _table(doc, "add", n, path)
    mul = _table(doc, "mul", n, path)
    for key in ("zero", "one"):
        _expect(key in doc, path, f"missing field '{key}'")
    zero = _index(doc["zero"], n, f"{path}.zero")
    one = _index(doc["one"], n, f"{path}.one")
    return from_tables(names, add, mul, zero, one)


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc.msg} at line {exc.lineno}") from None


__all__ = [
    "QFError",
    "dumps",
    "lattice_to_json",
    "lattice_from_json",
    "quantale_to_json",
    "quantale_from_json",
    "ring_to_json",
    "ring_from_json",
    "load_json",
]
