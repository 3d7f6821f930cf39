import json

import pytest

from qf.errors import NotALattice, SchemaError
from qf.lattice import pentagon
from qf.quantale import dual_numbers
from qf.rings import ideal_quantale, zmod
from qf.serialize import (
    dumps,
    lattice_from_json,
    lattice_to_json,
    load_json,
    quantale_from_json,
    quantale_to_json,
    ring_from_json,
    ring_to_json,
)


def round_trip(obj):
    return json.loads(dumps(obj))


def test_quantale_round_trips():
    for Q in (dual_numbers(), ideal_quantale(zmod(6)).quantale):
        again = quantale_from_json(round_trip(quantale_to_json(Q)))
        assert again == Q
        assert dumps(quantale_to_json(again)) == dumps(quantale_to_json(Q))


def test_lattice_and_ring_round_trip():
    N = pentagon()
    assert lattice_from_json(round_trip(lattice_to_json(N))) == N
    R = zmod(12)
    assert ring_from_json(round_trip(ring_to_json(R))) == R


def test_field_order_is_fixed():
    doc = quantale_to_json(dual_numbers())
    assert list(doc) == ["elements", "leq", "mult", "unit"]
    assert list(ring_to_json(zmod(2))) == ["elements", "add", "mul", "zero", "one"]


@pytest.mark.parametrize(
    "mutate, path",
    [
        (lambda d: d["mult"].__setitem__(0, [0, 0]), "$.mult[0]"),
        (lambda d: d["mult"].__setitem__(1, [0, 1, 7]), "$.mult[1][2]"),
        (lambda d: d["mult"].pop(), "$.mult"),
        (lambda d: d.pop("unit"), "$"),
        (lambda d: d.__setitem__("elements", ["0", "0", "1"]), "$.elements"),
        (lambda d: d["leq"].__setitem__(0, ["a", 0]), "$.leq[0][0]"),
    ],
)
def test_malformed_documents(mutate, path):
    doc = quantale_to_json(dual_numbers())
    mutate(doc)
    with pytest.raises(SchemaError) as info:
        quantale_from_json(doc)
    assert info.value.path == path


def test_semantic_errors_pass_through():
    doc = lattice_to_json(pentagon())
    # drop every pair above the bottom except reflexive ones: an antichain with no joins
    doc["leq"] = [[i, i] for i in range(5)]
    with pytest.raises(NotALattice):
        lattice_from_json(doc)


def test_invalid_json_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(SchemaError):
        load_json(str(path))
