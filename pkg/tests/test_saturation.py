import itertools

import pytest

from qf.errors import CapExceeded, ElementCapExceeded
from qf.lattice import chain, is_isomorphic
from qf.presentation import evaluate, parse
from qf.quantale import dual_numbers, enumerate_homs, find_quantale_isomorphism, sierpinski
from qf.rings import builder_rings, ideal_presentation, ideal_quantale, parse_ring
from qf.saturation import saturate

from conftest import corpus_quantales, pres


def test_idempotent_generator_gives_three_chain():
    sat = saturate(parse("gens x\nrel x*x = x"))
    Q = sat.quantale
    assert Q.is_frame and Q.names == ("0", "x", "1")
    assert Q.mult == sierpinski().mult


def test_nilpotent_generator_gives_D():
    Q = saturate(pres("d")).quantale
    assert Q.mult == dual_numbers().mult


def test_x4_equals_x3_gives_five_chain():
    Q = saturate(pres("x4x3")).quantale
    assert is_isomorphic(Q.lattice, chain(5))
    assert Q.names == ("0", "x*x*x", "x*x", "x", "1")


def test_free_generator_exceeds_cap():
    with pytest.raises(CapExceeded) as info:
        saturate(pres("q1"))
    assert info.value.degree == 6
    with pytest.raises(CapExceeded):
        saturate(pres("q2"))


def test_degree_cap_override(monkeypatch):
    monkeypatch.setenv("QF_DEGREE_CAP", "2")
    with pytest.raises(CapExceeded) as info:
        saturate(pres("q1"))
    assert info.value.degree == 2
    Q = saturate(pres("q1"), truncate=True).quantale
    # 1 > x > x*x > 0
    assert len(Q) == 4


def test_truncated_q2_size():
    assert len(saturate(pres("q2"), truncate=True).quantale) == 25


def test_element_cap(monkeypatch):
    monkeypatch.setenv("QF_ELEMENT_CAP", "5")
    with pytest.raises(ElementCapExceeded):
        saturate(pres("q2"), truncate=True)


def test_frame_mode_terminates():
    P = parse("gens a, b, c, d\nidempotent")
    Q = saturate(P).quantale
    # free frame on 4 generators: the Dedekind number M(4)
    assert Q.is_frame
    assert len(Q) == 168


def test_relations_hold_in_output():
    for name in ("q3", "d", "x4x3", "sierpinski"):
        sat = saturate(pres(name))
        for rel in sat.presentation.relations:
            lv = evaluate(rel.lhs, sat.quantale, sat.generator_map)
            rv = evaluate(rel.rhs, sat.quantale, sat.generator_map)
            assert lv == rv if rel.op == "=" else sat.quantale.leq(lv, rv)


UNIVERSAL = [
    "gens x\nrel x*x = x",
    "gens e\nrel e*e = 0",
    "gens x\nrel x*x*x*x = x*x*x",
    "gens a, b\nrel a*b = 0\nrel a*a = a\nrel b*b = b",
    "gens a, b\nidempotent",
    "gens a, b\nrel a <= b\nrel b*b = a\nrel a*a = 0",
]


@pytest.mark.parametrize("text", UNIVERSAL)
def test_universal_property(text):
    P = parse(text)
    sat = saturate(P)
    Q = sat.quantale
    gens = P.generators
    for label, T in corpus_quantales():
        if len(T) > 8:
            continue
        from_homs = sorted(tuple(h.table[sat.generator_map[g]] for g in gens) for h in enumerate_homs(Q, T))
        assignments = []
        for values in itertools.product(T.elements, repeat=len(gens)):
            env = dict(zip(gens, values))
            ok = True
            for rel in P.relations:
                lv, rv = evaluate(rel.lhs, T, env), evaluate(rel.rhs, T, env)
                if not (lv == rv if rel.op == "=" else T.leq(lv, rv)):
                    ok = False
                    break
            if ok and P.idempotent:
                ok = all(T.mul(v, v) == v for v in values)
            if ok:
                assignments.append(values)
        assert from_homs == sorted(assignments), label


def test_ideal_presentation_small_rings():
    for spec in ("zmod 2", "zmod 3", "zmod 4", "zmod 6", "poly 2 0 0 1"):
        R = parse_ring(spec)
        Q = saturate(ideal_presentation(R)).quantale
        assert find_quantale_isomorphism(Q, ideal_quantale(R).quantale) is not None


def test_ideal_presentation_builder_rings():
    for R in builder_rings(16):
        Q = saturate(ideal_presentation(R)).quantale
        assert find_quantale_isomorphism(Q, ideal_quantale(R).quantale) is not None, R.label


def test_saturation_is_deterministic():
    a = saturate(pres("q2"), truncate=True).quantale
    b = saturate(pres("q2"), truncate=True).quantale
    assert a.names == b.names and a.mult == b.mult
