from qf.coexp import loc_coexp
from qf.dot import emit_dot
from qf.lattice import chain, diamond

from conftest import pres


def edges(text):
    return [line.strip().rstrip(";") for line in text.splitlines() if "->" in line]


def test_two_chain_has_one_edge():
    assert edges(emit_dot(chain(2))) == ["n0 -> n1"]


def test_diamond_middle_rank():
    text = emit_dot(diamond())
    assert "{ rank=same; n1; n2; n3; }" in text
    assert len(edges(text)) == 6


def test_cuspidal_cubic_diagram():
    L = loc_coexp("D", pres("q2")).quantale.lattice
    text = emit_dot(L)
    named = {tuple(L.names[int(x.strip()[1:])] for x in e.split("->")) for e in edges(text)}
    assert named == {
        ("0", "x"),
        ("x", "dx*dy"),
        ("dx*dy", "dx"),
        ("dx*dy", "dy"),
        ("dx", "dx | dy"),
        ("dy", "dx | dy"),
        ("dx | dy", "1"),
    }
    assert text.count("label=") == 7


def test_labels_are_quoted():
    text = emit_dot(chain(2, ['a"b', "c"]), name='we"ird')
    assert 'label="a\\"b"' in text
    assert text.startswith('digraph "we\\"ird"')


def test_output_is_deterministic():
    L = loc_coexp("D", pres("q2")).quantale.lattice
    assert emit_dot(L) == emit_dot(L)
