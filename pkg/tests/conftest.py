import os
from pathlib import Path

import pytest

from qf.coexp import loc_coexp
from qf.lattice import all_lattices, boolean_lattice, chain, diamond, pentagon
from qf.presentation import load
from qf.quantale import chain_quantale, dual_numbers, frame_of, omega_quantale, sierpinski
from qf.rings import ideal_quantale, parse_ring
from qf.saturation import saturate

ROOT = Path(__file__).resolve().parent.parent
PRESENTATIONS = ROOT / "presentations"

CORPUS_RINGS = ["zmod 2", "zmod 3", "zmod 4", "zmod 6", "zmod 8", "zmod 12", "poly 2 0 0 1", "poly 2 0 0 0 1", "zmod 2 x zmod 2", "mono 2 x,y x^2 x*y y^2", "mono 2 x,y x^2 y^2"]


def pres(name):
    return load(str(PRESENTATIONS / f"{name}.qpres"))


def corpus_quantales():
    """(label, quantale) pairs used by the property suites."""
    out = [
        ("Omega", omega_quantale()),
        ("D", dual_numbers()),
        ("S", sierpinski()),
        ("B2", frame_of(boolean_lattice(2))),
        ("chain4", frame_of(chain(4))),
    ]
    out += [(f"C{k}", chain_quantale(k)) for k in (1, 2, 3)]
    out += [(f"Idl({spec})", ideal_quantale(parse_ring(spec)).quantale) for spec in CORPUS_RINGS]
    for name in ("q3", "d", "x4x3", "sierpinski"):
        out.append((f"sat({name})", saturate(pres(name)).quantale))
    out.append(("sat(q2, truncated)", saturate(pres("q2"), truncate=True).quantale))
    for name in ("q1", "q2", "q3"):
        for which in ("D", "S"):
            out.append((f"loc_{which}({name})", loc_coexp(which, pres(name)).quantale))
    return out


def small_lattices(max_size=6):
    out = []
    for n in range(1, max_size + 1):
        out.extend(all_lattices(n))
    return out


@pytest.fixture(scope="session")
def quantales():
    return corpus_quantales()


@pytest.fixture(scope="session")
def lattices6():
    return small_lattices(6)


@pytest.fixture(scope="session")
def named_lattices():
    return [chain(1), chain(2), chain(3), chain(5), boolean_lattice(2), boolean_lattice(3), diamond(), pentagon()]


@pytest.fixture
def cli_env(monkeypatch):
    monkeypatch.delenv("QF_ELEMENT_CAP", raising=False)
    monkeypatch.delenv("QF_DEGREE_CAP", raising=False)
    return os.environ
