import itertools

import pytest

from qf.errors import NotJoinPreserving, NotMeetPreserving, NotSupercontinuous
from qf.lattice import boolean_lattice, chain, classify, diamond, dual_modular_pair, modular_pair, pentagon
from qf.suplattice import (
    LatticeMap,
    SupMorphism,
    closed_quotient,
    compose,
    downset_inclusion,
    downset_lattice,
    dual_basis,
    enumerate_sup_morphisms,
    identity,
    image_factorization,
    is_epi_normal,
    is_mono_normal,
    is_supercontinuous,
    left_adjoint,
    normality_profile,
    omega,
    right_adjoint,
    totally_below,
    totally_below_by_subsets,
    way_below_sets,
)


def test_sup_morphism_checks_all_joins():
    with pytest.raises(NotJoinPreserving):
        SupMorphism(chain(2), chain(2), [1, 1])
    # monotone, and the top is the join of the atom images it is assigned,
    # but b v c = 1 is sent above f(b) v f(c) = 0
    M = diamond()
    f = LatticeMap(M, omega(), [0, 1, 0, 0, 1])
    assert not f.is_join_preserving()


def test_right_adjoint_examples():
    L = chain(3)
    assert right_adjoint(identity(L)).table == identity(L).table
    D = downset_lattice(chain(2))
    up = right_adjoint(D.join_map)
    for a in (0, 1):
        assert D.downsets[up.table[a]] == chain(2).down_mask(a)
    f = SupMorphism(chain(3), chain(2), [0, 1, 1])
    g = right_adjoint(f)
    assert g.table == (0, 2)


def test_adjunction_identities(lattices6):
    corpus = [L for L in lattices6 if len(L) <= 4] + [diamond(), pentagon()]
    for S, T in itertools.product(corpus, repeat=2):
        if len(S) * len(T) > 20:
            continue
        for f in enumerate_sup_morphisms(S, T):
            g = right_adjoint(f)
            assert g.is_meet_preserving()
            for x in S.elements:
                assert f.table[g.table[f.table[x]]] == f.table[x]
            for y in T.elements:
                assert g.table[f.table[g.table[y]]] == g.table[y]
                for x in S.elements:
                    assert T.leq(f.table[x], y) == S.leq(x, g.table[y])
            assert left_adjoint(g).table == f.table


def test_left_adjoint_needs_meets():
    g = LatticeMap(chain(2), chain(3), [0, 1])
    with pytest.raises(NotMeetPreserving):
        left_adjoint(g)


def test_image_factorization():
    f = SupMorphism(boolean_lattice(2), chain(3), [0, 1, 2, 2])
    epi, mono = image_factorization(f)
    assert compose(mono, epi).table == f.table
    assert epi.is_surjective() and mono.is_injective()


def test_normality_examples():
    L = pentagon()
    for b in L.elements:
        assert normality_profile(downset_inclusion(L, b)).normal_mono
    inc = SupMorphism(chain(2), chain(3), [0, 2])
    assert not normality_profile(inc).normal_mono
    B = boolean_lattice(2)
    for a in B.elements:
        # x -> x v a, landing in the upset of a so that the bottom is kept
        assert is_epi_normal(closed_quotient(B, a))
        assert normality_profile(closed_quotient(B, a)).normal_epi


def test_totally_below_matches_subsets(lattices6):
    for L in lattices6:
        if len(L) <= 5:
            assert totally_below(L) == totally_below_by_subsets(L)


def test_supercontinuity_examples():
    for n in range(1, 6):
        assert is_supercontinuous(chain(n))
    assert not is_supercontinuous(diamond())
    assert is_supercontinuous(boolean_lattice(2))
    with pytest.raises(NotSupercontinuous):
        dual_basis(diamond())


def test_supercontinuous_iff_distributive(lattices6):
    from qf.lattice import all_lattices

    for L in lattices6 + all_lattices(7):
        sc = is_supercontinuous(L)
        assert sc == classify(L).distributive
        # the join map on downsets has a left adjoint, given by the totally-below sets
        DL = downset_lattice(L)
        pos = {m: i for i, m in enumerate(DL.downsets)}
        below = way_below_sets(L)
        if DL.join_map.is_meet_preserving():
            lower = left_adjoint(DL.join_map)
            assert sc == all(DL.downsets[lower.table[a]] == below[a] for a in L.elements)
        else:
            assert not sc
        assert all(below[a] in pos for a in L.elements)


def test_dual_basis_examples():
    Om = omega()
    basis = dual_basis(Om)
    assert basis.sigma[1].table == (0, 1)
    D = chain(3, ["0", "e", "1"])
    basis = dual_basis(D)
    assert basis.sigma[1].table == (0, 1, 1)
    assert basis.sigma[2].table == (0, 0, 1)
    B = boolean_lattice(2)
    basis = dual_basis(B)
    for atom in (1, 2):
        assert basis.sigma[atom].table == tuple(int(B.leq(atom, a)) for a in B.elements)
    assert basis.check()


def test_downset_lattice_examples():
    from qf.lattice import build_poset, is_isomorphic

    anti = build_poset(["a", "b"], [("a", "a"), ("b", "b")])
    assert is_isomorphic(downset_lattice(anti).lattice, boolean_lattice(2))
    assert downset_lattice(anti).join_map is None
    assert is_isomorphic(downset_lattice(chain(2)).lattice, chain(3))
    assert is_isomorphic(downset_lattice(chain(3)).lattice, chain(4))


def test_modular_iff_normal_composites(lattices6):
    for M in lattices6:
        all_epi = True
        all_mono = True
        for b in M.elements:
            m = downset_inclusion(M, b)
            for a in M.elements:
                e = closed_quotient(M, a)
                em = compose(e, m)
                epi_n = is_epi_normal(em)
                mono_n = is_mono_normal(em)
                # composite is epi-normal exactly for modular pairs (a, b),
                # mono-normal exactly for dual modular pairs (b, a)
                assert epi_n == modular_pair(M, a, b)
                assert mono_n == dual_modular_pair(M, b, a)
                all_epi &= epi_n
                all_mono &= mono_n
        modular = classify(M).modular
        assert all_epi == modular
        assert all_mono == modular


def test_strict_composites(lattices6):
    # a lattice is modular iff strict-into then strict-out-of stays strict
    for M in lattices6:
        if len(M) > 5:
            continue
        ok = True
        for b in M.elements:
            for a in M.elements:
                ok &= normality_profile(compose(closed_quotient(M, a), downset_inclusion(M, b))).strict
        assert ok == classify(M).modular


def test_composably_strict_via_modular_elements():
    from qf.lattice import all_lattices, is_left_dual_modular, is_left_modular, is_right_dual_modular, is_right_modular

    corpus = [L for n in range(1, 6) for L in all_lattices(n)]
    seen = 0
    for S, T in itertools.product(corpus, repeat=2):
        for f in enumerate_sup_morphisms(S, T):
            prof = normality_profile(f)
            top = f.table[S.top]
            kernel = right_adjoint(f).table[T.bottom]
            expected = (
                prof.strict
                and is_right_modular(T, top)
                and is_left_dual_modular(T, top)
                and is_left_modular(S, kernel)
                and is_right_dual_modular(S, kernel)
            )
            assert prof.composably_strict == expected
            seen += prof.composably_strict
    assert seen > 0
