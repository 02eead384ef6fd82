import random
from fractions import Fraction

import pytest

from frankl.analysis import (CertificationPath, NoJoinIrreducibles, TooSmall, averaged_frankl,
                             dual_semimodularity_failure, frankl_brute_force,
                             frankl_via_left_modular_coatom, frankl_witnesses,
                             has_left_modular_maximal_chain, is_comodernistic,
                             is_dually_semimodular, is_left_modular, left_modular_elements)
from frankl.lattice import chain, coatoms, join_irreducibles


def test_bounds_are_left_modular(small_lattices):
    for L in small_lattices:
        assert is_left_modular(L, L.bottom) and is_left_modular(L, L.top)


def test_left_modular_elements(n5, m3):
    assert left_modular_elements(m3) == [0, 1, 2, 3, 4]
    assert left_modular_elements(n5) == [0, 1, 3, 4]
    # the failing pair for element 2 is 1 < 3
    assert n5.join(1, n5.meet(2, 3)) == 1
    assert n5.meet(n5.join(1, 2), 3) == 3


def test_left_modularity_matches_shuffled_replay(small_lattices):
    rng = random.Random(7)
    for L in rng.sample(small_lattices, 40):
        pairs = [(a, b) for a in range(L.n) for b in range(L.n) if L.lt(a, b)]
        for m in range(L.n):
            rng.shuffle(pairs)
            replay = all(L.join(a, L.meet(m, b)) == L.meet(L.join(a, m), b) for a, b in pairs)
            assert is_left_modular(L, m) == replay


def test_brute_force_examples(two_chain, n5, m3):
    r = frankl_brute_force(two_chain)
    assert (r.satisfied, r.witness, r.upper_interval_size) == (True, 1, 1)
    r = frankl_brute_force(n5)
    assert (r.witness, r.upper_interval_size) == (2, 2)
    assert frankl_witnesses(n5) == [2, 3]
    r = frankl_brute_force(m3)
    assert r.witness in (1, 2, 3) and r.upper_interval_size == 2
    assert r.certification_path is CertificationPath.BRUTE_FORCE


def test_brute_force_rejects_single_element():
    with pytest.raises(TooSmall):
        frankl_brute_force(chain(1))


def test_averaged_examples(two_chain, n5, m3):
    assert averaged_frankl(two_chain) == (Fraction(1), True)
    assert averaged_frankl(m3) == (Fraction(2), True)
    assert averaged_frankl(n5) == (Fraction(7, 3), True)
    with pytest.raises(NoJoinIrreducibles):
        averaged_frankl(chain(1))


def test_averaged_implies_brute_force(small_lattices):
    for L in small_lattices:
        if L.n >= 2 and averaged_frankl(L)[1]:
            assert frankl_brute_force(L).satisfied


def test_dual_semimodularity(n5, m3):
    assert is_dually_semimodular(m3)
    assert not is_dually_semimodular(n5)
    assert dual_semimodularity_failure(n5) is not None
    assert all(is_dually_semimodular(chain(k)) for k in range(1, 6))


def test_left_modular_chain(n5, m3):
    assert has_left_modular_maximal_chain(n5) == [0, 1, 3, 4]
    path = has_left_modular_maximal_chain(m3)
    assert path[0] == 0 and path[-1] == 4 and len(path) == 3


def test_chain_absent_when_only_bounds_are_left_modular(small_lattices):
    # on seven elements every lattice has height at least 2
    found = [L for L in small_lattices if L.n == 7 and left_modular_elements(L) == [0, L.top]]
    assert found
    for L in found:
        assert has_left_modular_maximal_chain(L) is None


def test_comodernistic_examples(n5, m3):
    assert is_comodernistic(n5) and is_comodernistic(m3)
    assert all(is_comodernistic(chain(k)) for k in range(1, 6))


def test_coatom_route_examples(b2, n5):
    r = frankl_via_left_modular_coatom(chain(4))
    assert r.certification_path is CertificationPath.TOP_JOIN_IRREDUCIBLE and r.witness == 3
    r = frankl_via_left_modular_coatom(n5)
    assert r.witness == 2 and r.certificate.modular_element == 3
    assert r.certification_path is CertificationPath.LEFT_MODULAR_COATOM
    r = frankl_via_left_modular_coatom(b2)
    assert r.witness in (1, 2) and r.upper_interval_size == 2


def test_dually_semimodular_coatoms_are_left_modular(small_lattices):
    for L in small_lattices:
        if L.n >= 2 and is_dually_semimodular(L):
            assert all(is_left_modular(L, c) for c in coatoms(L))
            assert frankl_via_left_modular_coatom(L).satisfied


def test_hierarchy(small_lattices):
    for L in small_lattices:
        if has_left_modular_maximal_chain(L) is not None or is_dually_semimodular(L):
            assert is_comodernistic(L)
        if L.n >= 2 and is_comodernistic(L):
            assert frankl_brute_force(L).satisfied
            assert frankl_via_left_modular_coatom(L) is not None


def test_report_witness_is_join_irreducible(small_lattices):
    for L in small_lattices:
        if L.n < 2:
            continue
        r = frankl_brute_force(L)
        assert r.witness in join_irreducibles(L)
        assert 2 * r.upper_interval_size <= L.n
