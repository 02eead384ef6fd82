import pytest

from frankl import groups as gr
from frankl.oracles import (labeled_lattice_count, labeled_posets, lattices_isomorphic,
                            natural_posets, subgroups_by_subset_closure)


@pytest.mark.parametrize("m, count", [(0, 1), (1, 1), (2, 3), (3, 19), (4, 219)])
def test_labeled_poset_counts(m, count):
    assert sum(1 for _ in labeled_posets(m)) == count


@pytest.mark.parametrize("m, count", [(1, 1), (2, 2), (3, 7), (4, 40)])
def test_natural_poset_counts(m, count):
    # naturally labeled posets on m points
    assert sum(1 for _ in natural_posets(m)) == count


def test_oracle_limits():
    with pytest.raises(ValueError):
        labeled_lattice_count(8)
    with pytest.raises(ValueError):
        subgroups_by_subset_closure(gr.from_catalogue("cyclic:17"))


def test_isomorphism_oracle(n5, m3, b2):
    assert lattices_isomorphic(n5, n5)
    assert not lattices_isomorphic(n5, m3)
    assert not lattices_isomorphic(n5, b2)
