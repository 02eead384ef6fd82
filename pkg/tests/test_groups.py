from collections import Counter

import pytest

from frankl import groups as gr
from frankl.oracles import subgroups_by_subset_closure


def orders(spec):
    return Counter(gr.from_catalogue(spec).element_order)


def test_catalogue_element_orders():
    assert gr.from_catalogue("cyclic:1").n == 1
    assert orders("sym:3") == {1: 1, 2: 3, 3: 2}
    assert orders("dicyclic:2") == {1: 1, 2: 1, 4: 6}
    assert gr.from_catalogue("dihedral:5").n == 10
    assert gr.from_catalogue("alt:5").n == 60
    assert orders("elem:3^2") == {1: 1, 3: 8}
    assert gr.from_catalogue("direct:(cyclic:2,direct:(cyclic:3,cyclic:2))").n == 12


@pytest.mark.parametrize("spec", ["nope", "cyclic:0", "cyclic:x", "elem:2", "direct:(cyclic:2)",
                                  "widget:3"])
def test_bad_specs(spec):
    with pytest.raises(gr.BadSpec):
        gr.from_catalogue(spec)


def test_order_cap(monkeypatch):
    monkeypatch.setenv("FRANKL_MAX_ORDER", "10")
    with pytest.raises(gr.OrderTooLarge):
        gr.from_catalogue("cyclic:11")
    assert gr.from_catalogue("cyclic:10").n == 10


def test_generated_subgroup_in_s3():
    G = gr.from_catalogue("sym:3")
    t = [g for g in range(G.n) if G.element_order[g] == 2]
    assert gr.generated_subgroup(G, [t[0]]).order == 2
    assert gr.generated_subgroup(G, t[:2]) == G.whole


@pytest.mark.parametrize("spec, count", [
    ("cyclic:7", 2), ("sym:3", 6), ("dicyclic:2", 6), ("cyclic:12", 6), ("alt:4", 10),
    ("sym:4", 30), ("dihedral:4", 10), ("elem:2^3", 16), ("alt:5", 59),
])
def test_subgroup_counts(spec, count):
    assert len(gr.all_subgroups(gr.from_catalogue(spec))) == count


def test_q8_subgroup_orders():
    assert [H.order for H in gr.all_subgroups(gr.from_catalogue("dicyclic:2"))] == [1, 2, 4, 4, 4, 8]


@pytest.mark.parametrize("spec", ["cyclic:12", "sym:3", "dicyclic:2", "alt:4", "dihedral:4",
                                  "elem:2^2", "direct:(cyclic:2,cyclic:4)"])
def test_subgroups_match_subset_oracle(spec):
    G = gr.from_catalogue(spec)
    assert gr.all_subgroups(G) == subgroups_by_subset_closure(G)


@pytest.mark.parametrize("spec", ["sym:4", "dicyclic:3", "direct:(sym:3,cyclic:4)", "cyclic:24"])
def test_lagrange(spec):
    G = gr.from_catalogue(spec)
    assert all(G.n % H.order == 0 for H in gr.all_subgroups(G))


def test_normality():
    G = gr.from_catalogue("sym:3")
    assert gr.is_normal(G, G.trivial) and gr.is_normal(G, G.whole)
    for H in gr.all_subgroups(G):
        if H.order == 3:
            assert gr.is_normal(G, H)
        if H.order == 2:
            assert not gr.is_normal(G, H)
    Q = gr.from_catalogue("dicyclic:2")
    assert all(gr.is_normal(Q, H) for H in gr.all_subgroups(Q))


def test_quotients():
    G = gr.from_catalogue("sym:3")
    assert gr.quotient(G, G.whole).n == 1
    A3 = next(H for H in gr.all_subgroups(G) if H.order == 3)
    assert Counter(gr.quotient(G, A3).element_order) == {1: 1, 2: 1}
    Q = gr.from_catalogue("dicyclic:2")
    center = next(H for H in gr.all_subgroups(Q) if H.order == 2)
    assert Counter(gr.quotient(Q, center).element_order) == {1: 1, 2: 3}
    with pytest.raises(gr.NotNormal):
        gr.quotient(G, next(H for H in gr.all_subgroups(G) if H.order == 2))


def test_two_prime_power_generation():
    G = gr.from_catalogue("cyclic:6")
    a, b = gr.two_prime_power_generated(G)
    assert {G.element_order[a], G.element_order[b]} == {2, 3}
    assert gr.two_prime_power_generated(gr.from_catalogue("elem:2^3")) is None
    C8 = gr.from_catalogue("cyclic:8")
    g, h = gr.two_prime_power_generated(C8)
    assert g == h and C8.element_order[g] == 8


def test_pq_generation():
    A5 = gr.from_catalogue("alt:5")
    a, b = gr.pq_generated(A5, 2, 5)
    assert (A5.element_order[a], A5.element_order[b]) == (2, 5)
    assert gr.generated_subgroup(A5, [a, b]) == A5.whole
    assert gr.pq_generated(gr.from_catalogue("alt:4"), 2, 3) is not None
    assert gr.pq_generated(gr.from_catalogue("cyclic:4"), 2, 2) is None
    with pytest.raises(gr.GroupError):
        gr.pq_generated(A5, 2, 4)


def test_solvability():
    for spec in ("cyclic:12", "elem:2^3", "direct:(cyclic:2,cyclic:6)"):
        assert gr.is_solvable(gr.from_catalogue(spec))
    S4 = gr.from_catalogue("sym:4")
    assert [H.order for H in gr.derived_series(S4)] == [24, 12, 4, 1]
    A5 = gr.from_catalogue("alt:5")
    assert gr.commutator_subgroup(A5) == A5.whole and not gr.is_solvable(A5)


def test_complemented_groups():
    assert gr.is_complemented_group(gr.from_catalogue("sym:3"))
    assert not gr.is_complemented_group(gr.from_catalogue("cyclic:4"))
    for spec in ("elem:2^2", "elem:2^3", "elem:3^2", "elem:5^1"):
        assert gr.is_complemented_group(gr.from_catalogue(spec))


def test_permutation_helpers():
    p = gr.parse_cycles("(1 2 3)", 4)
    assert p == (1, 2, 0, 3)
    assert gr.cycle_string(p) == "(1 2 3)"
    q = gr.parse_cycles("(1 2)", 4)
    # q is applied first: 1 -> 2 -> 3
    assert gr.compose(p, q)[0] == 2
    for bad in ("(1 5)", "(1 2)(2 3)", "1 2"):
        with pytest.raises(gr.GroupError):
            gr.parse_cycles(bad, 4)


def test_perm_file():
    G = gr.parse_group_text("group perm 4\n(1 2 3 4)\n(1 3)\n")
    assert G.n == 8
    assert len(gr.all_subgroups(G)) == 10


def test_cayley_round_trip():
    G = gr.from_catalogue("alt:4")
    text = gr.serialize_cayley(G)
    H = gr.parse_group_text(text)
    assert H.mul == G.mul and gr.serialize_cayley(H) == text


@pytest.mark.parametrize("text, line", [
    ("group table 3\n", 1),
    ("group cayley 2\n0 1\n1 x\n", 3),
    ("group cayley 2\n0 1\n1 5\n", 3),
    ("group perm 3\n(1 2)\n(1 4)\n", 3),
])
def test_group_file_errors(text, line):
    with pytest.raises(gr.GroupFormatError) as info:
        gr.parse_group_text(text)
    assert info.value.line == line


def test_non_group_table_is_rejected():
    with pytest.raises(gr.GroupFormatError):
        gr.parse_group_text("group cayley 3\n0 1 2\n1 0 2\n2 2 0\n")
    with pytest.raises(gr.NotAGroup):
        gr.FiniteGroup([[0, 1, 2], [1, 2, 0], [2, 1, 0]])
