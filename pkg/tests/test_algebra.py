from fractions import Fraction

import pytest

from stratalg.algebra import (Arrow, Quiver, Relation, build_table, check_associativity, directedness,
                              find_cycle, is_isomorphic_algebra, is_local_direct_sum, loewy_length, opposite,
                              ordinary_quiver, path_from_word, quotient_by_idempotent, quotient_by_vertices,
                              radical, radical_powers, rebuild, topological_order)
from stratalg.errors import CapExceeded, InadmissibleRelation, ParseError
from stratalg.io import fixture, fixtures
from stratalg.linalg import GF

from conftest import table

ALL = sorted(fixtures())


def _monomial_dim(name):
    # independent oracle: count paths with no forbidden subword
    d = fixture(name)
    forbidden = {tuple(r.terms[0][1]) for r in d.relations}
    q = d.quiver
    count, frontier = len(q.vertices), [((a.name,), a.target) for a in q.arrows]
    while frontier:
        frontier = [(w, t) for w, t in frontier
                    if not any(w[i:i + len(f)] == f for f in forbidden for i in range(len(w) - len(f) + 1))]
        count += len(frontier)
        frontier = [((a.name,) + w, a.target) for w, t in frontier for a in q.arrows if a.source == t]
    return count


@pytest.mark.parametrize("name", ["s4_2", "s4_6", "hereditary_a2", "local_dual_numbers", "semisimple_2", "zero"])
def test_monomial_dims_match_path_count(name):
    assert table(name).dim == _monomial_dim(name)


@pytest.mark.parametrize("name,dim,proj", [
    ("ex1_10", 8, {"x": 5, "y": 2, "z": 1}),
    ("s4_2", 12, {"x": 5, "y": 3, "z": 2, "w": 2}),
    ("s4_3", 7, {"x": 2, "y": 3, "z": 2}),
    ("s4_4", 10, {"x": 5, "y": 3, "z": 2}),
    ("s4_5", 11, {"x": 6, "y": 3, "z": 2}),
    ("s4_6", 8, {"x": 2, "y": 3, "z": 3}),
])
def test_projective_dims_from_diagrams(name, dim, proj):
    t = table(name)
    assert t.dim == dim
    assert {v: t.projective_dim(v) for v in t.vertices} == proj


@pytest.mark.parametrize("name", ALL)
def test_associative_and_unital(name):
    t = table(name)
    assert check_associativity(t) == []
    one = t.one()
    for k in range(t.dim):
        e = t.unit(k)
        assert t.multiply(one, e) == e == t.multiply(e, one)


@pytest.mark.parametrize("name", ALL)
def test_opposite_is_involution(name):
    t = table(name)
    tt = opposite(opposite(t))
    assert tt.dim == t.dim
    assert is_isomorphic_algebra(t, tt) is True


def test_right_projectives_ex1_10():
    op = opposite(table("ex1_10"))
    assert {v: op.projective_dim(v) for v in op.vertices} == {"x": 2, "y": 2, "z": 4}


def test_ex1_10_basis_and_blocks():
    t = table("ex1_10")
    assert sorted(b.label for b in t.basis) == sorted(["e_x", "e_y", "e_z", "δ", "β", "α", "γ", "αδ"])
    assert t.block_dim("z", "x") == 2
    # αδ = γβ
    assert t.word_element(("α", "δ")) == t.word_element(("γ", "β"))
    assert t.word_element(("β", "δ")) == t.zero()


def test_quotient_by_vertex_s4_6():
    t = table("s4_6")
    q, _ = quotient_by_idempotent(t, "x")
    assert sorted(b.label for b in q.basis) == sorted(["e_y", "δ", "β", "e_z"])
    assert check_associativity(q) == []


def test_quotient_by_everything_is_zero():
    t = table("s4_2")
    q, _ = quotient_by_vertices(t, t.vertices)
    assert q.dim == 0


def test_directedness():
    d = directedness(table("s4_6"))
    assert not d.directed
    assert len(d.cycle) == 4 and d.cycle[0] == d.cycle[-1] and set(d.cycle) == {"x", "y", "z"}
    d = directedness(table("ex1_10"))
    assert d.directed
    # no nonzero path leaves a vertex towards one lower in the order
    order = d.linear_order()
    t = table("ex1_10")
    for i, a in enumerate(order):
        for b in order[:i]:
            assert t.block_dim(a, b) == 0


def test_local_direct_sum():
    assert is_local_direct_sum(table("local_dual_numbers"))
    assert is_local_direct_sum(table("semisimple_2"))
    assert not is_local_direct_sum(table("hereditary_a2"))


def test_radical_and_loewy_length():
    t = table("ex1_10")
    assert radical(t).dim == 5
    assert [p.dim for p in radical_powers(t)][:4] == [8, 5, 1, 0]
    assert loewy_length(t) == 3
    assert loewy_length(table("semisimple_2")) == 1


def test_ordinary_quiver_recovers_arrows():
    for name in ("ex1_10", "s4_4", "s4_5"):
        t = table(name)
        expected = {}
        d = fixture(name)
        # arrows that are not products of others
        redundant = {"s4_4": {"β′"}, "s4_5": {"α′", "β′"}}.get(name, set())
        for a in d.quiver.arrows:
            if a.name not in redundant:
                expected[(a.source, a.target)] = expected.get((a.source, a.target), 0) + 1
        assert ordinary_quiver(t) == expected


def test_rebuild_over_finite_field():
    t = rebuild(table("s4_5"), GF(2))
    assert t.dim == table("s4_5").dim
    assert check_associativity(t) == []


def test_isomorphism_detects_difference():
    assert is_isomorphic_algebra(table("hereditary_a2"), table("semisimple_2")) is False


def test_path_composition():
    q = fixture("ex1_10").quiver
    p = path_from_word(q, ("γ", "β"))
    assert (p.source, p.target, p.label) == ("x", "z", "γβ")
    with pytest.raises(ParseError):
        path_from_word(q, ("β", "γ"))


def test_graph_helpers():
    assert find_cycle("abc", [("a", "b"), ("b", "c")]) is None
    assert find_cycle("ab", [("a", "b"), ("b", "a")]) == ("a", "b", "a")
    assert topological_order("abc", [("c", "b"), ("b", "a")]) == ("c", "b", "a")


def test_inadmissible_relations_rejected():
    q = Quiver(("x", "y"), (Arrow("a", "x", "y"), Arrow("b", "y", "x")))
    with pytest.raises(InadmissibleRelation):
        # terms not parallel
        build_table(q, [Relation(((Fraction(1), ("b", "a")), (Fraction(1), ("a", "b")))), ])
    with pytest.raises(CapExceeded):
        build_table(q, [], max_paths=50)


def test_quiver_validation():
    with pytest.raises(ParseError):
        Quiver(("x", "x"))
    with pytest.raises(ParseError):
        Quiver(("x",), (Arrow("a", "x", "y"),))
