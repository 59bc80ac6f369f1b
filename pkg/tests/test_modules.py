import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from stratalg.linalg import Matrix, Subspace
from stratalg.modules import (direct_sum, generated_submodule, hom_dim, hom_space, is_isomorphic, is_projective,
                              is_submodule, loewy_layers, off_diagonal_module, pd_at_most, projective_cover,
                              projective_dimension, projective_module, projective_power_multiplicity, quotient,
                              regular_module, simple_module, submodule, syzygy, top_multiplicities,
                              trace_subspace, zero_module)

from conftest import table

GOLDEN = json.loads((Path(__file__).parent / "golden" / "loewy.json").read_text(encoding="utf-8"))
SMALL = ["ex1_10", "s4_3", "s4_4", "s4_5", "s4_6", "hereditary_a2", "local_dual_numbers"]


@st.composite
def modules(draw, names=SMALL):
    """A quotient of a sum of projectives by a randomly generated submodule."""
    t = table(draw(st.sampled_from(names)))
    tops = draw(st.lists(st.sampled_from(t.vertices), min_size=1, max_size=2))
    P = direct_sum([projective_module(t, v) for v in tops], t)[0]
    vecs = draw(st.lists(st.lists(st.integers(-1, 1), min_size=P.dim, max_size=P.dim), max_size=2))
    return quotient(P, generated_submodule(P, vecs))[0]


@pytest.mark.parametrize("name", sorted(GOLDEN.keys() - {"_comment"}))
def test_loewy_layers_golden(name):
    t = table(name)
    got = {v: loewy_layers(projective_module(t, v)) for v in t.vertices}
    assert got == GOLDEN[name]


@settings(max_examples=40, deadline=None)
@given(modules())
def test_hom_from_projective_is_vertex_space(M):
    for v in M.algebra.vertices:
        assert hom_dim(projective_module(M.algebra, v), M) == M.dim_at(v)


@settings(max_examples=40, deadline=None)
@given(modules())
def test_trace_oracle_pair(M):
    # sum of images of all maps P_v -> M versus the submodule generated by e_v M
    t = M.algebra
    for v in t.vertices:
        P = projective_module(t, v)
        images = [c for h in hom_space(P, M) for c in h.columns()]
        assert Subspace.span(M.field, M.dim, images) == trace_subspace(M, v)


@settings(max_examples=40, deadline=None)
@given(modules())
def test_projective_cover_and_syzygy(M):
    cov = projective_cover(M)
    tops = top_multiplicities(M)
    assert cov.projective.dims == direct_sum(
        [projective_module(M.algebra, v) for v in M.algebra.vertices for _ in range(tops[v])], M.algebra)[0].dims
    # the cover map is a surjective module map
    for a in M.algebra.arrows:
        assert M.global_arrow(a.name) @ cov.map == cov.map @ cov.projective.global_arrow(a.name)
    assert Subspace.span(M.field, M.dim, cov.map.columns()).dim == M.dim
    assert syzygy(M).dim == cov.projective.dim - M.dim
    assert is_projective(M) == (syzygy(M).dim == 0)


@settings(max_examples=30, deadline=None)
@given(modules())
def test_submodule_and_quotient_dims(M):
    U = generated_submodule(M, [tuple(1 for _ in range(M.dim))]) if M.dim else Subspace.zero(M.field, 0)
    assert is_submodule(M, U)
    S, inc = submodule(M, U)
    Q, proj = quotient(M, U)
    S.validate()
    Q.validate()
    assert S.dim + Q.dim == M.dim


def test_projectives_are_projective():
    for name in SMALL:
        t = table(name)
        for v in t.vertices:
            P = projective_module(t, v)
            assert is_projective(P)
            assert projective_power_multiplicity(P, v) == 1
            assert projective_dimension(P, 3) == 0
        assert is_projective(regular_module(t))


def test_simple_modules():
    t = table("hereditary_a2")
    # S_x has a projective resolution 0 -> P_y -> P_x -> S_x
    assert projective_dimension(simple_module(t, "x"), 3) == 1
    assert projective_dimension(simple_module(t, "y"), 3) == 0
    assert projective_dimension(zero_module(t), 3) == -1
    # over dual numbers the simple has infinite projective dimension
    loc = table("local_dual_numbers")
    assert projective_dimension(simple_module(loc, "x"), 4) is None
    assert not pd_at_most(simple_module(loc, "x"), 4)


def test_off_diagonal_module_ex1_10():
    t = table("ex1_10")
    J, A0 = off_diagonal_module(t)
    assert J.dim == 4 and A0.dim == 4
    assert is_projective(J)
    assert top_multiplicities(J) == {"x": 0, "y": 1, "z": 2}


def test_is_isomorphic():
    t = table("s4_6")
    Px, Py = projective_module(t, "x"), projective_module(t, "y")
    S = simple_module(t, "z")
    a = direct_sum([Px, S])[0]
    b = direct_sum([S, Px])[0]
    assert a.dims == b.dims
    assert is_isomorphic(a, b) is True
    assert is_isomorphic(Px, Py) is False
    # same dimension vector, not isomorphic: S_x ⊕ S_y versus P_x
    assert is_isomorphic(direct_sum([simple_module(t, "x"), simple_module(t, "y")])[0], Px) is False


def test_direct_sum_inclusions():
    t = table("ex1_10")
    P = [projective_module(t, v) for v in t.vertices]
    S, incl = direct_sum(P)
    assert S.dim == t.dim
    for M, inc in zip(P, incl):
        for a in t.arrows:
            assert S.global_arrow(a.name) @ inc == inc @ M.global_arrow(a.name)
    Z, incl = direct_sum([], t)
    assert Z.dim == 0 and incl == []
    with pytest.raises(ValueError):
        direct_sum([])


def test_hom_between_projectives_is_block():
    # Hom(P_a, P_b) = e_a A e_b
    for name in SMALL:
        t = table(name)
        for a in t.vertices:
            for b in t.vertices:
                assert hom_dim(projective_module(t, a), projective_module(t, b)) == t.block_dim(a, b)


def test_zero_matrix_hom():
    t = table("semisimple_2")
    assert hom_space(simple_module(t, "x"), simple_module(t, "y")) == []
    assert [h.to_lists() for h in hom_space(simple_module(t, "x"), simple_module(t, "x"))] == [[["1"]]]
    assert isinstance(Matrix.identity(t.field, 1), Matrix)
