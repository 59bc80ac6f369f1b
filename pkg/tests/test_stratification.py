from itertools import permutations

import pytest

from stratalg.algebra import directedness, free_over_local
from stratalg.errors import PreconditionViolated
from stratalg.io import fixtures
from stratalg.modules import (direct_sum, end_dim, generated_submodule, hom_space, loewy_layers, projective_module,
                              quotient, regular_module, simple_module)
from stratalg.stratification import (check_order, filtration_membership, greedy_filtration, is_properly_stratified,
                                     is_quasi_hereditary, is_standardly_stratified, standard_modules, stratify)

from conftest import table

ALL = sorted(fixtures())
ALL_ORDERS = [(name, o) for name in ALL for o in permutations(table(name).vertices)]


@pytest.mark.parametrize("name,order", ALL_ORDERS)
def test_ss_oracle_pair(name, order):
    # inductive quotient criterion versus a greedy filtration of the regular module
    t = table(name)
    assert is_standardly_stratified(t, order) == greedy_filtration(t, order, regular_module(t)).member


@pytest.mark.parametrize("name,order", ALL_ORDERS)
def test_standard_family_invariants(name, order):
    t = table(name)
    fam = standard_modules(t, order)
    for lam in t.vertices:
        s = fam[lam]
        assert t.projective_dim(lam) == s.dim + s.kernel.dim
        s.module.validate()
    if order:
        assert fam[order[0]].dim == t.projective_dim(order[0])
    v = stratify(t, order, proper=True, qh=True)
    if v.properly_stratified or v.quasi_hereditary:
        assert v.standardly_stratified
    if v.standardly_stratified:
        for mu in t.vertices:
            res = filtration_membership(t, order, projective_module(t, mu))
            assert res.member
            assert t.projective_dim(mu) == sum(res.multiplicities[l] * fam[l].dim for l in t.vertices)
        for lam in t.vertices:
            if fam[lam].dim:
                res = filtration_membership(t, order, fam[lam].module)
                assert res.member and res.length == 1
        reg = filtration_membership(t, order, regular_module(t))
        assert all(k >= 1 for k in reg.multiplicities.values())


@pytest.mark.parametrize("name", [n for n in ALL if directedness(table(n)).directed])
def test_directed_standard_modules(name):
    t = table(name)
    order = directedness(t).linear_order()
    fam = standard_modules(t, order)
    for lam in t.vertices:
        expect = {v: t.block_dim(lam, lam) if v == lam else 0 for v in t.vertices}
        assert fam[lam].module.dim_vector() == expect
    free = all(free_over_local(t, mu, [t.unit(k) for k in t.block(mu, lam)], "left")
               for mu in t.vertices for lam in t.vertices if mu != lam)
    assert is_standardly_stratified(t, order) == free


def test_s4_2_standard_dims():
    t = table("s4_2")
    assert standard_modules(t, "yxzw").dims() == {"x": 2, "y": 3, "z": 2, "w": 2}
    assert not is_quasi_hereditary(t, "yxzw")
    assert end_dim(standard_modules(t, "yxzw")["x"].module) == 2


def test_s4_3_simple_standard():
    fam = standard_modules(table("s4_3"), "xzy")
    assert fam["y"].module.dim_vector() == {"x": 0, "y": 1, "z": 0}


def test_ex1_10_all_orders_ss():
    t = table("ex1_10")
    assert all(is_standardly_stratified(t, o) for o in permutations(t.vertices))
    assert not all(is_properly_stratified(t, o) for o in permutations(t.vertices))


def test_s4_4_other_order_ss():
    assert is_standardly_stratified(table("s4_4"), "xzy")


def test_small_cases():
    loc = table("local_dual_numbers")
    assert is_standardly_stratified(loc, "x") and is_properly_stratified(loc, "x")
    assert not is_quasi_hereditary(loc, "x")
    a2 = table("hereditary_a2")
    for o in ("xy", "yx"):
        assert is_quasi_hereditary(a2, o)
    assert is_properly_stratified(a2, "xy")
    assert is_standardly_stratified(table("zero"), ())


def test_s4_5_module_outside_filtration():
    # M = P_x / image of P_y, Loewy layers x ; y ; y
    t = table("s4_5")
    Px = projective_module(t, "x")
    assert hom_space(projective_module(t, "y"), Px)
    found = False
    for order in permutations(t.vertices):
        if not is_standardly_stratified(t, order):
            continue
        for h in hom_space(projective_module(t, "y"), Px):
            M = quotient(Px, generated_submodule(Px, h.columns()))[0]
            if loewy_layers(M) == [{"x": 1}, {"y": 1}, {"y": 1}]:
                found = True
                assert not filtration_membership(t, order, M).member
    assert found


def test_membership_requires_ss():
    t = table("s4_4")
    bad = next(o for o in permutations(t.vertices) if not is_standardly_stratified(t, o))
    with pytest.raises(PreconditionViolated):
        filtration_membership(t, bad, simple_module(t, "x"))


def test_check_order_rejects_non_permutations():
    t = table("ex1_10")
    for bad in ("xy", "xxy", "xyw"):
        with pytest.raises(PreconditionViolated):
            check_order(t, bad)


def test_simple_is_member_when_standard():
    t = table("hereditary_a2")
    assert filtration_membership(t, "yx", simple_module(t, "x")).member
    S = direct_sum([simple_module(t, "x"), simple_module(t, "x")])[0]
    assert filtration_membership(t, "yx", S).multiplicities == {"x": 2, "y": 0}
    assert not filtration_membership(t, "xy", simple_module(t, "x")).member
