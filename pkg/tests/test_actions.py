from fractions import Fraction as Q

import pytest

from apolar import (
    GF,
    QQ,
    Automorphism,
    Derivation,
    DPPoly,
    GroupElement,
    Operator,
    apply_automorphism_dual,
    apply_group_element,
    apply_linear_map,
    apply_unit,
    compose,
    contract,
    group_inverse,
    identity_group_element,
    pair,
    subst,
)
from apolar.actions import (
    apply_derivation_dual,
    exp_automorphism,
    exp_group_element,
    exp_lie_apply,
    exp_operator,
    identity_automorphism,
    lie_apply,
)
from apolar.errors import InvalidAutomorphism, NotAUnit, SingularMatrix

from conftest import random_group_element, random_poly, random_unipotent


def V(n, i, trunc):
    return Operator.variable(n, QQ, i, trunc)


def test_dual_automorphism_additive_shear():
    # phi(a1) = a1, phi(a2) = a1 + a2 pushes x^[3] to the full symmetric tail
    phi = Automorphism([V(2, 1, 3), V(2, 1, 3) + V(2, 2, 3)])
    F = DPPoly(2, QQ, {(3, 0): Q(1)})
    expect = DPPoly(2, QQ, {(3, 0): Q(1), (2, 1): Q(1), (1, 2): Q(1), (0, 3): Q(1)})
    assert apply_automorphism_dual(phi, F) == expect


def test_dual_automorphism_quadratic_shear():
    # phi(a2) = a2 + a1^2 on x^[4]: picks up x^[2]y and y^[2], no factorials
    phi = Automorphism([V(2, 1, 4), V(2, 2, 4) + V(2, 1, 4) * V(2, 1, 4)])
    F = DPPoly(2, QQ, {(4, 0): Q(1)})
    expect = DPPoly(2, QQ, {(4, 0): Q(1), (2, 1): Q(1), (0, 2): Q(1)})
    assert apply_automorphism_dual(phi, F) == expect


def test_identity_acts_trivially(rng):
    f = random_poly(rng, 2, QQ, 4)
    e = identity_group_element(2, QQ, 4)
    assert apply_group_element(e, f) == f


def test_automorphism_requires_invertible_linear_part():
    with pytest.raises(InvalidAutomorphism):
        Automorphism([V(2, 1, 3), V(2, 1, 3)])
    with pytest.raises(InvalidAutomorphism):
        Automorphism([V(2, 1, 3), Operator.one(2, QQ, 3)])


def test_automorphism_inverse(rng):
    for _ in range(5):
        g = random_group_element(rng, 2, QQ, 4)
        phi = g.aut
        psi = phi.inverse()
        for i in range(2):
            assert subst(psi.images[i], phi.images) == V(2, i + 1, 4)
            assert subst(phi.images[i], psi.images) == V(2, i + 1, 4)


def test_compose_contract(rng):
    for n in (2, 3):
        for _ in range(3):
            g = random_group_element(rng, n, QQ, 4)
            h = random_group_element(rng, n, QQ, 4)
            f = random_poly(rng, n, QQ, 4)
            assert apply_group_element(compose(g, h), f) == apply_group_element(
                h, apply_group_element(g, f)
            )


def test_group_inverse(rng):
    g = random_group_element(rng, 2, QQ, 4)
    f = random_poly(rng, 2, QQ, 4)
    assert apply_group_element(group_inverse(g), apply_group_element(g, f)) == f


def test_unit_action_is_contraction():
    u = Operator(2, QQ, {(0, 0): Q(1), (1, 0): Q(2)}, 3)
    f = DPPoly(2, QQ, {(2, 1): Q(1)})
    assert apply_unit(u, f) == f + contract(Operator.variable(2, QQ, 1, 3), f).scale(Q(2))
    with pytest.raises(NotAUnit):
        apply_unit(Operator.variable(2, QQ, 1, 3), f)


def test_unipotent_detection(rng):
    g = random_unipotent(rng, 2, QQ, 4)
    assert g.is_unipotent()
    shear = GroupElement(
        Automorphism([V(2, 1, 3), V(2, 1, 3) + V(2, 2, 3)]),
        Operator.one(2, QQ, 3),
    )
    assert not shear.is_unipotent()


def test_apply_linear_map_permutation():
    # x1 <-> x2 swap
    M = [[Q(0), Q(1)], [Q(1), Q(0)]]
    f = DPPoly(2, QQ, {(3, 1): Q(5)})
    assert apply_linear_map(M, f) == DPPoly(2, QQ, {(1, 3): Q(5)})
    with pytest.raises(SingularMatrix):
        apply_linear_map([[Q(1), Q(1)], [Q(1), Q(1)]], f)


def test_apply_linear_map_preserves_degree(rng):
    M = [[Q(1), Q(2)], [Q(0), Q(1)]]
    F = DPPoly(2, QQ, {(2, 2): Q(1)})
    out = apply_linear_map(M, F)
    assert out.tdf() == out and out.degree == 4


def test_derivation_leibniz():
    D = Derivation([V(2, 2, 4) * V(2, 2, 4), Operator.zero(2, QQ, 4)])
    s = V(2, 1, 4) * V(2, 1, 4)
    # D(a1^2) = 2 a1 D(a1)
    assert D(s) == (V(2, 1, 4) * V(2, 2, 4) * V(2, 2, 4)).scale(Q(2))


def test_exp_operator():
    w = Operator(1, QQ, {(1,): Q(1)}, 3)
    e = exp_operator(w)
    assert e.terms == {(0,): Q(1), (1,): Q(1), (2,): Q(1, 2), (3,): Q(1, 6)}


def test_exp_automorphism_is_automorphism():
    D = Derivation([Operator.zero(2, QQ, 4), V(2, 1, 4) * V(2, 1, 4)])
    phi = exp_automorphism(D)
    assert phi.images[0] == V(2, 1, 4)
    # exp of a nilpotent-ish derivation: a2 + a1^2 + ...
    assert phi.images[1].coeff((2, 0)) == Q(1)


def test_exp_group_element_matches_lie_exponential(rng):
    for n in (2, 3):
        for _ in range(3):
            trunc = 4
            imgs = []
            for i in range(n):
                a = Operator.variable(n, QQ, i + 1, trunc)
                imgs.append(a * a)  # something in m^2
            D = Derivation(imgs)
            tau = Operator(
                n,
                QQ,
                {tuple(1 if j == 0 else 0 for j in range(n)): Q(rng.randint(1, 3))},
                trunc,
            )
            f = random_poly(rng, n, QQ, trunc)
            g = exp_group_element(D, tau)
            assert apply_group_element(g, f) == exp_lie_apply(D, tau, f)
            assert g.is_unipotent()


def test_lie_apply_lowers_degree_for_unipotent_data():
    n, trunc = 2, 5
    a1 = Operator.variable(n, QQ, 1, trunc)
    D = Derivation([a1 * a1, a1 * a1 * a1])
    tau = a1
    f = DPPoly(n, QQ, {(3, 2): Q(1)})
    out = lie_apply(D, tau, f)
    assert out.degree <= f.degree  # D in m^2 keeps degree, tau lowers


def test_dual_adjunction_spot(rng):
    # <phi(sigma), f> = <sigma, phi_dual(f)>
    g = random_group_element(rng, 2, QQ, 4)
    phi = g.aut
    f = random_poly(rng, 2, QQ, 4)
    sigma = Operator(2, QQ, {(2, 1): Q(3), (1, 0): Q(-1)}, 4)
    assert pair(phi(sigma), f) == pair(sigma, apply_automorphism_dual(phi, f))
