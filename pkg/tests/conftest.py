import random

import pytest

from apolar import GF, QQ, DPPoly, Operator
from apolar.dp import monomials_upto


@pytest.fixture
def rng():
    return random.Random(20260823)


def random_poly(rng, n, field, dmax, density=0.5, force_top=True):
    terms = {}
    for e in monomials_upto(n, dmax):
        if rng.random() < density:
            terms[e] = field.from_int(rng.randint(-4, 4))
    if force_top:
        top = tuple(dmax if i == 0 else 0 for i in range(n))
        if field.is_zero(terms.get(top, field.zero())):
            terms[top] = field.one()
    return DPPoly(n, field, terms)


def random_form(rng, n, field, d, density=0.8):
    """Random nonzero homogeneous polynomial of degree exactly d."""
    from apolar.dp import monomials

    while True:
        terms = {
            e: field.from_int(rng.randint(-4, 4))
            for e in monomials(n, d)
            if rng.random() < density
        }
        f = DPPoly(n, field, terms)
        if f.degree == d:
            return f


def random_operator(rng, n, field, trunc, min_order=0, density=0.5):
    terms = {}
    for e in monomials_upto(n, trunc):
        if sum(e) >= min_order and rng.random() < density:
            terms[e] = field.from_int(rng.randint(-4, 4))
    return Operator(n, field, terms, trunc)


def random_unipotent(rng, n, field, trunc):
    """A random element of the unipotent group G+."""
    from apolar import Automorphism, GroupElement

    images = []
    for i in range(n):
        terms = {tuple(1 if j == i else 0 for j in range(n)): field.one()}
        for e in monomials_upto(n, trunc):
            if sum(e) >= 2 and rng.random() < 0.4:
                terms[e] = field.from_int(rng.randint(-2, 2))
        images.append(Operator(n, field, terms, trunc))
    unit_terms = {(0,) * n: field.one()}
    for e in monomials_upto(n, trunc):
        if sum(e) >= 1 and rng.random() < 0.4:
            unit_terms[e] = field.from_int(rng.randint(-2, 2))
    return GroupElement(Automorphism(images), Operator(n, field, unit_terms, trunc))


def random_group_element(rng, n, field, trunc):
    """A random element of the full group (invertible linear part, unit)."""
    from apolar import Automorphism, GroupElement
    from apolar.errors import InvalidAutomorphism

    while True:
        images = []
        for i in range(n):
            terms = {}
            for e in monomials_upto(n, trunc):
                if 1 <= sum(e) and rng.random() < 0.4:
                    terms[e] = field.from_int(rng.randint(-2, 2))
            terms[tuple(1 if j == i else 0 for j in range(n))] = field.from_int(
                rng.choice([1, 1, 2, -1])
            )
            images.append(Operator(n, field, terms, trunc))
        unit_terms = {(0,) * n: field.from_int(rng.choice([1, 2, -1]))}
        for e in monomials_upto(n, trunc):
            if sum(e) >= 1 and rng.random() < 0.4:
                unit_terms[e] = field.from_int(rng.randint(-2, 2))
        try:
            return GroupElement(
                Automorphism(images), Operator(n, field, unit_terms, trunc)
            )
        except InvalidAutomorphism:
            continue
