"""The group G = Aut(S) x| S^* and its Lie data acting dually on P.

Conventions fixed here (and tested):

* ``apply_group_element((phi, u), f) = u -| (phi_dual f)``;
* ``compose(g, h)`` satisfies ``apply(compose(g, h), f) = apply(h, apply(g, f))``;
  concretely ``compose((phi,u), (psi,v)) = (phi o psi, v * psi^{-1}(u))``;
* ``exp_group_element(D, tau)`` realises the exponential of the Lie algebra
  element f |-> D_dual(f) + tau -| f as an honest group element.
"""

from .dp import DPPoly, Operator, contract, monomials
from .errors import (
    ArityMismatch,
    FieldMismatch,
    InvalidAutomorphism,
    NotAUnit,
    SingularMatrix,
)
from .fields import char_guard
from .linalg import rref, solve


def subst(op, images):
    """Substitute a_i -> images[i] into the operator ``op``."""
    n, field = op.n, op.field
    trunc = images[0].trunc
    pow_cache = [{0: Operator.one(n, field, trunc)} for _ in range(n)]

    def power(i, k):
        cache = pow_cache[i]
        if k not in cache:
            cache[k] = power(i, k - 1) * images[i]
        return cache[k]

    result = Operator.zero(n, field, trunc)
    for e, c in op.terms.items():
        term = Operator.one(n, field, trunc).scale(c)
        for i, a in enumerate(e):
            if a:
                term = term * power(i, a)
        result = result + term
    return result


class Automorphism:
    """phi: S -> S given by its images phi(a_i), truncated at ``trunc``."""

    def __init__(self, images, trunc=None):
        if not images:
            raise InvalidAutomorphism("no images")
        self.n = images[0].n
        self.field = images[0].field
        self.trunc = images[0].trunc if trunc is None else trunc
        self.images = [
            Operator(im.n, im.field, im.terms, self.trunc) for im in images
        ]
        if len(self.images) != self.n:
            raise ArityMismatch("need %d images" % self.n)
        for im in self.images:
            if im.n != self.n or im.field != self.field:
                raise FieldMismatch("inconsistent images")
            if im.order < 1:
                raise InvalidAutomorphism("image has a constant term")
        lin = self.linear_matrix()
        red, _ = rref(lin, self.field, self.n)
        if len(red) != self.n:
            raise InvalidAutomorphism("linear parts are dependent")

    def linear_matrix(self):
        """L[j][i] = coefficient of a_j in phi(a_i)."""
        unit_vecs = list(monomials(self.n, 1))
        return [
            [self.images[i].coeff(unit_vecs[j]) for i in range(self.n)]
            for j in range(self.n)
        ]

    def is_unipotent(self):
        """Every phi(a_i) - a_i lies in m^2."""
        for i, im in enumerate(self.images):
            d = im - Operator.variable(self.n, self.field, i + 1, self.trunc)
            if d.order < 2:
                return False
        return True

    def __call__(self, op):
        return subst(op, self.images)

    def inverse(self):
        """psi with phi(psi(a_i)) = a_i, by degreewise correction."""
        n, field, trunc = self.n, self.field, self.trunc
        lin = self.linear_matrix()
        unit = [[field.one() if i == j else field.zero() for j in range(n)] for i in range(n)]
        linv_cols = []
        for i in range(n):
            col = solve(lin, [unit[j][i] for j in range(n)], field, n)
            if col is None:
                raise InvalidAutomorphism("linear part not invertible")
            linv_cols.append(col)
        # linv[j][i]: coefficient of a_j in (L^-1 a)_i
        linv_images = []
        for i in range(n):
            terms = {}
            for j, e in enumerate(monomials(n, 1)):
                c = linv_cols[i][j]
                if not field.is_zero(c):
                    terms[e] = c
            linv_images.append(Operator(n, field, terms, trunc))
        psi = list(linv_images)
        for _ in range(trunc + 1):
            errs = [
                subst(psi[i], self.images) - Operator.variable(n, field, i + 1, trunc)
                for i in range(n)
            ]
            if all(e.is_zero() for e in errs):
                break
            psi = [psi[i] - subst(errs[i], linv_images) for i in range(n)]
        return Automorphism(psi)

    def __repr__(self):
        return "<Automorphism %s>" % (self.images,)


def identity_automorphism(n, field, trunc):
    return Automorphism([Operator.variable(n, field, i + 1, trunc) for i in range(n)])


class Derivation:
    """D: S -> S with D(a_i) = images[i]; extended by the Leibniz rule."""

    def __init__(self, images):
        self.n = images[0].n
        self.field = images[0].field
        self.trunc = images[0].trunc
        self.images = list(images)
        for im in self.images:
            if im.order < 1:
                raise InvalidAutomorphism("derivation must preserve m")

    def in_unipotent_part(self):
        return all(im.order >= 2 for im in self.images)

    def __call__(self, op):
        out = Operator.zero(self.n, self.field, self.trunc)
        for j in range(self.n):
            out = out + op.partial_derivative(j + 1) * self.images[j]
        return out


def apply_automorphism_dual(phi, f):
    """phi_dual(f) = sum_a x^[a] (D^a -| f) with D_i = phi(a_i) - a_i."""
    if phi.trunc < max(f.degree, 0):
        raise ArityMismatch("truncation %d below deg f = %d" % (phi.trunc, f.degree))
    n, field = f.n, f.field
    diffs = [
        phi.images[i] - Operator.variable(n, field, i + 1, phi.trunc) for i in range(n)
    ]
    d = f.degree
    result = DPPoly.zero(n, field)
    cache = {(0,) * n: Operator.one(n, field, phi.trunc)}
    for deg in range(max(d, 0) + 1):
        for a in monomials(n, deg):
            if a not in cache:
                i = next(k for k, ak in enumerate(a) if ak)
                prev = a[:i] + (a[i] - 1,) + a[i + 1 :]
                cache[a] = cache[prev] * diffs[i]
            g = contract(cache[a], f)
            if not g.is_zero():
                result = result + DPPoly.monomial(n, field, a) * g
    return result


def apply_derivation_dual(D, f):
    """D_dual(f) = sum_i x_i (D(a_i) -| f)."""
    n, field = f.n, f.field
    out = DPPoly.zero(n, field)
    for i in range(n):
        g = contract(D.images[i], f)
        if not g.is_zero():
            out = out + DPPoly.variable(n, field, i + 1) * g
    return out


def apply_unit(u, f):
    if not u.is_unit():
        raise NotAUnit("operator has zero constant term")
    return contract(u, f)


class GroupElement:
    """(phi, u) in Aut(S) x| S^*, acting by f |-> u -| phi_dual(f)."""

    def __init__(self, aut, unit):
        if not unit.is_unit():
            raise NotAUnit("unit part has zero constant term")
        self.aut = aut
        self.unit = Operator(unit.n, unit.field, unit.terms, aut.trunc)

    @property
    def n(self):
        return self.aut.n

    @property
    def field(self):
        return self.aut.field

    @property
    def trunc(self):
        return self.aut.trunc

    def is_unipotent(self):
        one = (0,) * self.n
        return (
            self.aut.is_unipotent()
            and self.unit.terms.get(one) == self.field.one()
        )

    def __repr__(self):
        return "<GroupElement aut=%r unit=%r>" % (self.aut.images, self.unit)


def identity_group_element(n, field, trunc):
    return GroupElement(
        identity_automorphism(n, field, trunc), Operator.one(n, field, trunc)
    )


def apply_group_element(g, f):
    return apply_unit(g.unit, apply_automorphism_dual(g.aut, f))


def compose(g, h):
    """apply(compose(g, h), f) == apply(h, apply(g, f))."""
    chi = Automorphism([subst(im, g.aut.images) for im in h.aut.images])
    psi_inv = h.aut.inverse()
    unit = h.unit * subst(g.unit, psi_inv.images)
    return GroupElement(chi, unit)


def group_inverse(g):
    """h with compose(g, h) acting as the identity."""
    phi_inv = g.aut.inverse()
    unit = subst(g.unit, g.aut.images).inverse()
    return GroupElement(phi_inv, unit)


def apply_linear_map(M, f, trunc=None):
    """Dual action of the linear substitution x_j -> sum_i M[j][i] x_i."""
    n, field = f.n, f.field
    trunc = max(f.degree, 1) if trunc is None else trunc
    red, _ = rref([list(row) for row in M], field, n)
    if len(red) != n:
        raise SingularMatrix("linear map is singular")
    images = []
    for i in range(n):
        terms = {}
        for j, e in enumerate(monomials(n, 1)):
            c = M[j][i]
            if not field.is_zero(c):
                terms[e] = c
        images.append(Operator(n, field, terms, trunc))
    return apply_automorphism_dual(Automorphism(images), f)


# ---------------------------------------------------------------------------
# Exponentials (characteristic 0 or > trunc)


def exp_operator(w):
    """exp(w) = sum w^k / k! for w in m."""
    n, field = w.n, w.field
    char_guard(field, w.trunc)
    result = Operator.one(n, field, w.trunc)
    term = Operator.one(n, field, w.trunc)
    for k in range(1, w.trunc + 1):
        term = term * w
        if term.is_zero():
            break
        result = result + term.scale(field.div(field.one(), field.factorial(k)))
    return result


def exp_automorphism(D):
    """exp(D) as an automorphism, for D with every D(a_i) in m^2."""
    n, field, trunc = D.n, D.field, D.trunc
    char_guard(field, trunc)
    images = []
    for i in range(n):
        acc = Operator.variable(n, field, i + 1, trunc)
        term = D.images[i]
        k = 1
        while not term.is_zero():
            acc = acc + term.scale(field.div(field.one(), field.factorial(k)))
            term = D(term)
            k += 1
        images.append(acc)
    return Automorphism(images)


def lie_apply(D, tau, f):
    """The Lie algebra action: D_dual(f) + tau -| f."""
    return apply_derivation_dual(D, f) + contract(tau, f)


def exp_lie_apply(D, tau, f):
    """exp of the Lie algebra action, computed directly on P."""
    char_guard(f.field, max(f.degree, 0))
    result = f
    term = f
    k = 1
    while True:
        term = lie_apply(D, tau, term)
        if term.is_zero():
            break
        result = result + term.scale(f.field.div(f.field.one(), f.field.factorial(k)))
        k += 1
    return result


def exp_group_element(D, tau):
    """The group element whose dual action is exp(f |-> D_dual f + tau -| f).

    The unit part is exp(sum_k (-D)^k(tau) / (k+1)!), the automorphism part
    exp(D); this matches exp_lie_apply exactly (tested).
    """
    field = D.field
    char_guard(field, D.trunc)
    acc = Operator.zero(D.n, field, D.trunc)
    term = tau
    k = 0
    while not term.is_zero():
        acc = acc + term.scale(field.div(field.one(), field.factorial(k + 1)))
        term = D(term).scale(field.from_int(-1))
        k += 1
    return GroupElement(exp_automorphism(D), exp_operator(acc))
