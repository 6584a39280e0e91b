"""Reduction algorithms: leading-form removal, unipotent orbit membership,
t-compressed and annihilator-square normal forms, and the golden examples.

The workhorse is ``lower_degree_step``: given f and a target F with
G = tdf(f - F) of degree e < deg F, it finds g in the unipotent group G+
with deg(apply(g, f) - F) < e.  Two solvers are tried in order:

* a homogeneous solve of G = sum_i x_i (D_i -| tdf F) + tau -| tdf F with
  D_i, tau homogeneous of degrees d-e+1 and d-e, assembled naively as
  (a_i -> a_i - D_i, 1 - tau) -- all corrections land strictly below e;
* an exact mixed-degree solve of the same equation against the full F,
  assembled as the exponential of the corresponding Lie algebra element,
  so the identity L F = G turns into apply(g, f) = f - G + (lower).

If neither system is solvable the leading term is certifiably outside the
tangent space and NotInTangent is raised.
"""

import math

from .actions import (
    Automorphism,
    Derivation,
    GroupElement,
    apply_group_element,
    apply_linear_map,
    compose,
    exp_group_element,
    identity_group_element,
)
from .apolarity import (
    dim_apolar,
    hilbert_function,
    ideal_square_graded,
    max_t_compressed,
    module_sf,
    symmetric_decomposition,
)
from .dp import DPPoly, Operator, contract, monomials, monomials_upto
from .errors import (
    GoldenMismatch,
    HypothesisFailed,
    NotInTangent,
    NotTCompressed,
    ReductionFailed,
    TdfMismatch,
    WrongHilbertFunction,
)
from .fields import QQ, GF, char_guard
from .linalg import Basis, Window, solve, span
from .tangent import perp_tangent, tangent_space, unip_tangent_space


class ReductionTrace:
    """A successful reduction: steps, final polynomial, accumulated element.

    Replaying ``accumulated`` on ``start`` must reproduce ``final`` exactly,
    and the degree of the difference to ``target`` strictly decreases along
    the steps.
    """

    def __init__(self, start, target, steps, final, accumulated):
        self.start = start
        self.target = target
        self.steps = steps  # list of (GroupElement, resulting DPPoly)
        self.final = final
        self.accumulated = accumulated
        self.validate()

    def validate(self):
        if apply_group_element(self.accumulated, self.start) != self.final:
            raise ReductionFailed("accumulated element does not replay the trace")
        last = (self.start - self.target).degree
        for _, result in self.steps:
            cur = (result - self.target).degree
            if cur >= last:
                raise ReductionFailed("difference degree did not decrease")
            last = cur

    def __len__(self):
        return len(self.steps)

    def __repr__(self):
        return "<ReductionTrace %d steps, final=%r>" % (len(self.steps), self.final)


def _solve_homogeneous_step(G, F):
    """Solve G = sum_i x_i (D_i -| T) + tau -| T with T = tdf(F), homogeneous
    D_i of degree d-e+1 and tau of degree d-e.  Returns a GroupElement built
    as (a_i -> a_i - D_i, 1 - tau), or None when the system is inconsistent.
    """
    n, field = F.n, F.field
    T = F.tdf()
    d, e = T.degree, G.degree
    trunc = d
    win = Window.P_graded(n, e, field)
    cols = []
    labels = []  # (i, exps) with i = -1 for the tau block
    for i in range(n):
        xi = DPPoly.variable(n, field, i + 1)
        for exps in monomials(n, d - e + 1):
            v = xi * contract(Operator.monomial(n, field, exps, trunc), T)
            cols.append(win.encode(v))
            labels.append((i, exps))
    for exps in monomials(n, d - e):
        v = contract(Operator.monomial(n, field, exps, trunc), T)
        cols.append(win.encode(v))
        labels.append((-1, exps))
    rows = [[c[r] for c in cols] for r in range(win.dim)]
    sol = solve(rows, win.encode(G), field, len(cols))
    if sol is None:
        return None
    d_terms = [{} for _ in range(n)]
    tau_terms = {}
    for (i, exps), c in zip(labels, sol):
        if field.is_zero(c):
            continue
        if i < 0:
            tau_terms[exps] = c
        else:
            d_terms[i][exps] = c
    images = [
        Operator.variable(n, field, i + 1, trunc)
        - Operator(n, field, d_terms[i], trunc)
        for i in range(n)
    ]
    unit = Operator.one(n, field, trunc) - Operator(n, field, tau_terms, trunc)
    return GroupElement(Automorphism(images), unit)


def _solve_general_step(G, F):
    """Solve sum_i x_i (D_i -| F) + tau -| F = G exactly, with D_i in m^2 and
    tau in m of arbitrary degrees, and assemble exp of the Lie element
    (-D, -tau).  Returns None when the system is inconsistent.
    """
    n, field = F.n, F.field
    d = F.degree
    trunc = d
    win = Window.P_upto(n, d - 1, field)
    cols = []
    labels = []
    for i in range(n):
        xi = DPPoly.variable(n, field, i + 1)
        for exps in monomials_upto(n, d):
            if sum(exps) < 2:
                continue
            v = xi * contract(Operator.monomial(n, field, exps, trunc), F)
            cols.append(win.encode(v))
            labels.append((i, exps))
    for exps in monomials_upto(n, d):
        if sum(exps) < 1:
            continue
        v = contract(Operator.monomial(n, field, exps, trunc), F)
        cols.append(win.encode(v))
        labels.append((-1, exps))
    rows = [[c[r] for c in cols] for r in range(win.dim)]
    sol = solve(rows, win.encode(G), field, len(cols))
    if sol is None:
        return None
    d_terms = [{} for _ in range(n)]
    tau_terms = {}
    for (i, exps), c in zip(labels, sol):
        if field.is_zero(c):
            continue
        if i < 0:
            tau_terms[exps] = field.neg(c)
        else:
            d_terms[i][exps] = field.neg(c)
    D = Derivation([Operator(n, field, d_terms[i], trunc) for i in range(n)])
    tau = Operator(n, field, tau_terms, trunc)
    return exp_group_element(D, tau)


def lower_degree_step(f, F):
    """One unipotent reduction step towards F.

    Requires G = tdf(f - F) nonzero of degree e < deg F; returns (g, f')
    with f' = apply(g, f) and deg(f' - F) < e.
    """
    diff = f - F
    G = diff.tdf()
    if G.is_zero():
        raise ReductionFailed("f already equals the target")
    e, d = G.degree, F.degree
    if e >= d:
        raise ReductionFailed("difference degree %d not below deg F = %d" % (e, d))
    char_guard(f.field, d)
    g = _solve_homogeneous_step(G, F)
    if g is None:
        g = _solve_general_step(G, F)
    if g is None:
        raise NotInTangent(e)
    f_new = apply_group_element(g, f)
    if (f_new - F).degree >= e:
        raise ReductionFailed("degree did not drop at %d" % e)
    return g, f_new


def reduce_toward(f, F, stop_degree=None):
    """Greedy reduction of f towards F; stops when f == F, or when the
    difference has degree below ``stop_degree`` if one is given."""
    d = max(f.degree, F.degree, 1)
    acc = identity_group_element(f.n, f.field, d)
    steps = []
    current = f
    while True:
        diff = current - F
        if diff.is_zero():
            break
        if stop_degree is not None and diff.degree < stop_degree:
            break
        g, current = lower_degree_step(current, F)
        acc = compose(acc, g)
        steps.append((g, current))
    return ReductionTrace(f, F, steps, current, acc)


class MembershipResult:
    """Outcome of a unipotent orbit membership test."""

    def __init__(self, is_member, trace=None, witness_degree=None):
        self.is_member = is_member
        self.trace = trace
        self.witness_degree = witness_degree

    def __bool__(self):
        return self.is_member

    def __repr__(self):
        if self.is_member:
            return "<MembershipResult yes, %d steps>" % len(self.trace)
        return "<MembershipResult no, witness degree %d>" % self.witness_degree


def unip_orbit_membership(F, f, allow_inhomogeneous_target=False):
    """Is f in the unipotent orbit of F?  Complete for homogeneous F.

    For homogeneous F a greedy failure at degree e certifies that
    tdf(f - F) is outside the unipotent tangent space, so "no" answers are
    trustworthy.  For non-homogeneous targets (opt-in) only "yes" answers
    are conclusive.
    """
    if F.is_zero():
        raise TdfMismatch("target is zero")
    if F.tdf() != F and not allow_inhomogeneous_target:
        raise TdfMismatch("target is not homogeneous")
    if f.tdf() != F.tdf():
        raise TdfMismatch("tdf(f) differs from the target's leading form")
    char_guard(f.field, f.degree)
    try:
        trace = reduce_toward(f, F)
    except NotInTangent as exc:
        return MembershipResult(False, witness_degree=exc.degree)
    return MembershipResult(True, trace=trace)


def t_compressed_normal_form(f):
    """For t-compressed f (maximal t >= 1), remove all terms of degree
    <= t+1; returns (t, trace to f_{>= t+2})."""
    d = f.degree
    if d < 3:
        raise NotTCompressed("degree %d < 3" % d)
    t = max_t_compressed(f)
    if t < 1:
        raise NotTCompressed("Apolar(f) is not t-compressed for any t >= 1")
    char_guard(f.field, d)
    trace = reduce_toward(f, f.part_from(t + 2))
    return t, trace


def improved_normal_form(f, t):
    """Remove terms of degree <= t+1 assuming the symmetric-decomposition
    hypotheses: H(r) maximal for r <= t and Delta_r(1) = 0 for r >= d-1-t."""
    n, field = f.n, f.field
    d = f.degree
    H = hilbert_function(f)
    for r in range(t + 1):
        if H[r] != math.comb(r + n - 1, r):
            raise HypothesisFailed("H(%d) is not maximal" % r, r)
    sd = symmetric_decomposition(f)
    for r, delta in enumerate(sd):
        if r >= d - 1 - t and len(delta) > 1 and delta[1] != 0:
            raise HypothesisFailed("Delta_%d(1) != 0" % r, r)
    char_guard(field, d)
    # the hypotheses force P_{<=1} = m^{t+1} -| f; verify the containment
    sub = module_sf(f, t + 1)
    for e in monomials_upto(n, 1):
        if not sub.contains(DPPoly.monomial(n, field, e)):
            raise HypothesisFailed("P_{<=1} not inside m^%d -| f" % (t + 1))
    return reduce_toward(f, f.part_from(t + 2))


def square_ideal_reduce(f, t):
    """Reduce f to F + g with F = tdf(f) and deg g < t, assuming
    dim Apolar(f) = dim Apolar(F) and that the unipotent tangent perp of F
    equals (Ann F)^2 in every degree t <= i <= d-1."""
    n, field = f.n, f.field
    F = f.tdf()
    d = f.degree
    char_guard(field, d)
    if dim_apolar(f) != dim_apolar(F):
        raise HypothesisFailed("dim Apolar(f) differs from dim Apolar(tdf f)")
    perp = perp_tangent(F, unipotent=True, max_degree=d - 1)
    for i in range(t, d):
        win_i = Window.S_graded(n, i, field)
        vecs_i = [
            v
            for v in perp.vectors()
            if not v.is_zero() and all(sum(e) == i for e in v.terms)
        ]
        if span(vecs_i, win_i) != ideal_square_graded(F, i):
            raise HypothesisFailed("perp differs from (Ann F)^2 in degree %d" % i, i)
    return reduce_toward(f, F, stop_degree=t)


# ---------------------------------------------------------------------------
# Golden examples


def _p(n, field, terms):
    return DPPoly(n, field, {e: field.from_int(c) for e, c in terms.items()})


def _merge(*dicts):
    out = {}
    for d in dicts:
        for e, c in d.items():
            out[e] = out.get(e, 0) + c
    return out


_F1 = {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1}
_F2 = {(3, 1, 0): 1, (0, 0, 4): 1}
_F3 = {(3, 1, 0): 1, (2, 0, 2): 1}
_XYZ = {(1, 1, 1): 1}
_Y3 = {(0, 3, 0): 1}
_Y2Z = {(0, 2, 1): 1}
_YZ2 = {(0, 1, 2): 1}

_NORMAL_FORMS_13331 = [
    ("f_{1,1}", _merge(_F1, _XYZ)),
    ("f_{1,0}", _F1),
    ("f_{2,11}", _merge(_F2, _Y3, _Y2Z)),
    ("f_{2,10}", _merge(_F2, _Y3)),
    ("f_{2,01}", _merge(_F2, _Y2Z)),
    ("f_{2,00}", _F2),
    ("f_{3,101}", _merge(_F3, _Y3, _YZ2)),
    ("f_{3,100}", _merge(_F3, _Y3)),
    ("f_{3,010}", _merge(_F3, _Y2Z)),
    ("f_{3,001}", _merge(_F3, _YZ2)),
    ("f_{3,000}", _F3),
]


def stabilizer_matrix_13331(a, b):
    """Matrix of t_{a,b} -- t(x) = x, t(y) = -a^2 x + b^2 y - 2ab z,
    t(z) = a x + b z -- on the cubic tails of the F_3 branch.

    The tails are taken in the classical normalisation (the images of
    y^3, y^2 z, y z^3 under x^a -> a! x^[a]) and reduced modulo the
    degree-3 part of the unipotent tangent space of F_3; columns hold the
    coordinates of the images.  Symbolically the matrix is
    [[b^6, 0, 0], [-6ab^5, b^5, 0], [(27/2)a^2 b^4, -(9/2)ab^4, b^4]].
    """
    field = QQ
    a, b = field.from_fraction(a), field.from_fraction(b)
    F3 = _p(3, field, _F3)
    M = [
        [field.one(), field.zero(), field.zero()],
        [field.neg(field.mul(a, a)), field.mul(b, b),
         field.mul(field.from_int(-2), field.mul(a, b))],
        [a, field.zero(), b],
    ]
    # tails y^3, y^2 z, y z^2 in classical normalisation: x^a -> a! x^[a]
    tails = []
    for t in (_Y3, _Y2Z, _YZ2):
        terms = {}
        for e, c in t.items():
            fac = 1
            for k in e:
                fac *= math.factorial(k)
            terms[e] = c * fac
        tails.append(_p(3, field, terms))
    tang3 = [
        v.homogeneous_part(3)
        for v in unip_tangent_space(F3).vectors()
    ]
    tang3 = [v for v in tang3 if not v.is_zero()]
    win = Window.P_graded(3, 3, field)
    cols = [win.encode(v) for v in tails] + [win.encode(v) for v in tang3]
    rows = [[c[r] for c in cols] for r in range(win.dim)]
    images = []
    for v in tails:
        sol = solve(rows, win.encode(apply_linear_map(M, v)), field, len(cols))
        if sol is None:
            raise ReductionFailed("stabilizer image escapes the quotient")
        images.append(sol[:3])
    return [[images[j][i] for j in range(3)] for i in range(3)]


def golden_13331():
    """Reproduce the socle-degree-4, H = (1,3,3,3,1) classification data.

    Returns a report with the three leading forms, their unipotent tangent
    perps in degree <= 3, the eleven normal forms with their tangent space
    dimensions, and the stabilizer matrix at (a, b) = (1, 2).  Raises
    GoldenMismatch when anything differs from the expected table.
    """
    field = QQ
    report = {"leading_forms": {}, "perp_unip": {}, "normal_forms": [],
              "stabilizer_matrix_12": None}
    for name, terms in [("F1", _F1), ("F2", _F2), ("F3", _F3)]:
        F = _p(3, field, terms)
        report["leading_forms"][name] = repr(F)
        basis = perp_tangent(F, unipotent=True, max_degree=3)
        report["perp_unip"][name] = [v._term_str("a") for v in basis.vectors()]
    for name, terms in _NORMAL_FORMS_13331:
        f = _p(3, field, terms)
        report["normal_forms"].append(
            {"name": name, "poly": f._term_str("x"), "dim": tangent_space(f).dim}
        )
    mat = stabilizer_matrix_13331(1, 2)
    report["stabilizer_matrix_12"] = [[str(c) for c in row] for row in mat]

    expected_dims = [29, 28, 28, 27, 27, 26, 27, 26, 26, 25, 24]
    expected_mat = [["64", "0", "0"], ["-192", "32", "0"], ["216", "-72", "16"]]
    expected_perp = {
        "F1": ["a1*a2*a3"],
        "F2": ["a2^[3]", "a2^[2]*a3"],
        "F3": ["a1*a2^[2] - 2*a2*a3^[2]", "a2^[3]", "a2^[2]*a3"],
    }
    diffs = []
    got_dims = [nf["dim"] for nf in report["normal_forms"]]
    if got_dims != expected_dims:
        diffs.append("dims %s != %s" % (got_dims, expected_dims))
    if report["stabilizer_matrix_12"] != expected_mat:
        diffs.append("matrix %s != %s" % (report["stabilizer_matrix_12"], expected_mat))
    for k, v in expected_perp.items():
        if sorted(report["perp_unip"][k]) != sorted(v):
            diffs.append("perp %s: %s != %s" % (k, report["perp_unip"][k], v))
    if diffs:
        raise GoldenMismatch(diffs)
    return report


def golden_1222111(f):
    """Classify f with Hilbert function (1,2,2,2,1,1,1), x^[6] branch.

    Reduction chain: normalise the leading form to x^[6]; clear the
    degree-4 tangent directions x^[4], x^[3]y; read off the x^[2]y^[2]
    coefficient c (c = 0 is impossible for this Hilbert function); clear
    the reducible degree-3 directions, leaving lambda * y^[3]; remove the
    degree <= 2 tail.  Returns a report with lambda and the normal form
    x^[6] + c x^[2]y^[2] + lambda y^[3] (c normalised to 1 when its square
    root is rational).

    The input is assumed in standard form: no x^[1]y^[3] or y^[4] term in
    degree 4 (a nonzero y^[4] coefficient belongs to the x^[6] + y^[4]
    branch, handled by unip_orbit_membership against that target).
    """
    n, field = f.n, f.field
    if n != 2:
        raise HypothesisFailed("expected a binary polynomial")
    H = hilbert_function(f)
    if H != (1, 2, 2, 2, 1, 1, 1):
        raise WrongHilbertFunction("H = %s" % (H.values,))
    char_guard(field, 6)
    T = f.tdf()
    c6 = T.coeff((6, 0))
    if field.is_zero(c6) or T != DPPoly.monomial(n, field, (6, 0), c6):
        raise HypothesisFailed("leading form is not a multiple of x^[6]")
    f = f.scale(field.inv(c6))
    if not field.is_zero(f.coeff((0, 4))):
        raise HypothesisFailed(
            "y^[4] coefficient nonzero: x^[6] + y^[4] branch, "
            "use unip_orbit_membership"
        )
    if not field.is_zero(f.coeff((1, 3))):
        raise HypothesisFailed("x*y^[3] term present: input not in standard form")

    d = 6
    acc = identity_group_element(n, field, d)
    steps = []
    start = f

    def absorb(step_target):
        nonlocal f, acc
        g, f = lower_degree_step(f, step_target)
        acc = compose(acc, g)
        steps.append((g, f))

    # degree-4 cleanup: x^[4], x^[3]y span the degree-4 unipotent tangent
    junk4 = DPPoly(n, field, {e: f.coeff(e) for e in [(4, 0), (3, 1)]})
    if not junk4.is_zero():
        absorb(f - junk4)
    c = f.coeff((2, 2))
    if field.is_zero(c):
        raise WrongHilbertFunction(
            "x^[2]y^[2] coefficient vanished: H would drop to (1,2,2,1,1,1,1)"
        )
    # normalise c to 1 when possible: x -> x, y -> y / sqrt(c)
    normalised = False
    if field.is_rationals:
        num, den = c.numerator, c.denominator
        sn, sd = math.isqrt(abs(num)), math.isqrt(den)
        if num > 0 and sn * sn == num and sd * sd == den and c != field.one():
            s = field.from_fraction("%d/%d" % (sn, sd))  # sqrt(c)
            M = [[field.one(), field.zero()], [field.zero(), field.inv(s)]]
            f = apply_linear_map(M, f, trunc=d)
            # rebuild the accumulated element with the diagonal map appended
            diag = Automorphism([
                Operator.variable(n, field, 1, d),
                Operator.variable(n, field, 2, d).scale(field.inv(s)),
            ])
            acc = compose(acc, GroupElement(diag, Operator.one(n, field, d)))
            steps.append((GroupElement(diag, Operator.one(n, field, d)), f))
            c = f.coeff((2, 2))
            normalised = True

    # degree-3 cleanup: everything except y^[3] is reducible
    lam = f.coeff((0, 3))
    junk3 = DPPoly(
        n, field, {e: f.coeff(e) for e in [(3, 0), (2, 1), (1, 2)]}
    )
    while not junk3.is_zero():
        absorb(f - junk3)
        junk3 = DPPoly(
            n, field, {e: f.coeff(e) for e in [(3, 0), (2, 1), (1, 2)]}
        )
    if f.coeff((0, 3)) != lam:
        raise ReductionFailed("lambda changed during degree-3 cleanup")

    # degree <= 2 tail: Delta-based removal with t = 1
    sd = symmetric_decomposition(start)
    if not f.part_upto(2).is_zero():
        tail_trace = improved_normal_form(f, 1)
        for g, result in tail_trace.steps:
            acc = compose(acc, g)
            steps.append((g, result))
        f = tail_trace.final

    trace = ReductionTrace(start, f, steps, f, acc)
    return {
        "lambda": lam,
        "c": c,
        "c_normalised": normalised,
        "normal_form": f,
        "trace": trace,
        "hilbert": H,
        "deltas": sd,
    }


def golden_char2():
    """The characteristic-2 example: f = x y^[2] + y^[3] over F_2.

    H = (1,2,2,1) and a1^2 -| f = 0, yet a1^2 is orthogonal to the whole
    tangent space, so the tangent space is a proper subspace of P_{<=3} --
    the characteristic-0 dimension count fails.
    """
    field = GF(2)
    f = _p(2, field, {(1, 2): 1, (0, 3): 1})
    H = hilbert_function(f)
    sigma = Operator(2, field, {(2, 0): 1}, 3)
    report = {
        "field": "GF(2)",
        "f": f._term_str("x"),
        "hilbert": H,
        "sigma_kills_f": contract(sigma, f).is_zero(),
        "sigma_in_perp": perp_tangent(f, unipotent=False, max_degree=3).contains(sigma),
        "tangent_dim": tangent_space(f).dim,
        "ambient_dim": Window.P_upto(2, 3, field).dim,
    }
    diffs = []
    if H != (1, 2, 2, 1):
        diffs.append("H = %s != (1, 2, 2, 1)" % (H.values,))
    if not report["sigma_kills_f"]:
        diffs.append("a1^2 -| f != 0")
    if not report["sigma_in_perp"]:
        diffs.append("a1^2 not in the tangent perp")
    if not report["tangent_dim"] < report["ambient_dim"]:
        diffs.append("tangent space is not proper")
    if diffs:
        raise GoldenMismatch(diffs)
    return report
