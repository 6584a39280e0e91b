"""Parsing and printing of sparse polynomials and operators.

Syntax: terms joined by ``+``/``-``, each term a ``*``-separated product of
an optional coefficient (integer or fraction ``p/q``) and variable powers.
Divided-power variables are ``x1..xn`` with exponents written ``^[k]`` (or
``^k`` as a synonym); operators use ``a1..an``.  Examples::

    3*x1^[2]*x2 + x3
    a1^2*a2 - 1/2*a3
"""

from fractions import Fraction

from .dp import ClassicalPoly, DPPoly, Operator
from .errors import PolySyntaxError


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def error(self, message):
        raise PolySyntaxError(message, self.pos)

    def integer(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a number")
        return int(self.text[start:self.pos])


def _parse_terms(text, n, field, letter):
    """Parse into an exponent-dict; shared by all element kinds."""
    sc = _Scanner(text)
    terms = {}
    sign = 1
    first = True
    while True:
        ch = sc.peek()
        if ch == "":
            if first:
                sc.error("empty input")
            break
        if not first:
            if sc.take("+"):
                sign = 1
            elif sc.take("-"):
                sign = -1
            else:
                sc.error("expected '+' or '-'")
        else:
            if sc.take("-"):
                sign = -1
            elif sc.take("+"):
                sign = 1
            first = False
        coeff = field.from_int(sign)
        exps = [0] * n
        saw_factor = False
        while True:
            ch = sc.peek()
            if ch.isdigit():
                num = sc.integer()
                if sc.take("/"):
                    den = sc.integer()
                    if den == 0:
                        sc.error("zero denominator")
                    c = field.from_fraction(Fraction(num, den))
                else:
                    c = field.from_int(num)
                coeff = field.mul(coeff, c)
                saw_factor = True
            elif ch == letter:
                sc.pos += 1
                idx = sc.integer()
                if not 1 <= idx <= n:
                    sc.error("variable index %d out of range 1..%d" % (idx, n))
                exp = 1
                if sc.take("^"):
                    if sc.take("["):
                        exp = sc.integer()
                        if not sc.take("]"):
                            sc.error("expected ']'")
                    else:
                        exp = sc.integer()
                exps[idx - 1] += exp
                saw_factor = True
            else:
                sc.error("expected a coefficient or '%s<index>'" % letter)
            if not sc.take("*"):
                break
        if not saw_factor:
            sc.error("empty term")
        e = tuple(exps)
        terms[e] = field.add(terms.get(e, field.zero()), coeff)
    return terms


def parse_poly(text, n, field):
    """Parse a divided power polynomial in variables x1..xn."""
    return DPPoly(n, field, _parse_terms(text, n, field, "x"))


def parse_classical_poly(text, n, field):
    """Parse a classical polynomial (monomial basis) in x1..xn."""
    return ClassicalPoly(n, field, _parse_terms(text, n, field, "x"))


def parse_operator(text, n, field, trunc):
    """Parse an operator in variables a1..an, truncated at ``trunc``."""
    return Operator(n, field, _parse_terms(text, n, field, "a"), trunc)


def poly_str(f):
    """Canonical printed form; parse_poly round-trips it."""
    return f._term_str("x")


def operator_str(sigma):
    return sigma._term_str("a")
