"""Exact Laurent-polynomial and rational-function arithmetic in one variable A.

A Laurent polynomial is stored as a mapping from integer exponents (powers of
A, possibly negative) to exact rational coefficients.  Zero coefficients are
never stored, so equality of the canonical term maps is equality of values.

A rational function is a reduced fraction num/den of Laurent polynomials.  The
canonical form clears all powers of A out of the denominator (Laurent units),
removes the polynomial gcd over the rationals, and scales the denominator so
its highest-exponent coefficient is 1.  With that normalisation, structural
equality of (num, den) pairs is equality in the field.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class NotPolynomial(ArithmeticError):
    """Raised when a rational function is not a Laurent polynomial."""


def _norm_coeff(c):
    """Keep integral coefficients as plain ints (fast arithmetic, same hash)."""
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class LaurentPoly:
    """Immutable Laurent polynomial over the rationals.

    Coefficients are exact: plain ints where integral, fractions otherwise
    (the two compare and hash alike, so term tuples stay canonical).
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Fraction | int] | Iterable[tuple[int, Fraction | int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction | int] = {}
        for exp, coeff in items:
            coeff = _norm_coeff(coeff)
            if coeff:
                total = acc.get(exp, 0) + coeff
                if total:
                    acc[exp] = total
                else:
                    acc.pop(exp, None)
        self._terms = tuple(sorted((e, _norm_coeff(c)) for e, c in acc.items()))
        self._hash = None

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero() -> LaurentPoly:
        return _ZERO

    @staticmethod
    def one() -> LaurentPoly:
        return _ONE

    @staticmethod
    def const(value: Fraction | int) -> LaurentPoly:
        return LaurentPoly([(0, value)])

    @staticmethod
    def monomial(exp: int, coeff: Fraction | int = 1) -> LaurentPoly:
        return LaurentPoly([(exp, coeff)])

    # -- basic queries ---------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, Fraction], ...]:
        """Term list, ascending by exponent."""
        return self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == ((0, Fraction(1)),)

    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no minimum exponent")
        return self._terms[0][0]

    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no maximum exponent")
        return self._terms[-1][0]

    def coeff(self, exp: int) -> Fraction | int:
        for e, c in self._terms:
            if e == exp:
                return c
        return 0

    def is_integral(self) -> bool:
        """True when every coefficient is an integer."""
        return all(c.denominator == 1 for _, c in self._terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        acc = dict(self._terms)
        for e, c in other._terms:
            s = acc.get(e, 0) + c
            if s:
                acc[e] = s
            else:
                acc.pop(e, None)
        return _wrap(acc)

    def __neg__(self) -> LaurentPoly:
        return _wrap({e: -c for e, c in self._terms})

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly | int | Fraction) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        acc: dict[int, Fraction | int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = e1 + e2
                s = acc.get(e, 0) + c1 * c2
                if s:
                    acc[e] = s
                else:
                    acc.pop(e, None)
        return _wrap(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        result = _ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by A^k."""
        return _wrap({e + k: c for e, c in self._terms})

    def invert_variable(self) -> LaurentPoly:
        """Substitute A -> A^-1 (a ring involution)."""
        return _wrap({-e: c for e, c in self._terms})

    # -- division ---------------------------------------------------

    def divmod_poly(self, other: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        """Division with remainder after clearing powers of A from both sides.

        Returns (q, r) with self = q*other + r*A^s for a unit power A^s; the
        pair is only meant for exact-division and gcd computations.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        a = dict(self.shift(-self.min_exp())._terms) if self._terms else {}
        b = other.shift(-other.min_exp())
        bmax = b.max_exp()
        blead = b.coeff(bmax)
        q: dict[int, Fraction | int] = {}
        while a:
            amax = max(a)
            if amax < bmax:
                break
            f = Fraction(a[amax]) / blead
            q[amax - bmax] = f
            for e, c in b._terms:
                e2 = e + amax - bmax
                s = a.get(e2, 0) - f * c
                if s:
                    a[e2] = s
                else:
                    a.pop(e2, None)
        return _wrap(q), _wrap(a)

    def exact_div(self, other: LaurentPoly) -> LaurentPoly:
        """Exact division self / other; raises NotPolynomial on a remainder."""
        if self.is_zero():
            return _ZERO
        q, r = self.divmod_poly(other)
        if not r.is_zero():
            raise NotPolynomial(f"{other} does not divide {self}")
        shift = self.min_exp() - other.min_exp()
        return q.shift(shift)


def _wrap(acc: Mapping[int, Fraction | int]) -> LaurentPoly:
    p = LaurentPoly.__new__(LaurentPoly)
    p._terms = tuple(sorted((e, _norm_coeff(c)) for e, c in acc.items()))
    p._hash = None
    return p


_ZERO = LaurentPoly()
_ONE = LaurentPoly([(0, Fraction(1))])


def qint(n: int) -> LaurentPoly:
    """The q-integer [n] at q = A^4: 1 + A^4 + ... + A^(4(n-1))."""
    if n < 1:
        raise ValueError("qint is defined for n >= 1")
    return LaurentPoly([(4 * i, 1) for i in range(n)])


def scale_exponents(p: LaurentPoly, k: int) -> LaurentPoly:
    """Substitute the variable by its k-th power: every exponent e becomes k*e."""
    if k == 0:
        raise ValueError("exponent scale factor must be nonzero")
    return _wrap({k * e: c for e, c in p.terms})


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd over Q[A] of the unit-normalised parts of a and b."""
    a = a.shift(-a.min_exp()) if a else _ZERO
    b = b.shift(-b.min_exp()) if b else _ZERO
    while not b.is_zero():
        _, r = a.divmod_poly(b)
        a, b = b, r.shift(-r.min_exp()) if r else _ZERO
    if a.is_zero():
        return _ZERO
    return a * LaurentPoly.const(Fraction(1) / a.coeff(a.max_exp()))


class RationalFn:
    """Element of Q(A) in canonical reduced form.

    Invariants: den != 0; den has minimum exponent 0 and highest-exponent
    coefficient 1; gcd(num, den) over Q[A] is 1 up to powers of A.  The zero
    element is 0/1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = _ONE):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = _ZERO, _ONE
            return
        # Clear the Laurent unit out of the denominator.
        den_shift = den.min_exp()
        num = num.shift(-den_shift)
        den = den.shift(-den_shift)
        g = poly_gcd(num, den)
        if not g.is_one():
            num_shift = num.min_exp()
            num = num.shift(-num_shift).exact_div(g).shift(num_shift)
            den = den.exact_div(g)
        lead = den.coeff(den.max_exp())
        if lead != 1:
            inv = LaurentPoly.const(Fraction(1) / lead)
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den

    @staticmethod
    def from_poly(p: LaurentPoly) -> RationalFn:
        return RationalFn(p, _ONE)

    @staticmethod
    def zero() -> RationalFn:
        return RationalFn(_ZERO)

    @staticmethod
    def one() -> RationalFn:
        return RationalFn(_ONE)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def to_laurent(self) -> LaurentPoly:
        """Convert to a Laurent polynomial; raises NotPolynomial if den > 1."""
        return self.num.exact_div(self.den)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RationalFn)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other: RationalFn) -> RationalFn:
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> RationalFn:
        return RationalFn(-self.num, self.den)

    def __sub__(self, other: RationalFn) -> RationalFn:
        return self + (-other)

    def __mul__(self, other: RationalFn) -> RationalFn:
        return RationalFn(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: RationalFn) -> RationalFn:
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFn(self.num * other.den, self.den * other.num)

    def inverse(self) -> RationalFn:
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return RationalFn(self.den, self.num)

    def invert_variable(self) -> RationalFn:
        """Substitute A -> A^-1."""
        return RationalFn(self.num.invert_variable(), self.den.invert_variable())


def rf_make(num: LaurentPoly, den: LaurentPoly) -> RationalFn:
    """Canonical rational function num/den; rejects a zero denominator."""
    return RationalFn(num, den)


def rf_to_laurent(r: RationalFn) -> LaurentPoly:
    """The Laurent polynomial equal to r; raises NotPolynomial otherwise."""
    return r.to_laurent()


def spaced_coefficients(p: LaurentPoly, step: int = 4) -> list[Fraction | int]:
    """Coefficients read from the minimum exponent upward in the given step.

    Requires the support to lie in a single residue class mod step, which is
    how bracket coefficients present themselves (C(A) = A^k p(A^4)).
    """
    if p.is_zero():
        return []
    exps = [e for e, _ in p.terms]
    lo = exps[0]
    if any((e - lo) % step for e in exps):
        raise ValueError(f"support is not contained in one class mod {step}")
    return [p.coeff(lo + step * i) for i in range((exps[-1] - lo) // step + 1)]


def is_unimodal(seq) -> bool:
    """True when the sequence rises (weakly) and then falls (weakly)."""
    xs = list(seq)
    if not xs:
        return True
    peak = max(range(len(xs)), key=lambda i: xs[i])
    return all(xs[i] <= xs[i + 1] for i in range(peak)) and all(
        xs[i] >= xs[i + 1] for i in range(peak, len(xs) - 1)
    )


# -- text and JSON rendering ---------------------------------------------------


def _term_text(exp: int, coeff: Fraction) -> str:
    if exp == 0:
        return str(coeff)
    var = "A" if exp == 1 else f"A^{exp}"
    if coeff == 1:
        return var
    if coeff == -1:
        return f"-{var}"
    return f"{coeff}*{var}"


def poly_text(p: LaurentPoly) -> str:
    """Canonical text, terms in ascending exponent, e.g. 'A^-8 + 4*A^-4 + 1'."""
    if p.is_zero():
        return "0"
    parts = [_term_text(e, c) for e, c in p.terms]
    out = parts[0]
    for part in parts[1:]:
        out += " - " + part[1:] if part.startswith("-") else " + " + part
    return out


def rf_text(r: RationalFn) -> str:
    if r.is_polynomial():
        return poly_text(r.num)
    return f"({poly_text(r.num)})/({poly_text(r.den)})"


def poly_json(p: LaurentPoly) -> dict:
    return {"terms": [[e, c.numerator, c.denominator] for e, c in p.terms]}


def poly_from_json(data: dict) -> LaurentPoly:
    return LaurentPoly([(e, Fraction(num, den)) for e, num, den in data["terms"]])
