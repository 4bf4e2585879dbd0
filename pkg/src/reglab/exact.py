"""Exact arithmetic: rationals, univariate polynomials, rational functions,
truncated (Laurent) power series and residues of rational 1-forms.

Rationals are :class:`fractions.Fraction`; everything else is built on top.
All values are immutable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

#: degree reported for the zero polynomial
ZERO_DEGREE = -1


class ExactAlgebraError(ArithmeticError):
    pass


class VariableMismatch(ExactAlgebraError):
    pass


class PoleOrderError(ExactAlgebraError):
    """A residue was requested at a pole of order two or more."""


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; accepts a unicode minus sign."""
    return Fraction(text.strip().replace("−", "-"))


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _coerce_coeff(c):
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    if isinstance(c, str):
        return parse_rational(c)
    return c


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class Polynomial:
    """Dense univariate polynomial over a field, lowest degree first.

    Coefficients are usually :class:`Fraction`, but any field element with the
    usual operators works (the Gauss-Manin code uses :class:`RationalFunction`
    coefficients).  Polynomials in different variables never mix.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [_coerce_coeff(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # constructors -------------------------------------------------------
    @classmethod
    def monomial(cls, degree: int, coeff=1, var: str = "x") -> "Polynomial":
        zero = _coerce_coeff(coeff) * 0
        return cls([zero] * degree + [coeff], var)

    @classmethod
    def constant(cls, c, var: str = "x") -> "Polynomial":
        return cls([c], var)

    @classmethod
    def variable(cls, var: str = "x") -> "Polynomial":
        return cls([0, 1], var)

    @classmethod
    def parse(cls, text: str, var: str = "x") -> "Polynomial":
        """Comma-separated rational coefficients, lowest degree first."""
        text = text.strip()
        if not text:
            return cls((), var)
        return cls([parse_rational(p) for p in text.split(",")], var)

    # basic properties ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def leading(self):
        if not self.coeffs:
            raise ExactAlgebraError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self._zero()

    def _zero(self):
        return self.coeffs[0] * 0 if self.coeffs else Fraction(0)

    def _check(self, other: "Polynomial") -> None:
        if other.var != self.var:
            raise VariableMismatch(f"cannot combine polynomials in {self.var!r} and {other.var!r}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial([other], self.var)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self[k] + other[k] for k in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial([c * other for c in self.coeffs], self.var)
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial((), self.var)
        out = [self.coeffs[0] * 0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out, self.var)

    def __rmul__(self, other):
        return Polynomial([other * c for c in self.coeffs], self.var)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial([1], self.var) if not self.coeffs else Polynomial([self.coeffs[0] ** 0], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Polynomial"):
        other = self._lift(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial((), self.var), self
        inv_lead = 1 / other.leading
        quot = [None] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] * inv_lead
            quot[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] = rem[k + i] - c * b
        return Polynomial(quot, self.var), Polynomial(rem[: len(other.coeffs) - 1], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = divmod(self, other)
        if r:
            raise ExactAlgebraError(f"{other} does not divide {self}")
        return q

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.var == other.var and self.coeffs == other.coeffs
        if len(self.coeffs) <= 1:
            return self[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.var, self.coeffs))

    # calculus / evaluation ----------------------------------------------
    def __call__(self, value):
        acc = value * 0 if not self.coeffs else self.coeffs[-1] * 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:], self.var)

    def map_coeffs(self, fn) -> "Polynomial":
        return Polynomial([fn(c) for c in self.coeffs], self.var)

    def compose(self, other: "Polynomial") -> "Polynomial":
        """self(other(var)); the result lives in other's variable."""
        acc = Polynomial((), other.var)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        return self * (1 / self.leading)

    def order_at(self, point) -> float:
        """Multiplicity of ``var = point`` as a root (inf for the zero polynomial)."""
        if not self.coeffs:
            return math.inf
        lin = Polynomial([-point, 1], self.var)
        n, p = 0, self
        while True:
            q, r = divmod(p, lin)
            if r:
                return n
            n, p = n + 1, q

    def to_strings(self) -> list[str]:
        return [format_rational(c) if isinstance(c, Fraction) else str(c) for c in self.coeffs]

    def __repr__(self):
        return f"Polynomial({self.to_strings()}, var={self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = format_rational(c) if isinstance(c, Fraction) else f"({c})"
            if k == 0:
                terms.append(cs)
            elif k == 1:
                terms.append(f"{cs}*{self.var}")
            else:
                terms.append(f"{cs}*{self.var}^{k}")
        return " + ".join(terms)


def extended_euclid(f: Polynomial, g: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Return ``(d, A, B)`` with ``A*f + B*g == d`` and ``d`` the monic gcd."""
    f._check(g)
    if not f and not g:
        raise ExactAlgebraError("gcd of two zero polynomials")
    one = Polynomial([(f.leading if f else g.leading) ** 0], f.var)
    zero = Polynomial((), f.var)
    r0, r1 = f, g
    s0, s1 = one, zero
    t0, t1 = zero, one
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = 1 / r0.leading
    d, A, B = r0 * inv, s0 * inv, t0 * inv
    if A * f + B * g != d:
        raise ExactAlgebraError("Bezout identity failed to verify")
    return d, A, B


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd (no cofactors)."""
    f._check(g)
    if not f and not g:
        raise ExactAlgebraError("gcd of two zero polynomials")
    a, b = f.monic(), g.monic()
    while b:
        a, b = b, (a % b).monic()
    return a.monic()


# ---------------------------------------------------------------------------
# Real roots (Sturm) and square-free parts, for the positivity checks
# ---------------------------------------------------------------------------


def squarefree_factors(p: Polynomial) -> list[Polynomial]:
    """Yun's algorithm: ``p = lc * prod(factors[i] ** (i + 1))``."""
    if p.degree < 1:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    out = []
    while b.degree >= 1:
        a = poly_gcd(b, d)
        out.append(a)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
    return out


def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    seq = [p, p.derivative()]
    while seq[-1]:
        r = -(seq[-2] % seq[-1])
        if not r:
            break
        seq.append(r)
    return seq


def _sign_changes(values: Sequence[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: Polynomial, lo, hi) -> int:
    """Distinct real roots of ``p`` in the half-open interval ``(lo, hi]``."""
    if p.degree < 1:
        return 0
    seq = sturm_sequence(p)
    return _sign_changes([s(Fraction(lo)) for s in seq]) - _sign_changes([s(Fraction(hi)) for s in seq])


def sign_changes_in_open_interval(p: Polynomial, lo, hi) -> int:
    """Number of distinct roots of odd multiplicity in ``(lo, hi)``."""
    lo, hi = Fraction(lo), Fraction(hi)
    odd = Polynomial([1], p.var)
    for mult, factor in enumerate(squarefree_factors(p), start=1):
        if mult % 2:
            odd = odd * factor
    n = count_real_roots(odd, lo, hi)
    if odd(hi) == 0:
        n -= 1
    return n


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


class RationalFunction:
    """Quotient of two polynomials over Q in one variable, kept reduced with a
    monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, var: str = "t", _reduced: bool = False):
        if not isinstance(num, Polynomial):
            num = Polynomial([num], var)
        if den is None:
            den = Polynomial([1], num.var)
        elif not isinstance(den, Polynomial):
            den = Polynomial([den], num.var)
        num._check(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if not num:
                den = Polynomial([1], num.var)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num.exact_div(g), den.exact_div(g)
                lc = den.leading
                if lc != 1:
                    num, den = num * (1 / lc), den * (1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @property
    def var(self) -> str:
        return self.num.var

    @classmethod
    def parse(cls, text: str, var: str = "t") -> "RationalFunction":
        """``"n0,n1,..."`` or ``"n0,n1,...|d0,d1,..."`` (lowest degree first)."""
        if "|" in text:
            n, d = text.split("|", 1)
            return cls(Polynomial.parse(n, var), Polynomial.parse(d, var))
        return cls(Polynomial.parse(text, var))

    def _lift(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            if other.var != self.var:
                raise VariableMismatch(f"{self.var!r} vs {other.var!r}")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return RationalFunction(Polynomial([as_rational(other)], self.var), _reduced=True)

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        if isinstance(other, Polynomial) and other.var != self.var:
            return NotImplemented
        other = self._lift(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        if isinstance(other, Polynomial) and other.var != self.var:
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RationalFunction(Polynomial((), self.var))
            return RationalFunction(self.num * Fraction(other), self.den, _reduced=True)
        if isinstance(other, Polynomial) and other.var != self.var:
            return NotImplemented
        other = self._lift(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num ** n, self.den ** n, _reduced=True)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den.degree == 0 and self.num.degree <= 0 and self.num[0] == other
        if isinstance(other, Polynomial):
            return self.den.degree == 0 and self.num == other
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self) -> "RationalFunction":
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, value):
        d = self.den(value)
        if d == 0:
            raise ZeroDivisionError(f"pole at {self.var} = {value}")
        return self.num(value) / d

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def order_at(self, point) -> float:
        return self.num.order_at(point) - self.den.order_at(point)

    def residue(self, point) -> Fraction:
        return rational_residue(self.num, self.den, point)

    def to_string(self) -> str:
        if self.is_polynomial():
            return f"({self.num})"
        return f"({self.num})/({self.den})"

    __str__ = to_string

    def __repr__(self):
        return f"RationalFunction({self.to_string()})"


def rf(num, den=None, var: str = "t") -> RationalFunction:
    """Shorthand: build a rational function from coefficient lists or scalars."""
    if not isinstance(num, Polynomial):
        num = Polynomial(num if isinstance(num, (list, tuple)) else [num], var)
    if den is not None and not isinstance(den, Polynomial):
        den = Polynomial(den if isinstance(den, (list, tuple)) else [den], var)
    return RationalFunction(num, den)


def rational_residue(omega_numerator: Polynomial, omega_denominator: Polynomial, P) -> Fraction:
    """Residue at ``t = P`` of ``(numerator/denominator) dt``.

    Returns 0 when ``P`` is not a pole.  Raises :class:`PoleOrderError` for a
    pole of order two or more.
    """
    P = as_rational(P)
    if not omega_denominator:
        raise ZeroDivisionError("zero denominator")
    if not omega_numerator:
        return Fraction(0)
    on = omega_numerator.order_at(P)
    od = omega_denominator.order_at(P)
    pole = od - on
    if pole <= 0:
        return Fraction(0)
    if pole >= 2:
        raise PoleOrderError(f"pole of order {pole} at {P}: residue criterion undefined")
    lin = Polynomial([-P, 1], omega_numerator.var)
    n = omega_numerator
    for _ in range(on):
        n = n.exact_div(lin)
    d = omega_denominator
    for _ in range(od):
        d = d.exact_div(lin)
    return Fraction(n(P)) / Fraction(d(P))


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------


class TruncatedSeries:
    """``sum(c_k q^k for k in offset..order-1) + O(q^order)`` with exact
    coefficients.  Negative offsets (Laurent tails) are allowed.

    Coefficients at or beyond ``order`` are unknown, never zero; every
    operation returns the order justified by its operands.
    """

    __slots__ = ("var", "offset", "coeffs", "order")

    def __init__(self, coeffs: Sequence, offset: int = 0, order: int | None = None, var: str = "q"):
        cs = [as_rational(c) for c in coeffs]
        if order is None:
            order = offset + len(cs)
        cs = cs[: max(order - offset, 0)]
        # strip leading zeros so the offset is the true valuation
        k = 0
        while k < len(cs) and cs[k] == 0:
            k += 1
        cs = cs[k:]
        offset += k
        if not cs:
            offset = order
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "offset", offset)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def one(cls, order: int, var: str = "q") -> "TruncatedSeries":
        return cls([1], 0, order, var)

    def __getitem__(self, n: int) -> Fraction:
        if n >= self.order:
            raise IndexError(f"coefficient of {self.var}^{n} is beyond the truncation order {self.order}")
        k = n - self.offset
        if k < 0 or k >= len(self.coeffs):
            return Fraction(0)
        return self.coeffs[k]

    def coefficients(self, start: int, stop: int) -> list[Fraction]:
        return [self[n] for n in range(start, stop)]

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "TruncatedSeries") -> None:
        if other.var != self.var:
            raise VariableMismatch(f"{self.var!r} vs {other.var!r}")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries([other], 0, self.order, self.var)
        self._check(other)
        order = min(self.order, other.order)
        lo = min(self.offset, other.offset)
        return TruncatedSeries([self[n] + other[n] for n in range(lo, order)], lo, order, self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.offset, self.order, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = as_rational(other)
            return TruncatedSeries([c * a for a in self.coeffs], self.offset, self.order, self.var)
        self._check(other)
        order = min(self.order + other.offset, other.order + self.offset)
        lo = self.offset + other.offset
        n = max(order - lo, 0)
        out = [Fraction(0)] * n
        a, b = self.coeffs, other.coeffs
        for i in range(min(len(a), n)):
            ai = a[i]
            if not ai:
                continue
            for j in range(min(len(b), n - i)):
                out[i + j] += ai * b[j]
        return TruncatedSeries(out, lo, order, self.var)

    __rmul__ = __mul__

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by ``var**k``."""
        return TruncatedSeries(self.coeffs, self.offset + k, self.order + k, self.var)

    def inverse(self) -> "TruncatedSeries":
        if not self.coeffs:
            raise ZeroDivisionError("series is zero to its truncation order; not invertible")
        v = self.offset
        n = self.order - v  # relative precision
        a = self.coeffs
        inv_a0 = 1 / a[0]
        out = [inv_a0]
        for k in range(1, n):
            s = sum(a[i] * out[k - i] for i in range(1, min(k, len(a) - 1) + 1))
            out.append(-s * inv_a0)
        return TruncatedSeries(out, -v, n - v, self.var)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return self * (1 / as_rational(other))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return series_fractional_pow(self, as_rational(n))
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return TruncatedSeries([1], 0, self.order - self.offset, self.var)
        result, base = None, self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.var, self.offset, self.coeffs, self.order) == (other.var, other.offset, other.coeffs, other.order)

    def __hash__(self):
        return hash((self.var, self.offset, self.coeffs, self.order))

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, self.offset, min(order, self.order), self.var)

    def __repr__(self):
        terms = ", ".join(format_rational(c) for c in self.coeffs[:6])
        more = ", ..." if len(self.coeffs) > 6 else ""
        return f"TruncatedSeries([{terms}{more}], offset={self.offset}, order={self.order})"


def series_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f + g


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f * g


def series_inv(f: TruncatedSeries) -> TruncatedSeries:
    return f.inverse()


def series_fractional_pow(f: TruncatedSeries, alpha) -> TruncatedSeries:
    """``f**alpha`` for ``f = 1 + O(q)``, any rational ``alpha``.

    Solves ``f g' = alpha f' g`` term by term, which gives
    ``n g_n = sum_{k=1}^n ((alpha + 1) k - n) f_k g_{n-k}``.
    """
    alpha = as_rational(alpha)
    if f.offset != 0 or not f.coeffs or f.coeffs[0] != 1:
        raise ExactAlgebraError("fractional power needs a series with constant term 1")
    n = f.order
    a = f.coeffs
    g = [Fraction(1)]
    for m in range(1, n):
        s = Fraction(0)
        for k in range(1, min(m, len(a) - 1) + 1):
            if a[k]:
                s += ((alpha + 1) * k - m) * a[k] * g[m - k]
        g.append(s / m)
    return TruncatedSeries(g, 0, n, f.var)
