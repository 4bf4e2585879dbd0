"""Elliptic fibrations kappa*y^2 = 4x^3 - g2(t^l) x - g3(t^l) over P^1.

Validation of the hypotheses (E1)-(E4) on (g2, g3), the catalog of admissible
pairs, Kodaira types of the singular fibers and the numerical invariants
(k, h20, b2, rho_f, ...) of the resulting surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import (
    ExactAlgebraError,
    Polynomial,
    as_rational,
    rational_residue,
    sign_changes_in_open_interval,
)
from .gauss_manin import discriminant, reduction_type


class FibrationError(ExactAlgebraError):
    pass


class InvalidFibration(FibrationError):
    def __init__(self, violations: Sequence[str]):
        super().__init__("; ".join(violations))
        self.violations = tuple(violations)


def tpoly(coeffs) -> Polynomial:
    """Polynomial in t from coefficients, lowest degree first."""
    if isinstance(coeffs, Polynomial):
        return coeffs
    if isinstance(coeffs, (int, Fraction, str)):
        coeffs = [coeffs]
    return Polynomial([as_rational(c) for c in coeffs], "t")


T = tpoly([0, 1])
ONE_MINUS_T = tpoly([1, -1])


def wronskian_e(g2: Polynomial, g3: Polynomial) -> Polynomial:
    """E = 2 g2 g3' - 3 g2' g3."""
    return g2 * g3.derivative() * 2 - g2.derivative() * g3 * 3


@dataclass(frozen=True)
class Monomial01:
    """c * t^a * (1 - t)^b, or ``c is None`` if p is not of that shape."""

    c: Fraction | None
    a: int
    b: int


def factor_t_one_minus_t(p: Polynomial) -> Monomial01:
    if not p:
        return Monomial01(None, 0, 0)
    a = b = 0
    while True:
        q, r = divmod(p, T)
        if r:
            break
        p, a = q, a + 1
    while True:
        q, r = divmod(p, ONE_MINUS_T)
        if r:
            break
        p, b = q, b + 1
    if p.degree != 0:
        return Monomial01(None, a, b)
    return Monomial01(p[0], a, b)


@dataclass(frozen=True)
class ValidationReport:
    g2: Polynomial
    g3: Polynomial
    violations: tuple[str, ...]
    a: int
    b: int
    c: Fraction | None
    a_prime: int
    b_prime: int
    c_prime: Fraction | None

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid


def _nonnegative_on_unit_interval(p: Polynomial) -> bool:
    """p >= 0 on [0, 1], decided exactly: nonnegative endpoints and no root of
    odd multiplicity strictly inside."""
    if not p:
        return True
    if p(Fraction(0)) < 0 or p(Fraction(1)) < 0:
        return False
    return sign_changes_in_open_interval(p, 0, 1) == 0


def validate_conditions(g2, g3) -> ValidationReport:
    g2, g3 = tpoly(g2), tpoly(g3)
    bad = []
    delta = discriminant(g2, g3)
    d = factor_t_one_minus_t(delta)
    if d.c is None:
        bad.append("E1: discriminant is not c*t^a*(1-t)^b")
    else:
        if d.c <= 0:
            bad.append(f"E1: c = {d.c} is not positive")
        if d.a < 1 or d.b < 1:
            bad.append(f"E1: need a, b >= 1, got a = {d.a}, b = {d.b}")
    e = factor_t_one_minus_t(wronskian_e(g2, g3))
    if e.c is None:
        bad.append("E2: 2*g2*g3' - 3*g2'*g3 is not c'*t^a'*(1-t)^b' with c' != 0")
    zero, one = Fraction(0), Fraction(1)
    if not (g2(zero) > 0 and g2(one) > 0):
        bad.append(f"E3: need g2(0) > 0 and g2(1) > 0, got {g2(zero)}, {g2(one)}")
    if not g3(zero) * g3(one) < 0:
        bad.append(f"E3: need g3(0)*g3(1) < 0, got {g3(zero) * g3(one)}")
    if not _nonnegative_on_unit_interval(g2):
        bad.append("E4: g2 takes negative values on [0, 1]")
    return ValidationReport(g2, g3, tuple(bad), d.a, d.b, d.c, e.a, e.b, e.c)


@dataclass(frozen=True)
class EllipticFibrationSpec:
    g2: Polynomial
    g3: Polynomial
    l: int
    kappa: Fraction
    a: int
    b: int
    c: Fraction
    a_prime: int
    b_prime: int
    c_prime: Fraction
    name: str = "custom"

    @property
    def delta(self) -> Polynomial:
        return discriminant(self.g2, self.g3)

    def substituted(self) -> tuple[Polynomial, Polynomial]:
        """(g2(t^l), g3(t^l))."""
        tl = Polynomial.monomial(self.l, Fraction(1), "t")
        return self.g2.compose(tl), self.g3.compose(tl)

    def to_json(self) -> dict:
        from .exact import format_rational as fr

        return {
            "name": self.name,
            "g2": [fr(c) for c in self.g2.coeffs],
            "g3": [fr(c) for c in self.g3.coeffs],
            "l": self.l,
            "kappa": fr(self.kappa),
            "a": self.a,
            "b": self.b,
            "c": fr(self.c),
            "a_prime": self.a_prime,
            "b_prime": self.b_prime,
            "c_prime": fr(self.c_prime),
        }


def make_spec(g2, g3, l: int = 1, kappa=-12, name: str = "custom") -> EllipticFibrationSpec:
    if l < 1:
        raise FibrationError(f"l must be positive, got {l}")
    rep = validate_conditions(g2, g3)
    if not rep.valid:
        raise InvalidFibration(rep.violations)
    kappa = as_rational(kappa)
    if kappa == 0:
        raise FibrationError("kappa must be nonzero")
    return EllipticFibrationSpec(rep.g2, rep.g3, l, kappa, rep.a, rep.b, rep.c, rep.a_prime, rep.b_prime, rep.c_prime, name)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    g2: Polynomial
    g3: Polynomial
    a: int
    b: int

    def spec(self, l: int = 1, kappa=-12) -> EllipticFibrationSpec:
        return make_spec(self.g2, self.g3, l, kappa, self.name)


_CATALOG = (
    CatalogEntry("i", tpoly([3]), tpoly([1, -2]), 1, 1),
    CatalogEntry("ii", tpoly([12, -9]), tpoly([8, -9]), 2, 1),
    CatalogEntry("iii", tpoly([27, -24]), tpoly([-27, 36, -8]), 3, 1),
    CatalogEntry("iv", tpoly([16, -16, 1]) * 3, tpoly([-2, 1]) * tpoly([-32, 32, 1]), 4, 1),
    CatalogEntry("v", tpoly([1, -1, 1]) * 12, tpoly([-2, 1]) * tpoly([1, 1]) * tpoly([-1, 2]) * 4, 2, 2),
)

# the family parametrized by the Gamma_1(3) Eisenstein series (equivalent to (iii))
EISENSTEIN_FAMILY = CatalogEntry("eisenstein", tpoly([108, -96]), tpoly([-216, 288, -64]), 3, 1)
EISENSTEIN_KAPPA = Fraction(-12)


def catalog() -> list[CatalogEntry]:
    return list(_CATALOG)


def family_by_name(name: str) -> CatalogEntry:
    for e in _CATALOG + (EISENSTEIN_FAMILY,):
        if e.name == name:
            return e
    raise KeyError(f"unknown family {name!r}; choose from i, ii, iii, iv, v, eisenstein")


# ---------------------------------------------------------------------------
# Kodaira types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KodairaType:
    tag: str
    epsilon: int
    nu: int

    @property
    def kind(self) -> str:
        if self.tag == "smooth":
            return "smooth"
        if self.tag.startswith("I") and not self.tag.endswith("*") and self.tag[1:].isdigit():
            return "multiplicative"
        return "additive"

    def __str__(self):
        return self.tag


def kodaira_from_orders(o2, o3, od) -> KodairaType:
    """Type of a minimal Weierstrass model from (ord g2, ord g3, ord Delta), char 0."""
    if od == math.inf:
        raise FibrationError("discriminant vanishes identically")
    if o2 >= 4 and o3 >= 6:
        raise FibrationError("Weierstrass model is not minimal")
    od = int(od)
    if od == 0:
        return KodairaType("smooth", 0, 1)
    if o2 == 0:
        return KodairaType(f"I{od}", od, od)
    if od == 6 and o2 >= 2 and o3 >= 3:
        return KodairaType("I0*", 6, 5)
    if o2 == 2 and o3 == 3 and od > 6:
        n = od - 6
        return KodairaType(f"I{n}*", od, n + 5)
    table = {2: ("II", 1), 3: ("III", 2), 4: ("IV", 3), 8: ("IV*", 7), 9: ("III*", 8), 10: ("II*", 9)}
    if od in table:
        tag, nu = table[od]
        return KodairaType(tag, od, nu)
    raise FibrationError(f"orders (g2, g3, Delta) = ({o2}, {o3}, {od}) match no Kodaira type")


def kodaira_from_epsilon(eps: int, additive: bool = True) -> KodairaType:
    """Resolve a type from its index alone; additive types only (I_n* needs n)."""
    if not additive:
        return KodairaType(f"I{eps}", eps, eps)
    table = {0: ("smooth", 1), 2: ("II", 1), 3: ("III", 2), 4: ("IV", 3), 8: ("IV*", 7), 9: ("III*", 8), 10: ("II*", 9)}
    if eps in table:
        tag, nu = table[eps]
        return KodairaType(tag, eps, nu)
    if eps >= 6:
        return KodairaType(f"I{eps - 6}*", eps, eps - 1)
    raise FibrationError(f"no additive type with epsilon = {eps}")


def minimal_k(g2, g3, l: int) -> int:
    if l < 1:
        raise FibrationError("l must be >= 1")
    g2, g3 = tpoly(g2), tpoly(g3)
    k = 0
    if g2:
        k = max(k, -(-l * g2.degree // 4))
    if g3:
        k = max(k, -(-l * g3.degree // 6))
    return k


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(math.isqrt(n)) + 1))


@dataclass(frozen=True)
class FibrationInvariants:
    k: int
    h20: int
    b2: int
    rho_f: int
    eps_inf: int
    nu_inf: int
    dim_H2_ind: int | None
    h: int | None
    fibers: tuple[tuple[str, str], ...] = field(default=())

    @property
    def fiber_at_0(self) -> str:
        return self.fibers[0][1]

    @property
    def fiber_at_inf(self) -> str:
        return self.fibers[-1][1]

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "h20": self.h20,
            "b2": self.b2,
            "rho_f": self.rho_f,
            "eps_inf": self.eps_inf,
            "nu_inf": self.nu_inf,
            "dim_H2_ind": self.dim_H2_ind,
            "h": self.h,
            "fiber_at_0": self.fiber_at_0,
            "fiber_at_inf": self.fiber_at_inf,
            "fibers": [{"at": at, "type": ty} for at, ty in self.fibers],
        }


def type_at_infinity(spec: EllipticFibrationSpec) -> KodairaType:
    """Kodaira type at t = inf of the substituted family, from the actual orders
    of s^(4k) g2(s^-l), s^(6k) g3(s^-l) and Delta at s = 0."""
    k = minimal_k(spec.g2, spec.g3, spec.l)
    l = spec.l
    o2 = 4 * k - l * spec.g2.degree if spec.g2 else math.inf
    o3 = 6 * k - l * spec.g3.degree if spec.g3 else math.inf
    od = 12 * k - l * spec.delta.degree
    return kodaira_from_orders(o2, o3, od)


def invariants(spec: EllipticFibrationSpec) -> FibrationInvariants:
    l = spec.l
    k = minimal_k(spec.g2, spec.g3, l)
    h20 = k - 1
    eps_inf = 12 * (h20 + 1) - spec.a * l - spec.b * l
    at_inf = type_at_infinity(spec)
    if at_inf.epsilon != eps_inf:
        raise FibrationError(f"epsilon at infinity: canonical bundle formula gives {eps_inf}, orders give {at_inf.epsilon}")
    if at_inf.kind == "additive" and kodaira_from_epsilon(eps_inf).epsilon != at_inf.epsilon:
        raise FibrationError("Kodaira table disagrees with itself")
    if (spec.a * l + spec.b * l + eps_inf) % 12:
        raise FibrationError("a*l + b*l + eps_inf is not divisible by 12")
    nu_inf = at_inf.nu
    prime_case = is_prime(l) and h20 > 0
    if prime_case and eps_inf - nu_inf != 1:
        raise FibrationError(f"fiber at infinity should be additive, got {at_inf.tag}")
    b2 = spec.a * l + spec.b * l + eps_inf - 2
    rho_f = spec.a * l + (spec.b - 1) * l + nu_inf
    fibers = [("0", f"I{spec.a * l}")]
    if l == 1:
        fibers.append(("1", f"I{spec.b}"))
    else:
        fibers.append((f"zeta_{l}^i (0 <= i < {l})", f"I{spec.b}"))
    fibers.append(("inf", at_inf.tag))
    return FibrationInvariants(
        k=k,
        h20=h20,
        b2=b2,
        rho_f=rho_f,
        eps_inf=eps_inf,
        nu_inf=nu_inf,
        dim_H2_ind=l - 1 if prime_case else None,
        h=l - 1 - h20 if prime_case else None,
        fibers=tuple(fibers),
    )


# ---------------------------------------------------------------------------
# local criteria
# ---------------------------------------------------------------------------


def nabla_bar_criterion(g2, g3, P) -> bool:
    g2, g3 = tpoly(g2), tpoly(g3)
    P = as_rational(P)
    rt = reduction_type(g2, g3, P)
    if rt.kind == "multiplicative":
        return True
    if rt.kind == "smooth":
        return False
    num = Polynomial([-P, 1], "t") * wronskian_e(g2, g3)
    if not num:
        return False
    return rational_residue(num, discriminant(g2, g3), P) != 0


def is_rational_square(q) -> bool:
    q = as_rational(q)
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def split_multiplicative_check(kappa, g3) -> bool:
    g3 = tpoly(g3)
    v = g3(Fraction(1))
    if v == 0:
        raise FibrationError("g3(1) = 0")
    val = -6 * as_rational(kappa) * v
    return val != 0 and is_rational_square(val)
