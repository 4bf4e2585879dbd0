"""Numerical periods I(j), J(j) of the Eisenstein-parametrized family.

Two routes:

* ``series``: fast-converging expansions in c = exp(-2 pi / sqrt 3) whose
  coefficients a_n(j), b_n(j) come from :mod:`reglab.eisenstein`;
* ``quadrature``: the double integral over the vanishing cycles, with the
  inner integral done as a complete elliptic integral (AGM) and the outer
  one by tanh-sinh on (0, 1).  Works for any valid fibration spec.

They are related by |int_Delta t^(j-1) dt dx/y| = (54 pi / l) I(j) and
|int_Gamma t^(j-1) dt dx/y| = (27 / l) J(j).  Only magnitudes are compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mpf

from .eisenstein import DEFAULT_TERMS, a_series, b_series, e3a_coefficient, e3b_coefficient
from .fibration import EISENSTEIN_FAMILY, EISENSTEIN_KAPPA, EllipticFibrationSpec

DEFAULT_PREC = 60
GUARD = 10
MAX_LEVEL = 12


class PeriodError(ArithmeticError):
    pass


class AGMError(PeriodError):
    pass


def to_mpf(q: Fraction) -> mpf:
    return mpf(q.numerator) / q.denominator


def decimal_string(v, digits: int) -> str:
    """Deterministic fixed-point rendering with ``digits`` significant digits."""
    return mpmath.nstr(v, digits, min_fixed=-math.inf, max_fixed=math.inf)


@dataclass(frozen=True)
class BigReal:
    """A real number together with the decimal precision it was computed at."""

    value: mpf
    prec: int
    error: mpf | None = None
    flagged: bool = False

    def __float__(self):
        return float(self.value)

    def __str__(self):
        return decimal_string(self.value, self.prec)

    def to_json(self) -> dict:
        out = {"value": str(self), "prec": self.prec}
        if self.error is not None:
            out["err_estimate"] = mpmath.nstr(self.error, 5)
        if self.flagged:
            out["flagged"] = True
        return out


def _check_j(j: int, l: int) -> None:
    if l < 2:
        raise ValueError(f"l must be >= 2, got {l}")
    if not 1 <= j <= l - 1:
        raise ValueError(f"j must satisfy 1 <= j <= l-1, got j={j}, l={l}")


def _round(v, prec: int) -> mpf:
    with mpmath.workdps(prec):
        return +v


# ---------------------------------------------------------------------------
# series route
# ---------------------------------------------------------------------------


def _series_terms(j: int, l: int, n_terms: int, kind: str) -> list[mpf]:
    """Per-index terms t_n = a-part(n) + b-part(n), n = 0..n_terms (a-part of 0 is 0)."""
    a = a_series(j, l, n_terms)          # a_1 .. a_N
    b = b_series(j, l, n_terms)          # b_0 .. b_N
    pi, s3 = mpmath.pi, mpmath.sqrt(3)
    c = mpmath.exp(-2 * pi / s3)
    x = mpf(j) / l
    out = []
    if kind == "I":
        pre_b = mpf(3) ** (3 * x - 3)
        for n in range(n_terms + 1):
            term = to_mpf(a[n - 1]) / n * c ** n if n else mpf(0)
            nx = n + x
            term += pre_b * to_mpf(b[n]) * (1 / nx + s3 / (2 * pi * nx ** 2)) * c ** nx
            out.append(term)
    else:
        pre_b = 2 * pi * mpf(3) ** (3 * x - mpf(7) / 2)
        for n in range(n_terms + 1):
            term = to_mpf(a[n - 1]) * (2 * pi / (s3 * n) + mpf(1) / n ** 2) * c ** n if n else mpf(0)
            nx = n + x
            term += pre_b * to_mpf(b[n]) / nx * c ** nx
            out.append(term)
    return out


def flag_threshold(prec: int) -> mpf:
    return mpf(10) ** (1 - mpf(prec) / 2)


def _eval_series(kind: str, j: int, l: int, N: int, prec: int) -> BigReal:
    _check_j(j, l)
    if N < 8:
        raise ValueError(f"N must be >= 8, got {N}")
    with mpmath.workdps(prec + GUARD):
        terms = _series_terms(j, l, N + 1, kind)
        value = mpmath.fsum(terms[: N + 1])
        err = abs(terms[N + 1])
        flagged = bool(err > flag_threshold(prec))
    return BigReal(_round(value, prec), prec, err, flagged)


def eval_I(j: int, l: int, N: int = DEFAULT_TERMS, prec: int = DEFAULT_PREC) -> BigReal:
    """Series value of I(j) with the first omitted term as error estimate."""
    return _eval_series("I", j, l, N, prec)


def eval_J(j: int, l: int, N: int = DEFAULT_TERMS, prec: int = DEFAULT_PREC) -> BigReal:
    return _eval_series("J", j, l, N, prec)


# ---------------------------------------------------------------------------
# quadrature route
# ---------------------------------------------------------------------------


def agm(a, b, dps: int | None = None) -> mpf:
    """Arithmetic-geometric mean of two nonnegative reals."""
    a, b = mpf(a), mpf(b)
    if a < 0 or b < 0:
        raise AGMError("AGM needs nonnegative arguments")
    if a == 0 or b == 0:
        return mpf(0)
    tol = mpf(10) ** (-(dps or mpmath.mp.dps))
    for _ in range(200):
        if abs(a - b) <= tol * a:
            return (a + b) / 2
        a, b = (a + b) / 2, mpmath.sqrt(a * b)
    raise AGMError(f"AGM did not converge for ({a}, {b})")


def ellipk_from_complement(m1) -> mpf:
    """K(m) given the complementary parameter m1 = 1 - m, via the AGM."""
    return mpmath.pi / (2 * agm(1, mpmath.sqrt(m1)))


@dataclass(frozen=True)
class FiberGeometry:
    """Real roots r1 < r2 < r3 of 4x^3 - g2 x - g3 and their gaps."""

    roots: tuple[mpf, mpf, mpf]
    gap_low: mpf   # r2 - r1
    gap_high: mpf  # r3 - r2

    @property
    def span(self) -> mpf:
        return self.gap_low + self.gap_high


def _cubic_data(spec: EllipticFibrationSpec, t, omt) -> FiberGeometry:
    l = spec.l
    s = t ** l
    # 1 - t^l without cancellation near t = 1
    oms = omt * mpmath.fsum(t ** i for i in range(l))
    g2 = mpmath.polyval([to_mpf(c) for c in reversed(spec.g2.coeffs)], s)
    g3 = mpmath.polyval([to_mpf(c) for c in reversed(spec.g3.coeffs)], s)
    delta = to_mpf(spec.c) * s ** spec.a * oms ** spec.b
    if not (delta > 0 and g2 > 0):
        raise PeriodError(f"cubic does not have three distinct real roots at t = {t}")
    rho = mpmath.sqrt(g2 / 12)
    sd = mpmath.sqrt(delta)
    s27 = 3 * mpmath.sqrt(3)
    theta = mpmath.atan2(sd, s27 * g3)
    theta_c = mpmath.atan2(sd, -s27 * g3)  # pi - theta, kept accurate near theta = pi
    k = 2 * mpmath.sqrt(3) * rho
    gap_low = k * mpmath.sin(theta / 3)
    gap_high = k * mpmath.sin(theta_c / 3)
    r3 = 2 * rho * mpmath.cos(theta / 3)
    r2 = r3 - gap_high
    r1 = r2 - gap_low
    return FiberGeometry((r1, r2, r3), gap_low, gap_high)


def cubic_real_roots(t, spec: EllipticFibrationSpec | None = None, prec: int = DEFAULT_PREC) -> tuple[mpf, mpf, mpf]:
    """Sorted real roots of 4x^3 - g2(t^l) x - g3(t^l) for 0 < t < 1."""
    spec = spec or EISENSTEIN_FAMILY.spec(5, EISENSTEIN_KAPPA)
    with mpmath.workdps(prec + GUARD):
        t = mpf(t)
        if not 0 < t < 1:
            raise ValueError("t must lie in (0, 1)")
        geo = _cubic_data(spec, t, 1 - t)
    return tuple(_round(r, prec) for r in geo.roots)


def _pair_choice(spec: EllipticFibrationSpec) -> dict[str, str]:
    """Which adjacent root pair each cycle lives on.

    Delta vanishes as t -> 1, Gamma as t -> 0; the pair that collides there
    is read off from the sign of g3 at that end (g3 > 0 pinches r1, r2).
    """
    g3_at_1 = spec.g3(Fraction(1))
    g3_at_0 = spec.g3(Fraction(0))
    return {
        "delta": "low" if g3_at_1 > 0 else "high",
        "gamma": "low" if g3_at_0 > 0 else "high",
    }


@dataclass(frozen=True)
class QuadratureResult:
    delta: tuple[mpf, ...]   # |int_Delta t^(j-1) dt dx/y|, j = 1..l-1
    gamma: tuple[mpf, ...]   # |int_Gamma t^(j-1) dt dx/y|
    error: mpf
    nodes: int
    level: int
    converged: bool
    pairs: dict = field(default_factory=dict)


def tanh_sinh(fn, dim: int, dps: int, tol, max_level: int = MAX_LEVEL):
    """Integrate a vector-valued fn(t, 1 - t) over (0, 1).

    Substitution t = 1 / (1 + exp(-2x)), x = (pi/2) sinh(u); the step is halved
    until two successive levels agree to ``tol`` (relative to the largest
    component).  Returns (values, error estimate, nodes, level, converged).
    """
    with mpmath.workdps(dps):
        half_pi = mpmath.pi / 2
        u_max = mpmath.asinh((dps + 5) * mpmath.log(10) / mpmath.pi) + mpf("0.5")
        total = [mpf(0)] * dim
        nodes = 0

        def add(u):
            nonlocal nodes
            x = half_pi * mpmath.sinh(u)
            ex = mpmath.exp(-2 * abs(x))
            small = ex / (1 + ex)           # the endpoint-side coordinate
            big = 1 / (1 + ex)
            w = half_pi / 2 * mpmath.cosh(u) * 4 * ex / (1 + ex) ** 2
            t, omt = (big, small) if x >= 0 else (small, big)
            vals = fn(t, omt)
            for i in range(dim):
                total[i] += w * vals[i]
            nodes += 1

        h = mpf(1)
        k_max = int(mpmath.floor(u_max / h))
        add(mpf(0))
        for k in range(1, k_max + 1):
            add(k * h)
            add(-k * h)
        prev = [h * v for v in total]
        err = mpf("inf")
        for level in range(1, max_level + 1):
            h /= 2
            k_max = int(mpmath.floor(u_max / h))
            for k in range(1, k_max + 1, 2):
                add(k * h)
                add(-k * h)
            cur = [h * v for v in total]
            scale = max(abs(v) for v in cur) or mpf(1)
            err = max(abs(a - b) for a, b in zip(cur, prev))
            if level >= 3 and err <= tol * scale:
                return cur, err, nodes, level, True
            prev = cur
        return prev, err, nodes, max_level, False


@lru_cache(maxsize=32)
def quadrature_periods(spec: EllipticFibrationSpec, prec: int = DEFAULT_PREC, tol_exp: int | None = None) -> QuadratureResult:
    """All |int_Delta t^(j-1)| and |int_Gamma t^(j-1)| for the family, 1 <= j <= l-1."""
    l = spec.l
    if l < 2:
        raise ValueError("l must be >= 2")
    tol_exp = prec // 2 if tol_exp is None else tol_exp
    pairs = _pair_choice(spec)
    dps = prec + GUARD
    with mpmath.workdps(dps):
        root_kappa = mpmath.sqrt(abs(to_mpf(spec.kappa)))

        def integrand(t, omt):
            geo = _cubic_data(spec, t, omt)
            span = geo.span
            # inner integral over a root pair: sqrt|kappa| K(m) / sqrt(span)
            k_low = ellipk_from_complement(geo.gap_high / span)
            k_high = ellipk_from_complement(geo.gap_low / span)
            scale = 2 * root_kappa / mpmath.sqrt(span)
            inner = {"low": scale * k_low, "high": scale * k_high}
            d, g = inner[pairs["delta"]], inner[pairs["gamma"]]
            out = []
            tp = mpf(1)
            for _ in range(l - 1):
                out.append(tp * d)
                out.append(tp * g)
                tp *= t
            return out

        vals, err, nodes, level, ok = tanh_sinh(integrand, 2 * (l - 1), dps, mpf(10) ** (-tol_exp))
    return QuadratureResult(
        delta=tuple(vals[0::2]),
        gamma=tuple(vals[1::2]),
        error=err,
        nodes=nodes,
        level=level,
        converged=ok,
        pairs={"delta": "r1-r2" if pairs["delta"] == "low" else "r2-r3", "gamma": "r1-r2" if pairs["gamma"] == "low" else "r2-r3"},
    )


def _default_spec(l: int) -> EllipticFibrationSpec:
    return EISENSTEIN_FAMILY.spec(l, EISENSTEIN_KAPPA)


def quad_I(j: int, l: int, prec: int = DEFAULT_PREC, spec: EllipticFibrationSpec | None = None) -> BigReal:
    """|int_Delta t^(j-1) dt dx/y| by quadrature."""
    _check_j(j, l)
    spec = spec or _default_spec(l)
    if spec.l != l:
        raise ValueError("spec.l differs from l")
    r = quadrature_periods(spec, prec)
    return BigReal(_round(r.delta[j - 1], prec), prec, r.error, not r.converged)


def quad_J(j: int, l: int, prec: int = DEFAULT_PREC, spec: EllipticFibrationSpec | None = None) -> BigReal:
    """|int_Gamma t^(j-1) dt dx/y| by quadrature."""
    _check_j(j, l)
    spec = spec or _default_spec(l)
    if spec.l != l:
        raise ValueError("spec.l differs from l")
    r = quadrature_periods(spec, prec)
    return BigReal(_round(r.gamma[j - 1], prec), prec, r.error, not r.converged)


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PeriodTable:
    l: int
    I: dict
    J: dict
    method: str
    prec: int
    err_estimate: mpf
    terms: int | None = None
    nodes: int | None = None
    flagged: bool = False
    pairs: dict | None = None

    def to_json(self) -> dict:
        out = {
            "l": self.l,
            "method": self.method,
            "prec": self.prec,
            "I": {str(j): decimal_string(v, self.prec) for j, v in sorted(self.I.items())},
            "J": {str(j): decimal_string(v, self.prec) for j, v in sorted(self.J.items())},
            "err_estimate": mpmath.nstr(self.err_estimate, 5),
            "flagged": self.flagged,
        }
        if self.terms is not None:
            out["terms"] = self.terms
        if self.nodes is not None:
            out["nodes"] = self.nodes
        if self.pairs:
            out["root_pairs"] = dict(self.pairs)
        return out

    def scaled(self, lam) -> "PeriodTable":
        with mpmath.workdps(self.prec + GUARD):
            lam = mpf(lam.numerator) / lam.denominator if isinstance(lam, Fraction) else mpf(lam)
            I = {j: v * lam for j, v in self.I.items()}
            J = {j: v * lam for j, v in self.J.items()}
        return PeriodTable(
            self.l,
            I,
            J,
            self.method,
            self.prec,
            self.err_estimate * abs(lam),
            self.terms,
            self.nodes,
            self.flagged,
            self.pairs,
        )


def period_table(l: int, method: str = "series", prec: int = DEFAULT_PREC, terms: int = DEFAULT_TERMS,
                 spec: EllipticFibrationSpec | None = None, tol_exp: int | None = None) -> PeriodTable:
    if l < 2:
        raise ValueError(f"l must be >= 2, got {l}")
    if method == "series":
        if spec is not None and spec.name != "eisenstein":
            raise ValueError("the series method only covers the Eisenstein-parametrized family")
        Is = {j: eval_I(j, l, terms, prec) for j in range(1, l)}
        Js = {j: eval_J(j, l, terms, prec) for j in range(1, l)}
        err = max(v.error for v in list(Is.values()) + list(Js.values()))
        flagged = any(v.flagged for v in list(Is.values()) + list(Js.values()))
        return PeriodTable(l, {j: v.value for j, v in Is.items()}, {j: v.value for j, v in Js.items()},
                           "series", prec, err, terms=terms, flagged=flagged)
    if method == "quadrature":
        spec = spec or _default_spec(l)
        r = quadrature_periods(spec, prec, tol_exp)
        with mpmath.workdps(prec + GUARD):
            fI = l / (54 * mpmath.pi)
            fJ = mpf(l) / 27
            Is = {j: _round(r.delta[j - 1] * fI, prec) for j in range(1, l)}
            Js = {j: _round(r.gamma[j - 1] * fJ, prec) for j in range(1, l)}
            err = r.error * max(fI, fJ)
        return PeriodTable(l, Is, Js, "quadrature", prec, err, nodes=r.nodes, flagged=not r.converged, pairs=r.pairs)
    raise ValueError(f"unknown method {method!r}")


def max_relative_deviation(a: PeriodTable, b: PeriodTable) -> mpf:
    if a.l != b.l:
        raise ValueError("tables for different l")
    with mpmath.workdps(max(a.prec, b.prec)):
        devs = [abs(a.I[j] - b.I[j]) / abs(b.I[j]) for j in a.I] + [abs(a.J[j] - b.J[j]) / abs(b.J[j]) for j in a.J]
        return max(devs)


# ---------------------------------------------------------------------------
# modular identities
# ---------------------------------------------------------------------------


def _q_series(coef, q, dps: int) -> mpf:
    # |coef(n)| <= 9 sigma_2(n) < 15 n^2
    eps = mpf(10) ** (-dps)
    acc = mpf(0)
    qn = mpf(1)
    n = 0
    while True:
        c = coef(n)
        if c:
            acc += c * qn
        n += 1
        qn *= q
        if n > 4 and 15 * n * n * qn < eps * max(abs(acc), mpf(1) / 10 ** 5):
            return acc


def modular_identity_deviations(y, prec: int = DEFAULT_PREC) -> tuple[mpf, mpf]:
    """Relative deviations at z = iy of

        27 E3b(-1/(3z)) = 3 sqrt(3) i z^3 E3a(z)
        s(-1/(3z)) = 1 - s(z),   s = E3a / (E3a + 27 E3b)
    """
    with mpmath.workdps(prec + GUARD):
        y = mpf(y)
        q = mpmath.exp(-2 * mpmath.pi * y)
        qp = mpmath.exp(-2 * mpmath.pi / (3 * y))
        dps = prec + GUARD
        a, b = _q_series(e3a_coefficient, q, dps), _q_series(e3b_coefficient, q, dps)
        ap, bp = _q_series(e3a_coefficient, qp, dps), _q_series(e3b_coefficient, qp, dps)
        lhs1, rhs1 = 27 * bp, 3 * mpmath.sqrt(3) * y ** 3 * a
        dev1 = abs(lhs1 - rhs1) / abs(rhs1)
        lhs2 = ap / (ap + 27 * bp)
        rhs2 = 27 * b / (a + 27 * b)
        dev2 = abs(lhs2 - rhs2) / abs(rhs2)
    return dev1, dev2


def verify_modular_identity(y_samples, prec: int = DEFAULT_PREC) -> mpf:
    """Worst relative deviation over the samples z = iy, 0.5 <= y <= 2."""
    worst = mpf(0)
    for y in y_samples:
        if not mpf("0.5") <= mpf(y) <= 2:
            raise ValueError(f"sample y = {y} outside [0.5, 2]")
        worst = max(worst, *modular_identity_deviations(y, prec))
    return worst
