"""Gauss-Manin connection of hyperelliptic families y^2 = f(x) over Q(t),
computed from Cech cocycles.

Conventions
-----------
Charts: U0 = {(x, y)}, Uinf = {(z, u)} with z = 1/x, u = y / x^(g+1) and
u^2 = g(z) = z^(2g+2) f(1/z).

Everything is carried in x-coordinates on U0 n Uinf, i.e. in the ring
K[x, 1/x, y]/(y^2 - f) with K = Q(t), basis x^a y^e (e in {0, 1}).  A relative
1-form is stored as the coefficient H of dx/y; on Uinf this is
H dx/y = -x^(1-g) H dz/u.

Absolute 1-forms on the overlap are written in the frame {w0, dt} where
w0 = A y dx + 2 B dy is the lift of dx/y built from A f + B f_x = 1, using

    dx = y w0 - B f_t dt,        dy = (f_x / 2) w0 + (A y f_t / 2) dt.

A degree-one cocycle (alpha) x (H0, Hinf) satisfies d(alpha) = H0 - Hinf.
The connection is nabla = iota o delta with
delta: (alpha) x (z0, zinf) -> (-d alpha + z0^ - zinf^) x (d z0^, d zinf^)
and iota: (g dt) x (dt ^ w0, dt ^ winf) -> dt (x) [(-g) x (w0, winf)].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .exact import (
    ExactAlgebraError,
    PoleOrderError,
    Polynomial,
    RationalFunction,
    as_rational,
    extended_euclid,
    rational_residue,
)


class GaussManinError(ExactAlgebraError):
    pass


class CocycleError(GaussManinError):
    """A Cech cochain failed regularity or the cocycle condition."""


class ReductionError(GaussManinError):
    """A class did not reduce into the span of the basis (bug or bad family)."""


class NonMinimalError(GaussManinError):
    pass


class CanonicalExtensionError(GaussManinError):
    pass


T = Polynomial([0, 1], "t")


def K(c) -> RationalFunction:
    """Coerce a scalar / t-polynomial into the coefficient field Q(t)."""
    if isinstance(c, RationalFunction):
        return c
    if isinstance(c, Polynomial):
        if c.var != "t":
            raise GaussManinError(f"coefficients must be functions of t, got variable {c.var!r}")
        return RationalFunction(c)
    return RationalFunction(Polynomial([as_rational(c)], "t"))


_ZERO = K(0)


# ---------------------------------------------------------------------------
# the coordinate ring of the overlap
# ---------------------------------------------------------------------------


class LaurentXY:
    """sum c[a, e] x^a y^e in K[x, 1/x, y]/(y^2 - f)."""

    __slots__ = ("terms", "fam")

    def __init__(self, terms: dict, fam: "HyperellipticFamily"):
        self.terms = {k: v for k, v in terms.items() if v}
        self.fam = fam

    @classmethod
    def from_x_poly(cls, p: Polynomial, fam, shift: int = 0, e: int = 0) -> "LaurentXY":
        return cls({(k + shift, e): K(c) for k, c in enumerate(p.coeffs)}, fam)

    @classmethod
    def monomial(cls, a: int, e: int, fam, c=1) -> "LaurentXY":
        return cls({(a, e): K(c)}, fam)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, LaurentXY):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __add__(self, other: "LaurentXY") -> "LaurentXY":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return LaurentXY(out, self.fam)

    def __neg__(self):
        return LaurentXY({k: -v for k, v in self.terms.items()}, self.fam)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LaurentXY":
        c = K(c)
        return LaurentXY({k: v * c for k, v in self.terms.items()}, self.fam)

    def __mul__(self, other):
        if not isinstance(other, LaurentXY):
            return self.scale(other)
        out: dict = {}
        fcoef = self.fam.f.coeffs
        for (a1, e1), c1 in self.terms.items():
            for (a2, e2), c2 in other.terms.items():
                c = c1 * c2
                if e1 + e2 < 2:
                    key = (a1 + a2, e1 + e2)
                    out[key] = out[key] + c if key in out else c
                else:  # y^2 = f(x)
                    for m, am in enumerate(fcoef):
                        if am:
                            key = (a1 + a2 + m, 0)
                            out[key] = out[key] + c * am if key in out else c * am
        return LaurentXY(out, self.fam)

    __rmul__ = __mul__

    def d_dx(self) -> "LaurentXY":
        return LaurentXY({(a - 1, e): v * a for (a, e), v in self.terms.items() if a}, self.fam)

    def d_dy(self) -> "LaurentXY":
        return LaurentXY({(a, 0): v for (a, e), v in self.terms.items() if e == 1}, self.fam)

    def d_dt(self) -> "LaurentXY":
        return LaurentXY({k: v.derivative() for k, v in self.terms.items()}, self.fam)

    def is_regular_on_chart0(self) -> bool:
        return all(a >= 0 for a, _ in self.terms)

    def is_regular_on_chart_inf(self) -> bool:
        g = self.fam.genus
        return all(a + (g + 1) * e <= 0 for a, e in self.terms)

    def y_part(self) -> dict:
        return {a: v for (a, e), v in self.terms.items() if e == 1}

    def __repr__(self):
        parts = [f"{v}*x^{a}" + ("*y" if e else "") for (a, e), v in sorted(self.terms.items())]
        return "LaurentXY(" + (" + ".join(parts) or "0") + ")"


def _poly_to_xy(p: Polynomial, fam, inverse: bool = False) -> LaurentXY:
    """Polynomial in x (or, with ``inverse``, in z = 1/x) as a ring element."""
    if inverse:
        return LaurentXY({(-k, 0): K(c) for k, c in enumerate(p.coeffs) if c}, fam)
    return LaurentXY({(k, 0): K(c) for k, c in enumerate(p.coeffs) if c}, fam)


# ---------------------------------------------------------------------------
# families and liftings
# ---------------------------------------------------------------------------


class HyperellipticFamily:
    """y^2 = f(x), f of degree 2g+1 or 2g+2 with coefficients in Q(t)."""

    def __init__(self, f: Polynomial | Sequence, genus: int | None = None):
        if not isinstance(f, Polynomial):
            f = Polynomial([K(c) for c in f], "x")
        if f.var != "x":
            raise GaussManinError("f must be a polynomial in x")
        f = Polynomial([K(c) for c in f.coeffs], "x")
        n = f.degree
        if n < 3:
            raise GaussManinError(f"deg f = {n}; need at least 3")
        g = (n - 1) // 2 if genus is None else genus
        if n not in (2 * g + 1, 2 * g + 2) or g < 1:
            raise GaussManinError(f"deg f = {n} is incompatible with genus {g}")
        self.f = f
        self.genus = g
        self.fx = f.derivative()
        self.ft = f.map_coeffs(lambda c: c.derivative())
        d, _, _ = extended_euclid(f, self.fx)
        if d.degree != 0:
            raise GaussManinError("f has a multiple root identically in t; the family is not smooth")
        # g(z) = z^(2g+2) f(1/z)
        top = 2 * g + 2
        self.gz = Polynomial([f[top - k] for k in range(top + 1)], "z")
        self._default_lifting = None

    @classmethod
    def weierstrass(cls, g2, g3) -> "HyperellipticFamily":
        """y^2 = 4x^3 - g2 x - g3."""
        return cls([-K(g3), -K(g2), K(0), K(4)], genus=1)

    @property
    def coefficients(self) -> list[RationalFunction]:
        return list(self.f.coeffs)

    def y(self) -> LaurentXY:
        return LaurentXY.monomial(0, 1, self)

    def x_power(self, a: int) -> LaurentXY:
        return LaurentXY.monomial(a, 0, self)

    def lifting(self, bezout_x=None, bezout_z=None) -> "Lifting":
        if bezout_x is None and bezout_z is None:
            if self._default_lifting is None:
                self._default_lifting = Lifting(self)
            return self._default_lifting
        return Lifting(self, bezout_x, bezout_z)

    def relative_d(self, phi: LaurentXY) -> LaurentXY:
        """d(phi) for fixed t, as a coefficient of dx/y."""
        return phi.d_dx() * self.y() + phi.d_dy() * _poly_to_xy(self.fx, self).scale(Fraction(1, 2))


class Lifting:
    """Bezout data for lifting relative forms to absolute ones (both charts)."""

    def __init__(self, fam: HyperellipticFamily, bezout_x=None, bezout_z=None):
        self.fam = fam
        if bezout_x is None:
            _, A, B = extended_euclid(fam.f, fam.fx)
        else:
            A, B = bezout_x
        if A * fam.f + B * fam.fx != Polynomial([K(1)], "x"):
            raise GaussManinError("A f + B f_x != 1")
        if bezout_z is None:
            _, C, D = extended_euclid(fam.gz, fam.gz.derivative())
        else:
            C, D = bezout_z
        if C * fam.gz + D * fam.gz.derivative() != Polynomial([K(1)], "z"):
            raise GaussManinError("C g + D g_z != 1")
        self.A, self.B, self.C, self.D = A, B, C, D
        R = lambda p: _poly_to_xy(p, fam)
        y = fam.y()
        self._A, self._B = R(A), R(B)
        self._fx, self._ft, self._f = R(fam.fx), R(fam.ft), R(fam.f)
        half = Fraction(1, 2)
        # d w0 = kappa0 dt ^ w0
        At = R(A.map_coeffs(lambda c: c.derivative()))
        Bt = R(B.map_coeffs(lambda c: c.derivative()))
        Bx = R(B.derivative())
        self.kappa0 = (self._A - Bx.scale(2)) * self._ft.scale(half) + At * self._f + Bt * self._fx
        # w_inf = C u dz + 2 D du written in dx, dy
        g = fam.genus
        Cx, Dx = _poly_to_xy(C, fam, inverse=True), _poly_to_xy(D, fam, inverse=True)
        P = -(Cx * y * fam.x_power(-(g + 3))) - (Dx * y * fam.x_power(-(g + 2))).scale(2 * (g + 1))
        Q = (Dx * fam.x_power(-(g + 1))).scale(2)
        self.winf = self.to_frame(P, Q, LaurentXY({}, fam))
        if self.winf[0] != -fam.x_power(g - 1):
            raise GaussManinError("lift of dz/u does not restrict to dz/u")

    def to_frame(self, P: LaurentXY, Q: LaurentXY, R: LaurentXY) -> tuple[LaurentXY, LaurentXY]:
        """P dx + Q dy + R dt  ->  (W, T) with form = W w0 + T dt."""
        half = Fraction(1, 2)
        y = self.fam.y()
        W = P * y + (Q * self._fx).scale(half)
        T = -(P * self._B * self._ft) + (Q * self._A * y * self._ft).scale(half) + R
        return W, T

    def d_function(self, alpha: LaurentXY) -> tuple[LaurentXY, LaurentXY]:
        return self.to_frame(alpha.d_dx(), alpha.d_dy(), alpha.d_dt())

    def d_form(self, W: LaurentXY, T: LaurentXY) -> LaurentXY:
        """d(W w0 + T dt) = c dt ^ w0; returns c."""
        _, Wt = self.d_function(W)
        Tw, _ = self.d_function(T)
        return Wt + W * self.kappa0 - Tw

    def lift_chart0(self, H: LaurentXY) -> tuple[LaurentXY, LaurentXY]:
        return H, LaurentXY({}, self.fam)

    def lift_chart_inf(self, H: LaurentXY) -> tuple[LaurentXY, LaurentXY]:
        g = self.fam.genus
        h = -(H * self.fam.x_power(1 - g))  # coefficient of dz/u
        return h * self.winf[0], h * self.winf[1]


def lift_form(fam: HyperellipticFamily, chart: str, i: int, lifting: Lifting | None = None):
    """Absolute lift of x^i dx/y (chart "0") or z^i dz/u (chart "inf").

    Returns ``(P, Q)`` with the lift equal to ``P dx + Q dy`` (resp. ``P dz +
    Q du``): x^i (A y dx + 2 B dy), resp. z^i (C u dz + 2 D du).  ``P`` and
    ``Q`` are given as ``(polynomial, y-power)`` pairs.
    """
    lf = lifting or fam.lifting()
    if chart == "0":
        xi = Polynomial.monomial(i, K(1), "x")
        return (xi * lf.A, 1), (xi * lf.B * 2, 0)
    if chart == "inf":
        zi = Polynomial.monomial(i, K(1), "z")
        return (zi * lf.C, 1), (zi * lf.D * 2, 0)
    raise ValueError("chart must be '0' or 'inf'")


# ---------------------------------------------------------------------------
# cocycles
# ---------------------------------------------------------------------------


class CechCocycle:
    """(cech) x (form0, form_inf), forms as dx/y coefficients in x-coordinates.

    The constructor checks regularity on each chart and d(cech) = form0 - form_inf.
    """

    __slots__ = ("fam", "cech", "form0", "form_inf")

    def __init__(self, fam: HyperellipticFamily, cech: LaurentXY, form0: LaurentXY, form_inf: LaurentXY):
        self.fam, self.cech, self.form0, self.form_inf = fam, cech, form0, form_inf
        if not form0.is_regular_on_chart0():
            raise CocycleError(f"chart-0 form is not regular on U0: {form0}")
        if not (form_inf * fam.x_power(1 - fam.genus)).is_regular_on_chart_inf():
            raise CocycleError(f"chart-inf form is not regular on Uinf: {form_inf}")
        if fam.relative_d(cech) != form0 - form_inf:
            raise CocycleError("cocycle condition d(cech) = form0 - form_inf fails")

    def scale(self, h) -> "CechCocycle":
        return CechCocycle(self.fam, self.cech.scale(h), self.form0.scale(h), self.form_inf.scale(h))

    def __add__(self, other: "CechCocycle") -> "CechCocycle":
        return CechCocycle(self.fam, self.cech + other.cech, self.form0 + other.form0, self.form_inf + other.form_inf)

    def __sub__(self, other):
        return self + other.scale(-1)

    def form_inf_zu(self) -> dict[tuple[int, int], RationalFunction]:
        """Chart-inf form as coefficients of z^b u^e dz/u."""
        g = self.fam.genus
        h = -(self.form_inf * self.fam.x_power(1 - g))
        return {(-a - (g + 1) * e, e): v for (a, e), v in h.terms.items()}


def coboundary(fam: HyperellipticFamily, h0: LaurentXY, hinf: LaurentXY) -> CechCocycle:
    """D(h0, hinf) = (h0 - hinf) x (dh0, dhinf)."""
    if not h0.is_regular_on_chart0() or not hinf.is_regular_on_chart_inf():
        raise CocycleError("coboundary needs h0 regular on U0 and hinf regular on Uinf")
    return CechCocycle(fam, h0 - hinf, fam.relative_d(h0), fam.relative_d(hinf))


def basis(fam: HyperellipticFamily) -> list[CechCocycle]:
    """(omega_1..omega_g, omega_1*..omega_g*)."""
    g = fam.genus
    a = fam.coefficients
    empty = LaurentXY({}, fam)
    out = []
    for i in range(1, g + 1):
        H = fam.x_power(i - 1)
        out.append(CechCocycle(fam, empty, H, H))
    for i in range(1, g + 1):
        cech = LaurentXY.monomial(-i, 1, fam)
        half_i = lambda m: Fraction(m, 2) - i
        form0 = LaurentXY({(m - i - 1, 0): a[m] * half_i(m) for m in range(len(a)) if m > i}, fam)
        form_inf = LaurentXY({(m - i - 1, 0): -(a[m] * half_i(m)) for m in range(len(a)) if m <= i}, fam)
        out.append(CechCocycle(fam, cech, form0, form_inf))
    return out


@dataclass(frozen=True)
class RawDelta:
    """dt (x) [cocycle]: the connecting homomorphism followed by iota."""

    cocycle: CechCocycle


def gm_delta(fam: HyperellipticFamily, cocycle: CechCocycle, lifting: Lifting | None = None) -> RawDelta:
    lf = lifting or fam.lifting()
    W0, T0 = lf.lift_chart0(cocycle.form0)
    Wi, Ti = lf.lift_chart_inf(cocycle.form_inf)
    Wa, Ta = lf.d_function(cocycle.cech)
    # -d alpha + z0^ - zinf^ = g dt
    if (W0 - Wi) - Wa:
        raise CocycleError("relative part of -d(alpha) + z0^ - zinf^ does not vanish")
    g_dt = (T0 - Ti) - Ta
    w0 = lf.d_form(W0, T0)
    winf = lf.d_form(Wi, Ti)
    return RawDelta(CechCocycle(fam, -g_dt, w0, winf))


def reduce_to_basis(fam: HyperellipticFamily, raw: RawDelta | CechCocycle) -> list[RationalFunction]:
    """Coordinates of a degree-one class in the order of :func:`basis`.

    The Cech function is split into a U0-regular part, a Uinf-regular part
    and the monomials y/x^i (1 <= i <= g).  The first two are traded for exact
    differentials; the y/x^i are matched with omega_i*.  What is left is a
    global regular form, which must be a combination of x^(i-1) dx/y.
    """
    coc = raw.cocycle if isinstance(raw, RawDelta) else raw
    g = fam.genus
    phi0, phiinf = {}, {}
    star = [_ZERO] * g
    for (a, e), v in coc.cech.terms.items():
        if a >= 0:
            phi0[(a, e)] = v
        elif a + (g + 1) * e <= 0:
            phiinf[(a, e)] = v
        else:  # e == 1, -g <= a <= -1
            star[-a - 1] = v
    phi0 = LaurentXY(phi0, fam)
    phiinf = LaurentXY(phiinf, fam)
    rest = coc - coboundary(fam, phi0, -phiinf)
    bas = basis(fam)
    for i in range(g):
        if star[i]:
            rest = rest - bas[g + i].scale(star[i])
    if rest.cech:
        raise ReductionError(f"leftover Cech part {rest.cech}")
    if rest.form0 != rest.form_inf:
        raise ReductionError("residual chart forms disagree")
    coords = [_ZERO] * g
    for (a, e), v in rest.form0.terms.items():
        if e != 0 or not 0 <= a <= g - 1:
            raise ReductionError(f"residual form has term x^{a} y^{e}; not in the span of the basis")
        coords[a] = v
    return coords + star


@dataclass(frozen=True)
class ConnectionMatrix:
    """entries[i][j] = coefficient of e_i in nabla(e_j), per dt."""

    entries: tuple[tuple[RationalFunction, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def trace(self) -> RationalFunction:
        return sum((self.entries[i][i] for i in range(self.size)), _ZERO)

    def to_json(self) -> list[list[str]]:
        return [[format_rf(c) for c in row] for row in self.entries]


def connection_matrix(fam: HyperellipticFamily, lifting: Lifting | None = None) -> ConnectionMatrix:
    cols = [reduce_to_basis(fam, gm_delta(fam, w, lifting)) for w in basis(fam)]
    n = len(cols)
    return ConnectionMatrix(tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))


def discriminant(g2: Polynomial, g3: Polynomial) -> Polynomial:
    return g2 ** 3 - g3 * g3 * 27


def weierstrass_connection(g2, g3) -> ConnectionMatrix:
    """Closed form for y^2 = 4x^3 - g2 x - g3 in the basis (omega, omega*)."""
    g2, g3 = K(g2), K(g3)
    delta = g2 ** 3 - g3 * g3 * 27
    if not delta:
        raise GaussManinError("discriminant vanishes identically")
    e = g2 * g3.derivative() * 2 - g2.derivative() * g3 * 3
    dlog = delta.derivative() / (delta * 12)
    return ConnectionMatrix(
        (
            (-dlog, -(g2 * e) / (delta * 4)),
            ((e * 3) / (delta * 4), dlog),
        )
    )


# ---------------------------------------------------------------------------
# local behaviour at a base point
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionType:
    kind: str  # "smooth" | "multiplicative" | "additive"
    n: int = 0  # ord_P(Delta)

    def __str__(self):
        return f"multiplicative({self.n})" if self.kind == "multiplicative" else self.kind


def _tpoly(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    return Polynomial([as_rational(p)], "t")


def weierstrass_orders(g2, g3, P) -> tuple[float, float, float]:
    g2, g3 = _tpoly(g2), _tpoly(g3)
    P = as_rational(P)
    return g2.order_at(P), g3.order_at(P), discriminant(g2, g3).order_at(P)


def check_minimal(g2, g3, P) -> None:
    o2, o3, _ = weierstrass_orders(g2, g3, P)
    if o2 >= 4 and o3 >= 6:
        raise NonMinimalError(f"not minimal at t = {P}: (t - {P})^4 | g2 and (t - {P})^6 | g3")


def reduction_type(g2, g3, P) -> ReductionType:
    check_minimal(g2, g3, P)
    o2, _, od = weierstrass_orders(g2, g3, P)
    if od == math.inf:
        raise GaussManinError("discriminant vanishes identically")
    if od == 0:
        return ReductionType("smooth")
    if o2 == 0:
        return ReductionType("multiplicative", int(od))
    return ReductionType("additive", int(od))


def canonical_extension_basis(g2, g3, P) -> tuple[int, int]:
    """Powers of (t - P) multiplying (omega, omega*) in a basis of the
    canonical extension: (0, 0), or (1, 0) for additive reduction."""
    rt = reduction_type(g2, g3, P)
    return (1, 0) if rt.kind == "additive" else (0, 0)


def residue_matrix(conn: ConnectionMatrix, basis_scaling: Sequence[int], P) -> list[list[Fraction]]:
    """Res_P of the connection in the basis (t - P)^m_j e_j."""
    P = as_rational(P)
    n = conn.size
    if len(basis_scaling) != n:
        raise ValueError("one scaling exponent per basis element")
    lin = K(Polynomial([-P, 1], "t"))
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = conn[i, j] * lin ** (basis_scaling[j] - basis_scaling[i])
            if i == j and basis_scaling[j]:
                entry = entry + Fraction(basis_scaling[j]) / lin
            try:
                row.append(rational_residue(entry.num, entry.den, P))
            except PoleOrderError as exc:
                raise CanonicalExtensionError(f"entry ({i}, {j}) has a higher-order pole at {P}") from exc
        out.append(row)
    return out


def eigenvalues(matrix: Sequence[Sequence[Fraction]], dps: int = 40) -> list:
    with mpmath.workdps(dps):
        M = mpmath.matrix([[mpmath.mpf(c.numerator) / c.denominator for c in row] for row in matrix])
        ev = mpmath.eig(M, left=False, right=False)
        return [mpmath.mpc(v) for v in ev]


def eigenvalues_in_unit_interval(matrix: Sequence[Sequence[Fraction]]) -> bool:
    """0 <= Re(alpha) < 1 for every eigenvalue; exact for 2x2 matrices."""
    if len(matrix) == 2:
        (a, b), (c, d) = matrix
        tr, det = a + d, a * d - b * c
        disc = tr * tr - 4 * det
        if disc < 0:
            return 0 <= tr / 2 < 1
        # real roots (tr +- sqrt(disc)) / 2
        low_ok = tr >= 0 and det >= 0
        high_ok = (2 - tr) > 0 and disc < (2 - tr) ** 2
        return low_ok and high_ok
    return all(0 <= v.real < 1 for v in eigenvalues(matrix))


def is_nilpotent(matrix: Sequence[Sequence[Fraction]]) -> bool:
    n = len(matrix)
    M = [list(r) for r in matrix]
    P = [list(r) for r in matrix]
    for _ in range(n - 1):
        P = [[sum(P[i][k] * M[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return all(c == 0 for row in P for c in row)


def format_poly(p: Polynomial) -> str:
    if not p:
        return "0"
    out = []
    for k, c in enumerate(p.coeffs):
        if not c:
            continue
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        coef = "" if (mag == 1 and k) else str(mag)
        mono = "" if k == 0 else (p.var if k == 1 else f"{p.var}^{k}")
        body = coef + ("*" if coef and mono else "") + mono
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


def format_rf(r: RationalFunction) -> str:
    n = format_poly(r.num)
    if r.is_polynomial():
        return n
    return f"({n})/({format_poly(r.den)})"
