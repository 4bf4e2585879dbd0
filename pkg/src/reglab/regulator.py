"""Real regulator of the indecomposable class for the Eisenstein-parametrized
family with mu_l action, l an odd prime.

The period matrix A has rows p = 1..h and columns q = 1..(l-1)/2 with entries

    i (zeta^(pq) - zeta^(-pq)) * (54 pi / l) I(p) = -2 sin(2 pi p q / l) * (54 pi / l) I(p).

The regulator is a k x k determinant (k = (l+1)/2) whose last column holds
J(p).  Since rows k-1 and k carry opposite sines, it collapses to

    sqrt(l) * l^((l-1)/4) * prod_{p<=k} I(p) * (J(k-1)/I(k-1) + J(k)/I(k)).

Values are reported as positive representatives: the class is only defined up
to sign and a nonzero rational factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mpf

from .fibration import EISENSTEIN_FAMILY, EISENSTEIN_KAPPA, invariants, is_prime
from .periods import DEFAULT_PREC, GUARD, PeriodTable, decimal_string, period_table

# examples where the rational structure constant was worked out by hand
ANCHORED_L = (5, 7)


class RegulatorError(ArithmeticError):
    pass


class RankDeficiency(RegulatorError):
    pass


def check_prime(l: int) -> None:
    if l < 3 or not is_prime(l):
        raise RegulatorError(f"l must be an odd prime, got {l}")


def h_for(l: int) -> tuple[int, int]:
    """(h20, h) of the Eisenstein-parametrized family for this l."""
    inv = invariants(EISENSTEIN_FAMILY.spec(l, EISENSTEIN_KAPPA))
    if inv.h is None:
        raise RegulatorError(f"l = {l}: need l prime and h20 > 0 (h20 = {inv.h20})")
    return inv.h20, inv.h


def _sine(l: int, p: int, q: int) -> mpf:
    # i (zeta^n - zeta^-n) = -2 sin(2 pi n / l)
    return -2 * mpmath.sin(2 * mpmath.pi * p * q / l)


def _table_for(l: int, table: PeriodTable | None, prec: int) -> PeriodTable:
    if table is None:
        return period_table(l, "series", prec)
    if table.l != l:
        raise RegulatorError(f"period table is for l = {table.l}, not {l}")
    return table


def matrix_A(l: int, table: PeriodTable, h: int | None = None) -> mpmath.matrix:
    """h x (l-1)/2 real matrix of the extension map."""
    check_prime(l)
    if table.l != l:
        raise RegulatorError(f"period table is for l = {table.l}, not {l}")
    if h is None:
        h = h_for(l)[1]
    s = (l - 1) // 2
    with mpmath.workdps(table.prec + GUARD):
        f = 54 * mpmath.pi / l
        return mpmath.matrix([[_sine(l, p, q) * f * table.I[p] for q in range(1, s + 1)] for p in range(1, h + 1)])


def numerical_rank(M: mpmath.matrix, prec: int) -> int:
    with mpmath.workdps(prec + GUARD):
        sv = mpmath.svd_r(M, compute_uv=False)
        vals = [abs(sv[i]) for i in range(len(sv))]
        top = max(vals)
        thr = top * mpf(10) ** (-mpf(prec) / 2)
        return sum(1 for v in vals if v > thr)


def ext_dimension(l: int, h: int, A: mpmath.matrix | None = None, prec: int = DEFAULT_PREC) -> int:
    """dim Coker(R^((l-1)/2) -> R^h) = h - (l-1)/2, after checking the rank of A if given."""
    s = (l - 1) // 2
    if h < s:
        raise RegulatorError(f"h = {h} is smaller than (l-1)/2 = {s}")
    if A is not None:
        r = numerical_rank(A, prec)
        if r < s:
            raise RankDeficiency(f"matrix A has numerical rank {r} < {s}")
    return h - s


def cyclotomic_matrix(l: int) -> mpmath.matrix:
    s = (l - 1) // 2
    zeta = mpmath.expjpi(mpf(2) / l)
    return mpmath.matrix([[zeta ** (p * q) - zeta ** (-p * q) for q in range(1, s + 1)] for p in range(1, s + 1)])


def vandermonde_det_check(l: int, prec: int = DEFAULT_PREC) -> mpf:
    """Relative deviation of det(zeta^(pq) - zeta^(-pq)), 1 <= p, q <= (l-1)/2,
    from sqrt((-l)^((l-1)/2)) in absolute value."""
    if l < 3 or l % 2 == 0:
        raise RegulatorError(f"l must be odd and >= 3, got {l}")
    s = (l - 1) // 2
    with mpmath.workdps(prec + GUARD):
        d = mpmath.det(cyclotomic_matrix(l))
        target = mpf(l) ** (mpf(s) / 2)
        return abs(abs(d) - target) / target


def row_collapse_residual(l: int, prec: int = DEFAULT_PREC) -> mpf:
    """Largest cyclotomic entry of (row k-1) + (row k) after dividing row p by I(p)."""
    check_prime(l)
    k, s = (l + 1) // 2, (l - 1) // 2
    with mpmath.workdps(prec + GUARD):
        return max(abs(_sine(l, k - 1, q) + _sine(l, k, q)) for q in range(1, s + 1))


def ratio_sum(l: int, table: PeriodTable) -> mpf:
    k = (l + 1) // 2
    I, J = table.I, table.J
    eps = mpf(10) ** (-table.prec)
    for p in (k - 1, k):
        if abs(I[p]) <= eps:
            raise RegulatorError(f"I({p}) vanishes numerically")
    return J[k - 1] / I[k - 1] + J[k] / I[k]


def nonvanishing_check(l: int, table: PeriodTable) -> bool:
    """True iff J(k-1)/I(k-1) + J(k)/I(k) is (numerically) positive."""
    with mpmath.workdps(table.prec + GUARD):
        return bool(ratio_sum(l, table) > mpf(10) ** (-mpf(table.prec) / 2))


@dataclass(frozen=True)
class RegulatorResult:
    l: int
    h: int
    h20: int
    prec: int
    matrix_A: mpmath.matrix
    ext_dim: int
    det_value: mpf
    normalization: mpf
    reg_value: mpf
    closed_form_value: mpf
    route_deviation: mpf
    extrapolated: bool
    table: PeriodTable

    @property
    def flagged(self) -> bool:
        return self.extrapolated or self.table.flagged

    def to_json(self) -> dict:
        d = lambda v: decimal_string(v, self.prec)
        A = self.matrix_A
        return {
            "l": self.l,
            "h": self.h,
            "h20": self.h20,
            "prec": self.prec,
            "matrix_A": [[d(A[i, j]) for j in range(A.cols)] for i in range(A.rows)],
            "ext_dim": self.ext_dim,
            "det_value": d(self.det_value),
            "normalization": d(self.normalization),
            "reg_value": d(self.reg_value),
            "reg_value_15": mpmath.nstr(self.reg_value, 15),
            "closed_form_value": d(self.closed_form_value),
            "route_deviation": mpmath.nstr(self.route_deviation, 5),
            "extrapolated": self.extrapolated,
            "sign_convention": "positive representative modulo sign and Q^x",
            "periods": self.table.to_json(),
        }


def closed_form(l: int, table: PeriodTable) -> mpf:
    k = (l + 1) // 2
    with mpmath.workdps(table.prec + GUARD):
        const = mpmath.sqrt(l) * mpf(l) ** (mpf(l - 1) / 4)
        return abs(const * mpmath.fprod(table.I[p] for p in range(1, k + 1)) * ratio_sum(l, table))


def bordered_determinant(l: int, table: PeriodTable) -> mpf:
    """det of the k x k matrix with rows (i(zeta^pq - zeta^-pq) I(p))_q, J(p)."""
    k, s = (l + 1) // 2, (l - 1) // 2
    with mpmath.workdps(table.prec + GUARD):
        M = mpmath.matrix([[_sine(l, p, q) * table.I[p] for q in range(1, s + 1)] + [table.J[p]] for p in range(1, k + 1)])
        return mpmath.det(M)


def reg_value(l: int, table: PeriodTable | None = None, prec: int = DEFAULT_PREC) -> RegulatorResult:
    check_prime(l)
    h20, h = h_for(l)
    table = _table_for(l, table, prec)
    prec = table.prec
    s = (l - 1) // 2
    A = matrix_A(l, table, h)
    ext = ext_dimension(l, h, A, prec)
    with mpmath.workdps(prec + GUARD):
        norm = mpmath.sqrt(l) / mpmath.pi ** s
        det_value = abs(mpmath.pi ** s * bordered_determinant(l, table))
        reg = norm * det_value
        cf = closed_form(l, table)
        dev = abs(reg - cf) / cf
    if dev > mpf(10) ** -10:
        raise RegulatorError(f"determinant and closed form disagree (relative deviation {mpmath.nstr(dev, 5)})")
    with mpmath.workdps(prec):
        return RegulatorResult(
            l=l,
            h=h,
            h20=h20,
            prec=prec,
            matrix_A=A,
            ext_dim=ext,
            det_value=+det_value,
            normalization=+norm,
            reg_value=+reg,
            closed_form_value=+cf,
            route_deviation=dev,
            extrapolated=l not in ANCHORED_L,
            table=table,
        )
