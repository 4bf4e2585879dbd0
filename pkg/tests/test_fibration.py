from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reglab.fibration import (
    EISENSTEIN_FAMILY,
    EISENSTEIN_KAPPA,
    FibrationError,
    InvalidFibration,
    catalog,
    family_by_name,
    invariants,
    kodaira_from_epsilon,
    kodaira_from_orders,
    make_spec,
    minimal_k,
    nabla_bar_criterion,
    split_multiplicative_check,
    tpoly,
    validate_conditions,
)


def test_validate_family_i():
    rep = validate_conditions(tpoly([3]), tpoly([1, -2]))
    assert rep.valid
    assert (rep.a, rep.b, rep.c) == (1, 1, 108)
    assert (rep.a_prime, rep.b_prime) == (0, 0)


def test_validate_eisenstein_family():
    rep = validate_conditions(EISENSTEIN_FAMILY.g2, EISENSTEIN_FAMILY.g3)
    assert rep.valid
    assert (rep.a, rep.b, rep.c) == (3, 1, 110592)
    assert (rep.a_prime, rep.b_prime, rep.c_prime) == (2, 0, 6144)
    # 12(9 - 8t), -8(8t^2 - 36t + 27)
    assert EISENSTEIN_FAMILY.g2 == tpoly([9, -8]) * 12
    assert EISENSTEIN_FAMILY.g3 == tpoly([27, -36, 8]) * -8


def test_degenerate_pair_reports_e3():
    rep = validate_conditions(tpoly([0]), tpoly([0, 1]))
    assert not rep.valid
    assert any(v.startswith("E3") for v in rep.violations)
    with pytest.raises(InvalidFibration) as exc:
        make_spec(tpoly([0]), tpoly([0, 1]))
    assert exc.value.violations == rep.violations


def test_catalog_entries():
    cat = catalog()
    assert [e.name for e in cat] == ["i", "ii", "iii", "iv", "v"]
    assert (cat[0].g2, cat[0].g3, cat[0].a, cat[0].b) == (tpoly([3]), tpoly([1, -2]), 1, 1)
    assert cat[2].g2 == tpoly([27, -24]) and cat[2].g3 == tpoly([-27, 36, -8])
    assert cat[4].g2 == tpoly([1, -1, 1]) * 12
    assert cat[4].g3 == tpoly([-2, 1]) * tpoly([1, 1]) * tpoly([-1, 2]) * 4
    assert (cat[4].a, cat[4].b) == (2, 2)


@pytest.mark.parametrize("entry", catalog(), ids=lambda e: e.name)
def test_catalog_entries_validate(entry):
    rep = validate_conditions(entry.g2, entry.g3)
    assert rep.valid, rep.violations
    assert (rep.a, rep.b) == (entry.a, entry.b)
    assert (rep.a_prime, rep.b_prime) == (entry.a - 1, entry.b - 1)
    assert rep.c > 0 and rep.c_prime != 0


NEAR_MISSES = [
    ([3], [1, -1]),  # discriminant no longer t^a (1-t)^b
    ([3], [2, -2]),  # E3: g3(1) = 0
    ([4], [1, -2]),
    ([12, -8], [8, -9]),
    ([27, -24], [-27, 36, -9]),
    ([27, -25], [-27, 36, -8]),
    ([3], [1, -3]),
    ([12, -12, 12], [-8, 4, 12, -8]),
    ([-3], [1, -2]),  # E3 and E4 on g2
    ([3, -6], [1, -2]),
]


@pytest.mark.parametrize("g2,g3", NEAR_MISSES)
def test_near_misses_rejected(g2, g3):
    assert not validate_conditions(tpoly(g2), tpoly(g3)).valid


def test_sign_flip_of_g3_is_the_t_to_1_minus_t_mirror():
    # (3, 2t - 1) is (i) with t -> 1 - t: still valid
    assert validate_conditions(tpoly([3]), tpoly([-1, 2])).valid


def test_e4_detects_interior_negativity():
    # g2 = 3 (2t - 1)^2 - 1/10 dips below zero around t = 1/2 while positive at the ends
    g2 = tpoly([-1, 2]) * tpoly([-1, 2]) * 3 - Fraction(1, 10)
    rep = validate_conditions(g2, tpoly([1, -2]))
    assert any(v.startswith("E4") for v in rep.violations)


def test_minimal_k_examples():
    g2, g3 = EISENSTEIN_FAMILY.g2, EISENSTEIN_FAMILY.g3
    assert minimal_k(g2, g3, 5) == 2
    assert minimal_k(g2, g3, 7) == 3
    assert minimal_k(tpoly([3]), tpoly([1]), 1) == 0


def test_invariants_l5():
    inv = invariants(EISENSTEIN_FAMILY.spec(5, EISENSTEIN_KAPPA))
    assert (inv.k, inv.h20, inv.eps_inf, inv.nu_inf) == (2, 1, 4, 3)
    assert (inv.b2, inv.rho_f) == (22, 18)
    assert inv.b2 - inv.rho_f == 4
    assert (inv.dim_H2_ind, inv.h) == (4, 3)
    assert inv.fiber_at_0 == "I15"
    assert inv.fiber_at_inf == "IV"


def test_invariants_l7():
    inv = invariants(EISENSTEIN_FAMILY.spec(7, EISENSTEIN_KAPPA))
    assert (inv.h20, inv.dim_H2_ind, inv.h) == (2, 6, 4)
    assert inv.eps_inf == 8 and inv.b2 == 34
    # b2 = h20 + h11 + h02 with h11 = 30
    assert inv.b2 == 2 + 30 + 2
    assert inv.fiber_at_inf == "IV*"


@pytest.mark.parametrize("l", [3, 5, 7, 11, 13])
@pytest.mark.parametrize("entry", catalog() + [EISENSTEIN_FAMILY], ids=lambda e: e.name)
def test_double_entry_bookkeeping(entry, l):
    spec = entry.spec(l)
    inv = invariants(spec)
    assert inv.h20 == inv.k - 1
    assert inv.h20 == (spec.a * l + spec.b * l + inv.eps_inf) // 12 - 1
    if inv.h is not None:
        assert inv.eps_inf - inv.nu_inf == 1
        assert inv.b2 - inv.rho_f == l - 1


@given(st.fractions(min_value=Fraction(1, 7), max_value=10, max_denominator=7).filter(bool),
       st.sampled_from([5, 7, 11]))
@settings(max_examples=25, deadline=None)
def test_invariants_respect_equivalence(h, l):
    e = EISENSTEIN_FAMILY
    base = invariants(e.spec(l))
    for hh in (h, -h):
        spec = make_spec(e.g2 * hh ** 4, e.g3 * hh ** 6, l)
        assert invariants(spec) == base


def test_kodaira_table():
    assert str(kodaira_from_orders(0, 0, 3)) == "I3"
    assert kodaira_from_orders(1, 1, 2).tag == "II"
    assert kodaira_from_orders(2, 3, 6).tag == "I0*"
    assert kodaira_from_orders(2, 3, 9).tag == "I3*"
    assert kodaira_from_orders(3, 4, 8).tag == "IV*"
    with pytest.raises(FibrationError):
        kodaira_from_orders(4, 6, 12)
    for tag_eps in ("II", "III", "IV", "IV*", "III*", "II*"):
        t = next(kodaira_from_epsilon(e) for e in (2, 3, 4, 8, 9, 10) if kodaira_from_epsilon(e).tag == tag_eps)
        # additive: eps = nu + 1
        assert t.epsilon == t.nu + 1 and t.kind == "additive"
    assert kodaira_from_epsilon(7).tag == "I1*"


def test_family_lookup():
    assert family_by_name("iii").a == 3
    with pytest.raises(KeyError):
        family_by_name("vi")


def test_nabla_bar_criterion():
    assert nabla_bar_criterion(tpoly([3]), tpoly([1, -2]), 0)
    assert not nabla_bar_criterion(tpoly([3]), tpoly([1, -2]), Fraction(1, 2))
    assert not nabla_bar_criterion(tpoly([0]), tpoly([0, -4]), 0)
    # I1*: g2 = 3t^2, g3 = t^3 + t^4, Delta = -27 t^7 (2 + t), E = 6 t^5; residue -1/9
    assert nabla_bar_criterion(tpoly([0, 0, 3]), tpoly([0, 0, 0, 1, 1]), 0)


def test_split_multiplicative():
    assert split_multiplicative_check(EISENSTEIN_KAPPA, EISENSTEIN_FAMILY.g3)
    assert not split_multiplicative_check(1, tpoly([1]))
    assert not split_multiplicative_check(-6, tpoly([-1]))
    with pytest.raises(FibrationError):
        split_multiplicative_check(1, tpoly([1, -1]))


def test_spec_json_roundtrip_fields():
    js = EISENSTEIN_FAMILY.spec(5).to_json()
    assert js["c"] == "110592" and js["c_prime"] == "6144"
    assert js["l"] == 5 and js["kappa"] == "-12"
