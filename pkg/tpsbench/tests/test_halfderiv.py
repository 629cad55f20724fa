"""
Shift maps, the half-derivation checker and the closed-form families.
"""

from fractions import Fraction

import pytest

from tpsbench.app.core.exceptions import FamilyRequestError, IndexOutsideGroupError, RecurrenceError, WindowError
from tpsbench.app.domain.algebra.basis import Element, Window, basis
from tpsbench.app.domain.algebra.catalog import catalog
from tpsbench.app.domain.exactnum import HALF, GaussianRational, ONE, ZERO
from tpsbench.app.domain.halfderiv.checker import (
    all_pairs,
    check_half_derivation,
    half_derivation_residual,
    sample_pairs,
)
from tpsbench.app.domain.halfderiv.families import (
    compose_ad,
    family_hwn,
    family_w_a_minus1_half,
    family_w_ab,
    family_wn,
    hwn_closed_form,
    hwn_coeff,
    identity_map,
)
from tpsbench.app.domain.halfderiv.maps import ShiftMap, ShiftTerm, WindowMap
from tpsbench.app.services.workbench import formal_k_window

L = lambda i, alpha=0: basis("L", i, alpha)  # noqa: E731
I = lambda i, alpha=0: basis("I", i, alpha)  # noqa: E731
Y = lambda i: basis("Y", i)  # noqa: E731
H = lambda i, alpha=0: basis("H", i, alpha)  # noqa: E731


def random_scalar(rng):
    while True:
        value = GaussianRational(
            Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
            Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
        )
        if value:
            return value


def random_coeffs(rng, count=3, shifts=range(-3, 4)):
    return {t: random_scalar(rng) for t in rng.sample(list(shifts), count)}


# Maps

def test_shift_map_merges_and_drops_zero_terms():
    m = ShiftMap([
        ShiftTerm("L", "L", ZERO, 1, ONE),
        ShiftTerm("L", "L", ZERO, 1, GaussianRational(2)),
        ShiftTerm("L", "I", ZERO, 0, ONE),
        ShiftTerm("L", "I", ZERO, 0, -ONE),
    ])
    assert m.terms == (ShiftTerm("L", "L", ZERO, 1, GaussianRational(3)),)
    assert m.apply(Element({L(0): 1, L(2): 2})) == Element({L(1): 3, L(3): 6})


def test_shift_map_grade_shifts():
    alg = catalog("w_abs", {"a": 0, "b": -1})
    assert family_w_a_minus1_half(gammas={0: 1}).grade_shifts(alg) == [HALF]
    assert family_w_a_minus1_half(alphas={2: 1}, betas={2: 5}).grade_shifts(alg) == [GaussianRational(2)]


def test_restrict_checks_codomain(witt):
    shift = ShiftMap([ShiftTerm("L", "L", ZERO, 1, ONE)])
    domain = witt.enumerate_basis(Window(-1, 1))
    window_map = shift.restrict(domain, witt.enumerate_basis(Window(-1, 2)))
    assert window_map.apply_basis(L(1)) == Element.of(L(2))
    assert window_map.apply_basis(L(5)) is None
    assert window_map.entries()[(3, 2)] == ONE
    with pytest.raises(WindowError):
        shift.restrict(domain, domain)


def test_window_map_apply_outside_domain():
    window_map = WindowMap([L(0)], None, {L(0): Element.of(L(1))})
    assert window_map.apply(Element.of(L(0), 2)) == Element.of(L(1), 2)
    with pytest.raises(WindowError):
        window_map.apply(Element.of(L(1)))
    assert window_map.try_apply(Element.of(L(1))) is None


# Checker

def test_identity_is_a_half_derivation(hwn1):
    report = check_half_derivation(hwn1, identity_map(hwn1, 7), all_pairs(hwn1.enumerate_basis(Window(-2, 2, 1))))
    assert report.ok
    assert report.pairs_checked == 30 * 29 // 2


def test_shift_on_w_ab_b2_fails_with_exact_residual(w_ab_b2):
    phi = ShiftMap([
        ShiftTerm("L", "L", ZERO, 1, ONE),
        ShiftTerm("I", "I", ZERO, 1, ONE),
    ])
    # [L_0, I_0] = 0 while 1/2([L_1, I_0] + [L_0, I_1]) = 3/2 I_1
    residual = half_derivation_residual(w_ab_b2, phi, L(0), I(0))
    assert residual == Element.of(I(1), Fraction(-3, 2))
    report = check_half_derivation(w_ab_b2, phi, [(L(0), L(1)), (L(0), I(0))])
    assert not report.ok
    assert [r.pair for r in report.residuals] == [(L(0), I(0))]


def test_checker_skips_undefined_pairs(witt):
    window_map = WindowMap([L(0), L(1)], None, {L(0): Element.of(L(0)), L(1): Element.of(L(1))})
    report = check_half_derivation(witt, window_map, [(L(0), L(1)), (L(1), L(2))])
    assert report.pairs_checked == 1
    assert report.pairs_skipped == 1
    assert report.ok


def test_sample_pairs_reproducible(witt, rng):
    first = sample_pairs(witt, Window(-3, 3), 10, rng)
    assert len(first) == 10
    assert sample_pairs(witt, Window(-3, 3), 10) == sample_pairs(witt, Window(-3, 3), 10)


# Families

def test_w_ab_family_requires_b_minus_one():
    with pytest.raises(FamilyRequestError):
        family_w_ab(2, {1: 1})
    with pytest.raises(FamilyRequestError):
        family_w_ab(0, betas={0: 1})
    scalar = family_w_ab(2, {0: 3})
    assert scalar.apply(Element.of(I(4))) == Element.of(I(4), 3)


def test_w_ab_family_example():
    phi = family_w_ab(-1, {1: 2}, {0: 5})
    assert phi.apply(Element.of(L(3))) == Element({L(4): 2, I(3): 5})
    assert phi.apply(Element.of(I(3))) == Element.of(I(4), 2)


def test_w_a_minus1_half_family_example():
    phi = family_w_a_minus1_half(gammas={0: 1})
    assert phi.apply(Element.of(L(2))) == Element.of(Y(2))
    assert phi.apply(Element.of(Y(2))) == Element.of(I(3))
    assert phi.apply(Element.of(I(2))).is_zero()


def test_wn_family_rejects_group_outsider(wn2):
    with pytest.raises(IndexOutsideGroupError):
        family_wn(wn2, {(Fraction(1, 2), 0): 1})


def test_random_families_pass_on_random_pairs(rng):
    """Closed-form families with random coefficients and parameters."""
    a = random_scalar(rng)
    w_ab = catalog("w_ab", {"a": a, "b": -1})
    phi = family_w_ab(-1, random_coeffs(rng), random_coeffs(rng))
    assert check_half_derivation(w_ab, phi, sample_pairs(w_ab, Window(-6, 6), 200, rng)).ok

    w_abs = catalog("w_abs", {"a": a, "b": -1})
    phi = family_w_a_minus1_half(random_coeffs(rng), random_coeffs(rng), random_coeffs(rng))
    assert check_half_derivation(w_abs, phi, sample_pairs(w_abs, Window(-6, 6), 200, rng)).ok

    g = GaussianRational(Fraction(1, 2), 1)
    wn = catalog("wn_g", {"n": rng.choice([-1, 1, 2]), "generators": [g]})
    seeds = {(g * rng.randint(-2, 2), m): random_scalar(rng) for m in rng.sample(range(-3, 4), 3)}
    phi = family_wn(wn, seeds)
    assert check_half_derivation(wn, phi, sample_pairs(wn, Window(-4, 4, 2), 200, rng)).ok


def test_wn_family_example(wn2):
    phi = family_wn(wn2, {(1, 3): 2})
    assert phi.apply(Element.of(L(0, 4))) == Element.of(L(3, 5), 2)


# HW recurrence

def test_hwn_coeff_examples():
    assert hwn_coeff(2, 1, 1, 1, 3) == GaussianRational(-1)
    assert hwn_coeff(2, 1, 1, 1, 4) == ZERO
    v = GaussianRational(3, -1)
    assert hwn_coeff(0, 2, -2, v, -2) == v
    assert hwn_coeff(0, 2, -2, v, 0) == ZERO


def test_hwn_coeff_errors():
    with pytest.raises(RecurrenceError):
        hwn_coeff(2, 0, 1, 1, 3)
    with pytest.raises(RecurrenceError):
        hwn_coeff(2, 1, 1, 1, -2)
    with pytest.raises(RecurrenceError):
        hwn_coeff(2, 1, 2, 1, 4)
    with pytest.raises(RecurrenceError):
        hwn_coeff(0, 2, 1, 1, 1)
    with pytest.raises(RecurrenceError):
        hwn_coeff(1, 1, 2, 0, -1)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("d", [GaussianRational(1), GaussianRational(2), GaussianRational(1, 1)])
def test_hwn_recurrence_holds_on_window(n, d):
    for r in range(n):
        seed_m = r - n if r else 0
        values = {k: hwn_coeff(n, d, seed_m, ONE, k) for k in range(-10, 11) if (k - seed_m) % n == 0}
        for k, value in values.items():
            if k - n in values:
                assert d * value + (k - n) * values[k - n] == ZERO
    for k in range(1, 6):
        assert hwn_coeff(n, d, 0, ONE, k * n) == ZERO


@pytest.mark.parametrize("t", [1, 2, 3, 4, -1, -2, -3, -4])
def test_hwn_closed_form_matches_recurrence(t):
    n, d, m, v = 2, GaussianRational(1, 1), -1, GaussianRational(3)
    assert hwn_closed_form(n, d, m, v, t) == hwn_coeff(n, d, m, v, m + t * n)
    assert hwn_closed_form(3, 2, -2, v, t) == hwn_coeff(3, 2, -2, v, -2 + 3 * t)


def test_hwn_closed_form_undefined_factor():
    with pytest.raises(RecurrenceError):
        hwn_closed_form(2, 1, 2, 1, -1)


def test_hwn_family_n_zero_is_finite():
    alg = catalog("hwn_g", {"n": 0, "generators": [1]})
    phi = family_hwn(alg, {2: 1})
    assert phi.apply(Element.of(L(5, 1))) == Element.of(L(3, 3))
    assert phi.apply(Element.of(H(0, -1))) == Element.of(H(-2, 1))
    assert check_half_derivation(alg, phi, all_pairs(alg.enumerate_basis(Window(-2, 2, 1)))).ok


def test_hwn_family_scalar_seed(hwn1):
    phi = family_hwn(hwn1, {(0, 0): 4})
    assert phi == identity_map(hwn1, 4)
    assert check_half_derivation(hwn1, phi, all_pairs(hwn1.enumerate_basis(Window(-2, 2, 1)))).ok


def test_hwn_family_formal_check():
    alg = catalog("hwn_g", {"n": 2, "generators": [1]})
    window = Window(-1, 1, 1)
    phi = family_hwn(alg, {(1, 1): 1}, formal_k_window(window, 2))
    report = check_half_derivation(alg, phi, all_pairs(alg.enumerate_basis(window)), output_window=window)
    assert report.ok


def test_truncated_series_fails_without_output_window(hwn1):
    window = Window(-2, 2, 1)
    phi = family_hwn(hwn1, {(1, 0): 1}, formal_k_window(window, 1))
    pairs = all_pairs(hwn1.enumerate_basis(window))
    assert check_half_derivation(hwn1, phi, pairs, output_window=window).ok
    assert not check_half_derivation(hwn1, phi, pairs).ok


def test_hwn_family_errors(hwn1):
    with pytest.raises(FamilyRequestError):
        family_hwn(hwn1, {(1, 0): 1})
    with pytest.raises(FamilyRequestError):
        family_hwn(hwn1, {(0, 2): 1})
    alg2 = catalog("hwn_g", {"n": 2, "generators": [1]})
    with pytest.raises(FamilyRequestError):
        family_hwn(alg2, {(1, 1): 1, (1, -1): 1}, (-4, 4))


# Commutators with inner derivations

def test_compose_ad_with_identity_vanishes(w_abs_b_minus1):
    derived = compose_ad(identity_map(w_abs_b_minus1), w_abs_b_minus1, Element.of(Y(0)))
    for b in w_abs_b_minus1.enumerate_basis(Window(-3, 3)):
        assert derived.apply_basis(b).is_zero()


def test_compose_ad_of_zero_map(witt):
    derived = compose_ad(ShiftMap(), witt, Element.of(L(2)))
    assert derived.apply(Element({L(0): 1, L(1): 1})).is_zero()


def test_compose_ad_of_witt_shift(witt):
    shift = ShiftMap([ShiftTerm("L", "L", ZERO, 1, ONE)])
    derived = compose_ad(shift, witt, Element.of(L(0)))
    for m in range(-3, 4):
        assert derived.apply_basis(L(m)) == Element.of(L(m + 1))


def test_compose_ad_gives_half_derivation(w_abs_b_minus1, rng):
    gamma = family_w_a_minus1_half(gammas={0: 1})
    derived = compose_ad(gamma, w_abs_b_minus1, Element.of(Y(0)))
    pairs = sample_pairs(w_abs_b_minus1, Window(-4, 4), 50, rng)
    assert check_half_derivation(w_abs_b_minus1, derived, pairs).ok
