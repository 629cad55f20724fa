"""
Commutative products, transposed Poisson checks and the TPS window solver.
"""

import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from tpsbench.app.core.exceptions import (
    AlgebraDefinitionError,
    InconsistentFamilyError,
    IndexOutsideGroupError,
    WindowError,
)
from tpsbench.app.domain.algebra.basis import Element, Window, basis
from tpsbench.app.domain.algebra.catalog import catalog
from tpsbench.app.domain.algebra.definition import AlgebraDef
from tpsbench.app.domain.algebra.rules import FamilyDecl
from tpsbench.app.domain.exactnum import ONE, GaussianRational
from tpsbench.app.domain.halfderiv.checker import all_pairs, check_half_derivation
from tpsbench.app.domain.halfderiv.families import family_w_a_minus1_half
from tpsbench.app.domain.halfderiv.maps import ShiftMap, ShiftTerm
from tpsbench.app.domain.tps.checks import (
    check_poisson,
    check_tps,
    compatibility_residual,
    compatibility_residual_elements,
    left_mult_map,
)
from tpsbench.app.domain.tps.products import TableProduct, mul, mutation, w_plain, zero_product
from tpsbench.app.domain.tps.solver import solve_tps
from tpsbench.app.services.workbench import family_generators
from tpsbench.tests.strategies import elements, gaussian_rationals

L = lambda i, alpha=0: basis("L", i, alpha)  # noqa: E731
I = lambda i: basis("I", i)  # noqa: E731
Y = lambda i: basis("Y", i)  # noqa: E731

WINDOW = Window(-3, 3)
GROUP_PARTS = (GaussianRational(-1), GaussianRational(0), GaussianRational(1))


# Products

def test_plain_product_table(w_abs_b_minus1):
    p = w_plain(w_abs_b_minus1)
    assert mul(p, Element.of(L(2)), Element.of(L(3))) == Element.of(L(5))
    assert mul(p, Element.of(Y(0)), Element.of(Y(1))) == Element.of(I(2))
    assert mul(p, Element.of(I(1)), Element.of(L(2))) == Element.of(I(3))
    assert mul(p, Element.of(I(1)), Element.of(Y(2))).is_zero()


def test_plain_product_needs_family_l():
    with pytest.raises(AlgebraDefinitionError):
        w_plain(AlgebraDef("abelian", [FamilyDecl("E")], []))


def test_mutation_example(w_abs_b_minus1):
    w = Element({L(1): 2, I(0): 1})
    p = mutation(w_plain(w_abs_b_minus1), w)
    for m in range(-2, 3):
        for n in range(-2, 3):
            assert p.mul(Element.of(L(m)), Element.of(I(n))) == Element.of(I(m + n + 1), 2)
    assert p.base.name == "plain-W"


def test_mutation_rejects_foreign_index(wn2):
    with pytest.raises(IndexOutsideGroupError):
        mutation(w_plain(wn2), Element.of(L(0, GaussianRational(0, 1))))


def test_zero_product_is_tps(w_abs_b_minus1):
    report = check_tps(zero_product(w_abs_b_minus1), w_abs_b_minus1, Window(-2, 2))
    assert report.is_tps
    assert report.leibniz.ok


# TPS checks

def test_plain_product_is_tps_for_b_minus_one():
    alg = catalog("w_ab", {"a": 0, "b": -1})
    report = check_tps(w_plain(alg), alg, WINDOW)
    assert report.is_tps
    assert report.associative.tuples_checked == 14 ** 3


def test_plain_product_fails_compatibility_for_b_zero():
    alg = catalog("w_ab", {"a": 0, "b": 0})
    p = w_plain(alg)
    report = check_tps(p, alg, WINDOW)
    assert not report.is_tps
    assert report.commutative.ok
    assert report.associative.ok
    assert report.compatible.witness is not None
    # 2 L_k.[L_m, I_n] - [L_k.L_m, I_n] - [L_m, L_k.I_n] = -k I_{k+m+n}
    for k, m, n in [(1, 0, 0), (2, -1, 3), (-3, 1, 1)]:
        assert compatibility_residual(p, alg, L(m), I(n), L(k)) == Element.of(I(k + m + n), -k)


def test_plain_product_is_not_poisson(wn2):
    assert check_poisson(w_plain(wn2), wn2, Window(-1, 1, 1)).witness is not None
    alg = catalog("w_abs", {"a": 3, "b": -1})
    witness = check_poisson(w_plain(alg), alg, Window(-1, 1)).witness
    assert witness is not None
    assert witness.residual


def test_table_product_skips_undefined_tuples(witt):
    table = TableProduct("partial", witt, {(L(0), L(0)): Element.of(L(0)), (L(0), L(1)): Element.of(L(1))})
    report = check_tps(table, witt, Window(0, 1))
    assert report.associative.tuples_skipped > 0
    assert report.commutative.ok
    with pytest.raises(WindowError):
        table.mul(Element.of(L(1)), Element.of(L(1)))


def test_left_mult_map_matches_family(w_abs_b_minus1):
    p = mutation(w_plain(w_abs_b_minus1), Element.of(L(1)))
    lm = left_mult_map(p, Element.of(L(0)))
    expected = family_w_a_minus1_half(alphas={1: 1})
    for b in w_abs_b_minus1.enumerate_basis(WINDOW):
        assert lm.apply_basis(b) == expected.apply_basis(b)


@hyp_settings(max_examples=10, deadline=None)
@given(elements(families=("L", "I", "Y"), i_range=(-2, 2)), gaussian_rationals)
def test_mutations_of_extended_plain_product_are_tps(w, a):
    alg = catalog("w_abs", {"a": a, "b": -1})
    report = check_tps(mutation(w_plain(alg), w), alg, WINDOW)
    assert report.is_tps
    assert report.compatible.violations == 0


@hyp_settings(max_examples=6, deadline=None)
@given(elements(families=("L",), alphas=GROUP_PARTS, i_range=(-2, 2)), st.sampled_from([1, 2]))
def test_mutations_over_group_plain_product_are_tps(w, n):
    alg = catalog("wn_g", {"n": n, "generators": [1]})
    assert check_tps(mutation(w_plain(alg), w), alg, Window(-3, 3, 1)).is_tps


def test_mutation_elements_violate_leibniz(wn2):
    alg = catalog("w_abs", {"a": 1, "b": -1})
    for algebra, w, window in [
        (alg, Element({L(0): 1, Y(1): 2}), Window(-1, 1)),
        (wn2, Element({L(1, 1): 1, L(0): -1}), Window(-1, 1, 1)),
    ]:
        assert check_poisson(mutation(w_plain(algebra), w), algebra, window).witness is not None


@pytest.mark.parametrize(
    "w",
    [Element.of(L(0)), Element({L(1): 1, I(-1): 3}), Element({Y(0): 1, L(-1): GaussianRational(0, 2)})],
)
def test_left_multiplications_are_half_derivations(w_abs_b_minus1, w):
    p = mutation(w_plain(w_abs_b_minus1), w)
    assert check_tps(p, w_abs_b_minus1, WINDOW).is_tps
    pairs = all_pairs(w_abs_b_minus1.enumerate_basis(WINDOW))
    for z in w_abs_b_minus1.enumerate_basis(Window(-2, 2)):
        report = check_half_derivation(w_abs_b_minus1, left_mult_map(p, Element.of(z)), pairs)
        assert report.ok, z


def test_compatibility_on_elements(w_abs_b_minus1):
    p = mutation(w_plain(w_abs_b_minus1), Element({L(1): 1, Y(0): 1}))
    x = Element({L(1): 2, Y(-1): 1})
    y = Element({I(0): 1, L(-2): 3})
    z = Element({Y(2): 1, L(0): -1})
    assert compatibility_residual_elements(p, w_abs_b_minus1, x, y, z).is_zero()


# TPS solver

def test_solve_tps_recovers_mutations_on_group_algebra(wn2):
    window = Window(-2, 2, 1)
    generators = family_generators(wn2, window, 1)
    assert len(generators) == 9
    solutions = solve_tps(wn2, generators, window)
    assert len(solutions) == 10
    assert solutions[0].trivial
    found = set()
    for solution in solutions[1:]:
        assert not solution.trivial
        w = solution.mutation_element()
        assert len(w) == 1
        b, c = w.terms[0]
        assert c == ONE
        assert solution.agrees_with(mutation(w_plain(wn2), w))
        assert all(set(cs.values()) == {ONE} for cs in solution.assignment().values())
        found.add((b.alpha, b.i))
    assert found == {(GaussianRational(d), m) for d in (-1, 0, 1) for m in (-1, 0, 1)}


def test_solve_tps_on_hwn_is_trivial(hwn1):
    window = Window(-3, 3, 1)
    generators = family_generators(hwn1, window, 1)
    assert len(generators) == 3
    solutions = solve_tps(hwn1, generators, window, output_window=window)
    assert len(solutions) == 1
    assert solutions[0].trivial
    assert solutions[0].report.is_tps


def test_solve_tps_without_generators(witt):
    solutions = solve_tps(witt, [], Window(-1, 1))
    assert len(solutions) == 1
    assert solutions[0].trivial
    assert solutions[0].mutation_element() == Element()


def test_solve_tps_rejects_inconsistent_family(w_ab_b2):
    bad = ShiftMap([ShiftTerm("L", "L", GaussianRational(0), 1, ONE), ShiftTerm("I", "I", GaussianRational(0), 1, ONE)])
    with pytest.raises(InconsistentFamilyError):
        solve_tps(w_ab_b2, [bad], Window(-2, 2))
