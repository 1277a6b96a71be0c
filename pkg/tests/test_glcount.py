import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from twistedgl.errors import BudgetExceeded, CharTwo, SingularSystem
from twistedgl.glcount import (
    TAG_FOR,
    convergence_constant,
    convergence_gap,
    distinct_degree_count,
    distinct_multiplicities,
    expected_statistic,
    fit_multiplicities,
    irreducible_count,
    irreducible_count_brute,
    irreducible_count_formula,
    lhs_conf_sum,
    mobius,
    phi_nk,
    pi_nk,
    rhs_conf_polynomial,
    rhs_conf_sum,
    small_factor_report,
    solve_exact,
    verify_gl,
    bn_type_count,
)
from twistedgl.ffpoly import enumerate_squarefree, degree_profile, field_of_order
from twistedgl.lseries import QLaurent
from twistedgl.symcomb import CharacterPolynomial, ClassFunction, chi_distinct, chi_k, partitions, sign

X1 = CharacterPolynomial.X(1)
X2 = CharacterPolynomial.X(2)
QUAD = CharacterPolynomial.binom_X(1, 2) - X2


@st.composite
def charpoly_st(draw):
    terms = {}
    for _ in range(draw(st.integers(1, 3))):
        exps = (draw(st.integers(0, 2)), draw(st.integers(0, 1)), draw(st.integers(0, 1)))
        terms[exps] = Fraction(draw(st.integers(-3, 3)), draw(st.integers(1, 2)))
    return CharacterPolynomial(terms)


@st.composite
def field_degree(draw, max_total=700):
    qq = draw(st.sampled_from((2, 3, 4, 5, 7)))
    n = draw(st.integers(min_value=1, max_value=6))
    while qq**n > max_total:
        n -= 1
    return qq, n


@st.composite
def random_class_function(draw, n):
    return ClassFunction(n, {mu: draw(st.integers(-3, 3)) for mu in partitions(n)})


# ---------------------------------------------------------------------------
# the identity itself


def test_frozen_values():
    assert lhs_conf_sum(1, 3, 3) == 18
    assert lhs_conf_sum(X1, 3, 5) == 120
    assert rhs_conf_sum(X1, 3, 5) == 120
    assert lhs_conf_sum(QUAD, 3, 5) == -12 == rhs_conf_sum(QUAD, 3, 5)


def test_rhs_polynomial_x1():
    assert rhs_conf_polynomial(X1, 5) == QLaurent({5: 1, 4: -2, 3: 2, 2: -2, 1: 1})
    assert rhs_conf_polynomial(QUAD, 5) == QLaurent({4: -1, 3: 4, 2: -5, 1: 2})


@settings(max_examples=30, deadline=None)
@given(charpoly_st(), field_degree())
def test_identity_for_character_polynomials(P, qn):
    qq, n = qn
    assert lhs_conf_sum(P, qq, n) == rhs_conf_sum(P, qq, n)


@settings(max_examples=20, deadline=None)
@given(st.data())
def test_identity_for_arbitrary_class_functions(data):
    qq, n = data.draw(field_degree(max_total=300))
    f = data.draw(random_class_function(n))
    assert lhs_conf_sum(f, qq, n) == rhs_conf_sum(f, qq, n)


def test_lhs_against_direct_enumeration():
    """Recount via enumerate_squarefree and degree_profile, bypassing the histogram."""
    ctx = field_of_order(4)
    n = 3
    total = Fraction(0)
    for f in enumerate_squarefree(ctx, n):
        prof = degree_profile(ctx, f)
        total += prof.count(1)
    assert total == lhs_conf_sum(X1, ctx, n)


def test_count_report():
    rep = verify_gl(X1, 3, 4)
    assert rep.match and rep.lhs == rep.rhs == 42
    data = json.loads(rep.to_json())
    assert data["lhs"] == "42" and data["match"] is True


def test_budget_propagates():
    with pytest.raises(BudgetExceeded):
        lhs_conf_sum(X1, 7, 6, budget=1000)


# ---------------------------------------------------------------------------
# expectations and fits


@pytest.mark.parametrize("qq", [3, 5])
@pytest.mark.parametrize("n", range(2, 7))
def test_expected_linear_factors(qq, n):
    expected = sum(Fraction(-1, qq) ** i for i in range(n - 1))
    assert expected_statistic(X1, qq, n) == expected


def test_expected_linear_factor_examples():
    assert expected_statistic(X1, 3, 5) == Fraction(20, 27)


def test_fit_x1():
    assert fit_multiplicities(X1, 4, [2, 3, 4, 5, 7]) == [1, 2, 2, 1, 0]


def test_fit_trivial():
    assert fit_multiplicities(1, 4, [2, 3, 5, 7, 9]) == [1, 1, 0, 0, 0]


def test_fit_errors():
    with pytest.raises(SingularSystem):
        fit_multiplicities(X1, 3, [2, 3])
    with pytest.raises(SingularSystem):
        fit_multiplicities(X1, 2, [2, 2, 3])


def test_solve_exact():
    A = [[1, 1], [1, -1], [2, 0]]
    assert solve_exact(A, [3, 1, 4]) == [2, 1]
    with pytest.raises(SingularSystem):
        solve_exact(A, [3, 1, 5])
    with pytest.raises(SingularSystem):
        solve_exact([[1, 1], [2, 2]], [1, 2])


# ---------------------------------------------------------------------------
# prime number theorem and factor statistics


def test_mobius():
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]
    with pytest.raises(ValueError):
        mobius(0)


@pytest.mark.parametrize("qq", [2, 3])
@pytest.mark.parametrize("n", range(1, 9))
def test_irreducible_counts(qq, n):
    assert irreducible_count_formula(qq, n) == irreducible_count_brute(qq, n)
    assert irreducible_count(qq, n) == irreducible_count(qq, n, method="brute")


def test_irreducible_known():
    assert [irreducible_count_formula(2, n) for n in range(1, 9)] == [2, 1, 2, 3, 6, 9, 18, 30]


@pytest.mark.parametrize("n", range(2, 7))
def test_mobius_sum_vanishes(n):
    for qq in (2, 3, 5):
        assert lhs_conf_sum(sign(n), qq, n) == 0


@pytest.mark.parametrize("qq", [2, 3])
@pytest.mark.parametrize("n", range(4, 9))
@pytest.mark.parametrize("k", [1, 2])
def test_small_factor_bounds(qq, n, k):
    rep = small_factor_report(qq, n, k)
    assert rep.phi == phi_nk(qq, n, k)
    assert rep.error == rep.phi - rep.pi * qq**n
    assert rep.holds


def test_pi_nk_examples():
    assert pi_nk(6, 1) == Fraction(1, 6)
    assert pi_nk(6, 2) == Fraction(1, 6) + Fraction(1, 18)


def test_distinct_degree_counts():
    assert [distinct_degree_count(3, n) for n in range(1, 6)] == [3, 3, 17, 42, 126]
    # two distinct linear factors is the only squarefree shape excluded in degree 2
    for qq in (2, 3, 5, 7):
        assert distinct_degree_count(qq, 2) == (qq * qq - qq) // 2


def test_distinct_multiplicities():
    assert distinct_multiplicities(4) == [Fraction(7, 12), 0, Fraction(-7, 12), 0, 0]


@pytest.mark.parametrize("n", range(2, 7))
def test_distinct_identity(n):
    for qq in (2, 3):
        assert lhs_conf_sum(chi_distinct(n), qq, n) == rhs_conf_sum(chi_distinct(n), qq, n)


def test_bn_type_counts():
    assert [bn_type_count(5, n) for n in range(1, 7)] == [4, 12, 72, 360, 1776, 8952]
    assert bn_type_count(3, 1) == 2
    with pytest.raises(CharTwo):
        bn_type_count(4, 2)


def test_bn_type_stabilizes():
    for qq in (3, 5):
        xs = [Fraction(bn_type_count(qq, n), qq**n) for n in range(3, 7)]
        assert all(abs(b - a) <= Fraction(1, qq) for a, b in zip(xs, xs[1:]))


# ---------------------------------------------------------------------------
# convergence to the stable value


@pytest.mark.parametrize("tag", sorted(TAG_FOR))
@pytest.mark.parametrize("qq", [3, 5])
@pytest.mark.parametrize("n", range(2, 7))
def test_convergence_gap(tag, qq, n):
    gap, scale_sq = convergence_gap(tag, qq, n)
    assert gap * gap <= scale_sq


def test_convergence_constant_below_one():
    assert convergence_constant("X1", [3, 5], range(2, 7)) < 1
    assert convergence_constant("P_quad", [3, 5], range(2, 7)) < 1


def test_chi_k_is_phi():
    assert phi_nk(3, 6, 1) == lhs_conf_sum(chi_k(6, 1), 3, 6) == irreducible_count_formula(3, 6)
