from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from twistedgl.braidcoh import stable_multiplicity
from twistedgl.glcount import lhs_conf_sum, rhs_conf_polynomial
from twistedgl.lseries import (
    TAGS,
    QLaurent,
    QRational,
    RationalSeriesT,
    conf_L,
    limit_mean,
    residue_ratio,
    stable_coefficients,
    tag_polynomial,
    weight_factor,
    weighted_L,
    zeta,
)


@st.composite
def laurent_st(draw, lo=-3, hi=3):
    coeffs = {}
    for k in range(lo, hi + 1):
        if draw(st.booleans()):
            coeffs[k] = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 4)))
    return QLaurent(coeffs)


q = QLaurent.q


# ---------------------------------------------------------------------------
# Laurent polynomials in q


@given(laurent_st(), laurent_st(), laurent_st())
def test_laurent_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == QLaurent()


@given(laurent_st(), laurent_st(), st.integers(min_value=2, max_value=7))
def test_laurent_evaluation_is_a_homomorphism(a, b, x):
    assert (a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x)
    assert (a + b).evaluate(x) == a.evaluate(x) + b.evaluate(x)


@given(laurent_st())
def test_laurent_json_roundtrip(a):
    assert QLaurent.from_json(a.to_json()) == a


def test_laurent_str():
    p = QLaurent({4: -1, 3: 4, 2: -5, 1: 2})
    assert str(p) == "-q^4 + 4q^3 - 5q^2 + 2q"
    assert str(QLaurent()) == "0"
    assert q(-2, 3).inverse_monomial() == q(2, Fraction(1, 3))
    assert p.max_exp == 4 and p.min_exp == 1


# ---------------------------------------------------------------------------
# series in t


@pytest.mark.parametrize("n", range(0, 12))
def test_zeta_and_conf_coefficients(n):
    assert zeta().coefficient(n) == q(n)
    expected = q(n) - q(n - 1) if n >= 2 else q(n)
    assert conf_L().coefficient(n) == expected


@st.composite
def series_st(draw):
    num = [draw(laurent_st(0, 2)) for _ in range(draw(st.integers(1, 3)))]
    den = [QLaurent.const(1)] + [draw(laurent_st(0, 2)) for _ in range(draw(st.integers(0, 2)))]
    return RationalSeriesT(num, den)


@given(series_st())
def test_expansion_times_denominator_is_numerator(s):
    N = 8
    coeffs = s.expand(N)
    for k in range(N + 1):
        acc = QLaurent()
        for j, d in enumerate(s.denominator[: k + 1]):
            acc = acc + d * coeffs[k - j]
        expected = s.numerator[k] if k < len(s.numerator) else QLaurent()
        assert acc == expected


def test_series_arithmetic():
    z = zeta()
    assert (z * z).coefficient(3) == q(3, 4)
    assert (z - z).coefficient(5) == QLaurent()
    geometric = RationalSeriesT([1], [1, -1])
    assert geometric.expand(4) == [QLaurent.const(1)] * 5


def test_x1_coefficient_n5():
    assert weighted_L("X1").coefficient(5) == QLaurent({5: 1, 4: -2, 3: 2, 2: -2, 1: 1})


def test_quad_coefficient_n5():
    # binom(X1,2) - X2 summed over squarefree quintics; brute force gives -12 at q = 3
    assert weighted_L("P_quad").coefficient(5) == QLaurent({4: -1, 3: 4, 2: -5, 1: 2})
    assert weighted_L("P_quad").coefficient(5).evaluate(3) == -12


@pytest.mark.parametrize("tag", TAGS)
@pytest.mark.parametrize("n", range(0, 9))
def test_series_matches_braid_side(tag, n):
    """[t^n] L(tag) equals Σ_i (-1)^i ⟨P, H^i(P_n)⟩ q^{n-i} as polynomials."""
    assert weighted_L(tag).coefficient(n) == rhs_conf_polynomial(tag_polynomial(tag), n)


@pytest.mark.parametrize("tag", TAGS)
@pytest.mark.parametrize("qq,n", [(qq, n) for qq in (2, 3) for n in range(0, 7)] + [(4, 3), (5, 4)])
def test_series_matches_enumeration(tag, qq, n):
    assert weighted_L(tag).coefficient(n).evaluate(qq) == lhs_conf_sum(tag_polynomial(tag), qq, n)


# ---------------------------------------------------------------------------
# stable coefficients


def test_stable_quad_twelve():
    assert stable_coefficients("P_quad", 12) == [1, 4, 7, 8, 9, 12, 15, 16, 17, 20, 23, 24]


def test_stable_quad_mod4_pattern():
    coeffs = stable_coefficients("P_quad", 40)
    for i, a in enumerate(coeffs, start=1):
        assert a == 2 * i + {0: 0, 1: -1, 2: 0, 3: 1}[i % 4]


def test_stable_x1():
    assert stable_coefficients("X1", 10) == [2] * 10
    assert stable_coefficients("X1", 3, start=0) == [1, 2, 2, 2]


@pytest.mark.parametrize("tag", TAGS)
@pytest.mark.parametrize("i", range(1, 4))
def test_stable_series_matches_braid(tag, i):
    assert stable_coefficients(tag, i)[-1] == stable_multiplicity(tag_polynomial(tag), i)


def test_stable_bad_arguments():
    with pytest.raises(ValueError):
        stable_coefficients("X1", -1)
    with pytest.raises(ValueError):
        weight_factor("X9")


# ---------------------------------------------------------------------------
# residues and limits


def test_residue_ratio_x1():
    r = residue_ratio("X1")
    assert r.expand(6) == [1, -1, 1, -1, 1, -1, 1]
    assert r.evaluate(3) == Fraction(3, 4)


def test_residue_ratio_x2():
    r = residue_ratio("X2")
    for x in (2, 3, 7):
        assert r.evaluate(x) == (Fraction(1, 2) - Fraction(1, 2 * x)) / (1 + Fraction(1, x * x))


def test_residue_ratio_binom():
    assert residue_ratio("binomX1_2").expand(3) == [Fraction(1, 2), Fraction(-3, 2), Fraction(5, 2), Fraction(-7, 2)]


def test_residue_ratio_quad_series():
    # expected excess of reducible over irreducible quadratic factors
    assert residue_ratio("P_quad").expand(8) == [0, -1, 3, -4, 4, -5, 7, -8, 8]


@pytest.mark.parametrize("tag", TAGS)
def test_limit_mean_is_alternating_stable_sum(tag):
    """(1 - 1/q)·residue = Σ_i (-1)^i a_i q^{-i} with a_i the stable multiplicities."""
    a = stable_coefficients(tag, 10)
    lim = limit_mean(tag).expand(10)
    assert lim[1:] == [(-1) ** i * x for i, x in enumerate(a, start=1)]
    assert lim[0] == stable_multiplicity(tag_polynomial(tag), 0)


def test_qrational_eq_and_expand():
    r = QRational(QLaurent({0: 1}), QLaurent({0: 1, -1: 1}))
    assert r == QRational(QLaurent({1: 1}), QLaurent({1: 1, 0: 1}))
    assert r.expand(3) == [1, -1, 1, -1]
    with pytest.raises(ZeroDivisionError):
        QRational(QLaurent({0: 1}), QLaurent())
