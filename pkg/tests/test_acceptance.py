"""Acceptance criteria 1 to 10, each with its runtime bound.

Run under pytest (a PASS/FAIL line per criterion appears in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import sys
import time
from fractions import Fraction
from math import comb, factorial

from twistedgl import ffpoly
from twistedgl.braidcoh import MultiplicityTable, ls_multiplicities, ls_multiplicity
from twistedgl.ffpoly import field_of_order, squarefree_count
from twistedgl.glcount import (
    expected_statistic,
    fit_multiplicities,
    irreducible_count_brute,
    irreducible_count_formula,
    lhs_conf_sum,
    rhs_conf_sum,
    small_factor_report,
)
from twistedgl.lseries import QLaurent, stable_coefficients
from twistedgl.symcomb import (
    CharacterPolynomial,
    ClassFunction,
    as_class_function,
    character_table,
    chi_distinct,
    chi_k,
    exterior_power_character,
    inner_product,
    maj_counts,
    partition_count,
    partitions,
    sign,
    z_mu,
)
from twistedgl.toristat import (
    pnt_tori,
    pnt_tori_formula,
    tori_bruteforce,
    tori_polynomial,
    tori_quadratic_excess_series,
    tori_statistic,
)

X1 = CharacterPolynomial.X(1)
X2 = CharacterPolynomial.X(2)
QUAD = CharacterPolynomial.binom_X(1, 2) - X2


class timed:
    """Clear the enumeration memo and assert a wall-clock bound on the block."""

    def __init__(self, limit: float | None):
        self.limit = limit

    def __enter__(self):
        ffpoly._HIST_CACHE.clear()
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None and self.limit is not None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"
        return False


def test_01_squarefree_counts():
    with timed(10):
        for q in (2, 3, 4, 5):
            for n in range(2, 7):
                assert squarefree_count(field_of_order(q), n) == q**n - q ** (n - 1)
        assert squarefree_count(field_of_order(3), 3) == 18
        assert squarefree_count(field_of_order(11), 3) == 1210


def test_02_twisted_identity():
    with timed(120):
        for q in (2, 3, 5):
            for n in range(2, 7):
                stats = (1, X1, QUAD, sign(n), chi_k(n, 1), chi_distinct(n))
                for chi in stats:
                    assert lhs_conf_sum(chi, q, n) == rhs_conf_sum(chi, q, n), (q, n)
        assert lhs_conf_sum(X1, 3, 5) == 120 == rhs_conf_sum(X1, 3, 5)
        assert lhs_conf_sum(X1, 11, 5) == 134200 == rhs_conf_sum(X1, 11, 5)


def test_03_braid_multiplicities():
    with timed(60):
        for n in range(1, 9):
            for i in range(1, n + 3):
                expected = 0 if n <= i else 1 if n == i + 1 else 2
                assert ls_multiplicity(X1, i, n) == expected, (i, n)
        for n in range(2, 9):
            assert all(m == 0 for m in ls_multiplicities(sign(n), n))


def test_04_stable_quadratic_excess():
    with timed(1):
        series = stable_coefficients("P_quad", 12)
    assert series == [1, 4, 7, 8, 9, 12, 15, 16, 17, 20, 23, 24]
    for i, a in enumerate(series, start=1):
        assert a == 2 * i + {0: 0, 1: -1, 2: 0, 3: 1}[i % 4]
    table = MultiplicityTable()
    with timed(300):
        for i in range(1, 5):
            n = 2 * i + 2
            assert table.get(QUAD, i, n) == series[i - 1]
    assert len(table) == 4


def test_05_fitting():
    primes = [2, 3, 5, 7, 11, 13]
    with timed(60):
        assert fit_multiplicities(X1, 5, primes) == [1, 2, 2, 2, 1, 0]
        assert fit_multiplicities(QUAD, 5, primes) == [0, 1, 4, 5, 2, 0]


def test_06_expected_linear_factors():
    with timed(None):
        for q in (3, 11):
            for n in range(3, 7):
                closed = sum(Fraction(-1, q) ** i for i in range(n - 1))
                assert expected_statistic(X1, q, n) == closed, (q, n)
        assert expected_statistic(X1, 3, 5) == Fraction(20, 27)
        assert expected_statistic(X1, 11, 5) == Fraction(1220, 1331)


def test_07_prime_polynomial_theorem():
    with timed(None):
        for q in (2, 3):
            for n in range(1, 9):
                assert irreducible_count_formula(q, n) == irreducible_count_brute(q, n), (q, n)
        for q in (2, 3):
            for n in range(4, 9):
                for k in (1, 2):
                    assert small_factor_report(q, n, k).holds, (q, n, k)


def test_08_tori():
    with timed(30):
        for n in range(1, 9):
            top = n * n - n
            assert tori_polynomial(1, n) == QLaurent({top: 1})
            assert tori_polynomial(X1, n) == QLaurent({top - i: 1 for i in range(n)})
            assert tori_polynomial(sign(n), n) == QLaurent({comb(n, 2): 1})
            for q in (2, 3, 5):
                assert pnt_tori(q, n, method="formula") == pnt_tori(q, n, method="chi1")
        excess = tori_quadratic_excess_series(8)
        assert [excess.coeff(-i) for i in range(1, 5)] == [1, 1, 2, 2]


def test_09_tori_bruteforce():
    with timed(120):
        for q in (2, 3, 4, 5, 7):
            counts = tori_bruteforce(q, 2)
            assert sum(counts.values()) == q**2
            assert counts[(1, 1)] == comb(q + 1, 2)
            assert counts[(2,)] == pnt_tori_formula(q, 2)
        counts = tori_bruteforce(2, 3)
        assert sum(counts.values()) == 64
        assert counts[(3,)] == pnt_tori_formula(2, 3)
        for mu, c in counts.items():
            indicator = ClassFunction(3, {nu: int(nu == mu) for nu in partitions(3)})
            assert tori_statistic(indicator, 2, 3) == c


def test_10_structural_invariants():
    with timed(None):
        for n in range(1, 9):
            # Chevalley: the graded pieces of R add up to the regular representation
            table = character_table(n)
            for lam, chi in table.items():
                assert sum(maj_counts(lam)) == chi((1,) * n)
            assert sum(sum(maj_counts(lam)) ** 2 for lam in partitions(n)) == factorial(n)
            for a in table.values():
                for b in table.values():
                    assert inner_product(a, b) == (1 if a is b else 0)
            assert sum(Fraction(factorial(n), z_mu(mu)) for mu in partitions(n)) == factorial(n)
            for mu in partitions(n):
                counts = [mu.count(j) for j in range(1, max(mu) + 1)]
                P = CharacterPolynomial.binom_mu(counts)
                assert inner_product(P, 1, n) == Fraction(1, z_mu(mu))
            total = as_class_function(0, n)
            for k in range(n):
                total = total + exterior_power_character(k, n) * (-1) ** k
            assert total == chi_k(n, 1) * n
            for f in (chi_k(n, 1), chi_k(n, 2), chi_k(n, 3), chi_distinct(n), sign(n)):
                mults = ls_multiplicities(f, n)
                assert all(abs(m) <= partition_count(2 * i) for i, m in enumerate(mults))
                assert sum(abs(m) for m in mults) <= partition_count(n)
            for k in (1, 2, 3):
                for i in range(1, n):
                    if 2 * k * i < n:
                        assert ls_multiplicity(chi_k(n, k), i, n) == 0


CRITERIA = [
    (1, "squarefree counts", test_01_squarefree_counts),
    (2, "twisted point-count identity", test_02_twisted_identity),
    (3, "braid multiplicity table", test_03_braid_multiplicities),
    (4, "stable quadratic excess", test_04_stable_quadratic_excess),
    (5, "unstable dimensions by fitting", test_05_fitting),
    (6, "expected linear factors", test_06_expected_linear_factors),
    (7, "prime polynomial theorem", test_07_prime_polynomial_theorem),
    (8, "tori statistics", test_08_tori),
    (9, "tori brute-force oracle", test_09_tori_bruteforce),
    (10, "structural invariants", test_10_structural_invariants),
]


if __name__ == "__main__":
    failed = 0
    for k, label, fn in CRITERIA:
        t0 = time.perf_counter()
        try:
            fn()
            status = "PASS"
        except AssertionError as exc:
            status, failed = f"FAIL ({exc})", failed + 1
        print(f"[{status}] criterion {k}: {label} ({time.perf_counter() - t0:.1f}s)")
    sys.exit(1 if failed else 0)
