"""Both sides of the twisted point count for squarefree polynomials.

For a class function χ on S_n,

    Σ_{f ∈ Conf_n(F_q)} χ(σ_f) = Σ_i (-1)^i q^{n-i} ⟨χ, H^i(P_n)⟩,

where σ_f is the Frobenius permutation of the roots of f. The left side is
computed by enumerating polynomials, the right side from :mod:`braidcoh`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Sequence, Union

from . import braidcoh
from .errors import CharTwo, SingularSystem
from .ffpoly import (
    FqContext,
    _check_budget,
    _gcd,
    _monic_coeff_stream,
    _squarefree,
    cycle_type_histogram,
    field_of_order,
)
from .lseries import QLaurent, QRational, limit_mean
from .symcomb import (
    CharacterPolynomial,
    ClassLike,
    _frac_str,
    as_class_function,
    chi_distinct,
    chi_k,
    inner_product,
    partition_count,
)

FieldLike = Union[FqContext, int]


def _ctx(ctx: FieldLike) -> FqContext:
    return ctx if isinstance(ctx, FqContext) else field_of_order(ctx)


def lhs_conf_sum(
    chi: ClassLike | int,
    ctx: FieldLike,
    n: int,
    *,
    budget: int | None = None,
    jobs: int = 1,
    chunks: int | None = None,
) -> Fraction:
    """Σ over monic squarefree f of degree n of χ(σ_f), by enumeration."""
    ctx = _ctx(ctx)
    f = as_class_function(chi, n)
    hist = cycle_type_histogram(ctx, n, budget=budget, jobs=jobs, chunks=chunks)
    return sum((f.values[mu] * c for mu, c in hist.items()), Fraction(0))


def rhs_conf_polynomial(chi: ClassLike | int, n: int) -> QLaurent:
    """Σ_i (-1)^i ⟨χ, H^i(P_n)⟩ q^{n-i} as a polynomial in q."""
    f = as_class_function(chi, n)
    return QLaurent({n - i: (-1) ** i * braidcoh.ls_multiplicity(f, i, n) for i in range(n + 1)})


def rhs_conf_sum(chi: ClassLike | int, q: int, n: int) -> Fraction:
    """Cohomological side evaluated at an integer q."""
    return rhs_conf_polynomial(chi, n).evaluate(q)


@dataclass
class CountReport:
    q: int
    n: int
    chi_id: str
    lhs: Fraction
    rhs: Fraction
    match: bool = field(init=False)

    def __post_init__(self) -> None:
        self.match = self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "chi_id": self.chi_id,
            "lhs": _frac_str(self.lhs),
            "rhs": _frac_str(self.rhs),
            "match": self.match,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def verify_gl(chi: ClassLike | int, ctx: FieldLike, n: int, *, budget: int | None = None, jobs: int = 1) -> CountReport:
    ctx = _ctx(ctx)
    f = as_class_function(chi, n)
    return CountReport(ctx.q, n, f.canonical_id(), lhs_conf_sum(f, ctx, n, budget=budget, jobs=jobs), rhs_conf_sum(f, ctx.q, n))


def expected_statistic(chi: ClassLike | int, ctx: FieldLike, n: int, *, budget: int | None = None) -> Fraction:
    """Average of χ(σ_f) over Conf_n(F_q), n ≥ 2."""
    if n < 2:
        raise ValueError("n must be at least 2")
    ctx = _ctx(ctx)
    q = ctx.q
    return lhs_conf_sum(chi, ctx, n, budget=budget) / (q**n - q ** (n - 1))


def solve_exact(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """Exact least-squares-free solve of an overdetermined but consistent system."""
    rows = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(A, b)]
    ncols = len(A[0]) if A else 0
    r = 0
    pivots = []
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                m = rows[i][c]
                rows[i] = [x - m * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if r < ncols:
        raise SingularSystem(f"rank {r} < {ncols}")
    if any(row[-1] != 0 for row in rows[r:]):
        raise SingularSystem("inconsistent system")
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][-1]
    return sol


def fit_multiplicities(
    chi: ClassLike | int, n: int, qs: Sequence[int], *, budget: int | None = None
) -> list[Fraction]:
    """Recover a_0..a_n from brute-force counts Σ_i (-1)^i a_i q^{n-i} at each q."""
    qs = list(qs)
    if len(set(qs)) != len(qs):
        raise SingularSystem("the q values must be distinct")
    if len(qs) < n + 1:
        raise SingularSystem(f"need at least {n + 1} values of q, got {len(qs)}")
    A = [[Fraction((-1) ** i * q ** (n - i)) for i in range(n + 1)] for q in qs]
    b = [lhs_conf_sum(chi, q, n, budget=budget) for q in qs]
    return solve_exact(A, b)


# ---------------------------------------------------------------------------
# prime-number-theorem suite


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def irreducible_count_formula(q: int, n: int) -> int:
    """Σ_{ℓ | n} μ(n/ℓ) q^ℓ / n."""
    if n < 1:
        raise ValueError("n must be positive")
    total = sum(mobius(n // l) * q**l for l in range(1, n + 1) if n % l == 0)
    assert total % n == 0
    return total // n


def irreducible_count_brute(ctx: FieldLike, n: int, *, budget: int | None = None) -> int:
    """Number of squarefree f whose Frobenius permutation is an n-cycle."""
    return int(lhs_conf_sum(chi_k(n, 1), ctx, n, budget=budget))


def irreducible_count(q: int, n: int, *, method: str = "formula", budget: int | None = None) -> int:
    if method == "formula":
        return irreducible_count_formula(q, n)
    if method == "brute":
        return irreducible_count_brute(q, n, budget=budget)
    raise ValueError("method is 'formula' or 'brute'")


def phi_nk(ctx: FieldLike, n: int, k: int, *, budget: int | None = None) -> int:
    """Φ(n, k): squarefree f of degree n with no irreducible factor of degree < n/k."""
    return int(lhs_conf_sum(chi_k(n, k), ctx, n, budget=budget))


def pi_nk(n: int, k: int) -> Fraction:
    """π(n, k) = Σ over μ with all parts ≥ n/k of 1/z_μ."""
    return inner_product(chi_k(n, k), 1, n)


@dataclass
class SmallFactorReport:
    q: int
    n: int
    k: int
    phi: int
    pi: Fraction
    error: Fraction
    bound: Fraction
    tight_bound: Fraction

    @property
    def holds(self) -> bool:
        return abs(self.error) <= self.tight_bound <= self.bound


def small_factor_report(ctx: FieldLike, n: int, k: int, *, budget: int | None = None) -> SmallFactorReport:
    """Compare Φ(n,k) with π(n,k) q^n against the geometric-series bound.

    The multiplicities ⟨χ_k, H^i⟩ vanish for 0 < i < n/2k and their absolute
    values sum to at most p(n), so the error is at most
    p(n) q^{n - i0} q/(q-1) with i0 = ⌈n/2k⌉; ``bound`` carries an extra
    factor 2.
    """
    ctx = _ctx(ctx)
    q = ctx.q
    phi = phi_nk(ctx, n, k, budget=budget)
    pi = pi_nk(n, k)
    i0 = max(1, ceil(Fraction(n, 2 * k)))
    tail = Fraction(q ** (n - i0) * q, q - 1)
    return SmallFactorReport(
        q, n, k, phi, pi, phi - pi * q**n, 2 * partition_count(n) * tail, partition_count(n) * tail
    )


def distinct_multiplicities(n: int) -> list[Fraction]:
    """⟨χ_Σ, H^i(P_n)⟩ for i = 0..n, χ_Σ the indicator of distinct cycle lengths."""
    return braidcoh.ls_multiplicities(chi_distinct(n), n)


def distinct_degree_count(ctx: FieldLike, n: int, *, budget: int | None = None) -> int:
    """D_q(n): squarefree f of degree n whose irreducible factors have pairwise distinct degrees."""
    return int(lhs_conf_sum(chi_distinct(n), ctx, n, budget=budget))


def bn_type_count(ctx: FieldLike, n: int, *, budget: int | None = None) -> int:
    """Squarefree monic f of degree n with f(0) ≠ 0 and gcd(f(T), f(-T)) = 1."""
    ctx = _ctx(ctx)
    if ctx.p == 2:
        raise CharTwo("the type-B count needs odd characteristic")
    _check_budget(ctx.q**n, budget)
    neg = ctx.neg
    count = 0
    for c in _monic_coeff_stream(ctx.q, n):
        if c[0] == 0 or not _squarefree(ctx, c):
            continue
        reflected = [x if i % 2 == 0 else neg[x] for i, x in enumerate(c)]
        if len(_gcd(ctx, c, reflected)) == 1:
            count += 1
    return count


# ---------------------------------------------------------------------------
# convergence towards the stable value


TAG_FOR = {"X1": CharacterPolynomial.X(1), "P_quad": CharacterPolynomial.binom_X(1, 2) - CharacterPolynomial.X(2)}


def convergence_gap(tag: str, q: int, n: int) -> tuple[Fraction, Fraction]:
    """(gap, scale²) with gap = |E·(1 - 1/q) - limit| and scale = q^{(deg P - n)/2}.

    E·(1 - 1/q) is q^{-n} Σ_f P(f) and ``limit`` is the exact value
    Σ_i (-1)^i q^{-i} (stable multiplicity) = (1 - 1/q) · residue ratio.
    The scale is returned squared so that it stays an exact rational.
    """
    P = TAG_FOR[tag]
    E = expected_statistic(P, q, n)
    lim: QRational = limit_mean(tag)
    gap = abs(E * (1 - Fraction(1, q)) - lim.evaluate(q))
    scale_sq = Fraction(q) ** (P.degree - n)
    return gap, scale_sq


def convergence_constant(tag: str, qs: Sequence[int], ns: Sequence[int]) -> float:
    """Smallest C with gap ≤ C q^{(deg P - n)/2} over the grid."""
    worst = 0.0
    for q in qs:
        for n in ns:
            gap, scale_sq = convergence_gap(tag, q, n)
            worst = max(worst, float(gap) / float(scale_sq) ** 0.5)
    return worst
