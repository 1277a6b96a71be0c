"""Statistics of maximal tori in GL_n(F_q).

A maximal torus T determines a permutation σ_T (Frobenius acting on its n
eigenlines), and for a class function χ on S_n

    Σ_T χ(σ_T) = Σ_i q^{n²-n-i} ⟨χ, R_i⟩,

with R_i the degree-i piece of the coinvariant algebra. ⟨V_λ, R_i⟩ is the
number of standard tableaux of shape λ with major index i, so everything
reduces to tableau counts plus Murnaghan-Nakayama decompositions.
:func:`tori_bruteforce` enumerates tori directly for n ∈ {2, 3}.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb, lcm, prod

from .errors import OutOfRange, Unsupported
from .ffpoly import FqContext, ext_frobenius, field_of_order, make_field
from .lseries import QLaurent
from .symcomb import (
    ClassLike,
    MuLike,
    Parts,
    as_class_function,
    as_parts,
    chi_k,
    decompose,
    exterior_power_character,
    maj_counts,
    partitions,
)


@dataclass(frozen=True)
class GradedTable:
    """rows[λ][i] = ⟨V_λ, R_i⟩ for i = 0..binom(n, 2)."""

    n: int
    rows: dict

    def dims(self) -> list[int]:
        """dim R_i = Σ_λ dim V_λ · ⟨V_λ, R_i⟩."""
        top = comb(self.n, 2)
        return [sum(sum(row) * row[i] for row in self.rows.values()) for i in range(top + 1)]

    def to_json(self) -> str:
        body = [{"lambda": list(lam), "mult": list(row)} for lam, row in self.rows.items()]
        return json.dumps({"n": self.n, "rows": body})

    @classmethod
    def from_json(cls, text: str) -> "GradedTable":
        data = json.loads(text)
        return cls(data["n"], {tuple(r["lambda"]): tuple(r["mult"]) for r in data["rows"]})


def graded_table(n: int) -> GradedTable:
    return GradedTable(n, {lam: maj_counts(lam) for lam in partitions(n)})


def r_multiplicity(lam: MuLike, i: int, n: int) -> int:
    """⟨V_λ, R_i⟩: standard tableaux of shape λ with major index i."""
    shape = as_parts(lam)
    if sum(shape) != n:
        raise OutOfRange(f"{shape} is not a partition of {n}")
    if not 0 <= i <= comb(n, 2):
        raise OutOfRange(f"need 0 <= i <= {comb(n, 2)}")
    return maj_counts(shape)[i]


def r_multiplicities(chi: ClassLike | int, n: int) -> list[Fraction]:
    """⟨χ, R_i⟩ for i = 0..binom(n, 2)."""
    top = comb(n, 2)
    out = [Fraction(0)] * (top + 1)
    for lam, m in decompose(chi, n).items():
        for i, c in enumerate(maj_counts(lam)):
            if c:
                out[i] += m * c
    return out


def tori_polynomial(chi: ClassLike | int, n: int) -> QLaurent:
    """Σ_T χ(σ_T) as a polynomial in q."""
    top = n * n - n
    return QLaurent({top - i: m for i, m in enumerate(r_multiplicities(chi, n))})


def tori_statistic(chi: ClassLike | int, q: int, n: int) -> Fraction:
    return tori_polynomial(chi, n).evaluate(q)


def _wedge2(n: int):
    from .symcomb import CharacterPolynomial

    return CharacterPolynomial.binom_X(1, 2) - CharacterPolynomial.X(2)


def tori_quadratic_excess_series(n: int) -> QLaurent:
    """q^{-(n²-n)} Σ_T (binom(X_1,2) - X_2)(σ_T) as a polynomial in q^{-1}."""
    return tori_polynomial(_wedge2(n), n).shift(-(n * n - n))


def tori_quadratic_excess(q: int, n: int) -> Fraction:
    if n < 2:
        raise OutOfRange("n must be at least 2")
    return tori_quadratic_excess_series(n).evaluate(q)


def pnt_tori_formula(q: int, n: int) -> int:
    """Number of irreducible maximal tori: q^{binom(n,2)}/n · ∏_{j<n} (q^j - 1)."""
    num = q ** comb(n, 2) * prod(q**j - 1 for j in range(1, n))
    assert num % n == 0
    return num // n


def pnt_tori_hooks(q: int, n: int) -> Fraction:
    """Same count from n·χ_(n) = Σ_k (-1)^k χ_{V_k} with V_k the hook (n-k, 1^k).

    Hook tableaux with k boxes in the leg correspond to k-subsets S of
    {1..n-1} (their descent sets), with major index Σ S.
    """
    top = n * n - n
    total = Fraction(0)
    for k in range(n):
        for S in combinations(range(1, n), k):
            total += (-1) ** k * Fraction(q) ** (top - sum(S))
    return total / n


def pnt_tori_chi1(q: int, n: int) -> Fraction:
    """Same count from the pointwise identity, using generic decompositions of each χ_{V_k}."""
    total = Fraction(0)
    for k in range(n):
        total += (-1) ** k * tori_statistic(exterior_power_character(k, n), q, n)
    return total / n


def pnt_tori(q: int, n: int, *, method: str = "formula") -> Fraction | int:
    if n < 1:
        raise OutOfRange("n must be positive")
    if method == "formula":
        return pnt_tori_formula(q, n)
    if method == "hooks":
        return pnt_tori_hooks(q, n)
    if method == "chi1":
        return pnt_tori_chi1(q, n)
    if method == "generic":
        return tori_statistic(chi_k(n, 1), q, n)
    raise ValueError("method is one of formula, hooks, chi1, generic")


# ---------------------------------------------------------------------------
# brute-force enumeration of tori


def _det(ctx: FqContext, rows: list[tuple[int, ...]]) -> int:
    """Determinant by Gaussian elimination in the field."""
    m = [list(r) for r in rows]
    size = len(m)
    mul, sub, inv = ctx.mul, ctx.sub, ctx.inv
    det = 1
    for c in range(size):
        piv = next((r for r in range(c, size) if m[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = ctx.neg[det]
        det = mul[det][m[c][c]]
        iv = inv[m[c][c]]
        for r in range(c + 1, size):
            if m[r][c]:
                f = mul[m[r][c]][iv]
                m[r] = [sub[a][mul[f][b]] for a, b in zip(m[r], m[c])]
    return det


def _subfield(ctx: FqContext, order: int) -> list[int]:
    """Elements x of the big field with x^order = x."""
    return [x for x in ctx.elements() if ctx.pow(x, order) == x]


def tori_bruteforce(q: int, n: int) -> dict[Parts, int]:
    """Count maximal tori of GL_n(F_q) by the cycle type of Frobenius on their lines.

    Lines are points of P^{n-1} over F_{q^d}, d ≤ n, normalised so the first
    nonzero coordinate is 1, inside the single field F_{q^L}, L = lcm(1..n).
    A torus is a Frobenius-stable set of n lines in general position, i.e. a
    union of Frobenius orbits whose sizes add up to n and whose
    representatives have nonzero determinant.
    """
    if n not in (2, 3):
        raise Unsupported("brute-force tori only for n in {2, 3}")
    base = field_of_order(q)
    L = lcm(*range(1, n + 1))
    big = make_field(base.p, base.e * L)

    points: set[tuple[int, ...]] = set()
    for d in range(1, n + 1):
        sub = _subfield(big, q**d)
        for lead in range(n):
            for tail in product(sub, repeat=n - lead - 1):
                points.add((0,) * lead + (1,) + tail)

    def frob(pt: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(ext_frobenius(big, x, q) for x in pt)

    orbits_by_size: dict[int, list[tuple[tuple[int, ...], ...]]] = {}
    seen: set[tuple[int, ...]] = set()
    for pt in sorted(points):
        if pt in seen:
            continue
        orbit = [pt]
        nxt = frob(pt)
        while nxt != pt:
            orbit.append(nxt)
            nxt = frob(nxt)
        seen.update(orbit)
        orbits_by_size.setdefault(len(orbit), []).append(tuple(orbit))

    counts: Counter = Counter()
    for mu in partitions(n):
        # choose distinct orbits for each part size
        need = Counter(mu)
        pools = [combinations(orbits_by_size.get(size, []), m) for size, m in sorted(need.items())]
        for choice in product(*pools):
            lines = [pt for group in choice for orbit in group for pt in orbit]
            if _det(big, lines):
                counts[mu] += 1
    return {mu: counts.get(mu, 0) for mu in partitions(n)}


def bruteforce_statistic(chi: ClassLike | int, q: int, n: int) -> Fraction:
    """Σ_T χ(σ_T) from :func:`tori_bruteforce`."""
    f = as_class_function(chi, n)
    return sum((f(mu) * c for mu, c in tori_bruteforce(q, n).items()), Fraction(0))
