"""Multiplicities of class functions in the cohomology of the pure braid group.

H^i(P_n) splits as a sum over cycle types μ ⊢ n with n - i cycles of the
induced characters Ind_{Z(c_μ)}^{S_n} ξ_μ, where Z(c_μ) = ∏_j (Z/j ≀ S_{μ_j})
and ξ_μ sends a generator of each Z/j to η_j = (-1)^{j+1} e^{2πi/j} and acts
by the sign of S_{μ_j} when j is even. By Frobenius reciprocity

    ⟨χ, Ind ξ_μ⟩ = (1/z_μ) Σ_{g ∈ Z(c_μ)} χ(g) conj(ξ_μ(g)).

For a fixed n the inner sum only depends on χ through the cycle type of g in
S_n, so everything reduces to a kernel K[i][ν] with exact rational entries;
each entry is certified rational by reducing a cyclotomic sum modulo Φ_m.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial, gcd, lcm
from pathlib import Path
from typing import Iterator, Mapping

from .errors import NonRationalResult
from .symcomb import (
    CharacterPolynomial,
    ClassFunction,
    ClassLike,
    CycleType,
    MuLike,
    Parts,
    as_class_function,
    as_parts,
    counts_of,
    partitions,
    sign_of,
    z_mu,
    _frac_str,
)


# ---------------------------------------------------------------------------
# exact cyclotomic numbers


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Φ_m, lowest degree first."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            den = cyclotomic_polynomial(d)
            # exact division of integer polynomials by a monic divisor
            quot = [0] * (len(num) - len(den) + 1)
            for k in range(len(num) - 1, len(den) - 2, -1):
                c = num[k]
                if c:
                    quot[k - len(den) + 1] = c
                    for i, b in enumerate(den):
                        num[k - len(den) + 1 + i] -= c * b
            num = quot
    return tuple(num)


class Cyclotomic:
    """An element Σ c_k ζ_m^k of Q(ζ_m), ζ_m = e^{2πi/m}."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Mapping[int, Fraction | int] | None = None):
        self.m = m
        clean: dict[int, Fraction] = {}
        for k, c in (coeffs or {}).items():
            k %= m
            clean[k] = clean.get(k, Fraction(0)) + Fraction(c)
        self.coeffs = {k: c for k, c in clean.items() if c != 0}

    @classmethod
    def root(cls, m: int, k: int = 1) -> "Cyclotomic":
        return cls(m, {k: 1})

    @classmethod
    def rational(cls, c: Fraction | int) -> "Cyclotomic":
        return cls(1, {0: c})

    def lift(self, m: int) -> "Cyclotomic":
        if m % self.m:
            raise ValueError(f"Q(ζ_{self.m}) does not embed in Q(ζ_{m})")
        f = m // self.m
        return Cyclotomic(m, {k * f: c for k, c in self.coeffs.items()})

    def _common(self, other: "Cyclotomic") -> tuple["Cyclotomic", "Cyclotomic"]:
        if self.m == other.m:
            return self, other
        m = lcm(self.m, other.m)
        return self.lift(m), other.lift(m)

    def __add__(self, other: "Cyclotomic") -> "Cyclotomic":
        a, b = self._common(other)
        coeffs = dict(a.coeffs)
        for k, c in b.coeffs.items():
            coeffs[k] = coeffs.get(k, Fraction(0)) + c
        return Cyclotomic(a.m, coeffs)

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.m, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "Cyclotomic") -> "Cyclotomic":
        return self + (-other)

    def __mul__(self, other: "Cyclotomic | Fraction | int") -> "Cyclotomic":
        if not isinstance(other, Cyclotomic):
            return Cyclotomic(self.m, {k: c * other for k, c in self.coeffs.items()})
        a, b = self._common(other)
        out: dict[int, Fraction] = {}
        m = a.m
        for k1, c1 in a.coeffs.items():
            for k2, c2 in b.coeffs.items():
                k = (k1 + k2) % m
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return Cyclotomic(m, out)

    __rmul__ = __mul__

    def conj(self) -> "Cyclotomic":
        return Cyclotomic(self.m, {-k: c for k, c in self.coeffs.items()})

    def reduced(self) -> list[Fraction]:
        """Coefficients of the remainder modulo Φ_m, lowest degree first."""
        phi = cyclotomic_polynomial(self.m)
        deg = len(phi) - 1
        poly = [Fraction(0)] * max(self.m, 1)
        for k, c in self.coeffs.items():
            poly[k] += c
        for k in range(len(poly) - 1, deg - 1, -1):
            c = poly[k]
            if c:
                for i, b in enumerate(phi):
                    poly[k - deg + i] -= c * b
        rem = poly[:deg]
        while rem and rem[-1] == 0:
            rem.pop()
        return rem

    def is_rational(self) -> bool:
        return len(self.reduced()) <= 1

    def to_rational(self) -> Fraction:
        rem = self.reduced()
        if len(rem) > 1:
            raise NonRationalResult(f"element of Q(ζ_{self.m}) is not rational: {rem}")
        return rem[0] if rem else Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return not (self - other).reduced()

    def __hash__(self) -> int:  # pragma: no cover
        return hash(tuple(self.reduced()))

    def __complex__(self) -> complex:
        import cmath

        return sum((complex(c) * cmath.exp(2j * cmath.pi * k / self.m) for k, c in self.coeffs.items()), 0j)

    def __repr__(self) -> str:
        terms = " + ".join(f"{_frac_str(c)}ζ^{k}" for k, c in sorted(self.coeffs.items()))
        return f"Cyclotomic(m={self.m}: {terms or '0'})"


def eta_exponent(j: int) -> tuple[int, int]:
    """(o, k) with η_j = (-1)^{j+1} e^{2πi/j} = ζ_o^k and o the exact order of η_j."""
    if j % 2:
        return j, 1
    # -ζ_j = ζ_{2j}^{j+2}
    m, k = 2 * j, (j + 2) % (2 * j)
    g = gcd(m, k) if k else m
    return m // g, k // g


def eta(j: int) -> Cyclotomic:
    o, k = eta_exponent(j)
    return Cyclotomic.root(o, k)


# ---------------------------------------------------------------------------
# centralizer elements


@dataclass(frozen=True)
class CentralizerElement:
    """An element of ∏_j (Z/j ≀ S_{μ_j}).

    ``blocks[j] = (tau, twists)``: tau permutes the μ_j blocks of j-cycles
    (tau[b] is the image of block b) and twists[b] ∈ Z/j is the rotation
    applied while moving block b.
    """

    blocks: tuple[tuple[int, tuple[int, ...], tuple[int, ...]], ...]

    def block(self, j: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        for jj, tau, tw in self.blocks:
            if jj == j:
                return tau, tw
        raise KeyError(j)


def _perm_sign(tau: tuple[int, ...]) -> int:
    seen = [False] * len(tau)
    s = 1
    for i in range(len(tau)):
        if not seen[i]:
            ln = 0
            k = i
            while not seen[k]:
                seen[k] = True
                k = tau[k]
                ln += 1
            if ln % 2 == 0:
                s = -s
    return s


def _perm_cycles(tau: tuple[int, ...]) -> list[list[int]]:
    seen = [False] * len(tau)
    out = []
    for i in range(len(tau)):
        if not seen[i]:
            cyc = []
            k = i
            while not seen[k]:
                seen[k] = True
                cyc.append(k)
                k = tau[k]
            out.append(cyc)
    return out


def iter_centralizer(mu: MuLike) -> Iterator[CentralizerElement]:
    """Every element of Z(c_μ), z_μ of them, in a fixed order."""
    counts = counts_of(mu)
    factors = []
    for j, m in enumerate(counts, start=1):
        if m:
            factors.append(
                [(j, tau, tw) for tau in permutations(range(m)) for tw in product(range(j), repeat=m)]
            )
    for combo in product(*factors):
        yield CentralizerElement(tuple(combo))


def xi_value(mu: MuLike, g: CentralizerElement) -> Cyclotomic:
    """ξ_μ(g) = ∏_j η_j^{Σ twists} · (sign τ_j if j is even)."""
    out = Cyclotomic.rational(1)
    for j, tau, tw in g.blocks:
        o, k = eta_exponent(j)
        val = Cyclotomic.root(o, k * sum(tw))
        if j % 2 == 0:
            val = val * _perm_sign(tau)
        out = out * val
    return out


def wreath_image_cycle_type(mu: MuLike, g: CentralizerElement) -> CycleType:
    """Cycle type of g as a permutation of the n underlying points.

    A tau-cycle of length ℓ with total twist t gives gcd(j, t) cycles of
    length ℓ·j/gcd(j, t) (with gcd(j, 0) = j).
    """
    parts: list[int] = []
    for j, tau, tw in g.blocks:
        for cyc in _perm_cycles(tau):
            t = sum(tw[b] for b in cyc) % j
            d = gcd(j, t) if t else j
            parts.extend([len(cyc) * j // d] * d)
    return CycleType.from_parts(parts)


def element_of(mu: MuLike) -> CentralizerElement:
    """c_μ itself: every tau trivial and every twist equal to 1."""
    counts = counts_of(mu)
    blocks = []
    for j, m in enumerate(counts, start=1):
        if m:
            blocks.append((j, tuple(range(m)), tuple([1 % j] * m)))
    return CentralizerElement(tuple(blocks))


# ---------------------------------------------------------------------------
# aggregated centralizer sums


def _merge(a: Parts, b: Parts) -> Parts:
    return tuple(sorted(a + b, reverse=True))


Dist = dict[Parts, Cyclotomic]


def _convolve(a: Dist, b: Dist) -> Dist:
    out: Dist = {}
    for pa, ca in a.items():
        for pb, cb in b.items():
            key = _merge(pa, pb)
            val = ca * cb
            out[key] = out[key] + val if key in out else val
    return out


@lru_cache(maxsize=None)
def _cycle_factor(j: int, ell: int) -> tuple[tuple[Parts, Cyclotomic], ...]:
    """Sum over the ℓ twists on one tau-cycle of length ℓ inside Z/j ≀ S_m."""
    o, k = eta_exponent(j)
    dist: Dist = {}
    weight = j ** (ell - 1)  # twist vectors along the cycle with a given total
    for t in range(j):
        d = gcd(j, t) if t else j
        parts = tuple([ell * j // d] * d)
        val = Cyclotomic.root(o, -k * t) * weight
        dist[parts] = dist[parts] + val if parts in dist else val
    return tuple(dist.items())


@lru_cache(maxsize=None)
def _block_distribution(j: int, m: int) -> tuple[tuple[Parts, Cyclotomic], ...]:
    """Σ over Z/j ≀ S_m of conj ξ, bucketed by the image cycle type."""
    total: Dist = {}
    fm = factorial(m)
    for lam in partitions(m):
        coeff = fm // z_mu(lam)
        if j % 2 == 0:
            coeff *= sign_of(lam)
        dist: Dist = {(): Cyclotomic.rational(1)}
        for ell in lam:
            dist = _convolve(dist, dict(_cycle_factor(j, ell)))
        for parts, val in dist.items():
            val = val * coeff
            total[parts] = total[parts] + val if parts in total else val
    return tuple(total.items())


@lru_cache(maxsize=None)
def centralizer_sums(mu: Parts) -> dict[Parts, Fraction]:
    """C_μ[ν] = Σ_{g ∈ Z(c_μ), type(g) = ν} conj ξ_μ(g), each certified rational."""
    counts = counts_of(mu)
    dist: Dist = {(): Cyclotomic.rational(1)}
    for j, m in enumerate(counts, start=1):
        if m:
            dist = _convolve(dist, dict(_block_distribution(j, m)))
    out = {}
    for nu, val in dist.items():
        r = val.to_rational()
        if r:
            out[nu] = r
    return out


def mu_contribution(chi: ClassLike, mu: MuLike) -> Fraction:
    """⟨χ, Ind_{Z(c_μ)}^{S_n} ξ_μ⟩ for a single cycle type μ ⊢ n."""
    mu_p = as_parts(mu)
    n = sum(mu_p)
    f = as_class_function(chi, n)
    sums = centralizer_sums(mu_p)
    return sum((f.values[nu] * c for nu, c in sums.items()), Fraction(0)) / z_mu(mu_p)


@lru_cache(maxsize=None)
def ls_kernel(n: int) -> tuple[dict[Parts, Fraction], ...]:
    """K[i][ν] with ⟨χ, H^i(P_n)⟩ = Σ_ν χ(ν) K[i][ν], for i = 0..n-1."""
    rows: list[dict[Parts, Fraction]] = [dict() for _ in range(max(n, 1))]
    for mu in partitions(n):
        i = n - len(mu)
        z = z_mu(mu)
        row = rows[i]
        for nu, c in centralizer_sums(mu).items():
            row[nu] = row.get(nu, Fraction(0)) + Fraction(c, z)
    return tuple(rows)


def ls_multiplicity(chi: ClassLike, i: int, n: int) -> Fraction:
    """⟨χ, H^i(P_n; Q)⟩ exactly."""
    if i < 0 or n < 0:
        raise ValueError("need i >= 0 and n >= 0")
    if i >= max(n, 1):
        return Fraction(0)
    f = as_class_function(chi, n)
    row = ls_kernel(n)[i]
    return sum((f.values[nu] * c for nu, c in row.items()), Fraction(0))


def ls_multiplicities(chi: ClassLike, n: int) -> list[Fraction]:
    """[⟨χ, H^i(P_n)⟩ for i = 0..n]."""
    return [ls_multiplicity(chi, i, n) for i in range(n + 1)]


def ls_multiplicity_direct(chi: ClassLike, i: int, n: int) -> Fraction:
    """Same quantity by walking every element of every centralizer (slow oracle)."""
    f = as_class_function(chi, n)
    total = Cyclotomic.rational(0)
    for mu in partitions(n):
        if n - len(mu) != i:
            continue
        acc = Cyclotomic.rational(0)
        for g in iter_centralizer(mu):
            acc = acc + xi_value(mu, g).conj() * f(wreath_image_cycle_type(mu, g))
        total = total + acc * Fraction(1, z_mu(mu))
    return total.to_rational()


def stable_multiplicity(P: CharacterPolynomial, i: int) -> Fraction:
    """⟨P, H^i(P_n)⟩ evaluated at n = 2i + deg P, where it is already constant."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    n = max(2 * i + P.degree, 1)
    return ls_multiplicity(P, i, n)


def dim_hi(i: int, n: int) -> int:
    """dim H^i(P_n) = number of permutations of n with n - i cycles."""
    if n == 0:
        return int(i == 0)
    return sum(factorial(n) // z_mu(mu) for mu in partitions(n) if n - len(mu) == i)


# ---------------------------------------------------------------------------
# persistent multiplicity table


CACHE_ENV = "TWISTEDGL_CACHE"


class MultiplicityTable:
    """Cache of ⟨χ, H^i(P_n)⟩ keyed by ``"(chi_id, i, n)"`` with values ``"a/b"``.

    ``chi_id`` is :meth:`ClassFunction.canonical_id` of the restricted class
    function, so two descriptions of the same function share entries.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path else None
        self.entries: dict[tuple[str, int, int], Fraction] = {}
        self.hits = 0
        self.misses = 0
        if self.path and self.path.exists():
            self.load()

    @staticmethod
    def _key(chi_id: str, i: int, n: int) -> str:
        return f"({chi_id}, {i}, {n})"

    def load(self) -> None:
        assert self.path is not None
        raw = json.loads(self.path.read_text())
        for key, val in raw.items():
            chi_id, i, n = (s.strip() for s in key.strip("()").split(","))
            self.entries[(chi_id, int(i), int(n))] = Fraction(val)

    def save(self) -> None:
        if not self.path:
            return
        data = {self._key(*k): _frac_str(v) for k, v in sorted(self.entries.items())}
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        tmp.write_text(json.dumps(data, indent=1, sort_keys=True))
        tmp.replace(self.path)

    def get(self, chi: ClassLike, i: int, n: int) -> Fraction:
        f = as_class_function(chi, n)
        key = (f.canonical_id(), i, n)
        if key in self.entries:
            self.hits += 1
            return self.entries[key]
        self.misses += 1
        val = ls_multiplicity(f, i, n)
        self.entries[key] = val
        return val

    def row(self, chi: ClassLike, n: int) -> list[Fraction]:
        return [self.get(chi, i, n) for i in range(n + 1)]

    def __len__(self) -> int:
        return len(self.entries)
