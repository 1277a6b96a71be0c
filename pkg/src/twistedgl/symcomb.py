"""Symmetric-group combinatorics with exact rational values.

Partitions and cycle types, centralizer orders, character polynomials in
X_1, X_2, ..., dense class functions, Murnaghan-Nakayama characters, and
standard Young tableaux with their descent sets and major indices.

Internally a cycle type is a weakly decreasing tuple of cycle lengths; the
:class:`Partition` and :class:`CycleType` wrappers are accepted anywhere a
tuple is.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial, prod
from typing import Callable, Iterable, Iterator, Mapping, Union

from .errors import OutOfRange, SizeMismatch

Parts = tuple[int, ...]
Rational = Union[int, Fraction]


# ---------------------------------------------------------------------------
# partitions and cycle types


@dataclass(frozen=True, order=True)
class Partition:
    """A partition λ stored as a weakly decreasing tuple of positive parts."""

    parts: Parts

    def __post_init__(self) -> None:
        parts = tuple(int(x) for x in self.parts)
        if any(x < 1 for x in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class CycleType:
    """Cycle counts μ_i (number of i-cycles), stored 1-indexed as ``counts[i-1]``."""

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        counts = [int(c) for c in self.counts]
        if any(c < 0 for c in counts):
            raise ValueError(f"cycle counts must be nonnegative: {counts}")
        while counts and counts[-1] == 0:
            counts.pop()
        object.__setattr__(self, "counts", tuple(counts))

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "CycleType":
        parts = list(parts)
        counts = [0] * (max(parts) if parts else 0)
        for p in parts:
            counts[p - 1] += 1
        return cls(tuple(counts))

    def mu(self, i: int) -> int:
        """Number of i-cycles."""
        return self.counts[i - 1] if 1 <= i <= len(self.counts) else 0

    @property
    def n(self) -> int:
        return sum((i + 1) * c for i, c in enumerate(self.counts))

    @property
    def parts(self) -> Parts:
        out: list[int] = []
        for i in range(len(self.counts), 0, -1):
            out.extend([i] * self.counts[i - 1])
        return tuple(out)

    @property
    def num_cycles(self) -> int:
        return sum(self.counts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


MuLike = Union[Partition, CycleType, Iterable[int]]


def as_parts(mu: MuLike) -> Parts:
    """Coerce a partition-like object to a weakly decreasing tuple."""
    if isinstance(mu, CycleType):
        return mu.parts
    if isinstance(mu, Partition):
        return mu.parts
    return tuple(sorted((int(x) for x in mu if int(x) > 0), reverse=True))


def counts_of(mu: MuLike) -> tuple[int, ...]:
    """Cycle-count vector (μ_1, μ_2, ...) of a partition-like object."""
    if isinstance(mu, CycleType):
        return mu.counts
    return CycleType.from_parts(as_parts(mu)).counts


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[Parts, ...]:
    if n == 0:
        return ((),)
    out: list[Parts] = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions(n: int) -> tuple[Parts, ...]:
    """All partitions of ``n`` as tuples, in reverse lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _partitions(n, n)


def enumerate_partitions(n: int) -> list[Partition]:
    return [Partition(p) for p in partitions(n)]


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal-number recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > n:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(n - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


def z_mu(mu: MuLike) -> int:
    """Centralizer order z_μ = ∏ i^{μ_i} μ_i!."""
    return prod(i**c * factorial(c) for i, c in enumerate(counts_of(mu), start=1))


def sign_of(mu: MuLike) -> int:
    parts = as_parts(mu)
    return -1 if sum(p - 1 for p in parts) % 2 else 1


# ---------------------------------------------------------------------------
# character polynomials


def _strip(exps: Iterable[int]) -> tuple[int, ...]:
    exps = list(exps)
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


def _falling_coeffs(r: int) -> list[int]:
    """Coefficients c_j with x(x-1)...(x-r+1) = Σ c_j x^j (signed Stirling numbers)."""
    coeffs = [1]
    for k in range(r):
        nxt = [0] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            nxt[j + 1] += c
            nxt[j] -= k * c
        coeffs = nxt
    return coeffs


@lru_cache(maxsize=None)
def _stirling2(a: int, j: int) -> int:
    if a == j:
        return 1
    if a == 0 or j == 0:
        return 0
    return j * _stirling2(a - 1, j) + _stirling2(a - 1, j - 1)


class CharacterPolynomial:
    """A polynomial in X_1, X_2, ... with rational coefficients.

    ``terms`` maps exponent vectors ``(a_1, a_2, ...)`` (trailing zeros
    stripped) to nonzero rationals. The degree uses deg X_k = k.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Iterable[int], Rational] | None = None):
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (terms or {}).items():
            key = _strip(exps)
            if any(a < 0 for a in key):
                raise ValueError("exponents must be nonnegative")
            clean[key] = clean.get(key, Fraction(0)) + Fraction(c)
        self.terms = {k: v for k, v in clean.items() if v != 0}

    # constructors
    @classmethod
    def constant(cls, c: Rational) -> "CharacterPolynomial":
        return cls({(): c})

    @classmethod
    def X(cls, k: int) -> "CharacterPolynomial":
        if k < 1:
            raise ValueError("variables are X_1, X_2, ...")
        return cls({(0,) * (k - 1) + (1,): 1})

    @classmethod
    def binom_X(cls, k: int, r: int) -> "CharacterPolynomial":
        """binom(X_k, r) expanded in monomials."""
        coeffs = _falling_coeffs(r)
        denom = factorial(r)
        return cls({(0,) * (k - 1) + (j,): Fraction(c, denom) for j, c in enumerate(coeffs) if c})

    @classmethod
    def binom_mu(cls, mu_counts: Iterable[int]) -> "CharacterPolynomial":
        """binom(X, μ) = ∏_i binom(X_i, μ_i) for a cycle-count vector μ."""
        out = cls.constant(1)
        for i, r in enumerate(mu_counts, start=1):
            if r:
                out = out * cls.binom_X(i, r)
        return out

    @classmethod
    def from_binomial_basis(cls, coeffs: Mapping[Iterable[int], Rational]) -> "CharacterPolynomial":
        out = cls()
        for mu_counts, c in coeffs.items():
            out = out + cls.binom_mu(mu_counts) * c
        return out

    # arithmetic
    def _coerce(self, other: object) -> "CharacterPolynomial":
        if isinstance(other, CharacterPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return CharacterPolynomial.constant(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "CharacterPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + v
        return CharacterPolynomial(terms)

    __radd__ = __add__

    def __neg__(self) -> "CharacterPolynomial":
        return CharacterPolynomial({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: object) -> "CharacterPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "CharacterPolynomial":
        return (-self) + other

    def __mul__(self, other: object) -> "CharacterPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict[tuple[int, ...], Fraction] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                size = max(len(k1), len(k2))
                key = _strip(
                    (k1[i] if i < len(k1) else 0) + (k2[i] if i < len(k2) else 0) for i in range(size)
                )
                terms[key] = terms.get(key, Fraction(0)) + v1 * v2
        return CharacterPolynomial(terms)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CharacterPolynomial":
        out = CharacterPolynomial.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    @property
    def degree(self) -> int:
        """Weighted degree with deg X_k = k; the zero polynomial has degree 0."""
        if not self.terms:
            return 0
        return max(sum((i + 1) * a for i, a in enumerate(k)) for k in self.terms)

    def __call__(self, mu: MuLike) -> Fraction:
        return eval_charpoly(self, mu)

    def to_binomial_basis(self) -> dict[tuple[int, ...], Fraction]:
        """Coefficients in the basis binom(X, μ), keyed by cycle-count vectors."""
        out: dict[tuple[int, ...], Fraction] = {}
        for exps, c in self.terms.items():
            # X_i^a = Σ_j S(a, j) j! binom(X_i, j)
            factors = [
                [(j, _stirling2(a, j) * factorial(j)) for j in range(a + 1) if _stirling2(a, j)]
                for a in exps
            ]
            for choice in product(*factors):
                key = _strip(j for j, _ in choice)
                out[key] = out.get(key, Fraction(0)) + c * prod(w for _, w in choice)
        return {k: v for k, v in out.items() if v != 0}

    def to_json(self) -> dict[str, str]:
        return {monomial_name(k): _frac_str(v) for k, v in sorted(self.terms.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, Rational | str]) -> "CharacterPolynomial":
        """Parse ``{"X1^2*X2": "1/2", "1": -3, ...}``."""
        terms: dict[tuple[int, ...], Fraction] = {}
        for mono, c in data.items():
            key = parse_monomial(mono)
            terms[key] = terms.get(key, Fraction(0)) + Fraction(c)
        return cls(terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "CharacterPolynomial(0)"
        body = " + ".join(f"{_frac_str(v)}*{monomial_name(k)}" for k, v in sorted(self.terms.items()))
        return f"CharacterPolynomial({body})"


_MONO_RE = re.compile(r"^X(\d+)(?:\^(\d+))?$")


def parse_monomial(text: str) -> tuple[int, ...]:
    text = text.replace(" ", "")
    if text in ("", "1"):
        return ()
    exps: dict[int, int] = {}
    for factor in text.split("*"):
        m = _MONO_RE.match(factor)
        if not m:
            raise ValueError(f"bad monomial factor {factor!r}")
        k = int(m.group(1))
        if k < 1:
            raise ValueError("variables are X1, X2, ...")
        exps[k] = exps.get(k, 0) + int(m.group(2) or 1)
    return _strip(exps.get(i, 0) for i in range(1, max(exps) + 1))


def monomial_name(exps: tuple[int, ...]) -> str:
    pieces = [f"X{i}" if a == 1 else f"X{i}^{a}" for i, a in enumerate(exps, start=1) if a]
    return "*".join(pieces) if pieces else "1"


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def eval_charpoly(P: CharacterPolynomial, mu: MuLike) -> Fraction:
    """Substitute X_i <- μ_i."""
    counts = counts_of(mu)
    total = Fraction(0)
    for exps, c in P.terms.items():
        term = c
        for i, a in enumerate(exps):
            if a:
                term *= (counts[i] if i < len(counts) else 0) ** a
        total += term
    return total


def binom_charpoly(mu_counts: Iterable[int]) -> CharacterPolynomial:
    return CharacterPolynomial.binom_mu(mu_counts)


# ---------------------------------------------------------------------------
# class functions


class ClassFunction:
    """A rational-valued class function on S_n, stored densely by cycle type."""

    __slots__ = ("n", "values", "name")

    def __init__(self, n: int, values: Mapping[MuLike, Rational], name: str | None = None):
        self.n = n
        vals: dict[Parts, Fraction] = {}
        for mu, v in values.items():
            vals[as_parts(mu)] = Fraction(v)
        missing = [mu for mu in partitions(n) if mu not in vals]
        if missing:
            raise ValueError(f"class function undefined on {missing[:3]}")
        extra = [mu for mu in vals if sum(mu) != n]
        if extra:
            raise SizeMismatch(f"cycle types {extra[:3]} are not partitions of {n}")
        self.values = {mu: vals[mu] for mu in partitions(n)}
        self.name = name

    @classmethod
    def from_rule(cls, n: int, rule: Callable[[Parts], Rational], name: str | None = None) -> "ClassFunction":
        return cls(n, {mu: rule(mu) for mu in partitions(n)}, name)

    @classmethod
    def from_charpoly(cls, P: CharacterPolynomial, n: int, name: str | None = None) -> "ClassFunction":
        return cls(n, {mu: eval_charpoly(P, mu) for mu in partitions(n)}, name)

    def __call__(self, mu: MuLike) -> Fraction:
        return self.values[as_parts(mu)]

    def _check(self, other: "ClassFunction") -> None:
        if other.n != self.n:
            raise SizeMismatch(f"class functions on S_{self.n} and S_{other.n}")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.n, {mu: v + other.values[mu] for mu, v in self.values.items()})

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.n, {mu: v - other.values[mu] for mu, v in self.values.items()})

    def __neg__(self) -> "ClassFunction":
        return ClassFunction(self.n, {mu: -v for mu, v in self.values.items()})

    def __mul__(self, other: "ClassFunction | Rational") -> "ClassFunction":
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.n, {mu: v * other.values[mu] for mu, v in self.values.items()})
        return ClassFunction(self.n, {mu: v * Fraction(other) for mu, v in self.values.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.n == other.n and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.values.values())))

    def canonical_id(self) -> str:
        """Stable hash of the value table, used as a cache key."""
        table = [[list(mu), _frac_str(v)] for mu, v in self.values.items()]
        blob = json.dumps({"n": self.n, "values": table}, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def is_zero_one(self) -> bool:
        return all(v in (0, 1) for v in self.values.values())

    def to_json(self) -> dict[str, str]:
        return {",".join(map(str, mu)): _frac_str(v) for mu, v in self.values.items()}

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"ClassFunction(n={self.n}{label})"


ClassLike = Union[ClassFunction, CharacterPolynomial]


def as_class_function(chi: ClassLike | Rational, n: int) -> ClassFunction:
    """Restrict a character polynomial (or constant) to S_n; pass class functions through."""
    if isinstance(chi, ClassFunction):
        if chi.n != n:
            raise SizeMismatch(f"class function lives on S_{chi.n}, not S_{n}")
        return chi
    if isinstance(chi, (int, Fraction)):
        chi = CharacterPolynomial.constant(chi)
    return ClassFunction.from_charpoly(chi, n)


def inner_product(f: ClassLike, g: ClassLike, n: int | None = None) -> Fraction:
    """⟨f, g⟩_n = Σ_μ f(μ) g(μ) / z_μ (values are real, so no conjugation)."""
    if n is None:
        ns = {x.n for x in (f, g) if isinstance(x, ClassFunction)}
        if len(ns) != 1:
            raise SizeMismatch("cannot infer n; pass it explicitly or use matching class functions")
        n = ns.pop()
    a = as_class_function(f, n)
    b = as_class_function(g, n)
    return sum((a.values[mu] * b.values[mu] / z_mu(mu) for mu in partitions(n)), Fraction(0))


# ---------------------------------------------------------------------------
# Murnaghan-Nakayama


@lru_cache(maxsize=None)
def _mn(lam: Parts, mu: Parts) -> int:
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], mu[1:]
    k = len(lam)
    beta = [lam[i] + (k - 1 - i) for i in range(k)]
    beta_set = set(beta)
    total = 0
    for idx, b in enumerate(beta):
        c = b - r
        if c < 0 or c in beta_set:
            continue
        height = sum(1 for x in beta if c < x < b)
        new_beta = sorted((c if j == idx else x for j, x in enumerate(beta)), reverse=True)
        new_lam = _strip_zeros(tuple(new_beta[i] - (k - 1 - i) for i in range(k)))
        total += (-1) ** height * _mn(new_lam, rest)
    return total


def _strip_zeros(parts: Parts) -> Parts:
    return tuple(p for p in parts if p > 0)


def mn_character(lam: MuLike, mu: MuLike) -> int:
    """χ_λ(c_μ) by the Murnaghan-Nakayama rule, stripping the largest part of μ first."""
    lam_p, mu_p = as_parts(lam), as_parts(mu)
    if sum(lam_p) != sum(mu_p):
        raise SizeMismatch(f"|λ| = {sum(lam_p)} but |μ| = {sum(mu_p)}")
    return _mn(lam_p, mu_p)


@lru_cache(maxsize=None)
def irreducible_character(lam: Parts) -> ClassFunction:
    lam = as_parts(lam)
    n = sum(lam)
    return ClassFunction(n, {mu: _mn(lam, mu) for mu in partitions(n)}, name=f"chi{lam}")


def character_table(n: int) -> dict[Parts, ClassFunction]:
    return {lam: irreducible_character(lam) for lam in partitions(n)}


def decompose(chi: ClassLike, n: int) -> dict[Parts, Fraction]:
    """Multiplicities ⟨χ, χ_λ⟩_n for every λ ⊢ n (zeros dropped)."""
    f = as_class_function(chi, n)
    out = {}
    for lam in partitions(n):
        m = inner_product(f, irreducible_character(lam), n)
        if m:
            out[lam] = m
    return out


def p_lambda(lam: MuLike) -> CharacterPolynomial:
    """P_λ = Σ_{|μ|=d} χ_λ(c_μ) binom(X, μ)."""
    lam_p = as_parts(lam)
    d = sum(lam_p)
    coeffs = {counts_of(mu): _mn(lam_p, mu) for mu in partitions(d)}
    return CharacterPolynomial.from_binomial_basis({k: v for k, v in coeffs.items() if v})


# ---------------------------------------------------------------------------
# standard Young tableaux


@dataclass(frozen=True)
class SYT:
    """A standard Young tableau (rows of entries 1..n) with descent data."""

    rows: tuple[tuple[int, ...], ...]
    descents: frozenset[int]
    maj: int


def syt_enumerate(lam: MuLike) -> list[SYT]:
    """All standard tableaux of shape λ.

    Entries 1..n are placed in order, each into the topmost admissible row
    first, so the output order is deterministic. A descent is an s such that
    s+1 lies in a strictly lower row than s.
    """
    shape = as_parts(lam)
    n = sum(shape)
    rows: list[list[int]] = [[] for _ in shape]
    row_of = [0] * (n + 2)
    out: list[SYT] = []

    def place(s: int) -> None:
        if s > n:
            desc = frozenset(t for t in range(1, n) if row_of[t + 1] > row_of[t])
            out.append(SYT(tuple(tuple(r) for r in rows), desc, sum(desc)))
            return
        for r, length in enumerate(shape):
            cur = len(rows[r])
            if cur < length and (r == 0 or len(rows[r - 1]) > cur):
                rows[r].append(s)
                row_of[s] = r
                place(s + 1)
                rows[r].pop()

    place(1)
    return out


@lru_cache(maxsize=None)
def maj_counts(lam: Parts) -> tuple[int, ...]:
    """Vector c with c[i] = #{SYT of shape λ with major index i}, i = 0..binom(n,2)."""
    lam = as_parts(lam)
    n = sum(lam)
    counts = [0] * (comb(n, 2) + 1)
    for t in syt_enumerate(lam):
        counts[t.maj] += 1
    return tuple(counts)


def hook_length_count(lam: MuLike) -> int:
    """#SYT(λ) = n! / ∏ hooks."""
    shape = as_parts(lam)
    conj = Partition(shape).conjugate().parts if shape else ()
    hooks = 1
    for i, row in enumerate(shape):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return factorial(sum(shape)) // hooks


# ---------------------------------------------------------------------------
# builtin class functions


def trivial(n: int) -> ClassFunction:
    return ClassFunction.from_rule(n, lambda mu: 1, name="trivial")


def sign(n: int) -> ClassFunction:
    return ClassFunction.from_rule(n, sign_of, name="sign")


def chi_k(n: int, k: int) -> ClassFunction:
    """1 when every cycle has length ≥ n/k, else 0."""
    if k < 1:
        raise OutOfRange("k must be at least 1")
    return ClassFunction.from_rule(n, lambda mu: int(mu[-1] * k >= n), name=f"chi_{k}")


def chi_distinct(n: int) -> ClassFunction:
    """1 on permutations whose cycle lengths are pairwise distinct."""
    return ClassFunction.from_rule(n, lambda mu: int(len(set(mu)) == len(mu)), name="chi_distinct")


def lift(P: CharacterPolynomial, n: int) -> ClassFunction:
    return ClassFunction.from_charpoly(P, n)


def builtin_class_functions(n: int, k: int = 1) -> dict[str, ClassFunction]:
    """The named class functions on S_n used throughout."""
    X1 = CharacterPolynomial.X(1)
    X2 = CharacterPolynomial.X(2)
    return {
        "trivial": trivial(n),
        "sign": sign(n),
        f"chi_{k}": chi_k(n, k),
        "chi_distinct": chi_distinct(n),
        "X1": lift(X1, n),
        "X2": lift(X2, n),
        "quad": lift(CharacterPolynomial.binom_X(1, 2) - X2, n),
    }


def wedge_character(k: int, n: int) -> ClassFunction:
    """Character of ⋀^k Q^n: the t^k coefficient of ∏_ℓ (1 - (-t)^ℓ)^{μ_ℓ}."""
    if not 0 <= k <= n:
        raise OutOfRange(f"need 0 <= k <= {n}")

    def value(mu: Parts) -> int:
        poly = [1]
        for ell in mu:
            # multiply by 1 - (-t)^ell
            nxt = poly + [0] * ell
            c = -((-1) ** ell)
            for j, a in enumerate(poly):
                nxt[j + ell] += c * a
            poly = nxt
        return poly[k] if k < len(poly) else 0

    return ClassFunction.from_rule(n, value, name=f"wedge{k}")


@lru_cache(maxsize=None)
def exterior_power_character(k: int, n: int) -> ClassFunction:
    """χ_{V_k} for V_k = ⋀^k(Q^n/Q), via ⋀^k Q^n = V_k ⊕ V_{k-1}."""
    if not 0 <= k <= n - 1:
        raise OutOfRange(f"need 0 <= k <= {n - 1}")
    if k == 0:
        return trivial(n)
    out = wedge_character(k, n) - exterior_power_character(k - 1, n)
    out.name = f"V{k}"
    return out
