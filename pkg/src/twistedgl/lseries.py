"""Formal series in t = q^{-s} with coefficients in Q[q, q^{-1}].

The zeta function of F_q[T] is 1/(1 - qt) and the squarefree series is
L = (1 - qt^2)/(1 - qt). Weighting each squarefree f by a statistic such as
the number of linear factors multiplies L by an explicit rational function
of t, so every coefficient [t^n] is a Laurent polynomial in a symbolic q.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import NotStabilized
from .symcomb import CharacterPolynomial, _frac_str

Rational = Union[int, Fraction]


class QLaurent:
    """A Laurent polynomial Σ c_k q^k with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, Rational] | None = None):
        self.coeffs = {int(k): Fraction(c) for k, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def const(cls, c: Rational) -> "QLaurent":
        return cls({0: c})

    @classmethod
    def q(cls, k: int = 1, c: Rational = 1) -> "QLaurent":
        return cls({k: c})

    @staticmethod
    def _lift(x: "QLaurent | Rational") -> "QLaurent":
        return x if isinstance(x, QLaurent) else QLaurent.const(x)

    def __add__(self, other: "QLaurent | Rational") -> "QLaurent":
        other = self._lift(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return QLaurent(out)

    __radd__ = __add__

    def __neg__(self) -> "QLaurent":
        return QLaurent({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "QLaurent | Rational") -> "QLaurent":
        return self + (-self._lift(other))

    def __rsub__(self, other: "QLaurent | Rational") -> "QLaurent":
        return self._lift(other) - self

    def __mul__(self, other: "QLaurent | Rational") -> "QLaurent":
        other = self._lift(other)
        out: dict[int, Fraction] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                out[k1 + k2] = out.get(k1 + k2, Fraction(0)) + c1 * c2
        return QLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QLaurent":
        if e < 0:
            return self.inverse_monomial() ** (-e)
        out = QLaurent.const(1)
        for _ in range(e):
            out = out * self
        return out

    def shift(self, k: int) -> "QLaurent":
        """Multiply by q^k."""
        return QLaurent({e + k: c for e, c in self.coeffs.items()})

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def inverse_monomial(self) -> "QLaurent":
        if not self.is_monomial():
            raise ZeroDivisionError("only nonzero monomials c·q^k are invertible")
        (k, c), = self.coeffs.items()
        return QLaurent({-k: 1 / c})

    def __truediv__(self, other: "QLaurent | Rational") -> "QLaurent":
        return self * self._lift(other).inverse_monomial()

    def __call__(self, q: Rational) -> Fraction:
        return self.evaluate(q)

    def evaluate(self, q: Rational) -> Fraction:
        q = Fraction(q)
        return sum((c * q**k for k, c in self.coeffs.items()), Fraction(0))

    def coeff(self, k: int) -> Fraction:
        return self.coeffs.get(k, Fraction(0))

    @property
    def max_exp(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    @property
    def min_exp(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QLaurent.const(other)
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def to_json(self) -> dict[str, str]:
        return {str(k): _frac_str(c) for k, c in sorted(self.coeffs.items(), reverse=True)}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "QLaurent":
        return cls({int(k): Fraction(v) for k, v in data.items()})

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        out = ""
        for k, c in sorted(self.coeffs.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = _frac_str(a)
            else:
                mono = "q" if k == 1 else f"q^{k}"
                body = mono if a == 1 else f"{_frac_str(a)}{mono}"
            out += (f" {sign} " if out else ("-" if sign == "-" else "")) + body
        return out

    def __repr__(self) -> str:
        return f"QLaurent({self})"


def qpoly(coeffs: Mapping[int, Rational]) -> QLaurent:
    return QLaurent(coeffs)


TPoly = list  # list of QLaurent, index = power of t


def _tpoly(coeffs: Iterable[QLaurent | Rational]) -> list[QLaurent]:
    out = [c if isinstance(c, QLaurent) else QLaurent.const(c) for c in coeffs]
    while out and not out[-1]:
        out.pop()
    return out


def _tmul(a: Sequence[QLaurent], b: Sequence[QLaurent]) -> list[QLaurent]:
    if not a or not b:
        return []
    out = [QLaurent() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return _tpoly(out)


def _tadd(a: Sequence[QLaurent], b: Sequence[QLaurent]) -> list[QLaurent]:
    n = max(len(a), len(b))
    return _tpoly(
        (a[i] if i < len(a) else QLaurent()) + (b[i] if i < len(b) else QLaurent()) for i in range(n)
    )


class RationalSeriesT:
    """numerator(t) / denominator(t), expanded as a power series in t."""

    def __init__(self, numerator: Iterable[QLaurent | Rational], denominator: Iterable[QLaurent | Rational]):
        self.numerator = _tpoly(numerator)
        self.denominator = _tpoly(denominator)
        if not self.denominator or not self.denominator[0].is_monomial():
            raise ZeroDivisionError("denominator needs an invertible constant term")
        self._inv0 = self.denominator[0].inverse_monomial()
        self._cache: list[QLaurent] = []

    def coefficient(self, n: int) -> QLaurent:
        """[t^n] of the expansion."""
        if n < 0:
            return QLaurent()
        num, den, cache = self.numerator, self.denominator, self._cache
        while len(cache) <= n:
            k = len(cache)
            acc = num[k] if k < len(num) else QLaurent()
            for j in range(1, min(k, len(den) - 1) + 1):
                if den[j]:
                    acc = acc - den[j] * cache[k - j]
            cache.append(acc * self._inv0)
        return cache[n]

    def expand(self, N: int) -> list[QLaurent]:
        """Coefficients of t^0 .. t^N."""
        self.coefficient(N)
        return list(self._cache[: N + 1])

    def __add__(self, other: "RationalSeriesT") -> "RationalSeriesT":
        num = _tadd(_tmul(self.numerator, other.denominator), _tmul(other.numerator, self.denominator))
        return RationalSeriesT(num, _tmul(self.denominator, other.denominator))

    def __neg__(self) -> "RationalSeriesT":
        return RationalSeriesT([-c for c in self.numerator], self.denominator)

    def __sub__(self, other: "RationalSeriesT") -> "RationalSeriesT":
        return self + (-other)

    def __mul__(self, other: "RationalSeriesT | QLaurent | Rational") -> "RationalSeriesT":
        if isinstance(other, RationalSeriesT):
            return RationalSeriesT(
                _tmul(self.numerator, other.numerator), _tmul(self.denominator, other.denominator)
            )
        c = other if isinstance(other, QLaurent) else QLaurent.const(other)
        return RationalSeriesT([x * c for x in self.numerator], self.denominator)

    __rmul__ = __mul__

    def to_json(self, N: int) -> str:
        return json.dumps([c.to_json() for c in self.expand(N)])


def _qt(q_exp: int, c: Rational = 1) -> QLaurent:
    return QLaurent({q_exp: c})


ONE = QLaurent.const(1)


def zeta() -> RationalSeriesT:
    """Σ_f t^{deg f} over monic f: 1/(1 - qt)."""
    return RationalSeriesT([ONE], [ONE, -_qt(1)])


def conf_L() -> RationalSeriesT:
    """Squarefree series ζ(s)/ζ(2s) = (1 - qt^2)/(1 - qt)."""
    return RationalSeriesT([ONE, QLaurent(), -_qt(1)], [ONE, -_qt(1)])


HALF_Q2_MINUS_Q = QLaurent({2: Fraction(1, 2), 1: Fraction(-1, 2)})

TAGS = ("X1", "X2", "binomX1_2", "P_quad")


def weight_factor(tag: str) -> RationalSeriesT:
    """W_tag(t) with L(tag, s) = W_tag(t) · L(s)."""
    if tag == "X1":
        return RationalSeriesT([QLaurent(), _qt(1)], [ONE, ONE])
    if tag == "X2":
        return RationalSeriesT([QLaurent(), QLaurent(), HALF_Q2_MINUS_Q], [ONE, QLaurent(), ONE])
    if tag == "binomX1_2":
        return RationalSeriesT([QLaurent(), QLaurent(), HALF_Q2_MINUS_Q], [ONE, 2, ONE])
    if tag == "P_quad":
        return weight_factor("binomX1_2") - weight_factor("X2")
    raise ValueError(f"unknown tag {tag!r}; expected one of {TAGS}")


def weighted_L(tag: str) -> RationalSeriesT:
    """Σ over squarefree f of P_tag(f) t^{deg f} as an exact rational function."""
    return weight_factor(tag) * conf_L()


def tag_polynomial(tag: str) -> CharacterPolynomial:
    X1, X2 = CharacterPolynomial.X(1), CharacterPolynomial.X(2)
    b = CharacterPolynomial.binom_X(1, 2)
    return {"X1": X1, "X2": X2, "binomX1_2": b, "P_quad": b - X2}[tag]


def normalized_coefficient(series: RationalSeriesT, n: int) -> QLaurent:
    """[t^n] series / q^n."""
    return series.coefficient(n).shift(-n)


def stable_coefficients(tag: str, I: int, *, start: int = 1) -> list[int]:
    """Stable a_i = (-1)^i [q^{-i}] ([t^n] L(tag)/q^n) for i = start..I.

    The coefficient is read off at n = 2I + 4 and must agree at n + 1.
    """
    if I < 0 or start < 0:
        raise ValueError("I and start must be nonnegative")
    series = weighted_L(tag)
    n = 2 * I + 4
    a = normalized_coefficient(series, n)
    b = normalized_coefficient(series, n + 1)
    out = []
    for i in range(start, I + 1):
        if a.coeff(-i) != b.coeff(-i):
            raise NotStabilized(f"q^-{i} coefficient differs between n={n} and n={n + 1}")
        val = (-1) ** i * a.coeff(-i)
        if val.denominator != 1:
            raise NotStabilized(f"non-integral stable coefficient {val} at i={i}")
        out.append(int(val))
    return out


class QRational:
    """A rational function N(q)/D(q) with Laurent-polynomial numerator and denominator."""

    def __init__(self, num: QLaurent, den: QLaurent):
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    def __call__(self, q: Rational) -> Fraction:
        return self.evaluate(q)

    def evaluate(self, q: Rational) -> Fraction:
        return self.num.evaluate(q) / self.den.evaluate(q)

    def expand(self, order: int) -> list[Fraction]:
        """Coefficients c_0..c_order of the expansion Σ c_i q^{-i} (requires a polynomial part ≤ 0)."""
        # write N/D = q^{a-b} · n(u)/d(u) with u = 1/q and d(0) ≠ 0
        a, b = self.num.max_exp, self.den.max_exp
        if a > b:
            raise ValueError("expansion in 1/q needs deg N ≤ deg D")
        nu = [self.num.coeff(a - k) for k in range(a - self.num.min_exp + 1)]
        du = [self.den.coeff(b - k) for k in range(b - self.den.min_exp + 1)]
        shift = b - a
        series: list[Fraction] = []
        for k in range(order + 1):
            acc = nu[k] if k < len(nu) else Fraction(0)
            for j in range(1, min(k, len(du) - 1) + 1):
                acc -= du[j] * series[k - j]
            series.append(acc / du[0])
        return ([Fraction(0)] * shift + series)[: order + 1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QRational):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:  # pragma: no cover
        return 0

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def residue_ratio(tag: str) -> QRational:
    """lim_{s→1} L(tag, s)/L(s): the weight factor evaluated at t = 1/q."""
    w = weight_factor(tag)

    def at_inverse_q(poly: Sequence[QLaurent]) -> QLaurent:
        total = QLaurent()
        for k, c in enumerate(poly):
            total = total + c.shift(-k)
        return total

    return QRational(at_inverse_q(w.numerator), at_inverse_q(w.denominator))


def limit_mean(tag: str) -> QRational:
    """lim_n q^{-n} Σ_{f ∈ Conf_n} P_tag(f) = (1 - 1/q) · residue ratio."""
    r = residue_ratio(tag)
    return QRational(r.num * QLaurent({0: 1, -1: -1}), r.den)
