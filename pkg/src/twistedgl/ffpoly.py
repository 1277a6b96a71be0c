"""Finite fields F_{p^e}, monic polynomials over them, and degree profiles.

Field elements are plain ints: ``x = c_0 + c_1 p + ... + c_{e-1} p^{e-1}``
encodes the residue class ``c_0 + c_1 x + ...`` modulo the defining
polynomial, so F_p sits inside every F_{p^e} as the ints ``0..p-1``.
Arithmetic goes through precomputed addition and multiplication tables.

Polynomials over F_q are tuples of such ints, lowest degree first; the zero
polynomial is the empty tuple. :class:`FqPoly` wraps one for the public API
while the hot loops work on raw lists.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import islice, product
from typing import Iterable, Iterator, Sequence

from .errors import BadDegree, BudgetExceeded, NotMonic, NotPrime, NotSquarefree, ZeroPolynomial
from .symcomb import CycleType

DEFAULT_BUDGET = 10**7

FqElement = int
Coeffs = Sequence[int]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for every n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for sp in small:
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^e, raising NotPrime when q is not a prime power."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    for p in range(2, int(q**0.5) + 2):
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            if q != 1:
                raise NotPrime(f"{p**e * q} is not a prime power")
            return p, e
    return q, 1


class FqContext:
    """The field F_q, q = p^e, with a fixed monic irreducible modulus over F_p."""

    def __init__(self, p: int, e: int, modulus: tuple[int, ...]):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = tuple(modulus)
        self._build_tables()

    def _build_tables(self) -> None:
        p, e, q = self.p, self.e, self.q
        if e == 1:
            self.add = [[(a + b) % p for b in range(p)] for a in range(p)]
            self.mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        else:
            import numpy as np

            digits = np.array([[(x // p**i) % p for i in range(e)] for x in range(q)], dtype=np.int64)
            weights = p ** np.arange(e, dtype=np.int64)
            add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
            self.add = add.tolist()
            exp, log = self._discrete_log_tables()
            exp_arr = np.array(exp + exp, dtype=np.int64)
            log_arr = np.array(log, dtype=np.int64)
            mul = exp_arr[log_arr[:, None] + log_arr[None, :]]
            mul[0, :] = 0
            mul[:, 0] = 0
            self.mul = mul.tolist()
        self.neg = [row.index(0) for row in self.add]
        self.sub = [[self.add[a][self.neg[b]] for b in range(q)] for a in range(q)]
        self.inv = [0] * q
        for a in range(1, q):
            self.inv[a] = self.mul[a].index(1)

    def _mul_slow(self, a: int, b: int) -> int:
        """Multiply two elements by schoolbook arithmetic modulo the modulus."""
        p, e = self.p, self.e
        da = [(a // p**i) % p for i in range(e)]
        db = [(b // p**i) % p for i in range(e)]
        prod_ = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod_[i + j] = (prod_[i + j] + x * y) % p
        mod = self.modulus
        for k in range(2 * e - 2, e - 1, -1):
            c = prod_[k]
            if c:
                for j in range(e + 1):
                    prod_[k - e + j] = (prod_[k - e + j] - c * mod[j]) % p
        return sum(prod_[i] * p**i for i in range(e))

    def _discrete_log_tables(self) -> tuple[list[int], list[int]]:
        q = self.q
        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._mul_slow(x, g)
            if len(exp) == q - 1:
                log = [0] * q
                for k, v in enumerate(exp):
                    log[v] = k
                self.generator = g
                return exp, log
        raise AssertionError("no primitive element found")  # pragma: no cover

    # element helpers
    def elements(self) -> range:
        return range(self.q)

    def to_coeffs(self, x: FqElement) -> tuple[int, ...]:
        """Residue vector of x in F_p[x]/modulus, lowest power first."""
        return tuple((x // self.p**i) % self.p for i in range(self.e))

    def from_coeffs(self, coeffs: Iterable[int]) -> FqElement:
        coeffs = list(coeffs)
        if len(coeffs) > self.e:
            raise ValueError("too many residues for this field")
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    def from_int(self, k: int) -> FqElement:
        """Image of the integer k in the prime subfield."""
        return k % self.p

    def pow(self, x: FqElement, k: int) -> FqElement:
        if k < 0:
            x, k = self.inv[x], -k
        result, base = 1, x
        mul = self.mul
        while k:
            if k & 1:
                result = mul[result][base]
            base = mul[base][base]
            k >>= 1
        return result

    def poly(self, coeffs: Iterable[int]) -> "FqPoly":
        """Build a polynomial from elements (or ints reduced into F_p when e = 1)."""
        vals = [c % self.q if self.e == 1 else c for c in coeffs]
        return FqPoly(tuple(vals))

    def __repr__(self) -> str:
        return f"FqContext(p={self.p}, e={self.e}, modulus={self.modulus})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FqContext) and (self.p, self.e, self.modulus) == (
            other.p,
            other.e,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))


@dataclass(frozen=True)
class FqPoly:
    """Polynomial over F_q; ``coeffs`` lowest degree first with no trailing zeros."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(_trim(list(self.coeffs))))

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __len__(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class DegreeProfile:
    """``d[i-1]`` is the number of irreducible factors of degree i."""

    d: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        if any(x < 0 for x in self.d) or sum((i + 1) * x for i, x in enumerate(self.d)) != self.n:
            raise ValueError(f"inconsistent degree profile {self.d} for n={self.n}")

    def count(self, i: int) -> int:
        return self.d[i - 1] if 1 <= i <= len(self.d) else 0


# ---------------------------------------------------------------------------
# field construction


@lru_cache(maxsize=None)
def make_field(p: int, e: int = 1) -> FqContext:
    """F_{p^e} with the first monic irreducible modulus in little-endian counter order."""
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise BadDegree(f"extension degree must be >= 1, got {e}")
    if e == 1:
        return FqContext(p, 1, (0, 1))
    base = make_field(p, 1)
    for k in range(p**e):
        cand = [(k // p**i) % p for i in range(e)] + [1]
        if cand[0] and _is_irreducible(base, cand):
            return FqContext(p, e, tuple(cand))
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def field_of_order(q: int) -> FqContext:
    p, e = prime_power(q)
    return make_field(p, e)


def _is_irreducible(ctx: FqContext, f: list[int]) -> bool:
    """Distinct-degree check: no factor of degree <= deg f / 2."""
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(n // 2):
        h = _powmod(ctx, h, ctx.q, f)
        g = _gcd(ctx, _sub(ctx, h, x), f)
        if len(g) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# raw polynomial arithmetic (lists of ints, lowest degree first)


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _sub(ctx: FqContext, a: Coeffs, b: Coeffs) -> list[int]:
    sub, neg = ctx.sub, ctx.neg
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out[i] = sub[x][y]
    return _trim(out)


def _add(ctx: FqContext, a: Coeffs, b: Coeffs) -> list[int]:
    add = ctx.add
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        out[i] = add[a[i] if i < len(a) else 0][b[i] if i < len(b) else 0]
    return _trim(out)


def _mul(ctx: FqContext, a: Coeffs, b: Coeffs) -> list[int]:
    if not a or not b:
        return []
    add, mul = ctx.add, ctx.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            row = mul[x]
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add[out[i + j]][row[y]]
    return _trim(out)


def _divmod(ctx: FqContext, a: Coeffs, b: Coeffs) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], _trim(r)
    sub, mul = ctx.sub, ctx.mul
    inv_lead = ctx.inv[b[-1]]
    quot = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c:
            c = mul[c][inv_lead]
            quot[k - db] = c
            row = mul[c]
            off = k - db
            for j in range(db + 1):
                if b[j]:
                    r[off + j] = sub[r[off + j]][row[b[j]]]
    return _trim(quot), _trim(r[:db])


def _mod(ctx: FqContext, a: Coeffs, b: Coeffs) -> list[int]:
    """Remainder of a modulo a monic b (the hot path of gcd and powering)."""
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return _trim(r)
    sub, mul = ctx.sub, ctx.mul
    lead_inv = ctx.inv[b[-1]]
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c:
            if lead_inv != 1:
                c = mul[c][lead_inv]
            row = mul[c]
            off = k - db
            for j in range(db):
                bj = b[j]
                if bj:
                    r[off + j] = sub[r[off + j]][row[bj]]
    del r[db:]
    return _trim(r)


def _monic(ctx: FqContext, a: list[int]) -> list[int]:
    if not a or a[-1] == 1:
        return a
    inv = ctx.inv[a[-1]]
    row = ctx.mul[inv]
    return [row[x] for x in a]


def _gcd(ctx: FqContext, a: Coeffs, b: Coeffs) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _mod(ctx, a, b)
    return _monic(ctx, a)


def _deriv(ctx: FqContext, a: Coeffs) -> list[int]:
    mul, p = ctx.mul, ctx.p
    return _trim([mul[k % p][a[k]] for k in range(1, len(a))])


def _powmod(ctx: FqContext, base: Coeffs, k: int, m: Coeffs) -> list[int]:
    result = [1]
    b = _mod(ctx, base, m)
    while k:
        if k & 1:
            result = _mod(ctx, _mul(ctx, result, b), m)
        k >>= 1
        if k:
            b = _mod(ctx, _mul(ctx, b, b), m)
    return result


def _eval(ctx: FqContext, a: Coeffs, x: int) -> int:
    add, mul = ctx.add, ctx.mul
    acc = 0
    for c in reversed(a):
        acc = add[mul[acc][x]][c]
    return acc


def _squarefree(ctx: FqContext, f: Coeffs) -> bool:
    if len(f) <= 2:
        return True
    d = _deriv(ctx, f)
    if not d:
        return False
    return len(_gcd(ctx, f, d)) == 1


def _ddf(ctx: FqContext, f: Coeffs) -> dict[int, int]:
    """Distinct-degree factorization counts {i: d_i} of a monic squarefree f."""
    profile: dict[int, int] = {}
    cur = list(f)
    x = [0, 1]
    h = x
    i = 0
    q = ctx.q
    while len(cur) - 1 >= 2 * (i + 1):
        i += 1
        h = _powmod(ctx, h, q, cur)
        g = _gcd(ctx, _sub(ctx, h, x), cur)
        if len(g) > 1:
            profile[i] = (len(g) - 1) // i
            cur, _ = _divmod(ctx, cur, g)
            h = _mod(ctx, h, cur)
    if len(cur) > 1:
        deg = len(cur) - 1
        profile[deg] = profile.get(deg, 0) + 1
    return profile


def _coeffs_of(f: FqPoly | Coeffs) -> list[int]:
    return _trim(list(f.coeffs if isinstance(f, FqPoly) else f))


# ---------------------------------------------------------------------------
# public polynomial operations


def poly_mul(ctx: FqContext, f: FqPoly, g: FqPoly) -> FqPoly:
    return FqPoly(tuple(_mul(ctx, _coeffs_of(f), _coeffs_of(g))))


def poly_divmod(ctx: FqContext, f: FqPoly, g: FqPoly) -> tuple[FqPoly, FqPoly]:
    qt, r = _divmod(ctx, _coeffs_of(f), _coeffs_of(g))
    return FqPoly(tuple(qt)), FqPoly(tuple(r))


def poly_gcd(ctx: FqContext, f: FqPoly, g: FqPoly) -> FqPoly:
    """Monic gcd (zero only if both inputs are zero)."""
    return FqPoly(tuple(_gcd(ctx, _coeffs_of(f), _coeffs_of(g))))


def poly_eval(ctx: FqContext, f: FqPoly, x: FqElement) -> FqElement:
    return _eval(ctx, _coeffs_of(f), x)


def derivative(ctx: FqContext, f: FqPoly) -> FqPoly:
    return FqPoly(tuple(_deriv(ctx, _coeffs_of(f))))


def is_squarefree(ctx: FqContext, f: FqPoly) -> bool:
    """True iff gcd(f, f') is constant; f' = 0 with deg f > 0 means a p-th power."""
    c = _coeffs_of(f)
    if not c:
        raise ZeroPolynomial("squarefreeness of the zero polynomial is undefined")
    if len(c) == 1:
        return True
    d = _deriv(ctx, c)
    if not d:
        return False
    return len(_gcd(ctx, c, d)) == 1


def degree_profile(ctx: FqContext, f: FqPoly) -> DegreeProfile:
    """Numbers of irreducible factors of each degree, by distinct-degree factorization."""
    c = _coeffs_of(f)
    if not c or c[-1] != 1:
        raise NotMonic("degree_profile needs a monic polynomial")
    if not is_squarefree(ctx, FqPoly(tuple(c))):
        raise NotSquarefree("degree_profile needs a squarefree polynomial")
    prof = _ddf(ctx, c)
    n = len(c) - 1
    top = max(prof) if prof else 0
    return DegreeProfile(tuple(prof.get(i, 0) for i in range(1, top + 1)), n)


def sigma_cycle_type(profile: DegreeProfile) -> CycleType:
    """Cycle type of the Frobenius permutation of the roots: μ_i = d_i."""
    return CycleType(profile.d)


def ext_frobenius(ctx_big: FqContext, x: FqElement, q: int) -> FqElement:
    """x ↦ x^q in a larger field of the same characteristic."""
    if q % ctx_big.p:
        raise ValueError("q must be a power of the characteristic")
    return ctx_big.pow(x, q)


# ---------------------------------------------------------------------------
# enumeration


def _check_budget(count: int, budget: int | None) -> None:
    cap = DEFAULT_BUDGET if budget is None else budget
    if count > cap:
        raise BudgetExceeded(f"enumeration of {count} items exceeds budget {cap}")


def _monic_coeff_stream(q: int, n: int, start: int = 0, stop: int | None = None) -> Iterator[list[int]]:
    # product() varies its last slot fastest, so reversing gives a little-endian counter
    it = islice(product(range(q), repeat=n), start, stop)
    for t in it:
        c = list(t[::-1])
        c.append(1)
        yield c


def enumerate_monic(ctx: FqContext, n: int, *, budget: int | None = None) -> Iterator[FqPoly]:
    """All monic degree-n polynomials; f_k has coefficient c_i = i-th base-q digit of k."""
    if n < 0:
        raise BadDegree("n must be nonnegative")
    _check_budget(ctx.q**n, budget)
    for c in _monic_coeff_stream(ctx.q, n):
        yield FqPoly(tuple(c))


def enumerate_squarefree(ctx: FqContext, n: int, *, budget: int | None = None) -> Iterator[FqPoly]:
    if n < 0:
        raise BadDegree("n must be nonnegative")
    _check_budget(ctx.q**n, budget)
    for c in _monic_coeff_stream(ctx.q, n):
        if _squarefree(ctx, c):
            yield FqPoly(tuple(c))


def squarefree_count(ctx: FqContext, n: int, *, budget: int | None = None) -> int:
    return sum(cycle_type_histogram(ctx, n, budget=budget).values())


def histogram_chunk(ctx: FqContext, n: int, start: int, stop: int) -> Counter:
    """Cycle-type counts of the squarefree polynomials with index in [start, stop)."""
    hist: Counter = Counter()
    for c in _monic_coeff_stream(ctx.q, n, start, stop):
        if not _squarefree(ctx, c):
            continue
        prof = _ddf(ctx, c)
        parts = tuple(sorted((i for i, m in prof.items() for _ in range(m)), reverse=True))
        hist[parts] += 1
    return hist


def _chunk_bounds(total: int, chunks: int) -> list[tuple[int, int]]:
    chunks = max(1, min(chunks, total))
    step = -(-total // chunks)
    return [(a, min(a + step, total)) for a in range(0, total, step)]


_HIST_CACHE: dict[tuple[int, int, int], dict[tuple[int, ...], int]] = {}


def cycle_type_histogram(
    ctx: FqContext,
    n: int,
    *,
    budget: int | None = None,
    jobs: int = 1,
    chunks: int | None = None,
    engine: str = "auto",
) -> dict[tuple[int, ...], int]:
    """Number of squarefree monic degree-n f with each Frobenius cycle type.

    Results are memoised per field and degree. ``chunks`` splits the index
    range; ``jobs > 1`` farms the chunks out to worker processes. The merged
    result does not depend on either setting. ``engine`` is ``"python"``,
    ``"compiled"`` or ``"auto"``.
    """
    if n < 0:
        raise BadDegree("n must be nonnegative")
    total = ctx.q**n
    _check_budget(total, budget)
    key = (ctx.p, ctx.e, n)
    if chunks is None and key in _HIST_CACHE:
        return dict(_HIST_CACHE[key])
    if n == 0:
        return {(): 1}
    bounds = _chunk_bounds(total, chunks or max(1, jobs))
    use_compiled = engine == "compiled" or (engine == "auto" and total >= 20000 and _fast_available())
    if use_compiled:
        from . import _fastenum

        parts_list = [_fastenum.histogram_chunk(ctx, n, a, b) for a, b in bounds]
    elif jobs > 1 and len(bounds) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_histogram_worker, ctx.p, ctx.e, n, a, b) for a, b in bounds]
            parts_list = [f.result() for f in futures]
    else:
        parts_list = [histogram_chunk(ctx, n, a, b) for a, b in bounds]
    merged: Counter = Counter()
    for part in parts_list:
        merged.update(part)
    result = dict(sorted(merged.items(), reverse=True))
    _HIST_CACHE[key] = result
    return dict(result)


def _histogram_worker(p: int, e: int, n: int, start: int, stop: int) -> Counter:
    return histogram_chunk(make_field(p, e), n, start, stop)


def _fast_available() -> bool:
    if os.environ.get("TWISTEDGL_PURE_PYTHON"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:  # pragma: no cover
        return False
    return True
