"""Compiled cycle-type histogram over a range of monic polynomials.

Mirrors ``ffpoly.histogram_chunk`` step for step (squarefree test by
gcd(f, f'), then distinct-degree factorization) on fixed-size int64 buffers,
driven by the same addition/multiplication tables as the pure-Python path.
"""

from __future__ import annotations

from collections import Counter

import numpy as np
from numba import njit

from .symcomb import partitions


@njit(cache=True)
def _trimdeg(a, d):
    while d >= 0 and a[d] == 0:
        d -= 1
    return d


@njit(cache=True)
def _mod(r, dr, b, db, SUB, MUL, INV):
    """r <- r mod b in place; returns the new degree of r."""
    if dr < db:
        return dr
    li = INV[b[db]]
    for k in range(dr, db - 1, -1):
        c = r[k]
        if c != 0:
            c = MUL[c, li]
            off = k - db
            for j in range(db + 1):
                bj = b[j]
                if bj != 0:
                    r[off + j] = SUB[r[off + j], MUL[c, bj]]
    return _trimdeg(r, db - 1)


@njit(cache=True)
def _gcd(a, da, b, db, out, x, y, SUB, MUL, INV):
    """Monic gcd of a and b written to out (x, y are scratch); returns its degree."""
    for j in range(da + 1):
        x[j] = a[j]
    for j in range(db + 1):
        y[j] = b[j]
    dx, dy = da, db
    while dy >= 0:
        dx = _mod(x, dx, y, dy, SUB, MUL, INV)
        x, y = y, x
        dx, dy = dy, dx
    li = INV[x[dx]]
    for j in range(dx + 1):
        out[j] = MUL[x[j], li]
    return dx


@njit(cache=True)
def _mulmod(a, da, b, db, m, dm, out, tmp, ADD, SUB, MUL, INV):
    """out <- a*b mod m; returns degree."""
    if da < 0 or db < 0:
        return -1
    for k in range(da + db + 1):
        tmp[k] = 0
    for i in range(da + 1):
        ai = a[i]
        if ai != 0:
            for j in range(db + 1):
                bj = b[j]
                if bj != 0:
                    tmp[i + j] = ADD[tmp[i + j], MUL[ai, bj]]
    d = _mod(tmp, da + db, m, dm, SUB, MUL, INV)
    for k in range(d + 1):
        out[k] = tmp[k]
    return d


@njit(cache=True)
def _powmod(h, dh, e, m, dm, out, tmp, base, res, ADD, SUB, MUL, INV):
    for k in range(dh + 1):
        base[k] = h[k]
    db = _mod(base, dh, m, dm, SUB, MUL, INV)
    res[0] = 1
    dr = 0
    while e > 0:
        if e & 1:
            dr = _mulmod(res, dr, base, db, m, dm, res, tmp, ADD, SUB, MUL, INV)
        e >>= 1
        if e > 0:
            db = _mulmod(base, db, base, db, m, dm, base, tmp, ADD, SUB, MUL, INV)
    for k in range(dr + 1):
        out[k] = res[k]
    return dr


@njit(cache=True)
def _divexact(a, da, b, db, out, r, SUB, MUL, INV):
    """out <- a / b (b divides a, r is scratch); returns quotient degree."""
    for j in range(da + 1):
        r[j] = a[j]
    li = INV[b[db]]
    dq = da - db
    for k in range(da, db - 1, -1):
        c = r[k]
        if c != 0:
            c = MUL[c, li]
            out[k - db] = c
            for j in range(db + 1):
                if b[j] != 0:
                    r[k - db + j] = SUB[r[k - db + j], MUL[c, b[j]]]
        else:
            out[k - db] = 0
    return dq


@njit(cache=True)
def _histogram(q, p, n, start, stop, keys, ADD, SUB, MUL, INV):
    counts = np.zeros(len(keys), np.int64)
    f = np.zeros(n + 1, np.int64)
    fd = np.zeros(n + 1, np.int64)
    g = np.zeros(n + 1, np.int64)
    cur = np.zeros(n + 1, np.int64)
    nxt = np.zeros(n + 1, np.int64)
    h = np.zeros(2 * n + 2, np.int64)
    hx = np.zeros(2 * n + 2, np.int64)
    prof = np.zeros(n + 1, np.int64)
    w1 = np.zeros(2 * n + 2, np.int64)
    w2 = np.zeros(2 * n + 2, np.int64)
    w3 = np.zeros(2 * n + 2, np.int64)
    k = start
    rem = k
    for i in range(n):
        f[i] = rem % q
        rem //= q
    f[n] = 1
    while k < stop:
        # squarefree test
        for i in range(n):
            fd[i] = MUL[(i + 1) % p, f[i + 1]]
        dfd = _trimdeg(fd, n - 1)
        sqf = True
        if n >= 2:
            if dfd < 0:
                sqf = False
            else:
                if _gcd(f, n, fd, dfd, g, w1, w2, SUB, MUL, INV) > 0:
                    sqf = False
        if sqf:
            for i in range(n + 1):
                prof[i] = 0
                cur[i] = f[i]
            dc = n
            h[0] = 0
            h[1] = 1
            dh = 1
            i = 0
            while dc >= 2 * (i + 1):
                i += 1
                dh = _powmod(h, dh, q, cur, dc, h, w1, w2, w3, ADD, SUB, MUL, INV)
                for j in range(dh + 1):
                    hx[j] = h[j]
                if dh < 1:
                    for j in range(dh + 1, 2):
                        hx[j] = 0
                    dhx = 1
                else:
                    dhx = dh
                hx[1] = SUB[hx[1], 1]
                dhx = _trimdeg(hx, dhx)
                if dhx < 0:
                    dg = dc
                    for j in range(dc + 1):
                        g[j] = cur[j]
                else:
                    dg = _gcd(hx, dhx, cur, dc, g, w1, w2, SUB, MUL, INV)
                if dg > 0:
                    prof[i] = dg // i
                    dc = _divexact(cur, dc, g, dg, nxt, w1, SUB, MUL, INV)
                    for j in range(dc + 1):
                        cur[j] = nxt[j]
                    dh = _mod(h, dh, cur, dc, SUB, MUL, INV)
            if dc > 0:
                prof[dc] += 1
            key = 0
            base = 1
            for j in range(1, n + 1):
                key += prof[j] * base
                base *= n + 1
            idx = np.searchsorted(keys, key)
            counts[idx] += 1
        # advance the little-endian counter
        k += 1
        j = 0
        while j < n:
            f[j] += 1
            if f[j] < q:
                break
            f[j] = 0
            j += 1
    return counts


def _profile_key(parts: tuple[int, ...], n: int) -> int:
    key = 0
    for part in parts:
        key += (n + 1) ** (part - 1)
    return key


_TABLES: dict = {}


def _tables(ctx):
    key = (ctx.p, ctx.e)
    if key not in _TABLES:
        _TABLES[key] = tuple(
            np.asarray(t, dtype=np.int64) for t in (ctx.add, ctx.sub, ctx.mul, ctx.inv)
        )
    return _TABLES[key]


def histogram_chunk(ctx, n: int, start: int, stop: int) -> Counter:
    """Same contract as ``ffpoly.histogram_chunk``."""
    parts = partitions(n)
    keyed = sorted((_profile_key(mu, n), mu) for mu in parts)
    keys = np.array([k for k, _ in keyed], dtype=np.int64)
    ADD, SUB, MUL, INV = _tables(ctx)
    counts = _histogram(ctx.q, ctx.p, n, start, stop, keys, ADD, SUB, MUL, INV)
    return Counter({mu: int(c) for (_, mu), c in zip(keyed, counts) if c})
