from collections import Counter
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from twistedgl.errors import BadDegree, BudgetExceeded, NotMonic, NotPrime, NotSquarefree, ZeroPolynomial
from twistedgl.ffpoly import (
    FqPoly,
    cycle_type_histogram,
    degree_profile,
    derivative,
    enumerate_monic,
    enumerate_squarefree,
    ext_frobenius,
    field_of_order,
    histogram_chunk,
    is_prime,
    is_squarefree,
    make_field,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_mul,
    prime_power,
    sigma_cycle_type,
    squarefree_count,
)

ORDERS = (2, 3, 4, 5, 7, 8, 9, 16, 25, 27)


@st.composite
def field_and_elements(draw, k=3):
    ctx = field_of_order(draw(st.sampled_from(ORDERS)))
    xs = [draw(st.integers(min_value=0, max_value=ctx.q - 1)) for _ in range(k)]
    return ctx, xs


@st.composite
def field_and_polys(draw, k=2, max_deg=6):
    ctx = field_of_order(draw(st.sampled_from(ORDERS[:7])))
    polys = []
    for _ in range(k):
        deg = draw(st.integers(min_value=0, max_value=max_deg))
        c = [draw(st.integers(0, ctx.q - 1)) for _ in range(deg)] + [draw(st.integers(1, ctx.q - 1))]
        polys.append(FqPoly(tuple(c)))
    return ctx, polys


def brute_roots_fixed(ctx, f):
    return sum(1 for x in ctx.elements() if poly_eval(ctx, f, x) == 0)


# ---------------------------------------------------------------------------
# fields


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2**61 - 1)
    assert not is_prime(561)


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(49) == (7, 2)
    for bad in (0, 1, 6, 12, 100):
        with pytest.raises(NotPrime):
            prime_power(bad)


def test_make_field_errors():
    with pytest.raises(NotPrime):
        make_field(4)
    with pytest.raises(BadDegree):
        make_field(3, 0)


def test_modulus_is_first_irreducible():
    assert make_field(2, 2).modulus == (1, 1, 1)
    assert make_field(2, 3).modulus == (1, 1, 0, 1)
    assert make_field(3, 2).modulus == (1, 0, 1)


@given(field_and_elements())
def test_field_axioms(arg):
    ctx, (a, b, c) = arg
    add, mul = ctx.add, ctx.mul
    assert add[a][add[b][c]] == add[add[a][b]][c]
    assert mul[a][mul[b][c]] == mul[mul[a][b]][c]
    assert mul[a][add[b][c]] == add[mul[a][b]][mul[a][c]]
    assert add[a][ctx.neg[a]] == 0
    assert ctx.sub[a][b] == add[a][ctx.neg[b]]
    if a:
        assert mul[a][ctx.inv[a]] == 1


@pytest.mark.parametrize("q", ORDERS)
def test_multiplicative_group_cyclic(q):
    ctx = field_of_order(q)
    orders = Counter()
    for x in range(1, q):
        k, y = 1, x
        while y != 1:
            y = ctx.mul[y][x]
            k += 1
        orders[k] += 1
    assert max(orders) == q - 1
    assert all(ctx.pow(x, q) == x for x in ctx.elements())


@given(field_and_elements(k=2))
def test_frobenius_is_additive(arg):
    ctx, (a, b) = arg
    p = ctx.p
    assert ctx.pow(ctx.add[a][b], p) == ctx.add[ctx.pow(a, p)][ctx.pow(b, p)]


def test_ext_frobenius_order():
    big = make_field(2, 6)
    for x in range(0, 64, 5):
        y = x
        for _ in range(3):
            y = ext_frobenius(big, y, 4)
        assert y == x
    with pytest.raises(ValueError):
        ext_frobenius(big, 3, 3)


# ---------------------------------------------------------------------------
# polynomial arithmetic


@given(field_and_polys())
def test_divmod_identity(arg):
    ctx, (f, g) = arg
    qt, r = poly_divmod(ctx, f, g)
    assert r.degree < g.degree
    back = poly_mul(ctx, qt, g)
    diff = [ctx.sub[a][b] for a, b in zip(
        f.coeffs + (0,) * len(back.coeffs), back.coeffs + (0,) * len(f.coeffs)
    )]
    assert FqPoly(tuple(diff)) == r


@given(field_and_polys(k=3, max_deg=4))
def test_gcd_divides_and_is_multiplicative(arg):
    ctx, (f, g, h) = arg
    d = poly_gcd(ctx, poly_mul(ctx, f, h), poly_mul(ctx, g, h))
    assert d.is_monic()
    assert poly_divmod(ctx, poly_mul(ctx, f, h), d)[1].degree == -1
    hmonic = poly_gcd(ctx, h, h)
    assert poly_divmod(ctx, d, hmonic)[1].degree == -1


@given(field_and_polys(k=2, max_deg=4))
def test_leibniz_rule(arg):
    ctx, (f, g) = arg
    lhs = derivative(ctx, poly_mul(ctx, f, g))
    a = poly_mul(ctx, derivative(ctx, f), g).coeffs
    b = poly_mul(ctx, f, derivative(ctx, g)).coeffs
    size = max(len(a), len(b))
    a, b = a + (0,) * (size - len(a)), b + (0,) * (size - len(b))
    assert lhs == FqPoly(tuple(ctx.add[x][y] for x, y in zip(a, b)))


@given(field_and_polys(k=2, max_deg=4))
def test_evaluation_is_a_homomorphism(arg):
    ctx, (f, g) = arg
    for x in list(ctx.elements())[:5]:
        assert poly_eval(ctx, poly_mul(ctx, f, g), x) == ctx.mul[poly_eval(ctx, f, x)][poly_eval(ctx, g, x)]


def test_squarefree_examples():
    F3 = field_of_order(3)
    assert is_squarefree(F3, F3.poly([0, 0, 1])) is False
    assert is_squarefree(F3, F3.poly([1, 0, 1])) is True
    assert is_squarefree(F3, F3.poly([2, 0, 0, 1])) is False  # x^3 - 1 = (x - 1)^3
    with pytest.raises(ZeroPolynomial):
        is_squarefree(F3, FqPoly(()))


def test_degree_profile_examples():
    F2 = field_of_order(2)
    # x(x + 1)(x^2 + x + 1)
    f = poly_mul(F2, poly_mul(F2, F2.poly([0, 1]), F2.poly([1, 1])), F2.poly([1, 1, 1]))
    prof = degree_profile(F2, f)
    assert prof.d == (2, 1) and prof.count(1) == 2 and prof.count(3) == 0
    assert sigma_cycle_type(prof).parts == (2, 1, 1)
    with pytest.raises(NotMonic):
        degree_profile(F2, FqPoly(()))
    with pytest.raises(NotSquarefree):
        degree_profile(F2, F2.poly([1, 0, 1]))
    F3 = field_of_order(3)
    with pytest.raises(NotMonic):
        degree_profile(F3, F3.poly([1, 2]))


@settings(max_examples=40)
@given(field_and_polys(k=1, max_deg=7))
def test_fixed_points_are_roots(arg):
    """Fixed points of Frobenius on the roots are the roots in F_q."""
    ctx, (f,) = arg
    lead = f.coeffs[-1]
    monic = FqPoly(tuple(ctx.mul[c][ctx.inv[lead]] for c in f.coeffs))
    if monic.degree < 1 or not is_squarefree(ctx, monic):
        return
    assert degree_profile(ctx, monic).count(1) == brute_roots_fixed(ctx, monic)


# ---------------------------------------------------------------------------
# enumeration


@pytest.mark.parametrize("q,n", [(q, n) for q in (2, 3, 4, 5) for n in range(1, 5)])
def test_squarefree_count_small(q, n):
    ctx = field_of_order(q)
    expected = q**n - q ** (n - 1) if n >= 2 else q
    assert squarefree_count(ctx, n) == expected
    assert sum(1 for _ in enumerate_squarefree(ctx, n)) == expected


def test_enumeration_order_is_little_endian():
    F3 = field_of_order(3)
    first = [f.coeffs for f in list(enumerate_monic(F3, 2))[:4]]
    assert first == [(0, 0, 1), (1, 0, 1), (2, 0, 1), (0, 1, 1)]


def test_budget():
    F5 = field_of_order(5)
    with pytest.raises(BudgetExceeded):
        list(enumerate_monic(F5, 4, budget=100))
    with pytest.raises(BudgetExceeded):
        cycle_type_histogram(F5, 4, budget=100)


@pytest.mark.parametrize("q,n", [(2, 8), (3, 5), (4, 4), (5, 4), (7, 3), (8, 3), (9, 3)])
def test_compiled_engine_matches_python(q, n):
    ctx = field_of_order(q)
    py = cycle_type_histogram(ctx, n, engine="python", chunks=1)
    fast = cycle_type_histogram(ctx, n, engine="compiled", chunks=3)
    assert py == fast


def test_chunks_partition_the_range():
    ctx = field_of_order(3)
    total = Counter()
    for a, b in ((0, 10), (10, 50), (50, 81)):
        total.update(histogram_chunk(ctx, 4, a, b))
    assert dict(total) == cycle_type_histogram(ctx, 4)


def test_parallel_matches_serial():
    ctx = field_of_order(3)
    serial = cycle_type_histogram(ctx, 5, engine="python", chunks=1)
    parallel = cycle_type_histogram(ctx, 5, engine="python", jobs=2, chunks=2)
    assert serial == parallel


def test_histogram_against_naive_factorization():
    """Count cycle types by multiplying out all products of irreducibles of degree ≤ 4 over F_2."""
    F2 = field_of_order(2)
    n = 4
    irreducible = {d: [] for d in range(1, n + 1)}
    for d in range(1, n + 1):
        for c in product(range(2), repeat=d):
            f = FqPoly(c + (1,))
            if is_squarefree(F2, f) and degree_profile(F2, f).d == (0,) * (d - 1) + (1,):
                irreducible[d].append(f)
    assert [len(irreducible[d]) for d in range(1, 5)] == [2, 1, 2, 3]
    hist = cycle_type_histogram(F2, n)
    # only one irreducible quadratic and two linear factors are available
    assert hist == {(4,): 3, (3, 1): 4, (2, 1, 1): 1}
