import random

import pytest
from hypothesis import given, strategies as st

from pvs.errors import DivisionByZero, DuplicateAbscissa, InconsistentPoints, MixedFields
from pvs.field import (
    EvalPoints, FieldElement, Poly, PrimeField, VecPoly, fe_arith, interpolate,
    matmul_mod, poly_eval, poly_random, prime_field, solve_linear,
)

P = 2**31 - 1
elements = st.integers(min_value=0, max_value=P - 1)


def test_fe_arith_examples(gf7):
    a = gf7(4)
    assert fe_arith(a, gf7(0), "add") == a
    assert fe_arith(gf7(3), gf7(5), "mul") == 1
    with pytest.raises(DivisionByZero):
        fe_arith(gf7(1), gf7(0), "div")


def test_non_prime_modulus_rejected():
    with pytest.raises(ValueError):
        PrimeField(15)
    with pytest.raises(ValueError):
        PrimeField(2**64 + 13)


def test_mixed_fields(gf5, gf7):
    with pytest.raises(MixedFields):
        gf5(1) + gf7(1)


@given(elements, elements)
def test_arithmetic_matches_modular_ints(a, b):
    f = prime_field(P)
    x, y = f(a), f(b)
    assert (x + y).value == (a + b) % P
    assert (x - y).value == (a - b) % P
    assert (x * y).value == a * b % P
    if b:
        assert (x / y * y) == x


def test_poly_eval_examples(gf7):
    p = Poly(gf7, [3, 2])
    assert poly_eval(p, 2) == 0
    assert poly_eval(p, 0) == 3
    c = Poly.constant(gf7, 4)
    assert all(poly_eval(c, x) == 4 for x in range(7))


def test_zero_poly_degree(gf7):
    assert Poly(gf7, [0, 0]).degree == float("-inf")
    assert Poly(gf7, [1, 0, 0]).coeffs == (1,)


def test_interpolate_examples(gf7):
    assert interpolate([(gf7(3), gf7(6))], 0) == Poly.constant(gf7, 6)
    assert interpolate([(1, 5), (2, 0)], 1, gf7) == Poly(gf7, [3, 2])
    with pytest.raises(InconsistentPoints):
        interpolate([(1, 5), (2, 0), (3, 3)], 1, gf7)
    with pytest.raises(DuplicateAbscissa):
        interpolate([(1, 5), (1, 5)], 1, gf7)


@given(st.lists(elements, min_size=1, max_size=8), st.randoms(use_true_random=False))
def test_interpolate_round_trip(coeffs, rnd):
    f = prime_field(P)
    poly = Poly(f, coeffs)
    t = len(coeffs) - 1
    xs = rnd.sample(range(1, P), t + 3)
    assert interpolate([(x, poly.evaluate(x)) for x in xs], t, f) == poly


def test_poly_random(gf7):
    assert poly_random(gf7, 0, 5, random.Random(0)) == Poly.constant(gf7, 5)
    p = poly_random(gf7, 3, 2, random.Random(9))
    assert p.degree <= 3 and p.evaluate(0) == 2
    a = poly_random(gf7, 3, [1, 2], random.Random(4))
    b = poly_random(gf7, 3, [1, 2], random.Random(4))
    assert isinstance(a, VecPoly) and a == b and a.constant_term() == (1, 2)


def test_vecpoly_elementwise_product(gf7):
    a = VecPoly([Poly(gf7, [1, 1]), Poly(gf7, [2])])
    b = VecPoly([Poly(gf7, [0, 1]), Poly(gf7, [3, 1])])
    prod = a * b
    for x in range(7):
        want = tuple(u * v % 7 for u, v in zip(a.evaluate(x), b.evaluate(x)))
        assert prod.evaluate(x) == want


def test_vecpoly_evaluate_many_matches_horner(big, rng):
    v = poly_random(big, 4, [rng.randrange(P) for _ in range(5)], rng)
    xs = [rng.randrange(1, P) for _ in range(6)]
    fresh = VecPoly(list(v.components))
    assert fresh.evaluate_many(xs) == [tuple(c.evaluate(x) for c in v.components) for x in xs]


@pytest.mark.parametrize("p", [7, 2**31 - 1, 2**61 - 1])
def test_matmul_mod_oracle(p, rng):
    a = [[rng.randrange(p) for _ in range(5)] for _ in range(4)]
    b = [[rng.randrange(p) for _ in range(3)] for _ in range(5)]
    want = [[sum(a[i][k] * b[k][j] for k in range(5)) % p for j in range(3)] for i in range(4)]
    assert [[int(x) for x in row] for row in matmul_mod(a, b, p).tolist()] == want


def test_divmod(gf7):
    a = Poly(gf7, [1, 2, 3, 4])
    b = Poly(gf7, [5, 1])
    q, r = divmod(a, b)
    assert q * b + r == a and r.degree < b.degree


def test_eval_points(gf7):
    pts = EvalPoints.default(gf7, 4)
    assert list(pts) == [1, 2, 3, 4] and pts.alpha(2) == 2
    with pytest.raises(ValueError):
        EvalPoints(gf7, [0, 1])
    with pytest.raises(DuplicateAbscissa):
        EvalPoints(gf7, [1, 1])
    with pytest.raises(ValueError):
        EvalPoints.default(gf7, 7)


def test_solve_linear(gf7):
    assert solve_linear([[1, 1], [1, 6]], [3, 6], 7) == [1, 2]
    assert solve_linear([[1, 1], [2, 2]], [1, 3], 7) is None


def test_field_element_canonical(gf7):
    with pytest.raises(ValueError):
        FieldElement(7, gf7)
    assert gf7(-1).value == 6
