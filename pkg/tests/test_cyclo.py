"""Exact cyclotomic kernel: construction, field laws, Galois structure,
square roots, coercion, and the independent reduction oracle."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modata.cyclo import (
    CycloNum,
    MAX_EMBED_DIGITS,
    coerce,
    conjugate,
    cyclo_from_obj,
    cyclotomic_polynomial,
    embed_complex,
    euler_phi,
    field_arithmetic,
    galois_apply,
    make,
    minimal_order,
    root_of_unity_exp,
    sqrt_nonneg_rational,
)
from modata.errors import NegativeRadicandError, NotCoprimeError, NotEmbeddableError


def zeta(m, e=1):
    return make(m, [(e, 1)])


class TestMake:
    def test_square_of_i(self):
        assert make(4, [(2, 1)]) == -1

    def test_cubic_sum_vanishes(self):
        assert make(3, [(0, 1), (1, 1), (2, 1)]).is_zero()

    def test_exponent_reduction(self):
        # zeta_8^7 = -zeta_8^3 under x^4 + 1
        x = make(8, [(1, 1), (7, 1)])
        assert x.coeffs == (0, 1, 0, -1)

    def test_exponents_mod_order(self):
        assert make(5, [(7, 1)]) == zeta(5, 2)

    def test_coefficient_strings(self):
        assert make(4, [(1, "3/2")]) == zeta(4) * Fraction(3, 2)


class TestFieldOps:
    def test_i_squared(self):
        assert field_arithmetic("mul", zeta(4), zeta(4)) == -1

    def test_sqrt2_squared(self):
        x = make(8, [(1, 1), (7, 1)])
        assert field_arithmetic("mul", x, x) == 2

    def test_inverse_of_root(self):
        assert field_arithmetic("div", CycloNum.one(3), zeta(3)) == zeta(3, 2)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            field_arithmetic("div", CycloNum.one(3), CycloNum.zero(3))

    def test_mixed_order_arithmetic(self):
        assert zeta(4) * zeta(3) == zeta(12, 3) * zeta(12, 4)

    def test_integer_powers(self):
        x = zeta(5) + 1
        assert x ** 3 == x * x * x
        assert x ** -2 == (x * x).inverse()


class TestConjugate:
    def test_root(self):
        assert conjugate(zeta(5)) == zeta(5, 4)

    def test_rational_fixed(self):
        assert conjugate(CycloNum.rational(Fraction(3, 7))) == Fraction(3, 7)

    def test_real_element_fixed(self):
        x = make(8, [(1, 1), (7, 1)])
        assert conjugate(x) == x

    def test_involution(self):
        x = make(12, [(1, 2), (5, -3), (0, 1)])
        assert conjugate(conjugate(x)) == x


class TestGalois:
    def test_definition(self):
        assert galois_apply(5, zeta(8)) == zeta(8, 5)

    def test_sqrt2_sign_flip(self):
        x = make(8, [(1, 1), (7, 1)])
        assert galois_apply(5, x) == -x

    def test_rational_fixed(self):
        q = CycloNum.rational(Fraction(-7, 3), order=12)
        for l in (5, 7, 11):
            assert galois_apply(l, q) == q

    def test_noncoprime_rejected(self):
        with pytest.raises(NotCoprimeError):
            galois_apply(2, zeta(8))


class TestCoerce:
    def test_up(self):
        assert coerce(zeta(4), 8) == zeta(8, 2)

    def test_round_trip(self):
        x = make(12, [(0, 1), (1, -2), (3, "1/3")])
        assert coerce(coerce(x, 24), 12) == x

    def test_descent_of_sqrt2(self):
        sqrt2 = make(8, [(1, 1), (7, 1)])
        in24 = coerce(sqrt2, 24)
        assert coerce(in24, 8) == sqrt2

    def test_not_embeddable(self):
        with pytest.raises(NotEmbeddableError):
            coerce(zeta(8), 12)


class TestMinimalOrder:
    def test_rational(self):
        assert minimal_order(CycloNum.rational(Fraction(1, 2))) == 1

    def test_sqrt2_inside_24(self):
        assert minimal_order(coerce(make(8, [(1, 1), (7, 1)]), 24)) == 8

    def test_sixth_root_drops_to_three(self):
        # zeta_6 = -zeta_3^2 already lives in the cubic field
        assert minimal_order(zeta(6)) == 3

    def test_invariant_under_coercion(self):
        x = make(8, [(1, 1), (2, 1)])
        assert minimal_order(coerce(x, 40)) == minimal_order(x)


class TestSqrt:
    def test_zero(self):
        assert sqrt_nonneg_rational(0).is_zero()

    def test_perfect_square(self):
        assert sqrt_nonneg_rational(Fraction(9, 4)) == Fraction(3, 2)

    def test_gauss_sum_five(self):
        s5 = sqrt_nonneg_rational(5)
        assert s5 == make(5, [(1, 1), (2, -1), (3, -1), (4, 1)])
        assert s5 * s5 == 5

    def test_negative_rejected(self):
        with pytest.raises(NegativeRadicandError):
            sqrt_nonneg_rational(-1)

    @pytest.mark.parametrize("q", [2, 3, 5, 6, 7, 10, 15,
                                   Fraction(2, 3), Fraction(49, 8)])
    def test_square_and_positive_embedding(self, q):
        x = sqrt_nonneg_rational(q)
        assert x * x == Fraction(q)
        z = embed_complex(x, 10)
        assert z.real > 0 and abs(z.imag) < 1e-10


class TestRootOfUnity:
    def test_trivial(self):
        assert root_of_unity_exp(0) == 1

    def test_half(self):
        assert root_of_unity_exp(Fraction(1, 2)) == -1

    def test_inverse_pair(self):
        a = root_of_unity_exp(Fraction(-1, 24))
        b = root_of_unity_exp(Fraction(1, 24))
        assert a * b == 1


class TestEmbed:
    def test_i(self):
        assert embed_complex(zeta(4), 10) == complex(0, 1)

    def test_sqrt2(self):
        z = embed_complex(make(8, [(1, 1), (7, 1)]), 10)
        assert z == complex(1.4142135624, 0)

    def test_zero(self):
        assert embed_complex(CycloNum.zero(), 10) == 0

    def test_digit_bound(self):
        with pytest.raises(ValueError):
            embed_complex(zeta(4), MAX_EMBED_DIGITS + 1)


class TestHashing:
    def test_equal_values_hash_equal_across_orders(self):
        a = zeta(4)
        b = coerce(a, 8)
        c = coerce(a, 24)
        assert a == b == c
        assert len({a, b, c}) == 1

    def test_rational_matches_fraction_hash(self):
        x = CycloNum.rational(Fraction(3, 7), order=12)
        assert hash(x) == hash(Fraction(3, 7))


class TestSerialization:
    def test_round_trip(self):
        x = make(12, [(0, "1/2"), (2, -3), (3, "5/7")])
        obj = x.to_obj()
        assert obj["order"] == 12 and len(obj["coeffs"]) == euler_phi(12)
        assert cyclo_from_obj(obj) == x

    def test_length_enforced(self):
        with pytest.raises(ValueError):
            cyclo_from_obj({"order": 8, "coeffs": ["1", "0"]})


# -- property tests ------------------------------------------------------

_orders = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 24])
_coeff = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
)


def _elements(order):
    phi = euler_phi(order)
    return st.lists(_coeff, min_size=phi, max_size=phi).map(
        lambda cs: make(order, list(enumerate(cs)))
    )


@st.composite
def _same_order_triple(draw):
    order = draw(_orders)
    els = _elements(order)
    return order, draw(els), draw(els), draw(els)


@settings(max_examples=60, deadline=None)
@given(_same_order_triple())
def test_ring_laws(data):
    _, a, b, c = data
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@settings(max_examples=60, deadline=None)
@given(_same_order_triple())
def test_canonical_equality(data):
    _, a, b, _ = data
    # equal as field elements iff identical stored data
    assert (a == b) == ((a - b).is_zero())
    assert (a == b) == (a.den == b.den and a.nums == b.nums)


@settings(max_examples=60, deadline=None)
@given(_same_order_triple(), st.integers(min_value=1, max_value=60),
       st.integers(min_value=1, max_value=60))
def test_galois_multiplicative(data, l, m):
    order, a, b, _ = data
    if math.gcd(l, order) != 1 or math.gcd(m, order) != 1:
        return
    assert galois_apply(l, a * b) == galois_apply(l, a) * galois_apply(l, b)
    assert galois_apply(l, galois_apply(m, a)) == galois_apply(l * m, a)


@settings(max_examples=40, deadline=None)
@given(_same_order_triple(), st.sampled_from([2, 3, 4, 5]))
def test_coerce_round_trip_property(data, k):
    order, a, _, _ = data
    up = coerce(a, k * order)
    assert coerce(up, order) == a
    assert minimal_order(up) == minimal_order(a)


# -- independent reduction oracle ----------------------------------------


def _oracle_cyclotomic(m):
    """Moebius-formula cyclotomic polynomial: prod (x^d - 1)^mu(m/d)."""

    def mobius(n):
        out, p = 1, 2
        while p * p <= n:
            if n % p == 0:
                n //= p
                if n % p == 0:
                    return 0
                out = -out
            p += 1
        return -out if n > 1 else out

    def mul(p, q):
        out = [0] * (len(p) + len(q) - 1)
        for i, pi in enumerate(p):
            if pi:
                for j, qj in enumerate(q):
                    out[i + j] += pi * qj
        return out

    def div_exact(p, q):
        p = list(p)
        out = [0] * (len(p) - len(q) + 1)
        for i in range(len(p) - len(q), -1, -1):
            f = p[i + len(q) - 1] // q[-1]
            out[i] = f
            for j, qj in enumerate(q):
                p[i + j] -= f * qj
        assert not any(p[: len(q) - 1])
        return out

    num, den = [1], [1]
    for d in range(1, m + 1):
        if m % d == 0:
            mu = mobius(m // d)
            binom = [-1] + [0] * (d - 1) + [1]
            if mu == 1:
                num = mul(num, binom)
            elif mu == -1:
                den = mul(den, binom)
    return div_exact(num, den)


def test_reduction_against_polynomial_division_oracle():
    """Criterion-9 style check at module level: products agree with plain
    integer polynomial multiplication followed by long division."""
    rnd = random.Random(20240811)
    for _ in range(120):
        m = rnd.randint(2, 60)
        phi = euler_phi(m)
        oracle_poly = _oracle_cyclotomic(m)
        assert list(cyclotomic_polynomial(m)) == oracle_poly
        ca = [rnd.randint(-9, 9) for _ in range(phi)]
        cb = [rnd.randint(-9, 9) for _ in range(phi)]
        a = make(m, list(enumerate(ca)))
        b = make(m, list(enumerate(cb)))
        prod = [0] * (2 * phi - 1)
        for i, x in enumerate(ca):
            for j, y in enumerate(cb):
                prod[i + j] += x * y
        # long division by the oracle polynomial
        for i in range(len(prod) - 1, phi - 1, -1):
            f = prod[i]
            if f:
                for j, c in enumerate(oracle_poly):
                    prod[i - phi + j] -= f * c
        expected = make(m, list(enumerate(prod[:phi])))
        assert a * b == expected
