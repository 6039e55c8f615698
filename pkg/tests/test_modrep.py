"""Generator words, the modular representation, sampling, and level maps."""

import math
import random

import pytest

from modata import matrixops as mx
from modata.errors import NotCoprimeError
from modata.modrep import (
    IDENTITY,
    Lcg,
    S_GEN,
    SL2ZMat,
    decompose,
    evaluate_word,
    in_gamma,
    in_gamma1,
    lift_to_sl2z,
    random_word_matrix,
    rep_evaluate,
    sample_gamma,
    t_gen,
    tau_l,
)
from modata.modular_data import builtin_model


@pytest.fixture(scope="module")
def su2_1():
    return builtin_model("su2", 1)


@pytest.fixture(scope="module")
def su2_2():
    return builtin_model("su2", 2)


def _random_sl2z(rnd, bound=10 ** 6):
    while True:
        a, e = rnd.randint(-bound, bound), rnd.randint(-bound, bound)
        if (a or e) and math.gcd(a, e) == 1:
            break
    # extend to determinant one
    old_r, r, old_s, s, old_t, t = a, e, 1, 0, 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return SL2ZMat(a, -old_t, e, old_s)


class TestDecompose:
    def test_identity(self):
        w = decompose(IDENTITY)
        assert len(w) == 0 and w.sign == 1

    def test_s(self):
        w = decompose(S_GEN)
        assert w.tokens == (("s", 1),) and w.sign == 1

    def test_t_cubed(self):
        w = decompose(t_gen(3))
        assert w.tokens == (("t", 3),) and w.sign == 1

    def test_small_example(self):
        m = SL2ZMat(2, 1, 1, 1)
        assert evaluate_word(decompose(m)) == m

    def test_minus_identity(self):
        w = decompose(-IDENTITY)
        assert w.sign == -1 and evaluate_word(w) == -IDENTITY

    def test_thousand_roundtrips(self):
        rnd = random.Random(99)
        for _ in range(1000):
            m = _random_sl2z(rnd)
            assert evaluate_word(decompose(m)) == m

    def test_det_checked(self):
        with pytest.raises(ValueError):
            SL2ZMat(1, 1, 1, 1)


class TestRepresentation:
    def test_identity(self, su2_1):
        assert mx.is_identity(rep_evaluate(su2_1, IDENTITY))

    def test_generators(self, su2_1):
        assert mx.mat_eq(rep_evaluate(su2_1, S_GEN), su2_1.s)
        assert mx.mat_eq(rep_evaluate(su2_1, t_gen(1)), su2_1.t_power(1))

    def test_minus_identity_is_conjugation(self, su2_2):
        assert mx.mat_eq(rep_evaluate(su2_2, -IDENTITY), su2_2.chat)

    @pytest.mark.parametrize("level", [1, 2])
    def test_homomorphism_50_pairs(self, level):
        md = builtin_model("su2", level)
        rng = Lcg(5)
        for _ in range(50):
            m1 = random_word_matrix(rng)
            m2 = random_word_matrix(rng)
            lhs = rep_evaluate(md, m1 * m2)
            rhs = mx.mat_mul(rep_evaluate(md, m1), rep_evaluate(md, m2))
            assert mx.mat_eq(lhs, rhs)

    def test_t_to_conductor_power_trivial(self, su2_1, su2_2):
        for md in (su2_1, su2_2):
            n = md.conductor_n()
            assert mx.is_identity(rep_evaluate(md, t_gen(n)))


class TestSampling:
    @pytest.mark.parametrize("n", [2, 16, 24])
    def test_membership_100(self, n):
        rng = Lcg(1)
        for _ in range(100):
            assert in_gamma(n, sample_gamma(n, rng))

    def test_level_one(self):
        m = sample_gamma(1, Lcg(3))
        assert m.a * m.d - m.b * m.e == 1

    def test_seed_determinism(self):
        a = [sample_gamma(16, Lcg(42)) for _ in range(5)]
        b = [sample_gamma(16, Lcg(42)) for _ in range(5)]
        assert a == b

    def test_lcg_fixed_constants(self):
        rng = Lcg(0)
        assert rng.next_u64() == 1442695040888963407


class TestCongruenceMembership:
    def test_identity_everywhere(self):
        for n in (1, 2, 7, 24):
            assert in_gamma(n, IDENTITY)

    def test_t_power_n(self):
        assert in_gamma(7, t_gen(7))
        assert not in_gamma(7, t_gen(3))

    def test_gamma1_strictly_larger(self):
        m = t_gen(1)
        assert in_gamma1(2, m) and not in_gamma(2, m)


class TestTauAndLift:
    def test_tau_one_is_identity(self):
        m = SL2ZMat(5, 2, 2, 1)
        assert tau_l(m, 1, 12) == m.mod(12)

    def test_tau_on_t(self):
        assert tau_l(t_gen(1), 7, 24) == (1, 7, 0, 1)

    def test_tau_inverse_composition(self):
        n = 24
        for l in (5, 7, 11, 13):
            lhat = pow(l, -1, n)
            m = SL2ZMat(5, 2, 2, 1)
            back = tau_l(lift_to_sl2z(n, tau_l(m, l, n)), lhat, n)
            assert back == m.mod(n)

    def test_tau_noncoprime(self):
        with pytest.raises(NotCoprimeError):
            tau_l(IDENTITY, 4, 24)

    def test_lift_congruence_and_det(self):
        rng = Lcg(17)
        for n in (2, 5, 16, 24):
            for _ in range(20):
                m = random_word_matrix(rng)
                lifted = lift_to_sl2z(n, m.mod(n))
                assert lifted.mod(n) == m.mod(n)
                assert lifted.a * lifted.d - lifted.b * lifted.e == 1
