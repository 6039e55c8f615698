"""Modular datum validation, fusion, phase class, conductor, builtins."""

from fractions import Fraction

import pytest

from modata import matrixops as mx
from modata.cyclo import CycloNum, embed_complex, make, sqrt_nonneg_rational
from modata.errors import (
    AxiomViolationError,
    ConductorMismatchError,
    NonIntegralFusionError,
    UnsupportedModelError,
)
from modata.modular_data import (
    ModularData,
    builtin_model,
    from_obj,
    loads,
    verlinde_sum,
)


@pytest.fixture(scope="module")
def su2_1():
    return builtin_model("su2", 1)


@pytest.fixture(scope="module")
def su2_2():
    return builtin_model("su2", 2)


@pytest.fixture(scope="module")
def trivial():
    return builtin_model("trivial")


class TestValidate:
    def test_su2_1_passes(self, su2_1):
        assert all(r.passed for r in su2_1.validation_report)

    def test_one_label_datum(self, trivial):
        assert trivial.rank == 1
        assert trivial.conj == (0,)

    def test_sign_flip_rejected(self, su2_1):
        s = [list(row) for row in su2_1.s]
        s[1][1] = -s[1][1]
        with pytest.raises(AxiomViolationError) as exc:
            ModularData(su2_1.labels, s, su2_1.delta, su2_1.c, su2_1.c0)
        failed = {r.check for r in exc.value.report if not r.passed}
        assert failed  # names the violated identity
        assert failed <= {
            "s_unitary", "s_square_is_conjugation", "sts_twist_relation",
            "fusion_integral_nonnegative",
        }

    def test_empty_rejected(self):
        with pytest.raises(AxiomViolationError):
            ModularData([], [], [], 0, 0)

    def test_wrong_c0_class_rejected(self, su2_1):
        with pytest.raises(AxiomViolationError) as exc:
            ModularData(su2_1.labels, su2_1.s, su2_1.delta, su2_1.c,
                        Fraction(3))
        assert any(
            not r.passed and r.check in ("sts_twist_relation",
                                         "central_charge_residue")
            for r in exc.value.report
        )


class TestTPower:
    def test_zero_is_identity(self, su2_1):
        assert mx.is_identity(su2_1.t_power(0))

    def test_su2_1_entries(self, su2_1):
        t = su2_1.t_entries(1)
        assert t[0] == make(24, [(-1, 1)])
        assert t[1] == make(24, [(5, 1)])

    def test_group_law(self, su2_2):
        r, s = Fraction(1, 3), Fraction(2, 5)
        lhs = [a * b for a, b in zip(su2_2.t_entries(r), su2_2.t_entries(s))]
        assert list(su2_2.t_entries(r + s)) == lhs

    def test_inverse_is_conjugate(self, su2_2):
        assert list(su2_2.t_entries(-1)) == [
            x.conjugate() for x in su2_2.t_entries(1)
        ]


class TestVerlinde:
    def test_vacuum_column(self, su2_2):
        for mu in range(3):
            for nu in range(3):
                assert su2_2.verlinde(0, mu, nu) == (1 if mu == nu else 0)

    def test_su2_1_fusion(self, su2_1):
        assert su2_1.verlinde(1, 1, 0) == 1
        assert su2_1.verlinde(1, 1, 1) == 0

    def test_su2_2_middle(self, su2_2):
        assert su2_2.verlinde(1, 1, 0) == 1
        assert su2_2.verlinde(1, 1, 1) == 0
        assert su2_2.verlinde(1, 1, 2) == 1

    def test_non_integer_raises(self, su2_1):
        s = [list(row) for row in su2_1.s]
        s[1][1] = s[1][1] * Fraction(1, 3)  # corrupt
        with pytest.raises(NonIntegralFusionError):
            verlinde_sum(mx.mat(s), 1, 1, 0)

    def test_associativity(self):
        for k in (1, 2, 3, 4):
            md = builtin_model("su2", k)
            r = md.rank
            for lam in range(r):
                for mu in range(r):
                    for nu in range(r):
                        for rho in range(r):
                            lhs = sum(
                                md.verlinde(lam, mu, x) * md.verlinde(x, nu, rho)
                                for x in range(r)
                            )
                            rhs = sum(
                                md.verlinde(mu, nu, y) * md.verlinde(lam, y, rho)
                                for y in range(r)
                            )
                            assert lhs == rhs


class TestQdimMu:
    def test_vacuum_dimension(self, su2_2, trivial):
        assert su2_2.qdim(0) == 1
        assert trivial.qdim(0) == 1

    def test_sqrt2_dimension(self, su2_2):
        assert su2_2.qdim(1) == sqrt_nonneg_rational(2)

    def test_mu_su2_1(self, su2_1):
        assert su2_1.mu_index() == 2

    def test_mu_matches_s00(self, su2_2):
        assert su2_2.mu_index() == su2_2.s00_inv() ** 2

    def test_eigenvector_property(self):
        # fusion matrix applied to the dimension vector rescales it
        md = builtin_model("su2", 3)
        dims = [md.qdim(l) for l in range(md.rank)]
        for lam in range(md.rank):
            for mu in range(md.rank):
                acc = None
                for nu in range(md.rank):
                    n = md.verlinde(lam, mu, nu)
                    if n:
                        term = n * dims[nu]
                        acc = term if acc is None else acc + term
                assert acc == md.qdim(lam) * dims[mu]

    def test_mu_closed_form_numeric(self):
        import math
        for k in range(1, 9):
            md = builtin_model("su2", k)
            z = embed_complex(md.mu_index(), 10)
            expected = (k + 2) / (2 * math.sin(math.pi / (k + 2)) ** 2)
            assert abs(z.real - expected) < 1e-10 and abs(z.imag) < 1e-10


class TestC0Consistency:
    def test_su2_1_phase(self, su2_1):
        # statistical sum is 1 - i, so the class is 1 mod 8
        assert all(r.passed for r in su2_1.c0_consistency())
        assert su2_1.c0 == 1

    def test_trivial(self, trivial):
        assert trivial.c0 == 0
        assert all(r.passed for r in trivial.c0_consistency())

    def test_wrong_c0_fails_report(self, su2_1):
        md = builtin_model("su2", 1, c0_override=Fraction(9))  # same class
        bad = ModularData.__new__(ModularData)
        bad.__dict__.update(md.__dict__)
        bad.c0 = Fraction(3)  # wrong residue, report-level only
        bad._t_cache = {}
        recs = bad.c0_consistency()
        assert any(not r.passed for r in recs)


class TestConductor:
    @pytest.mark.parametrize(
        "k,n,n0,e,n0c",
        [(1, 24, 4, 6, 4), (2, 16, 16, 1, 24)],
    )
    def test_su2_values(self, k, n, n0, e, n0c):
        md = builtin_model("su2", k)
        info, records = md.conductor()
        assert (info.n, info.n0, info.e) == (n, n0, e)
        assert info.n0 * md.c == n0c
        assert all(r.passed for r in records)

    def test_trivial(self, trivial):
        info, _ = trivial.conductor()
        assert (info.n, info.n0, info.e) == (1, 1, 1)

    def test_mismatch_detected(self, su2_1):
        md = builtin_model("su2", 1)
        bad = ModularData.__new__(ModularData)
        bad.__dict__.update(md.__dict__)
        bad.delta = (Fraction(0), Fraction(1, 4))
        bad.c0 = Fraction(0)  # order of T becomes 8; sqrt2 needs 24... still 8-ok
        bad._conductor = None
        bad._conductor_records = None
        bad._t_cache = {}
        # entries of S live in Q(zeta_8); with c0=0 the T order is 4
        with pytest.raises(ConductorMismatchError):
            bad.conductor()


class TestAutomorphismAction:
    def test_vacuum_ratios(self, su2_1):
        assert all(r == 1 for r in su2_1.automorphism_ratios(0))

    def test_su2_1_sign(self, su2_1):
        ratios = su2_1.automorphism_ratios(1)
        assert ratios[0] == 1 and ratios[1] == -1

    def test_su2_2_signs(self, su2_2):
        recs = su2_2.automorphism_action_check(2)
        assert all(r.passed for r in recs)
        assert all(r in (1, -1) for r in su2_2.automorphism_ratios(2))

    def test_non_automorphism_rejected(self, su2_2):
        with pytest.raises(ValueError):
            su2_2.automorphism_ratios(1)


class TestBuiltins:
    def test_su2_1_matrix(self, su2_1):
        inv_sqrt2 = sqrt_nonneg_rational(Fraction(1, 2))
        assert su2_1.s[0][0] == inv_sqrt2
        assert su2_1.s[1][1] == -inv_sqrt2
        assert su2_1.delta == (Fraction(0), Fraction(1, 4))
        assert su2_1.c == 1 and su2_1.c0 == 1

    def test_su2_2_dimensions(self, su2_2):
        dims = [su2_2.qdim(l) for l in range(3)]
        assert dims[0] == 1 and dims[2] == 1
        assert dims[1] == sqrt_nonneg_rational(2)

    def test_trivial_shape(self, trivial):
        assert trivial.s == ((CycloNum.one(),),)

    def test_cyclic_odd_group_fusion(self):
        md = builtin_model("cyclic_odd", 5)
        for j in range(5):
            for k in range(5):
                for l in range(5):
                    assert md.verlinde(j, k, l) == (1 if (j + k) % 5 == l else 0)

    def test_unknown_rejected(self):
        with pytest.raises(UnsupportedModelError):
            builtin_model("su3", 1)
        with pytest.raises(UnsupportedModelError):
            builtin_model("cyclic_odd", 4)

    def test_c0_override_class_checked(self):
        md = builtin_model("su2", 1, c0_override=Fraction(-7))
        assert md.c0 == -7
        with pytest.raises(ValueError):
            builtin_model("su2", 1, c0_override=Fraction(2))

    def test_tau2_configurable(self):
        md = builtin_model("su2", 1, tau2=1)
        assert md.tau2 == 1
        assert all(r.passed for r in md.validation_report)


class TestSerialization:
    def test_round_trip(self, su2_2):
        text = su2_2.dumps()
        again = loads(text)
        assert again.labels == su2_2.labels
        assert mx.mat_eq(again.s, su2_2.s)
        assert again.delta == su2_2.delta
        assert again.dumps() == text  # bit-reproducible

    def test_tau2_preserved(self):
        md = builtin_model("su2", 2, tau2=2)
        assert from_obj(md.to_obj()).tau2 == 2
