"""Fractional modular matrices and their scalar phase correction.

For a reduced rational r = k/n, a Bezout pair k*x - n*y = 1 gives a
determinant-one matrix m = [[k, y], [n, x]] and the dual argument r* = x/n.
The fractional matrix is the diagonal-twisted representation value

    L(r) = T^-r  D(m)  T^-r*

(T to fractional powers always meaning the diagonal convention), which is
independent of the Bezout choice and periodic in r.  The hatted variant
multiplies by exp(2*pi*i*g(r)) with g the Q/Z-valued function fixed by
g(0) = 0, periodicity, and the reciprocity

    g(k/n) + g(n/k) = -(c - c0) (3nk - (n^2+k^2+1)/(nk)) / 24   (mod Z),

well defined whenever c - c0 lies in 4Z.  At integer arguments the hatted
matrix is S itself.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import matrixops as mx
from .cyclo import root_of_unity_exp
from .errors import PhaseConstraintError
from .modrep import SL2ZMat, rep_evaluate
from .modular_data import ModularData
from .reporting import CheckRecord, notice


@dataclass(frozen=True)
class ReducedFraction:
    """k/n in lowest terms plus Bezout data k*x - n*y = 1, dual x/n."""

    k: int
    n: int
    x: int
    y: int

    def __post_init__(self):
        if self.k * self.x - self.n * self.y != 1:
            raise ValueError("Bezout pair does not satisfy k*x - n*y = 1")

    @property
    def value(self) -> Fraction:
        return Fraction(self.k, self.n)

    @property
    def dual(self) -> Fraction:
        return Fraction(self.x, self.n)

    def matrix(self) -> SL2ZMat:
        return SL2ZMat(self.k, self.y, self.n, self.x)

    def shifted(self, t: int) -> "ReducedFraction":
        """Another valid Bezout pair: (x + n*t, y + k*t)."""
        return ReducedFraction(self.k, self.n, self.x + self.n * t,
                               self.y + self.k * t)


def bezout(r) -> ReducedFraction:
    """Canonical Bezout data for the reduced fraction r."""
    r = Fraction(r)
    k, n = r.numerator, r.denominator
    if n == 1:
        return ReducedFraction(k, 1, 0, -1)
    x = pow(k % n, -1, n)
    y = (k * x - 1) // n
    return ReducedFraction(k, n, x, y)


def phase_g(c, c0, r) -> Fraction:
    """The phase exponent g(r), represented in [0, 1).

    Computed by the Euclid-style recursion: reduce r into [0, 1); at k/n the
    reciprocity expresses g(k/n) through g(n/k), whose argument reduces by
    periodicity to (n mod k)/k, so coprimality drives the recursion to zero.
    """
    c, c0, r = Fraction(c), Fraction(c0), Fraction(r)
    diff = c - c0
    if diff.denominator != 1 or diff.numerator % 4 != 0:
        raise PhaseConstraintError(f"c - c0 = {diff} is not a multiple of 4")
    q = diff / 24

    def rec(x: Fraction) -> Fraction:
        x = x - math.floor(x)
        if x == 0:
            return Fraction(0)
        k, n = x.numerator, x.denominator
        rhs = -q * (3 * n * k - Fraction(n * n + k * k + 1, n * k))
        val = rhs - rec(Fraction(n, k))
        return val - math.floor(val)

    return rec(r)


def lambda_mat(md: ModularData, r, bez: ReducedFraction | None = None) -> mx.Matrix:
    """The fractional modular matrix L(r) = T^-r D(m) T^-r*."""
    r = Fraction(r)
    if bez is None:
        bez = bezout(r)
    elif bez.value != r:
        raise ValueError("Bezout data does not describe r")
    d = rep_evaluate(md, bez.matrix())
    return mx.scale_cols(
        mx.scale_rows(md.t_entries(-r), d), md.t_entries(-bez.dual)
    )


def lambda_hat(md: ModularData, r) -> mx.Matrix:
    """The hatted matrix exp(2*pi*i*g(r)) L(r); S at integer arguments."""
    r = Fraction(r)
    if r.denominator == 1:
        return md.s
    phase = root_of_unity_exp(phase_g(md.c, md.c0, r))
    return mx.scalar_mul(phase, lambda_mat(md, r))


def verify_lambda_identities(md: ModularData, r) -> list[CheckRecord]:
    """The identity suite at one argument: periodicity, the 1/n closed form,
    the functional equation, transpose/conjugation symmetries for both the
    plain and hatted matrices, unitarity, Bezout independence, and the two
    derived phase symmetries."""
    suite = "lambda"
    r = Fraction(r)
    bz = bezout(r)
    records = []
    lam = lambda_mat(md, r, bz)

    records.append(CheckRecord(
        suite, "periodic",
        mx.mat_eq(lambda_mat(md, r + 1), lam), params={"r": r}))

    n = r.denominator
    lhs = lambda_mat(md, Fraction(1, n))
    rhs = mx.scale_cols(
        mx.scale_rows(
            md.t_entries(Fraction(-1, n)),
            mx.mat_mul(md.s_inv, mx.scale_rows(md.t_entries(-n), md.s)),
        ),
        md.t_entries(Fraction(-1, n)),
    )
    records.append(CheckRecord(
        suite, "one_over_n_word", mx.mat_eq(lhs, rhs), params={"n": n}))

    k = r.numerator
    if k == 0:
        records.append(notice(suite, "functional_equation",
                              "skipped at r = 0", r=r))
    else:
        lhs = lambda_mat(md, Fraction(-n, k))
        rhs = mx.scale_rows(
            md.t_entries(Fraction(n, k)),
            mx.mat_mul(
                md.s,
                mx.scale_rows(md.t_entries(r),
                              mx.scale_cols(lam, md.t_entries(Fraction(1, k * n)))),
            ),
        )
        records.append(CheckRecord(
            suite, "functional_equation", mx.mat_eq(lhs, rhs),
            params={"r": r}))

    records.append(CheckRecord(
        suite, "transpose_dual",
        mx.mat_eq(lambda_mat(md, bz.dual), mx.transpose(lam)),
        params={"r": r}))

    neg = lambda_mat(md, -r)
    conj_ok = all(
        neg[p][q] == lam[md.conj[p]][q].conjugate()
        for p in range(md.rank) for q in range(md.rank)
    )
    records.append(CheckRecord(
        suite, "conjugate_reflection", conj_ok, params={"r": r}))

    hat = lambda_hat(md, r)
    records.append(CheckRecord(
        suite, "hat_transpose_dual",
        mx.mat_eq(lambda_hat(md, bz.dual), mx.transpose(hat)),
        params={"r": r}))

    hat_ref = lambda_hat(md, 1 - r)
    hat_conj_ok = all(
        hat_ref[p][q] == hat[md.conj[p]][q].conjugate()
        for p in range(md.rank) for q in range(md.rank)
    )
    records.append(CheckRecord(
        suite, "hat_conjugate_reflection", hat_conj_ok, params={"r": r}))

    records.append(CheckRecord(
        suite, "hat_unitary",
        mx.is_identity(mx.mat_mul(hat, mx.dagger(hat))),
        params={"r": r}))

    for t in (1, -3):
        records.append(CheckRecord(
            suite, "bezout_independence",
            mx.mat_eq(lambda_mat(md, r, bz.shifted(t)), lam),
            params={"r": r, "t": t}))

    g_here = phase_g(md.c, md.c0, r)
    records.append(CheckRecord(
        suite, "phase_dual_invariant",
        g_here == phase_g(md.c, md.c0, bz.dual), params={"r": r}))
    g_neg = phase_g(md.c, md.c0, -r)
    records.append(CheckRecord(
        suite, "phase_odd",
        (g_here + g_neg) % 1 == 0, params={"r": r}))

    return records


def hat_functional_equation_check(md: ModularData, k: int, n: int) -> CheckRecord:
    """The spliced functional equation for the hatted matrices at the
    coprime pair (k, n):

        hat((k-n)/k) = exp(2 pi i R) T^(n/k) S T^(k/n) hat((k-n)/n) T^(1/kn)

    with R = (c - c0)(3nk - (n^2+k^2+1)/(nk))/24.
    """
    if math.gcd(k, n) != 1:
        raise ValueError("k and n must be coprime")
    big_r = (md.c - md.c0) * (3 * n * k - Fraction(n * n + k * k + 1, n * k)) / 24
    lhs = lambda_hat(md, Fraction(k - n, k))
    chain = mx.scale_rows(
        md.t_entries(Fraction(n, k)),
        mx.mat_mul(
            md.s,
            mx.scale_rows(
                md.t_entries(Fraction(k, n)),
                mx.scale_cols(lambda_hat(md, Fraction(k - n, n)),
                              md.t_entries(Fraction(1, k * n))),
            ),
        ),
    )
    rhs = mx.scalar_mul(root_of_unity_exp(big_r), chain)
    return CheckRecord("lambda", "hat_functional_equation",
                       mx.mat_eq(lhs, rhs), params={"k": k, "n": n})
