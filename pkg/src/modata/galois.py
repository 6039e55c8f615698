"""Galois action on modular data.

The Frobenius zeta -> zeta^l acts entrywise on S as a signed permutation of
columns and on T as T -> T^l.  This module extracts the signed permutation,
machine-checks the conjugation and word formulas for it, tests membership in
the representation kernel against the arithmetic criterion, runs the
congruence-subgroup sampling suites, and extracts the diagonal phase
matrices relating Frobenius images of the fractional modular matrices.

Applying sigma_l to a matrix whose entries live at mixed ambient orders uses
a lift l' = l (mod the field modulus that determines the action) chosen
coprime to the working order; existence is guaranteed because every prime of
the working order either divides the modulus (where l is already a unit) or
can be dodged by shifting l by multiples of the modulus.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import matrixops as mx
from .cyclo import root_of_unity_exp
from .errors import (
    LiftNotFoundError,
    NoMonomialStructureError,
    NotCoprimeError,
    NotDiagonalError,
)
from .lambdamat import lambda_hat
from .modrep import (
    Lcg,
    SL2ZMat,
    in_gamma,
    in_gamma1,
    lift_to_sl2z,
    random_word_matrix,
    rep_evaluate,
    sample_gamma,
    t_gen,
    tau_l,
)
from .modular_data import ModularData
from .reporting import CheckRecord, notice


@dataclass(frozen=True)
class MonomialSignedPerm:
    """A signed permutation: as a matrix, G[i][j] = signs[j]*delta(i, perm[j])."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def as_matrix(self) -> mx.Matrix:
        return mx.perm_sign_matrix(self.perm, self.signs)

    def inverse_matrix(self) -> mx.Matrix:
        return mx.transpose(self.as_matrix())

    def compose(self, other: "MonomialSignedPerm") -> "MonomialSignedPerm":
        perm = tuple(self.perm[other.perm[j]] for j in range(len(self.perm)))
        signs = tuple(
            self.signs[other.perm[j]] * other.signs[j]
            for j in range(len(self.perm))
        )
        return MonomialSignedPerm(perm, signs)


def coprime_lift(l: int, modulus: int, working_order: int) -> int:
    """The smallest l' >= 1 with l' = l (mod modulus), gcd(l', working) = 1."""
    if math.gcd(l, modulus) != 1:
        raise NotCoprimeError(f"gcd({l}, {modulus}) != 1")
    base = l % modulus
    if base == 0:  # modulus == 1
        base = 1
        modulus = 1
    cand = base if base else modulus
    for _ in range(4 * working_order + 8):
        if math.gcd(cand, working_order) == 1:
            return cand
        cand += modulus
    raise LiftNotFoundError(
        f"no unit lift of {l} mod {modulus} against order {working_order}"
    )


def sigma_matrix(l: int, m: mx.Matrix, modulus: int) -> mx.Matrix:
    """Apply the Frobenius determined by l mod `modulus` to every entry."""
    working = 1
    for row in m:
        for x in row:
            working = math.lcm(working, x.order)
    lp = coprime_lift(l, modulus, working)
    return tuple(tuple(x.galois(lp % x.order) for x in row) for row in m)


def parity_decompose(md: ModularData, l: int) -> MonomialSignedPerm:
    """The signed column permutation with sigma_l(S) = S G; checked against
    both factorizations S G = G^-1 S."""
    n = md.conductor_n()
    sig = sigma_matrix(l, md.s, n)
    rank = md.rank
    cols_sig = list(zip(*sig))
    cols_s = list(zip(*md.s))
    perm = [-1] * rank
    signs = [0] * rank
    for mu in range(rank):
        matches = []
        for nu in range(rank):
            if cols_sig[mu] == cols_s[nu]:
                matches.append((nu, 1))
            if all(x == -y for x, y in zip(cols_sig[mu], cols_s[nu])):
                matches.append((nu, -1))
        if len(matches) != 1:
            raise NoMonomialStructureError(
                f"column {mu} has {len(matches)} signed matches under l={l}"
            )
        perm[mu], signs[mu] = matches[0]
    if sorted(perm) != list(range(rank)):
        raise NoMonomialStructureError("column matches are not a permutation")
    g = MonomialSignedPerm(tuple(perm), tuple(signs))
    gm = g.as_matrix()
    if not mx.mat_eq(sig, mx.mat_mul(md.s, gm)):
        raise NoMonomialStructureError("right factorization failed")
    if not mx.mat_eq(sig, mx.mat_mul(g.inverse_matrix(), md.s)):
        raise NoMonomialStructureError("left factorization failed")
    return g


def verify_galois_identities(md: ModularData, l: int) -> list[CheckRecord]:
    """Frobenius on T, its conjugation by the signed permutation, and the
    generator-word formula for the signed permutation itself."""
    suite = "galois"
    n = md.conductor_n()
    if math.gcd(l, n) != 1:
        raise NotCoprimeError(f"gcd({l}, {n}) != 1")
    t1 = mx.diagonal(md.t_entries(1))
    records = []
    sig_t = sigma_matrix(l, t1, n)
    records.append(
        CheckRecord(suite, "t_frobenius_power",
                    mx.mat_eq(sig_t, mx.diagonal(md.t_entries(l))),
                    params={"l": l})
    )
    g = parity_decompose(md, l)
    gm = g.as_matrix()
    lhs = mx.mat_mul(g.inverse_matrix(), mx.mat_mul(t1, gm))
    records.append(
        CheckRecord(suite, "t_conjugation_l_squared",
                    mx.mat_eq(lhs, mx.diagonal(md.t_entries(l * l))),
                    params={"l": l})
    )
    lhat = pow(l % n, -1, n) if n > 1 else 0
    word = mx.mat_mul(
        md.s_inv,
        mx.scale_rows(
            md.t_entries(l),
            mx.mat_mul(
                mx.scale_cols(md.s, md.t_entries(lhat)),
                mx.scale_cols(md.s, md.t_entries(l)),
            ),
        ),
    )
    records.append(
        CheckRecord(suite, "g_generator_word",
                    mx.mat_eq(word, gm), params={"l": l, "lhat": lhat})
    )
    return records


def g_multiplicative_check(md: ModularData, l: int, m: int) -> CheckRecord:
    g_l = parity_decompose(md, l)
    g_m = parity_decompose(md, m)
    g_lm = parity_decompose(md, l * m)
    ok = g_l.compose(g_m) == g_lm
    return CheckRecord("galois", "g_multiplicative", ok,
                       params={"l": l, "m": m})


@dataclass(frozen=True)
class KernelTestResult:
    """Direct kernel membership, the arithmetic criterion (when the lower
    right entry is a unit mod the conductor), and the Frobenius
    factorization identity for the represented matrix."""

    direct: bool
    criterion: bool | None
    sigma_factorization: bool | None


def kernel_test(md: ModularData, m: SL2ZMat) -> KernelTestResult:
    n = md.conductor_n()
    dm = rep_evaluate(md, m)
    direct = mx.is_identity(dm)
    criterion = None
    factorization = None
    if math.gcd(m.d, n) == 1:
        sig_s = sigma_matrix(m.d, md.s, n)
        lhs = mx.scale_cols(sig_s, md.t_entries(m.b))
        rhs = mx.scale_rows(md.t_entries(m.e), md.s)
        criterion = mx.mat_eq(lhs, rhs)
        sig_dm = sigma_matrix(m.d, dm, n)
        rhs2 = mx.scale_rows(
            md.t_entries(m.b),
            mx.mat_mul(md.s_inv, mx.scale_rows(md.t_entries(-m.e), sig_s)),
        )
        factorization = mx.mat_eq(sig_dm, rhs2)
    return KernelTestResult(direct, criterion, factorization)


def congruence_suite(md: ModularData, samples: int, seed: int,
                     ls: tuple[int, ...] = (5, 7, 11)) -> list[CheckRecord]:
    """Sampling checks: level-n elements act trivially, the Frobenius
    intertwines the representation with the entry-rescaling automorphism,
    and elements of the intermediate subgroup act trivially exactly when
    they lie in the principal congruence subgroup."""
    suite = "congruence"
    n = md.conductor_n()
    rng = Lcg(seed)
    records = []

    fails = 0
    witness = ""
    for i in range(samples):
        m = sample_gamma(n, rng)
        if not mx.is_identity(rep_evaluate(md, m)):
            fails += 1
            if not witness:
                witness = f"sample {i}: {m.to_obj()}"
    records.append(
        CheckRecord(suite, "level_subgroup_in_kernel", fails == 0,
                    params={"n": n, "samples": samples}, witness=witness)
    )

    for l in ls:
        if math.gcd(l, n) != 1:
            records.append(
                notice(suite, "equivariance_skipped",
                       f"l={l} shares a factor with n={n}", l=l, n=n)
            )
            continue
        fails = 0
        witness = ""
        for i in range(samples):
            m = random_word_matrix(rng)
            lifted = lift_to_sl2z(n, tau_l(m, l, n))
            lhs = sigma_matrix(l, rep_evaluate(md, m), n)
            rhs = rep_evaluate(md, lifted)
            if not mx.mat_eq(lhs, rhs):
                fails += 1
                if not witness:
                    witness = f"sample {i}: {m.to_obj()}"
        records.append(
            CheckRecord(suite, "frobenius_equivariance", fails == 0,
                        params={"l": l, "n": n, "samples": samples},
                        witness=witness)
        )

    if n == 1:
        records.append(
            notice(suite, "intermediate_subgroup", "vacuous at level 1", n=n)
        )
        return records
    fails = 0
    witness = ""
    for i in range(samples):
        b = rng.int_in(1, n - 1)
        m = sample_gamma(n, rng) * t_gen(b) * sample_gamma(n, rng)
        ok = (
            in_gamma1(n, m)
            and not in_gamma(n, m)
            and not mx.is_identity(rep_evaluate(md, m))
        )
        if not ok:
            fails += 1
            if not witness:
                witness = f"sample {i}: {m.to_obj()}"
    records.append(
        CheckRecord(suite, "intermediate_subgroup", fails == 0,
                    params={"n": n, "samples": samples}, witness=witness)
    )
    return records


# -- diagonal phase matrices for the fractional modular matrices --------


def _entry_modulus(md: ModularData, *args: Fraction) -> int:
    # Entries of the hatted matrix at argument s are scalar phases times
    # elements of Q(zeta_{n*den(s)}) (the diagonal powers contribute n*den,
    # the represented word stays inside the conductor field), so the exact
    # field modulus is that times the order of each scalar phase.
    from .lambdamat import phase_g

    n = md.conductor_n()
    modulus = n
    for s in args:
        modulus = math.lcm(modulus, n * s.denominator)
        modulus = math.lcm(modulus, phase_g(md.c, md.c0, s).denominator)
    return modulus


def z_matrix(md: ModularData, l: int, r) -> mx.Matrix:
    """The diagonal matrix Z_l(r), extracted from the Frobenius image of the
    hatted fractional matrix at the dual argument; raises NotDiagonalError
    when extraction fails."""
    r = Fraction(r)
    rstar = _dual_argument(r)
    lr = l * rstar
    modulus = _entry_modulus(md, rstar, lr)
    if math.gcd(l, modulus) != 1:
        raise NotCoprimeError(f"gcd({l}, {modulus}) != 1")
    hat_r = lambda_hat(md, rstar)
    hat_lr = lambda_hat(md, lr)
    g = parity_decompose(md, l)
    z = mx.mat_mul(
        g.inverse_matrix(),
        mx.mat_mul(mx.dagger(hat_lr), sigma_matrix(l, hat_r, modulus)),
    )
    if not mx.is_diagonal(z):
        raise NotDiagonalError(f"extraction at l={l}, r={r} is not diagonal")
    for x in mx.diag_entries(z):
        if x ** r.denominator != 1:
            raise NotDiagonalError(
                f"diagonal entry {x!r} has order not dividing {r.denominator}"
            )
    return z


def _dual_argument(r: Fraction) -> Fraction:
    """The argument r* with numerator the mod-den inverse of r's numerator;
    an involution mod 1, satisfying (r*)* = r there."""
    r = r - math.floor(r)
    if r == 0:
        return Fraction(0)
    n = r.denominator
    return Fraction(pow(r.numerator, -1, n), n)


def z_suite(md: ModularData, l: int, m: int, r) -> list[CheckRecord]:
    """Diagonality/order of Z_l(r) plus its cocycle and power laws."""
    suite = "zmatrix"
    r = Fraction(r)
    den = r.denominator
    records = []
    z_l = z_matrix(md, l, r)
    records.append(
        CheckRecord(suite, "diagonal_with_bounded_order", True,
                    params={"l": l, "r": r})
    )
    records.append(
        CheckRecord(suite, "argument_zero_is_identity",
                    mx.is_identity(z_matrix(md, l, Fraction(0))),
                    params={"l": l})
    )
    records.append(
        CheckRecord(suite, "argument_periodic",
                    mx.mat_eq(z_matrix(md, l, r + 1), z_l),
                    params={"l": l, "r": r})
    )
    g_l = parity_decompose(md, l)
    lhat = pow(l % den, -1, den) if den > 1 else 0
    lhs = mx.mat_mul(
        g_l.inverse_matrix(),
        mx.mat_mul(z_matrix(md, m, lhat * r), g_l.as_matrix()),
    )
    z_lm = z_matrix(md, l * m, r)
    z_l_negm = mx.diagonal(
        tuple(x ** (-m) for x in mx.diag_entries(z_l))
    )
    records.append(
        CheckRecord(suite, "cocycle", mx.mat_eq(lhs, mx.mat_mul(z_lm, z_l_negm)),
                    params={"l": l, "m": m, "r": r})
    )
    power_ok = mx.mat_eq(
        mx.diagonal(tuple(x ** m for x in mx.diag_entries(z_l))),
        z_matrix(md, l, m * r),
    )
    records.append(
        CheckRecord(suite, "power_law", power_ok,
                    params={"l": l, "n": m, "r": r})
    )
    # conjugating a fractional T power by G_l picks up the l-th power of
    # the phase matrix and an explicit central-charge phase
    tr = mx.diagonal(md.t_entries(r))
    lhs = mx.mat_mul(g_l.inverse_matrix(), mx.mat_mul(tr, g_l.as_matrix()))
    z_pow = mx.diagonal(tuple(x ** l for x in mx.diag_entries(z_l)))
    phase = root_of_unity_exp(-(l * l - 1) * (md.c - md.c0) * r / 24)
    rhs = mx.scalar_mul(
        phase, mx.mat_mul(mx.diagonal(md.t_entries(l * l * r)), z_pow)
    )
    records.append(
        CheckRecord(suite, "fractional_t_conjugation", mx.mat_eq(lhs, rhs),
                    params={"l": l, "r": r})
    )
    return records
