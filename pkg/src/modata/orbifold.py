"""Cyclic permutation-orbifold sector data.

Sectors of the order-N cyclic orbifold are labeled by triples
(parent label, twist n mod N, charge k mod N).  Entries of the orbifold
S matrix are determined when at least one twist is a unit mod N:

    S[(lam, n, k), (mu, m, l)] = (1/N) zeta_N^-(k*m + l*n) hat_{lam,mu}(m n^ / N)

with n^ the mod-N inverse of the unit twist, hat the phase-corrected
fractional modular matrix of the parent, and, for untwisted columns, the
parent S with the distinguished order-two automorphism acting on the row
label.  Entries where neither twist is a unit are out of scope and raise,
matching what the construction determines; the module therefore never
assembles a full orbifold datum, it exposes entries and reports only.

The distinguished automorphism is the vacuum for odd N (a theorem), and the
configurable tau2 of the parent datum for even N; every report states which
convention was active.  The orbifold phase representative scales as
c0(orbifold) = N * c0(parent).
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import matrixops as mx
from .cyclo import CycloNum, make, root_of_unity_exp
from .errors import NonIntegralMultiplicityError, OutOfScopeError
from .lambdamat import lambda_hat
from .modular_data import ModularData
from .reporting import CheckRecord, notice


@dataclass(frozen=True)
class OrbLabel:
    """One orbifold sector: parent label index, twist and charge mod N."""

    base: int
    twist: int
    charge: int

    def to_obj(self, parent: ModularData) -> dict:
        return {
            "base": parent.labels[self.base],
            "twist": self.twist,
            "charge": self.charge,
        }


class OrbSlice:
    """The computable slice of one cyclic orbifold; immutable."""

    def __init__(self, parent: ModularData, order: int):
        if order < 2:
            raise ValueError("cycle order must be at least 2")
        self.parent = parent
        self.n = order
        self.c0 = parent.c0 * order
        self.tau = parent.tau2 if order % 2 == 0 else 0
        self._hat_cache: dict[int, mx.Matrix] = {}

    def zeta(self, e: int) -> CycloNum:
        return make(self.n, [(e % self.n, 1)])

    def hat(self, i: int) -> mx.Matrix:
        i %= self.n
        cached = self._hat_cache.get(i)
        if cached is None:
            cached = lambda_hat(self.parent, Fraction(i, self.n))
            self._hat_cache[i] = cached
        return cached

    def convention_note(self, suite: str) -> CheckRecord:
        tau_name = self.parent.labels[self.tau]
        return notice(
            suite,
            "conventions",
            f"distinguished automorphism = label {tau_name!r} "
            f"({'theorem' if self.n % 2 else 'configured'}), "
            f"orbifold c0 = {self.c0}",
            n=self.n,
        )


def sector_set(slice_: OrbSlice) -> tuple[tuple[OrbLabel, ...], tuple[OrbLabel, ...]]:
    """All sector triples, and the sub-sequence with unit twist."""
    n = slice_.n
    full = tuple(
        OrbLabel(lam, tw, ch)
        for lam in range(slice_.parent.rank)
        for tw in range(n)
        for ch in range(n)
    )
    units = tuple(a for a in full if math.gcd(a.twist, n) == 1)
    return full, units


def orb_s_entry(slice_: OrbSlice, a: OrbLabel, b: OrbLabel) -> CycloNum:
    """One orbifold S entry; requires a unit twist on at least one side."""
    n_cyc = slice_.n
    if math.gcd(a.twist, n_cyc) != 1:
        if math.gcd(b.twist, n_cyc) != 1:
            raise OutOfScopeError(
                f"both twists {a.twist}, {b.twist} are non-units mod {n_cyc}"
            )
        a, b = b, a
    parent = slice_.parent
    tw_a, ch_a = a.twist % n_cyc, a.charge % n_cyc
    tw_b, ch_b = b.twist % n_cyc, b.charge % n_cyc
    phase = slice_.zeta(-(ch_a * tw_b + ch_b * tw_a))
    if tw_b == 0:
        row = parent.fuse_auto(slice_.tau, a.base) if slice_.tau else a.base
        base = parent.s[row][b.base]
    else:
        nhat = pow(tw_a, -1, n_cyc)
        base = slice_.hat(tw_b * nhat)[a.base][b.base]
    return phase * base * Fraction(1, n_cyc)


def orb_t_entry(slice_: OrbSlice, a: OrbLabel) -> CycloNum:
    """One twisted-sector T entry, for unit twist:
    zeta_N^(n*k) * T_lam^(1/N) * exp(2*pi*i*(c - c0)(N - 1/N)/24)."""
    n_cyc = slice_.n
    if math.gcd(a.twist, n_cyc) != 1:
        raise OutOfScopeError(f"twist {a.twist} is not a unit mod {n_cyc}")
    parent = slice_.parent
    val = root_of_unity_exp(
        (parent.delta[a.base] - parent.c0 / 24) / n_cyc
    )
    val = val * slice_.zeta(a.twist * a.charge)
    val = val * root_of_unity_exp(
        (parent.c - parent.c0) * (n_cyc - Fraction(1, n_cyc)) / 24
    )
    return val


def orb_qdim(slice_: OrbSlice, a: OrbLabel) -> CycloNum:
    """Quantum dimension: the parent value for untwisted sectors, scaled by
    the (N-1)-th power of the square root of the parent total index for
    unit twists."""
    parent = slice_.parent
    if a.twist % slice_.n == 0:
        return parent.qdim(a.base)
    if math.gcd(a.twist, slice_.n) != 1:
        raise OutOfScopeError(f"twist {a.twist} is not a unit mod {slice_.n}")
    return parent.qdim(a.base) * parent.s00_inv() ** (slice_.n - 1)


def mu_scaling_check(slice_: OrbSlice) -> list[CheckRecord]:
    """Sum of squared dimensions over unit-twist sectors, against the scaled
    total index of the orbifold (a partial sum, since non-unit twists are
    out of scope)."""
    suite = "orbifold"
    n_cyc = slice_.n
    parent = slice_.parent
    _, units = sector_set(slice_)
    total = None
    for a in units:
        d = orb_qdim(slice_, a)
        d2 = d * d
        total = d2 if total is None else total + d2
    mu_pow = parent.s00_inv() ** (2 * n_cyc)  # parent total index to the N
    phi_n = sum(1 for t in range(n_cyc) if math.gcd(t, n_cyc) == 1)
    expected = mu_pow * (phi_n * n_cyc)
    records = [
        CheckRecord(
            suite, "unit_twist_index_sum",
            total == expected,
            params={"n": n_cyc, "phi_n": phi_n},
        ),
        CheckRecord(
            suite, "index_sum_below_scaled_total",
            phi_n * n_cyc <= n_cyc * n_cyc,
            params={"n": n_cyc},
            witness=f"coprime part phi(N)*N*mu^N of the total N^2*mu^N",
        ),
    ]
    return records


def soliton_multiplicity(md: ModularData, labels) -> int:
    """Multiplicity of a parent-label tuple in the n-th power of the basic
    cyclic soliton: the genus-(n-1)(n-2)/2 character sum over S columns.

    Must evaluate to a nonnegative integer; anything else raises."""
    labels = tuple(labels)
    n = len(labels)
    if n < 2:
        raise ValueError("need at least two labels")
    genus = (n - 1) * (n - 2) // 2
    inv_power = n + 2 * genus - 2  # vacuum-row inverse appears to this power
    acc = None
    for d in range(md.rank):
        term = md.s0_inv(d) ** inv_power
        for lam in labels:
            term = term * md.s[lam][d]
        acc = term if acc is None else acc + term
    if not acc.is_nonneg_integer():
        raise NonIntegralMultiplicityError(
            f"multiplicity of {labels} is {acc!r}, not a nonnegative integer"
        )
    return acc.nums[0]


def _factorization_entry(slice_: OrbSlice, a: OrbLabel, b: OrbLabel) -> CycloNum:
    # Entry with twists the two parts of an odd coprime split N = k*n:
    # both distinguished automorphisms are the vacuum (odd orders), leaving
    # (1/N) * charge phase * parent S.
    parent = slice_.parent
    phase = slice_.zeta(-(a.charge * b.twist + b.charge * a.twist))
    return phase * parent.s[a.base][b.base] * Fraction(1, slice_.n)


def consistency_report(slice_: OrbSlice) -> list[CheckRecord]:
    """Cross-checks of the entry constructor: definitional closure against
    the hatted matrices, two-route path independence, the odd coprime
    factorization entry, and unitarity of every hatted matrix used."""
    suite = "orbifold"
    n_cyc = slice_.n
    parent = slice_.parent
    rank = parent.rank
    records = [slice_.convention_note(suite)]
    units = [t for t in range(1, n_cyc) if math.gcd(t, n_cyc) == 1]

    ok = True
    witness = ""
    for i in units:
        hat = slice_.hat(i)
        for lam in range(rank):
            for mu in range(rank):
                val = orb_s_entry(
                    slice_, OrbLabel(lam, 1, 0), OrbLabel(mu, i, 0)
                )
                if val * n_cyc != hat[lam][mu]:
                    ok = False
                    witness = f"i={i}, entry ({lam},{mu})"
                    break
            if not ok:
                break
        if not ok:
            break
    records.append(
        CheckRecord(suite, "hat_closure", ok, params={"n": n_cyc},
                    witness=witness)
    )

    ok = True
    witness = ""
    for ta in units:
        for tb in units:
            for lam in range(rank):
                for mu in range(rank):
                    x = OrbLabel(lam, ta, 1)
                    y = OrbLabel(mu, tb, 2 % n_cyc)
                    via_a = orb_s_entry(slice_, x, y)
                    via_b = orb_s_entry(slice_, y, x)
                    if via_a != via_b:
                        ok = False
                        witness = f"twists ({ta},{tb}), entry ({lam},{mu})"
                        break
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            break
    records.append(
        CheckRecord(suite, "route_independence", ok, params={"n": n_cyc},
                    witness=witness)
    )

    split = None
    for k in range(3, n_cyc, 2):
        if n_cyc % k == 0:
            n2 = n_cyc // k
            if n2 > 1 and n2 % 2 == 1 and math.gcd(k, n2) == 1:
                split = (k, n2)
                break
    if split is None:
        records.append(
            notice(suite, "odd_coprime_factorization",
                   f"no odd coprime split of {n_cyc}", n=n_cyc)
        )
    else:
        k, n2 = split
        ok = True
        witness = ""
        for lam in range(rank):
            for mu in range(rank):
                a = OrbLabel(lam, n2, 0)
                b = OrbLabel(mu, k, 0)
                val = _factorization_entry(slice_, a, b)
                swapped = _factorization_entry(slice_, b, a)
                expected = parent.s[lam][mu] * Fraction(1, n_cyc)
                if val != expected or swapped != expected:
                    ok = False
                    witness = f"entry ({lam},{mu})"
                    break
            if not ok:
                break
        records.append(
            CheckRecord(suite, "odd_coprime_factorization", ok,
                        params={"k": k, "n": n2}, witness=witness)
        )

    ok = True
    witness = ""
    for i in units:
        hat = slice_.hat(i)
        if not mx.is_identity(mx.mat_mul(hat, mx.dagger(hat))):
            ok = False
            witness = f"i={i}"
            break
    records.append(
        CheckRecord(suite, "hat_unitary", ok, params={"n": n_cyc},
                    witness=witness)
    )
    return records


def charge_invariants(slice_: OrbSlice) -> list[CheckRecord]:
    """Charge-transport of S entries, symmetry, and the T charge shift,
    by direct recomputation."""
    suite = "orbifold"
    n_cyc = slice_.n
    parent = slice_.parent
    rank = parent.rank
    units = [t for t in range(1, n_cyc) if math.gcd(t, n_cyc) == 1]
    records = []

    ok = True
    witness = ""
    for ta in units:
        for tb in list(units) + [0]:
            for lam in range(rank):
                for mu in range(rank):
                    base = orb_s_entry(
                        slice_, OrbLabel(lam, ta, 0), OrbLabel(mu, tb, 0)
                    )
                    for (j1, j2) in ((1, 0), (0, 1), (2, 3)):
                        shifted = orb_s_entry(
                            slice_,
                            OrbLabel(lam, ta, j1),
                            OrbLabel(mu, tb, j2),
                        )
                        factor = slice_.zeta(-(ta * j2 + tb * j1))
                        if shifted != base * factor:
                            ok = False
                            witness = (
                                f"twists ({ta},{tb}) charges ({j1},{j2}) "
                                f"entry ({lam},{mu})"
                            )
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            break
    records.append(
        CheckRecord(suite, "charge_transport", ok, params={"n": n_cyc},
                    witness=witness)
    )

    ok = True
    witness = ""
    for ta in units:
        for lam in range(rank):
            for ch in range(n_cyc):
                one = orb_t_entry(slice_, OrbLabel(lam, ta, ch))
                two = orb_t_entry(slice_, OrbLabel(lam, ta, ch + 1))
                if two != one * slice_.zeta(ta):
                    ok = False
                    witness = f"twist {ta}, label {lam}, charge {ch}"
                    break
            if not ok:
                break
        if not ok:
            break
    records.append(
        CheckRecord(suite, "t_charge_shift", ok, params={"n": n_cyc},
                    witness=witness)
    )
    return records


def _fusion_matrix(md: ModularData, lam: int) -> list[list[int]]:
    return [[md.fusion[lam][mu][nu] for nu in range(md.rank)]
            for mu in range(md.rank)]


def _int_matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def multiplicity_trace_oracle(md: ModularData, labels) -> int:
    """Independent integer oracle for the soliton multiplicity: the trace of
    the product of fusion matrices, with one handle operator sum(N_v N_vbar)
    inserted per genus."""
    labels = tuple(labels)
    n = len(labels)
    genus = (n - 1) * (n - 2) // 2
    if n == 2:
        return 1 if md.conj[labels[0]] == labels[1] else 0
    prod = _fusion_matrix(md, labels[0])
    for lam in labels[1:]:
        prod = _int_matmul(prod, _fusion_matrix(md, lam))
    handle = None
    for nu in range(md.rank):
        h = _int_matmul(_fusion_matrix(md, nu), _fusion_matrix(md, md.conj[nu]))
        handle = h if handle is None else [
            [x + y for x, y in zip(r1, r2)] for r1, r2 in zip(handle, h)
        ]
    for _ in range(genus - 1):
        prod = _int_matmul(prod, handle)
    return sum(prod[i][i] for i in range(md.rank))


def multiplicity_report(md: ModularData, max_factors: int = 4,
                        sample_seed: int = 1,
                        full_rank_bound: int = 6) -> list[CheckRecord]:
    """Integrality of the soliton multiplicities for 2..max_factors labels,
    each value checked against the independent fusion-trace oracle; full
    enumeration up to `full_rank_bound` parent rank, seeded sampling beyond."""
    from .modrep import Lcg

    suite = "orbifold"
    rank = md.rank
    records = []
    rng = Lcg(sample_seed)

    def tuples(n):
        if rank <= full_rank_bound:
            idx = [0] * n
            while True:
                yield tuple(idx)
                j = n - 1
                while j >= 0 and idx[j] == rank - 1:
                    idx[j] = 0
                    j -= 1
                if j < 0:
                    return
                idx[j] += 1
        else:
            for _ in range(200):
                yield tuple(rng.below(rank) for _ in range(n))

    for n in range(2, max_factors + 1):
        ok = True
        witness = ""
        count = 0
        for labs in tuples(n):
            count += 1
            try:
                m = soliton_multiplicity(md, labs)
            except NonIntegralMultiplicityError as exc:
                ok = False
                witness = str(exc)
                break
            expected = multiplicity_trace_oracle(md, labs)
            if m != expected:
                ok = False
                witness = f"labels {labs}: {m} != oracle {expected}"
                break
        records.append(
            CheckRecord(suite, f"multiplicity_{n}_factors", ok,
                        params={"tuples": count}, witness=witness)
        )
    return records
