"""Modular data: exact S matrix, conformal weights and central charges.

A ModularData instance is validated on construction: the S matrix must be
symmetric, unitary, square to an order-two conjugation permutation, satisfy
the twist relation S T S = T^-1 S T^-1 with the diagonal T built from the
conformal weights and c0, have a positive vacuum row, and produce nonnegative
integer fusion coefficients simultaneously diagonalized by S.  Everything
downstream (Galois suites, fractional modular matrices, orbifold sectors)
consumes validated instances only.

The fractional power T^r always means the diagonal matrix with entries
exp(2*pi*i*(delta_lam - c0/24)*r); no logarithm branches exist anywhere.
"""

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from . import matrixops as mx
from .cyclo import CycloNum, cyclo_from_obj, make, root_of_unity_exp, sqrt_nonneg_rational
from .errors import (
    AxiomViolationError,
    ConductorMismatchError,
    NonIntegralFusionError,
    UnsupportedModelError,
)
from .reporting import CheckRecord

_POSITIVITY_MARGIN = 1e-12


@dataclass(frozen=True)
class ConductorInfo:
    """Order data of the diagonal part: full order n, weight order n0,
    and their ratio e = n / n0."""

    n: int
    n0: int
    e: int


def verlinde_sum(s: mx.Matrix, lam: int, mu: int, nu: int) -> int:
    """One fusion coefficient as the exact character sum over S columns.

    Raises NonIntegralFusionError when the sum is not a nonnegative integer,
    which signals corrupt input data.
    """
    acc = None
    for d in range(len(s)):
        term = s[lam][d] * s[mu][d] * s[nu][d].conjugate() / s[0][d]
        acc = term if acc is None else acc + term
    if not acc.is_nonneg_integer():
        raise NonIntegralFusionError(
            f"fusion ({lam},{mu};{nu}) is {acc!r}, not a nonnegative integer"
        )
    return acc.nums[0]


class ModularData:
    """Validated modular datum; treat as immutable after construction."""

    def __init__(self, labels, s, delta, c, c0, tau2=0, name="model"):
        labels = tuple(str(x) for x in labels)
        delta = tuple(Fraction(x) for x in delta)
        c = Fraction(c)
        c0 = Fraction(c0)
        tau2 = int(tau2)
        records, derived = _axiom_checks(labels, s, delta, c, c0, tau2)
        if not all(r.passed for r in records):
            raise AxiomViolationError(records)
        self.name = name
        self.labels = labels
        self.rank = len(labels)
        self.s = derived["s"]
        self.delta = delta
        self.c = c
        self.c0 = c0
        self.tau2 = tau2
        self.conj = derived["conj"]
        self.fusion = derived["fusion"]  # fusion[lam][mu][nu] -> int
        self.chat = derived["chat"]
        self.validation_report = records
        self._s_col_inv = derived["s_col_inv"]
        self._t_cache: dict[Fraction, tuple[CycloNum, ...]] = {}
        self._conductor: ConductorInfo | None = None
        self._conductor_records: list[CheckRecord] | None = None

    # -- basic derived quantities -------------------------------------

    def t_entries(self, r) -> tuple[CycloNum, ...]:
        """Diagonal entries of T^r: exp(2*pi*i*(delta - c0/24)*r)."""
        r = Fraction(r)
        cached = self._t_cache.get(r)
        if cached is None:
            cached = tuple(
                root_of_unity_exp((d - self.c0 / 24) * r) for d in self.delta
            )
            self._t_cache[r] = cached
        return cached

    def t_power(self, r) -> mx.Matrix:
        return mx.diagonal(self.t_entries(r))

    @property
    def s_inv(self) -> mx.Matrix:
        # S^2 equals the conjugation permutation, so S^-1 = S @ Chat.
        return mx.mat_mul(self.s, self.chat)

    def verlinde(self, lam: int, mu: int, nu: int) -> int:
        return self.fusion[lam][mu][nu]

    def qdim(self, lam: int) -> CycloNum:
        return self.s[0][lam] / self.s[0][0]

    def mu_index(self) -> CycloNum:
        acc = None
        for lam in range(self.rank):
            d = self.qdim(lam)
            acc = d * d if acc is None else acc + d * d
        return acc

    def s00_inv(self) -> CycloNum:
        """1/S_00, the real positive square root of the total index."""
        return self._s_col_inv[0]

    def s0_inv(self, idx: int) -> CycloNum:
        """1/S_0idx, the inverse of a vacuum-row entry."""
        return self._s_col_inv[idx]

    def fuse_auto(self, tau: int, lam: int) -> int:
        """The unique product label of an automorphism with lam."""
        row = self.fusion[tau][lam]
        hits = [nu for nu, n in enumerate(row) if n]
        if len(hits) != 1 or row[hits[0]] != 1:
            raise ValueError(f"label {tau} does not fuse as an automorphism")
        return hits[0]

    # -- verification suites ------------------------------------------

    def c0_consistency(self) -> list[CheckRecord]:
        """The statistical phase sum against the stored c0, plus the fusion
        formula for the unnormalized S matrix."""
        suite = "c0"
        omega = [root_of_unity_exp(d) for d in self.delta]
        aa = None
        mu_tot = None
        for lam in range(self.rank):
            d = self.qdim(lam)
            d2 = d * d
            term = d2 * omega[lam].conjugate()
            aa = term if aa is None else aa + term
            mu_tot = d2 if mu_tot is None else mu_tot + d2
        records = [
            CheckRecord(
                suite,
                "phase_norm",
                aa * aa.conjugate() == mu_tot,
                witness="",
            ),
            CheckRecord(
                suite,
                "phase_matches_c0",
                aa * root_of_unity_exp(self.c0 / 8) == self.s00_inv(),
                params={"c0": self.c0},
            ),
        ]
        ok = True
        witness = ""
        s00 = self.s[0][0]
        for lam in range(self.rank):
            for mu in range(self.rank):
                acc = None
                for nu in range(self.rank):
                    n = self.fusion[lam][mu][nu]
                    if n:
                        term = (
                            n * omega[lam] * omega[mu]
                            / omega[nu] * self.qdim(nu)
                        )
                        acc = term if acc is None else acc + term
                if acc is None:
                    acc = CycloNum.zero()
                if acc * s00 != self.s[lam][mu]:
                    ok = False
                    witness = f"entry ({lam},{mu})"
                    break
            if not ok:
                break
        records.append(
            CheckRecord(suite, "fusion_phase_matrix", ok, witness=witness)
        )
        return records

    def conductor(self) -> tuple[ConductorInfo, list[CheckRecord]]:
        """Order of T, the weight order n0, their ratio, and the arithmetic
        facts tied to them; raises ConductorMismatchError when some S entry
        escapes the field cut out by the T order."""
        if self._conductor is not None:
            return self._conductor, list(self._conductor_records)
        suite = "conductor"
        n = 1
        for d in self.delta:
            n = math.lcm(n, (d - self.c0 / 24).denominator)
        for i in range(self.rank):
            for j in range(i, self.rank):
                mo = self.s[i][j].minimal_order()
                if n % mo != 0:
                    raise ConductorMismatchError(
                        f"S[{i}][{j}] generates Q(zeta_{mo}), "
                        f"outside Q(zeta_{n})"
                    )
        n0 = 1
        for d in self.delta:
            n0 = math.lcm(n0, d.denominator)
        records = [
            CheckRecord(suite, "s_entries_inside_t_field", True,
                        params={"n": n}),
        ]
        e_ok = n % n0 == 0
        e = n // n0 if e_ok else 0
        records.append(
            CheckRecord(suite, "weight_order_divides", e_ok,
                        params={"n": n, "n0": n0})
        )
        records.append(
            CheckRecord(suite, "ratio_divides_12", e_ok and 12 % e == 0,
                        params={"e": e})
        )
        records.append(
            CheckRecord(
                suite, "ratio_weight_gcd", e_ok and math.gcd(e, n0) in (1, 2),
                params={"e": e, "n0": n0},
            )
        )
        n0c = n0 * self.c
        records.append(
            CheckRecord(
                suite,
                "weight_order_times_c_even",
                n0c.denominator == 1 and n0c.numerator % 2 == 0,
                params={"n0c": n0c},
            )
        )
        info = ConductorInfo(n, n0, e)
        self._conductor = info
        self._conductor_records = records
        return info, list(records)

    def conductor_n(self) -> int:
        return self.conductor()[0].n

    def automorphism_ratios(self, tau: int) -> tuple[CycloNum, ...]:
        """Per-column ratio S[tau.lam][mu] / S[lam][mu], which must be
        independent of lam when tau is an automorphism."""
        if self.qdim(tau) != 1:
            raise ValueError(f"label {tau} has quantum dimension != 1")
        perm = [self.fuse_auto(tau, lam) for lam in range(self.rank)]
        ratios = []
        for mu in range(self.rank):
            lam0 = next(
                lam for lam in range(self.rank) if not self.s[lam][mu].is_zero()
            )
            ratios.append(self.s[perm[lam0]][mu] / self.s[lam0][mu])
        return tuple(ratios)

    def automorphism_action_check(self, tau: int) -> list[CheckRecord]:
        suite = "automorphism"
        perm = [self.fuse_auto(tau, lam) for lam in range(self.rank)]
        ratios = self.automorphism_ratios(tau)
        ok = True
        witness = ""
        for mu in range(self.rank):
            for lam in range(self.rank):
                if self.s[perm[lam]][mu] != ratios[mu] * self.s[lam][mu]:
                    ok = False
                    witness = f"column {mu}, row {lam}"
                    break
            if not ok:
                break
        records = [
            CheckRecord(suite, "ratio_constant_per_column", ok,
                        params={"tau": tau}, witness=witness)
        ]
        # ratios are roots of unity of order dividing the fusion order of tau
        order = 1
        p = perm
        ident = list(range(self.rank))
        while p != ident:
            p = [perm[i] for i in p]
            order += 1
            if order > self.rank + 1:
                break
        unit_ok = all(r ** (2 * order) == 1 for r in ratios)
        records.append(
            CheckRecord(suite, "ratios_are_roots_of_unity", unit_ok,
                        params={"tau": tau, "order": order})
        )
        return records

    # -- serialization --------------------------------------------------

    def ambient_order(self) -> int:
        order = 1
        for row in self.s:
            for x in row:
                order = math.lcm(order, x.order)
        return order

    def to_obj(self) -> dict:
        w = self.ambient_order()
        return {
            "name": self.name,
            "labels": list(self.labels),
            "order": w,
            "S": [[x.coerce(w).to_obj() for x in row] for row in self.s],
            "delta": [str(d) for d in self.delta],
            "c": str(self.c),
            "c0": str(self.c0),
            "tau2": self.tau2,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_obj(), sort_keys=True, separators=(",", ":"))

    def __repr__(self) -> str:
        return f"ModularData({self.name!r}, rank={self.rank})"


def axiom_report(labels, s, delta, c, c0, tau2=0) -> list[CheckRecord]:
    """All validation checks on a raw datum, as records (never raises)."""
    records, _ = _axiom_checks(
        tuple(str(x) for x in labels),
        s,
        tuple(Fraction(x) for x in delta),
        Fraction(c),
        Fraction(c0),
        int(tau2),
    )
    return records


def _axiom_checks(labels, s, delta, c, c0, tau2):
    suite = "axioms"
    records: list[CheckRecord] = []
    derived: dict = {}

    def rec(check, passed, witness=""):
        records.append(CheckRecord(suite, check, passed, witness=witness))
        return passed

    rank = len(labels)
    shaped = (
        rank >= 1
        and len(s) == rank
        and all(len(row) == rank for row in s)
        and len(delta) == rank
        and 0 <= tau2 < rank
    )
    if not rec("shape", shaped):
        return records, derived
    s = mx.mat(s)
    derived["s"] = s

    sym = mx.first_mismatch(s, mx.transpose(s))
    rec("s_symmetric", sym is None, "" if sym is None else f"entry {sym[:2]}")

    uni = mx.first_mismatch(mx.mat_mul(s, mx.dagger(s)), mx.identity(rank))
    if not rec("s_unitary", uni is None,
               "" if uni is None else f"entry {uni[:2]}"):
        return records, derived

    chat = mx.mat_mul(s, s)
    conj = [-1] * rank
    perm_ok = True
    for i in range(rank):
        for j in range(rank):
            x = chat[i][j]
            if x == 1:
                if conj[i] != -1:
                    perm_ok = False
                conj[i] = j
            elif not x.is_zero():
                perm_ok = False
    perm_ok = perm_ok and all(j >= 0 for j in conj)
    perm_ok = perm_ok and all(conj[conj[i]] == i for i in range(rank))
    if not rec("s_square_is_conjugation", perm_ok):
        return records, derived
    conj = tuple(conj)
    derived["conj"] = conj
    derived["chat"] = chat

    vac_ok = True
    vac_witness = ""
    for lam in range(rank):
        x = s[0][lam]
        if x.conjugate() != x or x.embed().real <= _POSITIVITY_MARGIN:
            vac_ok = False
            vac_witness = f"S[0][{lam}]"
            break
    if not rec("vacuum_row_real_positive", vac_ok, vac_witness):
        return records, derived

    # Check S T S == T^-1 S T^-1 with T the diagonal of exp(2pi*i*(d - c0/24)).
    t = tuple(root_of_unity_exp(d - c0 / 24) for d in delta)
    sts = mx.mat_mul(mx.scale_cols(s, t), s)
    tinv = tuple(x.conjugate() for x in t)
    rhs = mx.scale_cols(mx.scale_rows(tinv, s), tinv)
    mm = mx.first_mismatch(sts, rhs)
    rec("sts_twist_relation", mm is None,
        "" if mm is None else f"entry {mm[:2]}")

    rec(
        "t_conjugation_invariant",
        all(t[lam] == t[conj[lam]] for lam in range(rank)),
    )

    res = c - c0
    rec("central_charge_residue", res.denominator == 1 and res % 4 == 0,
        f"c - c0 = {res}")

    if not all(r.passed for r in records):
        return records, derived

    s_col_inv = tuple(s[0][d].inverse() for d in range(rank))
    derived["s_col_inv"] = s_col_inv
    fusion = []
    fus_ok = True
    fus_witness = ""
    for lam in range(rank):
        rows = []
        for mu in range(rank):
            row = []
            for nu in range(rank):
                acc = None
                for d in range(rank):
                    term = (
                        s[lam][d] * s[mu][d]
                        * s[nu][d].conjugate() * s_col_inv[d]
                    )
                    acc = term if acc is None else acc + term
                if not acc.is_nonneg_integer():
                    fus_ok = False
                    fus_witness = f"N({lam},{mu};{nu}) = {acc!r}"
                    break
                row.append(acc.nums[0])
            if not fus_ok:
                break
            rows.append(tuple(row))
        if not fus_ok:
            break
        fusion.append(tuple(rows))
    if not rec("fusion_integral_nonnegative", fus_ok, fus_witness):
        return records, derived
    fusion = tuple(fusion)
    derived["fusion"] = fusion

    diag_ok = True
    diag_witness = ""
    for lam in range(rank):
        n_mat = mx.mat(
            [[CycloNum.rational(fusion[lam][mu][nu]) for nu in range(rank)]
             for mu in range(rank)]
        )
        ratios = tuple(s[lam][d] * s_col_inv[d] for d in range(rank))
        if mx.first_mismatch(mx.mat_mul(n_mat, s), mx.scale_cols(s, ratios)):
            diag_ok = False
            diag_witness = f"fusion matrix {lam}"
            break
    rec("fusion_diagonalized_by_s", diag_ok, diag_witness)

    vacuum_ok = all(
        fusion[0][mu][nu] == (1 if mu == nu else 0)
        for mu in range(rank) for nu in range(rank)
    )
    rec("vacuum_fusion_identity", vacuum_ok)

    if tau2 != 0:
        tau_ok = (
            s[0][tau2] == s[0][0] and fusion[tau2][tau2][0] == 1
        )
        rec("tau2_is_order_two_automorphism", tau_ok, f"tau2={tau2}")

    return records, derived


# -- builtin exact models -----------------------------------------------


def _compute_c0(s: mx.Matrix, delta) -> Fraction:
    """Representative in [0, 8) of the statistical phase class."""
    rank = len(s)
    aa = None
    for lam in range(rank):
        d = s[0][lam] / s[0][0]
        term = d * d * root_of_unity_exp(-delta[lam])
        aa = term if aa is None else aa + term
    u = aa * s[0][0]  # aa / |aa|, a root of unity
    m = u.order
    for j in range(m):
        zj = make(m, [(j, 1)])
        if u == zj:
            return (Fraction(-8 * j, m)) % 8
        if u == -zj:
            return (Fraction(-8 * j, m) - 4) % 8
    raise ArithmeticError("statistical phase is not a root of unity")


def _sin_exact(m: int, q: int) -> CycloNum:
    """sin(pi*m/q) as (zeta_2q^m - zeta_2q^-m) / (2i), exactly."""
    num = make(2 * q, [(m, 1), (-m, -1)])
    return num * make(4, [(1, -1)]) * Fraction(1, 2)


def _build_su2(k: int) -> tuple:
    q = k + 2
    norm = sqrt_nonneg_rational(Fraction(2, q))
    s = [
        [norm * _sin_exact((a + 1) * (b + 1), q) for b in range(q - 1)]
        for a in range(q - 1)
    ]
    delta = [Fraction(a * (a + 2), 4 * q) for a in range(q - 1)]
    c = Fraction(3 * k, q)
    labels = [str(a) for a in range(q - 1)]
    return labels, s, delta, c


def _build_cyclic_odd(n: int) -> tuple:
    norm = sqrt_nonneg_rational(Fraction(1, n))
    s = [
        [norm * make(n, [(2 * j * k, 1)]) for k in range(n)]
        for j in range(n)
    ]
    delta = [Fraction(j * (n - j), n) for j in range(n)]
    c = Fraction(n - 1)
    labels = [str(j) for j in range(n)]
    return labels, s, delta, c


def builtin_model(name: str, param: int | None = None,
                  c0_override=None, tau2: int = 0) -> ModularData:
    """Exact built-in data: trivial, su2(k >= 1), cyclic_odd(odd n >= 3).

    c0_override replaces the computed c0 representative; it must lie in the
    same class mod 8 (which also keeps c - c0 in 4Z).
    """
    if name == "trivial":
        labels, s, delta, c = (
            ["0"], [[CycloNum.one()]], [Fraction(0)], Fraction(0)
        )
        model_name = "trivial"
    elif name == "su2":
        if param is None or param < 1:
            raise UnsupportedModelError("su2 requires a level k >= 1")
        labels, s, delta, c = _build_su2(param)
        model_name = f"su2:{param}"
    elif name == "cyclic_odd":
        if param is None or param < 3 or param % 2 == 0:
            raise UnsupportedModelError("cyclic_odd requires an odd n >= 3")
        labels, s, delta, c = _build_cyclic_odd(param)
        model_name = f"cyclic_odd:{param}"
    else:
        raise UnsupportedModelError(f"unknown builtin model {name!r}")
    c0 = _compute_c0(mx.mat(s), delta)
    if c0_override is not None:
        c0_override = Fraction(c0_override)
        if (c0_override - c0) % 8 != 0:
            raise ValueError(
                f"c0 override {c0_override} is not congruent to {c0} mod 8"
            )
        c0 = c0_override
    return ModularData(labels, s, delta, c, c0, tau2=tau2, name=model_name)


def from_obj(obj: dict) -> ModularData:
    """Load a modular datum from its serialized form (validates)."""
    s = [[cyclo_from_obj(x) for x in row] for row in obj["S"]]
    return ModularData(
        obj["labels"],
        s,
        [Fraction(d) for d in obj["delta"]],
        Fraction(obj["c"]),
        Fraction(obj["c0"]),
        tau2=int(obj.get("tau2", 0)),
        name=obj.get("name", "file"),
    )


def loads(text: str) -> ModularData:
    return from_obj(json.loads(text))
