"""Exact arithmetic in cyclotomic fields Q(zeta_M).

An element is stored in the power basis {zeta_M^0, ..., zeta_M^(phi(M)-1)}
after reduction modulo the M-th cyclotomic polynomial, as one common positive
denominator together with integer numerators: CycloNum(M, d, (n_0, ...))
represents sum_j (n_j / d) * zeta_M^j.  The stored form is canonical
(d >= 1 and gcd(d, n_0, ..., n_{phi-1}) == 1), so two elements of equal
order are equal exactly when their stored tuples are equal.

Mixed-order arithmetic coerces both operands to the least common multiple of
their orders; callers never manage orders by hand.  All values are immutable
and every operation is pure.

The ambient order is capped by the MODATA_MAX_ORDER environment variable
(default 4096) to bound table memory.
"""

import cmath
import math
import os
from fractions import Fraction
from functools import lru_cache

from .errors import (
    NegativeRadicandError,
    NotCoprimeError,
    NotEmbeddableError,
)

#: Largest number of reliable decimal digits for the floating embedding.
MAX_EMBED_DIGITS = 12

_DEFAULT_MAX_ORDER = 4096


def _max_order() -> int:
    return int(os.environ.get("MODATA_MAX_ORDER", _DEFAULT_MAX_ORDER))


def euler_phi(m: int) -> int:
    """Euler totient of a positive integer."""
    if m < 1:
        raise ValueError("order must be positive")
    result = m
    n = m
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if n > 1:
        result -= result // n
    return result


def divisors(m: int) -> list[int]:
    """Positive divisors of m, ascending."""
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def _poly_divmod_int(num: list[int], den: tuple[int, ...]) -> list[int]:
    # Exact division of integer polynomials, den monic; remainder must vanish.
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        q = num[i + len(den) - 1]
        out[i] = q
        if q:
            for j, c in enumerate(den):
                num[i + j] -= q * c
    if any(num[: len(den) - 1]):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients (constant first) of the m-th cyclotomic polynomial.

    Computed by dividing x^m - 1 by the cyclotomic polynomials of the proper
    divisors of m; exact integer arithmetic throughout.
    """
    if m < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m):
        if d < m:
            poly = _poly_divmod_int(poly, cyclotomic_polynomial(d))
    return tuple(poly)


class _FieldContext:
    """Per-order reduction tables for Q(zeta_M)."""

    __slots__ = ("order", "phi", "poly", "fold_rows", "_powers")

    def __init__(self, order: int):
        self.order = order
        self.poly = cyclotomic_polynomial(order)
        self.phi = len(self.poly) - 1
        base = tuple(-c for c in self.poly[: self.phi])
        rows = [base]
        # zeta^e for e in [phi, 2*phi-2], used to fold products.
        for _ in range(self.phi - 2):
            prev = rows[-1]
            top = prev[-1]
            row = (0,) + prev[:-1]
            if top:
                row = tuple(r + top * b for r, b in zip(row, base))
            rows.append(row)
        self.fold_rows = rows
        self._powers: dict[int, tuple[int, ...]] = {}

    def power_vector(self, e: int) -> tuple[int, ...]:
        """zeta^e (0 <= e < order) as a reduced coefficient vector."""
        e %= self.order
        if e < self.phi:
            vec = [0] * self.phi
            vec[e] = 1
            return tuple(vec)
        if e - self.phi < len(self.fold_rows):
            return self.fold_rows[e - self.phi]
        cached = self._powers.get(e)
        if cached is None:
            start = 2 * self.phi - 2
            prev = self.fold_rows[-1]
            for known in range(e - 1, start, -1):
                hit = self._powers.get(known)
                if hit is not None:
                    start, prev = known, hit
                    break
            base = self.fold_rows[0]
            for cur in range(start + 1, e + 1):
                top = prev[-1]
                row = (0,) + prev[:-1]
                if top:
                    row = tuple(r + top * b for r, b in zip(row, base))
                self._powers[cur] = row
                prev = row
            cached = prev
        return cached


@lru_cache(maxsize=None)
def _context(order: int) -> _FieldContext:
    cap = _max_order()
    if order > cap:
        raise ValueError(
            f"cyclotomic order {order} exceeds MODATA_MAX_ORDER={cap}"
        )
    return _FieldContext(order)


def _normalize(den: int, nums: list[int]) -> tuple[int, tuple[int, ...]]:
    if den < 0:
        den = -den
        nums = [-x for x in nums]
    g = den
    for x in nums:
        g = math.gcd(g, x)
        if g == 1:
            return den, tuple(nums)
    return den // g, tuple(x // g for x in nums)


class CycloNum:
    """An exact element of Q(zeta_order); immutable."""

    __slots__ = ("order", "den", "nums", "_hash")

    def __init__(self, order: int, den: int, nums):
        ctx = _context(order)
        nums = list(nums)
        if len(nums) != ctx.phi:
            raise ValueError(
                f"need exactly {ctx.phi} coefficients for order {order}"
            )
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        d, ns = _normalize(den, nums)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "den", d)
        object.__setattr__(self, "nums", ns)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("CycloNum is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def rational(q, order: int = 1) -> "CycloNum":
        q = Fraction(q)
        ctx = _context(order)
        nums = [0] * ctx.phi
        nums[0] = q.numerator
        return CycloNum(order, q.denominator, nums)

    @staticmethod
    def zero(order: int = 1) -> "CycloNum":
        return CycloNum.rational(0, order)

    @staticmethod
    def one(order: int = 1) -> "CycloNum":
        return CycloNum.rational(1, order)

    # -- views ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Coefficients over the power basis, as Fractions."""
        return tuple(Fraction(n, self.den) for n in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def __bool__(self) -> bool:
        return any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return Fraction(self.nums[0], self.den)

    def is_nonneg_integer(self) -> bool:
        return self.is_rational() and self.den == 1 and self.nums[0] >= 0

    # -- equality -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycloNum.rational(other, self.order)
        if not isinstance(other, CycloNum):
            return NotImplemented
        if self.order != other.order:
            a, b = _align(self, other)
            return a.den == b.den and a.nums == b.nums
        return self.den == other.den and self.nums == other.nums

    def __hash__(self):
        # consistent across orders: hash the minimal-order canonical form
        if self.is_rational():
            return hash(Fraction(self.nums[0], self.den))
        if self._hash is None:
            n = self.minimal_order()
            rep = self if n == self.order else self._descend(n)
            object.__setattr__(self, "_hash", hash((n, rep.den, rep.nums)))
        return self._hash

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other) -> "CycloNum":
        other = _as_cyclo(other, self.order)
        if other is NotImplemented:
            return NotImplemented
        a, b = _align(self, other)
        nums = [
            x * b.den + y * a.den for x, y in zip(a.nums, b.nums)
        ]
        return CycloNum(a.order, a.den * b.den, nums)

    __radd__ = __add__

    def __neg__(self) -> "CycloNum":
        return CycloNum(self.order, self.den, [-x for x in self.nums])

    def __sub__(self, other) -> "CycloNum":
        other = _as_cyclo(other, self.order)
        if other is NotImplemented:
            return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other) -> "CycloNum":
        return (-self).__add__(other)

    def __mul__(self, other) -> "CycloNum":
        other = _as_cyclo(other, self.order)
        if other is NotImplemented:
            return NotImplemented
        a, b = _align(self, other)
        ctx = _context(a.order)
        phi = ctx.phi
        acc = [0] * (2 * phi - 1)
        bnums = b.nums
        for i, ai in enumerate(a.nums):
            if ai:
                for j, bj in enumerate(bnums):
                    if bj:
                        acc[i + j] += ai * bj
        out = acc[:phi]
        rows = ctx.fold_rows
        for e in range(phi, 2 * phi - 1):
            c = acc[e]
            if c:
                row = rows[e - phi]
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return CycloNum(a.order, a.den * b.den, out)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        """Multiplicative inverse via the extended Euclidean algorithm
        on polynomials over Q modulo the cyclotomic polynomial."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycloNum.rational(1 / self.as_fraction(), self.order)
        ctx = _context(self.order)
        mod = [Fraction(c) for c in ctx.poly]
        a = [Fraction(n, self.den) for n in self.nums]
        inv = _poly_modinv(a, mod)
        nums, den = _clear_denominators(inv + [Fraction(0)] * (ctx.phi - len(inv)))
        return CycloNum(self.order, den, nums)

    def __truediv__(self, other) -> "CycloNum":
        other = _as_cyclo(other, self.order)
        if other is NotImplemented:
            return NotImplemented
        if other.is_rational():
            q = other.as_fraction()
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return self * CycloNum.rational(1 / q, 1)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "CycloNum":
        return _as_cyclo(other, self.order).__truediv__(self)

    def __pow__(self, k: int) -> "CycloNum":
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base = self.inverse()
            k = -k
        result = CycloNum.one(base.order)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- Galois structure -------------------------------------------------

    def galois(self, l: int) -> "CycloNum":
        """Apply the field automorphism zeta -> zeta^l (l coprime to order)."""
        m = self.order
        l %= m
        if math.gcd(l, m) != 1:
            raise NotCoprimeError(f"gcd({l}, {m}) != 1")
        if l == 1 or self.is_rational():
            return self
        ctx = _context(m)
        acc = [0] * ctx.phi
        for j, cj in enumerate(self.nums):
            if cj:
                e = (l * j) % m
                if e < ctx.phi:
                    acc[e] += cj
                else:
                    for t, r in enumerate(ctx.power_vector(e)):
                        if r:
                            acc[t] += cj * r
        return CycloNum(m, self.den, acc)

    def conjugate(self) -> "CycloNum":
        """Complex conjugate (the automorphism zeta -> zeta^-1)."""
        if self.order <= 2:
            return self
        return self.galois(self.order - 1)

    def coerce(self, new_order: int) -> "CycloNum":
        """Re-express the same field element at a different ambient order.

        Raises NotEmbeddableError when the element does not lie in the
        target field.
        """
        m = self.order
        if new_order == m:
            return self
        if new_order % m == 0:
            return self._coerce_up(new_order)
        g = math.gcd(m, new_order)
        return self._descend(g)._coerce_up(new_order)

    def _coerce_up(self, new_order: int) -> "CycloNum":
        k = new_order // self.order
        ctx = _context(new_order)
        acc = [0] * ctx.phi
        for j, cj in enumerate(self.nums):
            if cj:
                e = (k * j) % new_order
                if e < ctx.phi:
                    acc[e] += cj
                else:
                    for t, r in enumerate(ctx.power_vector(e)):
                        if r:
                            acc[t] += cj * r
        return CycloNum(new_order, self.den, acc)

    def _descend(self, sub_order: int) -> "CycloNum":
        # Solve for coordinates over the power basis of the subfield.
        if sub_order == self.order:
            return self
        big = _context(self.order)
        small = _context(sub_order)
        step = self.order // sub_order
        cols = []
        for j in range(small.phi):
            cols.append(big.power_vector((step * j) % self.order))
        target = [Fraction(n, self.den) for n in self.nums]
        sol = _solve_exact(cols, target, big.phi)
        if sol is None:
            raise NotEmbeddableError(
                f"element of Q(zeta_{self.order}) is not in Q(zeta_{sub_order})"
            )
        nums, den = _clear_denominators(sol)
        return CycloNum(sub_order, den, nums)

    def minimal_order(self) -> int:
        """Smallest divisor n of the order with the element inside Q(zeta_n).

        Decided by the fixed-field test: the element must be invariant under
        every automorphism zeta -> zeta^j with j = 1 (mod n), gcd(j, M) = 1.
        """
        if self.is_rational():
            return 1
        m = self.order
        for n in divisors(m):
            if n == m:
                return m
            fixed = True
            for j in range(1 + n, m, n):
                if math.gcd(j, m) == 1 and self.galois(j) != self:
                    fixed = False
                    break
            if fixed:
                return n
        return m

    # -- numeric embedding -------------------------------------------------

    def embed(self) -> complex:
        """Floating approximation under zeta_M -> exp(2*pi*i/M)."""
        m = self.order
        total = 0j
        for j, cj in enumerate(self.nums):
            if cj:
                total += cj * cmath.exp(complex(0.0, 2.0 * math.pi * j / m))
        return total / self.den

    # -- presentation --------------------------------------------------------

    def __repr__(self) -> str:
        if self.is_rational():
            return f"CycloNum({Fraction(self.nums[0], self.den)})"
        terms = []
        for j, n in enumerate(self.nums):
            if n:
                q = Fraction(n, self.den)
                terms.append(f"({q})*z{self.order}^{j}" if j else f"({q})")
        return "CycloNum(" + " + ".join(terms) + ")"

    def to_obj(self) -> dict:
        """Serializable form: {"order": M, "coeffs": ["p/q", ...]}."""
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}


def _as_cyclo(value, order_hint: int):
    if isinstance(value, CycloNum):
        return value
    if isinstance(value, (int, Fraction)):
        return CycloNum.rational(value, 1)
    return NotImplemented


def _align(a: CycloNum, b: CycloNum) -> tuple[CycloNum, CycloNum]:
    if a.order == b.order:
        return a, b
    m = math.lcm(a.order, b.order)
    return a.coerce(m), b.coerce(m)


def _clear_denominators(coeffs) -> tuple[list[int], int]:
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    nums = [int(c * den) for c in coeffs]
    return nums, den


def _solve_exact(cols, target, nrows):
    # Gaussian elimination over Q for the system cols * x = target.
    ncols = len(cols)
    rows = [
        [Fraction(cols[j][i]) for j in range(ncols)] + [target[i]]
        for i in range(nrows)
    ]
    pivot_cols = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if rows[i][ncols]:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivot_cols):
        sol[c] = rows[i][ncols]
    return sol


def _poly_modinv(a, mod):
    # Extended Euclid over Q[x]: returns a^-1 modulo mod.
    def trim(p):
        while p and not p[-1]:
            p.pop()
        return p

    def polydivmod(p, q):
        p = p[:]
        out = [Fraction(0)] * max(0, len(p) - len(q) + 1)
        lead = q[-1]
        for i in range(len(p) - len(q), -1, -1):
            f = p[i + len(q) - 1] / lead
            out[i] = f
            if f:
                for j, c in enumerate(q):
                    p[i + j] -= f * c
        return out, trim(p)

    r0, r1 = [Fraction(c) for c in mod], trim([Fraction(c) for c in a])
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, rem = polydivmod(r0, r1)
        r0, r1 = r1, rem
        prod = [Fraction(0)] * (len(q) + len(s1) - 1) if s1 else []
        for i, qi in enumerate(q):
            if qi:
                for j, sj in enumerate(s1):
                    prod[i + j] += qi * sj
        new_s = [x - y for x, y in zip(s0 + [Fraction(0)] * max(0, len(prod) - len(s0)),
                                       prod + [Fraction(0)] * max(0, len(s0) - len(prod)))]
        s0, s1 = s1, trim(new_s)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    scale = 1 / r0[0]
    return [c * scale for c in s0]


# -- module-level operation surface ------------------------------------------


def make(order: int, terms) -> CycloNum:
    """Build the canonical reduced element sum coeff * zeta_order^exp.

    `terms` is an iterable of (exponent, coefficient) pairs (or a mapping);
    exponents are reduced modulo the order, coefficients may be ints,
    Fractions or fraction strings.
    """
    if order < 1:
        raise ValueError("order must be positive")
    ctx = _context(order)
    if hasattr(terms, "items"):
        terms = terms.items()
    acc = [Fraction(0)] * ctx.phi
    for exp, coeff in terms:
        c = Fraction(coeff)
        if not c:
            continue
        vec = ctx.power_vector(exp % order)
        for j, r in enumerate(vec):
            if r:
                acc[j] += c * r
    nums, den = _clear_denominators(acc)
    return CycloNum(order, den, nums)


def field_arithmetic(op: str, a: CycloNum, b: CycloNum) -> CycloNum:
    """Named dispatch over the four exact field operations."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def conjugate(a: CycloNum) -> CycloNum:
    return a.conjugate()


def galois_apply(l: int, a: CycloNum) -> CycloNum:
    return a.galois(l)


def coerce(a: CycloNum, new_order: int) -> CycloNum:
    return a.coerce(new_order)


def minimal_order(a: CycloNum) -> int:
    return a.minimal_order()


def root_of_unity_exp(r) -> CycloNum:
    """exp(2*pi*i*r) as an exact root of unity of order den(r)."""
    r = Fraction(r)
    r -= math.floor(r)
    return make(r.denominator, [(r.numerator, 1)])


def _legendre(a: int, p: int) -> int:
    t = pow(a, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _sqrt_prime(p: int) -> CycloNum:
    # Gauss sums: sqrt(2) = zeta_8 + zeta_8^-1; for odd p the quadratic
    # Gauss sum gives sqrt(p) directly (p = 1 mod 4) or i*sqrt(p) (p = 3 mod 4).
    if p == 2:
        return make(8, [(1, 1), (7, 1)])
    g = make(p, [(a, _legendre(a, p)) for a in range(1, p)])
    if p % 4 == 1:
        return g
    return g * make(4, [(1, -1)])


def sqrt_nonneg_rational(q) -> CycloNum:
    """The real nonnegative square root of q >= 0, exactly.

    sqrt(p/q) is computed as sqrt(p*q)/q so the radicand stays integral;
    square-free prime factors are handled by Gauss sums.  The sign is fixed
    by a floating embedding check (positive real part).
    """
    q = Fraction(q)
    if q < 0:
        raise NegativeRadicandError(f"sqrt of negative rational {q}")
    if q == 0:
        return CycloNum.zero()
    n = q.numerator * q.denominator
    square_part = 1
    odd_primes = []
    for p, e in _factorize(n).items():
        square_part *= p ** (e // 2)
        if e % 2:
            odd_primes.append(p)
    result = CycloNum.rational(Fraction(square_part, q.denominator))
    for p in sorted(odd_primes):
        result = result * _sqrt_prime(p)
    if result.embed().real < 0:
        result = -result
    return result


def embed_complex(a: CycloNum, digits: int = MAX_EMBED_DIGITS) -> complex:
    """Floating approximation of `a`, rounded to `digits` decimals."""
    if not 1 <= digits <= MAX_EMBED_DIGITS:
        raise ValueError(f"digits must be in 1..{MAX_EMBED_DIGITS}")
    z = a.embed()
    return complex(round(z.real, digits), round(z.imag, digits))


def cyclo_from_obj(obj) -> CycloNum:
    """Inverse of CycloNum.to_obj."""
    order = int(obj["order"])
    coeffs = [Fraction(c) for c in obj["coeffs"]]
    if len(coeffs) != euler_phi(order):
        raise ValueError("coefficient count does not match the field degree")
    nums, den = _clear_denominators(coeffs)
    return CycloNum(order, den, nums)
