"""Exact arithmetic in the cyclotomic field Q(A), A a primitive 4(k+2)-th root of unity.

Elements are stored as an integer polynomial in A of degree below
phi(4(k+2)) over a positive integer denominator, always reduced modulo the
cyclotomic polynomial and with coprime content. Equality of two values is
therefore equality of their stored forms.

Besides :class:`CycNum` this module provides :class:`QMonomial`, a factored
representation ``A^e * prod_n [n]^{m_n}`` used for the products of quantum
factorials that make up longitude coefficients. Multiplying monomials is
integer bookkeeping; :meth:`QMonomial.value` materialises the field element.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import NotAnInteger

__all__ = [
    "RingCtx",
    "CycNum",
    "QMonomial",
    "make_ring",
    "arith",
    "cyclotomic_polynomial",
    "quantum_int",
    "quantum_factorial",
    "loop_value",
    "imaginary_unit",
    "sin_value",
    "as_integer",
    "factorial_exponents",
]


# ---------------------------------------------------------------------------
# polynomial helpers (ascending coefficient lists)


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    q = [Fraction(0)] * max(len(num) - dd, 1)
    while len(num) - 1 >= dd and num:
        shift = len(num) - 1 - dd
        c = num[-1] / lead
        q[shift] = c
        for i, d in enumerate(den):
            num[i + shift] -= c * d
        num.pop()
        _trim(num)
    return _trim(q), num


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients (ascending) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("index must be positive")
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod(num, [Fraction(c) for c in cyclotomic_polynomial(d)])
            assert not r
            num = q
    return tuple(int(c) for c in num)


# ---------------------------------------------------------------------------
# ring context


@dataclass(frozen=True, eq=False)
class RingCtx:
    """Arithmetic context for level ``k``: the field Q(A) with A of order 4(k+2)."""

    level: int
    order: int
    minimal_polynomial: tuple[int, ...]
    phi_degree: int
    _power_table: tuple[tuple[int, ...], ...] = field(repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, RingCtx) and other.level == self.level

    def __hash__(self) -> int:
        return hash(("RingCtx", self.level))

    # constructors -------------------------------------------------------
    def const(self, value: int | Fraction) -> "CycNum":
        value = Fraction(value)
        num = [0] * self.phi_degree
        num[0] = value.numerator
        return CycNum._make(self, num, value.denominator)

    def zero(self) -> "CycNum":
        return self.const(0)

    def one(self) -> "CycNum":
        return self.const(1)

    def a_power(self, m: int) -> "CycNum":
        """A^m for any integer m (negative exponents wrap via A^order = 1)."""
        key = ("apow", m % self.order)
        hit = self._cache.get(key)
        if hit is None:
            hit = CycNum(self, self._power_table[m % self.order], 1)
            self._cache[key] = hit
        return hit

    def from_coeffs(self, coeffs: Sequence[int], den: int = 1) -> "CycNum":
        """Element sum_i coeffs[i] A^i / den; any length, reduced on entry."""
        return CycNum._make(self, list(coeffs), den)


@lru_cache(maxsize=None)
def make_ring(k: int) -> RingCtx:
    """Return the (cached) arithmetic context for level ``k``."""
    if k < 0:
        raise ValueError("level must be non-negative")
    order = 4 * (k + 2)
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    # x^m mod phi for 0 <= m < order; phi is monic so reduction stays integral
    table = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(order):
        table.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return RingCtx(k, order, phi, deg, tuple(table))


# ---------------------------------------------------------------------------
# field elements


class CycNum:
    """Immutable element of Q(A) in canonical form."""

    __slots__ = ("ring", "num", "den", "_hash")

    def __init__(self, ring: RingCtx, num: Sequence[int], den: int):
        # trusted constructor: caller guarantees canonical data
        self.ring = ring
        self.num = tuple(num)
        self.den = den
        self._hash = None

    @classmethod
    def _make(cls, ring: RingCtx, coeffs: Iterable[int], den: int) -> "CycNum":
        deg = ring.phi_degree
        out = [0] * deg
        table = ring._power_table
        order = ring.order
        for m, c in enumerate(coeffs):
            if not c:
                continue
            if m < deg:
                out[m] += c
            else:
                row = table[m % order]
                for i in range(deg):
                    if row[i]:
                        out[i] += c * row[i]
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den = -den
            out = [-c for c in out]
        g = den
        for c in out:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if not any(out):
            den = 1
        elif g != 1:
            out = [c // g for c in out]
            den //= g
        return cls(ring, out, den)

    # basic protocol ----------------------------------------------------
    def __repr__(self) -> str:
        terms = [f"{c}*A^{i}" for i, c in enumerate(self.num) if c]
        body = " + ".join(terms) if terms else "0"
        return f"CycNum(({body})/{self.den}, k={self.ring.level})" if self.den != 1 else f"CycNum({body}, k={self.ring.level})"

    def __eq__(self, other) -> bool:
        if isinstance(other, CycNum):
            return self.ring == other.ring and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring.level, self.num, self.den))
        return self._hash

    def is_zero(self) -> bool:
        return not any(self.num)

    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            if other.ring != self.ring:
                raise ValueError("mixing values from different levels")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise TypeError(f"cannot combine CycNum with {type(other).__name__}")

    # arithmetic ---------------------------------------------------------
    def __neg__(self) -> "CycNum":
        return CycNum(self.ring, tuple(-c for c in self.num), self.den)

    def __add__(self, other) -> "CycNum":
        other = self._coerce(other)
        d = lcm(self.den, other.den)
        sa, sb = d // self.den, d // other.den
        return CycNum._make(self.ring, [x * sa + y * sb for x, y in zip(self.num, other.num)], d)

    __radd__ = __add__

    def __sub__(self, other) -> "CycNum":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "CycNum":
        return self._coerce(other) - self

    def __mul__(self, other) -> "CycNum":
        other = self._coerce(other)
        a, b = self.num, other.num
        prod = [0] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycNum._make(self.ring, prod, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        key = ("inv", self.num)
        cache = self.ring._cache
        base = cache.get(key)
        if base is None:
            modulus = [Fraction(c) for c in self.ring.minimal_polynomial]
            r0, r1 = modulus, _trim([Fraction(c) for c in self.num])
            s0, s1 = [], [Fraction(1)]
            while r1:
                q, r = _poly_divmod(r0, r1)
                r0, r1 = r1, r
                s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
            # r0 is a nonzero constant since the modulus is irreducible
            c = r0[0]
            coeffs = [x / c for x in s0]
            den = lcm(*(x.denominator for x in coeffs)) if coeffs else 1
            base = CycNum._make(self.ring, [int(x * den) for x in coeffs], den)
            cache[key] = base
        if self.den == 1:
            return base
        return CycNum._make(self.ring, [c * self.den for c in base.num], base.den)

    def __truediv__(self, other) -> "CycNum":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "CycNum":
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int) -> "CycNum":
        if e < 0:
            return self.inverse() ** (-e)
        out = self.ring.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # inspection -----------------------------------------------------------
    def a_exponent(self) -> int | None:
        """Return m in [0, order) when self equals A^m, else None."""
        if self.den != 1:
            return None
        table = self.ring._power_table
        for m in range(self.ring.order):
            if table[m] == self.num:
                return m
        return None

    def to_json(self) -> dict:
        return {"num": list(self.num), "den": self.den}

    def complex_value(self) -> complex:
        """Numerical value under A -> exp(i pi / (2(k+2))); for diagnostics only."""
        import cmath

        a = cmath.exp(1j * cmath.pi / (2 * (self.ring.level + 2)))
        return sum(c * a**i for i, c in enumerate(self.num)) / self.den


def arith(x: CycNum, y: CycNum, op: str) -> CycNum:
    """Apply ``op`` in {add, sub, mul, div} to two field elements."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# quantum numbers


def quantum_int(ring: RingCtx, n: int) -> CycNum:
    """[n] = (A^{2n} - A^{-2n}) / (A^2 - A^{-2})."""
    key = ("qint", n)
    hit = ring._cache.get(key)
    if hit is None:
        den = ring.a_power(2) - ring.a_power(-2)
        hit = (ring.a_power(2 * n) - ring.a_power(-2 * n)) / den
        ring._cache[key] = hit
    return hit


def quantum_factorial(ring: RingCtx, n: int) -> CycNum:
    """[n]! = [1][2]...[n], with [0]! = 1."""
    if n < 0:
        raise ValueError("factorial of a negative integer")
    key = ("qfact", n)
    hit = ring._cache.get(key)
    if hit is None:
        hit = ring.one() if n == 0 else quantum_factorial(ring, n - 1) * quantum_int(ring, n)
        ring._cache[key] = hit
    return hit


def loop_value(ring: RingCtx, n: int) -> CycNum:
    """<n> = (-1)^n [n+1]."""
    v = quantum_int(ring, n + 1)
    return -v if n % 2 else v


def imaginary_unit(ring: RingCtx) -> CycNum:
    """i = A^{k+2}."""
    return ring.a_power(ring.level + 2)


def sin_value(ring: RingCtx, a: int, weight: int = 1) -> CycNum:
    """Exact sin(a pi/(k+2))**weight as (A^{2a} - A^{-2a}) / (2i), raised to ``weight``."""
    s = (ring.a_power(2 * a) - ring.a_power(-2 * a)) * (-imaginary_unit(ring)) / 2
    return s**weight


def as_integer(x: CycNum) -> int:
    """Return the rational integer equal to ``x`` or raise :class:`NotAnInteger`."""
    if x.den != 1 or any(x.num[1:]):
        raise NotAnInteger(x)
    return x.num[0]


# ---------------------------------------------------------------------------
# factored monomials


def _fold(ring: RingCtx, n: int) -> int:
    """Index of the canonical representative of [n] under [k+2-n] = [n]."""
    return min(n, ring.level + 2 - n)


def factorial_exponents(ring: RingCtx, n: int) -> tuple[int, ...]:
    """Exponent vector of [n]! in the QMonomial basis; 0 <= n <= k+1."""
    key = ("fvec", n)
    hit = ring._cache.get(key)
    if hit is None:
        if not 0 <= n <= ring.level + 1:
            raise ValueError(f"[{n}]! vanishes or is undefined at level {ring.level}")
        q = [0] * max((ring.level + 2) // 2 - 1, 0)
        for i in range(2, n + 1):
            r = _fold(ring, i)
            if r >= 2:
                q[r - 2] += 1
        hit = tuple(q)
        ring._cache[key] = hit
    return hit


class QMonomial:
    """Nonzero value ``A^e * prod [n]^{m_n}`` with 2 <= n <= (k+2)/2.

    Quantum integers [n] with 1 <= n <= k+1 are nonzero; [n] and [k+2-n]
    coincide, so only representatives n <= (k+2)/2 are stored. Two monomials
    with equal stored data are equal; the converse may fail, so
    :meth:`equals` falls back to comparing field values.
    """

    __slots__ = ("ring", "a_exp", "qexp")

    def __init__(self, ring: RingCtx, a_exp: int = 0, qexp: tuple[int, ...] | None = None):
        self.ring = ring
        self.a_exp = a_exp % ring.order
        width = max((ring.level + 2) // 2 - 1, 0)
        self.qexp = qexp if qexp is not None else (0,) * width

    @classmethod
    def one(cls, ring: RingCtx) -> "QMonomial":
        return cls(ring)

    @classmethod
    def a_power(cls, ring: RingCtx, m: int) -> "QMonomial":
        return cls(ring, m)

    @classmethod
    def sign(cls, ring: RingCtx, e: int) -> "QMonomial":
        """(-1)^e."""
        return cls(ring, (e % 2) * (ring.order // 2))

    @classmethod
    def qint(cls, ring: RingCtx, n: int, power: int = 1) -> "QMonomial":
        """[n]^power for 1 <= |n| <= k+1; [-n] = -[n]."""
        sgn = 0
        if n < 0:
            n, sgn = -n, power
        if not 1 <= n <= ring.level + 1:
            raise ValueError(f"[{n}] is zero or out of range at level {ring.level}")
        q = list(cls(ring).qexp)
        r = _fold(ring, n)
        if r >= 2:
            q[r - 2] += power
        return cls(ring, (sgn % 2) * (ring.order // 2), tuple(q))

    @classmethod
    def qfactorial(cls, ring: RingCtx, n: int, power: int = 1) -> "QMonomial":
        """([n]!)^power for 0 <= n <= k+1."""
        return cls(ring, 0, tuple(power * x for x in factorial_exponents(ring, n)))

    def __mul__(self, other: "QMonomial") -> "QMonomial":
        return QMonomial(self.ring, self.a_exp + other.a_exp, tuple(x + y for x, y in zip(self.qexp, other.qexp)))

    def inverse(self) -> "QMonomial":
        return QMonomial(self.ring, -self.a_exp, tuple(-x for x in self.qexp))

    def __truediv__(self, other: "QMonomial") -> "QMonomial":
        return self * other.inverse()

    def __neg__(self) -> "QMonomial":
        return QMonomial(self.ring, self.a_exp + self.ring.order // 2, self.qexp)

    def __pow__(self, e: int) -> "QMonomial":
        return QMonomial(self.ring, self.a_exp * e, tuple(x * e for x in self.qexp))

    def key(self) -> tuple:
        return (self.a_exp, self.qexp)

    def is_phase(self) -> bool:
        """True when the value is visibly a power of A."""
        return not any(self.qexp)

    def value(self) -> CycNum:
        ring = self.ring
        key = ("mono", self.key())
        hit = ring._cache.get(key)
        if hit is None:
            hit = ring.a_power(self.a_exp)
            for idx, m in enumerate(self.qexp):
                if m:
                    hit = hit * quantum_int(ring, idx + 2) ** m
            ring._cache[key] = hit
        return hit

    def equals(self, other: "QMonomial") -> bool:
        return self.key() == other.key() or self.value() == other.value()

    def __eq__(self, other) -> bool:
        if isinstance(other, QMonomial):
            return self.ring == other.ring and self.equals(other)
        if isinstance(other, (CycNum, int, Fraction)):
            return self.value() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value())

    def __repr__(self) -> str:
        parts = [f"A^{self.a_exp}"]
        parts += [f"[{i + 2}]^{m}" for i, m in enumerate(self.qexp) if m]
        return "QMonomial(" + " * ".join(parts) + f", k={self.ring.level})"
