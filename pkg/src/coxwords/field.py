"""Exact arithmetic in Q(√2, √3, √5) and an approximate fallback.

Elements of the multiquadratic field are stored as eight integer numerators
over a common positive denominator.  Basis element ``k`` (0 ≤ k < 8) is the
square root of the product of the primes whose bit is set in ``k``::

    k:      0  1   2   3   4   5    6    7
    basis:  1  √2  √3  √6  √5  √10  √15  √30

so ``basis[i] * basis[j] == extra(i & j) * basis[i ^ j]`` where ``extra``
is the product of the primes shared by ``i`` and ``j``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

PRIMES = (2, 3, 5)
RADICANDS = tuple(math.prod(p for b, p in enumerate(PRIMES) if k >> b & 1) for k in range(8))
NAMES = ("", "r2", "r3", "r6", "r5", "r10", "r15", "r30")

Rational = Union[int, Fraction]

# Labels whose weight 2cos(pi/m) lies in the field.
EXACT_LABELS = frozenset({3, 4, 5, 6, math.inf})

APPROX_EPS = 2.0 ** -45


class PrecisionExhausted(ArithmeticError):
    """An approximate value is too close to zero to decide its sign."""


def _mul_table():
    table = []
    for i in range(8):
        row = []
        for j in range(8):
            row.append((i ^ j, RADICANDS[i & j]))
        table.append(row)
    return table


_MUL = _mul_table()


class FieldValue:
    """Exact element of Q(√2, √3, √5)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den: int = 1):
        num = tuple(int(c) for c in num)
        if len(num) != 8:
            raise ValueError("FieldValue needs exactly 8 coefficients")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        g = math.gcd(den, *num)
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
        self.num = num
        self.den = den
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def _raw(cls, num: tuple, den: int) -> FieldValue:
        # caller guarantees reduced form
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, q: Rational) -> FieldValue:
        q = Fraction(q)
        return cls((q.numerator, 0, 0, 0, 0, 0, 0, 0), q.denominator)

    @classmethod
    def sqrt(cls, n: int) -> FieldValue:
        """√n for n a product of distinct primes from {2, 3, 5} (or 1)."""
        try:
            k = RADICANDS.index(n)
        except ValueError:
            raise ValueError(f"√{n} is not a basis element") from None
        num = [0] * 8
        num[k] = 1
        return cls(num)

    @classmethod
    def from_coefficients(cls, coeffs) -> FieldValue:
        """Build from eight rationals over the basis (1, √2, √3, √6, √5, √10, √15, √30)."""
        fr = [Fraction(c) for c in coeffs]
        den = math.lcm(*(f.denominator for f in fr))
        return cls([f.numerator * (den // f.denominator) for f in fr], den)

    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> FieldValue:
        if isinstance(other, FieldValue):
            return other
        if isinstance(other, (int, Fraction)):
            return FieldValue.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            num = tuple(a + b for a, b in zip(self.num, other.num))
            if self.den == 1:
                return FieldValue._raw(num, 1)
            return FieldValue(num, self.den)
        d1, d2 = self.den, other.den
        return FieldValue(tuple(a * d2 + b * d1 for a, b in zip(self.num, other.num)), d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> FieldValue:
        return FieldValue._raw(tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldValue(tuple(c * other for c in self.num), self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.num, other.num
        out = [0] * 8
        for i in range(8):
            ai = a[i]
            if not ai:
                continue
            row = _MUL[i]
            for j in range(8):
                bj = b[j]
                if bj:
                    k, extra = row[j]
                    out[k] += ai * bj * extra
        return FieldValue(out, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return FieldValue(tuple(c * q.denominator for c in self.num), self.den * q.numerator)
        return NotImplemented

    def __abs__(self) -> FieldValue:
        return -self if self.sign() < 0 else self

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldValue):
            return self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            return self == FieldValue.rational(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def sign(self) -> int:
        """Exact sign: -1, 0 or +1."""
        num = self.num
        nz = [k for k in range(8) if num[k]]
        if not nz:
            return 0
        if len(nz) == 1:
            return 1 if num[nz[0]] > 0 else -1
        return _interval_sign(num, nz)

    def compare(self, other) -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __float__(self) -> float:
        return math.fsum(c * math.sqrt(r) for c, r in zip(self.num, RADICANDS)) / self.den

    # -- rendering --------------------------------------------------------

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.num):
            if not c:
                continue
            q = Fraction(c, self.den)
            mag = abs(q)
            if k == 0:
                body = str(mag)
            elif mag == 1:
                body = NAMES[k]
            else:
                body = f"{mag}·{NAMES[k]}"
            terms.append((q < 0, body))
        if not terms:
            return "0"
        neg, body = terms[0]
        out = ("-" if neg else "") + body
        for neg, body in terms[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"FieldValue({str(self)!r})"


def _interval_sign(num: tuple, nz: list, bits: int = 64) -> int:
    # Outward-rounded dyadic bounds on each radical; doubles precision until
    # the enclosure excludes zero.  Termination: the value is known nonzero.
    while True:
        lo = hi = 0
        for k in nz:
            c = num[k]
            if k == 0:
                lo += c << bits
                hi += c << bits
                continue
            r = math.isqrt(RADICANDS[k] << (2 * bits))
            if c > 0:
                lo += c * r
                hi += c * (r + 1)
            else:
                lo += c * (r + 1)
                hi += c * r
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2


ONE = FieldValue.rational(1)
ZERO = FieldValue.rational(0)


class ApproxValue:
    """Double-precision value carrying an absolute error bound.

    Used for edge labels whose weight 2cos(pi/m) is not multiquadratic.
    Sign queries inside the error bound raise :class:`PrecisionExhausted`.
    Equality and hashing go through a quantised key so that roots can be
    deduplicated; results built from these values are flagged non-exact.
    """

    __slots__ = ("value", "eps")

    QUANTUM = 1e-8

    def __init__(self, value: float, eps: float = 0.0):
        self.value = float(value)
        self.eps = float(eps)

    @classmethod
    def lift(cls, x) -> ApproxValue:
        if isinstance(x, ApproxValue):
            return x
        v = float(x)
        return cls(v, abs(v) * 2.0 ** -50)

    def _grow(self, v: float, eps: float) -> ApproxValue:
        return ApproxValue(v, eps + abs(v) * 2.0 ** -52)

    def __add__(self, other):
        o = ApproxValue.lift(other)
        return self._grow(self.value + o.value, self.eps + o.eps)

    __radd__ = __add__

    def __neg__(self):
        return ApproxValue(-self.value, self.eps)

    def __sub__(self, other):
        return self + (-ApproxValue.lift(other))

    def __rsub__(self, other):
        return ApproxValue.lift(other) + (-self)

    def __mul__(self, other):
        o = ApproxValue.lift(other)
        eps = abs(self.value) * o.eps + abs(o.value) * self.eps + self.eps * o.eps
        return self._grow(self.value * o.value, eps)

    __rmul__ = __mul__

    def sign(self) -> int:
        if abs(self.value) <= self.eps:
            raise PrecisionExhausted(f"|{self.value!r}| is within the error bound {self.eps!r}")
        return 1 if self.value > 0 else -1

    def compare(self, other) -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def is_zero(self) -> bool:
        return self._key() == 0

    def _key(self) -> int:
        return round(self.value / self.QUANTUM)

    def __eq__(self, other):
        if isinstance(other, (ApproxValue, FieldValue, int, float, Fraction)):
            return self._key() == ApproxValue.lift(other)._key()
        return NotImplemented

    def __hash__(self):
        return hash(self._key())

    def __float__(self):
        return self.value

    def __str__(self):
        return f"~{self.value:.12g}"

    def __repr__(self):
        return f"ApproxValue({self.value!r}, eps={self.eps!r})"


Scalar = Union[FieldValue, ApproxValue]


def _golden() -> FieldValue:
    return FieldValue((1, 0, 0, 0, 1, 0, 0, 0), 2)


def weight(m) -> Scalar:
    """Edge weight 2cos(pi/m), exact for m in {3, 4, 5, 6, inf}."""
    if m != math.inf and (not float(m).is_integer() or m < 3):
        raise ValueError(f"edge label must be an integer >= 3 or inf, got {m!r}")
    if m == 3:
        return ONE
    if m == 4:
        return FieldValue.sqrt(2)
    if m == 5:
        return _golden()
    if m == 6:
        return FieldValue.sqrt(3)
    if m == math.inf:
        return FieldValue.rational(2)
    return ApproxValue(2 * math.cos(math.pi / m), APPROX_EPS)


def sign(v) -> int:
    if isinstance(v, (int, Fraction)):
        return (v > 0) - (v < 0)
    return v.sign()


def compare(a, b) -> int:
    """-1, 0, 1 as a <, =, > b in the real embedding."""
    return sign(a - b)
