"""Exact coefficient rings: Q, Q(sqrt d), F_p and Z/2^k.

A ring object doubles as the descriptor (what the ring is) and as the
arithmetic backend on *raw* values, which is what the polynomial code uses in
its inner loops.  :class:`RingElem` wraps a raw value together with its ring
for everything user facing.

Raw value conventions::

    Rationals        gmpy2.mpq
    QuadraticField   (mpq, mpq) meaning a + b*w with w^2 = discriminant
    PrimeField       int in [0, p)
    ModPrimePower    int in [0, p^k)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import gmpy2
from gmpy2 import mpq


class RingError(ValueError):
    """Malformed ring spec, ring mismatch or an invalid element."""


class NonUnitError(ZeroDivisionError):
    """Division by an element that is not invertible."""


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 1
    return True


class Ring:
    kind: str = ""
    is_field: bool = True
    discriminant: int | None = None
    prime: int | None = None
    exponent: int | None = None

    # --- raw arithmetic, overridden per ring -------------------------------
    zero: Any
    one: Any

    def add(self, x, y):
        raise NotImplementedError

    def sub(self, x, y):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return x == self.zero

    def is_unit(self, x) -> bool:
        return not self.is_zero(x)

    def from_int(self, n: int):
        raise NotImplementedError

    def from_rational(self, num: int, den: int = 1):
        if den == 0:
            raise NonUnitError("zero denominator")
        d = self.from_int(den)
        if not self.is_unit(d):
            raise NonUnitError(f"{den} is not a unit in {self.spec}")
        return self.mul(self.from_int(num), self.inv(d))

    def gen(self):
        """The quadratic generator ``w``; only quadratic fields have one."""
        raise RingError(f"{self.spec} has no generator w")

    def fmt(self, x) -> str:
        raise NotImplementedError

    def pow(self, x, e: int):
        result = self.one
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def coerce(self, value) -> Any:
        """Raw value from an int, Fraction, mpq or RingElem of this ring."""
        if isinstance(value, RingElem):
            if value.ring != self:
                raise RingError(f"ring mismatch: {value.ring.spec} vs {self.spec}")
            return value.value
        if isinstance(value, (bool,)):
            value = int(value)
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, (Fraction, type(mpq()))):
            return self.from_rational(int(value.numerator), int(value.denominator))
        raise RingError(f"cannot coerce {value!r} into {self.spec}")

    # --- public element layer ---------------------------------------------
    def __call__(self, value) -> RingElem:
        return RingElem(self, self.coerce(value))

    def elem(self, raw) -> RingElem:
        return RingElem(self, raw)

    @property
    def spec(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.spec


@dataclass(frozen=True)
class Rationals(Ring):
    kind = "rationals"
    zero = mpq(0)
    one = mpq(1)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def inv(self, x):
        if x == 0:
            raise NonUnitError("division by zero in Q")
        return 1 / x

    def from_int(self, n):
        return mpq(n)

    def from_rational(self, num, den=1):
        if den == 0:
            raise NonUnitError("zero denominator")
        return mpq(num, den)

    def fmt(self, x):
        return str(x)

    @property
    def spec(self):
        return "Q"


@dataclass(frozen=True)
class QuadraticField(Ring):
    discriminant: int = -1
    kind = "quadratic-extension"

    zero = (mpq(0), mpq(0))
    one = (mpq(1), mpq(0))

    def __post_init__(self):
        d = self.discriminant
        if d in (0, 1) or not _is_squarefree(d):
            raise RingError(f"discriminant {d} must be square-free and not 0 or 1")

    def add(self, x, y):
        return (x[0] + y[0], x[1] + y[1])

    def sub(self, x, y):
        return (x[0] - y[0], x[1] - y[1])

    def mul(self, x, y):
        a, b = x
        c, d = y
        if not b:
            return (a * c, a * d)
        if not d:
            return (a * c, b * c)
        return (a * c + self.discriminant * b * d, a * d + b * c)

    def neg(self, x):
        return (-x[0], -x[1])

    def inv(self, x):
        a, b = x
        norm = a * a - self.discriminant * b * b
        if norm == 0:
            raise NonUnitError("division by zero in quadratic field")
        return (a / norm, -b / norm)

    def is_zero(self, x):
        return not x[0] and not x[1]

    def from_int(self, n):
        return (mpq(n), mpq(0))

    def from_rational(self, num, den=1):
        if den == 0:
            raise NonUnitError("zero denominator")
        return (mpq(num, den), mpq(0))

    def gen(self):
        return (mpq(0), mpq(1))

    def norm(self, x):
        return x[0] * x[0] - self.discriminant * x[1] * x[1]

    def conj(self, x):
        return (x[0], -x[1])

    def fmt(self, x):
        a, b = x
        if not b:
            return str(a)
        if b == 1:
            bw = "w"
        elif b == -1:
            bw = "-w"
        else:
            bw = f"{b}*w"
        if not a:
            return bw
        return f"{a}{bw}" if bw.startswith("-") else f"{a}+{bw}"

    @property
    def spec(self):
        return f"Q(sqrt:{self.discriminant})"


@dataclass(frozen=True)
class PrimeField(Ring):
    prime: int = 2
    kind = "prime-field"

    def __post_init__(self):
        if self.prime < 2 or not gmpy2.is_prime(self.prime):
            raise RingError(f"{self.prime} is not prime")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.prime

    def add(self, x, y):
        return (x + y) % self.prime

    def sub(self, x, y):
        return (x - y) % self.prime

    def mul(self, x, y):
        return x * y % self.prime

    def neg(self, x):
        return -x % self.prime

    def inv(self, x):
        if x % self.prime == 0:
            raise NonUnitError(f"division by zero in F_{self.prime}")
        return pow(x, -1, self.prime)

    def from_int(self, n):
        return n % self.prime

    def fmt(self, x):
        return str(x)

    @property
    def spec(self):
        return f"Fp:{self.prime}"


@dataclass(frozen=True)
class ModPrimePower(Ring):
    prime: int = 2
    exponent: int = 1
    kind = "mod-prime-power"
    is_field = False

    def __post_init__(self):
        if self.exponent < 1:
            raise RingError("exponent must be >= 1")
        if self.prime < 2 or not gmpy2.is_prime(self.prime):
            raise RingError(f"{self.prime} is not prime")

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, x, y):
        return (x + y) % self.modulus

    def sub(self, x, y):
        return (x - y) % self.modulus

    def mul(self, x, y):
        return x * y % self.modulus

    def neg(self, x):
        return -x % self.modulus

    def is_unit(self, x):
        return x % self.prime != 0

    def inv(self, x):
        if x % self.prime == 0:
            raise NonUnitError(f"{x} is not a unit mod {self.prime}^{self.exponent}")
        return pow(x, -1, self.modulus)

    def from_int(self, n):
        return n % self.modulus

    def fmt(self, x):
        return str(x)

    @property
    def spec(self):
        return f"Z{self.prime}:{self.exponent}"


QQ = Rationals()

_SPEC_RE = [
    (re.compile(r"Q"), lambda m: QQ),
    (re.compile(r"Q\(sqrt:([+-]?\d+)\)"), lambda m: QuadraticField(int(m.group(1)))),
    (re.compile(r"Fp:(\d+)"), lambda m: PrimeField(int(m.group(1)))),
    (re.compile(r"Z2:(\d+)"), lambda m: ModPrimePower(2, int(m.group(1)))),
]


def make_ring(spec: str) -> Ring:
    """Parse ``Q``, ``Q(sqrt:<int>)``, ``Fp:<prime>`` or ``Z2:<k>``."""
    text = spec.replace(" ", "")
    for pattern, build in _SPEC_RE:
        m = pattern.fullmatch(text)
        if m:
            return build(m)
    raise RingError(f"malformed ring spec {spec!r}")


class RingElem:
    """An immutable element of one of the supported rings."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: Ring, value):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("RingElem is immutable")

    def _other(self, other):
        if isinstance(other, RingElem):
            if other.ring != self.ring:
                raise RingError(f"ring mismatch: {self.ring.spec} vs {other.ring.spec}")
            return other.value
        try:
            return self.ring.coerce(other)
        except RingError:
            return NotImplemented

    def _wrap(self, raw):
        return RingElem(self.ring, raw)

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ring.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ring.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ring.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ring.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ring.mul(self.value, self.ring.inv(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ring.mul(o, self.ring.inv(self.value)))

    def __neg__(self):
        return self._wrap(self.ring.neg(self.value))

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return self._wrap(self.ring.pow(self.ring.inv(self.value), -e))
        return self._wrap(self.ring.pow(self.value, e))

    def inverse(self) -> RingElem:
        return self._wrap(self.ring.inv(self.value))

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.value)

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, RingElem):
            return self.ring == other.ring and self.value == other.value
        try:
            return self.value == self.ring.coerce(other)
        except (RingError, NonUnitError):
            return False

    def __hash__(self):
        return hash((self.ring, self.value))

    def __str__(self):
        return self.ring.fmt(self.value)

    def __repr__(self):
        return f"RingElem({self.ring.spec}, {self})"


def ring_arith(op: str, x: RingElem, y: RingElem) -> RingElem:
    if x.ring != y.ring:
        raise RingError(f"ring mismatch: {x.ring.spec} vs {y.ring.spec}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def finite_field_stufe(p: int) -> tuple[int, list[RingElem]]:
    """Stufe of F_p with the lexicographically smallest witness.

    Returns ``(s, squares)`` where the squares of ``squares`` sum to -1.
    """
    if not 2 <= p <= 10**6 or not gmpy2.is_prime(p):
        raise RingError(f"p must be a prime <= 10^6, got {p}")
    F = PrimeField(p)
    if p == 2:
        return 1, [F(1)]
    minus_one = p - 1
    roots = {}
    for x in range(p // 2 + 1):
        roots.setdefault(x * x % p, x)
    if minus_one in roots:
        return 1, [F(roots[minus_one])]
    for x in range(1, p):
        y = roots.get((minus_one - x * x) % p)
        if y is not None:
            return 2, [F(x), F(y)]
    raise AssertionError("every odd prime field has Stufe <= 2")
