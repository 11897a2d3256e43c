"""Prime-field arithmetic.

The code construction only needs ``q >= T`` distinct elements with inverses,
so prime fields are enough.  Elements are small immutable value objects; the
coding kernels work on plain ``int`` residues for speed and only use
:class:`Field` for validation and inverses.
"""
from __future__ import annotations

from functools import lru_cache


class FieldError(ValueError):
    """Raised on invalid moduli or mixed-field operands."""


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def smallest_prime_at_least(m: int) -> int:
    """Least prime ``>= m``."""
    if m < 2:
        raise FieldError(f"smallest_prime_at_least needs m >= 2, got {m}")
    while not is_prime(m):
        m += 1
    return m


def egcd_inverse(a: int, p: int) -> int:
    """Inverse of ``a`` modulo ``p`` by the extended Euclidean algorithm."""
    a %= p
    if a == 0:
        raise ZeroDivisionError("zero has no multiplicative inverse")
    r0, r1 = p, a
    s0, s1 = 0, 1
    while r1:
        quot = r0 // r1
        r0, r1 = r1, r0 - quot * r1
        s0, s1 = s1, s0 - quot * s1
    # r0 == gcd == 1 for prime p
    return s0 % p


class Field:
    """GF(p) for a prime ``p``."""

    __slots__ = ("p", "_inv")

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise FieldError(f"field modulus must be prime, got {p!r}")
        self.p = p
        self._inv: dict[int, int] = {}

    def __repr__(self) -> str:
        return f"Field({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Field", self.p))

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        # memoized; results identical to a fresh egcd_inverse
        a %= self.p
        try:
            return self._inv[a]
        except KeyError:
            r = self._inv[a] = egcd_inverse(a, self.p)
            return r

    def elements(self):
        return [FieldElement(self, v) for v in range(self.p)]


@lru_cache(maxsize=None)
def get_field(p: int) -> Field:
    return Field(p)


class FieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        if not isinstance(value, int) or isinstance(value, bool):
            raise FieldError(f"field values are integers, got {value!r}")
        if not 0 <= value < field.p:
            raise FieldError(f"{value} is not in [0, {field.p - 1}]")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _other(self, other: "FieldElement") -> int:
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise FieldError(f"mixed-field operands: GF({self.field.p}) and GF({other.field.p})")
        return other.value

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, (self.value + b) % self.field.p)

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, (self.value - b) % self.field.p)

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, (self.value * b) % self.field.p)

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, (self.value * self.field.inv(b)) % self.field.p)

    def __neg__(self):
        return FieldElement(self.field, (-self.value) % self.field.p)

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GF{self.field.p}({self.value})"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()
