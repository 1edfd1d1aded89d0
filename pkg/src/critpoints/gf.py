"""Arithmetic in a prime field GF(q).

Elements are stored as canonical residues in ``[0, q)``. The modulus lives
on a :class:`PrimeField` context; :class:`FieldElement` is a thin value type
for callers who want operator syntax. Hot loops elsewhere in the package
work on plain ints through the field's methods.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

DEFAULT_MODULUS = 65521


def is_prime(q: int) -> bool:
    """Trial-division primality test (adequate for q < 2**31)."""
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The field of residues modulo an odd prime ``q``."""

    __slots__ = ("q",)

    def __init__(self, q: int = DEFAULT_MODULUS):
        q = int(q)
        if q >= 2**31:
            raise ValueError(f"modulus {q} too large (must be < 2**31)")
        if q == 2 or not is_prime(q):
            raise ValueError(f"modulus {q} is not an odd prime")
        self.q = q

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(int(value) % self.q, self)

    def reduce(self, a: int) -> int:
        return a % self.q

    def add(self, a, b):
        return _wrap((_v(a) + _v(b)) % self.q, a, b, self)

    def sub(self, a, b):
        return _wrap((_v(a) - _v(b)) % self.q, a, b, self)

    def mul(self, a, b):
        return _wrap((_v(a) * _v(b)) % self.q, a, b, self)

    def neg(self, a):
        return _wrap((-_v(a)) % self.q, a, a, self)

    def inv(self, a):
        va = _v(a) % self.q
        if va == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self!r}")
        return _wrap(pow(va, -1, self.q), a, a, self)

    def div(self, a, b):
        return self.mul(a, self.inv(b))


@lru_cache(maxsize=None)
def get_field(q: int = DEFAULT_MODULUS) -> PrimeField:
    return PrimeField(q)


def _v(a) -> int:
    return a.value if isinstance(a, FieldElement) else int(a)


def _wrap(value: int, a, b, field: PrimeField):
    # plain ints in, plain int out; any FieldElement operand promotes the result
    if isinstance(a, FieldElement) or isinstance(b, FieldElement):
        return FieldElement(value, field)
    return value


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"{self.value} is not a canonical residue mod {self.field.q}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("operands belong to different fields")
            return other.value
        return int(other)

    def __add__(self, other):
        return FieldElement((self.value + self._coerce(other)) % self.field.q, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement((self.value - self._coerce(other)) % self.field.q, self.field)

    def __rsub__(self, other):
        return FieldElement((self._coerce(other) - self.value) % self.field.q, self.field)

    def __mul__(self, other):
        return FieldElement((self.value * self._coerce(other)) % self.field.q, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement((-self.value) % self.field.q, self.field)

    def __truediv__(self, other):
        return self * self.field.inv(self._coerce(other))

    def inverse(self) -> FieldElement:
        return self.field.inv(self)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(pow(self.value, e, self.field.q), self.field)

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.q
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.q))

    def __repr__(self):
        return f"{self.value} (mod {self.field.q})"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return _same(a, b).add(a, b)


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return _same(a, b).mul(a, b)


def neg(a: FieldElement) -> FieldElement:
    return a.field.neg(a)


def inv(a: FieldElement) -> FieldElement:
    return a.field.inv(a)


def _same(a: FieldElement, b: FieldElement) -> PrimeField:
    if a.field != b.field:
        raise ValueError("operands belong to different fields")
    return a.field
