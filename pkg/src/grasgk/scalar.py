"""Exact field arithmetic over Q and over odd prime fields F_p.

Every algebraic module in the package computes over one of these two kinds
of coefficient fields; there is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class FieldMismatchError(ValueError):
    """Raised when two scalars over different field specs are combined."""


class InvalidFieldError(ValueError):
    """Raised for characteristics that are neither 0 nor an odd prime."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: Q when characteristic is 0, else F_p with p an odd prime."""

    characteristic: int = 0

    def __post_init__(self) -> None:
        p = self.characteristic
        if p == 0:
            return
        if p < 3 or not _is_prime(p):
            raise InvalidFieldError(
                f"characteristic must be 0 or an odd prime >= 3, got {p}"
            )

    @property
    def is_modular(self) -> bool:
        return self.characteristic != 0


class Scalar:
    """Immutable exact field element.

    Over Q the value is a ``Fraction`` in lowest terms; over F_p it is a
    residue in [0, p).  Scalars over distinct field specs never mix.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value):
        p = field.characteristic
        if p == 0:
            value = value if isinstance(value, Fraction) else Fraction(value)
        else:
            if isinstance(value, Fraction):
                if value.denominator % p == 0:
                    raise ZeroDivisionError(f"denominator not invertible mod {p}")
                value = value.numerator * pow(value.denominator, -1, p) % p
            else:
                value = int(value) % p
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Scalar is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(field: FieldSpec) -> "Scalar":
        return Scalar(field, 0)

    @staticmethod
    def one(field: FieldSpec) -> "Scalar":
        return Scalar(field, 1)

    @staticmethod
    def of(field: FieldSpec, num: int, den: int = 1) -> "Scalar":
        return Scalar(field, Fraction(num, den))

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self) -> bool:
        return self.value != 0

    def _check(self, other: "Scalar") -> None:
        if self.field != other.field:
            raise FieldMismatchError(
                f"mixed field specs: {self.field} vs {other.field}"
            )

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.value + other.value)

    def __sub__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.value - other.value)

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, -self.value)

    def __mul__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.value * other.value)

    def inv(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        p = self.field.characteristic
        if p == 0:
            return Scalar(self.field, 1 / self.value)
        return Scalar(self.field, pow(self.value, -1, p))

    def __truediv__(self, other: "Scalar") -> "Scalar":
        return self * other.inv()

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inv() ** (-n)
        p = self.field.characteristic
        if p == 0:
            return Scalar(self.field, self.value**n)
        return Scalar(self.field, pow(self.value, n, p))

    # -- misc --------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Scalar)
            and self.field == other.field
            and self.value == other.value
        )

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __repr__(self) -> str:
        return f"Scalar({self.field.characteristic}, {self.value})"

    def __str__(self) -> str:
        return str(self.value)


def add(a: Scalar, b: Scalar) -> Scalar:
    """Exact sum of two scalars over the same field."""
    return a + b


def mul(a: Scalar, b: Scalar) -> Scalar:
    """Exact product of two scalars over the same field."""
    return a * b


def inv(a: Scalar) -> Scalar:
    """Multiplicative inverse; raises ZeroDivisionError for 0."""
    return a.inv()
