"""Lexicographically ordered value groups inside Q^n.

The value group of every supported field is Z^n (n <= 2), sitting in its
divisible hull Q^n.  Norm values and graded degrees live in the hull, so
coordinates are kept as exact fractions.
"""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Iterable


class RankMismatch(ValueError):
    pass


@total_ordering
class ValueGroupElement:
    """A point of Q^n, or the infinity marker (``coords is None``)."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable | None):
        if coords is None:
            self.coords = None
        else:
            self.coords = tuple(Fraction(c) for c in coords)

    @classmethod
    def zero(cls, rank: int) -> "ValueGroupElement":
        return cls((0,) * rank)

    @property
    def is_infinite(self) -> bool:
        return self.coords is None

    @property
    def rank(self) -> int:
        if self.coords is None:
            raise ValueError("infinity has no rank")
        return len(self.coords)

    def _check(self, other: "ValueGroupElement") -> None:
        if self.coords is not None and other.coords is not None:
            if len(self.coords) != len(other.coords):
                raise RankMismatch(f"rank {len(self.coords)} vs {len(other.coords)}")

    def __eq__(self, other):
        if not isinstance(other, ValueGroupElement):
            return NotImplemented
        self._check(other)
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other: "ValueGroupElement") -> bool:
        self._check(other)
        if self.coords is None:
            return False
        if other.coords is None:
            return True
        return self.coords < other.coords

    def __add__(self, other: "ValueGroupElement") -> "ValueGroupElement":
        self._check(other)
        if self.coords is None or other.coords is None:
            return INF
        return ValueGroupElement(a + b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "ValueGroupElement":
        if self.coords is None:
            raise ValueError("cannot negate infinity")
        return ValueGroupElement(-a for a in self.coords)

    def __sub__(self, other: "ValueGroupElement") -> "ValueGroupElement":
        return self + (-other)

    def __mul__(self, k) -> "ValueGroupElement":
        if self.coords is None:
            return INF
        return ValueGroupElement(Fraction(k) * a for a in self.coords)

    __rmul__ = __mul__

    def half(self) -> "ValueGroupElement":
        return self * Fraction(1, 2)

    def is_integral(self) -> bool:
        """Membership in the lattice Z^n (the value group of the field)."""
        return self.coords is not None and all(c.denominator == 1 for c in self.coords)

    def coset_mod_lattice(self) -> tuple:
        """Representative of the class modulo Z^n: fractional parts in [0, 1)."""
        if self.coords is None:
            raise ValueError("infinity has no coset")
        return tuple(c - (c.numerator // c.denominator) for c in self.coords)

    def parity(self) -> tuple:
        """Class of an integral element modulo 2Z^n, as a tuple in {0,1}^n."""
        if not self.is_integral():
            raise ValueError(f"{self} is not in the value group")
        return tuple(int(c) % 2 for c in self.coords)

    def __repr__(self):
        if self.coords is None:
            return "inf"
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def to_json(self):
        if self.coords is None:
            return "inf"
        return [str(c) for c in self.coords]


INF = ValueGroupElement(None)


def vg(*coords) -> ValueGroupElement:
    return ValueGroupElement(coords)


def lex_compare(a: ValueGroupElement, b: ValueGroupElement) -> int:
    """Return -1, 0 or 1.  Raises :class:`RankMismatch` on incompatible ranks."""
    if a == b:
        return 0
    return -1 if a < b else 1


def vmin(values: Iterable[ValueGroupElement]) -> ValueGroupElement:
    best = INF
    for v in values:
        if v < best:
            best = v
    return best
