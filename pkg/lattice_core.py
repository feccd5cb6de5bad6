"""
Integer model of Pic(S) for a general rational elliptic surface S.

Classes are written D = h_coeff * h + sum(e[i] * e_{i+1}) in the basis
(h, e1, ..., e9) with intersection form diag(1, -1, ..., -1).
"""
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

RANK = 10

# Intersection form in the basis (h, e1, ..., e9)
GRAM = np.diag(np.array([1] + [-1] * 9, dtype=object))


@dataclass(frozen=True)
class DivisorClass:
    """Divisor class coeff_h * h + sum(coeff_e[i] * e_{i+1})"""

    coeff_h: int = 0
    coeff_e: Tuple[int, ...] = (0,) * 9

    def __post_init__(self):
        coeff_e = tuple(int(c) for c in self.coeff_e)
        if len(coeff_e) != 9:
            raise ValueError(f"Expected 9 exceptional coefficients, got {len(coeff_e)}")
        object.__setattr__(self, "coeff_h", int(self.coeff_h))
        object.__setattr__(self, "coeff_e", coeff_e)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.coeff_h + other.coeff_h,
                            tuple(a + b for a, b in zip(self.coeff_e, other.coeff_e)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.coeff_h, tuple(-c for c in self.coeff_e))

    def __mul__(self, k: int) -> "DivisorClass":
        return DivisorClass(k * self.coeff_h, tuple(k * c for c in self.coeff_e))

    __rmul__ = __mul__

    def to_vector(self) -> Tuple[int, ...]:
        return (self.coeff_h,) + self.coeff_e

    @staticmethod
    def from_vector(vector: Sequence[int]) -> "DivisorClass":
        values = [int(v) for v in vector]
        if len(values) != RANK:
            raise ValueError(f"Expected {RANK} coordinates, got {len(values)}")
        return DivisorClass(values[0], tuple(values[1:]))

    def is_zero(self) -> bool:
        return self.coeff_h == 0 and not any(self.coeff_e)

    def __str__(self) -> str:
        terms = []
        if self.coeff_h:
            terms.append(f"{self.coeff_h}h")
        for i, c in enumerate(self.coeff_e, start=1):
            if c:
                terms.append(f"{c:+d}e{i}" if terms else f"{c}e{i}")
        return " ".join(terms) if terms else "0"


def h_class() -> DivisorClass:
    return DivisorClass(1, (0,) * 9)


def e(i: int) -> DivisorClass:
    """Exceptional class e_i, 1 <= i <= 9"""
    if not 1 <= i <= 9:
        raise ValueError(f"Exceptional index out of range: {i}")
    coeffs = [0] * 9
    coeffs[i - 1] = 1
    return DivisorClass(0, tuple(coeffs))


def zero_class() -> DivisorClass:
    return DivisorClass()


def pair(x: DivisorClass, y: DivisorClass) -> int:
    """Intersection number x . y"""
    return x.coeff_h * y.coeff_h - sum(a * b for a, b in zip(x.coeff_e, y.coeff_e))


def pair_vectors(x: Sequence, y: Sequence):
    """Intersection pairing on raw coordinate vectors (integers or rationals)"""
    return x[0] * y[0] - sum(a * b for a, b in zip(x[1:], y[1:]))


def fiber_class() -> DivisorClass:
    """f = -K_S = 3h - sum(e_i)"""
    return DivisorClass(3, (-1,) * 9)


def canonical_class() -> DivisorClass:
    return -fiber_class()


def is_section_class(x: DivisorClass) -> bool:
    """A section satisfies x^2 = -1 and x.f = 1"""
    return pair(x, x) == -1 and pair(x, fiber_class()) == 1


def is_exceptional_class(x: DivisorClass) -> bool:
    """Numerical exceptional class: x^2 = -1 and x.K = -1"""
    return pair(x, x) == -1 and pair(x, canonical_class()) == -1


def basis() -> Tuple[DivisorClass, ...]:
    return (h_class(),) + tuple(e(i) for i in range(1, 10))


def to_manin_basis(x: DivisorClass) -> Tuple[int, ...]:
    """Coordinates [b, a1, ..., a9] in the basis (h, -e1, ..., -e9)"""
    return (x.coeff_h,) + tuple(-c for c in x.coeff_e)


def from_manin_basis(coords: Iterable[int]) -> DivisorClass:
    values = [int(v) for v in coords]
    if len(values) != RANK:
        raise ValueError(f"Expected {RANK} coordinates, got {len(values)}")
    return DivisorClass(values[0], tuple(-v for v in values[1:]))
