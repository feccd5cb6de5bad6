"""
Root basis B of f-perp, fundamental reflections, Weyl words and the
Bourbaki chamber reduction.

Root indices: 0 -> h - e1 - e2 - e3, i -> e_i - e_{i+1} for i = 1..8.
Word letters are applied right-to-left, so the matrix of [a, b] is M(a) M(b).
"""
import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import sympy

import config
from errors import InvalidRootError, NotReducedError
from lattice_core import GRAM, RANK, DivisorClass, basis, e, h_class, pair

logger = logging.getLogger(__name__)

ALL_INDICES = tuple(range(9))
# Removing the simple root e8 - e9 leaves the E8 sub-root system
E8_INDICES = tuple(range(8))
E8_REDUCTION_CAP = 1_000_000


class ChamberPosition(str, Enum):
    INTERIOR = "INTERIOR"
    BOUNDARY = "BOUNDARY"
    OUTSIDE = "OUTSIDE"


@dataclass(frozen=True)
class Root:
    index: int
    cls: DivisorClass


class LatticeMap:
    """Integer 10x10 matrix acting on (h, e1, ..., e9) coordinates; columns are images of the basis"""

    def __init__(self, matrix):
        array = np.array(matrix, dtype=object)
        if array.shape != (RANK, RANK):
            raise ValueError(f"LatticeMap needs a {RANK}x{RANK} matrix, got {array.shape}")
        for value in array.flat:
            if not isinstance(value, int) or isinstance(value, bool):
                raise TypeError(f"LatticeMap entries must be Python ints, got {value!r}")
        self.matrix = array

    @staticmethod
    def identity() -> "LatticeMap":
        return LatticeMap([[int(i == j) for j in range(RANK)] for i in range(RANK)])

    @staticmethod
    def from_images(images: Sequence[DivisorClass]) -> "LatticeMap":
        """Build the map sending the i-th basis vector to images[i]"""
        columns = [img.to_vector() for img in images]
        return LatticeMap([[columns[j][i] for j in range(RANK)] for i in range(RANK)])

    def apply(self, x: DivisorClass) -> DivisorClass:
        vector = np.array(x.to_vector(), dtype=object)
        return DivisorClass.from_vector(self.matrix.dot(vector).tolist())

    def compose(self, other: "LatticeMap") -> "LatticeMap":
        """self after other"""
        return LatticeMap(self.matrix.dot(other.matrix).tolist())

    __matmul__ = compose

    def inverse(self) -> "LatticeMap":
        if self.is_isometry():
            # M^-1 = G M^T G for an isometry of a form with G^2 = I
            return LatticeMap(GRAM.dot(self.matrix.T).dot(GRAM).tolist())
        inv = sympy.Matrix(self.matrix.tolist()).inv()
        if any(not value.is_integer for value in inv):
            raise ValueError("LatticeMap is not invertible over the integers")
        return LatticeMap([[int(inv[i, j]) for j in range(RANK)] for i in range(RANK)])

    def is_isometry(self) -> bool:
        return np.array_equal(self.matrix.T.dot(GRAM).dot(self.matrix), GRAM)

    def fixes(self, x: DivisorClass) -> bool:
        return self.apply(x) == x

    def is_identity(self) -> bool:
        return self == LatticeMap.identity()

    def to_rows(self) -> List[List[int]]:
        return [[int(v) for v in row] for row in self.matrix.tolist()]

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticeMap) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash(tuple(self.matrix.flat))

    def __repr__(self) -> str:
        return f"LatticeMap({self.to_rows()})"


def simple_roots() -> List[Root]:
    """The basis B in fixed order"""
    roots = [Root(0, h_class() - e(1) - e(2) - e(3))]
    roots.extend(Root(i, e(i) - e(i + 1)) for i in range(1, 9))
    return roots


_ROOT_CLASSES = tuple(r.cls for r in simple_roots())


def root_class(index: int) -> DivisorClass:
    if not 0 <= index <= 8:
        raise InvalidRootError(f"Root index out of range: {index}")
    return _ROOT_CLASSES[index]


def reflect(x: DivisorClass, alpha) -> DivisorClass:
    """s_alpha(x) = x + (x . alpha) alpha"""
    alpha_cls = alpha.cls if isinstance(alpha, Root) else alpha
    if pair(alpha_cls, alpha_cls) != -2:
        raise InvalidRootError(f"Reflection needs a class of square -2, got {alpha_cls}")
    return x + pair(x, alpha_cls) * alpha_cls


def reflection_matrix(alpha) -> LatticeMap:
    alpha_cls = alpha.cls if isinstance(alpha, Root) else alpha
    return LatticeMap.from_images([reflect(b, alpha_cls) for b in basis()])


_LETTER_MATRICES = tuple(reflection_matrix(cls) for cls in _ROOT_CLASSES)


@dataclass(frozen=True)
class WeylWord:
    """Product of fundamental reflections, letters applied right-to-left"""

    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        letters = tuple(int(letter) for letter in self.letters)
        for letter in letters:
            if not 0 <= letter <= 8:
                raise InvalidRootError(f"Word letter out of range: {letter}")
        object.__setattr__(self, "letters", letters)

    @cached_property
    def matrix(self) -> LatticeMap:
        return reduce(lambda acc, letter: acc.compose(_LETTER_MATRICES[letter]),
                      self.letters, LatticeMap.identity())

    def __len__(self) -> int:
        return len(self.letters)


def apply_word(w: WeylWord, x: DivisorClass) -> DivisorClass:
    for letter in reversed(w.letters):
        x = reflect(x, _ROOT_CLASSES[letter])
    return x


def word_inverse(w: WeylWord) -> WeylWord:
    return WeylWord(tuple(reversed(w.letters)))


def compose_words(first: WeylWord, second: WeylWord) -> WeylWord:
    """Word for first after second"""
    return WeylWord(first.letters + second.letters)


def word_is_identity(w: WeylWord) -> bool:
    return w.matrix.is_identity()


def chamber_pairings(x: DivisorClass, indices: Iterable[int] = ALL_INDICES) -> List[int]:
    return [pair(x, _ROOT_CLASSES[i]) for i in indices]


def chamber_position(x: DivisorClass) -> ChamberPosition:
    values = chamber_pairings(x)
    if all(v > 0 for v in values):
        return ChamberPosition.INTERIOR
    if all(v >= 0 for v in values):
        return ChamberPosition.BOUNDARY
    return ChamberPosition.OUTSIDE


def bourbaki_reduce(x: DivisorClass, roots: Optional[Sequence[int]] = None,
                    max_steps: Optional[int] = None) -> Tuple[WeylWord, DivisorClass]:
    """
    Reflect x in walls it lies on the wrong side of until it pairs >= 0 with every root in `roots`.
    Always reflects in the lowest-index root with negative pairing.
    Returns (w, y) with y = w(x).
    """
    indices = sorted(set(ALL_INDICES if roots is None else roots))
    cap = config.get_max_steps() if max_steps is None else max_steps
    if cap < 1:
        raise ValueError(f"max_steps must be >= 1, got {cap}")

    applied: List[int] = []
    y = x
    while True:
        negative = next((i for i in indices if pair(y, _ROOT_CLASSES[i]) < 0), None)
        if negative is None:
            break
        if len(applied) >= cap:
            logger.warning(f"Reduction of {x} not finished after {cap} steps")
            raise NotReducedError(f"Reduction of {x} did not reach the chamber within {cap} steps")
        y = reflect(y, _ROOT_CLASSES[negative])
        applied.append(negative)

    logger.debug(f"Reduced {x} -> {y} in {len(applied)} steps")
    return WeylWord(tuple(reversed(applied))), y


def in_fundamental_domain_D(x: DivisorClass) -> bool:
    """Membership in the union of the W(E8)-translates of the closed chamber"""
    _, y = bourbaki_reduce(x, E8_INDICES, max_steps=E8_REDUCTION_CAP)
    return chamber_position(y) != ChamberPosition.OUTSIDE


def in_domain_interior(x: DivisorClass) -> bool:
    """True when x lies strictly inside some W(E8)-translate of the chamber"""
    _, y = bourbaki_reduce(x, E8_INDICES, max_steps=E8_REDUCTION_CAP)
    return chamber_position(y) == ChamberPosition.INTERIOR


def permutation_word(perm: Sequence[int], notation: str = "one-line") -> WeylWord:
    """
    Word for the permutation e_i -> e_{pi(i)}.
    one-line: perm[i-1] = pi(i); cycle: perm is the cycle (p1 p2 ... pk).
    """
    mapping = _permutation_mapping(perm, notation)
    line = [mapping[i] for i in range(1, 10)]

    # Peel off descents: pi = pi' s_i with pi' having one inversion fewer
    peeled: List[int] = []
    while True:
        descent = next((i for i in range(8) if line[i] > line[i + 1]), None)
        if descent is None:
            break
        line[descent], line[descent + 1] = line[descent + 1], line[descent]
        peeled.append(descent + 1)
    return WeylWord(tuple(reversed(peeled)))


def _permutation_mapping(perm: Sequence[int], notation: str) -> Dict[int, int]:
    values = [int(p) for p in perm]
    if notation == "one-line":
        if sorted(values) != list(range(1, 10)):
            raise ValueError(f"One-line permutation must use 1..9 exactly once: {values}")
        return {i: values[i - 1] for i in range(1, 10)}
    if notation == "cycle":
        if len(set(values)) != len(values) or any(not 1 <= v <= 9 for v in values):
            raise ValueError(f"Cycle must list distinct indices in 1..9: {values}")
        mapping = {i: i for i in range(1, 10)}
        for k, value in enumerate(values):
            mapping[value] = values[(k + 1) % len(values)]
        return mapping
    raise ValueError(f"Unknown permutation notation: {notation}")


def permutation_map(perm: Sequence[int], notation: str = "one-line") -> LatticeMap:
    """Direct matrix of e_i -> e_{pi(i)}, fixing h"""
    mapping = _permutation_mapping(perm, notation)
    return LatticeMap.from_images([h_class()] + [e(mapping[i]) for i in range(1, 10)])


def fundamental_weights() -> List[Tuple[Fraction, ...]]:
    """omega_k with omega_k . alpha_j = delta_jk and omega_k . e9 = 0"""
    # Covector of pairing with v is G v; G is diagonal
    rows = [[GRAM[i, i] * c for i, c in enumerate(cls.to_vector())]
            for cls in _ROOT_CLASSES + (e(9),)]
    system = sympy.Matrix(rows)
    inverse = system.inv()
    weights = []
    for k in range(9):
        column = inverse[:, k]
        weights.append(tuple(Fraction(int(v.p), int(v.q)) for v in column))
    return weights


def probe_point(weights: Optional[Sequence[int]] = None) -> DivisorClass:
    """Primitive integer multiple of sum(weights[k] * omega_k); strictly inside the chamber"""
    weights = config.get_probe_weights() if weights is None else list(weights)
    if len(weights) != 9 or min(weights) <= 0:
        raise ValueError(f"Probe weights must be 9 positive integers: {weights}")
    omegas = fundamental_weights()
    point = [sum((Fraction(w) * omega[i] for w, omega in zip(weights, omegas)), Fraction(0))
             for i in range(RANK)]
    scale = reduce(lcm, (p.denominator for p in point), 1)
    integral = [int(p * scale) for p in point]
    divisor = reduce(gcd, integral, 0) or 1
    return DivisorClass.from_vector([v // divisor for v in integral])


def orbit_under_parabolic(x: DivisorClass, indices: Sequence[int],
                          cap: Optional[int] = None) -> List[DivisorClass]:
    """Orbit of x under the subgroup generated by the simple reflections in `indices`"""
    cap = config.get_orbit_cap() if cap is None else cap
    seen = {x}
    queue = deque([x])
    while queue:
        current = queue.popleft()
        for i in indices:
            image = reflect(current, _ROOT_CLASSES[i])
            if image not in seen:
                if len(seen) >= cap:
                    raise NotReducedError(f"Orbit of {x} exceeds {cap} elements")
                seen.add(image)
                queue.append(image)
    return sorted(seen, key=lambda cls: cls.to_vector())


def stabilizer_indices(x: DivisorClass) -> List[int]:
    """Simple roots orthogonal to x; for x in the closed chamber they generate its stabilizer"""
    return [i for i in ALL_INDICES if pair(x, _ROOT_CLASSES[i]) == 0]
