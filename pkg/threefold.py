"""
Divisor classes on the fiber product X = S1 x_P1 S2.

A class is a pair (A1, A2) modulo (A1, A2) ~ (A1 + m f1, A2 - m f2). The
canonical gauge has zero e9 coefficient on the second factor, which gives
the 19 coordinates (A1 | h, e1..e8 of A2).
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from cones import (RationalCone, canonical_ray, fiber_multiple, min_over_sections, nef_chamber_polytope,
                   nef_domain_polytope, ray_class, reduce_mod_translations, sections_off_e9, surface_nef_test)
from errors import InputValidationError
from lattice_core import GRAM, RANK, DivisorClass, e, fiber_class, pair, zero_class
from mordell_weil import SectionCoords, class_to_coords, format_coords, manin_class, translation_map
from weyl import E8_INDICES, LatticeMap, in_fundamental_domain_D, orbit_under_parabolic

logger = logging.getLogger(__name__)

PICARD_RANK = 2 * RANK - 1


@dataclass(frozen=True, eq=False)
class ThreefoldClass:
    A1: DivisorClass
    A2: DivisorClass

    def canonical(self) -> "ThreefoldClass":
        return gauge_shift(self, -self.A2.coeff_e[8])

    def __eq__(self, other) -> bool:
        return isinstance(other, ThreefoldClass) and to_coordinates(self) == to_coordinates(other)

    def __hash__(self) -> int:
        return hash(to_coordinates(self))

    def __str__(self) -> str:
        return f"({self.A1}, {self.A2})"


@dataclass(frozen=True)
class ThreefoldMap:
    map1: LatticeMap
    map2: LatticeMap

    def __post_init__(self):
        f = fiber_class()
        if not (self.map1.fixes(f) and self.map2.fixes(f)):
            raise ValueError("Both factor maps must fix the fiber class")


def picard_rank() -> int:
    return PICARD_RANK


def gauge_shift(A: ThreefoldClass, m: int) -> ThreefoldClass:
    f = fiber_class()
    return ThreefoldClass(A.A1 + m * f, A.A2 - m * f)


def to_coordinates(A: ThreefoldClass) -> Tuple[int, ...]:
    m = -A.A2.coeff_e[8]
    f = fiber_class()
    first = A.A1 + m * f
    second = A.A2 - m * f
    return first.to_vector() + second.to_vector()[:RANK - 1]


def from_coordinates(vector) -> ThreefoldClass:
    values = [int(v) for v in vector]
    if len(values) != PICARD_RANK:
        raise InputValidationError("coordinates", f"expected {PICARD_RANK} integers, got {len(values)}")
    return ThreefoldClass(DivisorClass.from_vector(values[:RANK]),
                          DivisorClass.from_vector(values[RANK:] + [0]))


def apply_map(g: ThreefoldMap, A: ThreefoldClass) -> ThreefoldClass:
    return ThreefoldClass(g.map1.apply(A.A1), g.map2.apply(A.A2))


# ===== NEF TEST =====

def factor_bound(x: DivisorClass) -> Optional[Fraction]:
    """
    Largest b with x - b f nef against every section: the minimum of x . sigma
    when x.f > 0, lambda when x = lambda f, None when no gauge makes x nef.
    """
    degree = pair(x, fiber_class())
    if degree > 0:
        return min_over_sections(x).mu
    if degree == 0:
        return fiber_multiple(x)
    return None


@dataclass
class NefResult:
    nef: bool
    interval: Optional[Tuple[int, int]] = None
    witness: Optional[int] = None
    # Factors (1, 2) whose section minimum is attained by more than one section
    non_unique: List[int] = field(default_factory=list)


def nef_interval(A: ThreefoldClass) -> Optional[Tuple[int, int]]:
    """Integer m with A1 + m f1 and A2 - m f2 both nef, as [low, high], or None"""
    b1, b2 = factor_bound(A.A1), factor_bound(A.A2)
    if b1 is None or b2 is None or b1 + b2 < 0:
        return None
    # Bounds are integers: sections and fibers are integral classes
    return int(-b1), int(b2)


def threefold_nef_test(A: ThreefoldClass) -> NefResult:
    interval = nef_interval(A)
    if interval is None:
        logger.debug(f"{A} is not nef")
        return NefResult(nef=False)

    non_unique = []
    for side, x in ((1, A.A1), (2, A.A2)):
        if pair(x, fiber_class()) > 0 and len(min_over_sections(x).minimizers) > 1:
            non_unique.append(side)
    if non_unique:
        logger.info(f"Section minimum of {A} attained non-uniquely on factor(s) {non_unique}")
    return NefResult(nef=True, interval=interval, witness=interval[0], non_unique=non_unique)


# ===== AUTOMORPHISMS AND REDUCTION =====

def aut_element(t1: SectionCoords, t2: SectionCoords) -> ThreefoldMap:
    return ThreefoldMap(translation_map(t1), translation_map(t2))


@dataclass
class ThreefoldReduction:
    t1: SectionCoords
    t2: SectionCoords
    reduced: ThreefoldClass
    witness: Optional[int]


def threefold_reduce(A: ThreefoldClass, max_steps: Optional[int] = None) -> ThreefoldReduction:
    """
    Translate both factors into their fundamental domains. Nef classes are put
    in the gauge m = -mu(A1) first; this gauge is translation invariant, so the
    result is a canonical orbit representative.
    """
    interval = nef_interval(A)
    witness = interval[0] if interval is not None else None
    shifted = gauge_shift(A, witness or 0)

    first = reduce_mod_translations(shifted.A1, max_steps)
    second = reduce_mod_translations(shifted.A2, max_steps)
    reduced = ThreefoldClass(first.y, second.y)
    logger.info(f"Reduced {A} by ({format_coords(first.t)}, {format_coords(second.t)}) to {reduced}")
    return ThreefoldReduction(first.t, second.t, reduced, witness)


def in_threefold_domain(A: ThreefoldClass) -> bool:
    """Some gauge puts both factors in their fundamental domains"""
    interval = nef_interval(A)
    shifted = gauge_shift(A, interval[0] if interval is not None else 0)
    return in_fundamental_domain_D(shifted.A1) and in_fundamental_domain_D(shifted.A2)


# ===== THREEFOLD DOMAIN CONE =====

@dataclass(frozen=True)
class ThreefoldDomainCone:
    """Fundamental domain for the translations of X on its nef cone, as covectors over the 19 coordinates"""

    facets: Tuple[Tuple[Fraction, ...], ...]

    def contains(self, A: ThreefoldClass) -> bool:
        x = to_coordinates(A)
        return all(sum((u_k * x_k for u_k, x_k in zip(u, x)), Fraction(0)) >= 0 for u in self.facets)


def _coordinate_covector(U1: Sequence[Fraction], U2: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Covector over the 19 coordinates for A -> U1 . A1 + U2 . A2 (U1 . f must equal U2 . f)"""
    values = []
    for k in range(PICARD_RANK):
        B = from_coordinates([int(i == k) for i in range(PICARD_RANK)])
        values.append(sum((a * b for a, b in zip(U1, B.A1.to_vector())), Fraction(0))
                      + sum((a * b for a, b in zip(U2, B.A2.to_vector())), Fraction(0)))
    return tuple(values)


def threefold_domain_cone(polytope: Optional[RationalCone] = None) -> ThreefoldDomainCone:
    """
    Fiber product of two copies of the surface nef domain polytope. The gauge
    m is eliminated between facets that pair nontrivially with f: factor 1
    sees A1 + m f, factor 2 sees A2 - m f.
    """
    polytope = nef_domain_polytope() if polytope is None else polytope
    f = fiber_class().to_vector()
    zero = (Fraction(0),) * RANK
    pairs = []
    lower, upper = [], []
    for u in polytope.facets:
        s = sum((a * b for a, b in zip(u, f)), Fraction(0))
        if s == 0:
            pairs += [(u, zero), (zero, u)]
            continue
        (lower if s > 0 else upper).append((1, u, abs(s)))
        (upper if s > 0 else lower).append((2, u, abs(s)))

    for first_slot, u, s in lower:
        for second_slot, v, t in upper:
            slots = {1: [Fraction(0)] * RANK, 2: [Fraction(0)] * RANK}
            slots[first_slot] = [a + t * b for a, b in zip(slots[first_slot], u)]
            slots[second_slot] = [a + s * b for a, b in zip(slots[second_slot], v)]
            pairs.append((tuple(slots[1]), tuple(slots[2])))

    covectors = {canonical_ray(c) for c in (_coordinate_covector(U1, U2) for U1, U2 in pairs) if any(c)}
    logger.info(f"Threefold domain cone: {len(covectors)} facets from {len(polytope.facets)} surface facets")
    return ThreefoldDomainCone(tuple(sorted(covectors)))


# ===== EDGE ORBIT CENSUS =====

def orthogonal_sections(x: DivisorClass) -> List[DivisorClass]:
    """Sections sigma with x . sigma = 0, for x of positive fiber degree"""
    if pair(x, fiber_class()) <= 0:
        return []
    minimum = min_over_sections(x)
    return [manin_class(t) for t in minimum.minimizers] if minimum.mu == 0 else []


def is_surface_edge(x: DivisorClass) -> bool:
    """
    Extremal ray of the surface nef cone: a nonzero nef class that is
    isotropic, or whose orthogonal sections span a hyperplane.
    """
    if x == zero_class() or not surface_nef_test(x):
        return False
    if pair(x, x) == 0:
        return True
    sections = orthogonal_sections(x)
    return bool(sections) and sympy.Matrix([s.to_vector() for s in sections]).rank() == RANK - 1


def census_edges() -> List[DivisorClass]:
    """Rays of the chamber polytope that are edges of the surface nef cone"""
    return [x for x in (ray_class(r) for r in nef_chamber_polytope().rays) if is_surface_edge(x)]


def _coordinate_norm(sigma: DivisorClass) -> Fraction:
    return max(abs(v) for v in class_to_coords(sigma).a)


def data_norms(points: Sequence[DivisorClass]) -> List[Fraction]:
    """
    Largest section-coordinate norm among the sections orthogonal to each
    point that are e9 or disjoint from it; 0 when there are none.
    """
    sections = sections_off_e9() + [e(9)]
    norms = [_coordinate_norm(s) for s in sections]
    S = np.array([s.to_vector() for s in sections], dtype=np.int64)
    X = np.array([p.to_vector() for p in points], dtype=np.int64)
    orthogonal = (X @ np.array(GRAM, dtype=np.int64) @ S.T) == 0
    return [max((n for n, hit in zip(norms, row) if hit), default=Fraction(0)) for row in orthogonal]


@dataclass
class CensusEntry:
    representative: ThreefoldClass
    ray: Tuple[int, ...]
    factor: int
    hits: int = 0


def edge_orbit_census(bound: int, max_steps: Optional[int] = None) -> List[CensusEntry]:
    """
    Orbit representatives of the edges (r, 0) and (0, r) of the threefold nef cone.

    Every edge of the surface nef cone has a translate in the closed domain,
    where it is a W(E8)-image of a chamber edge. An image is admitted when
    its sections counted by `data_norms` have coordinates at most `bound`.
    Admitted images are reduced modulo translations, then as threefold classes.
    """
    if bound < 0:
        raise ValueError(f"bound must be >= 0, got {bound}")

    surface: Dict[Tuple[int, ...], List] = {}
    for edge in census_edges():
        orbit = orbit_under_parabolic(edge, E8_INDICES)
        admitted = [point for point, norm in zip(orbit, data_norms(orbit)) if norm <= bound]
        for point in admitted:
            y = reduce_mod_translations(point, max_steps).y
            entry = surface.setdefault(y.to_vector(), [y, edge, 0])
            entry[2] += 1
        logger.debug(f"Census edge {edge}: {len(admitted)} of {len(orbit)} images admitted")

    zero = zero_class()
    found: Dict[Tuple[int, ...], CensusEntry] = {}
    for key in sorted(surface):
        y, edge, hits = surface[key]
        for factor, candidate in ((1, ThreefoldClass(y, zero)), (2, ThreefoldClass(zero, y))):
            reduced = threefold_reduce(candidate, max_steps).reduced
            coordinates = to_coordinates(reduced)
            if coordinates not in found:
                found[coordinates] = CensusEntry(reduced.canonical(), edge.to_vector(), factor)
            found[coordinates].hits += hits

    logger.info(f"Census at bound {bound}: {len(found)} representatives from {len(surface)} surface edges")
    return [found[key] for key in sorted(found)]
