"""
Exact rational cone engine and the surface-level nef machinery.

Vectors are tuples of Fractions. Facets are covectors u read against the plain
dot product (u . x >= 0); dual cones are taken with respect to a Gram matrix
(the identity by default, the intersection form for Pic(S)).
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import floor, gcd, isqrt, lcm
from typing import List, Optional, Sequence, Tuple

import numpy as np
import ppl
import sympy

from errors import DegenerateConeError, FiberDegenerateError, InternalConsistencyError
from lattice_core import GRAM, RANK, DivisorClass, e, fiber_class, pair
from mordell_weil import (SectionCoords, THIRD, class_to_coords, coords_of_e, format_coords, manin_aux,
                          mw_add, mw_negate, translation_map)
from weyl import (E8_INDICES, E8_REDUCTION_CAP, WeylWord, bourbaki_reduce, orbit_under_parabolic,
                  simple_roots, stabilizer_indices, word_inverse)

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]


# ===== ROOT DECOMPOSITION OF SECTIONS =====

def lemma24_coefficients(t: SectionCoords) -> Vector:
    """Coefficients of sigma - e1 on (h-e1-e2-e3, e1-e2, ..., e8-e9), sigma = manin_class(t)"""
    aux = manin_aux(t)
    d, s = aux.d, aux.s
    a2, a3, a4, a5, a6, a7, a8, a9 = t.a
    return (
        3 * d,
        2 * d + s,
        4 * d + s - a2,
        6 * d + s - a2 - a3,
        5 * d + s - a2 - a3 - a4,
        4 * d + a6 + a7 + a8 + a9,
        3 * d + a7 + a8 + a9,
        2 * d + a8 + a9,
        d + a9,
    )


def lemma24_reconstruction(t: SectionCoords) -> Vector:
    """sum(c_i B_i) as a rational coordinate vector"""
    total = [Fraction(0)] * RANK
    for c, root in zip(lemma24_coefficients(t), simple_roots()):
        for i, v in enumerate(root.cls.to_vector()):
            total[i] += c * v
    return tuple(total)


def two_d_plus_s(t: SectionCoords) -> Fraction:
    """2d + s, checked against sum(a_i^2) + (sum(a_i) + 3/2)^2 - 9/4"""
    aux = manin_aux(t)
    value = 2 * aux.d + aux.s
    closed_form = (sum((v * v for v in t.a), Fraction(0))
                   + (aux.s + Fraction(3, 2)) ** 2 - Fraction(9, 4))
    if value != closed_form:
        logger.error(f"2d+s identity failed for {format_coords(t)}: {value} != {closed_form}")
        raise InternalConsistencyError(f"2d+s identity failed for {format_coords(t)}")
    return value


# ===== SECTION VALUE FORM =====

def _q0_matrix() -> Tuple[Tuple[Fraction, ...], ...]:
    """Q0(a) = sum(a_i^2) + sum_{j<k} a_j a_k as a symmetric matrix"""
    half = Fraction(1, 2)
    return tuple(tuple(Fraction(1) if i == j else half for j in range(8)) for i in range(8))


Q0 = _q0_matrix()


@dataclass(frozen=True)
class QuadraticModel:
    """x . manin_class(a) = a^T Q a + L . a + c"""

    Q: Tuple[Tuple[Fraction, ...], ...]
    L: Vector
    c: Fraction
    fiber_degree: int

    def evaluate(self, a: Sequence[Fraction]) -> Fraction:
        quadratic = sum((self.Q[i][j] * a[i] * a[j] for i in range(8) for j in range(8)), Fraction(0))
        linear = sum((l * v for l, v in zip(self.L, a)), Fraction(0))
        return quadratic + linear + self.c

    @staticmethod
    def coset_shift(coset: int) -> Vector:
        """Offset v with a = z + v, z integral, for points of the given coset"""
        return (-coset * THIRD,) * 8


def section_value_form(x: DivisorClass) -> QuadraticModel:
    degree = pair(x, fiber_class())
    x1 = x.coeff_e[0]
    Q = tuple(tuple(degree * v for v in row) for row in Q0)
    L = tuple(Fraction(degree - x1 + xi) for xi in x.coeff_e[1:])
    return QuadraticModel(Q=Q, L=L, c=Fraction(-x1), fiber_degree=degree)


# ===== MINIMIZATION OVER SECTIONS =====

@dataclass
class SectionMinimum:
    mu: Fraction
    minimizers: List[SectionCoords] = field(default_factory=list)


def _ldl(Q) -> Tuple[List[List[Fraction]], List[Fraction]]:
    """Q = L D L^T with L unit lower triangular (exact)"""
    L_sym, D_sym = sympy.Matrix(Q).LDLdecomposition()
    n = len(Q)
    L = [[_to_fraction(L_sym[i, j]) for j in range(n)] for i in range(n)]
    D = [_to_fraction(D_sym[i, i]) for i in range(n)]
    return L, D


def _to_fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _solve(Q, rhs) -> Vector:
    solution = sympy.Matrix(Q).LUsolve(sympy.Matrix(rhs))
    return tuple(_to_fraction(v) for v in solution)


def _integer_window(u: Fraction, rho: Fraction) -> range:
    """Integers k with (k - u)^2 <= rho"""
    if rho < 0:
        return range(0)
    start = floor(u)
    if (start - u) ** 2 > rho:
        start += 1
        if (start - u) ** 2 > rho:
            return range(0)
    lo = hi = start
    while (lo - 1 - u) ** 2 <= rho:
        lo -= 1
    while (hi + 1 - u) ** 2 <= rho:
        hi += 1
    return range(lo, hi + 1)


def _enumerate_ellipsoid(L, D, center: Vector, radius: Fraction):
    """Yield integer z with (z - center)^T Q (z - center) <= radius, Q = L D L^T"""
    n = len(D)
    z = [0] * n
    y = [Fraction(0)] * n

    def descend(i: int, used: Fraction):
        shift = sum((L[j][i] * y[j] for j in range(i + 1, n)), Fraction(0))
        for k in _integer_window(center[i] - shift, (radius - used) / D[i]):
            z[i] = k
            y[i] = k - center[i]
            partial = used + D[i] * (y[i] + shift) ** 2
            if i == 0:
                yield tuple(z)
            else:
                yield from descend(i - 1, partial)

    yield from descend(n - 1, Fraction(0))


def min_over_sections(x: DivisorClass) -> SectionMinimum:
    """Exact minimum of x . sigma over all sections, with every minimizer"""
    model = section_value_form(x)
    if model.fiber_degree <= 0:
        raise FiberDegenerateError(f"{x} has x.f = {model.fiber_degree} <= 0")

    L, D = _ldl(model.Q)
    # Continuous minimizer a* = -Q^-1 L / 2
    a_star = tuple(-v / 2 for v in _solve(model.Q, model.L))
    bound = model.evaluate((Fraction(0),) * 8)
    floor_value = model.evaluate(a_star)

    best: Optional[Fraction] = None
    minimizers: List[SectionCoords] = []
    visited = 0
    for coset in (0, 1, 2):
        shift = QuadraticModel.coset_shift(coset)
        center = tuple(s - v for s, v in zip(a_star, shift))
        for z in _enumerate_ellipsoid(L, D, center, bound - floor_value):
            visited += 1
            a = tuple(zi + vi for zi, vi in zip(z, shift))
            value = model.evaluate(a)
            if best is None or value < best:
                best, minimizers = value, []
            if value == best:
                minimizers.append(SectionCoords(a, coset))

    logger.debug(f"min_over_sections({x}): {visited} lattice points, mu={best}")
    minimizers.sort(key=lambda t: (t.coset, t.a))
    return SectionMinimum(mu=best, minimizers=minimizers)


def certified_radius(x: DivisorClass) -> int:
    """R such that every section with x . sigma <= x . e1 is a = z + shift with |z_i| <= R"""
    model = section_value_form(x)
    if model.fiber_degree <= 0:
        raise FiberDegenerateError(f"{x} has x.f = {model.fiber_degree} <= 0")
    a_star = tuple(-v / 2 for v in _solve(model.Q, model.L))
    slack = model.evaluate((Fraction(0),) * 8) - model.evaluate(a_star)
    inverse = sympy.Matrix(model.Q).inv()
    radius = 0
    for i in range(8):
        spread = _ceil_sqrt(slack * _to_fraction(inverse[i, i]))
        radius = max(radius, spread + abs(floor(a_star[i])) + 2)
    return radius


def _ceil_sqrt(q: Fraction) -> int:
    root = isqrt(q.numerator // q.denominator) if q > 0 else 0
    while root * root < q:
        root += 1
    return root


def brute_force_min(x: DivisorClass, radius: int,
                    cosets: Sequence[int] = (0, 1, 2)) -> SectionMinimum:
    """
    Reference minimum of x . sigma over sections with |a_i - shift| <= radius.
    With b = 3a every value is an integer multiple of 1/18:
    18 (x . sigma) = d ((sum b)^2 + sum b^2) + 6 L . b + 18 c.
    """
    model = section_value_form(x)
    L = np.array([int(v) for v in model.L], dtype=np.int64)
    window = np.arange(-radius, radius + 1, dtype=np.int64)
    tail = np.stack(np.meshgrid(*[window] * 7, indexing="ij"), axis=-1).reshape(-1, 7)

    best: Optional[int] = None
    hits: List[Tuple[int, np.ndarray]] = []
    for coset in cosets:
        for first in window:
            b = 3 * np.column_stack([np.full(len(tail), first), tail]) - coset
            total = b.sum(axis=1)
            values = (model.fiber_degree * (total * total + (b * b).sum(axis=1))
                      + 6 * (b @ L) + 18 * int(model.c))
            low = int(values.min())
            if best is None or low < best:
                best, hits = low, []
            if low == best:
                hits.extend((coset, row) for row in b[values == low])

    minimizers = [SectionCoords(tuple(Fraction(int(v), 3) for v in row), coset) for coset, row in hits]
    minimizers.sort(key=lambda t: (t.coset, t.a))
    return SectionMinimum(mu=Fraction(best, 18), minimizers=minimizers)


def fiber_multiple(x: DivisorClass) -> Optional[Fraction]:
    """lambda with x = lambda f, or None"""
    scale = Fraction(x.coeff_h, 3)
    if all(Fraction(c) == -scale for c in x.coeff_e):
        return scale
    return None


def surface_nef_test(x: DivisorClass) -> bool:
    degree = pair(x, fiber_class())
    if degree < 0:
        return False
    if degree == 0:
        # A linear functional bounded below on the section lattice is constant
        scale = fiber_multiple(x)
        return scale is not None and scale >= 0
    return min_over_sections(x).mu >= 0


# ===== RATIONAL CONES =====

def _integral(vector: Sequence) -> List[int]:
    values = [Fraction(v) for v in vector]
    scale = reduce(lcm, (v.denominator for v in values), 1)
    return [int(v * scale) for v in values]


def canonical_ray(vector: Sequence) -> Vector:
    """Positive multiple with coprime integer entries"""
    integral = _integral(vector)
    divisor = reduce(gcd, integral, 0)
    if divisor == 0:
        raise DegenerateConeError("Zero vector cannot span a ray")
    return tuple(Fraction(v // divisor) for v in integral)


def canonical_line(vector: Sequence) -> Vector:
    """Primitive integer vector with first nonzero coordinate positive"""
    ray = canonical_ray(vector)
    first = next(v for v in ray if v != 0)
    return ray if first > 0 else tuple(-v for v in ray)


def _nonzero(vector: Sequence) -> bool:
    return any(Fraction(v) != 0 for v in vector)


@dataclass(frozen=True)
class RationalCone:
    """
    Cone generated by rays and lines (both directions); facets are covectors u with u . x >= 0.
    RationalCone(dimension=d) with no generators is the zero cone {0}.
    """

    rays: Tuple[Vector, ...] = ()
    lines: Tuple[Vector, ...] = ()
    facets: Optional[Tuple[Vector, ...]] = None
    dimension: int = 0

    @staticmethod
    def from_generators(generators: Sequence[Sequence], dimension: Optional[int] = None) -> "RationalCone":
        rays = [canonical_ray(g) for g in generators if _nonzero(g)]
        if dimension is None:
            if not generators:
                raise DegenerateConeError("Cannot infer the dimension of a cone without generators")
            dimension = len(generators[0])
        return RationalCone(rays=tuple(sorted(set(rays))), dimension=dimension)

    def generators(self) -> List[Vector]:
        return list(self.rays) + list(self.lines) + [tuple(-v for v in line) for line in self.lines]


def _dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


# ----- ppl conversion -----

def _linear_form(vector: Sequence, variables: List["ppl.Variable"]):
    return sum(c * v for c, v in zip(_integral(vector), variables))


def _from_generators(rays: Sequence[Sequence], lines: Sequence[Sequence], dimension: int) -> ppl.C_Polyhedron:
    variables = [ppl.Variable(i) for i in range(dimension)]
    polyhedron = ppl.C_Polyhedron(dimension, "empty")
    polyhedron.add_generator(ppl.point())
    for r in rays:
        if _nonzero(r):
            polyhedron.add_generator(ppl.ray(_linear_form(r, variables)))
    for l in lines:
        if _nonzero(l):
            polyhedron.add_generator(ppl.line(_linear_form(l, variables)))
    return polyhedron


def _from_covectors(inequalities: Sequence[Sequence], equalities: Sequence[Sequence],
                    dimension: int) -> ppl.C_Polyhedron:
    variables = [ppl.Variable(i) for i in range(dimension)]
    polyhedron = ppl.C_Polyhedron(dimension, "universe")
    for u in inequalities:
        if _nonzero(u):
            polyhedron.add_constraint(_linear_form(u, variables) >= 0)
    for u in equalities:
        if _nonzero(u):
            polyhedron.add_constraint(_linear_form(u, variables) == 0)
    return polyhedron


def _padded(coefficients, dimension: int) -> Vector:
    values = [Fraction(int(c)) for c in coefficients]
    return tuple(values + [Fraction(0)] * (dimension - len(values)))


def _canonical_form(rays: List[Vector], lines: List[Vector]) -> Tuple[List[Vector], List[Vector]]:
    """Echelon basis for the lines; rays projected orthogonally off their span"""
    if not lines:
        return sorted({canonical_ray(r) for r in rays}), []
    echelon, _ = sympy.Matrix(lines).rref()
    basis = sorted(canonical_line([_to_fraction(v) for v in echelon.row(i)])
                   for i in range(echelon.rows) if any(echelon.row(i)))
    L = sympy.Matrix(basis)
    projection = L.T * (L * L.T).inv() * L
    projected = []
    for r in rays:
        column = sympy.Matrix(r) - projection * sympy.Matrix(r)
        projected.append(canonical_ray([_to_fraction(v) for v in column]))
    return sorted(set(projected)), basis


def _read_generators(polyhedron: ppl.C_Polyhedron, dimension: int) -> Tuple[List[Vector], List[Vector]]:
    rays, lines = [], []
    for generator in polyhedron.minimized_generators():
        if generator.is_ray():
            rays.append(_padded(generator.coefficients(), dimension))
        elif generator.is_line():
            lines.append(_padded(generator.coefficients(), dimension))
    return _canonical_form(rays, lines)


def _read_constraints(polyhedron: ppl.C_Polyhedron, dimension: int) -> Tuple[List[Vector], List[Vector]]:
    inequalities, equalities = [], []
    for constraint in polyhedron.minimized_constraints():
        u = _padded(constraint.coefficients(), dimension)
        if not any(u):
            continue
        if constraint.inhomogeneous_term() != 0:
            logger.error(f"Cone constraint {u} has inhomogeneous term {constraint.inhomogeneous_term()}")
            raise InternalConsistencyError("Cone description is not homogeneous")
        (equalities if constraint.is_equality() else inequalities).append(u)
    return _canonical_form(inequalities, equalities)


def _facet_tuple(inequalities: List[Vector], equalities: List[Vector]) -> Tuple[Vector, ...]:
    return tuple(inequalities + equalities + [tuple(-v for v in u) for u in equalities])


def extreme_rays(inequalities: Sequence[Sequence], dimension: int) -> Tuple[List[Vector], List[Vector]]:
    """
    Rays and lines of {y : u . y >= 0 for every u}.
    Lines span the lineality space; rays are extreme rays of the pointed part orthogonal to it.
    """
    return _read_generators(_from_covectors(inequalities, (), dimension), dimension)


def _covectors(generators: Sequence[Vector], gram) -> List[Vector]:
    if gram is None:
        return [tuple(g) for g in generators]
    G = [[Fraction(v) for v in row] for row in np.array(gram, dtype=object).tolist()]
    return [tuple(_dot(row, g) for row in G) for g in generators]


def dual_cone(c: RationalCone, gram=None) -> RationalCone:
    """
    {y : g^T G y >= 0 for every generator g}, G = gram (identity when None).
    The dual of {0} is the whole space and the dual of the whole space is {0}.
    """
    polyhedron = _from_covectors(_covectors(c.rays, gram), _covectors(c.lines, gram), c.dimension)
    rays, lines = _read_generators(polyhedron, c.dimension)
    facets = _facet_tuple(*_read_constraints(polyhedron, c.dimension))
    logger.debug(f"Dual cone: {len(rays)} rays, {len(lines)} lines, {len(facets)} facets")
    return RationalCone(rays=tuple(rays), lines=tuple(lines), facets=facets, dimension=c.dimension)


def facet_covectors(c: RationalCone) -> List[Vector]:
    """Minimized covectors u (dot product) cutting out c; equalities appear with both signs"""
    return list(_facet_tuple(*_read_constraints(_from_generators(c.rays, c.lines, c.dimension), c.dimension)))


# ===== MEMBERSHIP =====

@dataclass
class Membership:
    member: bool
    coefficients: Optional[Vector] = None
    separator: Optional[Vector] = None


def _phase_one(columns: List[Vector], target: Vector) -> Optional[Vector]:
    """Nonnegative lambda with sum(lambda_i columns_i) = target, or None (Bland's rule simplex)"""
    m, n = len(target), len(columns)
    # Flip rows so the right-hand side is nonnegative
    signs = [(-1 if t < 0 else 1) for t in target]
    tableau = np.empty((m, n + m + 1), dtype=object)
    for i in range(m):
        for j in range(n):
            tableau[i, j] = signs[i] * Fraction(columns[j][i])
        for j in range(m):
            tableau[i, n + j] = Fraction(int(i == j))
        tableau[i, n + m] = signs[i] * Fraction(target[i])
    basis = [n + i for i in range(m)]
    cost = np.array([Fraction(0)] * n + [Fraction(1)] * m + [Fraction(0)], dtype=object)
    for i in range(m):
        cost = cost - tableau[i]

    while True:
        entering = next((j for j in range(n + m) if cost[j] < 0), None)
        if entering is None:
            break
        candidates = [(tableau[i, -1] / tableau[i, entering], basis[i], i)
                      for i in range(m) if tableau[i, entering] > 0]
        _, _, leave = min(candidates)
        tableau[leave] = tableau[leave] / tableau[leave, entering]
        for i in range(m):
            if i != leave and tableau[i, entering] != 0:
                tableau[i] = tableau[i] - tableau[i, entering] * tableau[leave]
        cost = cost - cost[entering] * tableau[leave]
        basis[leave] = entering

    if -cost[-1] != 0:
        return None
    solution = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            solution[var] = tableau[i, -1]
    return tuple(solution)


def cone_member(x: Sequence, c: RationalCone) -> Membership:
    """Membership with a nonnegative combination of c.generators() or a separating covector"""
    target = tuple(Fraction(v) for v in x)
    if len(target) != c.dimension:
        raise ValueError(f"Dimension mismatch: vector has {len(target)}, cone has {c.dimension}")
    generators = c.generators()
    coefficients = _phase_one(generators, target) if generators else None
    if coefficients is not None:
        combination = tuple(sum((l * g[i] for l, g in zip(coefficients, generators)), Fraction(0))
                            for i in range(c.dimension))
        if combination != target:
            logger.error(f"Simplex certificate for {target} does not reconstruct the vector")
            raise InternalConsistencyError("Membership certificate failed to verify")
        return Membership(True, coefficients=coefficients)

    if not any(target):
        return Membership(True, coefficients=tuple(Fraction(0) for _ in generators))
    if not generators:
        return Membership(False, separator=canonical_ray(tuple(-v for v in target)))

    for u in facet_covectors(c):
        if _dot(u, target) < 0:
            return Membership(False, separator=u)
    logger.error(f"No separating covector found for {target}")
    raise InternalConsistencyError("Infeasible membership without a Farkas certificate")


# ===== NEF CONE INSIDE THE CHAMBER =====

def cone_of_roots_and_exceptionals() -> RationalCone:
    """cone(B u {e1, ..., e9}) in Pic(S) coordinates"""
    generators = [r.cls.to_vector() for r in simple_roots()] + [e(i).to_vector() for i in range(1, 10)]
    return RationalCone.from_generators(generators, RANK)


def nef_chamber_polytope() -> RationalCone:
    """{x : x . alpha >= 0 for alpha in B} intersected with the dual of cone(B u {e_i})"""
    polytope = dual_cone(cone_of_roots_and_exceptionals(), GRAM)
    if polytope.lines:
        logger.error(f"Nef chamber polytope unexpectedly contains lines: {polytope.lines}")
        raise InternalConsistencyError("Nef chamber polytope is not pointed")
    logger.info(f"Nef chamber polytope: {len(polytope.rays)} rays, {len(polytope.facets)} facets")
    return polytope


def ray_class(ray: Sequence[Fraction]) -> DivisorClass:
    return DivisorClass.from_vector([int(v) for v in canonical_ray(ray)])


# ===== NEF CONE INSIDE THE TRANSLATION DOMAIN =====

def sections_off_e9() -> List[DivisorClass]:
    """W(E8)-orbit of e1: the 240 sections disjoint from e9"""
    return orbit_under_parabolic(e(1), E8_INDICES)


def translation_domain_covectors() -> List[Vector]:
    """Covectors of the closed translation domain: x . (E - e9) >= 0 for every section E disjoint from e9"""
    walls = [(E - e(9)).to_vector() for E in sections_off_e9()]
    return _covectors(walls, GRAM)


@lru_cache(maxsize=None)
def nef_domain_polytope() -> RationalCone:
    """
    Nef cone cut with the closed translation domain: the convex hull of the
    W(E8)-images of the chamber polytope. Besides the domain walls only
    x . e9 >= 0 is needed, since every W(E8)-image of e1, ..., e8 lies off e9.
    """
    inequalities = _covectors([e(9).to_vector()], GRAM) + translation_domain_covectors()
    polyhedron = _from_covectors(inequalities, (), RANK)
    rays, lines = _read_generators(polyhedron, RANK)
    if lines:
        logger.error(f"Nef domain polytope unexpectedly contains lines: {lines}")
        raise InternalConsistencyError("Nef domain polytope is not pointed")
    facets = _facet_tuple(*_read_constraints(polyhedron, RANK))
    logger.info(f"Nef domain polytope: {len(rays)} rays, {len(facets)} facets")
    return RationalCone(rays=tuple(rays), facets=facets, dimension=RANK)


# ===== FUNDAMENTAL DOMAIN FOR TRANSLATIONS =====

@dataclass
class DomainReduction:
    t: SectionCoords
    w_prime: WeylWord
    y: DivisorClass
    chamber_point: DivisorClass


def reduce_mod_translations(x: DivisorClass, max_steps: Optional[int] = None) -> DomainReduction:
    """
    Move x into the fundamental domain for the translation group.

    Reduce x to the chamber point r = w(x) and put u = w^-1. Each orbit point
    of x inside the domain is T(x) where T moves u(s(e9)) back to e9 for some s
    in the stabilizer of r; the lexicographically smallest such point is returned.
    """
    w, r = bourbaki_reduce(x, max_steps=max_steps)
    u = word_inverse(w).matrix

    fixed = stabilizer_indices(r)
    if len(fixed) == len(simple_roots()):
        # r is a multiple of f, which every translation fixes
        return DomainReduction(SectionCoords(), WeylWord(), x, r)

    best: Optional[Tuple[Tuple[int, ...], SectionCoords, DivisorClass]] = None
    for moved in orbit_under_parabolic(e(9), fixed):
        sigma = u.apply(moved)
        t = mw_add(coords_of_e(9), mw_negate(class_to_coords(sigma)))
        translation = translation_map(t)
        if translation.apply(sigma) != e(9):
            logger.error(f"Translation {format_coords(t)} does not move {sigma} to e9")
            raise InternalConsistencyError("Translation bookkeeping failed")
        y = translation.apply(x)
        key = y.to_vector()
        if best is None or key < best[0]:
            best = (key, t, y)

    _, t, y = best
    w_prime, z = bourbaki_reduce(y, E8_INDICES, max_steps=E8_REDUCTION_CAP)
    if z != r:
        logger.error(f"Domain point {y} reduces to {z}, expected chamber point {r}")
        raise InternalConsistencyError("Reduced point left the Weyl orbit of its chamber point")
    logger.info(f"Reduced {x} to {y} via translation {format_coords(t)}")
    return DomainReduction(t, w_prime, y, r)
