from fractions import Fraction
from itertools import product

import pytest

from conftest import random_translation
from cones import (QuadraticModel, RationalCone, brute_force_min, canonical_line, canonical_ray,
                   certified_radius, cone_member, cone_of_roots_and_exceptionals, dual_cone, extreme_rays,
                   facet_covectors, fiber_multiple, lemma24_coefficients, lemma24_reconstruction,
                   min_over_sections, nef_chamber_polytope, nef_domain_polytope, ray_class,
                   reduce_mod_translations, section_value_form, sections_off_e9, surface_nef_test,
                   two_d_plus_s)
from errors import DegenerateConeError, FiberDegenerateError
from lattice_core import GRAM, DivisorClass, e, fiber_class, h_class, pair
from mordell_weil import SectionCoords, coords_of_e, manin_class, mw_negate, translation_map, zero_coords
from weyl import (E8_INDICES, ChamberPosition, bourbaki_reduce, chamber_position, in_domain_interior,
                  in_fundamental_domain_D, root_class, simple_roots)


def vec(*values):
    return tuple(Fraction(v) for v in values)


def sigma_minus_e1(t: SectionCoords):
    return tuple(a - b for a, b in zip(manin_class(t).to_vector(), e(1).to_vector()))


# ===== ROOT DECOMPOSITION =====

def test_root_coefficients_known_values():
    assert lemma24_coefficients(zero_coords()) == (0,) * 9
    assert lemma24_coefficients(SectionCoords((1,) + (0,) * 7, 0)) == (6, 5, 8, 12, 10, 8, 6, 4, 2)
    exception = lemma24_coefficients(coords_of_e(2))
    assert exception[1] == -1
    assert min(exception) == -1


def test_root_coefficients_reconstructs_sections(rng):
    for _ in range(300):
        t = random_translation(rng, 4)
        assert lemma24_reconstruction(t) == sigma_minus_e1(t)
        assert two_d_plus_s(t) == lemma24_coefficients(t)[1]


def test_root_coefficients_coefficients_nonnegative_away_from_exceptions(rng):
    exceptions = {coords_of_e(j) for j in range(2, 10)}
    for _ in range(300):
        t = random_translation(rng, 4)
        if t in exceptions:
            continue
        assert min(lemma24_coefficients(t)) >= 0


@pytest.mark.slow
def test_root_coefficients_small_grid():
    exceptions = {coords_of_e(j).a for j in range(2, 10)}
    for coset in (0, 1, 2):
        shift = QuadraticModel.coset_shift(coset)
        for z in product(range(-1, 2), repeat=8):
            t = SectionCoords(tuple(zi + vi for zi, vi in zip(z, shift)), coset)
            coefficients = lemma24_coefficients(t)
            assert lemma24_reconstruction(t) == sigma_minus_e1(t)
            assert two_d_plus_s(t) == coefficients[1]
            if coset == 0:
                assert t.a in exceptions or min(coefficients) >= 0


@pytest.mark.slow
def test_root_coefficients_wide_samples(rng):
    for _ in range(2000):
        t = random_translation(rng, 8)
        assert lemma24_reconstruction(t) == sigma_minus_e1(t)
        assert min(lemma24_coefficients(t)) >= 0 or t in {coords_of_e(j) for j in range(2, 10)}


def test_two_d_plus_s_identity_on_cosets():
    third = Fraction(1, 3)
    for coset, value in ((1, -third), (2, third)):
        t = SectionCoords((value,) * 8, coset)
        assert two_d_plus_s(t) == lemma24_coefficients(t)[1]
        assert lemma24_reconstruction(t) == sigma_minus_e1(t)


# ===== MINIMIZATION OVER SECTIONS =====

def test_section_value_form_matches_pairing(rng):
    x = DivisorClass(4, (1, -2, 0, -1, 0, 0, -1, 0, -1))
    model = section_value_form(x)
    for _ in range(30):
        t = random_translation(rng, 3)
        assert model.evaluate(t.a) == pair(x, manin_class(t))


def test_coset_shift():
    assert QuadraticModel.coset_shift(0) == (0,) * 8
    assert QuadraticModel.coset_shift(2) == (Fraction(-2, 3),) * 8


def test_min_over_sections_for_h(h):
    minimum = min_over_sections(h)
    assert minimum.mu == 0
    assert set(minimum.minimizers) == {coords_of_e(j) for j in range(1, 10)}


def test_min_over_sections_for_e1():
    minimum = min_over_sections(e(1))
    assert minimum.mu == -1
    assert minimum.minimizers == [zero_coords()]


def test_min_over_sections_for_h_plus_f(h):
    assert min_over_sections(h + fiber_class()).mu == 1


def test_min_over_sections_needs_positive_fiber_degree():
    with pytest.raises(FiberDegenerateError):
        min_over_sections(fiber_class())
    with pytest.raises(FiberDegenerateError):
        certified_radius(-h_class())


def test_mu_is_translation_invariant(rng, h):
    x = 2 * h - e(1)
    for _ in range(5):
        T = translation_map(random_translation(rng, 1))
        assert min_over_sections(T.apply(x)).mu == min_over_sections(x).mu


@pytest.mark.slow
def test_min_agrees_with_brute_force(rng, h):
    samples = [h, e(1), h + fiber_class(), 2 * h - e(1) - e(2), h + e(9) - e(8)]
    for x in samples:
        exact = min_over_sections(x)
        reference = brute_force_min(x, 1)
        assert exact.mu == reference.mu
        assert set(reference.minimizers) <= set(exact.minimizers)


def clustered_class(rng) -> DivisorClass:
    """
    Fiber degree d and e2..e9 coefficients equal up to one unit step, so the
    linear part of the section form sits near a constant in [-d, 0].
    """
    while True:
        d, c = rng.randint(4, 20), rng.randint(-4, 4)
        level = rng.randint(-d, 0)
        c1 = d - level + c
        if (d - c1 - 8 * c) % 3 == 0:
            break
    rest = [c] * 8
    if rng.random() < 0.5:
        rest[rng.randrange(8)] += rng.choice((-1, 1))
    return DivisorClass((d - c1 - 8 * c) // 3, (c1, *rest))


@pytest.mark.slow
def test_min_matches_brute_force_within_certified_radius(rng):
    checked = 0
    for _ in range(2000):
        x = clustered_class(rng)
        radius = certified_radius(x)
        if radius > 3:
            continue
        exact = min_over_sections(x)
        reference = brute_force_min(x, radius)
        assert exact.mu == reference.mu
        assert set(exact.minimizers) == set(reference.minimizers)
        checked += 1
        if checked == 200:
            break
    assert checked == 200


def test_brute_force_min_for_h(h):
    reference = brute_force_min(h, 1, cosets=(0,))
    assert reference.mu == 0
    assert set(reference.minimizers) == {coords_of_e(j) for j in range(1, 10)}


def test_fiber_multiple():
    assert fiber_multiple(fiber_class()) == 1
    assert fiber_multiple(-2 * fiber_class()) == -2
    assert fiber_multiple(h_class()) is None


def test_surface_nef_test(h):
    f = fiber_class()
    assert surface_nef_test(h)
    assert not surface_nef_test(e(1))
    assert surface_nef_test(f)
    assert surface_nef_test(2 * f)
    assert not surface_nef_test(-f)
    assert not surface_nef_test(f + e(1) - e(2))
    assert not surface_nef_test(-h)
    assert surface_nef_test(h + f)


# ===== CONES =====

def test_canonical_forms():
    assert canonical_ray(vec("1/2", "3/4", 0)) == vec(2, 3, 0)
    assert canonical_ray(vec(-2, 4)) == vec(-1, 2)
    assert canonical_line(vec(-2, 4)) == vec(1, -2)
    with pytest.raises(DegenerateConeError):
        canonical_ray(vec(0, 0))


def test_dual_of_orthant_is_orthant():
    orthant = RationalCone.from_generators([vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1)])
    assert dual_cone(orthant).rays == orthant.rays


def test_dual_of_planar_cone():
    cone = RationalCone.from_generators([vec(1, 0), vec(1, 1)])
    assert dual_cone(cone).rays == (vec(0, 1), vec(1, -1))


def test_dual_of_square_cone():
    square = RationalCone.from_generators([vec(1, 0, 1), vec(0, 1, 1), vec(-1, 0, 1), vec(0, -1, 1)])
    dual = dual_cone(square)
    assert dual.rays == (vec(-1, -1, 1), vec(-1, 1, 1), vec(1, -1, 1), vec(1, 1, 1))
    assert dual_cone(dual).rays == square.rays


def test_dual_with_lines():
    half_plane = RationalCone(rays=(vec(0, 1),), lines=(vec(1, 0),), dimension=2)
    dual = dual_cone(half_plane)
    assert dual.rays == (vec(0, 1),)
    assert dual.lines == ()
    ray = RationalCone.from_generators([vec(0, 1)])
    assert dual_cone(ray).lines == (vec(1, 0),)
    assert dual_cone(ray).rays == (vec(0, 1),)


def test_dual_of_whole_space_is_zero():
    plane = RationalCone(lines=(vec(1, 0), vec(0, 1)), dimension=2)
    assert dual_cone(plane).rays == ()
    assert dual_cone(plane).lines == ()


def test_dual_of_zero_cone_is_whole_space():
    dual = dual_cone(RationalCone(dimension=3))
    assert dual.rays == ()
    assert set(dual.lines) == {vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1)}
    back = dual_cone(dual)
    assert back.rays == () and back.lines == ()


def test_double_dual_of_a_plane():
    plane = RationalCone.from_generators([vec(1, 0, 0), vec(-1, 0, 0), vec(0, 1, 0), vec(0, -1, 0)])
    dual = dual_cone(plane)
    assert dual.rays == ()
    assert dual.lines == (vec(0, 0, 1),)
    back = dual_cone(dual)
    assert back.rays == ()
    assert set(back.lines) == {vec(1, 0, 0), vec(0, 1, 0)}


def test_dual_facets_are_minimized():
    square = RationalCone.from_generators([vec(1, 0, 1), vec(0, 1, 1), vec(-1, 0, 1), vec(0, -1, 1)])
    assert set(dual_cone(square).facets) == set(square.rays)
    # (2, 1) is inside cone((1, 0), (1, 1)) and must not survive as a facet of the dual
    wedge = RationalCone.from_generators([vec(1, 0), vec(1, 1), vec(2, 1)])
    assert set(dual_cone(wedge).facets) == {vec(1, 0), vec(1, 1)}
    assert set(facet_covectors(wedge)) == set(dual_cone(wedge).rays)


def same_cone(first: RationalCone, second: RationalCone) -> bool:
    return (all(cone_member(g, second).member for g in first.generators())
            and all(cone_member(g, first).member for g in second.generators()))


@pytest.mark.slow
def test_double_dual_of_random_cones(rng):
    for _ in range(50):
        dimension = rng.randint(2, 10)
        count = rng.randint(1, dimension + 4)
        generators = [vec(*(rng.randint(-3, 3) for _ in range(dimension))) for _ in range(count)]
        cone = RationalCone.from_generators(generators, dimension)
        back = dual_cone(dual_cone(cone))
        assert same_cone(cone, back)
        assert len(back.rays) <= len(cone.rays)


def test_extreme_rays_of_simplicial_cones(rng):
    for _ in range(10):
        while True:
            generators = [vec(*(rng.randint(-3, 3) for _ in range(3))) for _ in range(3)]
            a, b, c = generators
            det = (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                   + a[2] * (b[0] * c[1] - b[1] * c[0]))
            if det != 0:
                break
        cone = RationalCone.from_generators(generators)
        assert dual_cone(dual_cone(cone)).rays == cone.rays


def test_picard_dual_of_roots_contains_chamber(probe, h):
    dual = dual_cone(RationalCone.from_generators([r.cls.to_vector() for r in simple_roots()]), GRAM)
    # f is orthogonal to every root, so the chamber contains the line through f
    assert dual.lines == (vec(*fiber_class().to_vector()),)
    chamber = RationalCone(rays=dual.rays, lines=dual.lines, dimension=10)
    assert cone_member(probe.to_vector(), chamber).member
    assert cone_member(h.to_vector(), chamber).member
    assert not cone_member(e(1).to_vector(), chamber).member


def test_fiber_certificate_in_root_cone():
    roots = RationalCone(rays=tuple(vec(*r.cls.to_vector()) for r in simple_roots()), dimension=10)
    membership = cone_member(fiber_class().to_vector(), roots)
    assert membership.member
    assert membership.coefficients == vec(3, 2, 4, 6, 5, 4, 3, 2, 1)


def test_section_minus_e1_in_root_cone():
    roots = RationalCone.from_generators([r.cls.to_vector() for r in simple_roots()])
    t = SectionCoords((1,) + (0,) * 7, 0)
    assert cone_member(sigma_minus_e1(t), roots).member
    assert not cone_member(sigma_minus_e1(coords_of_e(2)), roots).member


def test_non_member_has_separator():
    roots = RationalCone.from_generators([r.cls.to_vector() for r in simple_roots()])
    result = cone_member(e(1).to_vector(), roots)
    assert not result.member
    u = result.separator
    assert sum(a * b for a, b in zip(u, e(1).to_vector())) < 0
    for g in roots.generators():
        assert sum(a * b for a, b in zip(u, g)) >= 0


def test_membership_edge_cases():
    cone = RationalCone.from_generators([vec(1, 0), vec(1, 1)])
    assert cone_member(vec(0, 0), cone).member
    assert cone_member(vec(3, 1), cone).member
    assert not cone_member(vec(0, 1), cone).member
    empty = RationalCone(dimension=2)
    assert cone_member(vec(0, 0), empty).member
    assert cone_member(vec(1, 0), empty).separator == vec(-1, 0)
    with pytest.raises(ValueError):
        cone_member(vec(1, 0, 0), cone)


def test_extreme_rays_direct():
    rays, lines = extreme_rays([vec(1, 0), vec(0, 1)], 2)
    assert rays == [vec(0, 1), vec(1, 0)]
    assert lines == []


# ===== NEF CHAMBER POLYTOPE =====

@pytest.fixture(scope="module")
def polytope():
    return nef_chamber_polytope()


def test_polytope_rays_lie_in_the_chamber(polytope):
    assert polytope.rays
    assert polytope.lines == ()
    for ray in polytope.rays:
        x = ray_class(ray)
        assert chamber_position(x) != ChamberPosition.OUTSIDE
        assert all(pair(x, e(i)) >= 0 for i in range(1, 10))


def test_polytope_contains_fiber_and_h(polytope, h, probe):
    assert vec(*fiber_class().to_vector()) in polytope.rays
    assert vec(*h.to_vector()) in polytope.rays
    assert cone_member(probe.to_vector(), polytope).member
    assert not cone_member(e(1).to_vector(), polytope).member


def test_polytope_facets_bound_the_rays(polytope):
    for u in polytope.facets:
        assert all(sum(a * b for a, b in zip(u, r)) >= 0 for r in polytope.rays)


@pytest.mark.slow
def test_polytope_rays_are_nef(polytope):
    for ray in polytope.rays:
        assert surface_nef_test(ray_class(ray))


def test_generator_cone_has_eighteen_rays():
    assert len(cone_of_roots_and_exceptionals().rays) == 18


def covector(x: DivisorClass):
    """u with u . y = x . y under the plain dot product"""
    v = x.to_vector()
    return canonical_ray((v[0],) + tuple(-c for c in v[1:]))


def test_polytope_is_simplicial(polytope, h):
    f = fiber_class()
    expected = [h, h - e(1), 2 * h - e(1) - e(2)]
    expected += [3 * h - sum((e(i) for i in range(2, k + 1)), e(1)) for k in range(3, 9)]
    expected.append(f)
    assert set(polytope.rays) == {vec(*x.to_vector()) for x in expected}
    # e1, ..., e8 are redundant once the chamber walls and e9 are imposed
    assert set(polytope.facets) == {covector(root_class(i)) for i in range(9)} | {covector(e(9))}


def test_double_dual_of_generator_cone():
    generators = cone_of_roots_and_exceptionals()
    back = dual_cone(dual_cone(generators, GRAM), GRAM)
    assert set(back.rays) == {canonical_ray(root_class(i).to_vector()) for i in range(9)} | {vec(*e(9).to_vector())}
    assert same_cone(generators, back)


# ===== NEF CONE INSIDE THE TRANSLATION DOMAIN =====

def test_sections_off_e9():
    sections = sections_off_e9()
    assert len(sections) == 240
    assert all(pair(s, e(9)) == 0 and pair(s, s) == -1 for s in sections)
    assert e(1) in sections and e(9) not in sections


@pytest.fixture(scope="module")
def domain_polytope():
    return nef_domain_polytope()


@pytest.mark.slow
def test_domain_polytope_facets(domain_polytope):
    assert domain_polytope.lines == ()
    assert len(domain_polytope.facets) == 241
    assert covector(e(9)) in domain_polytope.facets


@pytest.mark.slow
def test_domain_polytope_rays_reduce_to_chamber_edges(domain_polytope, polytope, h):
    chamber_rays = set(polytope.rays)
    reduced = set()
    for ray in domain_polytope.rays:
        _, y = bourbaki_reduce(ray_class(ray), E8_INDICES)
        assert vec(*y.to_vector()) in chamber_rays
        reduced.add(y)
    assert {h, h - e(1), fiber_class()} <= reduced


def inside(facets, x) -> bool:
    return all(sum((a * b for a, b in zip(u, x)), Fraction(0)) >= 0 for u in facets)


@pytest.mark.slow
def test_domain_polytope_contains_chamber_polytope(domain_polytope, polytope, probe):
    for ray in polytope.rays:
        assert inside(domain_polytope.facets, ray)
    assert inside(domain_polytope.facets, probe.to_vector())
    moved = translation_map(coords_of_e(2)).apply(probe)
    assert not inside(domain_polytope.facets, moved.to_vector())


@pytest.mark.slow
def test_domain_polytope_rays_are_nef_and_in_the_domain(domain_polytope, rng):
    for ray in rng.sample(list(domain_polytope.rays), 60):
        x = ray_class(ray)
        assert surface_nef_test(x)
        assert in_fundamental_domain_D(x)


# ===== FUNDAMENTAL DOMAIN =====

def test_interior_point_is_fixed(probe):
    reduction = reduce_mod_translations(probe)
    assert reduction.t == zero_coords()
    assert reduction.y == probe
    assert reduction.chamber_point == probe


def test_fiber_multiples_are_fixed():
    reduction = reduce_mod_translations(2 * fiber_class())
    assert reduction.y == 2 * fiber_class()
    assert reduction.t == zero_coords()


def test_round_trip_recovers_interior_point(rng, probe):
    for _ in range(10):
        t = random_translation(rng, 2)
        moved = translation_map(t).apply(probe)
        reduction = reduce_mod_translations(moved)
        assert reduction.y == probe
        assert reduction.t == mw_negate(t)
        assert in_domain_interior(reduction.y)


@pytest.mark.slow
def test_round_trip_hundred_samples(rng, probe):
    for _ in range(100):
        t = random_translation(rng, 2)
        reduction = reduce_mod_translations(translation_map(t).apply(probe))
        assert reduction.y == probe


def test_reduced_points_lie_in_domain(rng, h):
    for x in (h, 2 * h - e(1), h + fiber_class(), e(4)):
        for _ in range(3):
            moved = translation_map(random_translation(rng, 1)).apply(x)
            reduction = reduce_mod_translations(moved)
            assert in_fundamental_domain_D(reduction.y)
            assert translation_map(reduction.t).apply(moved) == reduction.y
            assert reduction.w_prime.matrix.apply(reduction.y) == reduction.chamber_point
            # The representative does not depend on where in the orbit we start
            assert reduce_mod_translations(x).y == reduction.y


def test_translates_leave_domain_interior(rng, probe):
    for _ in range(10):
        t = random_translation(rng, 2)
        if t == zero_coords():
            continue
        assert not in_domain_interior(translation_map(t).apply(probe))
