"""
Mordell-Weil coordinates of sections, Manin's class formula, and translations
as lattice isometries and as Weyl words.

A section with coordinates (a2, ..., a9) represents -sum(a_i [e_i - e1]) in
Pic^0 of the generic fiber; a1 is taken to be 0 throughout.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from errors import (InternalNonIntegralError, NonIntegralError, NotASectionError,
                    NotReducedError, WordNotFoundError)
from fixture_manager import FixtureManager
from lattice_core import DivisorClass, fiber_class, is_section_class
from weyl import (LatticeMap, WeylWord, bourbaki_reduce, permutation_word, probe_point,
                  word_inverse)

logger = logging.getLogger(__name__)

THIRD = Fraction(1, 3)

# Alternative probe weights tried, in order, after the configured default
FALLBACK_PROBE_WEIGHTS = (
    (2, 3, 4, 5, 6, 7, 8, 9, 10),
    (1, 1, 1, 1, 1, 1, 1, 1, 1),
    (7, 3, 5, 2, 9, 4, 6, 1, 8),
)


@dataclass(frozen=True)
class SectionCoords:
    """Coordinates (a2, ..., a9) and the coset of T0 in T they lie in"""

    a: Tuple[Fraction, ...] = (Fraction(0),) * 8
    coset: int = 0

    def __post_init__(self):
        values = tuple(Fraction(v) for v in self.a)
        if len(values) != 8:
            raise ValueError(f"Expected 8 section coordinates, got {len(values)}")
        object.__setattr__(self, "a", values)
        object.__setattr__(self, "coset", int(self.coset))

    def is_valid(self) -> bool:
        """Every a_i must be congruent to -coset/3 modulo 1"""
        if self.coset not in (0, 1, 2):
            return False
        target = (-self.coset * THIRD) % 1
        return all(v % 1 == target for v in self.a)

@dataclass(frozen=True)
class ManinAux:
    d: Fraction
    s: Fraction


def coords(values: Sequence, coset: Optional[int] = None) -> SectionCoords:
    """Build SectionCoords, inferring the coset from the fractional parts when not given"""
    a = tuple(Fraction(v) for v in values)
    if coset is None:
        coset = infer_coset(a)
    result = SectionCoords(a, coset)
    if not result.is_valid():
        raise NonIntegralError(f"Coordinates {format_coords(result)} violate the coset structure")
    return result


def infer_coset(a: Sequence[Fraction]) -> int:
    for coset in (0, 1, 2):
        target = (-coset * THIRD) % 1
        if all(Fraction(v) % 1 == target for v in a):
            return coset
    raise NonIntegralError(f"Coordinates {list(map(str, a))} do not lie in a single coset")


def zero_coords() -> SectionCoords:
    return SectionCoords()


def coords_of_e(j: int) -> SectionCoords:
    """Coordinates of the section e_j: zero for e1, -delta_j otherwise"""
    if not 1 <= j <= 9:
        raise ValueError(f"Exceptional index out of range: {j}")
    values = [Fraction(0)] * 8
    if j >= 2:
        values[j - 2] = Fraction(-1)
    return SectionCoords(tuple(values), 0)


def coset_generator() -> SectionCoords:
    """1/3 sum [e_i - e1], with coordinates a_i = -1/3"""
    return SectionCoords((-THIRD,) * 8, 1)


def format_coords(t: SectionCoords) -> str:
    return "(" + ", ".join(str(v) for v in t.a) + f"; coset {t.coset})"


def manin_aux(t: SectionCoords) -> ManinAux:
    s = sum(t.a, Fraction(0))
    squares = sum((v * v for v in t.a), Fraction(0))
    cross = sum((t.a[j] * t.a[k] for j in range(8) for k in range(j + 1, 8)), Fraction(0))
    return ManinAux(d=squares + cross + s, s=s)


def manin_class(t: SectionCoords) -> DivisorClass:
    """3d h - (d - s - 1) e1 - sum((d + a_i) e_i)"""
    if not t.is_valid():
        raise NonIntegralError(f"Coordinates {format_coords(t)} violate the coset structure")
    aux = manin_aux(t)
    values = [3 * aux.d, -(aux.d - aux.s - 1)] + [-(aux.d + v) for v in t.a]
    if any(v.denominator != 1 for v in values):
        raise NonIntegralError(f"Manin class of {format_coords(t)} is not integral")
    return DivisorClass.from_vector([int(v) for v in values])


def class_to_coords(sigma: DivisorClass) -> SectionCoords:
    if not is_section_class(sigma):
        raise NotASectionError(f"{sigma} is not a section class")
    d = Fraction(sigma.coeff_h, 3)
    a = tuple(-Fraction(c) - d for c in sigma.coeff_e[1:])
    s = sum(a, Fraction(0))
    if sigma.coeff_e[0] != -(d - s - 1):
        raise NotASectionError(f"e1 coefficient of {sigma} is inconsistent with Manin's formula")
    try:
        result = coords(a)
    except NonIntegralError as exc:
        raise NotASectionError(f"{sigma}: {exc.message}") from exc
    if manin_class(result) != sigma:
        raise NotASectionError(f"{sigma} does not round-trip through Manin's formula")
    return result


def mw_add(a: SectionCoords, b: SectionCoords) -> SectionCoords:
    return SectionCoords(tuple(x + y for x, y in zip(a.a, b.a)), (a.coset + b.coset) % 3)


def mw_negate(a: SectionCoords) -> SectionCoords:
    return SectionCoords(tuple(-x for x in a.a), (-a.coset) % 3)


def mw_scale(a: SectionCoords, k: int) -> SectionCoords:
    return SectionCoords(tuple(k * x for x in a.a), (k * a.coset) % 3)


def translation_map(t: SectionCoords) -> LatticeMap:
    """
    Isometry induced by translation by t: fixes f, sends the section with
    coordinates c to the section with coordinates c + t, and h = (f + sum e_i)/3
    to the corresponding combination of images.
    """
    if not t.is_valid():
        raise NonIntegralError(f"Coordinates {format_coords(t)} violate the coset structure")

    images = [manin_class(mw_add(coords_of_e(j), t)) for j in range(1, 10)]
    numerator = fiber_class()
    for image in images:
        numerator = numerator + image
    vector = numerator.to_vector()
    if any(v % 3 for v in vector):
        logger.error(f"Image of h under translation {format_coords(t)} is not integral: {numerator}/3")
        raise InternalNonIntegralError(f"Translation {format_coords(t)} gives a non-integral image of h")
    h_image = DivisorClass.from_vector([v // 3 for v in vector])

    result = LatticeMap.from_images([h_image] + images)
    if not result.is_isometry() or not result.fixes(fiber_class()):
        logger.error(f"Translation {format_coords(t)} is not an f-fixing isometry")
        raise InternalNonIntegralError(f"Translation {format_coords(t)} failed the isometry check")
    return result


def section_class_of_translate(t: SectionCoords) -> DivisorClass:
    """T(e1), the section the zero-section is moved to"""
    return manin_class(t)


def translation_as_weyl_word(t: SectionCoords, max_steps: Optional[int] = None,
                             probes: Optional[Sequence[DivisorClass]] = None) -> WeylWord:
    """
    Express the translation by t as a Weyl word: reduce T(x) for an interior
    probe x back into the chamber and invert the reflection word.
    """
    target = translation_map(t)
    if probes is None:
        probes = [probe_point()] + [probe_point(w) for w in FALLBACK_PROBE_WEIGHTS]

    for attempt, x in enumerate(probes):
        try:
            w, y = bourbaki_reduce(target.apply(x), max_steps=max_steps)
        except NotReducedError:
            logger.warning(f"Probe {attempt} ({x}) did not reduce for {format_coords(t)}")
            continue
        candidate = word_inverse(w)
        if candidate.matrix == target:
            logger.info(f"Translation {format_coords(t)} = word of length {len(candidate)} (probe {attempt})")
            return candidate
        logger.warning(f"Probe {attempt} gave a word not matching translation {format_coords(t)} (landed at {y})")

    raise WordNotFoundError(f"No Weyl word found for translation {format_coords(t)}")


# ===== PRINTED WORD FOR t_2 =====

class Interpretation(str, Enum):
    ONE_LINE = "ONE_LINE"
    CYCLE = "CYCLE"


_NOTATION = {Interpretation.ONE_LINE: "one-line", Interpretation.CYCLE: "cycle"}


@dataclass
class WordVerification:
    interpretation: Optional[Interpretation]
    ok: bool
    identity_by_interpretation: Dict[str, bool] = field(default_factory=dict)


def printed_word(permutations: Sequence[Sequence[int]], notation: str,
                 reflection_index: int = 0) -> WeylWord:
    """
    P_6 w_s P_5 w_s ... w_s P_1 for permutations given as [P_1, ..., P_6].
    """
    letters: List[int] = []
    for k, perm in enumerate(reversed(permutations)):
        if k > 0:
            letters.append(reflection_index)
        letters.extend(permutation_word(perm, notation).letters)
    return WeylWord(tuple(letters))


def verify_paper_word(fixture: Optional[Dict] = None) -> WordVerification:
    """Compose the printed word with t_2 under both readings of the tuples and test for the identity"""
    if fixture is None:
        fixture = FixtureManager().thm22_word()

    permutations = fixture["permutations"]
    reflection_index = int(fixture.get("reflection_root", 0))
    t2 = translation_map(coords_of_e(int(fixture.get("translation_index", 2))))

    results: Dict[str, bool] = {}
    for interpretation in Interpretation:
        word = printed_word(permutations, _NOTATION[interpretation], reflection_index)
        results[interpretation.value] = word.matrix.compose(t2).is_identity()
        logger.info(f"Printed word under {interpretation.value}: identity={results[interpretation.value]}")

    matching = [i for i in Interpretation if results[i.value]]
    if len(matching) > 1:
        logger.warning("Printed word is the identity under both interpretations")
    return WordVerification(matching[0] if matching else None, bool(matching), results)
