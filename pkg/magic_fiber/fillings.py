"""
Fibered classes of the three 2-cusped fillings N(-3/2), N(-1/2) and N(2).

A FamilyClass (family, k, l) names the class ``k*a + l*b`` in the basis of
the filled manifold; ``to_fibered_class`` maps it into the fibered cone of
N. The capped fiber is what remains after the two unfilled cusps are
filled along the fiber's boundary slopes.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Dict, FrozenSet, Optional, Tuple

from .exceptions import DomainError, require
from .homology import (
    FiberedClass,
    FiberType,
    SingularityData,
    SingularityEntry,
    Slope,
    Torus,
    boundary_slopes,
)
from .polyroot import RootInterval, get_engine, pair_poly, teichmuller_poly

logger = logging.getLogger(__name__)


class Family(str, Enum):
    """
    Filling families, each tied to the torus it fills and the filling slope.

    A fills the beta torus along -3/2, P fills beta along -1/2 and R fills
    gamma along 2.
    """

    A = "A"
    P = "P"
    R = "R"

    @property
    def slope(self) -> Slope:
        return _FILL_SLOPES[self]

    @property
    def filled_torus(self) -> Torus:
        return Torus.GAMMA if self is Family.R else Torus.BETA

    @classmethod
    def from_slope(cls, slope: Slope) -> "Family":
        """Family filling along ``slope``; raises DomainError for other slopes."""
        for family, candidate in _FILL_SLOPES.items():
            if candidate == slope:
                return family
        raise DomainError(f"no filling family for slope {slope}", "r in {-3/2, -1/2, 2}")


_FILL_SLOPES = {
    Family.A: Slope.of(-3, 2),
    Family.P: Slope.of(-1, 2),
    Family.R: Slope.of(2, 1),
}


@dataclass(frozen=True)
class FamilyClass:
    """
    Class ``k*a + l*b`` of a filled manifold.

    Attributes:
        family: Which filling the class lives on
        k: First coordinate, positive
        l: Second coordinate, -k < l < k and coprime to k

    Raises:
        DomainError: On construction, if the coordinates are out of range
    """

    family: Family
    k: int
    l: int

    def __post_init__(self) -> None:
        require(self.k > 0, "k > 0", f"{self} has k <= 0")
        require(-self.k < self.l < self.k, "-k < l < k", f"{self} has |l| >= k")
        require(gcd(self.k, self.l) == 1, "gcd(k, l) = 1", f"{self} is not primitive")

    def with_l(self, l: int) -> "FamilyClass":
        return FamilyClass(self.family, self.k, l)

    @property
    def sort_key(self) -> Tuple[str, int, int]:
        return (self.family.value, self.k, self.l)

    def __str__(self) -> str:
        return f"({self.family.value},{self.k},{self.l})"


def to_fibered_class(fc: FamilyClass) -> FiberedClass:
    """Cone class of N that the family class comes from."""
    k, l = fc.k, fc.l
    if fc.family is Family.A:
        return FiberedClass(2 * k + l, 2 * k + 2 * l, k + 2 * l)
    if fc.family is Family.P:
        return FiberedClass(k, 2 * k + 2 * l, l)
    return FiberedClass(k + l, k - l, -k)


def _genus_drops(fc: FamilyClass) -> bool:
    k, l = fc.k, fc.l
    if fc.family is Family.A:
        return (2 * k + l) % 5 == 0 or (k + 2 * l) % 5 == 0
    if fc.family is Family.P:
        return k % 3 == 0 or l % 3 == 0
    return False


def closed_genus(fc: FamilyClass) -> int:
    """Genus of the fiber after both remaining cusps are capped."""
    if not _genus_drops(fc):
        return fc.k
    return fc.k - 2 if fc.family is Family.A else fc.k - 1


def one_cusp_filled_fiber(fc: FamilyClass) -> FiberType:
    """
    Fiber of the 2-cusped filled manifold, boundary counted per torus.

    The filled torus carries no boundary; A and P keep boundary on alpha
    and gamma, R on alpha and beta.
    """
    k, l = fc.k, abs(fc.l)
    genus = closed_genus(fc)
    if fc.family is Family.A:
        return FiberType(genus, gcd(2 * k + l, 5), 0, gcd(5, k + 2 * l))
    if fc.family is Family.P:
        return FiberType(genus, gcd(k, 3), 0, gcd(l, 3))
    return FiberType(genus, 1, 1, 0)


# (k, l) with a 1-pronged boundary singularity
_ONE_PRONG: Dict[Family, FrozenSet[Tuple[int, int]]] = {
    Family.A: frozenset({(2, 1), (2, -1), (3, 1), (3, -1), (4, 3), (4, -3)}),
    Family.P: frozenset({(1, 0), (3, 1), (3, -1), (3, 2), (3, -2)}),
}


def has_one_prong(fc: FamilyClass) -> bool:
    """Whether some boundary singularity of the capped fiber is 1-pronged."""
    if fc.family is Family.R:
        return fc.k + fc.l == 1 or fc.k - fc.l == 1
    return (fc.k, fc.l) in _ONE_PRONG[fc.family]


def capped_orientable(fc: FamilyClass) -> bool:
    """Orientability of the invariant foliation, by the parities of k and l."""
    k_odd, l_odd = fc.k % 2 == 1, fc.l % 2 == 1
    if fc.family is Family.A:
        return k_odd and not l_odd
    if fc.family is Family.P:
        return not k_odd and l_odd
    return k_odd and l_odd


def capped_singularity_data(fc: FamilyClass) -> SingularityData:
    """
    Singularity data of the family class, regular entries kept.

    Equals ``singularity_data(to_fibered_class(fc))``; the entries on the
    filled torus become the interior points of the capped fiber.
    """
    k, l = fc.k, fc.l
    if fc.family is Family.A:
        m_alpha, m_gamma = gcd(2 * k + l, 5), gcd(5, k + 2 * l)
        entries = (
            SingularityEntry(Torus.ALPHA, (2 * k + l) // m_alpha, m_alpha),
            SingularityEntry(Torus.BETA, 2, abs(k + l)),
            SingularityEntry(Torus.GAMMA, (2 * k - l) // m_gamma, m_gamma),
        )
    elif fc.family is Family.P:
        m_alpha, m_gamma = gcd(k, 3), gcd(l, 3)
        entries = (
            SingularityEntry(Torus.ALPHA, k // m_alpha, m_alpha),
            SingularityEntry(Torus.BETA, 2, abs(k + l)),
            SingularityEntry(Torus.GAMMA, 3 * k // m_gamma, m_gamma),
        )
    else:
        entries = (
            SingularityEntry(Torus.ALPHA, k + l, 1),
            SingularityEntry(Torus.BETA, k - l, 1),
            SingularityEntry(Torus.GAMMA, 4, k),
        )
    return SingularityData(entries)


def filling_slopes(fc: FamilyClass) -> Tuple[Slope, Slope, Slope]:
    """
    Slopes of the fully filled manifold in (alpha, beta, gamma) order.

    The filled torus carries the family slope, the other two carry the
    boundary slopes of the fiber.
    """
    slopes = list(boundary_slopes(to_fibered_class(fc)))
    index = 2 if fc.family is Family.R else 1
    slopes[index] = fc.family.slope
    return (slopes[0], slopes[1], slopes[2])


class HyperbolicityStatus(str, Enum):
    HYPERBOLIC = "Hyperbolic"
    NON_HYPERBOLIC = "NonHyperbolic"
    NECESSARY_CONDITION_FAILS = "NecessaryConditionFails"
    UNDETERMINED = "Undetermined"


EXCEPTIONAL_SLOPES: FrozenSet[Slope] = frozenset(
    Slope.of(n, d) for n, d in ((1, 0), (-3, 1), (-2, 1), (-1, 1), (0, 1))
)

EXCEPTIONAL_PAIRS: Tuple[Tuple[Fraction, Fraction], ...] = (
    (Fraction(1), Fraction(1)),
    (Fraction(-4), Fraction(-1, 2)),
    (Fraction(-3, 2), Fraction(-5, 2)),
)


@dataclass(frozen=True)
class HyperbolicityVerdict:
    """
    Hyperbolicity of a fully filled magic manifold.

    Attributes:
        status: The verdict
        witness: Offending slope or slope pair, rendered, when there is one
        slopes: The slope triple the verdict is about
    """

    status: HyperbolicityStatus
    witness: Optional[str] = None
    slopes: Tuple[Slope, ...] = ()


def _exceptional_witness(slopes: Tuple[Slope, Slope, Slope]) -> Optional[str]:
    for slope in slopes:
        if slope in EXCEPTIONAL_SLOPES:
            return str(slope)
    for i in range(3):
        for j in range(i + 1, 3):
            a, b = slopes[i], slopes[j]
            if a.is_infinite or b.is_infinite:
                continue
            pair = (a.as_fraction(), b.as_fraction())
            for x, y in EXCEPTIONAL_PAIRS:
                if pair == (x, y) or pair == (y, x):
                    return f"({a}, {b})"
    return None


def necessary_condition(slopes: Tuple[Slope, Slope, Slope]) -> HyperbolicityVerdict:
    """
    Exceptional-slope test on an arbitrary slope triple.

    A slope in {inf, -3, -2, -1, 0}, or two slopes forming one of the
    exceptional pairs, makes the filling non-hyperbolic; passing the test
    decides nothing.
    """
    witness = _exceptional_witness(slopes)
    if witness is not None:
        return HyperbolicityVerdict(HyperbolicityStatus.NECESSARY_CONDITION_FAILS, witness, slopes)
    return HyperbolicityVerdict(HyperbolicityStatus.UNDETERMINED, None, slopes)


def hyperbolicity(fc: FamilyClass) -> HyperbolicityVerdict:
    """
    Verdict for the closed manifold obtained by filling along the fiber slopes.

    For family classes the exceptional-slope test is also sufficient, so
    the verdict is always Hyperbolic or NonHyperbolic.
    """
    slopes = filling_slopes(fc)
    witness = _exceptional_witness(slopes)
    if witness is not None:
        logger.debug(f"{fc} fills non-hyperbolically at {witness}")
        return HyperbolicityVerdict(HyperbolicityStatus.NON_HYPERBOLIC, witness, slopes)
    return HyperbolicityVerdict(HyperbolicityStatus.HYPERBOLIC, None, slopes)


def dilatation(fc: FamilyClass, width_bits: Optional[int] = None) -> RootInterval:
    """Certified bracket of the dilatation, the largest root of ``f_(k,|l|)``."""
    return get_engine().largest_real_root(pair_poly(fc.k, abs(fc.l)), width_bits)


def dilatation_matches_cone_class(fc: FamilyClass, width_bits: Optional[int] = None) -> bool:
    """Whether the cone-class polynomial has the same largest root as ``f_(k,|l|)``."""
    fibered = to_fibered_class(fc)
    family_root = dilatation(fc, width_bits)
    cone_root = get_engine().largest_real_root(teichmuller_poly(*fibered.coordinates), width_bits)
    return family_root.lo_mantissa == cone_root.lo_mantissa and family_root.bits == cone_root.bits
