"""
Fibered classes of the magic manifold and their closed-form invariants.

A class ``x*alpha + y*beta + z*gamma`` lies in the open cone over the
fibered face when x > 0, y > 0, x > z and y > z. Every invariant here is
a closed formula in (x, y, z): the Thurston norm, the boundary counts
and slopes on the three cusps, the fiber genus, the prong counts of the
boundary singularities, and orientability of the invariant foliation.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Dict, Tuple

from .exceptions import ConsistencyError, require
from .polynomial import IntPolynomial

logger = logging.getLogger(__name__)


class Torus(str, Enum):
    """Boundary tori of the magic manifold."""

    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"


@dataclass(frozen=True)
class FiberedClass:
    """
    Integral class in H_2(N, dN) written in the basis {alpha, beta, gamma}.

    Attributes:
        x: Coefficient of alpha
        y: Coefficient of beta
        z: Coefficient of gamma
    """

    x: int
    y: int
    z: int

    @property
    def coordinates(self) -> Tuple[int, int, int]:
        return (self.x, self.y, self.z)

    @property
    def is_primitive(self) -> bool:
        return gcd(gcd(self.x, self.y), self.z) == 1

    def in_cone(self) -> bool:
        return self.x > 0 and self.y > 0 and self.x > self.z and self.y > self.z

    def __str__(self) -> str:
        return f"({self.x},{self.y},{self.z})"


@dataclass(frozen=True)
class Slope:
    """
    Boundary slope in lowest terms; the sign sits on the numerator.

    The slope infinity is stored as 1/0.
    """

    numerator: int
    denominator: int

    @classmethod
    def of(cls, numerator: int, denominator: int) -> "Slope":
        """Normalize ``numerator / denominator``; a zero denominator gives infinity."""
        if denominator == 0:
            if numerator == 0:
                raise ConsistencyError("0/0 is not a slope")
            return cls(1, 0)
        if denominator < 0:
            numerator, denominator = -numerator, -denominator
        common = gcd(numerator, denominator)
        return cls(numerator // common, denominator // common)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        """Read ``p/q``, an integer, or ``inf``."""
        text = text.strip()
        if text.lower() in ("inf", "infinity", "1/0"):
            return cls(1, 0)
        if "/" in text:
            numerator, denominator = text.split("/", 1)
            return cls.of(int(numerator), int(denominator))
        return cls.of(int(text), 1)

    @property
    def is_infinite(self) -> bool:
        return self.denominator == 0

    def as_fraction(self) -> Fraction:
        if self.is_infinite:
            raise ConsistencyError("infinity has no rational value")
        return Fraction(self.numerator, self.denominator)

    def __str__(self) -> str:
        if self.is_infinite:
            return "inf"
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class SingularityEntry:
    """
    Boundary singularities of one kind on one torus.

    Attributes:
        torus: Torus the boundary components lie on
        prongs: Prong count at each of those components
        multiplicity: Number of such components
    """

    torus: Torus
    prongs: int
    multiplicity: int

    @property
    def regular(self) -> bool:
        """Two-pronged points are regular, not genuine singularities."""
        return self.prongs == 2


@dataclass(frozen=True)
class SingularityData:
    """
    Singularities of the invariant foliation on a fiber.

    Attributes:
        entries: One entry per torus (alpha, beta, gamma order)
        interior: Interior singularity prong counts; empty for these monodromies
    """

    entries: Tuple[SingularityEntry, ...]
    interior: Tuple[int, ...] = ()

    def multiplicity_on(self, torus: Torus) -> int:
        return sum(e.multiplicity for e in self.entries if e.torus is torus)

    def prong_counts(self) -> Tuple[int, ...]:
        """Prong count of every singular point, expanded by multiplicity."""
        counts = []
        for entry in self.entries:
            counts.extend([entry.prongs] * entry.multiplicity)
        return tuple(counts) + self.interior

    def data(self, include_regular: bool = True) -> Tuple[int, ...]:
        """The ``prongs - 2`` values, optionally without the regular points."""
        return tuple(p - 2 for p in self.prong_counts() if include_regular or p != 2)

    def euler_poincare_sum(self) -> int:
        return sum(p - 2 for p in self.prong_counts())

    @property
    def has_one_prong(self) -> bool:
        return any(e.prongs == 1 for e in self.entries)


@dataclass(frozen=True)
class FiberType:
    """
    Topological type of a fiber surface.

    Attributes:
        genus: Genus of the surface
        b_alpha: Boundary components on the alpha torus
        b_beta: Boundary components on the beta torus
        b_gamma: Boundary components on the gamma torus
    """

    genus: int
    b_alpha: int
    b_beta: int
    b_gamma: int

    @property
    def boundary_total(self) -> int:
        return self.b_alpha + self.b_beta + self.b_gamma

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.boundary_total

    def __str__(self) -> str:
        return f"Sigma_{{{self.genus},{self.boundary_total}}}"


def check_cone(c: FiberedClass) -> None:
    """
    Check cone membership, naming the first failed inequality.

    Raises:
        DomainError: If x > 0, y > 0, x > z or y > z fails
    """
    require(c.x > 0, "x > 0", f"class {c} is not in the fibered cone")
    require(c.y > 0, "y > 0", f"class {c} is not in the fibered cone")
    require(c.x > c.z, "x > z", f"class {c} is not in the fibered cone")
    require(c.y > c.z, "y > z", f"class {c} is not in the fibered cone")


def _check_primitive(c: FiberedClass) -> None:
    require(c.is_primitive, "gcd(x,y,z) = 1", f"class {c} is not primitive")


def thurston_norm(c: FiberedClass) -> int:
    """Thurston norm ``x + y - z`` of a cone class."""
    check_cone(c)
    return c.x + c.y - c.z


def boundary_counts(c: FiberedClass) -> Tuple[int, int, int]:
    """Boundary components of the fiber on each torus: gcd(x,y+z), gcd(y,z+x), gcd(z,x+y)."""
    check_cone(c)
    x, y, z = c.coordinates
    return (gcd(x, y + z), gcd(y, z + x), gcd(z, x + y))


def boundary_slopes(c: FiberedClass) -> Tuple[Slope, Slope, Slope]:
    """Boundary slopes ``-(y+z)/x``, ``-(z+x)/y``, ``-(x+y)/z``."""
    check_cone(c)
    x, y, z = c.coordinates
    return (Slope.of(-(y + z), x), Slope.of(-(z + x), y), Slope.of(-(x + y), z))


def fiber_type(c: FiberedClass) -> FiberType:
    """
    Genus and boundary counts of the fiber representing ``c``.

    The genus solves ``2 - 2g - b = -(x + y - z)``.

    Raises:
        DomainError: If ``c`` is outside the cone or not primitive
        ConsistencyError: If the solved genus is not a non-negative integer
    """
    norm = thurston_norm(c)
    _check_primitive(c)
    b_alpha, b_beta, b_gamma = boundary_counts(c)
    twice_genus = norm - (b_alpha + b_beta + b_gamma) + 2
    if twice_genus < 0 or twice_genus % 2:
        raise ConsistencyError(f"class {c} yields genus {twice_genus}/2")
    return FiberType(twice_genus // 2, b_alpha, b_beta, b_gamma)


def singularity_data(c: FiberedClass) -> SingularityData:
    """Prong counts at the boundary singularities of the monodromy of ``c``."""
    check_cone(c)
    _check_primitive(c)
    x, y, z = c.coordinates
    b_alpha, b_beta, b_gamma = boundary_counts(c)
    return SingularityData(
        (
            SingularityEntry(Torus.ALPHA, x // b_alpha, b_alpha),
            SingularityEntry(Torus.BETA, y // b_beta, b_beta),
            SingularityEntry(Torus.GAMMA, (x + y - 2 * z) // b_gamma, b_gamma),
        )
    )


def euler_poincare_defect(c: FiberedClass) -> int:
    """``sum(prongs - 2) - (4g - 4)``; zero for every primitive cone class."""
    return singularity_data(c).euler_poincare_sum() - (4 * fiber_type(c).genus - 4)


def orientable(c: FiberedClass) -> bool:
    """Whether the invariant foliation is orientable: x, y even and z odd."""
    check_cone(c)
    _check_primitive(c)
    return c.x % 2 == 0 and c.y % 2 == 0 and c.z % 2 == 1


def _substitute(monomials: Dict[Tuple[int, int, int], int], signs: Tuple[int, int, int],
                c: FiberedClass) -> Dict[int, int]:
    """Laurent terms of ``sum coeff * t1^a t2^b t3^c`` at ``t_i = sign_i * t**e_i``."""
    exponents = c.coordinates
    terms: Dict[int, int] = {}
    for powers, coefficient in monomials.items():
        exponent = sum(p * e for p, e in zip(powers, exponents))
        sign = 1
        for p, s in zip(powers, signs):
            sign *= s**p
        terms[exponent] = terms.get(exponent, 0) + sign * coefficient
    return terms


# -t1 - t2 + t3 + t1t2 - t1t3 - t2t3
TEICHMULLER_MONOMIALS = {
    (1, 0, 0): -1, (0, 1, 0): -1, (0, 0, 1): 1,
    (1, 1, 0): 1, (1, 0, 1): -1, (0, 1, 1): -1,
}

# t1t2 + t2t3 + t3t1 - t1 - t2 - t3
ALEXANDER_MONOMIALS = {
    (1, 1, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1,
    (1, 0, 0): -1, (0, 1, 0): -1, (0, 0, 1): -1,
}


def orientability_identity_check(c: FiberedClass) -> bool:
    """
    Compare ``P(t^x, t^y, t^z)`` with ``A((-t)^x, (-t)^y, (-t)^z)``.

    Both sides are Laurent polynomials when z < 0; they are shifted by the
    same power of t before comparing. The identity holds exactly for the
    orientable classes.
    """
    check_cone(c)
    lhs = _substitute(TEICHMULLER_MONOMIALS, (1, 1, 1), c)
    signs = (-1 if c.x % 2 else 1, -1 if c.y % 2 else 1, -1 if c.z % 2 else 1)
    rhs = _substitute(ALEXANDER_MONOMIALS, signs, c)
    shift = -min(list(lhs) + list(rhs))
    same = IntPolynomial.from_laurent(lhs.items(), shift) == IntPolynomial.from_laurent(
        rhs.items(), shift
    )
    logger.debug(f"orientability identity for {c}: {same}")
    return same
