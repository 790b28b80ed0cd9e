"""
Sparse integer polynomials in one variable.

Dilatation polynomials have a handful of terms and degrees from a few
up to thousands, so terms are stored sparsely and evaluated exactly at dyadic
points ``m / 2**bits`` with integer arithmetic only.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

import sympy

from .exceptions import DomainError

Term = Tuple[int, int]

T = sympy.Symbol("t")


def _collect(pairs: Iterable[Term]) -> Dict[int, int]:
    merged: Dict[int, int] = {}
    for exponent, coefficient in pairs:
        merged[exponent] = merged.get(exponent, 0) + coefficient
    return {e: c for e, c in merged.items() if c != 0}


def _variations(values: Iterable[int]) -> int:
    variations = 0
    previous = 0
    for value in values:
        if value == 0:
            continue
        if previous and (value > 0) != (previous > 0):
            variations += 1
        previous = value
    return variations


@dataclass(frozen=True)
class IntPolynomial:
    """
    Integer polynomial stored as ascending ``(exponent, coefficient)`` pairs.

    No zero coefficients are stored; the zero polynomial has no terms.

    Attributes:
        terms: Ascending tuple of (exponent, nonzero coefficient)
    """

    terms: Tuple[Term, ...] = ()

    @classmethod
    def from_terms(cls, pairs: Union[Mapping[int, int], Iterable[Term]]) -> "IntPolynomial":
        """
        Build a polynomial, merging like terms.

        Args:
            pairs: Mapping or iterable of (exponent, coefficient)

        Raises:
            DomainError: If an exponent is negative
        """
        items = pairs.items() if isinstance(pairs, Mapping) else pairs
        merged = _collect(items)
        if any(e < 0 for e in merged):
            raise DomainError("exponents must be non-negative", "exponent >= 0")
        return cls(tuple(sorted(merged.items())))

    @classmethod
    def from_laurent(cls, pairs: Iterable[Term], shift: Optional[int] = None) -> "IntPolynomial":
        """
        Build a polynomial from Laurent terms multiplied by ``t**shift``.

        Args:
            pairs: (exponent, coefficient) pairs, exponents of any sign
            shift: Exponent added to every term; defaults to minus the
                smallest exponent present
        """
        merged = _collect(pairs)
        if not merged:
            return cls()
        if shift is None:
            shift = -min(merged)
        return cls.from_terms((e + shift, c) for e, c in merged.items())

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "IntPolynomial":
        """Return ``coefficient * t**exponent``."""
        return cls.from_terms([(exponent, coefficient)])

    @classmethod
    def from_sympy(cls, poly: sympy.Poly) -> "IntPolynomial":
        """Convert a univariate sympy Poly with integer coefficients."""
        return cls.from_terms((int(monom[0]), int(coeff)) for monom, coeff in poly.terms())

    @classmethod
    def parse(cls, canonical: str) -> "IntPolynomial":
        """Inverse of canonical()."""
        if not canonical:
            return cls()
        pairs = []
        for item in canonical.split(","):
            exponent, coefficient = item.split(":")
            pairs.append((int(exponent), int(coefficient)))
        return cls.from_terms(pairs)

    def to_sympy(self) -> sympy.Poly:
        """Convert to a sympy Poly in ``t`` over ZZ."""
        if not self.terms:
            return sympy.Poly(0, T, domain=sympy.ZZ)
        return sympy.Poly.from_dict({(e,): c for e, c in self.terms}, T, domain=sympy.ZZ)

    def canonical(self) -> str:
        """Sorted ``exp:coeff`` pairs, used as the cache key."""
        return ",".join(f"{e}:{c}" for e, c in self.terms)

    def __iter__(self) -> Iterator[Term]:
        return iter(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def degree(self) -> int:
        """Largest exponent; -1 for the zero polynomial."""
        return self.terms[-1][0] if self.terms else -1

    @property
    def leading_coefficient(self) -> int:
        return self.terms[-1][1] if self.terms else 0

    def coefficient(self, exponent: int) -> int:
        for e, c in self.terms:
            if e == exponent:
                return c
        return 0

    def max_abs_coefficient(self) -> int:
        return max((abs(c) for _, c in self.terms), default=0)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple((e, -c) for e, c in self.terms))

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial.from_terms(list(self.terms) + list(other.terms))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial.from_terms(
            (e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms
        )

    def reversed(self) -> "IntPolynomial":
        """Return ``t**deg * p(1/t)``."""
        n = self.degree
        return IntPolynomial.from_terms((n - e, c) for e, c in self.terms)

    def evaluate(self, x: int) -> int:
        """Exact value at an integer point."""
        return sum(c * x**e for e, c in self.terms)

    def scaled_value(self, mantissa: int, bits: int) -> int:
        """
        Value at ``mantissa / 2**bits`` multiplied by ``2**(bits * degree)``.

        The scale factor is positive, so the sign is the sign of the value.
        """
        n = self.degree
        return sum((c * mantissa**e) << (bits * (n - e)) for e, c in self.terms)

    def sign_at(self, mantissa: int, bits: int) -> int:
        """Sign (-1, 0, 1) of the polynomial at ``mantissa / 2**bits``."""
        value = self.scaled_value(mantissa, bits)
        return (value > 0) - (value < 0)

    def sign_at_fraction(self, point: Fraction) -> int:
        """Sign (-1, 0, 1) of the polynomial at a rational point."""
        n = self.degree
        num, den = point.numerator, point.denominator
        value = sum(c * num**e * den ** (n - e) for e, c in self.terms)
        return (value > 0) - (value < 0)

    def shifted_coefficients(self, mantissa: int, bits: int) -> Tuple[int, ...]:
        """
        Coefficients of ``p(x + a)``, ``a = mantissa / 2**bits``, up to a positive scale.

        Entry ``j`` is the coefficient of ``x**j`` times ``2**(bits * degree)``.
        """
        n = self.degree
        if n < 0:
            return ()
        powers = [1]
        for _ in range(n):
            powers.append(powers[-1] * mantissa)
        shifted = []
        for j in range(n + 1):
            total = 0
            for e, c in self.terms:
                if e >= j:
                    total += (c * comb(e, j) * powers[e - j]) << (bits * (n - e + j))
            shifted.append(total)
        return tuple(shifted)

    def sign_variations(self) -> int:
        """Sign changes along the stored coefficients; bounds the positive roots."""
        return _variations(c for _, c in self.terms)

    def descartes_bound(self, mantissa: int, bits: int, skip_constant: bool = False) -> int:
        """
        Sign variations of ``p(x + a)``: an upper bound on the roots greater than ``a``.

        Args:
            mantissa: Numerator of the shift point
            bits: The shift point is mantissa / 2**bits
            skip_constant: Drop the constant term, i.e. count roots of
                ``p(x + a) / x`` when ``a`` is itself a root
        """
        if mantissa == 0 and not skip_constant:
            return self.sign_variations()
        coefficients = self.shifted_coefficients(mantissa, bits)
        if skip_constant:
            coefficients = coefficients[1:]
        return _variations(coefficients)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.terms):
            magnitude = abs(c)
            if e == 0:
                body = str(magnitude)
            else:
                power = "t" if e == 1 else f"t^{e}"
                body = power if magnitude == 1 else f"{magnitude}{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text
