"""
Dilatation polynomials and certified brackets of their largest real root.

Brackets are aligned dyadic cells ``[m / 2**bits, (m + 1) / 2**bits]``.
The cell of a given width containing the root is unique, so a bracket
does not depend on how it was obtained (fresh bisection, refinement of
an earlier bracket, or a cached one).

Certification: when p(0) > 0 > p(1) and the coefficients change sign
exactly twice, one root lies in (0, 1) and exactly one above 1, so plain
bisection by sign brackets the largest root. Otherwise bisect by sign and at
checkpoints count sign variations of ``p(x + lo)``. One variation with
``p(lo) < 0`` proves that exactly one real root exceeds ``lo``; with a
sign change on the cell that root is the largest real root and every
later bisection by sign keeps it. Polynomials that resist this are
isolated exactly with sympy.
"""

import logging
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, Dict, Iterator, Optional, Tuple

import sympy
from mpmath import iv

from .config import PrecisionConfig
from .escalation import EscalationConfig, EscalationHandler
from .exceptions import (
    DomainError,
    EscalationError,
    PrecisionExhausted,
    UndecidableComparisonError,
    require,
)
from .homology import FiberedClass, check_cone
from .polynomial import IntPolynomial

if TYPE_CHECKING:
    from .cache import RootCache

logger = logging.getLogger(__name__)

__all__ = [
    "IntPolynomial",
    "RootCertificate",
    "RootInterval",
    "Comparison",
    "RootEngine",
    "teichmuller_poly",
    "pair_poly",
    "largest_real_root",
    "compare_roots",
    "factor_check",
    "root_log",
    "get_engine",
    "set_engine",
]


def teichmuller_poly(x: int, y: int, z: int) -> IntPolynomial:
    """
    Specialization ``t^(x+y-z) - t^x - t^y - t^(x-z) - t^(y-z) + 1``.

    Raises:
        DomainError: If (x, y, z) is outside the fibered cone
    """
    check_cone(FiberedClass(x, y, z))
    return IntPolynomial.from_terms(
        [(x + y - z, 1), (x, -1), (y, -1), (x - z, -1), (y - z, -1), (0, 1)]
    )


def pair_poly(k: int, l: int) -> IntPolynomial:
    """
    ``t^(2k) - t^(k+l) - t^k - t^(k-l) + 1``.

    Raises:
        DomainError: Unless k > 0 and -k < l < k
    """
    require(k > 0, "k > 0")
    require(-k < l < k, "-k < l < k")
    return IntPolynomial.from_terms([(2 * k, 1), (k + l, -1), (k, -1), (k - l, -1), (0, 1)])


def _cyclotomic_plus(exponent: int) -> IntPolynomial:
    return IntPolynomial.from_terms([(exponent, 1), (0, 1)])


KNOWN_FACTORIZATIONS: Dict[Tuple[int, int], Tuple[IntPolynomial, ...]] = {
    (9, 2): (
        IntPolynomial.from_terms([(4, 1), (3, -1), (2, 1), (1, -1), (0, 1)]),
        IntPolynomial.from_terms(
            [(14, 1), (13, 1), (9, -1), (8, -1), (7, -1), (6, -1), (5, -1), (1, 1), (0, 1)]
        ),
    ),
}


def factor_check(k: int, l: int) -> bool:
    """
    Check the family factorizations of the specialized polynomial.

    Families A and P give ``(t^(k+l) + 1) * f_(k,l)``, family R gives
    ``(t^k + 1) * f_(k,l)``. Registered factorizations of ``f_(k,l)``
    itself are checked as well.
    """
    require(0 < l < k, "0 < l < k")
    f = pair_poly(k, l)
    checks = {
        "A": teichmuller_poly(2 * k + l, 2 * k + 2 * l, k + 2 * l)
        == _cyclotomic_plus(k + l) * f,
        "P": teichmuller_poly(k, 2 * k + 2 * l, l) == _cyclotomic_plus(k + l) * f,
        "R": teichmuller_poly(k + l, k - l, -k) == _cyclotomic_plus(k) * f,
    }
    factors = KNOWN_FACTORIZATIONS.get((k, l))
    if factors is not None:
        product = IntPolynomial.monomial(0)
        for factor in factors:
            product = product * factor
        checks["registered"] = product == f
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        logger.warning(f"factorization mismatch for ({k},{l}): {', '.join(failed)}")
    return not failed


class Comparison(str, Enum):
    """Order of two largest real roots."""

    LESS = "Less"
    GREATER = "Greater"
    EQUAL = "Equal"


@dataclass(frozen=True)
class RootCertificate:
    """
    Why a bracket contains the largest real root.

    Attributes:
        method: ``"sign-variations"`` (two coefficient sign changes with
            p(0) > 0 > p(1), so exactly one root exceeds 1), ``"descartes"``
            (one sign variation of p(x + witness)) or ``"exact-isolation"``
            (sympy isolating interval)
        witness: Point above which the polynomial has exactly one real root
        sign_lo: Sign of the polynomial at the lower end of the bracket
        sign_hi: Sign of the polynomial at the upper end of the bracket
    """

    method: str
    witness: Fraction
    sign_lo: int
    sign_hi: int


@dataclass(frozen=True)
class RootInterval:
    """
    Certified dyadic bracket ``[lo_mantissa, hi_mantissa] / 2**bits``.

    ``lo == hi`` only for a root that is itself dyadic.
    """

    lo_mantissa: int
    hi_mantissa: int
    bits: int
    certificate: RootCertificate

    @property
    def lo(self) -> Fraction:
        return Fraction(self.lo_mantissa, 1 << self.bits)

    @property
    def hi(self) -> Fraction:
        return Fraction(self.hi_mantissa, 1 << self.bits)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def exact(self) -> bool:
        return self.lo_mantissa == self.hi_mantissa

    def contains(self, value: Fraction) -> bool:
        return self.lo <= value <= self.hi

    def __str__(self) -> str:
        return f"[{float(self.lo):.12f}, {float(self.hi):.12f}]"


class _NeedsExactIsolation(Exception):
    pass


def _is_checkpoint(bits: int) -> bool:
    return bits >= 4 and bits & (bits - 1) == 0


class _RootIsolator:
    """Mutable bisection state for one polynomial; guarded by its own lock."""

    def __init__(self, polynomial: IntPolynomial):
        require(polynomial.degree >= 1, "degree >= 1", "constant polynomial has no roots")
        if polynomial.leading_coefficient < 0:
            polynomial = -polynomial
        self.polynomial = polynomial
        self.lock = threading.RLock()
        self.lo = 1
        self.hi = self._upper_integer()
        self.bits = 0
        self.certificate: Optional[RootCertificate] = None
        # exact-isolation rule: square-free part, isolating interval, sign at its top
        self._sqf: Optional[IntPolynomial] = None
        self._isolation: Optional[Tuple[Fraction, Fraction]] = None
        self._sign_top = 0
        self._single_above_one = False

    def _upper_integer(self) -> int:
        p = self.polynomial
        tail = max((abs(c) for e, c in p.terms if e != p.degree), default=0)
        return 2 + tail // p.leading_coefficient

    def _reset(self) -> None:
        self.lo, self.hi, self.bits = 1, self._upper_integer(), 0

    def _side(self, mantissa: int, bits: int) -> int:
        """+1 if the root lies above the point, -1 if below, 0 if it is the point."""
        point = Fraction(mantissa, 1 << bits)
        if self._isolation is not None:
            a, b = self._isolation
            if a == b:
                return (point < a) - (point > a)
            if point <= a:
                return 1
            if point >= b:
                return -1
            assert self._sqf is not None
            s = self._sqf.sign_at_fraction(point)
            if s == 0:
                return 0
            return -1 if s == self._sign_top else 1
        witness = self.certificate.witness if self.certificate else Fraction(1)
        if point <= witness:
            return 1
        s = self.polynomial.sign_at(mantissa, bits)
        if s == 0:
            if self._single_above_one:
                return 0
            if self.polynomial.descartes_bound(mantissa, bits, skip_constant=True) == 0:
                return 0
            raise _NeedsExactIsolation(f"root at {point} below the largest")
        return 1 if s < 0 else -1

    def _integer_phase(self) -> None:
        while self.bits == 0 and self.hi - self.lo > 1:
            mid = (self.lo + self.hi) // 2
            side = self._side(mid, 0)
            if side > 0:
                self.lo = mid
            elif side < 0:
                self.hi = mid
            else:
                self.lo = self.hi = mid

    def _bisect(self) -> None:
        if self.lo == self.hi:
            return
        lo, hi, bits = 2 * self.lo, 2 * self.hi, self.bits + 1
        mid = lo + 1
        side = self._side(mid, bits)
        if side > 0:
            lo = mid
        elif side < 0:
            hi = mid
        else:
            lo = hi = mid
        self.lo, self.hi, self.bits = lo, hi, bits

    def _unique_root_above_one(self) -> bool:
        """
        Whether exactly one real root exceeds 1, decided from the coefficients.

        With two sign changes there are at most two positive roots; p(0) > 0,
        p(1) < 0 and a positive leading coefficient place one in (0, 1) and
        one above 1. Dilatation polynomials all have this shape, whatever
        their degree, so no Taylor shift is needed.
        """
        p = self.polynomial
        constant = p.terms[0]
        return (
            constant[0] == 0
            and constant[1] > 0
            and p.sign_at(1, 0) < 0
            and p.sign_variations() == 2
        )

    def _record(self, method: str, witness: Fraction) -> None:
        p = self.polynomial
        self.certificate = RootCertificate(
            method=method,
            witness=witness,
            sign_lo=p.sign_at(self.lo, self.bits),
            sign_hi=p.sign_at(self.hi, self.bits),
        )

    def _certify_descartes(self, budget: int) -> None:
        """One escalation attempt; raises PrecisionExhausted when the budget runs out."""
        p = self.polynomial
        self._integer_phase()
        while True:
            if self.lo == self.hi:
                self._record("descartes", Fraction(self.lo, 1 << self.bits))
                return
            if _is_checkpoint(self.bits) or self.bits >= budget:
                if (
                    p.sign_at(self.lo, self.bits) < 0
                    and p.sign_at(self.hi, self.bits) > 0
                    and p.descartes_bound(self.lo, self.bits) == 1
                ):
                    self._record("descartes", Fraction(self.lo, 1 << self.bits))
                    logger.debug(f"certified {p} at {self.bits} bits")
                    return
                if self.bits >= 64 and p.descartes_bound(self.hi, self.bits) > 0:
                    raise _NeedsExactIsolation("sign variations above the bracket")
                if self.bits >= budget:
                    raise PrecisionExhausted(
                        f"no certificate at {self.bits} bits", best=self.snapshot(unchecked=True)
                    )
            self._bisect()

    def _certify_exact(self) -> None:
        """Isolate the largest root of the square-free part with sympy."""
        p = self.polynomial
        logger.warning(f"falling back to exact isolation for {p}")
        sqf_sympy = p.to_sympy().sqf_part()
        intervals = sqf_sympy.intervals(inf=1)
        above_one = [
            (Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q)))
            for (a, b), _ in intervals
            if b > 1
        ]
        if not above_one:
            raise DomainError(f"{p} has no real root > 1", "largest root > 1")
        a, b = max(above_one, key=lambda ab: ab[1])
        sqf = IntPolynomial.from_sympy(sqf_sympy)
        if sqf.leading_coefficient < 0:
            sqf = -sqf
        self._sqf = sqf
        sign_top = sqf.sign_at_fraction(b)
        if a != b and sign_top == 0:
            a = b
        self._isolation = (a, b)
        self._sign_top = sign_top
        self.certificate = None
        self._reset()
        self._integer_phase()
        while self.lo != self.hi and (
            Fraction(self.lo, 1 << self.bits) < a or Fraction(self.hi, 1 << self.bits) > b
        ) and self.bits < 4 * max(64, b.denominator.bit_length(), a.denominator.bit_length()):
            self._bisect()
        self._record("exact-isolation", a)

    def certify(self, escalation: EscalationHandler) -> None:
        """Certify the current cell, escalating precision and falling back to sympy."""
        if self.certificate is not None:
            return
        if self.polynomial.sign_at(1, 0) >= 0:
            self._certify_exact()
            return
        if self._unique_root_above_one():
            self._single_above_one = True
            self._integer_phase()
            self._record("sign-variations", Fraction(1))
            logger.debug(f"certified {self.polynomial} by its sign pattern")
            return
        try:
            escalation.execute(self._certify_descartes, what=f"isolation of {self.polynomial}")
        except (_NeedsExactIsolation, EscalationError) as e:
            logger.debug(f"descartes certification failed: {e}")
            self._reset()
            self._certify_exact()

    def restore(self, lo: int, hi: int, bits: int) -> bool:
        """Adopt a cached cell if it re-certifies; returns whether it did."""
        p = self.polynomial
        if not (hi == lo + 1 and bits >= 0 and lo > (1 << bits)):
            return False
        if p.sign_at(lo, bits) >= 0 or p.sign_at(hi, bits) <= 0:
            return False
        if self._unique_root_above_one():
            self._single_above_one = True
            self.lo, self.hi, self.bits = lo, hi, bits
            self._record("sign-variations", Fraction(1))
            return True
        if p.descartes_bound(lo, bits) != 1:
            return False
        self.lo, self.hi, self.bits = lo, hi, bits
        self._record("descartes", Fraction(lo, 1 << bits))
        return True

    def refine(self, bits: int) -> None:
        while self.bits < bits and self.lo != self.hi:
            self._bisect()

    def snapshot(self, unchecked: bool = False) -> RootInterval:
        certificate = self.certificate
        if certificate is None:
            if not unchecked:
                raise AssertionError("snapshot of an uncertified bracket")
            certificate = RootCertificate("none", Fraction(0), 0, 0)
        return RootInterval(self.lo, self.hi, self.bits, certificate)

    def interval(self, width_bits: int) -> RootInterval:
        """The aligned cell of width 2**-width_bits containing the root."""
        self.refine(width_bits)
        if self.lo == self.hi or self.bits == width_bits:
            return self.snapshot()
        shift = self.bits - width_bits
        lo = self.lo >> shift
        hi = lo + 1
        assert self.certificate is not None
        p = self.polynomial
        certificate = RootCertificate(
            method=self.certificate.method,
            witness=self.certificate.witness,
            sign_lo=p.sign_at(lo, width_bits),
            sign_hi=p.sign_at(hi, width_bits),
        )
        return RootInterval(lo, hi, width_bits, certificate)


def _separate(a: RootInterval, b: RootInterval) -> Optional[Comparison]:
    if a.exact and b.exact and a.lo == b.lo:
        return Comparison.EQUAL
    if a.hi <= b.lo:
        return Comparison.LESS
    if b.hi <= a.lo:
        return Comparison.GREATER
    return None


def _brackets_root_of(poly: IntPolynomial, cell: RootInterval) -> bool:
    if cell.exact:
        return poly.sign_at(cell.lo_mantissa, cell.bits) == 0
    return poly.sign_at(cell.lo_mantissa, cell.bits) * poly.sign_at(cell.hi_mantissa, cell.bits) < 0


class RootEngine:
    """
    Certified largest-root computations with an in-process memo.

    The memo keeps the finest bracket per polynomial; an optional
    RootCache persists brackets between runs.

    Example:
        >>> engine = RootEngine()
        >>> engine.largest_real_root(pair_poly(1, 0), width_bits=20).lo > 2
        True
    """

    def __init__(
        self,
        precision: Optional[PrecisionConfig] = None,
        cache: Optional["RootCache"] = None,
    ):
        """
        Initialize the engine.

        Args:
            precision: Width default and precision ladder
            cache: Persistent bracket store, or None for memory only
        """
        self.precision = precision or PrecisionConfig()
        self.cache = cache
        self._escalation = EscalationHandler(EscalationConfig.from_precision(self.precision))
        self._isolators: Dict[str, _RootIsolator] = {}
        self._lock = threading.Lock()

    def _certified(self, polynomial: IntPolynomial) -> _RootIsolator:
        normalized = -polynomial if polynomial.leading_coefficient < 0 else polynomial
        key = normalized.canonical()
        with self._lock:
            isolator = self._isolators.get(key)
            if isolator is None:
                isolator = _RootIsolator(normalized)
                self._isolators[key] = isolator
        with isolator.lock:
            if isolator.certificate is None:
                entry = self.cache.get(key) if self.cache is not None else None
                if entry is not None and isolator.restore(*entry):
                    logger.debug(f"cache hit for {normalized}")
                else:
                    isolator.certify(self._escalation)
        return isolator

    def _remember(self, isolator: _RootIsolator) -> None:
        if self.cache is not None and isolator.certificate is not None:
            cacheable = isolator.certificate.method in ("descartes", "sign-variations")
            if cacheable and isolator.lo != isolator.hi:
                self.cache.put(
                    isolator.polynomial.canonical(), isolator.lo, isolator.hi, isolator.bits
                )

    def largest_real_root(
        self, polynomial: IntPolynomial, width_bits: Optional[int] = None
    ) -> RootInterval:
        """
        Certified bracket of the largest real root.

        Args:
            polynomial: Integer polynomial with a real root > 1
            width_bits: Bracket width is 2**-width_bits; defaults to the config

        Raises:
            DomainError: If there is no real root > 1
            EscalationError: If the width lies beyond the precision cap
        """
        width = self.precision.merge_width(width_bits)
        isolator = self._certified(polynomial)
        with isolator.lock:
            if width > self.precision.cap_bits:
                isolator.refine(self.precision.cap_bits)
                raise EscalationError(
                    f"width 2^-{width} is beyond the cap of {self.precision.cap_bits} bits",
                    best=isolator.snapshot(),
                    bits=self.precision.cap_bits,
                )
            result = isolator.interval(width)
            self._remember(isolator)
        return result

    def _fine(self, isolator: _RootIsolator, bits: int) -> RootInterval:
        with isolator.lock:
            isolator.refine(bits)
            self._remember(isolator)
            return isolator.snapshot()

    def shares_largest_root(self, p: IntPolynomial, q: IntPolynomial) -> bool:
        """Whether gcd(p, q) vanishes at the largest real root of both."""
        a = self._fine(self._certified(p), self.precision.start_bits)
        b = self._fine(self._certified(q), self.precision.start_bits)
        common = sympy.gcd(p.to_sympy(), q.to_sympy())
        if common.degree() < 1:
            return False
        common_sqf = IntPolynomial.from_sympy(common.sqf_part())
        return _brackets_root_of(common_sqf, a) and _brackets_root_of(common_sqf, b)

    def compare_roots(self, p: IntPolynomial, q: IntPolynomial) -> Comparison:
        """
        Order the largest real roots of two polynomials.

        Raises:
            UndecidableComparisonError: If the brackets still overlap at the
                precision cap and the polynomials share no common root there
        """
        iso_p, iso_q = self._certified(p), self._certified(q)
        if iso_p is iso_q:
            return Comparison.EQUAL
        gcd_checked = []

        def attempt(bits: int) -> Comparison:
            a, b = self._fine(iso_p, bits), self._fine(iso_q, bits)
            verdict = _separate(a, b)
            if verdict is not None:
                return verdict
            if not gcd_checked:
                gcd_checked.append(True)
                if self.shares_largest_root(p, q):
                    return Comparison.EQUAL
            raise PrecisionExhausted(f"brackets overlap at {bits} bits", best=(a, b))

        try:
            return self._escalation.execute(attempt, what=f"comparison of {p} and {q}")
        except EscalationError as e:
            raise UndecidableComparisonError(
                f"largest roots of {p} and {q} not separated", best=e.best, bits=e.bits
            ) from e

    def root_log(self, root: RootInterval, bits: Optional[int] = None) -> Tuple[Fraction, Fraction]:
        """Certified enclosure of ``log`` over a root bracket."""
        return root_log(root, bits)


_IV_LOCK = threading.RLock()


@contextmanager
def interval_precision(bits: int) -> Iterator[None]:
    """Run mpmath interval arithmetic at ``bits`` of working precision."""
    with _IV_LOCK:
        saved = iv.prec
        iv.prec = bits
        try:
            yield
        finally:
            iv.prec = saved


def iv_dyadic(mantissa: int, bits: int):  # type: ignore[no-untyped-def]
    """Enclosure of ``mantissa / 2**bits``."""
    return iv.mpf(mantissa) / iv.mpf(2) ** bits


def iv_rational(value: Fraction):  # type: ignore[no-untyped-def]
    """Enclosure of a rational number."""
    return iv.mpf(value.numerator) / iv.mpf(value.denominator)


def root_to_iv(root: RootInterval):  # type: ignore[no-untyped-def]
    """Enclosure of a whole root bracket."""
    lo = iv_dyadic(root.lo_mantissa, root.bits)
    hi = iv_dyadic(root.hi_mantissa, root.bits)
    return lo + (hi - lo) * iv.mpf([0, 1])


def _raw_to_fraction(raw: Tuple[int, int, int, int]) -> Fraction:
    sign, mantissa, exponent, _ = raw
    value = Fraction(int(mantissa)) * Fraction(2) ** int(exponent)
    return -value if sign else value


def iv_bounds(value) -> Tuple[Fraction, Fraction]:  # type: ignore[no-untyped-def]
    """Exact rational endpoints of an mpmath interval."""
    lo_raw, hi_raw = value._mpi_
    return _raw_to_fraction(lo_raw), _raw_to_fraction(hi_raw)


def root_log(root: RootInterval, bits: Optional[int] = None) -> Tuple[Fraction, Fraction]:
    """
    Certified enclosure of the natural log over a root bracket.

    Args:
        root: Bracket with positive endpoints
        bits: Working precision; defaults to the bracket's bits plus a margin
    """
    require(root.lo > 0, "lo > 0", "log needs a positive bracket")
    with interval_precision(bits or max(64, root.bits + 16)):
        return iv_bounds(iv.log(root_to_iv(root)))


_default_engine: Optional[RootEngine] = None
_default_lock = threading.Lock()


def get_engine() -> RootEngine:
    """The process-wide engine used by the module-level functions."""
    global _default_engine
    with _default_lock:
        if _default_engine is None:
            _default_engine = RootEngine()
        return _default_engine


def set_engine(engine: Optional[RootEngine]) -> None:
    """Replace the process-wide engine; None restores a fresh default."""
    global _default_engine
    with _default_lock:
        _default_engine = engine


def largest_real_root(p: IntPolynomial, width_bits: Optional[int] = None) -> RootInterval:
    """Certified bracket of the largest real root (see RootEngine.largest_real_root)."""
    return get_engine().largest_real_root(p, width_bits)


def compare_roots(p: IntPolynomial, q: IntPolynomial) -> Comparison:
    """Order the largest real roots of ``p`` and ``q`` (see RootEngine.compare_roots)."""
    return get_engine().compare_roots(p, q)
