"""Tests for certified largest roots and root comparison."""

from fractions import Fraction

import pytest

from magic_fiber.config import PrecisionConfig
from magic_fiber.exceptions import DomainError, EscalationError, UndecidableComparisonError
from magic_fiber.polynomial import IntPolynomial
from magic_fiber.polyroot import (
    KNOWN_FACTORIZATIONS,
    Comparison,
    RootEngine,
    RootInterval,
    factor_check,
    get_engine,
    largest_real_root,
    pair_poly,
    root_log,
    set_engine,
    teichmuller_poly,
)


def assert_near(root: RootInterval, printed: str, tolerance: Fraction) -> None:
    value = Fraction(printed)
    assert root.lo - tolerance <= value <= root.hi + tolerance, f"{printed} vs {root}"


class TestPolynomials:
    """Test suite for the specialized polynomials."""

    def test_pair_poly(self):
        """Test f_(k,l) = t^2k - t^(k+l) - t^k - t^(k-l) + 1."""
        assert str(pair_poly(1, 0)) == "t^2 - 3t + 1"
        assert str(pair_poly(4, 1)) == "t^8 - t^5 - t^4 - t^3 + 1"

    def test_teichmuller_poly(self):
        """Test the specialization at the class (1, 1, 0)."""
        assert teichmuller_poly(1, 1, 0) == IntPolynomial.from_terms([(2, 1), (1, -4), (0, 1)])

    def test_teichmuller_poly_outside_cone(self):
        """Test that classes outside the cone are rejected."""
        with pytest.raises(DomainError) as exc_info:
            teichmuller_poly(1, 0, 0)

        assert exc_info.value.inequality == "y > 0"

    @pytest.mark.parametrize("k,l", [(0, 0), (3, 3), (3, -3)])
    def test_pair_poly_domain(self, k, l):
        """Test that out-of-range pairs are rejected."""
        with pytest.raises(DomainError):
            pair_poly(k, l)

    @pytest.mark.parametrize("k,l", [(2, 1), (4, 1), (5, 3), (9, 2), (14, 3), (73, 13)])
    def test_factor_check(self, k, l):
        """Test the family factorizations of the specialized polynomial."""
        assert factor_check(k, l)

    def test_factor_check_all_small_pairs(self):
        """Test the factorizations for every 0 < l < k <= 25."""
        failed = [(k, l) for k in range(2, 26) for l in range(1, k) if not factor_check(k, l)]
        assert failed == []

    def test_registered_factorization(self):
        """Test that f_(9,2) has a cyclotomic quartic factor."""
        quartic, rest = KNOWN_FACTORIZATIONS[(9, 2)]
        assert quartic.degree == 4
        assert rest.degree == 14
        assert quartic * rest == pair_poly(9, 2)

    def test_factor_check_domain(self):
        """Test that factor_check needs 0 < l < k."""
        with pytest.raises(DomainError):
            factor_check(2, 2)


class TestLargestRealRoot:
    """Test suite for RootEngine.largest_real_root."""

    def test_golden_bracket(self, engine):
        """Test the bracket of (3 + sqrt 5) / 2."""
        root = engine.largest_real_root(pair_poly(1, 0), width_bits=20)
        assert root.bits == 20
        assert root.hi_mantissa == root.lo_mantissa + 1
        assert root.lo < Fraction(2618034, 10**6)
        assert root.hi > Fraction(2618033, 10**6)
        assert root.certificate.sign_lo == -1
        assert root.certificate.sign_hi == 1

    def test_silver_bracket(self, engine):
        """Test that f_(1,1,0) has largest root 2 + sqrt 3."""
        root = engine.largest_real_root(teichmuller_poly(1, 1, 0))
        assert_near(root, "3.7320508", Fraction(1, 10**7))

    @pytest.mark.parametrize(
        "k,l,printed",
        [
            (2, 1, "1.72208"),
            (3, 1, "1.40127"),
            (4, 1, "1.28064"),
            (6, 1, "1.17628"),
            (7, 1, "1.14879"),
            (8, 1, "1.12876"),
            (9, 1, "1.11350"),
            (9, 2, "1.11548"),
            (5, 2, "1.23039"),
            (5, 3, "1.26123"),
            (8, 4, "1.14555"),
            (3, 2, "1.50614"),
            (14, 3, "1.07266"),
        ],
    )
    def test_printed_values(self, engine, k, l, printed):
        """Test brackets against five-digit approximations."""
        root = engine.largest_real_root(pair_poly(k, l))
        assert root.width <= Fraction(1, 10**5)
        assert_near(root, printed, Fraction(1, 10**5))

    @pytest.mark.parametrize(
        "coordinates,printed", [((18, 17, 7), "1.10403"), ((27, 21, 8), "1.07169")]
    )
    def test_special_classes(self, engine, coordinates, printed):
        """Test the two small-genus classes of N."""
        root = engine.largest_real_root(teichmuller_poly(*coordinates))
        assert_near(root, printed, Fraction(1, 10**5))

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "k,l,printed",
        [
            (73, 13, "1.013457447"),
            (72, 1, "1.013457858"),
            (125, 17, "1.007791640"),
            (124, 1, "1.007791898"),
        ],
    )
    def test_high_precision_values(self, k, l, printed):
        """Test brackets narrower than 1e-9 against nine-digit approximations."""
        engine = RootEngine(PrecisionConfig(width_bits=34))
        root = engine.largest_real_root(pair_poly(k, l))
        assert root.width <= Fraction(1, 10**9)
        assert_near(root, printed, Fraction(1, 10**9))

    def test_refinement_is_nested(self, engine):
        """Test that a narrower request lies inside the wider bracket."""
        wide = engine.largest_real_root(pair_poly(5, 2), width_bits=10)
        narrow = engine.largest_real_root(pair_poly(5, 2), width_bits=40)
        assert wide.lo <= narrow.lo and narrow.hi <= wide.hi

    def test_sign_pattern_certificate(self, engine):
        """Test that dilatation polynomials are certified from their sign pattern."""
        root = engine.largest_real_root(pair_poly(5, 2))
        assert root.certificate.method == "sign-variations"
        assert root.certificate.sign_lo == -1
        assert root.certificate.sign_hi == 1

    def test_high_degree_pair_poly(self, engine):
        """Test a degree-6400 polynomial without any Taylor shift."""
        p = pair_poly(3200, 1)
        root = engine.largest_real_root(p)
        assert root.certificate.method == "sign-variations"
        assert p.sign_at(root.lo_mantissa, root.bits) < 0 < p.sign_at(root.hi_mantissa, root.bits)
        assert 1 < root.lo < Fraction(1001, 1000)

    def test_negative_constant_uses_descartes(self, engine):
        """Test that t^2 - t - 1 keeps the shifted Descartes certificate."""
        p = IntPolynomial.from_terms([(2, 1), (1, -1), (0, -1)])
        root = engine.largest_real_root(p)
        assert root.certificate.method == "descartes"
        assert_near(root, "1.6180340", Fraction(1, 10**7))

    def test_smaller_roots_use_exact_isolation(self, engine):
        """Test a polynomial that is positive at 1 and has two roots above it."""
        p = IntPolynomial.from_terms([(2, 1), (1, -5), (0, 6)])
        assert engine.largest_real_root(p).contains(Fraction(3))

    def test_no_root_above_one(self, engine):
        """Test that t + 1 has no largest root to bracket."""
        with pytest.raises(DomainError):
            engine.largest_real_root(IntPolynomial.from_terms([(1, 1), (0, 1)]))

    def test_width_beyond_cap(self):
        """Test that a width beyond the precision cap raises EscalationError."""
        engine = RootEngine(PrecisionConfig(width_bits=40, start_bits=64, cap_bits=64))
        with pytest.raises(EscalationError) as exc_info:
            engine.largest_real_root(pair_poly(2, 1), width_bits=100)

        assert isinstance(exc_info.value.best, RootInterval)
        assert exc_info.value.bits == 64

    def test_module_level_engine(self):
        """Test the process-wide engine helpers."""
        custom = RootEngine(PrecisionConfig(width_bits=12))
        set_engine(custom)
        assert get_engine() is custom
        assert largest_real_root(pair_poly(2, 1)).bits == 12


class TestCompareRoots:
    """Test suite for RootEngine.compare_roots."""

    @pytest.mark.parametrize("a,b", [((3, 1), (4, 3)), ((6, 1), (7, 4))])
    def test_equal_roots(self, engine, a, b):
        """Test equalities certified through a common factor."""
        assert engine.compare_roots(pair_poly(*a), pair_poly(*b)) is Comparison.EQUAL
        assert engine.shares_largest_root(pair_poly(*a), pair_poly(*b))

    def test_strict_order(self, engine):
        """Test separated roots in both directions."""
        assert engine.compare_roots(pair_poly(9, 2), pair_poly(8, 1)) is Comparison.LESS
        assert engine.compare_roots(pair_poly(8, 1), pair_poly(9, 2)) is Comparison.GREATER
        assert engine.compare_roots(pair_poly(8, 4), pair_poly(7, 1)) is Comparison.LESS
        assert engine.compare_roots(pair_poly(10, 4), pair_poly(9, 1)) is Comparison.LESS

    def test_same_polynomial(self, engine):
        """Test that a polynomial equals itself up to sign."""
        p = pair_poly(5, 2)
        assert engine.compare_roots(p, p) is Comparison.EQUAL
        assert engine.compare_roots(p, -p) is Comparison.EQUAL

    @pytest.mark.slow
    @pytest.mark.parametrize("a,b", [((73, 13), (72, 1)), ((125, 17), (124, 1))])
    def test_close_roots(self, engine, a, b):
        """Test separations that need brackets narrower than 1e-6."""
        assert engine.compare_roots(pair_poly(*a), pair_poly(*b)) is Comparison.LESS

    def test_undecidable_at_cap(self):
        """Test roots closer than the cap with no common factor."""
        engine = RootEngine(PrecisionConfig(width_bits=8, start_bits=8, cap_bits=16))
        sqrt_two = IntPolynomial.from_terms([(2, 1), (0, -2)])
        decimal = IntPolynomial.from_terms([(1, 1000000), (0, -1414214)])
        with pytest.raises(UndecidableComparisonError) as exc_info:
            engine.compare_roots(sqrt_two, decimal)

        assert exc_info.value.bits == 16


class TestRootLog:
    """Test suite for root_log."""

    def test_log_of_golden_root(self, engine):
        """Test the enclosure of log((3 + sqrt 5) / 2)."""
        lo, hi = root_log(engine.largest_real_root(pair_poly(1, 0)))
        assert lo < hi
        assert lo <= Fraction(962425, 10**6)
        assert hi >= Fraction(962423, 10**6)
        assert hi - lo < Fraction(1, 10**8)

    def test_log_needs_positive_bracket(self):
        """Test that root_log rejects a non-positive bracket."""
        root = RootInterval(-1, 0, 0, None)
        with pytest.raises(DomainError):
            root_log(root)
