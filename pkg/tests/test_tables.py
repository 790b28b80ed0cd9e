"""Tests for minimal-dilatation tables, bounds, entropy scans and claim suites."""

import random
from fractions import Fraction

import pytest

from magic_fiber.config import EngineConfig
from magic_fiber.exceptions import DomainError, UnknownSuiteError
from magic_fiber.fillings import Family, FamilyClass
from magic_fiber.homology import FiberedClass, Slope
from magic_fiber.polyroot import Comparison, pair_poly
from magic_fiber.tables import (
    ClaimStatus,
    ClaimVerifier,
    EmptyTable,
    MinTableRow,
    as_family,
    bracket_all,
    candidate_set,
    compare_rows,
    concavity_check,
    delta_upper_bound,
    ent_face_scan,
    hironaka_bound,
    magic_ent_scan,
    min_lambda,
    normalized_entropy,
    printed_matches,
    verify_claims,
)


def classes(family, pairs):
    return [FamilyClass(family, k, l) for k, l in pairs]


class TestCandidates:
    """Test suite for candidate enumeration."""

    def test_as_family(self):
        """Test the accepted spellings of a filling."""
        assert as_family("-3/2") is Family.A
        assert as_family("p") is Family.P
        assert as_family(Slope.of(2, 1)) is Family.R
        with pytest.raises(DomainError):
            as_family("3")
        with pytest.raises(DomainError):
            as_family("abc")

    def test_candidate_set_genus_five(self):
        """Test the genus-5 candidates on N(-3/2)."""
        expected = classes(Family.A, [(5, 1), (5, 2), (5, 3), (5, 4), (7, 1), (7, 4), (7, 6)])
        assert candidate_set("-3/2", 5) == expected

    def test_candidate_set_drops_one_prong(self):
        """Test that 1-pronged classes are excluded."""
        assert candidate_set("-1/2", 3) == classes(Family.P, [(4, 3)])

    def test_candidate_set_orientable(self):
        """Test the orientable filter."""
        assert all(fc.k % 2 == 1 and fc.l % 2 == 0 for fc in candidate_set("-3/2", 7, True))
        assert candidate_set("-3/2", 4, orientable_only=True) == []

    def test_candidate_set_domain(self):
        """Test that genus below 2 is rejected."""
        with pytest.raises(DomainError) as exc_info:
            candidate_set("2", 1)

        assert exc_info.value.inequality == "g >= 2"


class TestMinLambda:
    """Test suite for min_lambda."""

    @pytest.mark.parametrize(
        "fill,g,orientable_only,argmin",
        [
            ("-3/2", 5, False, (7, 1)),
            ("-3/2", 6, False, (8, 1)),
            ("-3/2", 7, True, (9, 2)),
            ("-1/2", 3, False, (4, 3)),
        ],
    )
    def test_argmins(self, engine, fill, g, orientable_only, argmin):
        """Test the minimizing class of small-genus rows."""
        row = min_lambda(fill, g, orientable_only, engine)
        assert isinstance(row, MinTableRow)
        assert (row.argmin.k, row.argmin.l) == argmin
        assert row.root == engine.largest_real_root(pair_poly(*argmin))

    def test_row_metadata(self, engine):
        """Test the bookkeeping fields of a row."""
        row = min_lambda("-3/2", 5, engine=engine)
        assert row.genus == 5
        assert row.filling == Slope.of(-3, 2)
        assert row.candidates_examined == 7
        assert not row.empty

    def test_empty_table(self, engine):
        """Test that even genus has no orientable monodromy on N(-3/2)."""
        row = min_lambda("-3/2", 4, orientable_only=True, engine=engine)
        assert isinstance(row, EmptyTable)
        assert row.empty
        assert row.candidates_examined == 0

    def test_workers_do_not_change_results(self, engine):
        """Test that threaded bracketing gives the same row."""
        inline = min_lambda("2", 9, engine=engine)
        threaded = min_lambda("2", 9, engine=engine, workers=4)
        assert inline == threaded

    def test_bracket_all_keeps_order(self, engine):
        """Test that threaded bracketing keeps input order."""
        polys = [pair_poly(k, 1) for k in range(2, 9)]
        assert bracket_all(engine, polys, workers=3) == bracket_all(engine, polys)

    def test_compare_rows(self, engine):
        """Test ordering two rows and refusing empty ones."""
        a_row = min_lambda("-3/2", 5, engine=engine)
        p_row = min_lambda("-1/2", 5, engine=engine)
        assert compare_rows(a_row, p_row, engine) is Comparison.LESS
        with pytest.raises(DomainError):
            compare_rows(a_row, min_lambda("-3/2", 4, True, engine), engine)


class TestBounds:
    """Test suite for upper bounds."""

    @pytest.mark.parametrize(
        "g,orientable_only,expected",
        [
            (3, False, (4, 3)),
            (4, False, (5, 3)),
            (5, False, (6, 1)),
            (8, False, (9, 1)),
            (2, False, None),
            (7, True, (8, 3)),
            (8, True, (8, 1)),
            (11, True, (12, 1)),
            (12, True, None),
        ],
    )
    def test_hironaka_bound(self, g, orientable_only, expected):
        """Test the earlier bound by residue of g mod 6."""
        assert hironaka_bound(g, orientable_only) == expected

    def test_genus_eight_bound_uses_special_class(self, engine):
        """Test that the class (18, 17, 7) beats the tables at genus 8."""
        bound = delta_upper_bound(8, engine=engine)
        assert "(18,17,7)" in bound.source
        assert bound.baseline == (9, 1)
        assert bound.baseline_comparison is Comparison.LESS
        assert printed_matches(bound.root, "1.10403")
        assert len(bound.rows) == 3

    def test_genus_five_bound(self, engine):
        """Test that the genus-5 bound comes from N(-3/2)."""
        bound = delta_upper_bound(5, engine=engine)
        assert bound.source.startswith("min over N(-3/2)")
        assert bound.polynomial == pair_poly(7, 1)

    def test_tied_sources_are_all_kept(self, engine):
        """Test that an orientable genus-5 tie lists both minimizing tables."""
        bound = delta_upper_bound(5, orientable_only=True, engine=engine)
        assert "min over N(-3/2) at (A,7,4)" in bound.source
        assert "min over N(-1/2) at (P,6,1)" in bound.source
        assert bound.polynomial in (pair_poly(7, 4), pair_poly(6, 1))

    def test_bound_domain(self, engine):
        """Test that genus below 2 is rejected."""
        with pytest.raises(DomainError):
            delta_upper_bound(1, engine=engine)


class TestEntropy:
    """Test suite for the normalized-entropy scans."""

    def test_face_scan_minimum(self, engine):
        """Test that the face minimum sits at s = 0 with value 2 log((3 + sqrt 5) / 2)."""
        scan = ent_face_scan("-3/2", 5, engine)
        assert scan.minimizer.s == 0
        lo, hi = scan.minimizer.ent
        assert lo <= scan.expected_minimum[1] and scan.expected_minimum[0] <= hi
        assert Fraction("1.92484") < lo and hi < Fraction("1.92485")

    def test_face_scan_half(self, engine):
        """Test the value at s = 1/2, i.e. 4 log lambda_(2,1)."""
        scan = ent_face_scan("-3/2", 3, engine)
        (half,) = [p for p in scan.points if p.s == Fraction(1, 2)]
        assert Fraction("2.1740") < half.ent[0] and half.ent[1] < Fraction("2.1743")

    def test_face_scan_is_symmetric(self, engine):
        """Test that s and -s give the same entropy."""
        scan = ent_face_scan("2", 4, engine)
        values = {p.s: p.ent for p in scan.points}
        assert all(values[s] == values[-s] for s in values)

    def test_normalized_entropy(self, engine):
        """Test Ent(1, 1, 0) = 2 log(2 + sqrt 3)."""
        lo, hi = normalized_entropy(FiberedClass(1, 1, 0), engine=engine)
        assert Fraction("2.633915") < lo and hi < Fraction("2.633917")

    def test_magic_ent_scan(self, engine):
        """Test that (1, 1, 0) minimizes the normalized entropy on N."""
        scan = magic_ent_scan(3, engine)
        assert scan.minimizer.fibered == FiberedClass(1, 1, 0)
        lo, hi = scan.minimizer.ent
        assert lo <= scan.expected_minimum[1] and scan.expected_minimum[0] <= hi

    @pytest.mark.parametrize(
        "s1,s2,t",
        [
            (Fraction(-1, 2), Fraction(1, 2), Fraction(1, 2)),
            (Fraction(0), Fraction(2, 3), Fraction(1, 3)),
            (Fraction(-3, 4), Fraction(1, 5), Fraction(2, 5)),
        ],
    )
    def test_concavity(self, engine, s1, s2, t):
        """Test strict concavity of 1/Ent on the face."""
        assert concavity_check(s1, s2, t, engine)

    @pytest.mark.slow
    def test_concavity_random_triples(self, engine):
        """Test concavity on 100 random triples with small denominators."""
        rng = random.Random(5)

        def point():
            q = rng.randint(1, 12)
            return Fraction(rng.randint(-q + 1, q - 1), q)

        checked = 0
        while checked < 100:
            s1, s2 = point(), point()
            if s1 == s2:
                continue
            q = rng.randint(2, 6)
            t = Fraction(rng.randint(1, q - 1), q)
            assert concavity_check(s1, s2, t, engine), (s1, s2, t)
            checked += 1

    @pytest.mark.parametrize(
        "s1,s2,t",
        [
            (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)),
            (Fraction(-1, 2), Fraction(1, 2), Fraction(1)),
            (Fraction(-1), Fraction(1, 2), Fraction(1, 2)),
        ],
    )
    def test_concavity_domain(self, engine, s1, s2, t):
        """Test the preconditions of concavity_check."""
        with pytest.raises(DomainError):
            concavity_check(s1, s2, t, engine)


class TestVerification:
    """Test suite for the claim verification suites."""

    def test_unknown_suite(self, engine):
        """Test that unknown suites raise UnknownSuiteError."""
        with pytest.raises(UnknownSuiteError) as exc_info:
            verify_claims("bogus", engine=engine)

        assert "equalities" in exc_info.value.known

    def test_equalities(self, engine):
        """Test that both coincidences are certified."""
        report = verify_claims("equalities", engine=engine)
        assert report.passed
        assert report.count(ClaimStatus.PASS) == 2

    def test_printed_matches(self, engine):
        """Test the one-unit tolerance on printed approximations."""
        root = engine.largest_real_root(pair_poly(8, 1))
        assert printed_matches(root, "1.12876")
        assert not printed_matches(root, "1.12870")

    @pytest.mark.slow
    def test_inequalities_flag_one_claim(self, engine):
        """Test that exactly one printed inequality is flagged."""
        report = verify_claims("inequalities", engine=engine)
        assert report.passed
        assert [r.claim for r in report.flags] == ["compare-min(1)"]
        assert report.count(ClaimStatus.FAIL) == 0
        (flag,) = report.flags
        assert "certified lambda_(9,7) > lambda_(8,1)" in flag.detail
        assert [name for name, _ in flag.evidence] == ["lambda_(9,7)", "lambda_(8,1)"]

    def test_smallgenus(self, engine):
        """Test the genus-8 and genus-13 classes."""
        report = verify_claims("smallgenus", engine=engine)
        assert report.passed
        assert len(report.results) == 2

    @pytest.mark.slow
    def test_congruences(self, engine):
        """Test the congruence statements over a short genus range."""
        config = EngineConfig(genus_from=3, genus_to=16)
        report = verify_claims("congruences", config, engine)
        failures = [r.detail for r in report.results if r.status is ClaimStatus.FAIL]
        assert failures == []

    def test_step_lemmas(self, engine):
        """Test the auxiliary lemmas, which need no roots."""
        config = EngineConfig(genus_from=3, genus_to=40)
        report = verify_claims("step-lemmas", config, engine)
        assert report.passed
        claims = [r.claim for r in report.results]
        assert "genus-drop-residues" in claims
        assert "step1(1)[g=12]" in claims
        assert "step1(2)[g=14]" in claims

    @pytest.mark.slow
    def test_monotone(self, engine):
        """Test monotonicity and propagation on a small grid."""
        config = EngineConfig(monotone_k_max=8, propagation_k_max=6)
        assert verify_claims("monotone", config, engine).passed

    @pytest.mark.slow
    def test_monotone_full_grid(self, engine):
        """Test monotonicity for k <= 40 and propagation for k <= 30."""
        report = verify_claims("monotone", EngineConfig(), engine)
        assert report.passed
        assert [r.claim for r in report.results] == ["monotonicity[k<=40]", "propagation[k<=30]"]

    def test_asymptotic(self, engine):
        """Test the limits of k log lambda_(k,l) for l = 1..5."""
        report = verify_claims("asymptotic", EngineConfig(), engine)
        assert report.passed
        assert report.count(ClaimStatus.PASS) == len(report.results) == 5

    def test_nonmonotone(self, engine):
        """Test lambda_(g+2,4) < lambda_(g+1,1) for every genus from 6 to 50."""
        report = verify_claims("nonmonotone", EngineConfig(), engine)
        assert report.passed
        assert report.count(ClaimStatus.PASS) == len(report.results) == 45
        assert report.results[0].claim == "nonmonotone[g=6]"
        assert report.results[-1].claim == "nonmonotone[g=50]"

    def test_verifier_memoizes_rows(self, engine):
        """Test that rows are computed once per key."""
        verifier = ClaimVerifier(EngineConfig(genus_from=5, genus_to=5), engine)
        first = verifier._row(Family.A, 5, False)
        assert verifier._row(Family.A, 5, False) is first
