"""Tests for report rendering."""

from fractions import Fraction

import pytest

from magic_fiber.fillings import Family, FamilyClass
from magic_fiber.homology import FiberedClass
from magic_fiber.polyroot import pair_poly, teichmuller_poly
from magic_fiber.report import (
    CSV_COLUMNS,
    class_document,
    decimal_ceil,
    decimal_floor,
    digits_for_width,
    dumps,
    family_document,
    loads,
    render_interval,
    table_csv,
    table_document,
)
from magic_fiber.tables import min_lambda


class TestDecimalRendering:
    """Test suite for outward-rounded decimals."""

    def test_digits_for_width(self):
        """Test the digit count for a width of 2**-n."""
        assert digits_for_width(40) == 15
        assert digits_for_width(10) == 6

    def test_floor_and_ceil(self):
        """Test rounding toward and away from zero on both signs."""
        assert decimal_floor(Fraction(1, 3), 4) == "0.3333"
        assert decimal_ceil(Fraction(1, 3), 4) == "0.3334"
        assert decimal_floor(Fraction(-1, 3), 2) == "-0.34"
        assert decimal_ceil(Fraction(-1, 3), 2) == "-0.33"
        assert decimal_ceil(Fraction(5, 2), 0) == "3"

    def test_render_interval(self):
        """Test the lo/hi/radius triple."""
        assert render_interval(Fraction(1, 3), Fraction(1, 3), 4) == {
            "lo": "0.3333",
            "hi": "0.3334",
            "radius": "0.0001",
        }

    def test_rendering_encloses_bracket(self, engine):
        """Test that the printed pair contains the certified bracket."""
        root = engine.largest_real_root(pair_poly(9, 2))
        rendered = render_interval(root.lo, root.hi, digits_for_width(30))
        assert Fraction(rendered["lo"]) <= root.lo
        assert Fraction(rendered["hi"]) >= root.hi
        midpoint = (Fraction(rendered["lo"]) + Fraction(rendered["hi"])) / 2
        assert midpoint - Fraction(rendered["radius"]) <= root.lo
        assert midpoint + Fraction(rendered["radius"]) >= root.hi


class TestDocuments:
    """Test suite for report documents."""

    def test_class_document(self, engine):
        """Test the invariant report of (18, 17, 7)."""
        c = FiberedClass(18, 17, 7)
        poly = teichmuller_poly(18, 17, 7)
        document = class_document(c, engine.largest_real_root(poly), poly, 30)
        assert document["genus"] == 8
        assert document["norm"] == 28
        assert document["boundary"] == {"alpha": 6, "beta": 1, "gamma": 7}
        assert document["slopes"] == {"alpha": "-4/3", "beta": "-25/17", "gamma": "-5"}
        assert document["singularity_data"] == [1] * 6 + [15] + [1] * 7
        assert document["orientable"] is False
        assert document["dilatation"]["lo"].startswith("1.1040")

    def test_family_document(self, engine):
        """Test the report of (A, 9, 2)."""
        fc = FamilyClass(Family.A, 9, 2)
        poly = pair_poly(9, 2)
        document = family_document(fc, engine.largest_real_root(poly), poly, 30)
        assert document["genus"] == 7
        assert document["orientable"] is True
        assert document["one_prong"] is False
        assert document["hyperbolicity"]["status"] == "Hyperbolic"
        assert document["fibered_class"] == {"x": 20, "y": 22, "z": 13}

    def test_round_trip_is_byte_identical(self, engine):
        """Test that a parsed report re-emits to the same text."""
        c = FiberedClass(4, 2, -3)
        poly = teichmuller_poly(4, 2, -3)
        text = dumps(class_document(c, engine.largest_real_root(poly), poly, 30))
        assert dumps(loads(text)) == text
        assert text.endswith("}\n")
        assert text.index('"boundary"') < text.index('"command"') < text.index('"genus"')

    def test_table_document(self, engine):
        """Test JSON rows, including an empty table."""
        rows = [min_lambda("-3/2", g, True, engine) for g in (4, 5)]
        document = table_document(rows, 30)
        empty, full = document["rows"]
        assert empty["empty"] is True and empty["lambda"] is None and empty["argmins"] == []
        assert full["family"] == "A"
        assert full["argmins"][0] in ({"k": 5, "l": 2}, {"k": 7, "l": 4})


class TestCsv:
    """Test suite for CSV tables."""

    def test_header_and_rows(self, engine):
        """Test the header row, CRLF endings and an empty row."""
        rows = [min_lambda("-3/2", 5, False, engine), min_lambda("-3/2", 4, True, engine)]
        text = table_csv(rows, 30)
        lines = text.split("\r\n")
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert lines[1].startswith("5,-3/2,A,7,1,1.1487")
        assert lines[1].endswith(",false,7")
        assert lines[2] == "4,-3/2,,,,,,true,0"
        assert lines[3] == ""

    @pytest.mark.parametrize("g", [3, 4])
    def test_every_argmin_gets_a_row(self, engine, g):
        """Test one CSV row per argmin."""
        row = min_lambda("-1/2", g, False, engine)
        text = table_csv([row], 30)
        assert len(text.strip().split("\r\n")) == 1 + len(row.argmins)
