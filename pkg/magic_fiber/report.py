"""
Machine-readable reports.

Documents are plain dictionaries of strings, integers, booleans and lists,
so that a parsed report re-emits to the same bytes. Every certified value
is rendered as an outward-rounded decimal pair with a radius; no value is
ever printed without its bracket.
"""

import csv
import io
import json
import logging
import math
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .fillings import (
    FamilyClass,
    capped_orientable,
    capped_singularity_data,
    closed_genus,
    has_one_prong,
    hyperbolicity,
    one_cusp_filled_fiber,
    to_fibered_class,
)
from .homology import (
    FiberedClass,
    boundary_counts,
    boundary_slopes,
    fiber_type,
    orientable,
    singularity_data,
    thurston_norm,
)
from .polynomial import IntPolynomial
from .polyroot import RootInterval
from .tables import (
    ClaimResult,
    ClaimStatus,
    EntScan,
    MagicEntScan,
    MinTableRow,
    TableResult,
    UpperBound,
    VerificationReport,
)

try:
    import orjson
except ImportError:  # pragma: no cover - optional speedup
    orjson = None  # type: ignore[assignment]

logger = logging.getLogger(__name__)

Document = Dict[str, Any]

CSV_COLUMNS = (
    "g",
    "fill",
    "family",
    "k",
    "l",
    "lambda_lo",
    "lambda_hi",
    "orientable",
    "candidates_examined",
)


def digits_for_width(width_bits: int) -> int:
    """Decimal places needed to show a bracket of width 2**-width_bits, plus two guard digits."""
    return math.ceil(width_bits * math.log10(2)) + 2


def _format_scaled(scaled: int, digits: int) -> str:
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def decimal_floor(value: Fraction, digits: int) -> str:
    """Largest decimal with ``digits`` places not above ``value``."""
    scale = 10**digits
    return _format_scaled(math.floor(value * scale), digits)


def decimal_ceil(value: Fraction, digits: int) -> str:
    """Smallest decimal with ``digits`` places not below ``value``."""
    scale = 10**digits
    return _format_scaled(math.ceil(value * scale), digits)


def render_interval(lo: Fraction, hi: Fraction, digits: int) -> Dict[str, str]:
    """
    Render ``[lo, hi]`` as decimal strings that enclose it.

    The radius is half the width of the printed pair, rounded up, so
    ``[lo, hi]`` is also inside ``midpoint +- radius``.

    Args:
        lo: Lower endpoint
        hi: Upper endpoint
        digits: Decimal places

    Returns:
        Mapping with ``lo``, ``hi`` and ``radius``
    """
    scale = 10**digits
    lo_scaled = math.floor(lo * scale)
    hi_scaled = math.ceil(hi * scale)
    return {
        "lo": _format_scaled(lo_scaled, digits),
        "hi": _format_scaled(hi_scaled, digits),
        "radius": decimal_ceil(Fraction(hi_scaled - lo_scaled, 2 * scale), digits),
    }


def render_root(root: RootInterval, digits: int) -> Dict[str, str]:
    return render_interval(root.lo, root.hi, digits)


def dumps(document: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    if orjson is not None:
        text = orjson.dumps(document, option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2)
        return text.decode("utf-8") + "\n"
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    if orjson is not None:
        return orjson.loads(text)
    return json.loads(text)


def _triple(values: Sequence[Any]) -> Dict[str, Any]:
    return {"alpha": values[0], "beta": values[1], "gamma": values[2]}


def class_document(
    c: FiberedClass, root: RootInterval, polynomial: IntPolynomial, width_bits: int
) -> Document:
    """
    Full invariant report for a cone class of N.

    Raises:
        DomainError: If the class is outside the fibered cone
    """
    digits = digits_for_width(width_bits)
    fiber = fiber_type(c)
    data = singularity_data(c)
    return {
        "command": "class",
        "input": {"x": c.x, "y": c.y, "z": c.z},
        "norm": thurston_norm(c),
        "boundary": _triple(boundary_counts(c)),
        "slopes": _triple([str(s) for s in boundary_slopes(c)]),
        "genus": fiber.genus,
        "fiber": str(fiber),
        "singularity_data": list(data.data(include_regular=False)),
        "prongs": list(data.prong_counts()),
        "one_prong": data.has_one_prong,
        "orientable": orientable(c),
        "polynomial": str(polynomial),
        "dilatation": render_root(root, digits),
        "width_bits": width_bits,
        "provenance": [
            "norm and boundary counts from the face x + y - z of the Thurston norm ball",
            "prongs from the boundary slopes of the fiber",
            "dilatation as the largest root of the Teichmuller polynomial",
        ],
    }


def family_document(
    fc: FamilyClass, root: RootInterval, polynomial: IntPolynomial, width_bits: int
) -> Document:
    """Invariant report for a family class, with the 1-prong and hyperbolicity verdicts."""
    digits = digits_for_width(width_bits)
    fibered = to_fibered_class(fc)
    one_cusp = one_cusp_filled_fiber(fc)
    verdict = hyperbolicity(fc)
    data = capped_singularity_data(fc)
    return {
        "command": "family",
        "input": {"family": fc.family.value, "k": fc.k, "l": fc.l},
        "fill": str(fc.family.slope),
        "fibered_class": {"x": fibered.x, "y": fibered.y, "z": fibered.z},
        "genus": closed_genus(fc),
        "one_cusp_fiber": {
            "genus": one_cusp.genus,
            "boundary": _triple([one_cusp.b_alpha, one_cusp.b_beta, one_cusp.b_gamma]),
        },
        "singularity_data": list(data.data(include_regular=False)),
        "one_prong": has_one_prong(fc),
        "orientable": capped_orientable(fc),
        "hyperbolicity": {
            "status": verdict.status.value,
            "witness": verdict.witness,
            "slopes": [str(s) for s in verdict.slopes],
        },
        "polynomial": str(polynomial),
        "dilatation": render_root(root, digits),
        "width_bits": width_bits,
        "provenance": [
            "closed genus from the residues of the family coordinates",
            "hyperbolicity from the exceptional slopes of the magic manifold",
            "dilatation as the largest root of f_(k,l)",
        ],
    }


def row_document(row: TableResult, width_bits: int) -> Document:
    """One genus of a minimal-dilatation table; empty tables keep their row."""
    document: Document = {
        "g": row.genus,
        "fill": str(row.filling),
        "orientable": row.orientable_only,
        "candidates_examined": row.candidates_examined,
        "empty": row.empty,
    }
    if isinstance(row, MinTableRow):
        document["family"] = row.argmin.family.value
        document["argmins"] = [{"k": fc.k, "l": fc.l} for fc in row.argmins]
        document["lambda"] = render_root(row.root, digits_for_width(width_bits))
    else:
        document["family"] = None
        document["argmins"] = []
        document["lambda"] = None
    return document


def table_document(rows: Iterable[TableResult], width_bits: int) -> Document:
    return {"command": "min-table", "rows": [row_document(r, width_bits) for r in rows]}


def table_csv(rows: Iterable[TableResult], width_bits: int) -> str:
    """
    Render table rows as CSV with a header row.

    Rows with several argmins are written once per argmin; empty tables
    keep a row with blank class and dilatation columns.
    """
    digits = digits_for_width(width_bits)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        as_text = str(row.filling)
        if isinstance(row, MinTableRow):
            rendered = render_root(row.root, digits)
            for fc in row.argmins:
                writer.writerow(
                    [
                        row.genus,
                        as_text,
                        fc.family.value,
                        fc.k,
                        fc.l,
                        rendered["lo"],
                        rendered["hi"],
                        str(row.orientable_only).lower(),
                        row.candidates_examined,
                    ]
                )
        else:
            logger.debug(f"Empty table at genus {row.genus} on N({as_text})")
            writer.writerow(
                [row.genus, as_text, "", "", "", "", "", str(row.orientable_only).lower(), 0]
            )
    return buffer.getvalue()


def bound_document(bound: UpperBound, width_bits: int) -> Document:
    digits = digits_for_width(width_bits)
    baseline: Optional[Document] = None
    if bound.baseline is not None:
        baseline = {
            "k": bound.baseline[0],
            "l": bound.baseline[1],
            "comparison": bound.baseline_comparison.value if bound.baseline_comparison else None,
        }
    return {
        "g": bound.genus,
        "orientable": bound.orientable_only,
        "upper_bound": render_root(bound.root, digits),
        "polynomial": str(bound.polynomial),
        "source": bound.source,
        "baseline": baseline,
        "rows": [row_document(r, width_bits) for r in bound.rows],
    }


def bounds_document(bounds: Iterable[UpperBound], width_bits: int) -> Document:
    return {"command": "bounds", "bounds": [bound_document(b, width_bits) for b in bounds]}


def _interval_digits(interval: Tuple[Fraction, Fraction]) -> int:
    width = interval[1] - interval[0]
    if width <= 0:
        return 12
    return max(6, math.ceil(-math.log10(width)) + 2)


def ent_scan_document(fill: str, scan: EntScan) -> Document:
    digits = min(_interval_digits(p.ent) for p in scan.points)
    return {
        "command": "ent-face",
        "fill": fill,
        "points": [
            {"s": str(p.s), "k": p.k, "l": p.l, "ent": render_interval(*p.ent, digits)}
            for p in scan.points
        ],
        "minimizer": {"s": str(scan.minimizer.s), "k": scan.minimizer.k, "l": scan.minimizer.l},
        "minimum": render_interval(*scan.minimizer.ent, digits),
        "expected_minimum": render_interval(*scan.expected_minimum, digits),
    }


def magic_ent_document(scan: MagicEntScan) -> Document:
    digits = min(_interval_digits(p.ent) for p in scan.points)
    best = scan.minimizer.fibered
    return {
        "command": "ent-face",
        "fill": None,
        "classes_examined": len(scan.points),
        "minimizer": {"x": best.x, "y": best.y, "z": best.z},
        "minimum": render_interval(*scan.minimizer.ent, digits),
        "expected_minimum": render_interval(*scan.expected_minimum, digits),
    }


def claim_document(result: ClaimResult, width_bits: int) -> Document:
    digits = digits_for_width(width_bits)
    return {
        "claim": result.claim,
        "status": result.status.value,
        "detail": result.detail,
        "outside_hypotheses": result.outside_hypotheses,
        "evidence": {name: render_root(root, digits) for name, root in result.evidence},
    }


def verification_document(report: VerificationReport, width_bits: int) -> Document:
    counts = {status.value: report.count(status) for status in ClaimStatus}
    return {
        "command": "verify",
        "suite": report.suite,
        "passed": report.passed,
        "counts": counts,
        "results": [claim_document(r, width_bits) for r in report.results],
    }


def flag_lines(report: VerificationReport) -> List[str]:
    """One prominent line per FLAG or FAIL result."""
    return [
        f"*** {r.status.value}: {r.claim}: {r.detail}"
        for r in report.results
        if r.status is not ClaimStatus.PASS
    ]
