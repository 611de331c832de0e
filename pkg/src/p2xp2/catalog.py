"""Series database files, bundled data access and the report generators.

Database file format, one record per line:

    id | w0,w1,...,wN | c0,c1,...,cD

where the w are the ambient weights and the c the numerator coefficients
from t^0 up to the numerator degree.  Blank lines and '#' comments are
skipped.  Writing then re-reading a database reproduces the bytes exactly.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from . import fixtures
from .enumeration import DatabaseEntry, SeriesDatabase
from .fano_model import orbifold_screen, screen_summary
from .key_variety import weight_matrix
from .series import IntPolynomial
from .unprojection import (
    euler_ledger,
    hilbert_burch_numerator,
    node_count,
    unprojection_degree,
)


class DatabaseParseError(ValueError):
    def __init__(self, path, line_number: int, message: str):
        super().__init__(f"{path}:{line_number}: {message}")
        self.path = path
        self.line_number = line_number


def load_database(path) -> SeriesDatabase:
    entries = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split("|")]
            if len(parts) != 3:
                raise DatabaseParseError(path, lineno, f"expected 3 pipe-separated fields, got {len(parts)}")
            identifier, weights_text, coeff_text = parts
            try:
                weights = tuple(int(w) for w in weights_text.split(","))
                coeffs = [int(c) for c in coeff_text.split(",")]
            except ValueError as exc:
                raise DatabaseParseError(path, lineno, str(exc)) from exc
            entry = DatabaseEntry(identifier, weights, IntPolynomial.from_coefficients(coeffs))
            try:
                entry.validate()
            except ValueError as exc:
                raise DatabaseParseError(path, lineno, str(exc)) from exc
            entries.append(entry)
    return SeriesDatabase(tuple(entries))


def format_entry(entry: DatabaseEntry) -> str:
    weights = ",".join(str(w) for w in entry.ambient_weights)
    coeffs = ",".join(str(c) for c in entry.numerator.coefficients(entry.numerator.degree + 1))
    return f"{entry.identifier} | {weights} | {coeffs}"


def save_database(db: SeriesDatabase, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for entry in db:
            fh.write(format_entry(entry) + "\n")


def bundled_database_path() -> Path:
    return Path(str(importlib.resources.files("p2xp2") / "data" / "series53.db"))


def bundled_database() -> SeriesDatabase:
    return load_database(bundled_database_path())


# -- reports ---------------------------------------------------------------


@dataclass
class ReportCell:
    label: str
    expected: object
    computed: object

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "expected": self.expected,
            "computed": self.computed,
            "status": "PASS" if self.passed else "FAIL",
        }


@dataclass
class Report:
    title: str
    cells: list[ReportCell] = field(default_factory=list)

    def add(self, label: str, expected, computed) -> None:
        self.cells.append(ReportCell(label, expected, computed))

    @property
    def passed(self) -> int:
        return sum(1 for c in self.cells if c.passed)

    @property
    def failed(self) -> int:
        return len(self.cells) - self.passed

    def as_dict(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "failed": self.failed,
            "cells": [c.as_dict() for c in self.cells],
        }

    def render_text(self) -> str:
        lines = [self.title, "-" * len(self.title)]
        width = max((len(c.label) for c in self.cells), default=0)
        for c in self.cells:
            status = "PASS" if c.passed else "FAIL"
            detail = f"{c.computed}" if c.passed else f"{c.computed} (expected {c.expected})"
            lines.append(f"{status}  {c.label:<{width}}  {detail}")
        lines.append(f"{self.passed}/{len(self.cells)} checks passed")
        return "\n".join(lines)


def report_theorem_ledgers() -> Report:
    """Recompute every derivable ledger cell and compare with the fixtures."""
    report = Report("deformation-family ledgers")
    for series_id, families in fixtures.THEOREM_LEDGERS.items():
        for fam in families:
            report.add(
                f"series {series_id} {fam.label}: e(X)",
                fam.e_x,
                euler_ledger(fam.e_y_gen, fam.n_nodes),
            )
    # family invariants of the three-family theorem: e recomputed from N
    for (rho, e_x, h21, n_nodes), fam in zip(
        fixtures.THEOREM_26989_INVARIANTS, fixtures.THEOREM_LEDGERS["26989"]
    ):
        report.add(
            f"series 26989 {fam.label}: invariants (rho, e, h21, N)",
            (rho, e_x, h21, n_nodes),
            (rho, euler_ledger(-24, n_nodes), h21, fam.n_nodes),
        )
    # degeneracy-locus node count of the classical 26989 family
    numerator = hilbert_burch_numerator((0, 0, 0), (1, 1, 1, 1))
    report.add(
        "series 26989 classical family: nodes by rank-drop locus",
        fixtures.CLASSICAL_26989_NODES,
        node_count(numerator, (1, 1, 1)),
    )
    for label, plane in fixtures.UNPROJECTION_PLANES.items():
        expected = sum(plane) - 1
        report.add(
            f"unprojection degree of D = P{plane} ({label})",
            expected,
            unprojection_degree(plane),
        )
    # displayed numerators reproduced by the module routes
    from .key_variety import szendroi_numerator

    row = fixtures.catalogue_row("26989")
    report.add(
        "series 26989 numerator from format data",
        fixtures.P26989_NUMERATOR.terms,
        szendroi_numerator(row.weight_data()).terms,
    )
    head = szendroi_numerator(fixtures.catalogue_row("4839").weight_data())
    report.add(
        "series 4839 numerator head and degree",
        dict(fixtures.P4839_NUMERATOR_HEAD, degree=fixtures.P4839_NUMERATOR_DEGREE),
        dict(
            {e: head.coefficient(e) for e in fixtures.P4839_NUMERATOR_HEAD},
            degree=head.degree,
        ),
    )
    return report


def cross_check_tables() -> Report:
    """Table consistency: every second-Tom matrix equals the weight matrix
    of the catalogue row with the same id, up to transpose."""
    report = Report("second-Tom weight matrices vs catalogue formats")
    for st in fixtures.SECOND_TOM_TABLE:
        row = fixtures.catalogue_row(st.grdb_id)
        computed = weight_matrix(row.weight_data())
        target = fixtures.second_tom_matrix(st)
        agrees = computed.rows == target.rows or computed.transpose().rows == target.rows
        report.add(f"id {st.grdb_id}: matrix matches (up to transpose)", True, agrees)
    return report


def screen_report(identifiers: Iterable[str] | None = None) -> Report:
    """Quotient-point screen over catalogue models (all rows by default).

    Each cell compares the screen's verdict (does the model carry a
    non-terminal point?) with the catalogued outcome; rows whose screen
    disagrees with the recorded outcome show up as FAIL.
    """
    report = Report("quotient-point screen vs catalogued outcomes")
    rows = (
        fixtures.CATALOGUE
        if identifiers is None
        else [fixtures.catalogue_row(i) for i in identifiers]
    )
    for row in rows:
        try:
            model = fixtures.model_for_row(row)
        except ValueError as exc:
            report.add(f"id {row.grdb_id}", "model", f"unavailable: {exc}")
            continue
        points = orbifold_screen(model)
        expected_bad = row.outcome_tag in (fixtures.BAD_POINT, fixtures.NOT_TERMINAL)
        found_bad = any(p.verdict != "TERMINAL" for p in points)
        report.add(
            f"id {row.grdb_id} [{row.outcome_tag}]: {screen_summary(points)}",
            "non-terminal point" if expected_bad else "terminal",
            "non-terminal point" if found_bad else "terminal",
        )
    return report
