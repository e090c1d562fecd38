"""Predicates for the proved relations between the metrics.

Each relation becomes a :class:`BoundCheck` holding both sides and the
slack. An inapplicable check (infinite side or failed precondition) is
never counted as a violation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .graph import Graph, PairDistanceSummary
from .metrics import MetricsReport, _jsonable, analyze, format_number

TOLERANCE = 1e-12

THM1_CLOSED_EQUALITY = "thm1_closed_equality"
THM3_OPEN_UPPER = "thm3_open_upper"
LEMMA6_DENSITY_UPPER = "lemma6_density_upper"
LEMMA7_PATH_LOWER = "lemma7_path_lower"
THM8_GLOB_PATH_LOWER = "thm8_glob_path_lower"

CHECK_NAMES = (
    THM1_CLOSED_EQUALITY,
    THM3_OPEN_UPPER,
    LEMMA6_DENSITY_UPPER,
    LEMMA7_PATH_LOWER,
    THM8_GLOB_PATH_LOWER,
)
# Checks that hold with equality on every graph of diameter at most 2.
TIGHT_WHEN_DIAM_LE2 = (LEMMA6_DENSITY_UPPER, LEMMA7_PATH_LOWER, THM8_GLOB_PATH_LOWER)


@dataclass(frozen=True)
class BoundCheck:
    name: str
    lhs: float
    rhs: float
    slack: float
    satisfied: bool
    applicable: bool

    @property
    def violated(self) -> bool:
        return self.applicable and not self.satisfied

    def at_equality(self, tol: float = TOLERANCE) -> bool:
        return self.applicable and abs(self.slack) <= tol

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "slack": _jsonable(self.slack),
            "satisfied": self.satisfied,
            "applicable": self.applicable,
        }


def _check(name, lhs, rhs, kind, applicable=True, tol=TOLERANCE) -> BoundCheck:
    finite = math.isfinite(lhs) and math.isfinite(rhs)
    applicable = applicable and finite
    if not finite:
        slack = math.nan
    elif kind == "lower":
        slack = lhs - rhs
    else:
        slack = rhs - lhs
    if not applicable:
        satisfied = True
    elif kind == "equal":
        satisfied = abs(slack) <= tol
    else:
        satisfied = slack >= -tol
    return BoundCheck(name, lhs, rhs, slack, satisfied, applicable)


def check_closed_equality(r: MetricsReport, tol: float = TOLERANCE) -> BoundCheck:
    """Closed local efficiency equals the mean of 1 and closed clustering.

    Needs every vertex to have a neighbor: an isolated vertex contributes
    0 to both averages, which breaks the per-vertex identity.
    """
    return _check(
        THM1_CLOSED_EQUALITY,
        r.local_efficiency_closed,
        (1 + r.clustering_closed) / 2,
        "equal",
        applicable=r.min_degree >= 1,
        tol=tol,
    )


def check_open_upper(r: MetricsReport, tol: float = TOLERANCE) -> BoundCheck:
    return _check(THM3_OPEN_UPPER, r.local_efficiency_open, (1 + r.clustering_open) / 2, "upper", tol=tol)


def check_density_upper(r: MetricsReport, tol: float = TOLERANCE) -> BoundCheck:
    return _check(LEMMA6_DENSITY_UPPER, r.global_efficiency, (1 + r.density) / 2, "upper", tol=tol)


def check_path_lower(r: MetricsReport, tol: float = TOLERANCE) -> BoundCheck:
    return _check(LEMMA7_PATH_LOWER, r.char_path_length, 2 - r.density, "lower", tol=tol)


def check_glob_path_lower(r: MetricsReport, tol: float = TOLERANCE) -> BoundCheck:
    return _check(
        THM8_GLOB_PATH_LOWER, r.global_efficiency, (3 - r.char_path_length) / 2, "lower", tol=tol
    )


def convergence_diagnostics(r: MetricsReport, s: PairDistanceSummary) -> tuple[float, float]:
    """Return ``(gap, gap_bound)`` for the density bound on global efficiency.

    ``gap`` is how far global efficiency sits below ``(1 + density)/2``;
    ``gap_bound`` is half the fraction of ordered pairs more than two hops
    apart. ``0 <= gap <= gap_bound`` always, so the density bound becomes
    exact as almost all pairs come within distance 2.
    """
    gap = (1 + r.density) / 2 - r.global_efficiency
    gap_bound = s.pairs_gt2 / (2 * s.ordered_pairs)
    return gap, gap_bound


@dataclass(frozen=True)
class BoundsReport:
    checks: tuple[BoundCheck, ...]
    frac_pairs_le2: float
    gap_lemma6: float
    gap_bound_lemma6: float
    tightness_diam_le2: bool

    def check(self, name: str) -> BoundCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def violations(self) -> list[BoundCheck]:
        return [c for c in self.checks if c.violated]

    @property
    def all_satisfied(self) -> bool:
        return not self.violations

    def sandwich_holds(self, tol: float = TOLERANCE) -> bool:
        return -tol <= self.gap_lemma6 <= self.gap_bound_lemma6 + tol

    def problems(self, tol: float = TOLERANCE) -> list[str]:
        """Every way this report contradicts a proved relation."""
        out = [f"{c.name} violated (slack {c.slack!r})" for c in self.violations]
        if not self.sandwich_holds(tol):
            out.append(
                f"gap sandwich broken: gap {self.gap_lemma6!r}, bound {self.gap_bound_lemma6!r}"
            )
        if self.tightness_diam_le2:
            for name in TIGHT_WHEN_DIAM_LE2:
                c = self.check(name)
                if not c.at_equality(tol):
                    out.append(f"{name} not tight at diameter <= 2 (slack {c.slack!r})")
        return out

    def to_dict(self) -> dict:
        return {
            "checks": [c.to_dict() for c in self.checks],
            "frac_pairs_le2": _jsonable(self.frac_pairs_le2),
            "gap_lemma6": _jsonable(self.gap_lemma6),
            "gap_bound_lemma6": _jsonable(self.gap_bound_lemma6),
            "tightness_diam_le2": self.tightness_diam_le2,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @staticmethod
    def csv_header() -> list[str]:
        cols = []
        for name in CHECK_NAMES:
            cols += [f"slack_{name}", f"satisfied_{name}"]
        return cols

    def csv_row(self) -> list[str]:
        row = []
        for c in self.checks:
            row += [format_number(c.slack), format_number(c.satisfied)]
        return row


def evaluate(r: MetricsReport, s: PairDistanceSummary, tol: float = TOLERANCE) -> BoundsReport:
    checks = (
        check_closed_equality(r, tol),
        check_open_upper(r, tol),
        check_density_upper(r, tol),
        check_path_lower(r, tol),
        check_glob_path_lower(r, tol),
    )
    gap, gap_bound = convergence_diagnostics(r, s)
    return BoundsReport(
        checks=checks,
        frac_pairs_le2=r.frac_pairs_le2,
        gap_lemma6=gap,
        gap_bound_lemma6=gap_bound,
        tightness_diam_le2=r.diameter <= 2,
    )


def evaluate_all(g: Graph, tol: float = TOLERANCE) -> BoundsReport:
    report, summary = analyze(g)
    return evaluate(report, summary, tol)
