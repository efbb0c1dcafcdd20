"""How far approximate polymorphisms sit from the exact skew families."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..boolfn import BooleanFunction, format_function, measure_weights
from ..errors import PreconditionError, SizeLimitError
from .cases import PRECEDENCE, CaseLabel, classify_tuple, generate_family
from .engine import all_tables, lhs_rows, rhs_rows


@dataclass(frozen=True)
class NearestStructure:
    distance: Fraction
    witness: tuple[BooleanFunction, BooleanFunction]
    label: CaseLabel
    f0_distance: float


@dataclass(frozen=True)
class ScanRow:
    f: BooleanFunction
    delta: Fraction
    epsilon: Fraction
    witness_case: str


def _skew_templates(g: BooleanFunction, n: int) -> list[tuple[BooleanFunction, BooleanFunction]]:
    return [t for t in generate_family("skew", g, n)]


def _nearest(f: BooleanFunction, family, g: BooleanFunction, p: float) -> NearestStructure:
    F1 = np.array([t[1].table for t in family])
    diffs = np.count_nonzero(F1 != f.table, axis=1)
    # ties: case precedence first, then truth-table code (the family is code-sorted)
    tied = np.flatnonzero(diffs == diffs.min())
    labels = {int(k): classify_tuple("skew", family[k], g) for k in tied}
    k = min(labels, key=lambda k: (PRECEDENCE.index(labels[k].name), k))
    f0, f1 = family[k]
    d0 = float(np.sum(measure_weights(f.arity, p)[f0.table != f.table]))
    return NearestStructure(Fraction(int(diffs[k]), 1 << f.arity), (f0, f1), labels[k], d0)


def nearest_structure_distance(f: BooleanFunction, g: BooleanFunction, p: float = 0.5) -> NearestStructure:
    """Uniform distance from f to the closest f1 over template skew polymorphisms (f0, f1) of g.

    ``f0_distance`` is the mu_p distance from f to the paired f0.
    """
    if f.arity > 3:
        raise SizeLimitError("the skew template family is enumerated only for n <= 3")
    if not 0 < p < 1:
        raise PreconditionError(f"bias must lie in (0, 1), got {p}")
    return _nearest(f, _skew_templates(g, f.arity), g, p)


def stability_scan(g: BooleanFunction, n: int) -> list[ScanRow]:
    """One row per f of arity n: agreement deficit delta_f and distance epsilon_f."""
    if n > 3:
        raise SizeLimitError("stability_scan enumerates all 2^(2^n) functions and supports n <= 3")
    if n * g.arity > 28:
        raise SizeLimitError("n*m exceeds the exhaustive limit")
    T = all_tables(n)
    m = g.arity
    lhs = lhs_rows(T, g, n)
    rhs = rhs_rows([T] * m, g, n)
    bad = np.count_nonzero(lhs != rhs, axis=1)
    total = 1 << (n * m)
    family = _skew_templates(g, n)
    rows = []
    for code in range(T.shape[0]):
        f = BooleanFunction(n, T[code])
        near = _nearest(f, family, g, 0.5)
        rows.append(ScanRow(f, Fraction(int(bad[code]), total), near.distance, near.label.name))
    return rows


def scan_frontier(rows: list[ScanRow]) -> list[tuple[Fraction, Fraction]]:
    """Largest epsilon seen at each delta, as (delta, epsilon) pairs sorted by delta."""
    best: dict[Fraction, Fraction] = {}
    for r in rows:
        best[r.delta] = max(best.get(r.delta, Fraction(0)), r.epsilon)
    return sorted(best.items())


def epsilon_delta_ratio(rows: list[ScanRow]) -> float:
    """max epsilon_f / delta_f over rows with delta_f > 0."""
    return max((float(r.epsilon / r.delta) for r in rows if r.delta > 0), default=0.0)


def scan_to_csv(rows: list[ScanRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["f_hex", "delta", "epsilon", "witness_case"])
    for r in rows:
        w.writerow([format_function(r.f).split("table=")[1], str(r.delta), str(r.epsilon), r.witness_case])
    return buf.getvalue()
