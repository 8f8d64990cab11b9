"""Piecewise peak formulas and their empirical verification.

Every bracket is evaluated with a pluggable rounding function so a
disagreement can be reported under both floor and ceiling readings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .families import FAMILIES, FamilyTable, build_table
from .seqcore import ModeInterval, is_log_concave, is_unimodal, mode_interval

Bracket = Callable[[int, int], int]


class OutOfRange(ValueError):
    pass


def floor_div(a: int, b: int) -> int:
    return a // b


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _family_peak(j: int, n: int, br: Bracket) -> int | tuple[int, int] | None:
    """The printed formula, or None outside its stated range."""
    if j == 1:
        return br(n + 1, 3) if n != 2 else None
    if j == 6:
        return br(n + 2, 3) if n >= 2 else None
    if j == 4:
        return (1, 2) if n == 3 else br(n, 3) + 1
    if j == 3:
        if n <= 6:
            return br(n - 1, 2)
        return 2 if n == 7 else br(n + 2, 3)
    if j == 7:
        if n < 2:
            return None
        if n <= 7:
            return br(n, 2)
        return 3 if n == 8 else br(n + 1, 3) + 1
    if j == 10:
        if n <= 6:
            return br(n + 1, 2)
        return 3 if n == 7 else br(n + 2, 3) + 1
    if j == 2:
        if n < 3:
            return None
        if n <= 8:
            return br(n - 1, 2)
        return 3 if n == 9 else br(n, 3) + 1
    if j == 8:
        if n < 3:
            return None
        if n <= 8:
            return br(n + 1, 2)
        return 4 if n == 9 else br(n, 3) + 2
    if j == 9:
        if n < 2:
            return None
        if n <= 8:
            return br(n + 1, 2)
        return 4 if n == 9 else br(n, 3) + 2
    if j == 5:
        if n < 2:
            return None
        if n <= 5:
            return br(n, 2)
        return br(n + 1, 3) + 1 if n <= 16 else br(n + 2, 3) + 1
    if j == 11:
        if n < 2:
            return None
        if n <= 5:
            return br(n, 2) + 1
        return br(n + 1, 3) + 2 if n <= 16 else br(n + 2, 3) + 2
    raise OutOfRange(f"family index must be in 1..11, got {j}")


GRAPH_FAMILIES = ("L", "CL", "ML", "RL", "R")
_GRAPH_MIN_N = {"L": 2, "CL": 2, "ML": 2, "RL": 1, "R": 1}


def _graph_peak(tag: str, n: int, br: Bracket) -> int:
    if tag == "L":
        return br(n + 2, 3)
    if tag in ("CL", "ML"):
        if n <= 5:
            return br(n, 2)
        return br(n + 1, 3) + 1 if n <= 16 else br(n + 2, 3) + 1
    if tag == "RL":
        if n <= 6:
            return br(n + 1, 2)
        return 3 if n == 7 else br(n + 1, 3) + 1
    if tag == "R":
        if n <= 6:
            return br(n + 1, 2)
        return 3 if n == 7 else br(n + 2, 3) + 1
    raise OutOfRange(f"unknown graph family {tag!r}")


def _interval(p) -> ModeInterval:
    if isinstance(p, tuple):
        return ModeInterval(*p)
    return ModeInterval(p, p)


def printed_peak(j: int, n: int, bracket: Bracket = floor_div) -> ModeInterval | None:
    if n < 1:
        raise OutOfRange(f"S_{j}^n is defined for n >= 1, got {n}")
    p = _family_peak(j, n, bracket)
    return None if p is None else _interval(p)


def peak_formula(j: int, n: int, table: FamilyTable | None = None) -> tuple[ModeInterval, bool]:
    """Modes of ``S_j^n`` and whether they came from a printed formula.

    Where no formula covers ``n`` the computed argmax interval is returned
    with the flag set to False.
    """
    p = printed_peak(j, n)
    if p is not None:
        return p, True
    if table is None or table.max_n < n:
        table = build_table(n)
    return mode_interval(table.get(j, n)), False


def graph_peak_formula(tag: str, n: int, bracket: Bracket = floor_div) -> ModeInterval:
    if tag not in _GRAPH_MIN_N:
        raise OutOfRange(f"unknown graph family {tag!r}")
    if n < _GRAPH_MIN_N[tag]:
        raise OutOfRange(f"{tag}_n peak formula needs n >= {_GRAPH_MIN_N[tag]}, got {n}")
    return _interval(_graph_peak(tag, n, bracket))


@dataclass(frozen=True)
class PeakFormulaResult:
    subject: str
    n: int
    formula_modes: ModeInterval | None
    empirical_modes: ModeInterval
    agree: bool
    unimodal: bool
    log_concave: bool
    ceiling_modes: ModeInterval | None = None

    @property
    def formula_present(self) -> bool:
        return self.formula_modes is not None


def _result(subject, n, dist, formula, ceiling) -> PeakFormulaResult:
    emp = mode_interval(dist)
    return PeakFormulaResult(
        subject=subject,
        n=n,
        formula_modes=formula,
        empirical_modes=emp,
        agree=formula is not None and formula == emp,
        unimodal=is_unimodal(dist),
        log_concave=is_log_concave(dist),
        ceiling_modes=ceiling,
    )


def verify_peaks(subject, n_range, table: FamilyTable | None = None) -> list[PeakFormulaResult]:
    """Compare formula modes with computed argmax intervals.

    ``subject`` is a family index 1..11 or a graph tag from
    :data:`GRAPH_FAMILIES`.  Rows outside a formula's range carry
    ``formula_modes=None`` and ``agree=False``.
    """
    from . import graphfam

    ns = list(n_range)
    if not ns:
        return []
    top = max(ns) + 1
    if table is None or table.max_n < top:
        table = build_table(top)
    out = []
    for n in ns:
        if subject in FAMILIES:
            dist = table.get(subject, n)
            f = printed_peak(subject, n)
            c = printed_peak(subject, n, ceil_div)
            out.append(_result(f"s{subject}", n, dist, f, c))
        else:
            dist = graphfam.genus_poly(subject, n, table=table)
            if n < _GRAPH_MIN_N[subject]:
                f = c = None
            else:
                f = graph_peak_formula(subject, n)
                c = graph_peak_formula(subject, n, ceil_div)
            out.append(_result(subject, n, dist, f, c))
    return out


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    n: int
    peak: int
    passed: bool


def _strict_peak(d, k: int) -> bool:
    return d[k] > d[k - 1] and d[k] > d[k + 1]


def inequality_report(max_n: int, table: FamilyTable | None = None) -> list[InequalityCheck]:
    """Strict neighbour inequalities at the predicted peaks of S_3, S_5 and S_9."""
    if table is None or table.max_n < max_n:
        table = build_table(max_n)
    out = []
    for n in range(8, max_n + 1):
        k = (n + 2) // 3
        out.append(InequalityCheck("s3_peak", n, k, _strict_peak(table.get(3, n), k)))
    for n in range(6, max_n + 1):
        k = ((n + 1) // 3 if n <= 16 else (n + 2) // 3) + 1
        out.append(InequalityCheck("s5_peak", n, k, _strict_peak(table.get(5, n), k)))
    for n in range(10, max_n + 1):
        k = n // 3 + 2
        out.append(InequalityCheck("s9_peak", n, k, _strict_peak(table.get(9, n), k)))
    return out
