"""Genus distributions of the eleven ladder-surface sets ``S_j^n``.

Two independent routes are provided: a bottom-up joint recurrence over all
eleven families (:func:`build_table`) and the piecewise closed forms for
``j`` in {1, 3, 5, 6, 9}.  :func:`family_distribution` with ``method="auto"``
runs both and insists they agree.

Brackets in the piecewise formulas are floors.  Branch bounds written as
real expressions (``n/2 - 1`` and friends) are compared as ``2*i`` against
integers so no float ever enters.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .seqcore import GenusDistribution, linear_combination

log = logging.getLogger(__name__)

FAMILIES = tuple(range(1, 12))
CLOSED_FORM_FAMILIES = (1, 3, 5, 6, 9)
ONE = GenusDistribution(0, (1,))


class FamilyError(ValueError):
    pass


class NonIntegerEntry(FamilyError):
    pass


class MethodUnavailable(FamilyError):
    pass


class CrossCheckMismatch(FamilyError):
    pass


def _binom(a: int, b: int) -> int:
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


def _pow2(e: int) -> Fraction:
    # negative exponents only appear in branches whose coefficient vanishes
    return Fraction(2) ** e


def _as_int(value, j: int, n: int, i: int) -> int:
    value = Fraction(value)
    if value.denominator != 1:
        raise NonIntegerEntry(f"S_{j}^{n}: entry {i} evaluates to {value}")
    if value < 0:
        raise NonIntegerEntry(f"S_{j}^{n}: entry {i} is negative ({value})")
    return value.numerator


def _check_n(n: int) -> None:
    if n < 1:
        raise FamilyError(f"closed forms need n >= 1, got {n}")


# -- S_1 and S_6 ------------------------------------------------------------

def _c_plain(n: int, i: int) -> int:
    return _binom(n - i, i)


def closed_form_s1(n: int) -> GenusDistribution:
    _check_n(n)
    entries = []
    for i in range(n // 2 + 1):
        v = Fraction(2 ** (n + i) * (2 * n - 3 * i), n - i) * _c_plain(n, i)
        entries.append(_as_int(v, 1, n, i))
    return GenusDistribution.from_coeffs(0, entries)


def closed_form_s6(n: int) -> GenusDistribution:
    _check_n(n)
    entries = []
    for i in range((n + 1) // 2 + 1):
        v = Fraction(2 ** (n + i - 1) * (2 * n - 3 * i + 2), n - i + 1) * _c_plain(n + 1, i)
        entries.append(_as_int(v, 6, n, i))
    return GenusDistribution.from_coeffs(0, entries)


# -- S_3 ----------------------------------------------------------------------
# The C helper of the S_3/S_5/S_9 formulas is binom(N-2-i, i), not the one above.

def _c_shifted(N: int, i: int) -> int:
    return _binom(N - 2 - i, i)


def _a(N: int, i: int) -> Fraction:
    return Fraction(2 * N - 3 * i - 2, N - 2 * i - 1)


def _b(N: int, i: int) -> Fraction:
    return Fraction(N - i - 1, N - 2 * i)


def _d(N: int, i: int) -> Fraction:
    return Fraction(N, i) * 2 ** i


def _one_branch(j: int, n: int, i: int, hits: list) -> Fraction | None:
    if len(hits) > 1:
        raise FamilyError(f"S_{j}^{n}: genus {i} matched {len(hits)} branches")
    return hits[0]() if hits else None


def closed_form_s3(n: int) -> GenusDistribution:
    _check_n(n)
    entries = []
    for i in range(n // 2 + 1):
        hits = []
        if i == 0:
            hits.append(lambda: Fraction(2 ** n + 4 * n - 2))
        if n >= 2 and 1 <= i <= n // 2 - 1:
            hits.append(lambda: _c_shifted(n + 2, i + 1) * (
                2 ** (3 * i + 1) * _a(n + 2, i + 1)
                + (_pow2(n + i - 1) - _pow2(3 * i - 2))
                * (i + 1) * _a(n + 2, i) * _b(n + 2, i + 1) / (n - 2 * i - 1)))
        if n >= 2 and n // 2 - 1 < i <= (n - 1) // 2:
            hits.append(lambda: _c_shifted(n + 1, i) * (
                2 ** (3 * i + 1)
                + (_pow2(n + i - 1) - _pow2(3 * i - 2)) * _a(n + 2, i) * _b(n + 2, i + 1)))
        if n >= 2 and (n - 1) // 2 < i <= n // 2:
            hits.append(lambda: (_pow2(n + i - 1) - _pow2(3 * i - 2)) * _a(n + 2, i) * _c_shifted(n + 2, i))
        if not hits:
            raise FamilyError(f"S_3^{n}: genus {i} matched no branch")
        entries.append(_as_int(_one_branch(3, n, i, hits), 3, n, i))
    return GenusDistribution.from_coeffs(0, entries)


# -- S_5 and S_9 ----------------------------------------------------------------

_S5_BASE = {1: (2, 2), 2: (2, 14)}
_S9_BASE = {1: (0, (1, 3)), 2: (1, (10, 6)), 3: (1, (10, 54))}


def closed_form_s5(n: int) -> GenusDistribution:
    _check_n(n)
    if n in _S5_BASE:
        return GenusDistribution(0, _S5_BASE[n])
    entries = {}
    # genus 0 is empty for n >= 3; the top genus is floor((n+1)/2)
    for i in range(1, (n + 1) // 2 + 1):
        hits = []
        if i == 1:
            hits.append(lambda: Fraction(2 ** n + 8 * n + (8 if n in (3, 4) else 0)))
        else:
            def head(i=i):
                return (2 ** n - _pow2(2 * i - 2)) * _c_shifted(n, i - 2) * _d(n, i - 1)

            def tail(i=i):
                return 2 ** (2 * i) * _c_shifted(n, i - 1) * _d(n, i)

            two_i = 2 * i
            if n >= 5 and two_i < n - 2:
                hits.append(lambda: head() + tail())
            if n >= 5 and two_i == n - 2:
                hits.append(lambda: head() + tail() + 2 ** (n - 1))
            if n >= 4 and n - 2 < two_i <= n - 1:
                hits.append(lambda: head() + tail() + 2 ** n)
            if n >= 4 and n - 1 < two_i <= n:
                assert n % 2 == 0
                hits.append(lambda: head() + 2 ** (3 * n // 2 + 1) - 3 * 2 ** (n - 1))
            if n >= 3 and n < two_i <= n + 1:
                hits.append(head)
        value = _one_branch(5, n, i, hits)
        if value is None:
            raise FamilyError(f"S_5^{n}: genus {i} matched no branch")
        entries[i] = _as_int(value, 5, n, i)
    return GenusDistribution.from_mapping(entries)


def closed_form_s9(n: int) -> GenusDistribution:
    _check_n(n)
    if n in _S9_BASE:
        off, cs = _S9_BASE[n]
        return GenusDistribution(off, cs)
    entries = {}
    for i in range(1, n // 2 + 2):
        hits = []
        if i == 1:
            hits.append(lambda: Fraction(6))
        elif i == 2:
            hits.append(lambda: Fraction(3 * 2 ** n + 48 * n - (86 if n in (4, 5) else 102)))
        else:
            def core(i=i):
                return 3 * _c_shifted(n, i - 1) * (
                    2 ** (3 * i - 2) * _b(n + 1, i)
                    + (_pow2(n + i - 2) - _pow2(3 * i - 5))
                    * (i - 1) * _b(n, i - 1) * _b(n + 1, i - 1) / (n - 2 * i + 1))

            def upper(i=i):
                return _c_shifted(n - 1, i - 2) * (
                    2 ** (3 * i - 2)
                    + 3 * (_pow2(n + i - 2) - _pow2(3 * i - 5)) * _b(n, i - 1) * _b(n + 1, i - 1)
                ) + 2 ** ((3 * n + 1) // 2) - 3 * 2 ** (n - 1)

            def top(i=i):
                return 3 * (_pow2(n + i - 2) - _pow2(3 * i - 5)) * _b(n + 1, i - 1) * _c_shifted(n, i - 2)

            two_i = 2 * i
            if n >= 6 and two_i < n - 1:
                hits.append(core)
            if n >= 7 and two_i == n - 1:
                hits.append(lambda: core() + 2 ** (n - 1))
            if n >= 6 and n - 1 < two_i <= n:
                hits.append(lambda: core() + 2 ** n)
            if n >= 5 and n < two_i <= n + 1:
                assert n % 2 == 1
                hits.append(upper)
            if n >= 4 and n + 1 < two_i <= n + 2:
                hits.append(top)
        value = _one_branch(9, n, i, hits)
        if value is None:
            raise FamilyError(f"S_9^{n}: genus {i} matched no branch")
        entries[i] = _as_int(value, 9, n, i)
    return GenusDistribution.from_mapping(entries)


CLOSED_FORMS = {
    1: closed_form_s1,
    3: closed_form_s3,
    5: closed_form_s5,
    6: closed_form_s6,
    9: closed_form_s9,
}


# -- joint recurrence ---------------------------------------------------------

@dataclass(frozen=True)
class FamilyTable:
    """``rows[j][n]`` is the genus distribution of ``S_j^n`` for ``0 <= n <= max_n``."""

    max_n: int
    rows: dict[int, tuple[GenusDistribution, ...]]

    def get(self, j: int, n: int) -> GenusDistribution:
        if j not in self.rows:
            raise FamilyError(f"family index must be in 1..11, got {j}")
        if not 0 <= n <= self.max_n:
            raise FamilyError(f"n={n} outside table range 0..{self.max_n}")
        return self.rows[j][n]

    def __getitem__(self, key: tuple[int, int]) -> GenusDistribution:
        return self.get(*key)


def _step(prev: dict[int, GenusDistribution], n: int, seed: str) -> dict[int, GenusDistribution]:
    def lc(*terms):
        return linear_combination(terms)

    g = prev
    row = {}
    row[7] = lc((2, 1, g[3]), (2, 0, g[10]))
    row[10] = lc((1, 1, g[6]), (2, 1, g[7]), (1, 0, g[10]))
    if seed == "closed":
        row[1] = closed_form_s1(n)
        row[6] = closed_form_s6(n)
        row[3] = lc((1, 0, g[3]), (1, 0, g[6]), (2, 0, g[7]))
    else:
        # S_3 from its closed form; S_6^n solved out of the S_3^{n+1} recurrence
        row[3] = closed_form_s3(n)
        row[6] = lc((1, 0, closed_form_s3(n + 1)), (-1, 0, row[3]), (-2, 0, row[7]))
        row[1] = lc((4, 0, g[6])) if n >= 2 else GenusDistribution(0, (4,))
    row[5] = lc((2, 1, g[3]), (2, 0, g[9]))
    row[9] = lc((1, 1, g[5]), (2, 1, g[7]), (1, 0, g[11]))
    row[11] = lc((2, 1, g[9]), (2, 1, g[10]))
    row[4] = lc((4, 1, g[1]))
    row[2] = lc((4, 0, g[7]))
    row[8] = lc((4, 1, g[7]))
    return row


SEEDS = ("closed", "s3")


def build_table(max_n: int, seed: str = "closed") -> FamilyTable:
    """Bottom-up joint dynamic program over all eleven families.

    The recurrences close over every family once ``S_6`` is known.  With
    ``seed="closed"`` the ``S_1`` and ``S_6`` rows come from their closed
    forms.  With ``seed="s3"`` only the ``S_3`` closed form is trusted:
    ``S_6^n`` is solved from ``S_3^{n+1} = S_3^n + S_6^n + 2 S_7^n`` and
    ``S_1^{n+1} = 4 S_6^n``.  The two seedings check each other.
    """
    if max_n < 0:
        raise FamilyError(f"max_n must be >= 0, got {max_n}")
    if seed not in SEEDS:
        raise FamilyError(f"unknown seed {seed!r}; expected one of {SEEDS}")
    return _cached_table(max_n, seed)


@lru_cache(maxsize=8)
def _cached_table(max_n: int, seed: str) -> FamilyTable:
    cols = {j: [ONE] for j in FAMILIES}
    prev = {j: ONE for j in FAMILIES}
    for n in range(1, max_n + 1):
        row = _step(prev, n, seed)
        want = 4 ** n
        for j in FAMILIES:
            if row[j].total != want:
                raise FamilyError(f"S_{j}^{n}: total {row[j].total} != 4^{n}")
            cols[j].append(row[j])
        prev = row
    log.debug("built family table to n=%d (seed=%s)", max_n, seed)
    return FamilyTable(max_n, {j: tuple(c) for j, c in cols.items()})


def family_distribution(j: int, n: int, method: str = "auto") -> GenusDistribution:
    if j not in FAMILIES:
        raise FamilyError(f"family index must be in 1..11, got {j}")
    if n < 0:
        raise FamilyError(f"n must be >= 0, got {n}")
    if method == "closed":
        if j not in CLOSED_FORMS or n < 1:
            raise MethodUnavailable(f"no closed form for S_{j}^{n}")
        return CLOSED_FORMS[j](n)
    if method not in ("recurrence", "auto"):
        raise MethodUnavailable(f"unknown method {method!r}")
    rec = build_table(n).get(j, n)
    if method == "auto" and j in CLOSED_FORMS and n >= 1:
        closed = CLOSED_FORMS[j](n)
        if closed != rec:
            raise CrossCheckMismatch(f"S_{j}^{n}: closed {closed} != recurrence {rec}")
    return rec


# -- identities ---------------------------------------------------------------

@dataclass(frozen=True)
class IdentityCheck:
    name: str
    n: int
    passed: bool
    detail: str = ""


def _s7_via_s3(t: FamilyTable, n: int) -> GenusDistribution:
    s3 = t.get(3, n - 1)
    entries = {0: 2}
    for i in range(1, s3.max_genus + 2):
        entries[i] = 4 * s3[i - 1] - (2 if i == 1 else 0)
    return GenusDistribution.from_mapping(entries)


def _s10_via_s3(t: FamilyTable, n: int) -> GenusDistribution:
    s3 = t.get(3, n)
    entries = {0: 1}
    for i in range(1, s3.max_genus + 2):
        entries[i] = s3[i - 1] - (1 if i == 1 else 0)
    return GenusDistribution.from_mapping(entries)


def _s11_from_s5(t: FamilyTable, n: int) -> GenusDistribution:
    s5 = t.get(5, n)
    entries = {1: 2}
    for i in range(2, s5.max_genus + 2):
        entries[i] = s5[i - 1] - (2 if i == 2 else 0)
    return GenusDistribution.from_mapping(entries)


def _quarter(d: GenusDistribution) -> GenusDistribution | None:
    if any(c % 4 for c in d.counts):
        return None
    return GenusDistribution(d.offset, tuple(c // 4 for c in d.counts))


def relation_report(max_n: int) -> list[IdentityCheck]:
    """Check the inter-family identities exactly for every ``n <= max_n``.

    Failures are returned as data.  The quarter identity between ``S_6^n``
    and ``S_1^{n+1}`` is also evaluated at ``n = 1`` under its own name.
    """
    if max_n < 2:
        raise FamilyError("relation_report needs max_n >= 2")
    t = build_table(max_n + 1)
    out: list[IdentityCheck] = []

    def record(name, n, lhs, rhs):
        out.append(IdentityCheck(name, n, lhs == rhs, "" if lhs == rhs else f"{lhs} != {rhs}"))

    for n in range(1, max_n + 1):
        record("s4_from_s1", n, t.get(4, n), linear_combination([(4, 1, t.get(1, n - 1))]))
        record("s2_from_s7", n, t.get(2, n), linear_combination([(4, 0, t.get(7, n - 1))]))
        record("s8_from_s7", n, t.get(8, n), linear_combination([(4, 1, t.get(7, n - 1))]))
        record("s7_from_s3", n, t.get(7, n), _s7_via_s3(t, n))
        record("s10_from_s3", n, t.get(10, n), _s10_via_s3(t, n))
        name = "s6_quarter_s1" if n >= 2 else "s6_quarter_s1_n1"
        record(name, n, t.get(6, n), _quarter(t.get(1, n + 1)))
        if n >= 3:
            record("s11_from_s5", n, t.get(11, n), _s11_from_s5(t, n))
    return out
