"""Finite nonnegative integer sequences, unimodality and shifted combinations.

A :class:`GenusDistribution` is a trimmed run of big integers starting at a
genus offset.  The same object serves as a genus polynomial, so the
arithmetic helpers here are also used by the family recurrences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class SequenceError(ValueError):
    """Base class for malformed-sequence errors."""


class EmptyTermList(SequenceError):
    pass


class NonIntegerResult(SequenceError):
    pass


class NotUnimodalError(SequenceError):
    pass


@dataclass(frozen=True)
class GenusDistribution:
    """Counts ``g_offset, g_offset+1, ...`` with positive first and last entries."""

    offset: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        counts = tuple(self.counts)
        object.__setattr__(self, "counts", counts)
        if self.offset < 0:
            raise SequenceError(f"negative offset {self.offset}")
        if not counts:
            raise SequenceError("empty distribution")
        for c in counts:
            if not isinstance(c, int) or isinstance(c, bool):
                raise SequenceError(f"non-integer count {c!r}")
            if c < 0:
                raise SequenceError(f"negative count {c}")
        if counts[0] == 0 or counts[-1] == 0:
            raise SequenceError("distribution is not trimmed")

    @classmethod
    def from_coeffs(cls, offset: int, coeffs: Iterable[int]) -> "GenusDistribution":
        """Build from an untrimmed coefficient run; leading/trailing zeros are dropped."""
        dist = trimmed(offset, coeffs)
        if dist is None:
            raise SequenceError("all coefficients are zero")
        return dist

    @classmethod
    def from_mapping(cls, entries: dict[int, int]) -> "GenusDistribution":
        if not entries:
            raise SequenceError("empty mapping")
        lo, hi = min(entries), max(entries)
        return cls.from_coeffs(lo, (entries.get(i, 0) for i in range(lo, hi + 1)))

    @property
    def min_genus(self) -> int:
        return self.offset

    @property
    def max_genus(self) -> int:
        return self.offset + len(self.counts) - 1

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, genus: int) -> int:
        # implicit zeros outside the support
        k = genus - self.offset
        if 0 <= k < len(self.counts):
            return self.counts[k]
        return 0

    def items(self):
        return ((self.offset + k, c) for k, c in enumerate(self.counts))

    def shift(self, k: int) -> "GenusDistribution":
        return GenusDistribution(self.offset + k, self.counts)

    def padded(self, lo: int, hi: int) -> list[int]:
        return [self[i] for i in range(lo, hi + 1)]

    def __str__(self) -> str:
        return f"({', '.join(map(str, self.counts))})@{self.offset}"


def trimmed(offset: int, coeffs: Iterable[int]) -> GenusDistribution | None:
    """Trim zeros from both ends; ``None`` for the zero polynomial."""
    cs = list(coeffs)
    lo = 0
    while lo < len(cs) and cs[lo] == 0:
        lo += 1
    if lo == len(cs):
        return None
    hi = len(cs)
    while cs[hi - 1] == 0:
        hi -= 1
    return GenusDistribution(offset + lo, tuple(cs[lo:hi]))


def linear_combination(terms: Sequence[tuple[int, int, GenusDistribution | None]]) -> GenusDistribution | None:
    """Integer combination ``sum(coef * x^shift * dist)``.

    No unimodality precondition; this is the workhorse for recurrences and
    polynomial sums.  ``None`` entries stand for the zero polynomial.
    """
    live = [(c, s, d) for c, s, d in terms if d is not None and c != 0]
    if not live:
        return None
    lo = min(d.offset + s for _, s, d in live)
    hi = max(d.max_genus + s for _, s, d in live)
    out = [0] * (hi - lo + 1)
    for c, s, d in live:
        base = d.offset + s - lo
        for k, v in enumerate(d.counts):
            out[base + k] += c * v
    if any(v < 0 for v in out):
        raise SequenceError("linear combination produced a negative entry")
    return trimmed(lo, out)


def is_unimodal(seq: GenusDistribution) -> bool:
    """Weakly increasing up to the maximum, then weakly decreasing."""
    cs = seq.counts
    k, n = 0, len(cs)
    while k + 1 < n and cs[k] <= cs[k + 1]:
        k += 1
    while k + 1 < n and cs[k] >= cs[k + 1]:
        k += 1
    return k == n - 1


def is_log_concave(seq: GenusDistribution) -> bool:
    cs = seq.counts
    return all(cs[k] * cs[k] >= cs[k - 1] * cs[k + 1] for k in range(1, len(cs) - 1))


@dataclass(frozen=True)
class ModeInterval:
    """Argmax interval ``[l, m]`` in absolute genus indices.

    ``contiguous`` is False when the maximum is attained in more than one
    run; ``[l, m]`` then covers only the leftmost run.
    """

    l: int
    m: int
    contiguous: bool = field(default=True, compare=False)

    def __post_init__(self) -> None:
        if self.l > self.m:
            raise SequenceError(f"empty mode interval [{self.l}, {self.m}]")

    @property
    def is_peak(self) -> bool:
        return self.l == self.m

    def shifted(self, r: int) -> "ModeInterval":
        return ModeInterval(self.l + r, self.m + r, self.contiguous)

    def as_list(self) -> list[int]:
        return [self.l, self.m]

    def __str__(self) -> str:
        return f"[{self.l},{self.m}]"


def mode_interval(seq: GenusDistribution) -> ModeInterval:
    cs = seq.counts
    top = max(cs)
    first = cs.index(top)
    last = first
    while last + 1 < len(cs) and cs[last + 1] == top:
        last += 1
    contiguous = top not in cs[last + 1:]
    return ModeInterval(seq.offset + first, seq.offset + last, contiguous)


@dataclass(frozen=True)
class ShiftedTerm:
    """One summand ``weight * x_{i - shift}`` of a shifted combination."""

    weight: Fraction
    shift: int
    seq: GenusDistribution

    def __post_init__(self) -> None:
        object.__setattr__(self, "weight", Fraction(self.weight))
        if self.weight <= 0:
            raise SequenceError(f"weight must be positive, got {self.weight}")
        if self.shift < 0:
            raise SequenceError(f"shift must be nonnegative, got {self.shift}")

    @property
    def support(self) -> tuple[int, int]:
        return self.seq.offset + self.shift, self.seq.max_genus + self.shift


def _require_unimodal(terms: Sequence[ShiftedTerm]) -> None:
    if not terms:
        raise EmptyTermList("at least one term is required")
    for idx, t in enumerate(terms):
        if not is_unimodal(t.seq):
            raise NotUnimodalError(f"term {idx} is not unimodal: {t.seq}")


def combine(terms: Sequence[ShiftedTerm]) -> GenusDistribution:
    """``z_i = sum_j a_j x^(j)_{i - r_j}`` with exact rational weights."""
    _require_unimodal(terms)
    lo = min(t.support[0] for t in terms)
    hi = max(t.support[1] for t in terms)
    acc = [Fraction(0)] * (hi - lo + 1)
    for t in terms:
        base = t.support[0] - lo
        for k, v in enumerate(t.seq.counts):
            acc[base + k] += t.weight * v
    out = []
    for i, v in enumerate(acc):
        if v.denominator != 1:
            raise NonIntegerResult(f"entry at genus {lo + i} is {v}")
        out.append(v.numerator)
    return GenusDistribution.from_coeffs(lo, out)


def criterion_window(terms: Sequence[ShiftedTerm]) -> ModeInterval:
    _require_unimodal(terms)
    modes = [mode_interval(t.seq).shifted(t.shift) for t in terms]
    return ModeInterval(min(mi.l for mi in modes), max(mi.m for mi in modes))


@dataclass(frozen=True)
class WindowVerdict:
    unimodal: bool
    window: ModeInterval
    window_span: int
    corollary_fires: bool
    full_check_agrees: bool
    combined: GenusDistribution


def _run_is_unimodal(values: Sequence) -> bool:
    k, n = 0, len(values)
    while k + 1 < n and values[k] <= values[k + 1]:
        k += 1
    while k + 1 < n and values[k] >= values[k + 1]:
        k += 1
    return k >= n - 1


def window_unimodality_check(terms: Sequence[ShiftedTerm]) -> WindowVerdict:
    """Decide unimodality of the combination from the criterion window alone.

    Outside ``[L, M]`` the combination is monotone by construction, so the
    window (plus one flank entry each side) settles the question.  The
    full-sequence check is run as well and recorded in ``full_check_agrees``.
    ``corollary_fires`` only reports ``M - L <= 3``; it is never used to decide.
    """
    z = combine(terms)
    window = criterion_window(terms)
    lo = max(window.l - 1, z.offset)
    hi = min(window.m + 1, z.max_genus)
    verdict = _run_is_unimodal(z.padded(lo, hi)) if lo <= hi else True
    span = window.m - window.l
    return WindowVerdict(
        unimodal=verdict,
        window=window,
        window_span=span,
        corollary_fires=span <= 3,
        full_check_agrees=verdict == is_unimodal(z),
        combined=z,
    )


def flanks_monotone(z: GenusDistribution, window: ModeInterval) -> bool:
    """True when ``z`` rises weakly up to ``window.l`` and falls weakly from ``window.m``."""
    left = z.padded(z.offset, max(window.l, z.offset))
    right = z.padded(min(window.m, z.max_genus), z.max_genus)
    return all(a <= b for a, b in zip(left, left[1:])) and all(a >= b for a, b in zip(right, right[1:]))


def supports_overlap(terms: Sequence[ShiftedTerm]) -> bool:
    """Pairwise intersection of the shifted supports."""
    spans = [t.support for t in terms]
    return all(
        max(a[0], b[0]) <= min(a[1], b[1])
        for i, a in enumerate(spans)
        for b in spans[i + 1:]
    )
