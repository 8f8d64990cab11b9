"""Genus polynomials of named ladder and cross families.

Each family reduces to rows of the ladder-surface table:

* closed-end ladder ``L_n``   -> ``S_6^n``
* circular ladder ``CL_n``    -> ``S_11^n`` shifted down one genus
* Möbius ladder ``ML_n``      -> ``CL_n`` with two embeddings moved from genus 0 to 1
* Ringel ladder ``RL_n``      -> ``S_7^{n+1}``
* cross ``R_n``               -> ``2 S_5^n + 2 x S_2^n``
"""

from __future__ import annotations

from dataclasses import dataclass

from .families import FAMILIES, FamilyTable, build_table
from .seqcore import (
    GenusDistribution,
    is_log_concave,
    is_unimodal,
    linear_combination,
)

NAMED = ("L", "CL", "ML", "RL", "R")


class GraphFamilyError(ValueError):
    pass


class InvalidAdjustment(GraphFamilyError):
    pass


@dataclass(frozen=True)
class NamedFamily:
    tag: str
    n: int

    def __post_init__(self) -> None:
        if self.tag not in NAMED:
            raise GraphFamilyError(f"unknown family {self.tag!r}; expected one of {NAMED}")
        if self.n < 1:
            raise GraphFamilyError(f"n must be >= 1, got {self.n}")

    @property
    def oracle_verifiable(self) -> bool:
        # CL_n / ML_n degenerate into multigraphs below n = 3
        return self.tag in ("L", "RL") or (self.tag in ("CL", "ML") and self.n >= 3)


def _table(table: FamilyTable | None, n: int) -> FamilyTable:
    if table is None or table.max_n < n:
        return build_table(n)
    return table


def genus_poly(tag: str, n: int, table: FamilyTable | None = None) -> GenusDistribution:
    fam = NamedFamily(tag, n)
    if fam.tag == "L":
        return _table(table, n).get(6, n)
    if fam.tag == "CL":
        return _table(table, n).get(11, n).shift(-1)
    if fam.tag == "ML":
        cl = genus_poly("CL", n, table)
        if cl[0] < 2:
            raise InvalidAdjustment(f"g_0(CL_{n}) = {cl[0]} < 2")
        entries = dict(cl.items())
        entries[0] -= 2
        entries[1] = entries.get(1, 0) + 2
        return GenusDistribution.from_coeffs(0, [entries.get(i, 0) for i in range(max(entries) + 1)])
    if fam.tag == "RL":
        return _table(table, n + 1).get(7, n + 1)
    t = _table(table, n)
    return linear_combination([(2, 0, t.get(5, n)), (2, 1, t.get(2, n))])


def poly_product(a: GenusDistribution, b: GenusDistribution) -> GenusDistribution:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a.counts):
        for k, y in enumerate(b.counts):
            out[i + k] += x * y
    return GenusDistribution(a.offset + b.offset, tuple(out))


@dataclass(frozen=True)
class PartialPolySet:
    """Partial genus polynomials ``f_1 .. f_11`` of a root graph; ``None`` is zero."""

    parts: tuple[GenusDistribution | None, ...]

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if len(parts) != 11:
            raise GraphFamilyError(f"expected 11 partial polynomials, got {len(parts)}")
        if all(p is None for p in parts):
            raise GraphFamilyError("all partial polynomials are zero")

    @classmethod
    def from_dict(cls, parts: dict[int, GenusDistribution]) -> "PartialPolySet":
        bad = set(parts) - set(FAMILIES)
        if bad:
            raise GraphFamilyError(f"partial indices must be in 1..11, got {sorted(bad)}")
        return cls(tuple(parts.get(j) for j in FAMILIES))

    def __getitem__(self, j: int) -> GenusDistribution | None:
        return self.parts[j - 1]

    @property
    def root_polynomial(self) -> GenusDistribution:
        return linear_combination([(1, 0, p) for p in self.parts])


def compose_ladder(partials: PartialPolySet, n: int, table: FamilyTable | None = None) -> GenusDistribution:
    """``sum_j f_j(x) * f_{S_j^n}(x)``; the same formula serves ladders and crosses."""
    if n < 1:
        raise GraphFamilyError(f"n must be >= 1, got {n}")
    t = _table(table, n)
    products = [
        (1, 0, poly_product(partials[j], t.get(j, n)))
        for j in FAMILIES
        if partials[j] is not None
    ]
    return linear_combination(products)


# -- coupled recurrence sequences -----------------------------------------------

def p52_sequences(max_n: int) -> tuple[list[GenusDistribution], list[GenusDistribution | None]]:
    """Both coupled polynomial sequences up to ``max_n``.

    The second list has ``None`` at index 0; that term is never defined.
    """
    if max_n < 1:
        raise GraphFamilyError(f"max_n must be >= 1, got {max_n}")
    p1: list[GenusDistribution] = [GenusDistribution(0, (1,)), GenusDistribution(0, (2, 14))]
    p2: list[GenusDistribution | None] = [None, GenusDistribution(1, (4,))]
    for n in range(2, max_n + 1):
        p1.append(linear_combination([
            (2, 0, p1[n - 1]),
            (8, 1, p1[n - 1]),
            (48, 1, p1[n - 2]),
            (12, 1, p2[n - 1]),
        ]))
        p2.append(linear_combination([
            (8, 1, p2[n - 1]),
            (32, 1, p1[n - 2]),
        ]))
    return p1[: max_n + 1], p2[: max_n + 1]


@dataclass(frozen=True)
class P52Finding:
    sequence: str
    n: int
    dist: GenusDistribution
    unimodal: bool
    log_concave: bool


def p52_findings(max_n: int) -> list[P52Finding]:
    p1, p2 = p52_sequences(max_n)
    out = []
    for name, seqs in (("p52a", p1), ("p52b", p2)):
        for n, d in enumerate(seqs):
            if d is not None:
                out.append(P52Finding(name, n, d, is_unimodal(d), is_log_concave(d)))
    return out
