from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..seqcore import GenusDistribution
from ._kernels import default_backend, histogram_range, make_layout
from .graphs import GraphError, Multigraph

DEFAULT_BUDGET = 1 << 24


class BudgetExceeded(GraphError):
    pass


class NonIntegerGenus(GraphError):
    pass


def partition(total: int, block: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + block, total)) for lo in range(0, total, block)]


def enumerate_distribution(
    g: Multigraph,
    budget: int = DEFAULT_BUDGET,
    backend: str | None = None,
    jobs: int = 1,
) -> GenusDistribution:
    """Genus histogram over every rotation system of ``g``.

    The index space is split into one block per rotation of vertex 0 and the
    partial histograms are summed, so the result does not depend on ``jobs``.
    """
    total = g.rotation_count()
    if total > budget:
        raise BudgetExceeded(f"{total} rotation systems exceed budget {budget}")
    backend = backend or default_backend()
    lay = make_layout(g)
    blocks = partition(lay.total, int(lay.strides[0]))
    if jobs > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(lambda b: histogram_range(lay, b[0], b[1], backend), blocks))
    else:
        parts = [histogram_range(lay, lo, hi, backend) for lo, hi in blocks]
    hist = np.sum(parts, axis=0)
    if hist[-1]:
        raise NonIntegerGenus(f"{int(hist[-1])} rotation systems violated the Euler parity")
    counts = [int(c) for c in hist[:-1]]
    if sum(counts) != total:
        raise GraphError(f"histogram total {sum(counts)} != {total}")
    return GenusDistribution.from_coeffs(0, counts)
