"""Genus-histogram kernels over a contiguous range of rotation-system indices.

Two interchangeable backends:

``numba``  one rotation system at a time, compiled with ``@njit``
``numpy``  batches of rotation systems, faces counted by pointer doubling

Set ``LADDERDIST_NO_NUMBA=1`` to force the numpy path (also used when numba
is not importable).  Both return identical histograms.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import factorial

import numpy as np

from .graphs import Multigraph, vertex_rotations

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

BACKENDS = ("numba", "numpy")


def default_backend() -> str:
    flag = os.environ.get("LADDERDIST_NO_NUMBA", "").strip().lower()
    if flag not in ("", "0", "false", "no") or not HAVE_NUMBA:
        return "numpy"
    return "numba"


@dataclass(frozen=True)
class Layout:
    """Flattened per-vertex successor tables for mixed-radix decoding.

    Vertex ``v`` owns slots ``vstart[v]:vstart[v+1]`` of ``slot_dart``.  Choice
    ``c`` at that vertex maps slot ``k`` to successor
    ``succ_table[tstart[v] + c*deg + k]``.  Vertex 0 is the most significant
    digit, so fixing its rotation selects one contiguous index block.
    """

    n_vertices: int
    n_edges: int
    n_darts: int
    slot_dart: np.ndarray
    vstart: np.ndarray
    radix: np.ndarray
    strides: np.ndarray
    tstart: np.ndarray
    succ_table: np.ndarray
    total: int
    max_genus: int


def make_layout(g: Multigraph) -> Layout:
    slot_dart, vstart, radix, tstart, table = [], [0], [], [], []
    for v in range(g.vertex_count):
        darts = sorted(g.darts_at(v))
        slot = {d: k for k, d in enumerate(darts)}
        tstart.append(len(table))
        count = 0
        for rot in vertex_rotations(darts):
            succ = [0] * len(darts)
            for k, d in enumerate(rot):
                succ[slot[d]] = rot[(k + 1) % len(rot)]
            table.extend(succ)
            count += 1
        assert count == (factorial(len(darts) - 1) if darts else 1)
        slot_dart.extend(darts)
        vstart.append(len(slot_dart))
        radix.append(count)
    strides = [1] * g.vertex_count
    for v in range(g.vertex_count - 2, -1, -1):
        strides[v] = strides[v + 1] * radix[v + 1]
    total = strides[0] * radix[0]
    i64 = np.int64
    return Layout(
        n_vertices=g.vertex_count,
        n_edges=g.edge_count,
        n_darts=g.dart_count,
        slot_dart=np.asarray(slot_dart, dtype=i64),
        vstart=np.asarray(vstart, dtype=i64),
        radix=np.asarray(radix, dtype=i64),
        strides=np.asarray(strides, dtype=i64),
        tstart=np.asarray(tstart, dtype=i64),
        succ_table=np.asarray(table, dtype=i64),
        total=total,
        # F >= 1 bounds the genus; the extra slot counts parity failures
        max_genus=(2 - g.vertex_count + g.edge_count - 1) // 2,
    )


def _hist_range_py(start, stop, slot_dart, vstart, strides, tstart, succ_table,
                   n_darts, n_v, n_e, hist):
    succ = np.empty(n_darts, dtype=np.int64)
    seen = np.empty(n_darts, dtype=np.uint8)
    bad = hist.shape[0] - 1
    for idx in range(start, stop):
        rem = idx
        for v in range(n_v):
            c = rem // strides[v]
            rem -= c * strides[v]
            lo = vstart[v]
            deg = vstart[v + 1] - lo
            base = tstart[v] + c * deg
            for k in range(deg):
                succ[slot_dart[lo + k]] = succ_table[base + k]
        seen[:] = 0
        faces = 0
        for d in range(n_darts):
            if seen[d] == 0:
                faces += 1
                e = d
                while seen[e] == 0:
                    seen[e] = 1
                    e = succ[e ^ 1]
        chi = 2 - n_v + n_e - faces
        if chi < 0 or chi % 2 == 1:
            hist[bad] += 1
        else:
            hist[chi // 2] += 1


if HAVE_NUMBA:
    _hist_range_nb = njit(cache=True, nogil=True)(_hist_range_py)
else:  # pragma: no cover
    _hist_range_nb = None


def _hist_numba(lay: Layout, start: int, stop: int) -> np.ndarray:
    hist = np.zeros(lay.max_genus + 2, dtype=np.int64)
    _hist_range_nb(start, stop, lay.slot_dart, lay.vstart, lay.strides, lay.tstart,
                   lay.succ_table, lay.n_darts, lay.n_vertices, lay.n_edges, hist)
    return hist


def _count_cycles(phi: np.ndarray) -> np.ndarray:
    """Cycle counts of a batch of permutations, shape (B, D) -> (B,)."""
    b, d = phi.shape
    label = np.broadcast_to(np.arange(d, dtype=np.int64), (b, d)).copy()
    jump = phi.copy()
    span = 1
    while span < d:
        label = np.minimum(label, np.take_along_axis(label, jump, axis=1))
        jump = np.take_along_axis(jump, jump, axis=1)
        span *= 2
    return (label == np.arange(d)).sum(axis=1)


def _hist_numpy(lay: Layout, start: int, stop: int, batch: int = 1 << 14) -> np.ndarray:
    hist = np.zeros(lay.max_genus + 2, dtype=np.int64)
    twin = np.arange(lay.n_darts) ^ 1
    for lo in range(start, stop, batch):
        idx = np.arange(lo, min(lo + batch, stop), dtype=np.int64)
        choice = (idx[:, None] // lay.strides[None, :]) % lay.radix[None, :]
        succ = np.empty((idx.size, lay.n_darts), dtype=np.int64)
        for v in range(lay.n_vertices):
            a, b = lay.vstart[v], lay.vstart[v + 1]
            deg = b - a
            if deg == 0:
                continue
            rows = lay.succ_table[lay.tstart[v]: lay.tstart[v] + lay.radix[v] * deg].reshape(-1, deg)
            succ[:, lay.slot_dart[a:b]] = rows[choice[:, v]]
        faces = _count_cycles(succ[:, twin])
        chi = 2 - lay.n_vertices + lay.n_edges - faces
        ok = (chi >= 0) & (chi % 2 == 0)
        hist[: lay.max_genus + 1] += np.bincount(chi[ok] // 2, minlength=lay.max_genus + 1)[: lay.max_genus + 1]
        hist[-1] += int((~ok).sum())
    return hist


def histogram_range(lay: Layout, start: int, stop: int, backend: str) -> np.ndarray:
    """Genus histogram of rotation systems ``start <= idx < stop``; last slot counts parity failures."""
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is not installed")
        return _hist_numba(lay, start, stop)
    if backend == "numpy":
        return _hist_numpy(lay, start, stop)
    raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
