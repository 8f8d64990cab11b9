import random
from collections import Counter

import numpy as np
import pytest

from ladderdist.graphfam import genus_poly
from ladderdist.oracle import (
    BACKENDS,
    HAVE_NUMBA,
    BudgetExceeded,
    GraphError,
    Multigraph,
    OutOfRange,
    RotationSystem,
    build_named_graph,
    default_backend,
    enumerate_distribution,
    face_count,
    genus_of,
    iter_rotation_systems,
    parse_edge_list,
)
from ladderdist.oracle._kernels import _count_cycles
from ladderdist.seqcore import GenusDistribution

backends = [b for b in BACKENDS if b != "numba" or HAVE_NUMBA]

DIPOLE = Multigraph(2, ((0, 1), (0, 1), (0, 1)))
K4 = Multigraph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))


def gd(offset, *counts):
    return GenusDistribution(offset, counts)


def brute_histogram(g):
    """Plain-Python enumeration through RotationSystem objects."""
    hist = Counter(genus_of(g, face_count(g, r)) for r in iter_rotation_systems(g))
    return GenusDistribution.from_mapping(dict(hist))


def test_builders_shapes():
    l1 = build_named_graph("L", 1)
    assert l1.vertex_count == 2 and l1.edges == ((0, 1),) * 3
    prism = build_named_graph("CL", 3)
    assert (prism.vertex_count, prism.edge_count) == (6, 9)
    for tag, n in [("L", 4), ("CL", 5), ("ML", 4), ("RL", 3)]:
        assert set(build_named_graph(tag, n).degrees()) == {3}
    with pytest.raises(OutOfRange):
        build_named_graph("CL", 2)
    with pytest.raises(OutOfRange):
        build_named_graph("R", 3)


def test_ml3_is_k33():
    g = build_named_graph("ML", 3)
    assert len(set(tuple(sorted(e)) for e in g.edges)) == 9
    colour = {0: 0}
    stack = [0]
    while stack:
        u = stack.pop()
        for a, b in g.edges:
            for x, y in ((a, b), (b, a)):
                if x == u:
                    if y in colour:
                        assert colour[y] != colour[u]
                    else:
                        colour[y] = 1 - colour[u]
                        stack.append(y)
    sides = Counter(colour.values())
    assert sides == {0: 3, 1: 3}


def test_face_count_examples():
    # rotation (0,2,4) at u, (1,5,3) at v: every face is a 2-gon
    planar = RotationSystem(((0, 2, 4), (1, 5, 3)))
    planar.validate(DIPOLE)
    assert face_count(DIPOLE, planar) == 3
    assert genus_of(DIPOLE, 3) == 0
    double = Multigraph(2, ((0, 1), (0, 1)))
    rot = RotationSystem(((0, 2), (1, 3)))
    assert face_count(double, rot) == 2 and genus_of(double, 2) == 0


def test_prism_has_one_face_embeddings():
    prism = build_named_graph("CL", 3)
    ones = [r for r in iter_rotation_systems(prism) if face_count(prism, r) == 1]
    assert ones and all(genus_of(prism, 1) == 2 for _ in ones)


def test_rotation_validate_rejects_bad():
    with pytest.raises(GraphError):
        RotationSystem(((0, 2), (1, 5, 3))).validate(DIPOLE)
    with pytest.raises(GraphError):
        RotationSystem(((0, 2, 1), (4, 5, 3))).validate(DIPOLE)


@pytest.mark.parametrize("backend", backends)
@pytest.mark.parametrize("g, expected", [
    (DIPOLE, gd(0, 2, 2)),
    (K4, gd(0, 2, 14)),
    (build_named_graph("CL", 3), gd(0, 2, 38, 24)),
    (build_named_graph("ML", 3), gd(1, 40, 24)),
])
def test_known_censuses(backend, g, expected):
    assert enumerate_distribution(g, backend=backend) == expected
    assert brute_histogram(g) == expected


@pytest.mark.parametrize("backend", backends)
def test_kernels_match_python_enumeration(backend):
    rng = random.Random(3)
    graphs = [build_named_graph("L", 3), build_named_graph("RL", 2),
              Multigraph(1, ((0, 0), (0, 0))),
              Multigraph(3, ((0, 1), (1, 2), (2, 0), (0, 0), (1, 2)))]
    for _ in range(6):
        v = rng.randint(2, 5)
        edges = [(i, i + 1) for i in range(v - 1)]
        edges += [(rng.randrange(v), rng.randrange(v)) for _ in range(rng.randint(1, 4))]
        g = Multigraph(v, tuple(edges))
        if g.rotation_count() <= 5000:
            graphs.append(g)
    for g in graphs:
        hist = enumerate_distribution(g, backend=backend)
        assert hist == brute_histogram(g)
        assert hist.total == g.rotation_count()


@pytest.mark.parametrize("tag, n", [("L", 4), ("CL", 4), ("ML", 4), ("RL", 2)])
def test_oracle_equals_formula(tag, n):
    assert enumerate_distribution(build_named_graph(tag, n)) == genus_poly(tag, n)


def test_backends_agree_and_jobs_deterministic():
    g = build_named_graph("CL", 5)
    ref = enumerate_distribution(g, backend="numpy", jobs=1)
    for backend in backends:
        for jobs in (1, 3, 8):
            assert enumerate_distribution(g, backend=backend, jobs=jobs) == ref


def test_relabeling_invariance():
    rng = random.Random(5)
    for tag, n in [("L", 3), ("ML", 3), ("RL", 2)]:
        g = build_named_graph(tag, n)
        ref = enumerate_distribution(g)
        for _ in range(3):
            perm = list(range(g.vertex_count))
            rng.shuffle(perm)
            edges = list(g.relabeled(perm).edges)
            rng.shuffle(edges)
            assert enumerate_distribution(Multigraph(g.vertex_count, tuple(edges))) == ref


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_distribution(build_named_graph("CL", 5), budget=100)


def test_count_cycles_batch():
    perms = np.array([[0, 1, 2, 3], [1, 0, 3, 2], [1, 2, 3, 0], [2, 3, 0, 1]])
    assert _count_cycles(perms).tolist() == [4, 2, 1, 2]


def test_env_flag_forces_numpy(monkeypatch):
    monkeypatch.setenv("LADDERDIST_NO_NUMBA", "1")
    assert default_backend() == "numpy"
    monkeypatch.setenv("LADDERDIST_NO_NUMBA", "0")
    assert default_backend() == ("numba" if HAVE_NUMBA else "numpy")


def test_parse_edge_list():
    g = parse_edge_list("# dipole\n0 1\n0 1\n\n0 1\n")
    assert g == DIPOLE
    for bad in ("0\n", "a b\n", "", "0 -1\n", "0 1\n2 3\n"):
        with pytest.raises(GraphError):
            parse_edge_list(bad)
