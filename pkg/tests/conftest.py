"""Shared builders for the test corpus. Everything is seeded and exact."""

import random
from fractions import Fraction

import pytest

from hgsparse import HyperEdge, MultiEdge, WeightedHypergraph, WeightedMultigraph


def mg(n, triples):
    """Multigraph from (u, v, w) triples."""
    return WeightedMultigraph(n, tuple(MultiEdge(u, v, Fraction(w)) for u, v, w in triples))


def random_multigraph(n, m, seed, weighted=True):
    """Random multigraph with exact rational weights, deterministic in seed."""
    rng = random.Random(("mg", n, m, seed).__repr__())
    triples = []
    for _ in range(m):
        u = rng.randint(1, n)
        v = rng.randint(1, n)
        while v == u:
            v = rng.randint(1, n)
        w = Fraction(rng.randint(1, 12), rng.randint(1, 4)) if weighted else Fraction(1)
        triples.append((u, v, w))
    return mg(n, triples)


def random_hypergraph(n, m, r_max, seed):
    """Unweighted multi-hypergraph with repeats, deterministic in seed."""
    rng = random.Random(("hg", n, m, r_max, seed).__repr__())
    edges = []
    for _ in range(m):
        size = rng.randint(2, min(r_max, n))
        verts = tuple(sorted(rng.sample(range(1, n + 1), size)))
        edges.append(HyperEdge(verts))
        # occasional exact duplicate to exercise the grouped structure
        if rng.random() < 0.25:
            edges.append(HyperEdge(verts))
    return WeightedHypergraph(n, tuple(edges))


@pytest.fixture
def tmp_hg_file(tmp_path):
    def write(h, name="h.hg"):
        from hgsparse import serialize_hypergraph

        path = tmp_path / name
        path.write_text(serialize_hypergraph(h))
        return str(path)

    return write
