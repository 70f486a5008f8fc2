"""Weighted multi-hypergraphs: data model, file format, generators, cuts.

Vertices are integers 1..n.  Hyperedges are sorted tuples of at least two
distinct vertices with an exact positive rational weight.  Parallel edges
(same vertex set) are allowed and kept as separate entries.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Weight = Fraction


class ParseError(ValueError):
    """Raised on malformed hypergraph files; carries a 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.reason = message


def as_weight(value) -> Fraction:
    """Convert ints, floats, strings, or Fractions to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(value)
    return Fraction(str(value)) if isinstance(value, str) else Fraction(value)


@dataclass(frozen=True)
class HyperEdge:
    vertices: tuple[int, ...]
    weight: Fraction = Fraction(1)

    def __post_init__(self):
        vs = self.vertices
        if len(vs) < 2:
            raise ValueError("hyperedge needs at least 2 distinct vertices")
        if any(vs[i] >= vs[i + 1] for i in range(len(vs) - 1)):
            raise ValueError("hyperedge vertices must be strictly increasing")
        if not isinstance(self.weight, Fraction):
            object.__setattr__(self, "weight", as_weight(self.weight))
        if self.weight <= 0:
            raise ValueError("hyperedge weight must be positive")

    @classmethod
    def of(cls, vertices: Iterable[int], weight=1) -> "HyperEdge":
        return cls(tuple(sorted(set(vertices))), as_weight(weight))

    @property
    def size(self) -> int:
        return len(self.vertices)

    def mask(self) -> int:
        m = 0
        for v in self.vertices:
            m |= 1 << (v - 1)
        return m


@dataclass(frozen=True)
class WeightedHypergraph:
    n: int
    edges: tuple[HyperEdge, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("vertex count must be at least 1")
        if not isinstance(self.edges, tuple):
            object.__setattr__(self, "edges", tuple(self.edges))
        for e in self.edges:
            if e.vertices[0] < 1 or e.vertices[-1] > self.n:
                raise ValueError(
                    f"vertex id {e.vertices[0] if e.vertices[0] < 1 else e.vertices[-1]}"
                    f" out of range [1,{self.n}]"
                )

    @property
    def m(self) -> int:
        return len(self.edges)

    def is_unweighted(self) -> bool:
        return all(e.weight == 1 for e in self.edges)

    def total_weight(self) -> Fraction:
        return sum((e.weight for e in self.edges), Fraction(0))

    def edge_masks(self) -> list[int]:
        return [e.mask() for e in self.edges]


@dataclass(frozen=True)
class Cut:
    """One side S of a 2-cut, encoded as a bitmask (bit v-1 set iff v in S)."""

    n: int
    mask: int

    def __post_init__(self):
        full = (1 << self.n) - 1
        if self.mask <= 0 or self.mask >= full:
            raise ValueError("cut side must be a nonempty proper vertex subset")

    @classmethod
    def from_side(cls, vertices: Iterable[int], n: int) -> "Cut":
        m = 0
        for v in vertices:
            if not 1 <= v <= n:
                raise ValueError(f"vertex id {v} out of range [1,{n}]")
            m |= 1 << (v - 1)
        return cls(n, m)

    def side(self) -> tuple[int, ...]:
        return tuple(v for v in range(1, self.n + 1) if self.mask >> (v - 1) & 1)

    def complement(self) -> "Cut":
        return Cut(self.n, ((1 << self.n) - 1) ^ self.mask)


def crosses(edge_mask: int, cut_mask: int, n: int) -> bool:
    """An edge crosses a cut iff it has vertices on both sides."""
    full = (1 << n) - 1
    return bool(edge_mask & cut_mask) and bool(edge_mask & (full ^ cut_mask))


def cut_weight(h: WeightedHypergraph, cut: Cut) -> Fraction:
    if cut.n != h.n:
        raise ValueError("cut and hypergraph disagree on vertex count")
    full = (1 << h.n) - 1
    inv = full ^ cut.mask
    total = Fraction(0)
    for e in h.edges:
        em = e.mask()
        if em & cut.mask and em & inv:
            total += e.weight
    return total


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------
#
# Line 1: "<m> <n> <fmt>" with fmt 1 (weighted) or 0 (unweighted).  Then m
# edge lines, "<weight> <v1> ... <vk>" when weighted, "<v1> ... <vk>"
# otherwise.  Lines starting with '%' are comments.  Weights are decimal
# strings when exact in decimal, "p/q" otherwise, so that round trips are
# lossless.


def format_weight(w: Fraction) -> str:
    if w.denominator == 1:
        return str(w.numerator)
    den = w.denominator
    twos = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    fives = 0
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{w.numerator}/{w.denominator}"
    k = max(twos, fives)
    scaled = w.numerator * 10**k // w.denominator
    digits = str(abs(scaled)).rjust(k + 1, "0")
    sign = "-" if scaled < 0 else ""
    return f"{sign}{digits[:-k]}.{digits[-k:]}"


def serialize_hypergraph(h: WeightedHypergraph) -> str:
    # always the weighted format; the unweighted one is accepted on input only
    lines = [f"{h.m} {h.n} 1"]
    for e in h.edges:
        verts = " ".join(str(v) for v in e.vertices)
        lines.append(f"{format_weight(e.weight)} {verts}")
    return "\n".join(lines) + "\n"


def parse_hypergraph(text) -> WeightedHypergraph:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    header = None
    header_line = 0
    edges: list[HyperEdge] = []
    m = n = fmt = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        toks = line.split()
        if header is None:
            if len(toks) != 3:
                raise ParseError(lineno, "malformed header, expected '<m> <n> <fmt>'")
            try:
                m, n, fmt = (int(t) for t in toks)
            except ValueError:
                raise ParseError(lineno, "malformed header, expected three integers") from None
            if n < 1 or m < 0 or fmt not in (0, 1):
                raise ParseError(lineno, f"malformed header values m={m} n={n} fmt={fmt}")
            header = (m, n, fmt)
            header_line = lineno
            continue
        if len(edges) >= m:
            raise ParseError(lineno, f"more than {m} edge lines")
        if fmt == 1:
            if len(toks) < 2:
                raise ParseError(lineno, "weighted edge line needs a weight and vertices")
            try:
                w = Fraction(toks[0])
            except (ValueError, ZeroDivisionError):
                raise ParseError(lineno, f"bad weight {toks[0]!r}") from None
            vtoks = toks[1:]
        else:
            w = Fraction(1)
            vtoks = toks
        try:
            verts = sorted({int(t) for t in vtoks})
        except ValueError:
            raise ParseError(lineno, "bad vertex id") from None
        for v in verts:
            if not 1 <= v <= n:
                raise ParseError(lineno, f"vertex id {v} out of range [1,{n}]")
        if len(verts) < 2:
            raise ParseError(lineno, "hyperedge has fewer than 2 distinct vertices")
        if w <= 0:
            raise ParseError(lineno, f"non-positive weight {toks[0]}")
        edges.append(HyperEdge(tuple(verts), w))
    if header is None:
        raise ParseError(1, "empty input, expected a header line")
    if len(edges) != m:
        raise ParseError(header_line, f"expected {m} edge lines, found {len(edges)}")
    return WeightedHypergraph(n, tuple(edges))


# ---------------------------------------------------------------------------
# named generators
# ---------------------------------------------------------------------------


def gen_sunflower(n: int) -> WeightedHypergraph:
    """n petal edges sharing a common core of n vertices.

    Vertex v_i (i <= n) appears only in edge i, so cutting off {v_i} costs
    exactly 1; the instance is the standard witness that no reweighting of a
    single edge can stand in for several parallel petals.
    """
    if n < 1:
        raise ValueError("sunflower needs n >= 1")
    core = tuple(range(n + 1, 2 * n + 1))
    edges = tuple(HyperEdge((i,) + core) for i in range(1, n + 1))
    return WeightedHypergraph(2 * n, edges)


def gen_footnote_graph(n: int) -> WeightedHypergraph:
    """One unit hyperedge over all n vertices plus all pairs at weight 1/n^2."""
    if n < 3:
        raise ValueError("footnote graph needs n >= 3")
    w = Fraction(1, n * n)
    edges = [HyperEdge(tuple(range(1, n + 1)))]
    for u, v in itertools.combinations(range(1, n + 1), 2):
        edges.append(HyperEdge((u, v), w))
    return WeightedHypergraph(n, tuple(edges))


def gen_example(which: str, n: int, r: int, edge_cap: int = 10**6) -> WeightedHypergraph:
    """Two structured families on 2n vertices used as sampling stress tests."""
    if which == "example1":
        if r < 2 or r - 1 > n or n < 1:
            raise ValueError(f"example1 needs 2 <= r <= n+1, got n={n} r={r}")
        count = n * math.comb(n, r - 1)
        if count > edge_cap:
            raise ValueError(f"edge count {count} exceeds cap {edge_cap}")
        second = range(n + 1, 2 * n + 1)
        edges = []
        for i in range(1, n + 1):
            for rest in itertools.combinations(second, r - 1):
                edges.append(HyperEdge((i,) + rest))
        return WeightedHypergraph(2 * n, tuple(edges))
    if which == "example2":
        if r < 1 or 4 * r > n:
            raise ValueError(f"example2 needs 1 <= r and 2r <= n/2, got n={n} r={r}")
        count = 2 + 2 * math.comb(n, 2 * r)
        if count > edge_cap:
            raise ValueError(f"edge count {count} exceeds cap {edge_cap}")
        e0 = HyperEdge(tuple(range(1, 2 * r)) + (n + 1,))
        e1 = HyperEdge(tuple(range(1, r + 1)) + tuple(range(n + 1, n + r + 1)))
        edges = [e0, e1]
        for half in (range(1, n + 1), range(n + 1, 2 * n + 1)):
            for sub in itertools.combinations(half, 2 * r):
                edges.append(HyperEdge(sub))
        return WeightedHypergraph(2 * n, tuple(edges))
    raise ValueError(f"unknown example family {which!r}")


def gen_random(
    n: int,
    m: int,
    r_max: int,
    weighted: bool = False,
    w_max: int = 1,
    seed: int = 0,
) -> WeightedHypergraph:
    """Random multi-hypergraph, deterministic in the seed."""
    if n < 2:
        raise ValueError("random hypergraph needs n >= 2")
    if m < 0:
        raise ValueError("edge count must be nonnegative")
    if r_max < 2:
        raise ValueError("r_max must be at least 2")
    if weighted and w_max < 1:
        raise ValueError("w_max must be at least 1")
    rng = random.Random(seed)
    top = min(r_max, n)
    edges = []
    for _ in range(m):
        size = rng.randint(2, top)
        verts = tuple(sorted(rng.sample(range(1, n + 1), size)))
        w = Fraction(rng.uniform(1.0, float(w_max))) if weighted else Fraction(1)
        edges.append(HyperEdge(verts, w))
    return WeightedHypergraph(n, tuple(edges))
