"""Weighted inputs: the direct reduction and the bucketed pipeline.

Moderate weight spreads reduce to unit copies directly.  When the spread is
astronomical the copy count would explode, so the pipeline splits edges into
geometric weight buckets, sparsifies each bucket inside the components left
after contracting all heavier same-parity buckets, and unions the two parity
classes.  Contraction is what keeps an edge 10^9 lighter than its neighbors
from ever being expanded next to them.
"""

import random
from fractions import Fraction

from hgsparse import (
    HyperEdge,
    WeightedHypergraph,
    all_cuts_report,
    fast_sparsify,
    gen_footnote_graph,
    sparsify_weighted,
)

h = gen_footnote_graph(8)
res = sparsify_weighted(h, 0.5, seed=1)
rep = all_cuts_report(h, res.hypergraph, 0.5)
print(f"footnote n=8: {res.m_in} -> {res.m_out} edges, "
      f"{res.notes['reduced_copies']} unit copies, "
      f"max cut error {float(rep.max_rel_error):.4f}")
print()

rng = random.Random(42)
edges = [HyperEdge((i, i + 1)) for i in range(1, 10)]
for _ in range(6):
    verts = tuple(sorted(rng.sample(range(1, 11), rng.randint(2, 3))))
    edges.append(HyperEdge(verts, Fraction(rng.randint(1, 4))))
cluster = sorted(rng.sample(range(1, 11), 6))
for a, b in zip(cluster, cluster[1:]):
    edges.append(HyperEdge((a, b), Fraction(10**9 * rng.randint(1, 4))))
wide = WeightedHypergraph(10, tuple(edges))

spread = max(e.weight for e in wide.edges) / min(e.weight for e in wide.edges)
print(f"wide instance: weight spread {float(spread):.1e}")
out = fast_sparsify(wide, 0.5, seed=2)
for r in out.notes["bucket_reports"]:
    print(f"  {r.parity:>4} bucket {r.index}: weight {float(r.weight_in):.3g} -> "
          f"{float(r.weight_out):.3g}, supervertices {r.n_super_before} -> "
          f"{r.n_super_after} (delta {r.delta})")
rep = all_cuts_report(wide, out.hypergraph, 0.5)
print(f"union of parities: {out.m_in} -> {out.m_out} edges, "
      f"max cut error {float(rep.max_rel_error):.2e}")
