"""Watching the balancing loop work.

Twelve parallel edges on {1,2} sit next to a single spanning edge {1,2,3}.
The spanning edge starts with uniform clique weights, but its (1,2) slot is
backed by the parallel cluster and lands five geometric intervals above its
weak slots, so the edge is flagged and the loop moves weight one grid unit
at a time from the strong slot to a weak one.  Three transfers suffice.
"""

from hgsparse import (
    HyperEdge,
    WeightedHypergraph,
    format_trace_line,
    is_balanced,
    run_balance,
)

h = WeightedHypergraph(
    3, tuple(HyperEdge((1, 2)) for _ in range(12)) + (HyperEdge((1, 2, 3)),))

trace = []
a = run_balance(h, gamma=2, trace=trace)

print(f"n={h.n} m={h.m} grid delta={a.delta} levels ell={a.ell} K0={a.k0}")
print()
for rec in trace:
    print(format_trace_line(rec))
print()

spanning = a.group_for((1, 2, 3))
print("final clique weights of the spanning edge:")
for pair, units in zip(spanning.slots, spanning.units_for(spanning.copies[0])):
    print(f"  slot {pair}: {units} units = {units * a.delta}")

report = is_balanced(a)
kappas = a.kappa_by_copy()
kmaxes = a.kappa_max_by_copy()
print()
print(f"balanced={report.ok} checked={report.checked_copies} "
      f"violations={len(report.violations)}")
print(f"spanning copy: kappa={kappas[-1]} kappa_max={kmaxes[-1]} "
      f"ratio within gamma={a.gamma}")
