"""Walkthrough: degree boundedness and cut-off computation.

The primed SID threads one tracked parameter through every rule; its
dependency graph has vertices (predicate, base tuple) and edges labeled by
(rule, callee position). Models of unbounded degree exist exactly when an
elementary cycle through a bound-tagged rule is reachable from the queried
predicate, and on bounded instances the same graph yields a degree cut-off.
"""

from clkit import (ModelBudget, build_dependency_graph, build_primed_sid,
                   decide_bounded, enumerate_models, generate_family)
from clkit.boundedness import cutoff_report
from clkit.semantics import degree

star = generate_family("star")
primed = build_primed_sid(star)
print("primed star predicates:", sorted(primed.primed_name.values()))
graph = build_dependency_graph(primed.sid)
print("dependency graph:", len(graph.vertices), "vertices,",
      len(graph.edges), "edges")
print("star bounded:", decide_bounded(star, "Star"))
print("  oracle view: max degree per depth:",
      [max((degree(g) for g, _ in enumerate_models(
          star, "Star", ModelBudget(d, 6))), default=0)
       for d in range(2, 6)])
print()

ring = generate_family("ring", h_cap=1, t_cap=1)
print("ring bounded:", decide_bounded(ring, "ring_1_1"))
rep = cutoff_report(ring, "ring_1_1")
print(f"  cut-off {rep.value} "
      f"(graph bound {rep.graph_bound}, formula bound {rep.formula_bound})")
print("  oracle max degree:",
      max(degree(g) for g, _ in enumerate_models(
          ring, "ring_1_1", ModelBudget(5, 5))))
