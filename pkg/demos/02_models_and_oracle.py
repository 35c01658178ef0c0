"""Walkthrough: configurations, composition, degree, and the bounded oracle.

Configurations are hypergraphs: present components, interactions (hyperedges
of (component, port) pairs) and a state map. The oracle enumerates every
model of a predicate up to a derivation depth over a finite universe; it is
the ground truth all the symbolic procedures are compared against.
"""

from clkit import (ModelBudget, compose, degree, enumerate_models,
                   generate_family, is_loose, mk_config, nodes)
from clkit.semantics import format_model

# two loose single-component configurations compose into a tight 2-cycle
sm = {1: "H", 2: "T"}
left = mk_config({1}, {((1, "out"), (2, "in"))}, sm)
right = mk_config({2}, {((2, "out"), (1, "in"))}, sm)
print("left is loose:", is_loose(left), "| right is loose:", is_loose(right))
cycle = compose(left, right)
print("their composition is tight:", not is_loose(cycle),
      "with degree", degree(cycle))
print("nodes:", sorted(nodes(cycle)))
print()

ring = generate_family("ring", h_cap=1, t_cap=1)
print("ring models with at least one H and one T, depth 4, universe 4:")
for g, store in enumerate_models(ring, "ring_1_1", ModelBudget(4, 4)):
    if len(g.present) == 2 and sorted(g.present) == [1, 2]:
        print(" ", format_model(g, store, ring.params_of("ring_1_1")))
print()

star = generate_family("star")
print("star models grow in degree with the derivation depth:")
for depth in range(2, 6):
    ms = list(enumerate_models(star, "Star", ModelBudget(depth, 6)))
    print(f"  depth {depth}: {len(ms)} models, "
          f"max degree {max((degree(g) for g, _ in ms), default=0)}")
