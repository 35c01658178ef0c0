"""Walkthrough: base tuples, the least solution, and the satisfiability verdict.

Satisfiability is decided on an abstract domain: each predicate maps to the
set of base tuples (component multiset, typed interaction tuples, pure
formula) abstracting the footprints of its models that stay visible through
the parameters. The least solution is a Kleene fixpoint; a predicate is
satisfiable exactly when its set is nonempty.
"""

import math

from clkit import (decide_sat, generate_family, least_solution, parse_sid,
                   witness_model)
from clkit.base_domain import format_tuple
from clkit.semantics import format_model

ring = generate_family("ring", h_cap=1, t_cap=1)
sol = least_solution(ring)
print("fixpoint reached after", sol.iterations, "passes with",
      sol.tuple_count, "tuples")
print("tuples of ring_1_1:")
for t in sol.of("ring_1_1"):
    print("  ", format_tuple(t))
print("SAT(ring_1_1):", decide_sat(ring, "ring_1_1", solution=sol))
g, store = witness_model(ring, "ring_1_1", solution=sol)
print("witness:", format_model(g, store, ring.params_of("ring_1_1")))
print()

unsat = parse_sid("pred A(x){ rule x != x; }")
print("SAT(A) for A(x) <- x != x:", decide_sat(unsat, "A"))
print()

print("the worst case blows up doubly exponentially: |solution(A1)| = 2^(n!)")
for n in (1, 2, 3):
    sid = generate_family("worstcase", n=n)
    sol = least_solution(sid)
    print(f"  n={n}: {len(sol.of('A1'))} tuples "
          f"(expected {2 ** math.factorial(n)})")
