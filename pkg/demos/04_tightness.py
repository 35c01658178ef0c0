"""Walkthrough: tightness via the two reductions to satisfiability.

A configuration is loose when some interaction mentions an absent component.
Looseness reduces to satisfiability of a transformed SID whose entry rule
materializes the absent component; the converse reduction hangs one dangling
interaction next to the queried predicate.
"""

from clkit import (build_loose_sid, build_sat_to_loose, decide_loose,
                   decide_sat, decide_tight, generate_family, parse_sid,
                   print_sid)

ring = generate_family("ring", h_cap=1, t_cap=1)
print("ring is tight:", decide_tight(ring, "ring_1_1"))

dangling = parse_sid("""
behavior { ports { in, out } states { q } }
pred L(x){ rule exists y . comp(x) * inter(x.out, y.in); }
""")
print("dangling interaction is loose:", decide_loose(dangling, "L"))
print()

red = build_loose_sid(dangling, "L")
print("the reduction adds primed predicates and one entry rule:")
print(print_sid(red.sid))

out, loose_name = build_sat_to_loose(ring, "ring_1_1")
print("satisfiability agrees with looseness of the augmented SID:",
      decide_sat(ring, "ring_1_1") == decide_loose(out, loose_name))
