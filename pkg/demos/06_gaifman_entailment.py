"""Walkthrough: Gaifman heaps, the annotated SL rule set, bounded entailment.

A configuration of degree at most B becomes a heap mapping each node to a
fixed-length record: presence entry, B slots per interaction type, one entry
per state. The annotated separation-logic rules generate exactly these heaps,
which reduces entailment between configuration predicates to an entailment
between SL predicates. A brute-force bounded oracle double-checks entailments
directly on configuration models.
"""

from clkit import (ModelBudget, annotate_sid, classify_rules, compute_profile,
                   decide_entail_bounded, decode_gaifman, encode_gaifman,
                   make_layout, mk_config, parse_sid)
from clkit.entailment import emit_sl_text, sl_models

# --- encoding a chain configuration -----------------------------------------

lay = make_layout(2, [("out", "in")], ("H", "T"))
print("record length K =", lay.record_len)
chain = mk_config({1, 2, 3},
                  {((1, "out"), (2, "in")), ((2, "out"), (3, "in"))},
                  {1: "H", 2: "H", 3: "T"})
heap = encode_gaifman(chain, lay)
for owner, rec in heap.cells:
    print(f"  {owner} -> {rec}")
print("decoding recovers the configuration:",
      decode_gaifman(heap, lay) == chain)
print()

# --- annotated SL rules -------------------------------------------------------

sid = parse_sid("""
behavior { ports { out, in } states { q } }
pred M(x1){ rule exists y . compstate(x1, q) * inter(x1.out, y.in) * E(y); }
pred E(x1){ rule compstate(x1, q); }
""")
print("profile:", {p: sorted(v) for p, v in compute_profile(sid).items()})
cls = classify_rules(sid)
print("progressing/connected/e-restricted:",
      cls.progressing, cls.connected, cls.e_restricted)
slsid = annotate_sid(sid, 1)
print()
print(emit_sl_text(slsid))

annot = [n for _io, n in slsid.annotations_of("M") if slsid.rules_of(n)][0]
print(f"bounded SL models of {annot} (depth 3, universe 3):")
for heap, vals in sorted(sl_models(slsid, annot, 3, 3),
                         key=lambda m: (m[1], m[0].cells)):
    print("  vals:", vals, "heap:", heap.cells)
print()

# --- bounded entailment --------------------------------------------------------

two = parse_sid("""
behavior { ports { out, in } states { H, T } }
pred Any(x1){ rule compstate(x1, H); rule compstate(x1, T); }
pred OnlyH(x1){ rule compstate(x1, H); }
""")
v = decide_entail_bounded(two, "OnlyH", "Any", ModelBudget(2, 2))
print("OnlyH |= Any:", v.holds)
v = decide_entail_bounded(two, "Any", "OnlyH", ModelBudget(2, 2))
print("Any |= OnlyH:", v.holds, "- counterexample:",
      v.counterexample[0] if v.counterexample else None)
