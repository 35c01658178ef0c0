"""clkit: decision procedures for a configuration logic with inductive definitions.

Satisfiability, tightness and degree boundedness of inductively defined sets
of distributed-system configurations, degree cut-offs, syntactic rule
classification, a Gaifman-heap reduction of entailment to separation logic,
and a brute-force bounded model oracle for cross-validation.
"""

from .boundedness import (build_dependency_graph, build_primed_sid,
                          decide_bounded, degree_cutoff)
from .entailment import (annotate_sid, classify_rules, compute_profile,
                         decide_entail_bounded, decode_gaifman, encode_gaifman,
                         make_layout)
from .errors import ClkitError, ParseError, ValidationError
from .sat_analysis import decide_sat, least_solution, witness_model
from .semantics import (Configuration, ModelBudget, check_model, compose,
                        degree, enumerate_models, is_loose, mk_config, nodes,
                        satisfies_pf)
from .syntax import (SID, Behavior, Rule, generate_family, parse_sid,
                     print_sid, sid_metrics)
from .tightness import (build_loose_sid, build_sat_to_loose, decide_loose,
                        decide_tight)

__all__ = [
    "SID", "Behavior", "Rule", "Configuration", "ModelBudget", "ClkitError",
    "ParseError", "ValidationError",
    "parse_sid", "print_sid", "sid_metrics", "generate_family",
    "mk_config", "compose", "degree", "nodes", "is_loose", "satisfies_pf",
    "enumerate_models", "check_model",
    "least_solution", "decide_sat", "witness_model",
    "build_loose_sid", "decide_loose", "decide_tight", "build_sat_to_loose",
    "build_primed_sid", "build_dependency_graph", "decide_bounded",
    "degree_cutoff",
    "compute_profile", "classify_rules", "make_layout", "encode_gaifman",
    "decode_gaifman", "annotate_sid", "decide_entail_bounded",
]
