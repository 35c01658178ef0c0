import pytest

from clkit import semantics, syntax
from clkit.errors import CapExceededError, ValidationError
from clkit.sat_analysis import decide_sat, least_solution, witness_model
from clkit.semantics import ModelBudget, enumerate_models
from clkit.syntax import generate_family

# suite budgets: satisfiable members exhibit a model within these bounds
SUITE_BUDGETS = {
    "ring": ModelBudget(4, 5),
    "chain": ModelBudget(4, 5),
    "star": ModelBudget(3, 4),
    "comp_only": ModelBudget(2, 3),
    "pure_contradiction": ModelBudget(3, 3),
    "no_base_case": ModelBudget(4, 3),
    "dangling": ModelBudget(3, 4),
    "worstcase2": ModelBudget(3, 4),
    "mutant_ring_swapped": ModelBudget(4, 5),
    "mutant_star_loose": ModelBudget(3, 4),
}


def test_single_comp_solution(comp_only):
    sol = least_solution(comp_only)
    (t,) = sol.of("A")
    assert t.comps == ("x",)
    assert not t.inters


def test_worstcase_two_is_four():
    sid = generate_family("worstcase", n=2)
    sol = least_solution(sid)
    assert len(sol.of("A1")) == 4


def test_no_base_case_empty(no_base_case):
    sol = least_solution(no_base_case)
    assert sol.of("A") == ()
    assert not decide_sat(no_base_case, "A")


def test_decide_sat_examples(ring11, star, pure_contradiction):
    assert decide_sat(ring11, "ring_1_1")
    assert not decide_sat(pure_contradiction, "A")
    assert decide_sat(star, "Star")


def test_decide_sat_undeclared(comp_only):
    with pytest.raises(ValidationError):
        decide_sat(comp_only, "Nope")


def test_cap_exceeded():
    sid = generate_family("worstcase", n=3)
    with pytest.raises(CapExceededError):
        least_solution(sid, cap=10)


def test_trace_callback(comp_only):
    events = []
    least_solution(comp_only, trace=lambda *a: events.append(a))
    assert len(events) == 1
    it, pred, t, rule = events[0]
    assert pred == "A" and rule == 0


def test_schedule_independence(suite):
    for name, sid, _pred in suite:
        base = least_solution(sid)
        for seed in (1, 2, 3):
            other = least_solution(sid, schedule="chaotic", seed=seed)
            assert ({p: set(ts) for p, ts in base.tuples.items()}
                    == {p: set(ts) for p, ts in other.tuples.items()}), name


def test_witness_single(comp_only):
    g, store = witness_model(comp_only, "A")
    assert g.present == frozenset({store["x"]})
    assert not g.interactions


def test_witness_absent_for_unsat(pure_contradiction):
    assert witness_model(pure_contradiction, "A") is None


def test_witness_ring_validated(ring11):
    g, store = witness_model(ring11, "ring_1_1")
    assert g is not None
    assert not semantics.is_loose(g)
    assert semantics.degree(g) == 2


def test_witness_whole_suite(suite):
    for name, sid, pred in suite:
        sat = decide_sat(sid, pred)
        w = witness_model(sid, pred)
        assert (w is not None) == sat, name
        # witness_model validates against check_model internally


def test_sat_agrees_with_oracle(suite):
    for name, sid, pred in suite:
        budget = SUITE_BUDGETS[name]
        fix = decide_sat(sid, pred)
        oracle = any(True for _ in enumerate_models(sid, pred, budget))
        assert fix == oracle, name


def test_sat_completeness_lemma(suite):
    """Every oracle model is covered by some fixpoint tuple: its components
    and interactions embed into the model and its pure part holds."""
    for name, sid, pred in suite:
        sol = least_solution(sid)
        params = sid.params_of(pred)
        budget = SUITE_BUDGETS[name]
        for g, store in enumerate_models(sid, pred, budget):
            assert _covered(sol.of(pred), params, g, store), (name, g, store)


def _covered(tuples, params, g, store):
    from clkit import pure as pure_mod
    for t in tuples:
        comps = {store[v] for v in t.comps}
        if not comps <= set(g.present):
            continue
        ok = True
        inters = set()
        for ty, ts in t.inters:
            for tup in ts:
                inters.add(tuple((store[v], p) for v, p in zip(tup, ty)))
        if not inters <= set(g.interactions):
            continue
        empty = semantics.mk_config((), (), dict(g.statemap))
        f = syntax.sep_all(pure_mod.to_atoms(t.pure))
        if semantics.satisfies_pf(empty, store, f):
            return True
    return False


def test_iterations_reported(comp_only):
    sol = least_solution(comp_only)
    assert sol.iterations >= 1
    assert sol.tuple_count == 1
