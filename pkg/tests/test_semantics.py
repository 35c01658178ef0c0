import itertools
import random

import pytest

from clkit import syntax
from clkit.errors import (StatemapMismatchError, UnboundVariableError,
                          ValidationError)
from clkit.semantics import (ModelBudget, check_model, compose,
                             degree, degree_of, enumerate_models, format_model,
                             is_loose, mk_config, nodes, satisfies_pf)
from clkit.syntax import Comp, Emp, Eq, Inter, Neq, Sep, StateAtom

from conftest import naive_satisfies, random_config, random_formula

SM2 = {1: "H", 2: "T"}


def cfg(present=(), inters=(), sm=SM2):
    return mk_config(present, inters, sm)


def test_compose_unit():
    g = cfg({1}, {((1, "out"), (2, "in"))})
    unit = cfg()
    assert compose(g, unit) == g
    assert compose(unit, g) == g


def test_compose_overlap_undefined():
    g = cfg({1})
    assert compose(g, g) is None
    h = cfg((), {((1, "out"), (2, "in"))})
    assert compose(h, h) is None


def test_compose_statemap_mismatch_is_error():
    g = cfg({1})
    h = mk_config({2}, (), {1: "H", 2: "H"})
    with pytest.raises(StatemapMismatchError):
        compose(g, h)


def test_compose_two_loose_singletons_tight():
    g1 = cfg({1}, {((1, "out"), (2, "in"))})
    g2 = cfg({2}, {((2, "out"), (1, "in"))})
    assert is_loose(g1) and is_loose(g2)
    g = compose(g1, g2)
    assert g is not None and not is_loose(g)
    assert g.present == frozenset({1, 2})


def test_compose_commutative_associative():
    parts = [cfg({1}), cfg({2}, {((2, "out"), (1, "in"))}),
             cfg((), {((1, "out"), (2, "in"))})]
    for a, b in itertools.permutations(parts, 2):
        x, y = compose(a, b), compose(b, a)
        assert x == y
    lhs = compose(compose(parts[0], parts[1]), parts[2])
    rhs = compose(parts[0], compose(parts[1], parts[2]))
    assert lhs == rhs is not None


def test_degree():
    assert degree(cfg()) == 0
    ring = cfg({1, 2}, {((1, "out"), (2, "in")), ((2, "out"), (1, "in"))})
    assert degree(ring) == 2
    hub = mk_config({1, 2, 3, 4},
                    {((1, "out"), (2, "in")), ((1, "out"), (3, "in")),
                     ((1, "out"), (4, "in"))},
                    {i: "H" for i in range(1, 5)})
    assert degree(hub) == 3
    assert degree_of(hub, 1) == 3 and degree_of(hub, 2) == 1


def test_nodes():
    assert nodes(cfg()) == frozenset()
    g = cfg({1}, {((1, "out"), (2, "in"))})
    assert nodes(g) == frozenset({1, 2})
    tight = cfg({1, 2}, {((1, "out"), (2, "in"))})
    assert nodes(tight) == tight.present


def test_is_loose():
    assert is_loose(cfg({1}, {((1, "out"), (2, "in"))}))
    assert not is_loose(cfg({1, 2}))
    assert not is_loose(cfg({1, 2}, {((1, "out"), (2, "in"))}))


def test_interaction_distinctness_enforced():
    with pytest.raises(ValidationError):
        mk_config((), {((1, "out"), (1, "in"))}, {1: "H"})


def test_satisfies_emp():
    assert satisfies_pf(cfg(), {}, Emp())
    assert not satisfies_pf(cfg({1}), {}, Emp())


def test_satisfies_comp():
    g = cfg({1})
    assert satisfies_pf(g, {"x": 1}, Comp("x"))
    assert not satisfies_pf(g, {"x": 1}, Sep(Comp("x"), Comp("x")))


def test_satisfies_comp_state_needs_empty_interactions():
    g = cfg({1})
    f = Sep(Comp("x"), StateAtom("x", "H"))
    assert satisfies_pf(g, {"x": 1}, f)
    assert not satisfies_pf(g, {"x": 1}, Sep(Comp("x"), StateAtom("x", "T")))
    g2 = cfg({1}, {((1, "out"), (2, "in"))})
    assert not satisfies_pf(g2, {"x": 1}, f)


def test_satisfies_pure_needs_empty():
    g = cfg({1})
    assert not satisfies_pf(g, {"x": 1, "y": 1}, Eq("x", "y"))
    assert satisfies_pf(cfg(), {"x": 1, "y": 1}, Eq("x", "y"))
    assert satisfies_pf(cfg(), {"x": 1, "y": 2}, Neq("x", "y"))


def test_satisfies_duplicate_inter_vars_unsat():
    g = cfg((), {((1, "out"), (2, "in"))})
    f = Inter((("x", "out"), ("y", "in")))
    assert not satisfies_pf(g, {"x": 1, "y": 1}, f)
    assert satisfies_pf(g, {"x": 1, "y": 2}, f)


def test_satisfies_unbound_variable():
    with pytest.raises(UnboundVariableError):
        satisfies_pf(cfg(), {}, Comp("x"))


def test_satisfies_exists_over_slice():
    g = cfg({1})
    f = syntax.Exists("y", Comp("y"))
    assert satisfies_pf(g, {}, f)


def test_satisfies_agrees_with_naive_evaluator():
    rng = random.Random(20240811)
    agree = 0
    for _ in range(1000):
        g = random_config(rng)
        f = random_formula(rng, ["x", "y", "z"], ["H", "T"])
        store = {v: rng.choice(sorted(g.slice()))
                 for v in ("x", "y", "z")}
        assert satisfies_pf(g, store, f) == naive_satisfies(g, store, f)
        agree += 1
    assert agree == 1000


# --- bounded enumeration -------------------------------------------------------

def test_enumerate_comp_two_models(comp_only):
    ms = list(enumerate_models(comp_only, "A", ModelBudget(1, 2)))
    assert len(ms) == 2
    assert all(len(g.present) == 1 and not g.interactions for g, _ in ms)


def test_enumerate_contradiction_empty(pure_contradiction):
    assert not list(enumerate_models(pure_contradiction, "A", ModelBudget(3, 3)))


def test_enumerate_ring_small_sizes(ring11):
    ms = list(enumerate_models(ring11, "ring_1_1", ModelBudget(4, 4)))
    sizes = {len(g.present) for g, _ in ms}
    assert {2, 3} <= sizes
    assert all(degree(g) == 2 for g, _ in ms)
    assert all(not is_loose(g) for g, _ in ms)


def test_enumeration_no_duplicates(ring11):
    ms = list(enumerate_models(ring11, "ring_1_1", ModelBudget(4, 4)))
    assert len(ms) == len({(g, tuple(sorted(s.items()))) for g, s in ms})


def test_check_model_accepts_enumerated(ring11):
    ms = list(enumerate_models(ring11, "ring_1_1", ModelBudget(4, 4)))
    for g, store in ms[:25]:
        assert check_model(ring11, "ring_1_1", g, store, 4)


def test_check_model_monotone_in_depth(ring11):
    ms = list(enumerate_models(ring11, "ring_1_1", ModelBudget(4, 4)))
    for g, store in ms[:10]:
        assert check_model(ring11, "ring_1_1", g, store, 5)


def test_check_model_rejects_dangling(comp_only):
    g = mk_config({1}, {((1, "out"), (2, "in"))}, {1: "q", 2: "q"})
    assert not check_model(comp_only, "A", g, {"x": 1}, 3)


def test_progressing_models_have_present_nodes(ring11):
    # for progressing rules, parameters denote present components and
    # nodes coincide with the present set
    for g, store in enumerate_models(ring11, "ring_1_1", ModelBudget(4, 4)):
        assert set(store.values()) <= set(g.present)
        assert nodes(g) == g.present


def test_degree_bounded_by_unfolding_length(suite):
    # degree <= b1 * sum(b2^k, k <= depth) for every enumerated model
    for name, sid, pred in suite:
        b1 = b2 = 0
        for r in sid.rules:
            view = syntax.rule_view(r)
            b1 = max(b1, len(view.comp_atoms) + len(view.inter_atoms))
            b2 = max(b2, len(view.pred_atoms))
        depth = 4
        bound = b1 * sum(b2 ** k for k in range(depth + 1))
        for g, _ in enumerate_models(sid, pred, ModelBudget(depth, 4)):
            assert degree(g) <= bound, name


def test_state_enumeration_flag(star):
    few = list(enumerate_models(star, "Star", ModelBudget(2, 2)))
    all_ = list(enumerate_models(star, "Star", ModelBudget(2, 2, True)))
    assert len(all_) >= len(few)


def test_model_dump_format():
    g = mk_config({1}, {((1, "out"), (2, "in"))}, {1: "H", 2: "T", 3: "H"})
    line = format_model(g, {"x": 1}, ("x",))
    assert line == ("model { comps=[1] inter=[(1.out,2.in)] "
                    "state={1:H,2:T} store={x:1} }")
