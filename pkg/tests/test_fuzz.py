"""Randomized cross-validation of the symbolic procedures against the oracle.

The oracle is bounded, so only direction-safe facts are asserted on random
SIDs: a bounded model implies satisfiability, witnesses must validate, every
bounded model must be covered by a fixpoint tuple, bounded loose models imply
looseness, and the satisfiability-to-looseness reduction and predicate
renaming must agree exactly (both sides symbolic).
"""

import random

import pytest

from clkit import sat_analysis, semantics, syntax, tightness
from clkit.errors import CapExceededError
from clkit.semantics import ModelBudget, enumerate_models, is_loose
from clkit.syntax import (SID, Behavior, Comp, Emp, Eq, Inter, Neq, PredAtom,
                          Rule, StateAtom, exists_all, sep_all)

from test_sat_analysis import _covered

PORTS = ("a", "b")
STATES = ("s", "t")


def random_sid(rng: random.Random) -> SID:
    n_preds = rng.randint(1, 3)
    names = [f"P{i}" for i in range(n_preds)]
    arity = {n: rng.randint(1, 3) for n in names}
    rules = []
    for name in names:
        params = tuple(f"x{i}" for i in range(1, arity[name] + 1))
        for _ in range(rng.randint(1, 3)):
            exists = [f"y{i}" for i in range(1, rng.randint(0, 2) + 1)]
            pool = list(params) + exists
            atoms = []
            for _ in range(rng.randint(0, 4)):
                kind = rng.choice(["comp", "inter", "state", "eq", "neq"])
                if kind == "comp":
                    atoms.append(Comp(rng.choice(pool)))
                elif kind == "inter":
                    width = rng.randint(1, 3)
                    atoms.append(Inter(tuple(
                        (rng.choice(pool), rng.choice(PORTS))
                        for _ in range(width))))
                elif kind == "state":
                    atoms.append(StateAtom(rng.choice(pool), rng.choice(STATES)))
                elif kind == "eq":
                    atoms.append(Eq(rng.choice(pool), rng.choice(pool)))
                else:
                    atoms.append(Neq(rng.choice(pool), rng.choice(pool)))
            for _ in range(rng.randint(0, 2)):
                callee = rng.choice(names)
                args = tuple(rng.choice(pool)
                             for _ in range(arity[callee]))
                atoms.append(PredAtom(callee, args))
            body = exists_all(exists, sep_all(atoms) if atoms else Emp())
            rules.append(Rule(name, params, body))
    return SID(Behavior(PORTS, STATES),
               tuple((n, arity[n]) for n in names), tuple(rules))


BUDGET = ModelBudget(3, 3)


def test_fuzz_symbolic_vs_oracle():
    rng = random.Random(0xC0FFEE)
    samples = skipped = 0
    while samples < 120:
        sid = random_sid(rng)
        try:
            sol = sat_analysis.least_solution(sid, cap=20000)
        except CapExceededError:
            skipped += 1
            if skipped > 200:
                pytest.fail("generator keeps exceeding the cap")
            continue
        samples += 1
        for pred, _a in sid.decls:
            sat = sol.is_sat(pred)
            models = list(enumerate_models(sid, pred, BUDGET))
            if models:
                # a bounded model is a model: completeness direction
                assert sat, (syntax.print_sid(sid), pred)
            if sat:
                # soundness: the fixpoint yields a checkable witness
                w = sat_analysis.witness_model(sid, pred, solution=sol)
                assert w is not None
            params = sid.params_of(pred)
            for g, store in models[:20]:
                assert _covered(sol.of(pred), params, g, store), \
                    (syntax.print_sid(sid), pred, g)
            # bounded loose models imply the looseness verdict
            if any(is_loose(g) for g, _ in models):
                assert tightness.decide_loose(sid, pred, cap=50000), \
                    (syntax.print_sid(sid), pred)


def test_fuzz_sat_to_loose_exact():
    # both sides symbolic, so the reduction must agree exactly
    rng = random.Random(0xFACADE)
    samples = 0
    while samples < 60:
        sid = random_sid(rng)
        pred = sid.decls[0][0]
        try:
            sat = sat_analysis.decide_sat(sid, pred, cap=20000)
            out, loose_name = tightness.build_sat_to_loose(sid, pred)
            loose = tightness.decide_loose(out, loose_name, cap=100000)
        except CapExceededError:
            continue
        samples += 1
        assert sat == loose, syntax.print_sid(sid)


def test_fuzz_rename_invariance():
    rng = random.Random(0xBEEF)
    samples = 0
    while samples < 60:
        sid = random_sid(rng)
        ren = {n: f"Q{i}" for i, (n, _) in enumerate(sid.decls)}

        def rn(f):
            if isinstance(f, PredAtom):
                return PredAtom(ren[f.pred], f.args)
            if isinstance(f, syntax.Sep):
                return syntax.Sep(rn(f.left), rn(f.right))
            if isinstance(f, syntax.Exists):
                return syntax.Exists(f.var, rn(f.body))
            return f

        renamed = SID(sid.behavior,
                      tuple((ren[n], a) for n, a in sid.decls),
                      tuple(Rule(ren[r.head], r.params, rn(r.body))
                            for r in sid.rules))
        try:
            sols = {n: sat_analysis.decide_sat(sid, n, cap=20000)
                    for n, _ in sid.decls}
            sols2 = {n: sat_analysis.decide_sat(renamed, ren[n], cap=20000)
                     for n, _ in sid.decls}
        except CapExceededError:
            continue
        samples += 1
        assert sols == sols2


def test_fuzz_cutoff_sound_on_bounded_instances():
    from clkit import boundedness
    from clkit.semantics import degree

    rng = random.Random(0xCAB1E)
    samples = 0
    while samples < 60:
        sid = random_sid(rng)
        pred = sid.decls[0][0]
        try:
            if not boundedness.decide_bounded(sid, pred, cap=20000):
                continue
            cutoff = boundedness.degree_cutoff(sid, pred, cap=20000)
        except CapExceededError:
            continue
        samples += 1
        for g, _ in enumerate_models(sid, pred, BUDGET):
            assert degree(g) <= cutoff, (syntax.print_sid(sid), pred, g)


def test_fuzz_schedule_independence():
    rng = random.Random(0xD1CE)
    samples = 0
    while samples < 40:
        sid = random_sid(rng)
        try:
            base = sat_analysis.least_solution(sid, cap=20000)
            other = sat_analysis.least_solution(sid, cap=20000,
                                                schedule="chaotic", seed=7)
        except CapExceededError:
            continue
        samples += 1
        assert ({p: set(ts) for p, ts in base.tuples.items()}
                == {p: set(ts) for p, ts in other.tuples.items()})
