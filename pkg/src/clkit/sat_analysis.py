"""Least-solution computation over base tuples and the satisfiability decision.

Every rule A(x...) <- exists y... . phi * B1(z1...) * ... * Bh(zh...) induces
the constraint

    mu(A)  >=  project( base(phi)  (x)  mu(B1)[params/args] (x) ... )  on A's params

and the least solution is reached by Kleene iteration over the finite domain
of satisfiable base tuples. The engine runs deterministic round-robin passes
over the rules, skipping rules whose body predicates did not change since the
last evaluation; any fair schedule reaches the same fixpoint.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import base_domain as bd
from . import pure as pure_mod
from . import semantics, syntax
from .errors import CapExceededError, ValidationError

DEFAULT_CAP = 10 ** 6


@dataclass(frozen=True)
class Provenance:
    """How a tuple first entered the solution: rule index, the child tuples
    chosen per body atom, and the height of the witnessing derivation."""

    rule_index: int
    children: tuple[tuple[str, bd.BaseTuple], ...]
    depth: int


@dataclass
class Solution:
    """Least solution: per predicate, the satisfiable base tuples projected on
    its parameters (insertion-ordered), with provenance for reconstruction."""

    tuples: dict[str, dict[bd.BaseTuple, Provenance]]
    iterations: int
    tuple_count: int

    def of(self, pred: str) -> tuple[bd.BaseTuple, ...]:
        return tuple(self.tuples.get(pred, {}))

    def is_sat(self, pred: str) -> bool:
        return bool(self.tuples.get(pred))


@dataclass(frozen=True)
class _CompiledRule:
    index: int
    view: syntax.RuleView
    base: frozenset[bd.BaseTuple]  # 0 or 1 element, from the rule's own phi
    callee_formals: tuple[tuple[str, ...], ...]


def compile_rules(sid: syntax.SID) -> list[_CompiledRule]:
    out = []
    for i, r in enumerate(sid.rules):
        view = syntax.rule_view(r)
        phi = syntax.sep_all(list(view.pf_atoms))
        formals = tuple(sid.params_of(pa.pred) for pa in view.pred_atoms)
        out.append(_CompiledRule(i, view, bd.base_of_formula(phi, view.params),
                                 formals))
    return out


def least_solution(sid: syntax.SID, cap: int = DEFAULT_CAP, trace=None,
                   schedule: str = "round_robin", seed: int = 0) -> Solution:
    """Kleene iteration to the least solution of the base-tuple constraints.

    `trace(iteration, pred, tuple, rule_index)` is called once per new tuple.
    `schedule` is "round_robin" (deterministic) or "chaotic" (seeded shuffle);
    both reach the same fixpoint. Raises CapExceededError beyond `cap` tuples.
    """
    rules = compile_rules(sid)
    sol: dict[str, dict[bd.BaseTuple, Provenance]] = {n: {} for n, _ in sid.decls}
    rng = random.Random(seed)
    count = 0
    iteration = 0
    last_eval: dict[int, int] = {}   # rule index -> iteration of last evaluation
    changed_at: dict[str, int] = {n: 0 for n, _ in sid.decls}
    while True:
        iteration += 1
        changed = False
        order = list(range(len(rules)))
        if schedule == "chaotic":
            rng.shuffle(order)
        elif schedule != "round_robin":
            raise ValidationError(f"unknown schedule: {schedule}")
        for ri in order:
            cr = rules[ri]
            deps = {pa.pred for pa in cr.view.pred_atoms}
            if ri in last_eval and all(changed_at[d] < last_eval[ri] for d in deps):
                continue
            last_eval[ri] = iteration
            for t, prov in _fire(cr, sol):
                head = cr.view.head
                if t not in sol[head]:
                    sol[head][t] = prov
                    changed_at[head] = iteration
                    changed = True
                    count += 1
                    if trace:
                        trace(iteration, head, t, cr.index)
                    if count > cap:
                        raise CapExceededError(
                            f"fixpoint exceeded cap of {cap} base tuples", count)
        if not changed:
            break
    return Solution(sol, iteration, count)


def _fire(cr: _CompiledRule, sol):
    """All tuples the rule contributes given the current solution."""
    if not cr.base:
        return
    view = cr.view
    child_lists = []
    for pa in view.pred_atoms:
        have = list(sol.get(pa.pred, {}))
        if not have:
            return
        child_lists.append(have)
    (phi_tuple,) = cr.base
    for combo in itertools.product(*child_lists):
        parts = [phi_tuple]
        children = []
        for pa, formals, t in zip(view.pred_atoms, cr.callee_formals, combo):
            # child tuples live over their callee's declared parameters
            sub = dict(zip(formals, pa.args))
            parts.append(bd.tuple_subst(t, sub))
            children.append((pa.pred, t))
        composed = bd.compose_all(parts)
        if composed is None:
            continue
        projected = bd.tuple_project(composed, view.params)
        depth = 1 + max((sol[p][t].depth for p, t in children), default=0)
        yield projected, Provenance(cr.index, tuple(children), depth)


def decide_sat(sid: syntax.SID, pred: str, cap: int = DEFAULT_CAP,
               solution: Solution | None = None) -> bool:
    """Positive iff the least solution assigns the predicate a nonempty set."""
    if not sid.declares(pred):
        raise ValidationError(f"undeclared predicate: {pred}")
    sol = solution if solution is not None else least_solution(sid, cap=cap)
    return sol.is_sat(pred)


def witness_model(sid: syntax.SID, pred: str, cap: int = DEFAULT_CAP,
                  solution: Solution | None = None):
    """A concrete model of the predicate reconstructed from the fixpoint, or None.

    The provenance of the first derived tuple is replayed into a flat
    predicate-free formula; distinct closure classes get ascending fresh
    components, states follow the class's state atom (first declared state
    otherwise). The result is validated with check_model at the recorded
    derivation depth.
    """
    if not sid.declares(pred):
        raise ValidationError(f"undeclared predicate: {pred}")
    sol = solution if solution is not None else least_solution(sid, cap=cap)
    if not sol.is_sat(pred):
        return None
    target = next(iter(sol.tuples[pred]))
    params = sid.params_of(pred)
    counter = [0]
    atoms, depth = _flatten(sid, sol, pred, target, list(params), counter)
    flat = syntax.sep_all(atoms)
    allvars = tuple(sorted(syntax.free_vars(flat) | set(params)))
    assert bd.base_of_formula(flat, allvars), "fixpoint produced an unsatisfiable unfolding"
    pi = pure_mod.from_atoms([a for a in atoms
                              if isinstance(a, (syntax.Eq, syntax.Neq, syntax.StateAtom))])
    classes: dict[str, frozenset] = {}
    for v in allvars:
        classes[v] = frozenset(w for w in allvars if pure_mod.formeq(pi, v, w))
    distinct = sorted({cls for cls in classes.values()}, key=lambda c: sorted(c))
    value_of: dict[str, int] = {}
    for i, cls in enumerate(distinct, start=1):
        for v in cls:
            value_of[v] = i
    states = semantics.states_of(sid.behavior)
    statemap = {i: states[0] for i in range(1, len(distinct) + 1)}
    for a in atoms:
        if isinstance(a, syntax.StateAtom):
            statemap[value_of[a.var]] = a.state
    comps = [value_of[a.var] for a in atoms if isinstance(a, syntax.Comp)]
    inters = [tuple((value_of[v], p) for v, p in a.items)
              for a in atoms if isinstance(a, syntax.Inter)]
    g = semantics.mk_config(comps, inters, statemap)
    store = {p: value_of[p] for p in params}
    if not semantics.check_model(sid, pred, g, store, depth):
        raise AssertionError("reconstructed witness rejected by the oracle")
    return g, store


def _flatten(sid, sol, pred, t, args, counter):
    """Replay provenance into a flat atom list over the given argument names."""
    prov = sol.tuples[pred][t]
    view = syntax.rule_view(sid.rules[prov.rule_index])
    ren = dict(zip(view.params, args))
    for y in view.exists:
        counter[0] += 1
        ren[y] = f"_w{counter[0]}"
    atoms = [syntax.rename_atom(a, ren) for a in view.pf_atoms]
    depth = 1
    for pa, (child_pred, child_tuple) in zip(view.pred_atoms, prov.children):
        child_args = [ren.get(v, v) for v in pa.args]
        sub_atoms, sub_depth = _flatten(sid, sol, child_pred, child_tuple,
                                        child_args, counter)
        atoms.extend(sub_atoms)
        depth = max(depth, 1 + sub_depth)
    return atoms, depth
