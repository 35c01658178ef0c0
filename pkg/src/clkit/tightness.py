"""Looseness and tightness via the two reductions to satisfiability.

Looseness is satisfiability of a transformed SID whose primed predicates
carry one extra parameter bound to some variable of an interaction atom; the
entry rule adds that component, and the addition composes exactly when the
component was absent, i.e. when the original model was loose there. The
converse reduction hangs one dangling interaction next to the queried
predicate.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import sat_analysis, syntax
from .errors import ValidationError


@dataclass(frozen=True)
class LooseReduction:
    sid: syntax.SID                 # the transformed SID
    loose_pred: str                 # entry predicate Loose[A]
    primed_name: dict[str, str]     # original predicate -> primed name


def build_loose_sid(sid: syntax.SID, pred: str) -> LooseReduction:
    """The looseness-to-satisfiability SID: the original rules, plus primed
    rules of three kinds, plus the entry rule for the queried predicate."""
    if not sid.declares(pred):
        raise ValidationError(f"undeclared predicate: {pred}")
    taken = {n for n, _ in sid.decls}
    primed = {}
    for n, _ in sid.decls:
        primed[n] = syntax.fresh_name(f"{n}__loose", taken)
        taken.add(primed[n])
    loose_pred = syntax.fresh_name(f"Loose__{pred}", taken)
    decls = list(sid.decls)
    decls += [(primed[n], a + 1) for n, a in sid.decls]
    decls.append((loose_pred, sid.arity(pred)))
    rules = list(sid.rules)
    for r in sid.rules:
        view = syntax.rule_view(r)
        used = set(view.params) | set(view.exists) | {v for a in view.pf_atoms
                                                      for v in syntax.free_vars(a)}
        w = syntax.fresh_name("w", used)
        params = view.params + (w,)
        base = list(view.pf_atoms)
        plain = list(view.pred_atoms)
        # first kind: the extra parameter equals a variable of an interaction atom
        for z in view.interaction_vars():
            rules.append(syntax.Rule(primed[r.head], params, syntax.exists_all(
                list(view.exists),
                syntax.sep_all(base + [syntax.Eq(w, z)] + plain))))
        # second kind: the extra parameter is passed to exactly one callee
        for i, pa in enumerate(view.pred_atoms):
            body = list(plain)
            body[i] = syntax.PredAtom(primed[pa.pred], pa.args + (w,))
            rules.append(syntax.Rule(primed[r.head], params, syntax.exists_all(
                list(view.exists), syntax.sep_all(base + body))))
        # base kind: predicate-free rules materialize the extra component
        if not view.pred_atoms:
            rules.append(syntax.Rule(primed[r.head], params, syntax.exists_all(
                list(view.exists), syntax.sep_all(base + [syntax.Comp(w)]))))
    a_params = sid.params_of(pred)
    y = syntax.fresh_name("y", set(a_params))
    rules.append(syntax.Rule(loose_pred, a_params, syntax.exists_all([y], syntax.sep_all(
        [syntax.PredAtom(primed[pred], a_params + (y,)), syntax.Comp(y)]))))
    return LooseReduction(syntax.SID(sid.behavior, tuple(decls), tuple(rules)),
                          loose_pred, primed)


def decide_loose(sid: syntax.SID, pred: str,
                 cap: int = sat_analysis.DEFAULT_CAP) -> bool:
    """Some model of the predicate has an interaction on an absent component."""
    red = build_loose_sid(sid, pred)
    return sat_analysis.decide_sat(red.sid, red.loose_pred, cap=cap)


def decide_tight(sid: syntax.SID, pred: str,
                 cap: int = sat_analysis.DEFAULT_CAP) -> bool:
    """Every model is tight; the complement of the looseness problem."""
    return not decide_loose(sid, pred, cap=cap)


def build_sat_to_loose(sid: syntax.SID, pred: str, p1: str | None = None,
                       p2: str | None = None) -> tuple[syntax.SID, str]:
    """Satisfiability-to-looseness: add one rule hanging a dangling interaction
    next to the queried predicate."""
    if not sid.declares(pred):
        raise ValidationError(f"undeclared predicate: {pred}")
    if not sid.behavior.ports:
        raise ValidationError("the behavior declares no ports")
    p1 = p1 or sid.behavior.ports[0]
    p2 = p2 or sid.behavior.ports[0]
    for p in (p1, p2):
        if p not in sid.behavior.ports:
            raise ValidationError(f"undeclared port: {p}")
    taken = {n for n, _ in sid.decls}
    name = syntax.fresh_name(f"loose__{pred}", taken)
    a_params = sid.params_of(pred)
    y1 = syntax.fresh_name("y1", set(a_params))
    y2 = syntax.fresh_name("y2", set(a_params) | {y1})
    rule = syntax.Rule(name, a_params, syntax.exists_all([y1, y2], syntax.sep_all([
        syntax.PredAtom(pred, a_params),
        syntax.Inter(((y1, p1), (y2, p2))),
    ])))
    out = syntax.SID(sid.behavior, tuple(sid.decls) + ((name, len(a_params)),),
                     tuple(sid.rules) + (rule,))
    return out, name
