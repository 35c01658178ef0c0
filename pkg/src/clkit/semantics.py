"""Concrete configurations, composition, degree, and the bounded model oracle.

The oracle enumerates every model of a predicate derivable by a derivation
tree of height at most `depth`, with components drawn from the finite slice
{1..universe}. It is the ground truth the symbolic procedures are checked
against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import syntax
from .errors import StatemapMismatchError, UnboundVariableError, ValidationError

Component = int
Interaction = tuple[tuple[Component, str], ...]
Store = dict[str, Component]

DEFAULT_STATE = "q0"


def states_of(behavior: syntax.Behavior) -> tuple[str, ...]:
    """Declared states, or a single placeholder when the behavior declares none.

    A state map must be total on the universe slice, so a SID without a
    behavior block still gets one implicit state at model-building time.
    """
    return behavior.states if behavior.states else (DEFAULT_STATE,)


@dataclass(frozen=True)
class Configuration:
    """(present components, interactions, state map); the state map is total on
    the universe slice, which is exactly its domain."""

    present: frozenset[Component]
    interactions: frozenset[Interaction]
    statemap: tuple[tuple[Component, str], ...]

    def __post_init__(self):
        dom = {c for c, _ in self.statemap}
        if len(dom) != len(self.statemap):
            raise ValidationError("state map assigns a component twice")
        for it in self.interactions:
            comps = [c for c, _ in it]
            if len(set(comps)) != len(comps):
                raise ValidationError(f"interaction binds a component twice: {it}")
        missing = nodes_of(self.present, self.interactions) - dom
        if missing:
            raise ValidationError(f"state map misses components {sorted(missing)}")

    def state_of(self, c: Component) -> str:
        for comp, q in self.statemap:
            if comp == c:
                return q
        raise KeyError(c)

    def slice(self) -> frozenset[Component]:
        return frozenset(c for c, _ in self.statemap)


def mk_config(present, interactions, statemap) -> Configuration:
    return Configuration(
        frozenset(present),
        frozenset(tuple(it) for it in interactions),
        tuple(sorted(dict(statemap).items())),
    )


def nodes_of(present, interactions) -> set[Component]:
    out = set(present)
    for it in interactions:
        for c, _ in it:
            out.add(c)
    return out


def nodes(g: Configuration) -> frozenset[Component]:
    """Components occurring in g: present ones plus those in interactions."""
    return frozenset(nodes_of(g.present, g.interactions))


def degree_of(g: Configuration, c: Component) -> int:
    return sum(1 for it in g.interactions if any(cc == c for cc, _ in it))


def degree(g: Configuration) -> int:
    """Maximum number of interactions a single (possibly absent) component joins."""
    best = 0
    for c in nodes(g):
        best = max(best, degree_of(g, c))
    return best


def is_loose(g: Configuration) -> bool:
    """True iff some interaction mentions a component that is not present."""
    for it in g.interactions:
        for c, _ in it:
            if c not in g.present:
                return True
    return False


def compose(g1: Configuration, g2: Configuration) -> Configuration | None:
    """Disjoint union of components and interactions; None when they overlap.

    Both arguments must carry the same state map; differing maps are an error
    rather than an undefined composition.
    """
    if g1.statemap != g2.statemap:
        raise StatemapMismatchError("composition requires identical state maps")
    if g1.present & g2.present:
        return None
    if g1.interactions & g2.interactions:
        return None
    return Configuration(g1.present | g2.present,
                         g1.interactions | g2.interactions, g1.statemap)


# --- predicate-free satisfaction ---------------------------------------------

def _prenex_pf(f: syntax.Formula, taken: set[str]):
    ev, atoms = syntax._prenex(f, {}, taken, [0])
    for a in atoms:
        if isinstance(a, syntax.PredAtom):
            raise ValidationError("satisfies_pf expects a predicate-free formula")
    return ev, atoms


def satisfies_pf(g: Configuration, store: Store, f: syntax.Formula) -> bool:
    """Exact predicate-free satisfaction; existentials range over g's slice.

    Every spatial atom has a fixed footprint under a store, so a separating
    conjunction holds iff the atom footprints are pairwise disjoint and cover
    (present, interactions) exactly.
    """
    for v in syntax.free_vars(f):
        if v not in store:
            raise UnboundVariableError(f"variable {v} unbound in store")
    taken = set(store) | syntax.free_vars(f)
    evars, atoms = _prenex_pf(f, taken)
    slice_ = sorted(g.slice())
    if evars and not slice_:
        return False
    for choice in itertools.product(slice_, repeat=len(evars)):
        env = dict(store)
        env.update(zip(evars, choice))
        if _holds_qf(g, env, atoms):
            return True
    return False


def _holds_qf(g: Configuration, env: Store, atoms) -> bool:
    comps: list[Component] = []
    inters: list[Interaction] = []
    statedom = dict(g.statemap)
    for a in atoms:
        if isinstance(a, syntax.Emp):
            continue
        if isinstance(a, syntax.Comp):
            comps.append(env[a.var])
        elif isinstance(a, syntax.Inter):
            it = tuple((env[v], p) for v, p in a.items)
            cs = [c for c, _ in it]
            if len(set(cs)) != len(cs):
                return False
            inters.append(it)
        elif isinstance(a, syntax.StateAtom):
            c = env[a.var]
            if c not in statedom:
                raise UnboundVariableError(
                    f"component {c} outside the universe slice has no state")
            if statedom[c] != a.state:
                return False
        elif isinstance(a, syntax.Eq):
            if env[a.left] != env[a.right]:
                return False
        elif isinstance(a, syntax.Neq):
            if env[a.left] == env[a.right]:
                return False
        else:
            raise ValidationError(f"unexpected atom: {a!r}")
    if len(set(comps)) != len(comps):
        return False
    if len(set(inters)) != len(inters):
        return False
    return set(comps) == set(g.present) and set(inters) == set(g.interactions)


# --- bounded model enumeration ------------------------------------------------

@dataclass(frozen=True)
class ModelBudget:
    """Bounds for the oracle: derivation height, universe size, and whether the
    state map is enumerated on the whole slice or only on nodes."""

    depth: int
    universe: int
    states_enumerated: bool = False

    def __post_init__(self):
        if self.depth < 1 or self.universe < 1:
            raise ValidationError("budget needs depth >= 1 and universe >= 1")


# A derived footprint: components, interactions, state constraints, parameter values.
_Entry = tuple[frozenset, frozenset, tuple, tuple]


class _Oracle:
    def __init__(self, sid: syntax.SID, slice_: tuple[Component, ...]):
        self.sid = sid
        self.slice = slice_
        self.views: dict[str, list[syntax.RuleView]] = {}
        for r in sid.rules:
            self.views.setdefault(r.head, []).append(syntax.rule_view(r))
        self.memo: dict[tuple[str, int], frozenset] = {}
        self._index: dict[tuple[str, int], dict] = {}

    def derive(self, pred: str, depth: int) -> frozenset:
        if depth < 1:
            return frozenset()
        key = (pred, depth)
        if key in self.memo:
            return self.memo[key]
        out: set[_Entry] = set()
        for view in self.views.get(pred, []):
            out.update(self._apply(view, depth))
        result = frozenset(out)
        self.memo[key] = result
        return result

    def derive_by_vals(self, pred: str, depth: int) -> dict:
        key = (pred, depth)
        if key not in self._index:
            idx: dict = {}
            for e in self.derive(pred, depth):
                idx.setdefault(e[3], []).append(e)
            self._index[key] = idx
        return self._index[key]

    def _apply(self, view: syntax.RuleView, depth: int):
        child_sets = []
        for pa in view.pred_atoms:
            entries = self.derive(pa.pred, depth - 1)
            if not entries:
                return
            by_vals: dict[tuple, list[_Entry]] = {}
            for e in entries:
                by_vals.setdefault(e[3], []).append(e)
            child_sets.append((pa, by_vals))
        free = list(view.params) + list(view.exists)
        for vals in itertools.product(self.slice, repeat=len(free)):
            env = dict(zip(free, vals))
            if not self._pure_ok(view, env):
                continue
            base = self._footprint(view, env)
            if base is None:
                continue
            yield from self._combine(view, env, base, child_sets, 0)

    def _pure_ok(self, view: syntax.RuleView, env: Store) -> bool:
        for a in view.eq_atoms:
            if env[a.left] != env[a.right]:
                return False
        for a in view.neq_atoms:
            if env[a.left] == env[a.right]:
                return False
        return True

    def _footprint(self, view: syntax.RuleView, env: Store):
        comps = [env[a.var] for a in view.comp_atoms]
        if len(set(comps)) != len(comps):
            return None
        inters = []
        for a in view.inter_atoms:
            it = tuple((env[v], p) for v, p in a.items)
            cs = [c for c, _ in it]
            if len(set(cs)) != len(cs):
                return None
            inters.append(it)
        if len(set(inters)) != len(inters):
            return None
        sigma: dict[Component, str] = {}
        for a in view.state_atoms:
            c = env[a.var]
            if c in sigma and sigma[c] != a.state:
                return None
            sigma[c] = a.state
        return frozenset(comps), frozenset(inters), sigma

    def _combine(self, view, env, acc, child_sets, idx):
        comps, inters, sigma = acc
        if idx == len(child_sets):
            vals = tuple(env[p] for p in view.params)
            yield (comps, inters, tuple(sorted(sigma.items())), vals)
            return
        pa, by_vals = child_sets[idx]
        want = tuple(env[v] for v in pa.args)
        for comps2, inters2, sigma2, _ in by_vals.get(want, []):
            if comps & comps2 or inters & inters2:
                continue
            merged = dict(sigma)
            ok = True
            for c, q in sigma2:
                if merged.get(c, q) != q:
                    ok = False
                    break
                merged[c] = q
            if not ok:
                continue
            yield from self._combine(view, env,
                                     (comps | comps2, inters | inters2, merged),
                                     child_sets, idx + 1)


def _expand_states(sid, entry, slice_, states_enumerated):
    comps, inters, sigma_items, vals = entry
    states = states_of(sid.behavior)
    sigma = dict(sigma_items)
    node_set = nodes_of(comps, inters)
    open_nodes = sorted(node_set - set(sigma))
    rest = sorted(set(slice_) - node_set - set(sigma))
    rest_choices = (itertools.product(states, repeat=len(rest))
                    if states_enumerated else [tuple(states[0] for _ in rest)])
    rest_choices = list(rest_choices)
    for node_choice in itertools.product(states, repeat=len(open_nodes)):
        for rest_choice in rest_choices:
            sm = dict(sigma)
            sm.update(zip(open_nodes, node_choice))
            sm.update(zip(rest, rest_choice))
            yield mk_config(comps, inters, sm)


def enumerate_models(sid: syntax.SID, pred: str, budget: ModelBudget):
    """Yield every (configuration, store) derivable within the budget, without
    duplicates, in a canonical order."""
    if not sid.declares(pred):
        raise ValidationError(f"undeclared predicate: {pred}")
    slice_ = tuple(range(1, budget.universe + 1))
    oracle = _oracle_for(sid, slice_)
    params = sid.params_of(pred)
    seen = set()
    out = []
    for entry in oracle.derive(pred, budget.depth):
        for g in _expand_states(sid, entry, slice_, budget.states_enumerated):
            key = (g, entry[3])
            if key not in seen:
                seen.add(key)
                out.append((g, entry[3]))
    out.sort(key=lambda m: (sorted(m[0].present), sorted(m[0].interactions),
                            m[0].statemap, m[1]))
    for g, vals in out:
        yield g, dict(zip(params, vals))


_ORACLE_CACHE: dict = {}


def _oracle_for(sid: syntax.SID, slice_: tuple[Component, ...]) -> _Oracle:
    key = (sid, slice_)
    oracle = _ORACLE_CACHE.get(key)
    if oracle is None:
        if len(_ORACLE_CACHE) > 32:
            _ORACLE_CACHE.clear()
        oracle = _Oracle(sid, slice_)
        _ORACLE_CACHE[key] = oracle
    return oracle


def check_model(sid: syntax.SID, pred: str, g: Configuration, store: Store,
                depth: int) -> bool:
    """Membership variant of the oracle: is (g, store) derivable within depth?

    The derivation's components range over g's own universe slice.
    """
    if not sid.declares(pred):
        raise ValidationError(f"undeclared predicate: {pred}")
    params = sid.params_of(pred)
    for p in params:
        if p not in store:
            raise UnboundVariableError(f"store misses parameter {p}")
    want = tuple(store[p] for p in params)
    slice_ = tuple(sorted(g.slice()))
    oracle = _oracle_for(sid, slice_)
    statedom = dict(g.statemap)
    for comps, inters, sigma_items, _vals in oracle.derive_by_vals(
            pred, depth).get(want, ()):
        if comps != g.present or inters != g.interactions:
            continue
        if all(statedom.get(c) == q for c, q in sigma_items):
            return True
    return False


def format_model(g: Configuration, store: Store, params=None) -> str:
    """One-line dump with stable ordering, for golden tests."""
    comps = ",".join(str(c) for c in sorted(g.present))
    inter = ",".join(
        "(" + ",".join(f"{c}.{p}" for c, p in it) + ")"
        for it in sorted(g.interactions))
    node_states = {c: q for c, q in g.statemap if c in nodes(g)}
    state = ",".join(f"{c}:{q}" for c, q in sorted(node_states.items()))
    keys = params if params is not None else sorted(store)
    sto = ",".join(f"{k}:{store[k]}" for k in keys)
    return f"model {{ comps=[{comps}] inter=[{inter}] state={{{state}}} store={{{sto}}} }}"
