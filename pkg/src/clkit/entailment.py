"""Entailment support: profiles, syntactic rule classes, the Gaifman-heap
encoding of bounded-degree configurations, the annotated SL rule set, and a
bounded entailment oracle.

A configuration of degree at most B becomes a finite partial map from
components to fixed-length records: one presence entry, B slots per
interaction type holding the tuples of the interactions the component joins,
and one entry per state. Unused slots hold a canonical filler that cannot be
mistaken for an interaction, which makes decoding total and lets equality of
heaps coincide with equality of configurations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import pure as pure_mod
from . import semantics, syntax
from .errors import (CapExceededError, HeapError, PreconditionError,
                     ValidationError)
from .semantics import Component, Configuration, ModelBudget
from .syntax import InterType

SINK = 0

Profile = dict[str, frozenset[int]]


# --- profile and syntactic classes -------------------------------------------

def compute_profile(sid: syntax.SID) -> Profile:
    """Greatest sets of parameter positions that every unfolding instantiates
    with top-level parameters; computed by removal until stable."""
    profile: dict[str, set[int]] = {
        n: set(range(1, a + 1)) for n, a in sid.decls}
    views = [syntax.rule_view(r) for r in sid.rules]
    changed = True
    while changed:
        changed = False
        for view in views:
            head_vars = {view.params[j - 1] for j in profile[view.head]}
            for pa in view.pred_atoms:
                for i in list(profile[pa.pred]):
                    if pa.args[i - 1] not in head_vars:
                        profile[pa.pred].discard(i)
                        changed = True
    return {n: frozenset(ps) for n, ps in profile.items()}


@dataclass(frozen=True)
class RuleFlags:
    progressing: bool
    connected: bool
    e_restricted: bool

    @property
    def all(self) -> bool:
        return self.progressing and self.connected and self.e_restricted


@dataclass(frozen=True)
class Classification:
    per_rule: tuple[RuleFlags, ...]
    profile: dict[str, frozenset[int]]

    @property
    def progressing(self) -> bool:
        return all(f.progressing for f in self.per_rule)

    @property
    def connected(self) -> bool:
        return all(f.connected for f in self.per_rule)

    @property
    def e_restricted(self) -> bool:
        return all(f.e_restricted for f in self.per_rule)

    @property
    def all(self) -> bool:
        return all(f.all for f in self.per_rule)


def _rule_pure(view: syntax.RuleView) -> pure_mod.PureFormula:
    """Equalities and disequalities of the rule body (state atoms excluded)."""
    return pure_mod.from_atoms(view.eq_atoms + view.neq_atoms)


def classify_rules(sid: syntax.SID) -> Classification:
    """Per-rule progressing / connected / e-restricted flags.

    The coverage and connection conditions are evaluated modulo the rule's
    own equalities, so that base rules written with merged parameters
    (head(x1,x2) <- x1=x2 * ...) classify the same way as the repeated
    parameter form they abbreviate.
    """
    profile = compute_profile(sid)
    flags = []
    for r in sid.rules:
        view = syntax.rule_view(r)
        pi = _rule_pure(view)
        flags.append(RuleFlags(
            _progressing(view, pi),
            _connected(view, profile),
            _e_restricted(view, profile),
        ))
    return Classification(tuple(flags), profile)


def _progressing(view: syntax.RuleView, pi) -> bool:
    if len(view.comp_atoms) != 1 or not view.params:
        return False
    x1 = view.params[0]
    if view.comp_atoms[0].var != x1:
        return False
    for a in view.inter_atoms:
        if not any(pure_mod.formeq(pi, v, x1) for v in a.vars):
            return False
    callee_vars = {v for pa in view.pred_atoms for v in pa.args}
    rest = set(view.params[1:]) | set(view.exists)
    # callee arguments and {x2.., y..} must coincide; an equal variable counts
    # (base rules written head(x1,x2) <- x1 = x2 * ... cover x2 through x1)
    anchor = callee_vars | {x1}
    for v in rest - callee_vars:
        if not any(pure_mod.formeq(pi, v, u) for u in anchor):
            return False
    for v in callee_vars - rest:
        if not any(pure_mod.formeq(pi, v, u) for u in rest):
            return False
    return True


def _connected(view: syntax.RuleView, profile: Profile) -> bool:
    if not view.params:
        return not view.pred_atoms
    anchors = {view.params[0]}
    anchors.update(view.params[j - 1] for j in profile[view.head])
    for pa in view.pred_atoms:
        z1 = pa.args[0] if pa.args else None
        ok = False
        for a in view.inter_atoms:
            vs = set(a.vars)
            if z1 in vs and vs & anchors:
                ok = True
                break
        if not ok:
            return False
    return True


def _e_restricted(view: syntax.RuleView, profile: Profile) -> bool:
    prof_vars = {view.params[j - 1] for j in profile[view.head]}
    for a in view.neq_atoms:
        if not ({a.left, a.right} & prof_vars):
            return False
    return True


# --- layout -------------------------------------------------------------------

@dataclass(frozen=True)
class Layout:
    """Record layout: presence entry, B slots per interaction type, one entry
    per state; all positions are 1-based and the regions partition [1..K]."""

    bound: int
    types: tuple[InterType, ...]
    states: tuple[str, ...]

    def __post_init__(self):
        if self.bound < 1:
            raise ValidationError("layout needs a degree bound >= 1")

    @property
    def record_len(self) -> int:
        return 1 + self.bound * sum(len(t) for t in self.types) + len(self.states)

    def pos(self, slot: int, type_index: int, k: int) -> int:
        """Entry of the k-th port of the slot-th tuple of the given type;
        slot in [0..B-1], type_index 1-based, k in [1..len(type)]."""
        before = sum(len(t) for t in self.types[:type_index - 1])
        return 1 + self.bound * before + slot * len(self.types[type_index - 1]) + k

    def slot_positions(self, slot: int, type_index: int) -> tuple[int, ...]:
        n = len(self.types[type_index - 1])
        return tuple(self.pos(slot, type_index, k) for k in range(1, n + 1))

    def spos(self, k: int) -> int:
        """Entry of the k-th state (1-based)."""
        return 1 + self.bound * sum(len(t) for t in self.types) + k

    def state_index(self, q: str) -> int:
        return self.states.index(q) + 1


def make_layout(bound: int, types, states) -> Layout:
    """Layout for a degree bound, ordered interaction types, and states given
    either as a count or as an ordered name sequence."""
    if isinstance(states, int):
        states = tuple(f"q{k}" for k in range(1, states + 1))
    return Layout(bound, tuple(tuple(t) for t in types), tuple(states))


def layout_for_sid(sid: syntax.SID, bound: int) -> Layout:
    return make_layout(bound, sid.interaction_types(),
                       semantics.states_of(sid.behavior))


# --- Gaifman heaps -------------------------------------------------------------

@dataclass(frozen=True)
class GaifmanHeap:
    cells: tuple[tuple[Component, tuple[Component, ...]], ...]  # sorted by owner

    def dom(self) -> frozenset[Component]:
        return frozenset(c for c, _ in self.cells)

    def row(self, c: Component) -> tuple[Component, ...]:
        for owner, rec in self.cells:
            if owner == c:
                return rec
        raise KeyError(c)


def mk_heap(cells: dict[Component, tuple[Component, ...]]) -> GaifmanHeap:
    return GaifmanHeap(tuple(sorted((c, tuple(r)) for c, r in cells.items())))


def _filler(owner: Component, itype: InterType) -> tuple[Component, ...]:
    """Canonical content of an unused slot: the all-owner tuple, which cannot
    be an interaction (components must be pairwise distinct); unary types use
    the sink instead, since a one-entry owner tuple would be a valid
    interaction."""
    if len(itype) == 1:
        return (SINK,)
    return tuple(owner for _ in itype)


def _xi_tuples(g: Configuration, itype: InterType, c: Component):
    out = []
    for it in g.interactions:
        if tuple(p for _, p in it) == itype and any(cc == c for cc, _ in it):
            out.append(tuple(cc for cc, _ in it))
    return sorted(set(out))


def encode_gaifman(g: Configuration, layout: Layout) -> GaifmanHeap:
    """Canonical heap of a configuration with degree within the layout bound."""
    if semantics.degree(g) > layout.bound:
        raise PreconditionError(
            f"configuration degree {semantics.degree(g)} exceeds bound {layout.bound}")
    for it in g.interactions:
        if tuple(p for _, p in it) not in layout.types:
            raise PreconditionError(f"interaction type {it} not in layout")
    cells = {}
    for c0 in sorted(semantics.nodes(g)):
        if c0 == SINK:
            raise PreconditionError("component 0 is reserved for the sink")
        rec = [SINK] * layout.record_len
        rec[0] = c0 if c0 in g.present else SINK
        for j, ty in enumerate(layout.types, start=1):
            tuples = _xi_tuples(g, ty, c0)
            if len(tuples) > layout.bound:
                raise PreconditionError("per-type slot overflow")
            for slot in range(layout.bound):
                content = tuples[slot] if slot < len(tuples) else _filler(c0, ty)
                for k, val in zip(layout.slot_positions(slot, j), content):
                    rec[k - 1] = val
        q = g.state_of(c0)
        if q not in layout.states:
            raise PreconditionError(f"state {q} not in layout")
        rec[layout.spos(layout.state_index(q)) - 1] = c0
        cells[c0] = tuple(rec)
    return mk_heap(cells)


def check_gaifman(h: GaifmanHeap, g: Configuration, layout: Layout) -> bool:
    """Checker for the three Gaifman-heap conditions against a configuration.

    Interaction slots are read strictly: the decodable tuples of a record
    (pairwise distinct entries containing the owner) must be exactly the
    tuples of the interactions the owner joins, each once; everything else in
    the slots is treated as filler.
    """
    if h.dom() != semantics.nodes(g):
        return False
    for c0, rec in h.cells:
        if len(rec) != layout.record_len:
            return False
        if (rec[0] == c0) != (c0 in g.present):
            return False
        for j, ty in enumerate(layout.types, start=1):
            found = []
            for slot in range(layout.bound):
                t = tuple(rec[k - 1] for k in layout.slot_positions(slot, j))
                if len(set(t)) == len(t) and c0 in t and SINK not in t:
                    found.append(t)
            if sorted(found) != _xi_tuples(g, ty, c0):
                return False
        owner_states = [k for k in range(1, len(layout.states) + 1)
                        if rec[layout.spos(k) - 1] == c0]
        if owner_states != [layout.state_index(g.state_of(c0))]:
            return False
    return True


def decode_gaifman(h: GaifmanHeap, layout: Layout) -> Configuration:
    """Unique configuration of a well-formed heap; raises HeapError otherwise."""
    present = set()
    inters = set()
    statemap = {}
    for c0, rec in h.cells:
        if len(rec) != layout.record_len:
            raise HeapError(f"record of {c0} has length {len(rec)}")
        if rec[0] == c0:
            present.add(c0)
        for j, ty in enumerate(layout.types, start=1):
            for slot in range(layout.bound):
                t = tuple(rec[k - 1] for k in layout.slot_positions(slot, j))
                if all(v == SINK for v in t):
                    continue
                if SINK in t:
                    raise HeapError(f"record of {c0}: partial sink tuple {t}")
                if len(set(t)) == len(t) and c0 in t:
                    inters.add(tuple(zip(t, ty)))
                elif t == _filler(c0, ty):
                    continue
                else:
                    raise HeapError(f"record of {c0}: invalid slot tuple {t}")
        owner_states = [k for k in range(1, len(layout.states) + 1)
                        if rec[layout.spos(k) - 1] == c0]
        if len(owner_states) != 1:
            raise HeapError(f"record of {c0}: no or ambiguous state entry")
        statemap[c0] = layout.states[owner_states[0] - 1]
    return semantics.mk_config(present, inters, statemap)


# --- annotated SL rules --------------------------------------------------------

Iota = tuple[tuple[int, ...], ...]  # row-major over (param index, type index)


def _iota_get(iota: Iota, i: int, j: int, m: int) -> tuple[int, ...]:
    return iota[(i - 1) * m + (j - 1)]


@dataclass(frozen=True)
class SLRule:
    head: str
    params: tuple[str, ...]
    exists: tuple[str, ...]
    pto_source: str
    pto_target: tuple[str, ...]
    eqs: tuple[tuple[str, str], ...]    # (record entry var or scalar, scalar)
    neqs: tuple[tuple[str, str], ...]
    preds: tuple[tuple[str, tuple[str, ...]], ...]


@dataclass(frozen=True)
class SLSID:
    bound: int
    layout: Layout
    decls: tuple[tuple[str, int], ...]
    rules: tuple[SLRule, ...]
    table: tuple[tuple[str, Iota, str], ...]   # (predicate, iota, annotated name)

    def name_of(self, pred: str, iota: Iota) -> str:
        for p, io, n in self.table:
            if p == pred and io == iota:
                return n
        raise ValidationError(f"no annotation for {pred} with {iota}")

    def annotations_of(self, pred: str):
        return [(io, n) for p, io, n in self.table if p == pred]

    def rules_of(self, name: str):
        return [r for r in self.rules if r.head == name]


def record_vars(v: str, k: int) -> tuple[str, ...]:
    return tuple(f"{v}__r{i}" for i in range(1, k + 1))


def _iotas(arity: int, m: int, bound: int):
    """All maps (param index, type index) -> subset of [0..B-1], row-major."""
    subsets = []
    for size in range(bound + 1):
        subsets.extend(itertools.combinations(range(bound), size))
    subsets.sort()
    return itertools.product(subsets, repeat=arity * m)


def annotate_sid(sid: syntax.SID, bound: int, cap: int = 10 ** 5,
                 types=None) -> SLSID:
    """Annotated SL rule set generating the Gaifman heaps of the predicate models.

    Every stem rule is combined with an annotation for the head and one for
    each callee; a combination survives when, for every parameter and type,
    the head annotation splits into the positions delegated to callees plus
    exactly one position per interaction atom of the stem on that parameter.
    Slot positions for atoms on existential variables are chosen the same way
    and enumerated. `types` overrides the layout's interaction types (default:
    the types occurring in the SID).
    """
    cls = classify_rules(sid)
    if not cls.all:
        raise PreconditionError(
            "annotation requires a progressing, connected, e-restricted SID")
    for r in sid.rules:
        for v in syntax.rule_view(r).params + syntax.rule_view(r).exists:
            if "__r" in v:
                raise PreconditionError(
                    "variable names containing '__r' are reserved for records")
    if types is None:
        layout = layout_for_sid(sid, bound)
    else:
        layout = make_layout(bound, types, semantics.states_of(sid.behavior))
        for ty in sid.interaction_types():
            if ty not in layout.types:
                raise PreconditionError(f"type {ty} missing from the layout")
    m = len(layout.types)
    kk = layout.record_len
    table = []
    names = {}
    for pred, arity in sid.decls:
        for idx, iota in enumerate(_iotas(arity, m, bound)):
            name = f"{pred}__a{idx}"
            names[(pred, iota)] = name
            table.append((pred, iota, name))
        if len(table) > cap:
            raise CapExceededError(f"annotation table exceeded cap {cap}")
    rules = []
    seen = set()
    for r in sid.rules:
        view = syntax.rule_view(r)
        pi = _rule_pure(view)
        for head_iota in _iotas(len(view.params), m, bound):
            callee_iotas = [list(_iotas(len(pa.args), m, bound))
                            for pa in view.pred_atoms]
            for combo in itertools.product(*callee_iotas):
                for rule in _emit(sid, layout, view, pi, head_iota, combo, names):
                    if rule not in seen:
                        seen.add(rule)
                        rules.append(rule)
                        if len(rules) > cap:
                            raise CapExceededError(
                                f"annotated rule set exceeded cap {cap}")
    decls = tuple((name, (kk + 1) * sid.arity(pred))
                  for pred, _io, name in table)
    return SLSID(bound, layout, decls, tuple(rules), tuple(table))


def _xi_atoms(view: syntax.RuleView, pi, type_index: int, v: str,
              layout: Layout):
    ty = layout.types[type_index - 1]
    return [a for a in view.inter_atoms
            if a.itype == ty and any(pure_mod.formeq(pi, w, v) for w in a.vars)]


def _xi_pos(view, pi, combos, type_index, v, m):
    """Slot positions used for v's interactions of this type inside callees."""
    out = set()
    for pa, iota in zip(view.pred_atoms, combos):
        for k, arg in enumerate(pa.args, start=1):
            if pure_mod.formeq(pi, v, arg):
                out.update(_iota_get(iota, k, type_index, m))
    return out


def _emit(sid, layout, view, pi, head_iota, callee_iotas, names):
    """All well-formed SL rules for one stem rule and one annotation choice."""
    m = len(layout.types)
    bound = layout.bound
    # per parameter and type: the positions this rule must realize itself
    placements: list[tuple[str, int, tuple[int, ...], list]] = []
    for i, x in enumerate(view.params, start=1):
        for j in range(1, m + 1):
            iota_ij = set(_iota_get(head_iota, i, j, m))
            xi = _xi_pos(view, pi, callee_iotas, j, x, m)
            if not xi <= iota_ij:
                return
            own = tuple(sorted(iota_ij - xi))
            atoms = _xi_atoms(view, pi, j, x, layout)
            if len(own) != len(atoms):
                return
            if atoms:
                placements.append((x, j, own, atoms))
    # existentials: choose positions outside the delegated ones
    exist_choices = []
    for y in view.exists:
        for j in range(1, m + 1):
            atoms = _xi_atoms(view, pi, j, y, layout)
            if not atoms:
                continue
            xi = _xi_pos(view, pi, callee_iotas, j, y, m)
            free = sorted(set(range(bound)) - xi)
            if len(free) < len(atoms):
                return
            options = [tuple(sorted(c))
                       for c in itertools.combinations(free, len(atoms))]
            exist_choices.append((y, j, options, atoms))
    kk = layout.record_len
    base_eqs = []
    for a in view.comp_atoms:
        base_eqs.append((record_vars(a.var, kk)[0], a.var))
    for a in view.state_atoms:
        p = layout.spos(layout.state_index(a.state))
        base_eqs.append((record_vars(a.var, kk)[p - 1], a.var))
    for a in view.eq_atoms:
        base_eqs.append((a.left, a.right))
    neqs = tuple((a.left, a.right) for a in view.neq_atoms)
    preds = []
    for pa, iota in zip(view.pred_atoms, callee_iotas):
        args = list(pa.args)
        for v in pa.args:
            args.extend(record_vars(v, kk))
        preds.append((names[(pa.pred, iota)], tuple(args)))
    head = names[(view.head, head_iota)]
    params = list(view.params)
    for v in view.params:
        params.extend(record_vars(v, kk))
    exists = list(view.exists)
    for v in view.exists:
        exists.extend(record_vars(v, kk))
    x1 = view.params[0]
    all_placements = placements + [
        (y, j, None, atoms) for (y, j, _opts, atoms) in exist_choices]
    option_lists = []
    for x, j, own, atoms in placements:
        option_lists.append([own])
    for y, j, opts, atoms in exist_choices:
        option_lists.append(opts)
    for chosen in itertools.product(*option_lists):
        perms_per_site = []
        for (v, j, _own, atoms), own in zip(all_placements, chosen):
            perms_per_site.append(list(itertools.permutations(atoms)))
        for perm_combo in itertools.product(*perms_per_site):
            eqs = list(base_eqs)
            for (v, j, _own, _atoms), own, atoms_p in zip(
                    all_placements, chosen, perm_combo):
                rv = record_vars(v, kk)
                for slot, atom in zip(own, atoms_p):
                    for p, w in zip(layout.slot_positions(slot, j), atom.vars):
                        eqs.append((rv[p - 1], w))
            yield SLRule(head, tuple(params), tuple(exists), x1,
                         record_vars(x1, kk), tuple(sorted(set(eqs))),
                         neqs, tuple(preds))


# --- bounded SL model search ----------------------------------------------------

def _complete_record(owner: Component, rec: list, layout: Layout):
    """Fill entries left unconstrained by the rules with the canonical choice."""
    out = list(rec)
    if out[0] is None:
        out[0] = SINK
    for j, ty in enumerate(layout.types, start=1):
        for slot in range(layout.bound):
            ks = layout.slot_positions(slot, j)
            vals = [out[k - 1] for k in ks]
            if all(v is None for v in vals):
                fill = _filler(owner, ty)
                for k, v in zip(ks, fill):
                    out[k - 1] = v
            else:
                for k, v in zip(ks, vals):
                    if v is None:
                        out[k - 1] = SINK
    for k in range(1, len(layout.states) + 1):
        if out[layout.spos(k) - 1] is None:
            out[layout.spos(k) - 1] = SINK
    return tuple(out)


class _SLSearch:
    """Bounded derivation search for annotated predicates.

    Record entries that no equality pins are completed canonically at the
    end, so the produced models are exactly the canonical heaps the rules
    admit.
    """

    def __init__(self, slsid: SLSID, universe: tuple[Component, ...]):
        self.slsid = slsid
        self.universe = universe
        self.memo: dict[tuple[str, int], frozenset] = {}

    def derive(self, name: str, depth: int) -> frozenset:
        if depth < 1:
            return frozenset()
        key = (name, depth)
        if key in self.memo:
            return self.memo[key]
        out = set()
        for rule in self.slsid.rules_of(name):
            out.update(self._apply(rule, depth))
        res = frozenset(out)
        self.memo[key] = res
        return res

    def _scalars(self, rule: SLRule):
        scalars = [v for v in rule.params if "__r" not in v]
        escalars = [v for v in rule.exists if "__r" not in v]
        return scalars, escalars

    def _apply(self, rule: SLRule, depth: int):
        scalars, escalars = self._scalars(rule)
        kk = self.slsid.layout.record_len
        child_sets = []
        for cname, cargs in rule.preds:
            entries = self.derive(cname, depth - 1)
            if not entries:
                return
            by_vals = {}
            for cells, vals in entries:
                by_vals.setdefault(vals, []).append(cells)
            child_sets.append((cname, [a for a in cargs if "__r" not in a],
                               by_vals))
        for choice in itertools.product(self.universe,
                                        repeat=len(scalars) + len(escalars)):
            env = dict(zip(scalars + escalars, choice))
            ok = True
            for l, r in rule.neqs:
                if env[l] == env[r]:
                    ok = False
                    break
            if not ok:
                continue
            own = env[rule.pto_source]
            yield from self._combine(rule, env, {own: [None] * kk},
                                     child_sets, 0, scalars)

    def _combine(self, rule, env, cells, child_sets, idx, scalars):
        if idx == len(child_sets):
            done = self._finish(rule, env, cells, scalars)
            if done is not None:
                yield done
            return
        _cname, cargs, by_vals = child_sets[idx]
        want = tuple(env[a] for a in cargs)
        for child_cells in by_vals.get(want, []):
            merged = {c: list(r) for c, r in cells.items()}
            ok = True
            for owner, rec in child_cells:
                if owner in merged:
                    ok = False
                    break
                merged[owner] = list(rec)
            if not ok:
                continue
            yield from self._combine(rule, env, merged, child_sets, idx + 1,
                                     scalars)

    def _finish(self, rule, env, cells, scalars):
        cells = {c: list(r) for c, r in cells.items()}
        for lhs, rhs in rule.eqs:
            rv = env.get(rhs)
            if rv is None:
                return None
            if "__r" in lhs:
                v, _sep, idx = lhs.rpartition("__r")
                owner = env.get(v)
                if owner is None or owner not in cells:
                    return None
                k = int(idx) - 1
                cur = cells[owner][k]
                if cur is None:
                    cells[owner][k] = rv
                elif cur != rv:
                    return None
            else:
                if env.get(lhs) != rv:
                    return None
        canon = tuple(sorted((c, tuple(r)) for c, r in cells.items()))
        vals = tuple(env[v] for v in scalars)
        return canon, vals

    def models(self, name: str, depth: int):
        layout = self.slsid.layout
        out = set()
        for cells, vals in self.derive(name, depth):
            completed = {c: _complete_record(c, list(r), layout)
                         for c, r in cells}
            out.add((mk_heap(completed), vals))
        return out


def sl_models(slsid: SLSID, annotated: str, depth: int, universe: int):
    """All (heap, scalar parameter values) derivable for one annotated
    predicate within the bounds, with canonical completion."""
    search = _SLSearch(slsid, tuple(range(1, universe + 1)))
    return search.models(annotated, depth)


# --- emission -------------------------------------------------------------------

def emit_sl_text(slsid: SLSID) -> str:
    """Annotated SL rules in a CL-like grammar with pto(x; y1,...,yK) atoms."""
    lay = slsid.layout
    out = [f"// B={slsid.bound} K={lay.record_len}"]
    for j, ty in enumerate(lay.types, start=1):
        slots = " ".join(
            "[" + ",".join(str(p) for p in lay.slot_positions(s, j)) + "]"
            for s in range(lay.bound))
        out.append(f"// type {j} = ({','.join(ty)}) slots {slots}")
    states = " ".join(f"{q}:{lay.spos(k)}"
                      for k, q in enumerate(lay.states, start=1))
    out.append(f"// presence:1 states {states}")
    for pred, iota, name in slsid.table:
        cells = []
        arity = next(a for n, a in slsid.decls if n == name)
        scalar_arity = arity // (lay.record_len + 1)
        for i in range(1, scalar_arity + 1):
            for j in range(1, len(lay.types) + 1):
                ps = _iota_get(iota, i, j, len(lay.types))
                if ps:
                    cells.append(f"({i},{j})->{{{','.join(map(str, ps))}}}")
        out.append(f"// annot {name} = {pred} iota {' '.join(cells) or '{}'}")
    for name, arity in slsid.decls:
        rules = slsid.rules_of(name)
        if not rules:
            continue
        params = rules[0].params
        out.append(f"pred {name}(" + ", ".join(params) + ") {")
        for r in rules:
            parts = [f"pto({r.pto_source}; " + ", ".join(r.pto_target) + ")"]
            parts += [f"{l} = {r2}" for l, r2 in r.eqs]
            parts += [f"{l} != {r2}" for l, r2 in r.neqs]
            parts += [f"{n}(" + ", ".join(args) + ")" for n, args in r.preds]
            body = " * ".join(parts)
            if r.exists:
                body = "exists " + " ".join(r.exists) + " . " + body
            out.append(f"  rule {body};")
        out.append("}")
    return "\n".join(out) + "\n"


# --- SL-side syntactic classes ---------------------------------------------------

def sl_profile(slsid: SLSID) -> dict[str, frozenset[int]]:
    profile = {n: set(range(1, a + 1)) for n, a in slsid.decls}
    changed = True
    while changed:
        changed = False
        for r in slsid.rules:
            head_vars = {r.params[j - 1] for j in profile[r.head]}
            for cname, cargs in r.preds:
                for i in list(profile[cname]):
                    if cargs[i - 1] not in head_vars:
                        profile[cname].discard(i)
                        changed = True
    return {n: frozenset(v) for n, v in profile.items()}


@dataclass(frozen=True)
class SLFlags:
    progressing: bool
    connected: bool
    e_restricted: bool

    @property
    def all(self) -> bool:
        return self.progressing and self.connected and self.e_restricted


def classify_sl_rules(slsid: SLSID) -> tuple[SLFlags, ...]:
    """SL-side progressing / connected / e-restricted checks, with variable
    identity taken modulo the rule's equalities."""
    profile = sl_profile(slsid)
    out = []
    for r in slsid.rules:
        progressing = r.pto_source == r.params[0]
        eqp = pure_mod.mk_pure(eqs=r.eqs)
        anchors = {r.params[j - 1] for j in profile[r.head]}
        anchors |= set(r.pto_target)
        connected = True
        for _cname, cargs in r.preds:
            z1 = cargs[0]
            if not any(pure_mod.formeq(eqp, z1, a) for a in anchors):
                connected = False
        prof_vars = {r.params[j - 1] for j in profile[r.head]}
        e_restricted = all(({l, rr} & prof_vars) for l, rr in r.neqs)
        out.append(SLFlags(progressing, connected, e_restricted))
    return tuple(out)


# --- bounded entailment ------------------------------------------------------------

@dataclass(frozen=True)
class EntailVerdict:
    holds: bool
    counterexample: tuple[Configuration, dict] | None
    direction: str      # "rhs_extends" when arity(B) > arity(A), else "rhs_prefix"
    budget: ModelBudget
    models_checked: int


def decide_entail_bounded(sid: syntax.SID, pred_a: str, pred_b: str,
                          budget: ModelBudget) -> EntailVerdict:
    """Check every bounded model of the left predicate against the right one;
    refutation-sound, verification up to the budget only.

    The two predicates share the parameter prefix of the smaller arity; the
    trailing parameters of the right predicate, when it is wider, are
    existentially quantified over the model's universe slice.
    """
    for p in (pred_a, pred_b):
        if not sid.declares(p):
            raise ValidationError(f"undeclared predicate: {p}")
    arity_a, arity_b = sid.arity(pred_a), sid.arity(pred_b)
    shared = min(arity_a, arity_b)
    direction = "rhs_extends" if arity_b > arity_a else "rhs_prefix"
    params_a = sid.params_of(pred_a)
    params_b = sid.params_of(pred_b)
    checked = 0
    for g, store in semantics.enumerate_models(sid, pred_a, budget):
        checked += 1
        prefix = [store[params_a[i]] for i in range(shared)]
        slice_ = sorted(g.slice())
        tail_len = arity_b - shared
        found = False
        for tail in itertools.product(slice_, repeat=tail_len):
            cand = dict(zip(params_b, prefix + list(tail)))
            if semantics.check_model(sid, pred_b, g, cand, budget.depth):
                found = True
                break
        if not found:
            return EntailVerdict(False, (g, store), direction, budget, checked)
    return EntailVerdict(True, None, direction, budget, checked)
