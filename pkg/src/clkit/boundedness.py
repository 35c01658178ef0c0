"""Degree-boundedness: primed SID, labeled dependency graph, cycles, cut-offs.

The primed SID threads one extra parameter through every rule; per rule it
has one variant that keeps the tracked component away from all interaction
variables (not_bound) and one variant per interaction variable that pins the
tracked component to it (bound). Unbounded degree shows up as an elementary
cycle through a bound-tagged edge of the dependency graph, reachable from a
vertex of the queried predicate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import base_domain as bd
from . import sat_analysis, syntax
from .errors import CapExceededError, UnboundedInstanceError, ValidationError

Vertex = tuple[str, bd.BaseTuple]
EdgeLabel = tuple[int, int]  # (rule index, 1-based body position)


@dataclass(frozen=True)
class RuleTag:
    kind: str          # "not_bound" | "bound"
    pinned: str | None  # the interaction variable for bound rules


@dataclass(frozen=True)
class PrimedSID:
    sid: syntax.SID
    tags: tuple[RuleTag, ...]              # aligned with sid.rules
    primed_name: dict[str, str]            # original predicate -> primed name

    def tag_of(self, rule_index: int) -> RuleTag:
        return self.tags[rule_index]


def build_primed_sid(sid: syntax.SID) -> PrimedSID:
    """Thread a fresh last parameter everywhere; emit the not_bound variant and
    one bound variant per interaction variable of each rule."""
    taken = {n for n, _ in sid.decls}
    primed = {n: syntax.fresh_name(f"{n}__b", taken) for n, _ in sid.decls}
    decls = tuple((primed[n], a + 1) for n, a in sid.decls)
    rules: list[syntax.Rule] = []
    tags: list[RuleTag] = []
    for r in sid.rules:
        view = syntax.rule_view(r)
        used = set(view.params) | set(view.exists) | {v for a in view.pf_atoms
                                                      for v in syntax.free_vars(a)}
        w = syntax.fresh_name("w", used)
        params = view.params + (w,)
        ivars = view.interaction_vars()
        callees = [syntax.PredAtom(primed[pa.pred], pa.args + (w,))
                   for pa in view.pred_atoms]
        base = list(view.pf_atoms)
        rules.append(syntax.Rule(primed[r.head], params, syntax.exists_all(
            list(view.exists),
            syntax.sep_all(base + [syntax.Neq(w, xi) for xi in ivars] + callees))))
        tags.append(RuleTag("not_bound", None))
        for xi in ivars:
            rules.append(syntax.Rule(primed[r.head], params, syntax.exists_all(
                list(view.exists),
                syntax.sep_all(base + [syntax.Eq(w, xi)] + callees))))
            tags.append(RuleTag("bound", xi))
    return PrimedSID(syntax.SID(sid.behavior, decls, tuple(rules)),
                     tuple(tags), primed)


@dataclass
class DependencyGraph:
    """Vertices (predicate, base tuple); edges labeled (rule, position).

    `combos` additionally groups, per vertex, every (rule, child-vertex list)
    that witnessed the vertex's tuple; the edge set is its flattening.
    """

    vertices: list[Vertex]
    edges: set[tuple[Vertex, EdgeLabel, Vertex]]
    combos: dict[Vertex, set[tuple[int, tuple[Vertex, ...]]]]

    def successors(self, v: Vertex):
        return [(lab, dst) for (src, lab, dst) in self.edges if src == v]


def build_dependency_graph(sid: syntax.SID, cap: int = sat_analysis.DEFAULT_CAP
                           ) -> DependencyGraph:
    """Kleene iteration that also records which rule and child tuples produced
    each tuple; iterates until neither vertices nor edges change."""
    rules = sat_analysis.compile_rules(sid)
    sol: dict[str, dict[bd.BaseTuple, None]] = {n: {} for n, _ in sid.decls}
    combos: dict[Vertex, set[tuple[int, tuple[Vertex, ...]]]] = {}
    edges: set[tuple[Vertex, EdgeLabel, Vertex]] = set()
    count = 0
    while True:
        changed = False
        for cr in rules:
            if not cr.base:
                continue
            child_lists = []
            for pa in cr.view.pred_atoms:
                have = list(sol.get(pa.pred, {}))
                if not have:
                    child_lists = None
                    break
                child_lists.append(have)
            if child_lists is None:
                continue
            (phi_tuple,) = cr.base
            for combo in itertools.product(*child_lists):
                parts = [phi_tuple]
                for pa, formals, t in zip(cr.view.pred_atoms, cr.callee_formals,
                                          combo):
                    parts.append(bd.tuple_subst(t, dict(zip(formals, pa.args))))
                composed = bd.compose_all(parts)
                if composed is None:
                    continue
                projected = bd.tuple_project(composed, cr.view.params)
                head = cr.view.head
                src: Vertex = (head, projected)
                if projected not in sol[head]:
                    sol[head][projected] = None
                    count += 1
                    if count > cap:
                        raise CapExceededError(
                            f"dependency graph exceeded cap of {cap} tuples", count)
                    changed = True
                children = tuple((pa.pred, t)
                                 for pa, t in zip(cr.view.pred_atoms, combo))
                rec = (cr.index, children)
                if rec not in combos.setdefault(src, set()):
                    combos[src].add(rec)
                    changed = True
                for pos, dst in enumerate(children, start=1):
                    edge = (src, (cr.index, pos), dst)
                    if edge not in edges:
                        edges.add(edge)
                        changed = True
        if not changed:
            break
    vertices = [(p, t) for p, ts in sol.items() for t in ts]
    for v in vertices:
        combos.setdefault(v, set())
    return DependencyGraph(vertices, edges, combos)


def _sccs(vertices, succ) -> dict:
    """Iterative Tarjan; returns vertex -> SCC id."""
    index: dict = {}
    low: dict = {}
    on_stack: dict = {}
    stack = []
    scc_id: dict = {}
    counter = [0]
    next_scc = [0]
    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                elif on_stack.get(w):
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    scc_id[w] = next_scc[0]
                    if w == v:
                        break
                next_scc[0] += 1
    return scc_id


def _reachable(sources, adj) -> set:
    seen = set(sources)
    todo = list(sources)
    while todo:
        v = todo.pop()
        for w in adj.get(v, ()):
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def decide_bounded(sid: syntax.SID, pred: str,
                   cap: int = sat_analysis.DEFAULT_CAP) -> bool:
    """False iff the primed dependency graph has an elementary cycle through a
    bound-tagged edge, reachable from a vertex of the queried predicate."""
    if not sid.declares(pred):
        raise ValidationError(f"undeclared predicate: {pred}")
    primed = build_primed_sid(sid)
    graph = build_dependency_graph(primed.sid, cap=cap)
    return not _has_bound_cycle(primed, graph, pred)


def _adjacency(graph: DependencyGraph) -> dict:
    adj: dict = {}
    for src, _, dst in graph.edges:
        adj.setdefault(src, set()).add(dst)
    return adj


def _has_bound_cycle(primed: PrimedSID, graph: DependencyGraph, pred: str) -> bool:
    target = primed.primed_name[pred]
    sources = [v for v in graph.vertices if v[0] == target]
    if not sources:
        return False
    adj = _adjacency(graph)
    reach = _reachable(sources, adj)
    scc_id = _sccs(graph.vertices, lambda v: adj.get(v, ()))
    for src, (rule_idx, _pos), dst in graph.edges:
        if primed.tag_of(rule_idx).kind != "bound":
            continue
        # an edge inside one SCC (a self-loop included) lies on an elementary cycle
        if scc_id[src] == scc_id[dst] and src in reach:
            return True
    return False


def _inter_atom_count(view: syntax.RuleView) -> int:
    return len(view.inter_atoms)


@dataclass(frozen=True)
class CutoffReport:
    formula_bound: int
    graph_bound: int

    @property
    def value(self) -> int:
        return min(self.formula_bound, self.graph_bound)


def degree_cutoff(sid: syntax.SID, pred: str,
                  cap: int = sat_analysis.DEFAULT_CAP) -> int:
    """Cut-off on the degree of every model of the predicate; errors when the
    instance is unbounded."""
    return cutoff_report(sid, pred, cap=cap).value


def cutoff_report(sid: syntax.SID, pred: str,
                  cap: int = sat_analysis.DEFAULT_CAP) -> CutoffReport:
    if not sid.declares(pred):
        raise ValidationError(f"undeclared predicate: {pred}")
    primed = build_primed_sid(sid)
    graph = build_dependency_graph(primed.sid, cap=cap)
    if _has_bound_cycle(primed, graph, pred):
        raise UnboundedInstanceError(f"{pred} has models of unbounded degree")
    formula = _formula_bound(sid, primed)
    tree = _graph_bound(sid, primed, graph, pred, fallback=formula)
    return CutoffReport(formula, tree)


def _formula_bound(sid: syntax.SID, primed: PrimedSID) -> int:
    """2^(B*) * L * I with B* = 2a + 2a^2 + p^min(a,b) * a^min(a,b), taken over
    the primed SID (arity + 1, same interaction size, ports, rules)."""
    m = syntax.sid_metrics(primed.sid)
    alpha = m.max_arity
    beta = m.max_inter_size
    p = len(sid.behavior.ports)
    mn = min(alpha, beta)
    b_star = 2 * alpha + 2 * alpha * alpha + (p ** mn) * (alpha ** mn)
    preds = len(primed.sid.decls)
    inter_max = 0
    for r in primed.sid.rules:
        inter_max = max(inter_max, _inter_atom_count(syntax.rule_view(r)))
    return (2 ** b_star) * preds * inter_max


def _graph_bound(sid: syntax.SID, primed: PrimedSID, graph: DependencyGraph,
                 pred: str, fallback: int) -> int:
    """Most interactions any derivation can put on the tracked component.

    Accumulated over the grouped derivation records: a bound rule contributes
    its interaction atoms, a not_bound rule contributes none (the tracked
    component is kept apart from all interaction variables), and the children
    contribute independently, so siblings add up. Value iteration converges
    within |V| sweeps because no reachable cycle goes through a bound rule; a
    non-converging pathological graph falls back to the formula bound.
    """
    contrib = {}
    for i, _tag in enumerate(primed.tags):
        view = syntax.rule_view(primed.sid.rules[i])
        contrib[i] = _inter_atom_count(view) if primed.tags[i].kind == "bound" else 0
    vals = {v: 0 for v in graph.vertices}
    for _ in range(len(graph.vertices) + 2):
        changed = False
        for v in graph.vertices:
            best = 0
            for rule_idx, children in graph.combos.get(v, ()):
                total = contrib[rule_idx] + sum(vals[c] for c in children)
                best = max(best, total)
            if best != vals[v]:
                vals[v] = best
                changed = True
        if not changed:
            break
    else:
        return fallback
    target = primed.primed_name[pred]
    return max((vals[v] for v in graph.vertices if v[0] == target), default=0)
