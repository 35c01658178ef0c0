"""Pure formulae: equalities, disequalities and state atoms, with closure.

Equalities and disequalities are stored as unordered pairs, so the closure is
symmetric by construction. Reflexive equalities x = x are never stored; the
query layer treats them as implicitly present. A reflexive disequality x != x
is stored and makes the formula unsatisfiable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import syntax
from .errors import ValidationError

Var = str
Pair = tuple[Var, Var]


def _pair(x: Var, y: Var) -> Pair:
    return (x, y) if x <= y else (y, x)


@dataclass(frozen=True)
class PureFormula:
    eqs: frozenset[Pair] = frozenset()
    neqs: frozenset[Pair] = frozenset()
    states: frozenset[tuple[Var, str]] = frozenset()

    def support(self) -> set[Var]:
        vs: set[Var] = set()
        for x, y in self.eqs | self.neqs:
            vs.add(x)
            vs.add(y)
        for x, _ in self.states:
            vs.add(x)
        return vs

    def is_empty(self) -> bool:
        return not (self.eqs or self.neqs or self.states)


TRUE = PureFormula()


def mk_pure(eqs=(), neqs=(), states=()) -> PureFormula:
    return PureFormula(
        frozenset(_pair(x, y) for x, y in eqs if x != y),
        frozenset(_pair(x, y) for x, y in neqs),
        frozenset(states),
    )


def from_atoms(atoms) -> PureFormula:
    """Build a pure formula from Eq/Neq/StateAtom syntax nodes (Emp is ignored)."""
    eqs, neqs, states = [], [], []
    for a in atoms:
        if isinstance(a, syntax.Eq):
            eqs.append((a.left, a.right))
        elif isinstance(a, syntax.Neq):
            neqs.append((a.left, a.right))
        elif isinstance(a, syntax.StateAtom):
            states.append((a.var, a.state))
        elif isinstance(a, syntax.Emp):
            continue
        else:
            raise ValidationError(f"not a pure atom: {a!r}")
    return mk_pure(eqs, neqs, states)


def to_atoms(p: PureFormula) -> list[syntax.Formula]:
    out: list[syntax.Formula] = []
    out += [syntax.Eq(x, y) for x, y in sorted(p.eqs)]
    out += [syntax.Neq(x, y) for x, y in sorted(p.neqs)]
    out += [syntax.StateAtom(x, q) for x, q in sorted(p.states)]
    return out


def conjoin(p1: PureFormula, p2: PureFormula) -> PureFormula:
    return PureFormula(p1.eqs | p2.eqs, p1.neqs | p2.neqs, p1.states | p2.states)


def _classes(p: PureFormula) -> dict[Var, frozenset[Var]]:
    """Union-find over equality edges; every supported variable gets a class."""
    parent: dict[Var, Var] = {v: v for v in p.support()}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for x, y in p.eqs:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry
    groups: dict[Var, set[Var]] = {}
    for v in parent:
        groups.setdefault(find(v), set()).add(v)
    out: dict[Var, frozenset[Var]] = {}
    for members in groups.values():
        fs = frozenset(members)
        for v in members:
            out[v] = fs
    return out


@lru_cache(maxsize=None)
def closure(p: PureFormula) -> PureFormula:
    """Least fixpoint of the three derivation rules, plus symmetry.

    Transitive equalities, disequalities propagated along equalities, and
    state atoms propagated along equalities.
    """
    cls = _classes(p)
    eqs = set()
    for group in {id(g): g for g in cls.values()}.values():
        members = sorted(group)
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                eqs.add(_pair(members[i], members[j]))
    neqs = set()
    for x, y in p.neqs:
        for a in cls.get(x, frozenset({x})):
            for b in cls.get(y, frozenset({y})):
                neqs.add(_pair(a, b))
    states = set()
    for x, q in p.states:
        for a in cls.get(x, frozenset({x})):
            states.add((a, q))
    return PureFormula(frozenset(eqs), frozenset(neqs), frozenset(states))


def formeq(p: PureFormula, x: Var, y: Var) -> bool:
    """x and y are equal in the closure of p (reflexivity included)."""
    return x == y or _pair(x, y) in closure(p).eqs


def formneq(p: PureFormula, x: Var, y: Var) -> bool:
    return _pair(x, y) in closure(p).neqs


def pure_sat(p: PureFormula) -> bool:
    """Satisfiable iff the closure has no contradictory pair of literals."""
    c = closure(p)
    for x, y in c.neqs:
        if x == y or _pair(x, y) in c.eqs:
            return False
    by_var: dict[Var, str] = {}
    for x, q in c.states:
        if x in by_var and by_var[x] != q:
            return False
        by_var[x] = q
    return True


def repr_var(y: Var, params: tuple[Var, ...], p: PureFormula) -> Var:
    """Least-index parameter equal to y in the closure of p, or y itself."""
    for x in params:
        if formeq(p, y, x):
            return x
    return y


def restrict(p: PureFormula, keep) -> PureFormula:
    """Drop every atom mentioning a variable outside `keep`."""
    ks = set(keep)
    return PureFormula(
        frozenset((x, y) for x, y in p.eqs if x in ks and y in ks),
        frozenset((x, y) for x, y in p.neqs if x in ks and y in ks),
        frozenset((x, q) for x, q in p.states if x in ks),
    )


def rename(p: PureFormula, sub: dict[Var, Var]) -> PureFormula:
    """Simultaneous substitution; a collapsed equality disappears, a collapsed
    disequality stays as the contradiction x != x."""
    s = lambda v: sub.get(v, v)
    return mk_pure(
        ((s(x), s(y)) for x, y in p.eqs),
        ((s(x), s(y)) for x, y in p.neqs),
        ((s(x), q) for x, q in p.states),
    )


def format_pure(p: PureFormula) -> str:
    parts = [f"{x}={y}" for x, y in sorted(p.eqs)]
    parts += [f"{x}!={y}" for x, y in sorted(p.neqs)]
    parts += [f"{x}@{q}" for x, q in sorted(p.states)]
    return " * ".join(parts) if parts else "emp"
