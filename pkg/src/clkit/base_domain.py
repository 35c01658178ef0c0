"""The abstract domain of base tuples.

A base tuple abstracts the footprint of a predicate's models that is visible
through its parameters: a multiset of component variables, a multiset of
variable tuples per interaction type, and a pure formula. Multisets are kept
in a sorted canonical form so structural equality doubles as set membership
inside the fixpoint engines.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import pure as pure_mod
from . import syntax
from .errors import ValidationError
from .pure import PureFormula

Var = str
InterType = tuple[str, ...]
VarTuple = tuple[Var, ...]


@dataclass(frozen=True)
class BaseTuple:
    comps: tuple[Var, ...]
    inters: tuple[tuple[InterType, tuple[VarTuple, ...]], ...]
    pure: PureFormula

    def inter_map(self) -> dict[InterType, tuple[VarTuple, ...]]:
        return dict(self.inters)

    def support(self) -> set[Var]:
        vs = set(self.comps) | self.pure.support()
        for _, tuples in self.inters:
            for t in tuples:
                vs.update(t)
        return vs


def mk_base_tuple(comps, inters, pure: PureFormula = pure_mod.TRUE) -> BaseTuple:
    """Canonicalize: sorted component multiset, per-type sorted tuple multisets."""
    imap: dict[InterType, list[VarTuple]] = {}
    items = inters.items() if isinstance(inters, dict) else inters
    for itype, tuples in items:
        itype = tuple(itype)
        for t in tuples:
            t = tuple(t)
            if len(t) != len(itype):
                raise ValidationError(
                    f"tuple {t} does not match interaction type {itype}")
            imap.setdefault(itype, []).append(t)
    canon = tuple(sorted((ty, tuple(sorted(ts))) for ty, ts in imap.items() if ts))
    return BaseTuple(tuple(sorted(comps)), canon, pure)


EMPTY = mk_base_tuple((), ())


def tuple_sat(t: BaseTuple) -> bool:
    """Satisfiability per the three footprint conditions plus the pure part.

    1. no two component entries are equal modulo the closure,
    2. two same-type tuples differ at some position modulo the closure,
    3. within a tuple, all positions are pairwise non-equal.
    """
    if not pure_mod.pure_sat(t.pure):
        return False
    p = t.pure
    n = len(t.comps)
    for i in range(n):
        for j in range(i + 1, n):
            if pure_mod.formeq(p, t.comps[i], t.comps[j]):
                return False
    for _, tuples in t.inters:
        for a in range(len(tuples)):
            ta = tuples[a]
            for i in range(len(ta)):
                for j in range(i + 1, len(ta)):
                    if pure_mod.formeq(p, ta[i], ta[j]):
                        return False
            for b in range(a + 1, len(tuples)):
                tb = tuples[b]
                if all(pure_mod.formeq(p, x, y) for x, y in zip(ta, tb)):
                    return False
    return True


def tuple_compose(t1: BaseTuple, t2: BaseTuple) -> BaseTuple | None:
    """Multiset unions plus pure conjunction; None when the result is unsatisfiable."""
    imap: dict[InterType, list[VarTuple]] = {}
    for ty, ts in t1.inters:
        imap.setdefault(ty, []).extend(ts)
    for ty, ts in t2.inters:
        imap.setdefault(ty, []).extend(ts)
    out = mk_base_tuple(t1.comps + t2.comps, imap,
                        pure_mod.conjoin(t1.pure, t2.pure))
    return out if tuple_sat(out) else None


def compose_all(parts) -> BaseTuple | None:
    """Fold of tuple_compose; None as soon as any prefix is undefined."""
    acc = EMPTY
    for t in parts:
        acc = tuple_compose(acc, t)
        if acc is None:
            return None
    return acc


def constr(t: BaseTuple) -> PureFormula:
    """Pairwise disequalities inside every stored tuple (materialized only here)."""
    neqs = []
    for _, tuples in t.inters:
        for tup in tuples:
            for i in range(len(tup)):
                for j in range(i + 1, len(tup)):
                    neqs.append((tup[i], tup[j]))
    return pure_mod.mk_pure(neqs=neqs)


def tuple_project(t: BaseTuple, params) -> BaseTuple:
    """Keep only footprint entries visible through `params`; the pure part
    becomes the restriction of the closure of constr * pure.

    Before filtering, every variable is normalized to its least-index equal
    parameter under that closure. Composition can equate a child's local
    variable with a parameter, and the footprint it carries stays visible
    through the parameter; a plain intersection would drop it.
    """
    params = tuple(params)
    keep = set(params)
    closed = pure_mod.closure(pure_mod.conjoin(constr(t), t.pure))
    norm = lambda v: pure_mod.repr_var(v, params, closed)
    comps = tuple(v for v in map(norm, t.comps) if v in keep)
    inters = {ty: [tup for tup in (tuple(map(norm, tup)) for tup in ts)
                   if all(v in keep for v in tup)]
              for ty, ts in t.inters}
    return mk_base_tuple(comps, inters, pure_mod.restrict(closed, keep))


def tuple_subst(t: BaseTuple, sub: dict[Var, Var]) -> BaseTuple:
    """Simultaneous renaming in all three fields."""
    s = lambda v: sub.get(v, v)
    inters = {ty: [tuple(s(v) for v in tup) for tup in ts] for ty, ts in t.inters}
    return mk_base_tuple((s(v) for v in t.comps), inters,
                         pure_mod.rename(t.pure, sub))


def base_of_formula(f: syntax.Formula, params: tuple[Var, ...]) -> frozenset[BaseTuple]:
    """Base tuple of a quantifier- and predicate-free formula, seen through an
    ordered parameter list; empty set iff the formula is unsatisfiable."""
    def reject_exists(g):
        if isinstance(g, syntax.Exists):
            raise ValidationError("base_of_formula expects a quantifier-free formula")
        if isinstance(g, syntax.Sep):
            reject_exists(g.left)
            reject_exists(g.right)

    reject_exists(f)
    comps = []
    imap: dict[InterType, list[VarTuple]] = {}
    pure_atoms = []
    for a in syntax.atom_list(f):
        if isinstance(a, syntax.PredAtom):
            raise ValidationError("base_of_formula expects a predicate-free formula")
        if isinstance(a, (syntax.Eq, syntax.Neq, syntax.StateAtom, syntax.Emp)):
            pure_atoms.append(a)
        elif isinstance(a, syntax.Comp):
            comps.append(a)
        elif isinstance(a, syntax.Inter):
            imap.setdefault(a.itype, []).append(a)
        else:
            raise ValidationError(f"unexpected atom: {a!r}")
    pi = pure_mod.from_atoms(pure_atoms)
    cvars = [pure_mod.repr_var(a.var, params, pi) for a in comps]
    ivars = {ty: [tuple(pure_mod.repr_var(v, params, pi) for v in a.vars)
                  for a in atoms_] for ty, atoms_ in imap.items()}
    t = mk_base_tuple(cvars, ivars, pi)
    return frozenset({t}) if tuple_sat(t) else frozenset()


def format_tuple(t: BaseTuple) -> str:
    """Stable text form for traces and golden files."""
    comps = ",".join(t.comps)
    inters = " ".join(
        ",".join(ty) + ":{" + ",".join("(" + ",".join(tup) + ")" for tup in ts) + "}"
        for ty, ts in t.inters)
    return f"<{comps} | {inters} | {pure_mod.format_pure(t.pure)}>"
