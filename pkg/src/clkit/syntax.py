"""Abstract syntax, concrete syntax and generators for the configuration logic.

A SID file declares one shared component behavior (ports, states, optional
transitions) followed by predicate blocks, each holding one or more rules.
Formulae are separating conjunctions of component, interaction, state, pure
and predicate atoms under a prefix of existential binders.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, ValidationError

Var = str
Port = str
State = str
InterType = tuple[Port, ...]


@dataclass(frozen=True)
class Behavior:
    """Finite-state machine shared by every component: ports, states, transitions."""

    ports: tuple[Port, ...] = ()
    states: tuple[State, ...] = ()
    transitions: frozenset[tuple[State, Port, State]] = frozenset()

    def __post_init__(self):
        if len(set(self.ports)) != len(self.ports):
            raise ValidationError("behavior ports must be pairwise distinct")
        if len(set(self.states)) != len(self.states):
            raise ValidationError("behavior states must be pairwise distinct")
        for (q, p, r) in self.transitions:
            if q not in self.states or r not in self.states:
                raise ValidationError(f"transition uses undeclared state: {q} -{p}-> {r}")
            if p not in self.ports:
                raise ValidationError(f"transition uses undeclared port: {q} -{p}-> {r}")

    @property
    def empty(self) -> bool:
        return not self.ports and not self.states and not self.transitions


class Formula:
    """Base class of all formula nodes; subclasses are immutable."""

    __slots__ = ()


@dataclass(frozen=True)
class Emp(Formula):
    pass


@dataclass(frozen=True)
class Comp(Formula):
    var: Var


@dataclass(frozen=True)
class Inter(Formula):
    """Interaction atom: a nonempty sequence of (variable, port) pairs.

    Duplicate variables are accepted syntactically; such atoms are simply
    unsatisfiable, because an interaction binds pairwise distinct components.
    """

    items: tuple[tuple[Var, Port], ...]

    def __post_init__(self):
        if len(self.items) < 1:
            raise ValidationError("interaction atom needs at least one variable.port pair")

    @property
    def itype(self) -> InterType:
        return tuple(p for _, p in self.items)

    @property
    def vars(self) -> tuple[Var, ...]:
        return tuple(v for v, _ in self.items)


@dataclass(frozen=True)
class StateAtom(Formula):
    var: Var
    state: State


@dataclass(frozen=True)
class Eq(Formula):
    left: Var
    right: Var


@dataclass(frozen=True)
class Neq(Formula):
    left: Var
    right: Var


@dataclass(frozen=True)
class PredAtom(Formula):
    pred: str
    args: tuple[Var, ...]


@dataclass(frozen=True)
class Sep(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: Var
    body: Formula


def sep_all(parts: list[Formula]) -> Formula:
    """Right-nested separating conjunction of `parts`; `emp` when empty."""
    if not parts:
        return Emp()
    out = parts[-1]
    for f in reversed(parts[:-1]):
        out = Sep(f, out)
    return out


def exists_all(vars_: list[Var], body: Formula) -> Formula:
    for v in reversed(vars_):
        body = Exists(v, body)
    return body


def _walk_atoms(f: Formula, out: list[Formula]):
    if isinstance(f, Sep):
        _walk_atoms(f.left, out)
        _walk_atoms(f.right, out)
    elif isinstance(f, Exists):
        _walk_atoms(f.body, out)
    else:
        out.append(f)


def atom_list(f: Formula) -> list[Formula]:
    """Atoms of `f` in syntactic (left-to-right) order, quantifiers stripped."""
    out: list[Formula] = []
    _walk_atoms(f, out)
    return out


def free_vars(f: Formula) -> set[Var]:
    if isinstance(f, Emp):
        return set()
    if isinstance(f, Comp):
        return {f.var}
    if isinstance(f, Inter):
        return set(f.vars)
    if isinstance(f, StateAtom):
        return {f.var}
    if isinstance(f, (Eq, Neq)):
        return {f.left, f.right}
    if isinstance(f, PredAtom):
        return set(f.args)
    if isinstance(f, Sep):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Exists):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def symbol_count(f: Formula) -> int:
    """Number of symbol occurrences: every constructor and every leaf counts one."""
    if isinstance(f, Emp):
        return 1
    if isinstance(f, Comp):
        return 2
    if isinstance(f, Inter):
        return 1 + 2 * len(f.items)
    if isinstance(f, StateAtom):
        return 3
    if isinstance(f, (Eq, Neq)):
        return 3
    if isinstance(f, PredAtom):
        return 1 + len(f.args)
    if isinstance(f, Sep):
        return 1 + symbol_count(f.left) + symbol_count(f.right)
    if isinstance(f, Exists):
        return 2 + symbol_count(f.body)
    raise TypeError(f"not a formula: {f!r}")


@dataclass(frozen=True)
class Rule:
    """One inductive definition: head(params) <- body."""

    head: str
    params: tuple[Var, ...]
    body: Formula

    def __post_init__(self):
        if len(set(self.params)) != len(self.params):
            raise ValidationError(f"rule for {self.head}: repeated parameter")


@dataclass(frozen=True)
class SID:
    """A set of inductive definitions over one shared behavior."""

    behavior: Behavior = Behavior()
    decls: tuple[tuple[str, int], ...] = ()
    rules: tuple[Rule, ...] = ()

    def __post_init__(self):
        names = [n for n, _ in self.decls]
        if len(set(names)) != len(names):
            raise ValidationError("duplicate predicate declaration")
        _validate_sid(self)

    def arity(self, pred: str) -> int:
        for n, a in self.decls:
            if n == pred:
                return a
        raise ValidationError(f"undeclared predicate: {pred}")

    def declares(self, pred: str) -> bool:
        return any(n == pred for n, _ in self.decls)

    def rules_of(self, pred: str) -> tuple[Rule, ...]:
        return tuple(r for r in self.rules if r.head == pred)

    def params_of(self, pred: str) -> tuple[Var, ...]:
        for r in self.rules:
            if r.head == pred:
                return r.params
        return tuple(f"x{i}" for i in range(1, self.arity(pred) + 1))

    def interaction_types(self) -> tuple[InterType, ...]:
        """Distinct interaction types, ordered by first occurrence in the rules."""
        seen: list[InterType] = []
        for r in self.rules:
            for a in atom_list(r.body):
                if isinstance(a, Inter) and a.itype not in seen:
                    seen.append(a.itype)
        return tuple(seen)


def _validate_sid(sid: SID):
    declared = dict(sid.decls)
    for r in sid.rules:
        if r.head not in declared:
            raise ValidationError(f"rule for undeclared predicate {r.head}")
        if len(r.params) != declared[r.head]:
            raise ValidationError(f"rule for {r.head}: arity mismatch with declaration")
        extra = free_vars(r.body) - set(r.params)
        if extra:
            raise ValidationError(
                f"rule for {r.head}: free variables {sorted(extra)} are not parameters"
            )
        for a in atom_list(r.body):
            if isinstance(a, PredAtom):
                if a.pred not in declared:
                    raise ValidationError(f"undeclared predicate: {a.pred}")
                if len(a.args) != declared[a.pred]:
                    raise ValidationError(
                        f"atom {a.pred}/{len(a.args)} does not match declared arity "
                        f"{declared[a.pred]}"
                    )
            elif isinstance(a, Inter):
                for _, p in a.items:
                    if p not in sid.behavior.ports:
                        raise ValidationError(f"undeclared port: {p}")
            elif isinstance(a, StateAtom):
                if a.state not in sid.behavior.states:
                    raise ValidationError(f"undeclared state: {a.state}")


# --- rule views -------------------------------------------------------------

@dataclass(frozen=True)
class RuleView:
    """A rule flattened to prenex form: quantifier prefix plus atom lists.

    Bound variables are renamed apart from parameters and from each other, so
    the view can be instantiated without capture.
    """

    head: str
    params: tuple[Var, ...]
    exists: tuple[Var, ...]
    comp_atoms: tuple[Comp, ...]
    inter_atoms: tuple[Inter, ...]
    eq_atoms: tuple[Eq, ...]
    neq_atoms: tuple[Neq, ...]
    state_atoms: tuple[StateAtom, ...]
    pred_atoms: tuple[PredAtom, ...]

    @property
    def pf_atoms(self) -> tuple[Formula, ...]:
        return (self.comp_atoms + self.inter_atoms + self.eq_atoms
                + self.neq_atoms + self.state_atoms)

    def interaction_vars(self) -> tuple[Var, ...]:
        """Distinct variables occurring in interaction atoms, in first-occurrence order."""
        seen: list[Var] = []
        for a in self.inter_atoms:
            for v in a.vars:
                if v not in seen:
                    seen.append(v)
        return tuple(seen)

    def body(self) -> Formula:
        parts: list[Formula] = list(self.comp_atoms) + list(self.inter_atoms)
        parts += list(self.eq_atoms) + list(self.neq_atoms) + list(self.state_atoms)
        parts += list(self.pred_atoms)
        return exists_all(list(self.exists), sep_all(parts))


def _prenex(f: Formula, ren: dict[Var, Var], taken: set[Var], fresh: list[int]):
    """Pull quantifiers to the front, renaming bound variables apart."""
    if isinstance(f, Exists):
        name = f.var
        while name in taken:
            fresh[0] += 1
            name = f"{f.var}_{fresh[0]}"
        taken.add(name)
        inner_ren = dict(ren)
        inner_ren[f.var] = name
        ev, body_atoms = _prenex(f.body, inner_ren, taken, fresh)
        return [name] + ev, body_atoms
    if isinstance(f, Sep):
        lv, la = _prenex(f.left, ren, taken, fresh)
        rv, ra = _prenex(f.right, ren, taken, fresh)
        return lv + rv, la + ra
    return [], [rename_atom(f, ren)]


def rename_atom(a: Formula, ren: dict[Var, Var]) -> Formula:
    s = lambda v: ren.get(v, v)
    if isinstance(a, Emp):
        return a
    if isinstance(a, Comp):
        return Comp(s(a.var))
    if isinstance(a, Inter):
        return Inter(tuple((s(v), p) for v, p in a.items))
    if isinstance(a, StateAtom):
        return StateAtom(s(a.var), a.state)
    if isinstance(a, Eq):
        return Eq(s(a.left), s(a.right))
    if isinstance(a, Neq):
        return Neq(s(a.left), s(a.right))
    if isinstance(a, PredAtom):
        return PredAtom(a.pred, tuple(s(v) for v in a.args))
    raise TypeError(f"not an atom: {a!r}")


def rule_view(rule: Rule) -> RuleView:
    taken = set(rule.params)
    ev, flat = _prenex(rule.body, {}, taken, [0])
    comp, inter, eq, neq, st, pred = [], [], [], [], [], []
    for a in flat:
        if isinstance(a, Emp):
            continue
        elif isinstance(a, Comp):
            comp.append(a)
        elif isinstance(a, Inter):
            inter.append(a)
        elif isinstance(a, Eq):
            eq.append(a)
        elif isinstance(a, Neq):
            neq.append(a)
        elif isinstance(a, StateAtom):
            st.append(a)
        elif isinstance(a, PredAtom):
            pred.append(a)
        else:
            raise TypeError(f"unexpected atom: {a!r}")
    return RuleView(rule.head, rule.params, tuple(ev), tuple(comp), tuple(inter),
                    tuple(eq), tuple(neq), tuple(st), tuple(pred))


def fresh_name(base: str, taken: set[str]) -> str:
    if base not in taken:
        return base
    i = 0
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


# --- lexer / parser ---------------------------------------------------------

_KEYWORDS = {"behavior", "ports", "states", "trans", "pred", "rule", "exists",
             "emp", "comp", "state", "compstate", "inter"}

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>//[^\n]*)
  | (?P<arrow>->)
  | (?P<neq>!=)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[{}().,;*=\-])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str  # 'name', 'kw', punctuation string, 'eof'
    value: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, col, i = 1, 1, 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", line, col)
        lexeme = m.group(0)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            if kind == "name":
                k = "kw" if lexeme in _KEYWORDS else "name"
                toks.append(_Tok(k, lexeme, line, col))
            elif kind == "arrow":
                toks.append(_Tok("->", "->", line, col))
            elif kind == "neq":
                toks.append(_Tok("!=", "!=", line, col))
            else:
                toks.append(_Tok(lexeme, lexeme, line, col))
        nl = lexeme.count("\n")
        if nl:
            line += nl
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        i = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None):
        t = tok or self.peek()
        raise ParseError(msg, t.line, t.col)

    def expect(self, kind: str, what: str | None = None) -> _Tok:
        t = self.peek()
        if t.kind != kind and not (kind == "kw" and t.kind == "kw"):
            self.error(f"expected {what or kind}, found {t.value!r}")
        return self.next()

    def expect_kw(self, word: str) -> _Tok:
        t = self.peek()
        if t.kind != "kw" or t.value != word:
            self.error(f"expected '{word}', found {t.value!r}")
        return self.next()

    def name(self, what="name") -> str:
        t = self.peek()
        if t.kind != "name":
            self.error(f"expected {what}, found {t.value!r}")
        return self.next().value

    def at_kw(self, word: str) -> bool:
        t = self.peek()
        return t.kind == "kw" and t.value == word

    # file := behavior? pred*
    def file(self) -> SID:
        behavior = Behavior()
        if self.at_kw("behavior"):
            behavior = self.behavior()
        blocks = []
        while self.at_kw("pred"):
            blocks.append(self.pred_block())
        t = self.peek()
        if t.kind != "eof":
            self.error(f"expected 'pred' or end of file, found {t.value!r}")
        decls = tuple((name, len(params)) for name, params, _ in blocks)
        rules = []
        for name, params, bodies in blocks:
            for b in bodies:
                rules.append(Rule(name, params, b))
        try:
            return SID(behavior, decls, tuple(rules))
        except ValidationError as e:
            raise ParseError(str(e), t.line, t.col) from e

    def behavior(self) -> Behavior:
        self.expect_kw("behavior")
        self.expect("{")
        self.expect_kw("ports")
        ports = self.name_block("port")
        self.expect_kw("states")
        states = self.name_block("state")
        transitions = set()
        if self.at_kw("trans"):
            self.next()
            self.expect("{")
            while self.peek().kind == "name":
                q = self.name("state")
                self.expect("-")
                p = self.name("port")
                self.expect("->")
                r = self.name("state")
                self.expect(";")
                transitions.add((q, p, r))
            self.expect("}")
        tok = self.peek()
        self.expect("}")
        try:
            return Behavior(tuple(ports), tuple(states), frozenset(transitions))
        except ValidationError as e:
            raise ParseError(str(e), tok.line, tok.col) from e

    def name_block(self, what: str) -> list[str]:
        self.expect("{")
        names = [self.name(what)]
        while self.peek().kind == ",":
            self.next()
            names.append(self.name(what))
        self.expect("}")
        return names

    def pred_block(self):
        self.expect_kw("pred")
        name = self.name("predicate name")
        self.expect("(")
        params: list[str] = []
        if self.peek().kind == "name":
            params.append(self.name("parameter"))
            while self.peek().kind == ",":
                self.next()
                params.append(self.name("parameter"))
        tok = self.peek()
        self.expect(")")
        if len(set(params)) != len(params):
            self.error("repeated parameter", tok)
        self.expect("{")
        bodies = []
        while self.at_kw("rule"):
            self.next()
            bodies.append(self.formula())
            self.expect(";")
        if not bodies:
            self.error("predicate block needs at least one rule")
        self.expect("}")
        return name, tuple(params), bodies

    # formula := "exists" name+ "." formula | term ("*" term)*
    def formula(self) -> Formula:
        if self.at_kw("exists"):
            self.next()
            vars_ = [self.name("bound variable")]
            while self.peek().kind == "name":
                vars_.append(self.name("bound variable"))
            self.expect(".")
            return exists_all(vars_, self.formula())
        parts = [self.term()]
        while self.peek().kind == "*":
            self.next()
            parts.append(self.term())
        return sep_all(parts)

    def term(self) -> Formula:
        t = self.peek()
        if t.kind == "(":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if t.kind == "kw":
            if t.value == "emp":
                self.next()
                return Emp()
            if t.value == "comp":
                self.next()
                self.expect("(")
                v = self.name("variable")
                self.expect(")")
                return Comp(v)
            if t.value == "state":
                self.next()
                self.expect("(")
                v = self.name("variable")
                self.expect(",")
                q = self.name("state")
                self.expect(")")
                return StateAtom(v, q)
            if t.value == "compstate":
                self.next()
                self.expect("(")
                v = self.name("variable")
                self.expect(",")
                q = self.name("state")
                self.expect(")")
                return Sep(Comp(v), StateAtom(v, q))
            if t.value == "inter":
                self.next()
                self.expect("(")
                items = [self.var_dot_port()]
                while self.peek().kind == ",":
                    self.next()
                    items.append(self.var_dot_port())
                self.expect(")")
                return Inter(tuple(items))
            self.error(f"unexpected keyword {t.value!r}")
        if t.kind == "name":
            n = self.next().value
            t2 = self.peek()
            if t2.kind == "=":
                self.next()
                return Eq(n, self.name("variable"))
            if t2.kind == "!=":
                self.next()
                return Neq(n, self.name("variable"))
            if t2.kind == "(":
                self.next()
                args: list[str] = []
                if self.peek().kind == "name":
                    args.append(self.name("argument"))
                    while self.peek().kind == ",":
                        self.next()
                        args.append(self.name("argument"))
                self.expect(")")
                return PredAtom(n, tuple(args))
            self.error(f"expected '=', '!=' or '(' after {n!r}")
        self.error(f"expected a term, found {t.value!r}")

    def var_dot_port(self):
        v = self.name("variable")
        self.expect(".")
        p = self.name("port")
        return (v, p)


def parse_sid(text: str) -> SID:
    """Parse a SID file; raises ParseError with source position on bad input."""
    return _Parser(text).file()


# --- printer ----------------------------------------------------------------

def format_formula(f: Formula) -> str:
    if isinstance(f, Emp):
        return "emp"
    if isinstance(f, Comp):
        return f"comp({f.var})"
    if isinstance(f, Inter):
        return "inter(" + ", ".join(f"{v}.{p}" for v, p in f.items) + ")"
    if isinstance(f, StateAtom):
        return f"state({f.var}, {f.state})"
    if isinstance(f, Eq):
        return f"{f.left} = {f.right}"
    if isinstance(f, Neq):
        return f"{f.left} != {f.right}"
    if isinstance(f, PredAtom):
        return f.pred + "(" + ", ".join(f.args) + ")"
    if isinstance(f, Sep):
        return f"{_sep_operand(f.left)} * {_sep_operand(f.right)}"
    if isinstance(f, Exists):
        vars_ = [f.var]
        body = f.body
        while isinstance(body, Exists):
            vars_.append(body.var)
            body = body.body
        return "exists " + " ".join(vars_) + " . " + format_formula(body)
    raise TypeError(f"not a formula: {f!r}")


def _sep_operand(f: Formula) -> str:
    if isinstance(f, Exists):
        return "(" + format_formula(f) + ")"
    return format_formula(f)


def print_sid(sid: SID) -> str:
    """Emit a SID in the concrete grammar; `parse_sid(print_sid(s))` equals `s`."""
    out = []
    b = sid.behavior
    if not b.empty:
        out.append("behavior {")
        out.append("  ports { " + ", ".join(b.ports) + " }")
        out.append("  states { " + ", ".join(b.states) + " }")
        if b.transitions:
            out.append("  trans {")
            for q, p, r in sorted(b.transitions):
                out.append(f"    {q} - {p} -> {r};")
            out.append("  }")
        out.append("}")
        out.append("")
    for name, arity in sid.decls:
        rules = sid.rules_of(name)
        params = rules[0].params if rules else tuple(f"x{i}" for i in range(1, arity + 1))
        out.append(f"pred {name}(" + ", ".join(params) + ") {")
        for r in rules:
            out.append(f"  rule {format_formula(r.body)};")
        out.append("}")
        out.append("")
    return "\n".join(out).rstrip() + "\n"


# --- metrics ----------------------------------------------------------------

@dataclass(frozen=True)
class SidMetrics:
    size: int
    max_arity: int
    width: int
    max_inter_size: int


def sid_metrics(sid: SID) -> SidMetrics:
    """Size, maximal arity, width and maximal interaction size of a SID."""
    size = 0
    width = 0
    max_arity = 0
    max_inter = 0
    for r in sid.rules:
        n = symbol_count(r.body)
        size += n + len(r.params) + 1
        width = max(width, n)
        max_arity = max(max_arity, len(r.params))
        for a in atom_list(r.body):
            if isinstance(a, Inter):
                max_inter = max(max_inter, len(a.items))
    return SidMetrics(size, max_arity, width, max_inter)


# --- generated families -----------------------------------------------------

def _ring_behavior() -> Behavior:
    return Behavior(("in", "out"), ("H", "T"),
                    frozenset({("H", "in", "T"), ("T", "out", "H")}))


def _sat_dec(n: int) -> int:
    return max(n - 1, 0)


def generate_ring(h_cap: int, t_cap: int) -> SID:
    """Token-ring family: ring_h_t / chain_h_t with saturating counters up to the caps.

    Counter arithmetic from the inductive definition (max(h-1,0), etc.) is
    resolved at expansion time, so the result is a plain finite SID.
    """
    if h_cap < 0 or t_cap < 0:
        raise ValidationError("ring caps must be nonnegative")
    decls = []
    rules = []
    for h in range(h_cap + 1):
        for t in range(t_cap + 1):
            decls.append((f"ring_{h}_{t}", 1))
    for h in range(h_cap + 1):
        for t in range(t_cap + 1):
            decls.append((f"chain_{h}_{t}", 2))
    for h in range(h_cap + 1):
        for t in range(t_cap + 1):
            for q in ("H", "T"):
                h2 = _sat_dec(h) if q == "H" else h
                t2 = _sat_dec(t) if q == "T" else t
                rules.append(Rule(
                    f"ring_{h}_{t}", ("x1",),
                    exists_all(["y", "z"], sep_all([
                        Comp("x1"), StateAtom("x1", q),
                        Inter((("x1", "out"), ("z", "in"))),
                        PredAtom(f"chain_{h2}_{t2}", ("z", "y")),
                        Inter((("y", "out"), ("x1", "in"))),
                    ]))))
                rules.append(Rule(
                    f"chain_{h}_{t}", ("x1", "x2"),
                    exists_all(["z"], sep_all([
                        Comp("x1"), StateAtom("x1", q),
                        Inter((("x1", "out"), ("z", "in"))),
                        PredAtom(f"chain_{h2}_{t2}", ("z", "x2")),
                    ]))))
    base = [("chain_0_1", "T"), ("chain_1_0", "H")]
    for name, q in base:
        if name in {n for n, _ in decls}:
            rules.append(Rule(name, ("x1", "x2"), sep_all([
                Comp("x1"), StateAtom("x1", q), Eq("x1", "x2")])))
    if "chain_0_0" in {n for n, _ in decls}:
        rules.append(Rule("chain_0_0", ("x1", "x2"),
                          sep_all([Comp("x1"), Eq("x1", "x2")])))
    # group rules per predicate so the concrete syntax round-trips structurally
    order = {n: i for i, (n, _) in enumerate(decls)}
    rules.sort(key=lambda r: order[r.head])
    return SID(_ring_behavior(), tuple(decls), tuple(rules))


def generate_star() -> SID:
    """Star topology: one hub connected to an unbounded number of workers."""
    behavior = Behavior(("in", "out"), ("q",))
    decls = (("Star", 1), ("Worker", 1))
    rules = (
        Rule("Star", ("x1",), sep_all([Comp("x1"), PredAtom("Worker", ("x1",))])),
        Rule("Worker", ("x1",), Emp()),
        Rule("Worker", ("x1",), exists_all(["y"], sep_all([
            Inter((("x1", "out"), ("y", "in"))), Comp("y"),
            PredAtom("Worker", ("x1",))]))),
    )
    return SID(behavior, decls, rules)


def generate_worstcase(n: int) -> SID:
    """Rotation family whose least fixpoint holds 2^(n!) base tuples for A_1."""
    if n < 1:
        raise ValidationError("worstcase family needs n >= 1")
    behavior = Behavior(("p",), ("q",))
    params = tuple(f"x{i}" for i in range(1, n + 1))
    decls = tuple((f"A{i}", n) for i in range(1, n + 1))
    rules = []
    for i in range(1, n):
        tail = list(params[i - 1:])
        parts = []
        for j in range(0, n - i + 1):
            rot = tail[j:] + tail[:j]
            parts.append(PredAtom(f"A{i+1}", tuple(params[:i - 1]) + tuple(rot)))
        rules.append(Rule(f"A{i}", params, sep_all(parts)))
    rules.append(Rule(f"A{n}", params, Inter(tuple((v, "p") for v in params))))
    rules.append(Rule(f"A{n}", params, Emp()))
    return SID(behavior, decls, tuple(rules))


def generate_family(kind: str, **params) -> SID:
    """Generate one of the paper-style families: ring, star or worstcase."""
    if kind == "ring":
        return generate_ring(params.get("h_cap", 1), params.get("t_cap", 1))
    if kind == "star":
        if params:
            raise ValidationError("star family takes no parameters")
        return generate_star()
    if kind == "worstcase":
        return generate_worstcase(params["n"])
    raise ValidationError(f"unknown family: {kind}")
