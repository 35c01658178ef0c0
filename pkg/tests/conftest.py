"""Shared fixtures: the curated SID suite and cross-checking helpers."""

import pytest

from clkit import syntax
from clkit.syntax import parse_sid

RING_TEXT = None  # generated, see ring11 fixture


def _parse(text):
    return parse_sid(text)


@pytest.fixture(scope="session")
def ring11():
    return syntax.generate_family("ring", h_cap=1, t_cap=1)


@pytest.fixture(scope="session")
def ring22():
    return syntax.generate_family("ring", h_cap=2, t_cap=2)


@pytest.fixture(scope="session")
def star():
    return syntax.generate_family("star")


@pytest.fixture(scope="session")
def worstcase2():
    return syntax.generate_family("worstcase", n=2)


@pytest.fixture(scope="session")
def chain_sid():
    return _parse("""
behavior { ports { in, out } states { H } }
pred chain(x, y) {
  rule exists z . compstate(x, H) * inter(x.out, z.in) * chain(z, y);
  rule compstate(x, H) * x = y;
}
""")


@pytest.fixture(scope="session")
def comp_only():
    return _parse("behavior { ports { out, in } states { q } }\n"
                  "pred A(x){ rule comp(x); }")


@pytest.fixture(scope="session")
def pure_contradiction():
    return _parse("pred A(x){ rule x != x; }")


@pytest.fixture(scope="session")
def no_base_case():
    return _parse("pred A(x){ rule exists y . A(y); }")


@pytest.fixture(scope="session")
def dangling():
    return _parse("""
behavior { ports { in, out } states { q } }
pred L(x){ rule exists y . comp(x) * inter(x.out, y.in); }
""")


@pytest.fixture(scope="session")
def mutant_ring_swapped():
    # ring with the closing interaction's ports swapped: still satisfiable and
    # tight, but over a second interaction type
    return _parse("""
behavior { ports { in, out } states { H, T } }
pred ring2(x) {
  rule exists y z . compstate(x, H) * inter(x.out, z.in) * link(z, y) * inter(y.in, x.out);
}
pred link(x, y) {
  rule exists z . compstate(x, T) * inter(x.out, z.in) * link(z, y);
  rule compstate(x, T) * x = y;
}
""")


@pytest.fixture(scope="session")
def mutant_star_loose():
    # star variant that never materializes the workers: loose and unbounded
    return _parse("""
behavior { ports { in, out } states { q } }
pred Star2(x) { rule comp(x) * Worker2(x); }
pred Worker2(x) {
  rule emp;
  rule exists y . inter(x.out, y.in) * Worker2(x);
}
""")


@pytest.fixture(scope="session")
def suite(ring11, chain_sid, star, comp_only, pure_contradiction, no_base_case,
          dangling, worstcase2, mutant_ring_swapped, mutant_star_loose):
    """The curated suite: (name, sid, predicate) triples."""
    return [
        ("ring", ring11, "ring_1_1"),
        ("chain", chain_sid, "chain"),
        ("star", star, "Star"),
        ("comp_only", comp_only, "A"),
        ("pure_contradiction", pure_contradiction, "A"),
        ("no_base_case", no_base_case, "A"),
        ("dangling", dangling, "L"),
        ("worstcase2", worstcase2, "A1"),
        ("mutant_ring_swapped", mutant_ring_swapped, "ring2"),
        ("mutant_star_loose", mutant_star_loose, "Star2"),
    ]


@pytest.fixture(scope="session")
def entail_sid(ring22):
    """The running-example SID plus the two side-condition predicates and a
    port-swapped mutant of the second one."""
    text = syntax.print_sid(ring22) + """
pred A1(x1) {
  rule exists y z . compstate(x1, H) * inter(x1.out, z.in) * chain_1_1(z, y) * inter(y.out, x1.in);
}
pred A2(x1, x2) {
  rule exists z . compstate(x1, H) * inter(x1.out, z.in) * chain_1_1(z, x2) * inter(x2.out, x1.in);
}
pred A2bad(x1, x2) {
  rule exists z . compstate(x1, H) * inter(x1.out, z.in) * chain_1_1(z, x2) * inter(x2.in, x1.out);
}
"""
    return parse_sid(text)


@pytest.fixture(scope="session")
def tiny_gaifman_suite():
    """Three tiny progressing, connected, e-restricted SIDs for the
    encoding-level checks at degree bound 1."""
    s1 = _parse("behavior { ports { out, in } states { q } }\n"
                "pred A(x1){ rule compstate(x1, q); }")
    s2 = _parse("""
behavior { ports { out, in } states { q } }
pred M(x1){ rule exists y . compstate(x1, q) * inter(x1.out, y.in) * E(y); }
pred E(x1){ rule compstate(x1, q); }
""")
    s3 = _parse("behavior { ports { out, in } states { q } }\n"
                "pred P(x1, x2){ rule compstate(x1, q) * x1 = x2; }")
    return [("single", s1, "A"), ("edge", s2, "M"), ("merged", s3, "P")]


# --- independent evaluator for predicate-free satisfaction --------------------

def naive_satisfies(g, store, f):
    """Reference evaluator: structural recursion with explicit split search."""
    from clkit import semantics, syntax as sx

    def splits(present, inters):
        ps = list(present)
        its = list(inters)
        for pmask in range(1 << len(ps)):
            left_p = frozenset(p for i, p in enumerate(ps) if pmask >> i & 1)
            for imask in range(1 << len(its)):
                left_i = frozenset(t for i, t in enumerate(its) if imask >> i & 1)
                yield (left_p, left_i, present - left_p, inters - left_i)

    def ev(present, inters, env, f):
        if isinstance(f, sx.Emp):
            return not present and not inters
        if isinstance(f, sx.Comp):
            return present == frozenset({env[f.var]}) and not inters
        if isinstance(f, sx.Inter):
            it = tuple((env[v], p) for v, p in f.items)
            cs = [c for c, _ in it]
            if len(set(cs)) != len(cs):
                return False
            return not present and inters == frozenset({it})
        if isinstance(f, sx.StateAtom):
            return (not present and not inters
                    and g.state_of(env[f.var]) == f.state)
        if isinstance(f, sx.Eq):
            return not present and not inters and env[f.left] == env[f.right]
        if isinstance(f, sx.Neq):
            return not present and not inters and env[f.left] != env[f.right]
        if isinstance(f, sx.Sep):
            for lp, li, rp, ri in splits(present, inters):
                if ev(lp, li, env, f.left) and ev(rp, ri, env, f.right):
                    return True
            return False
        if isinstance(f, sx.Exists):
            for c in sorted(g.slice()):
                env2 = dict(env)
                env2[f.var] = c
                if ev(present, inters, env2, f.body):
                    return True
            return False
        raise TypeError(f)

    return ev(g.present, g.interactions, dict(store), f)


def random_formula(rng, vars_, states, max_depth=4):
    """Random predicate-free formula over the given variables and states."""
    from clkit import syntax as sx

    def go(depth):
        choices = ["emp", "comp", "inter", "state", "eq", "neq"]
        if depth > 0:
            choices += ["sep", "sep", "exists"]
        kind = rng.choice(choices)
        if kind == "emp":
            return sx.Emp()
        if kind == "comp":
            return sx.Comp(rng.choice(vars_))
        if kind == "inter":
            a, b = rng.choice(vars_), rng.choice(vars_)
            return sx.Inter(((a, "out"), (b, "in")))
        if kind == "state":
            return sx.StateAtom(rng.choice(vars_), rng.choice(states))
        if kind == "eq":
            return sx.Eq(rng.choice(vars_), rng.choice(vars_))
        if kind == "neq":
            return sx.Neq(rng.choice(vars_), rng.choice(vars_))
        if kind == "sep":
            return sx.Sep(go(depth - 1), go(depth - 1))
        bound = rng.choice(vars_)
        return sx.Exists(bound, go(depth - 1))

    return go(max_depth)


def random_config(rng, max_comps=4, states=("H", "T")):
    from clkit import semantics
    n = rng.randint(1, max_comps)
    comps = list(range(1, n + 1))
    inters = set()
    if n >= 2:
        for _ in range(rng.randint(0, 3)):
            a, b = rng.sample(comps, 2)
            inters.add(((a, "out"), (b, "in")))
    present = {c for c in comps if rng.random() < 0.6}
    sm = {c: rng.choice(states) for c in comps}
    return semantics.mk_config(present, inters, sm)


def replay_unfolding(sid, pred, path):
    """Replay a (rule index, position) path per the unfolding definition.

    Each pair expands the current target atom with the given rule; the
    position selects which of that rule's predicate atoms the next pair
    expands. Returns the quantifier- and predicate-free atoms accumulated
    along the expanded spine (side atoms stay folded).
    """
    from clkit import syntax as sx

    counter = [0]
    atoms = []
    target_pred = pred
    target_args = list(sid.params_of(pred))
    for rule_idx, pos in path:
        view = sx.rule_view(sid.rules[rule_idx])
        assert view.head == target_pred, "path does not follow rule heads"
        ren = dict(zip(view.params, target_args))
        for y in view.exists:
            counter[0] += 1
            ren[y] = f"_u{counter[0]}"
        atoms.extend(sx.rename_atom(a, ren) for a in view.pf_atoms)
        renamed = [sx.rename_atom(a, ren) for a in view.pred_atoms]
        if renamed:
            chosen = renamed[pos - 1]
            target_pred, target_args = chosen.pred, list(chosen.args)
    return atoms
