"""Seeded generators of instances where a specific reduction rule applies.

Each generator plants the rule's precondition inside a small random graph and
retries until the rule reports a match, so sampling stays cheap and honest:
the planted site is random, and the surrounding graph is random noise.
"""

import random
from itertools import combinations

from pwkit.graph import Graph, Instance
from pwkit import rules


def _random_edges(rng: random.Random, vertices: list[int], p: float) -> list:
    return [(u, v) for u, v in combinations(vertices, 2) if rng.random() < p]


def _build(rng: random.Random, n: int, edges, modulator, k: int) -> Instance:
    dedup = sorted({(min(u, v), max(u, v)) for u, v in edges})
    return Instance(Graph.from_edges(n, dedup), frozenset(modulator), k)


def applicable_r1(rng: random.Random) -> Instance:
    n = rng.randint(2, 9)
    isolated = rng.randrange(n)
    others = [v for v in range(n) if v != isolated]
    edges = _random_edges(rng, others, rng.uniform(0.2, 0.7))
    mod = {v for v in range(n) if rng.random() < 0.3}
    return _build(rng, n, edges, mod, rng.randint(0, 3))


def applicable_r2(rng: random.Random) -> Instance:
    base = rng.randint(1, 6)
    hub = rng.randrange(base)
    leaves = [base, base + 1]
    edges = _random_edges(rng, list(range(base)), rng.uniform(0.2, 0.7))
    edges += [(hub, leaves[0]), (hub, leaves[1])]
    mod = {v for v in range(base) if rng.random() < 0.3}
    if rng.random() < 0.2:
        mod.add(leaves[0])
    return _build(rng, base + 2, edges, mod, rng.randint(0, 3))


def applicable_r3(rng: random.Random) -> Instance:
    base = rng.randint(2, 6)
    x, y = rng.sample(range(base), 2)
    v, w = base, base + 1
    edges = _random_edges(rng, list(range(base)), rng.uniform(0.2, 0.6))
    edges += [(v, x), (v, y), (w, x), (w, y)]
    mod = {x} | {u for u in range(base) if rng.random() < 0.25}
    return _build(rng, base + 2, edges, mod, rng.randint(0, 3))


def _disjoint_paths_site(rng: random.Random, need_modulator: bool) -> Instance:
    k = rng.randint(0, 2)
    base = rng.randint(2, 4)
    v, w = 0, 1
    edges = [e for e in _random_edges(rng, list(range(base)), 0.4) if e != (0, 1)]
    nxt = base
    for _ in range(k + 1):
        edges += [(v, nxt), (nxt, w)]
        nxt += 1
    mod = ({v} if need_modulator else set())
    mod |= {u for u in range(base) if u > 1 and rng.random() < 0.25}
    return _build(rng, nxt, edges, mod, k)


def applicable_r4(rng: random.Random) -> Instance:
    return _disjoint_paths_site(rng, need_modulator=True)


def applicable_r3g(rng: random.Random) -> Instance:
    return _disjoint_paths_site(rng, need_modulator=False)


def applicable_r5(rng: random.Random) -> Instance:
    # two simplicial vertices sharing a clique neighborhood witness each other
    c = rng.randint(2, 3)
    hub = list(range(c))
    u, v = c, c + 1
    edges = list(combinations(hub, 2))
    edges += [(u, h) for h in hub] + [(v, h) for h in hub]
    extra = rng.randint(0, 3)
    others = list(range(c + 2, c + 2 + extra))
    edges += _random_edges(rng, others + hub, 0.3)
    mod = {h for h in hub if rng.random() < 0.4}
    return _build(rng, c + 2 + extra, edges, mod, rng.randint(0, 3))


def applicable_r6(rng: random.Random) -> Instance:
    k = rng.randint(0, 1)
    s_size = rng.randint(1, 2)
    comps = 2 * k + 4 + rng.randint(0, 1)
    total = s_size + comps
    if total > 9:
        comps = 9 - s_size
    edges = list(combinations(range(s_size), 2))
    edges += [(s, s_size + i) for i in range(comps) for s in range(s_size)]
    return _build(rng, s_size + comps, edges, set(range(s_size)), k)


def applicable_r7(rng: random.Random, force_no: bool = False) -> Instance:
    deg = rng.choice((3, 3, 4))
    cliq = list(range(deg - 1))       # the clique part of the neighborhood
    w, v = deg - 1, deg               # special neighbor and the vertex itself
    edges = list(combinations(cliq, 2))
    edges += [(v, u) for u in cliq] + [(v, w)]
    extra = rng.randint(0, 2)
    others = list(range(deg + 1, deg + 1 + extra))
    edges += _random_edges(rng, others + cliq + [w], 0.3)
    mod = {u for u in cliq if rng.random() < 0.3}
    if force_no:
        k = deg - 2
    else:
        k = rng.randint(deg - 1, deg + 1)
    return _build(rng, deg + 1 + extra, edges, mod, k)


MATCHERS = {
    rules.RuleId.R1: (applicable_r1, rules.rule1),
    rules.RuleId.R2: (applicable_r2, rules.rule2),
    rules.RuleId.R3: (applicable_r3, rules.rule3),
    rules.RuleId.R3G: (applicable_r3g, rules.rule3g),
    rules.RuleId.R4: (applicable_r4, rules.rule4),
    rules.RuleId.R5: (applicable_r5, rules.rule5),
    rules.RuleId.R6: (applicable_r6, rules.rule6),
    rules.RuleId.R7: (applicable_r7, rules.rule7),
}


def applicable_site(rule: rules.RuleId, rng: random.Random):
    """An instance where `rule` matches, together with its single-step result."""
    generate, apply_rule = MATCHERS[rule]
    while True:
        inst = generate(rng)
        step = apply_rule(inst)
        if step is not None:
            return inst, step
