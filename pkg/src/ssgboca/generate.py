"""Seeded random instances for differential testing.

Every generator is a pure function of its seed and size parameters.  Sizes
are capped at desk scale; asking for more raises :class:`ValueError`.
"""

from __future__ import annotations

import random

from .boca import BocaAutomaton, BocaTransition
from .csa import CsaAutomaton, CsaTransition
from .qbf import EXISTS, FORALL, Literal, Qbf3Cnf
from .ssg import Play, SsgInstance

CAPS = {
    "ssg": {"n": 12, "max": 10**6},
    "qbf": {"vars": 12, "clauses": 24},
    "csa": {"locations": 16, "k": 4, "transitions": 48, "max_inc": 7, "max_test": 7},
    "boca": {"locations": 16, "bound": 1024, "transitions": 64},
}


def _check_caps(kind: str, params: dict) -> None:
    for key, value in params.items():
        cap = CAPS[kind][key]
        if not 0 <= value <= cap:
            raise ValueError(f"gen {kind}: {key}={value} outside [0, {cap}]")


def random_ssg(seed: int, n: int = 2, max: int = 3) -> SsgInstance:
    """Numbers uniform in ``[0, max]``.  Half of the targets are the sum of a
    random play, so both winners show up often."""
    _check_caps("ssg", {"n": n, "max": max})
    if n < 1:
        raise ValueError("gen ssg: n must be at least 1")
    rng = random.Random(seed)
    rounds = tuple(tuple(rng.randint(0, max) for _ in range(4)) for _ in range(n))
    probe = SsgInstance(rounds, 0)
    if rng.random() < 0.5:
        sides = "".join(rng.choice("AB") + rng.choice("EF") for _ in range(n))
        target = sum(c.value for c in Play.from_sides(probe, sides).choices)
    else:
        target = rng.randint(0, probe.max_play_sum())
    return SsgInstance(rounds, target)


def random_qbf(seed: int, vars: int = 3, clauses: int = 3) -> Qbf3Cnf:
    """Random prefix and random non-tautological 3-literal clauses."""
    _check_caps("qbf", {"vars": vars, "clauses": clauses})
    if vars < 1:
        raise ValueError("gen qbf: vars must be at least 1")
    rng = random.Random(seed)
    names = [f"x{i}" for i in range(1, vars + 1)]
    prefix = tuple((v, rng.choice((FORALL, EXISTS))) for v in names)
    out = []
    for _ in range(clauses):
        signs: dict[str, bool] = {}
        lits = []
        for _ in range(3):
            var = rng.choice(names)
            positive = signs.setdefault(var, rng.random() < 0.5)
            lits.append(Literal(var, positive))
        out.append(tuple(lits))
    return Qbf3Cnf(prefix, tuple(out))


def random_csa(
    seed: int,
    locations: int = 4,
    k: int = 2,
    transitions: int = 8,
    max_inc: int = 2,
    max_test: int = 3,
) -> CsaAutomaton:
    """Random automaton obeying the stack discipline by construction."""
    _check_caps("csa", {"locations": locations, "k": k, "transitions": transitions,
                        "max_inc": max_inc, "max_test": max_test})
    if locations < 1 or k < 1:
        raise ValueError("gen csa: need at least one location and one counter")
    rng = random.Random(seed)
    locs = tuple(f"l{i}" for i in range(locations))
    ts = []
    for _ in range(transitions):
        lowest = rng.randint(1, k + 1)
        eq = {i: rng.randint(0, max_test) for i in range(lowest, k + 1)}
        resets = frozenset(i for i in eq if rng.random() < 0.3)
        inc = tuple(0 if i in resets else rng.randint(0, max_inc) for i in range(1, k + 1))
        ts.append(CsaTransition(rng.choice(locs), rng.choice(locs), eq, inc, resets))
    return CsaAutomaton(locs, k, tuple(ts), locs[0])


def random_boca(seed: int, locations: int = 4, bound: int = 16, transitions: int = 8) -> BocaAutomaton:
    _check_caps("boca", {"locations": locations, "bound": bound, "transitions": transitions})
    if locations < 1:
        raise ValueError("gen boca: need at least one location")
    rng = random.Random(seed)
    locs = tuple(f"l{i}" for i in range(locations))
    ts = []
    for _ in range(transitions):
        g1 = rng.randint(0, bound)
        g2 = rng.randint(g1, bound)
        if rng.random() < 0.3:
            g1, g2 = 0, bound
        p = rng.randint(-bound, bound) if rng.random() < 0.2 else rng.randint(-3, 3)
        p = max(-bound, min(bound, p))
        ts.append(BocaTransition(rng.choice(locs), rng.choice(locs), p, g1, g2))
    return BocaAutomaton(locs, bound, tuple(ts), locs[0])


GENERATORS = {
    "ssg": random_ssg,
    "qbf": random_qbf,
    "csa": random_csa,
    "boca": random_boca,
}


def gen_random(kind: str, seed: int, **params):
    try:
        gen = GENERATORS[kind]
    except KeyError:
        raise ValueError(f"unknown instance kind {kind!r}") from None
    return gen(seed, **params)
