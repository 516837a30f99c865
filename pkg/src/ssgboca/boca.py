"""Bounded one-counter automata.

One counter ranging over ``[0, b]``.  A transition ``(l, p, g1, g2, l')``
fires from ``(l, c)`` when ``g1 <= c <= g2`` and ``0 <= c + p <= b``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .errors import BudgetExceeded, StructuralError, ValidationError

DEFAULT_STATE_BUDGET = 50_000_000


class BocaTransition(NamedTuple):
    source: str
    target: str
    p: int
    g1: int
    g2: int


class BocaState(NamedTuple):
    location: str
    value: int


@dataclass(frozen=True)
class BocaAutomaton:
    locations: tuple[str, ...]
    bound: int
    transitions: tuple[BocaTransition, ...]
    initial: str

    def __post_init__(self):
        object.__setattr__(self, "locations", tuple(self.locations))
        object.__setattr__(self, "transitions", tuple(BocaTransition(*t) for t in self.transitions))
        b = self.bound
        if isinstance(b, bool) or not isinstance(b, int) or b < 0:
            raise ValidationError(f"bound must be a natural number, got {b!r}")
        locs = set(self.locations)
        if len(locs) != len(self.locations):
            raise ValidationError("duplicate location names")
        if self.initial not in locs:
            raise ValidationError(f"initial location {self.initial!r} is not a location")
        for idx, t in enumerate(self.transitions):
            if t.source not in locs or t.target not in locs:
                raise ValidationError(f"transition {idx} has an endpoint outside the location set")
            if not -b <= t.p <= b:
                raise ValidationError(f"transition {idx}: |p| = {abs(t.p)} exceeds the bound {b}")
            if not (0 <= t.g1 <= b and 0 <= t.g2 <= b):
                raise ValidationError(f"transition {idx}: guards must lie in [0, {b}]")
            if t.g1 > t.g2:
                raise ValidationError(f"transition {idx}: empty guard [{t.g1}, {t.g2}]")

    @cached_property
    def outgoing(self) -> dict[str, list[int]]:
        out: dict[str, list[int]] = {l: [] for l in self.locations}
        for idx, t in enumerate(self.transitions):
            out[t.source].append(idx)
        return out

    def initial_state(self) -> BocaState:
        return BocaState(self.initial, 0)

    def check_state(self, s: BocaState) -> None:
        if s.location not in self.outgoing:
            raise StructuralError(f"unknown location {s.location!r}")
        if not 0 <= s.value <= self.bound:
            raise StructuralError(f"counter value {s.value} outside [0, {self.bound}]")


def _fire(t: BocaTransition, c: int, bound: int) -> int | None:
    if not t.g1 <= c <= t.g2:
        return None
    nxt = c + t.p
    if not 0 <= nxt <= bound:
        return None
    return nxt


def boca_step(aut: BocaAutomaton, s: BocaState) -> list[tuple[BocaState, int]]:
    aut.check_state(s)
    out = []
    for idx in aut.outgoing[s.location]:
        t = aut.transitions[idx]
        nxt = _fire(t, s.value, aut.bound)
        if nxt is not None:
            out.append((BocaState(t.target, nxt), idx))
    return out


@dataclass(frozen=True)
class BocaRun:
    states: tuple[BocaState, ...]
    transitions: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(BocaState(*s) for s in self.states))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        if not self.states:
            raise StructuralError("a run has at least one state")
        if len(self.transitions) != len(self.states) - 1:
            raise StructuralError("a run needs exactly one transition per step")

    def __len__(self):
        return len(self.transitions)


def replay_boca_run(aut: BocaAutomaton, run: BocaRun, from_initial: bool = True) -> int | None:
    """``None`` if valid, else the index of the first unjustified state
    (same convention as :func:`ssgboca.csa.replay_run`)."""
    first = run.states[0]
    try:
        aut.check_state(first)
    except StructuralError:
        return 0
    if from_initial and first != aut.initial_state():
        return 0
    for i, idx in enumerate(run.transitions, 1):
        prev, cur = run.states[i - 1], run.states[i]
        if not 0 <= idx < len(aut.transitions):
            return i
        t = aut.transitions[idx]
        if t.source != prev.location or t.target != cur.location:
            return i
        if _fire(t, prev.value, aut.bound) != cur.value:
            return i
    return None


@dataclass(frozen=True)
class BocaReachResult:
    reachable: bool
    witness: BocaRun | None = None
    visited: int = 0


def reach_boca(
    aut: BocaAutomaton, target: BocaState, state_budget: int = DEFAULT_STATE_BUDGET
) -> BocaReachResult:
    """Breadth-first search from ``(l_0, 0)``; shortest witness in transition
    declaration order."""
    target = BocaState(*target)
    aut.check_state(target)
    cap = len(aut.locations) * (aut.bound + 1)
    start = aut.initial_state()
    parents: dict[BocaState, tuple[BocaState, int] | None] = {start: None}
    frontier = deque([start])
    bound = aut.bound
    transitions = aut.transitions
    outgoing = aut.outgoing
    while frontier:
        s = frontier.popleft()
        if s == target:
            states, steps = [s], []
            while parents[s] is not None:
                s, idx = parents[s]
                states.append(s)
                steps.append(idx)
            return BocaReachResult(
                True, BocaRun(tuple(reversed(states)), tuple(reversed(steps))), len(parents)
            )
        for idx in outgoing[s.location]:
            t = transitions[idx]
            nxt = _fire(t, s.value, bound)
            if nxt is None:
                continue
            succ = BocaState(t.target, nxt)
            if succ in parents:
                continue
            parents[succ] = (s, idx)
            if len(parents) > state_budget:
                raise BudgetExceeded(f"reach_boca: more than {state_budget} states visited")
            frontier.append(succ)
    assert len(parents) <= cap
    return BocaReachResult(False, visited=len(parents))


def desugar_guards(aut: BocaAutomaton) -> BocaAutomaton:
    """Replace every guard by bound-checked additions.

    ``(l, p, g1, g2, l')`` becomes the chain ``-g1, +g1`` (only possible when
    ``c >= g1``), ``+(b - g2), -(b - g2)`` (only possible when ``c <= g2``)
    and finally ``+p``, through fresh locations ``l~<index>.<step>``.  Zero
    steps are dropped, so unguarded transitions are copied unchanged.
    """
    b = aut.bound
    locations = list(aut.locations)
    taken = set(locations)
    out: list[BocaTransition] = []
    for idx, t in enumerate(aut.transitions):
        deltas = [d for d in (-t.g1, t.g1, b - t.g2, -(b - t.g2)) if d != 0]
        if t.p != 0 or not deltas:
            deltas.append(t.p)
        chain = [t.source]
        for step in range(1, len(deltas)):
            fresh = f"{t.source}~{idx}.{step}"
            if fresh in taken:
                raise ValidationError(f"fresh location {fresh!r} clashes with an existing one")
            taken.add(fresh)
            locations.append(fresh)
            chain.append(fresh)
        chain.append(t.target)
        for src, dst, d in zip(chain, chain[1:], deltas):
            out.append(BocaTransition(src, dst, d, 0, b))
    return BocaAutomaton(tuple(locations), b, tuple(out), aut.initial)
