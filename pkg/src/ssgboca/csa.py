"""Counter-stack automata.

Counters are numbered ``1..k`` with ``k`` the top of the stack.  A transition
``(l, E, I, R, l')`` may only test a counter if every higher counter is
tested too, and may only reset counters it tests.  Equality tests are kept as
a dict from counter index to value; increments as a length-``k`` tuple.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, NamedTuple, Sequence, Union

from .errors import BudgetExceeded, StructuralError, ValidationError

DEFAULT_STATE_BUDGET = 50_000_000


class ResetIncrementWarning(UserWarning):
    """A transition both increments and resets the same counter."""


@dataclass(frozen=True, eq=False)
class CsaTransition:
    source: str
    target: str
    eq: Mapping[int, int]
    inc: tuple[int, ...]
    resets: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "eq", dict(sorted((int(i), int(v)) for i, v in dict(self.eq).items())))
        object.__setattr__(self, "inc", tuple(int(x) for x in self.inc))
        object.__setattr__(self, "resets", frozenset(int(r) for r in self.resets))

    def _key(self):
        return (self.source, self.target, tuple(self.eq.items()), self.inc, tuple(sorted(self.resets)))

    def __eq__(self, other):
        if not isinstance(other, CsaTransition):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"CsaTransition({self.source!r} -> {self.target!r}, eq={self.eq}, "
                f"inc={self.inc}, resets={sorted(self.resets)})")


class CsaState(NamedTuple):
    location: str
    counters: tuple[int, ...]


@dataclass(frozen=True)
class CsaAutomaton:
    locations: tuple[str, ...]
    k: int
    transitions: tuple[CsaTransition, ...]
    initial: str

    def __post_init__(self):
        object.__setattr__(self, "locations", tuple(self.locations))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        if self.k < 1:
            raise StructuralError("a counter-stack automaton needs k >= 1")
        locs = set(self.locations)
        if len(locs) != len(self.locations):
            raise StructuralError("duplicate location names")
        if self.initial not in locs:
            raise StructuralError(f"initial location {self.initial!r} is not a location")
        for idx, t in enumerate(self.transitions):
            if t.source not in locs or t.target not in locs:
                raise StructuralError(f"transition {idx} has an endpoint outside the location set")
            if len(t.inc) != self.k:
                raise StructuralError(f"transition {idx} has {len(t.inc)} increments, expected {self.k}")
            if any(x < 0 for x in t.inc):
                raise StructuralError(f"transition {idx} has a negative increment")
            if any(not 1 <= i <= self.k for i in list(t.eq) + list(t.resets)):
                raise StructuralError(f"transition {idx} refers to a counter outside [1, {self.k}]")
            if any(v < 0 for v in t.eq.values()):
                raise StructuralError(f"transition {idx} tests against a negative value")

    @cached_property
    def outgoing(self) -> dict[str, list[int]]:
        out: dict[str, list[int]] = {l: [] for l in self.locations}
        for idx, t in enumerate(self.transitions):
            out[t.source].append(idx)
        return out

    def initial_state(self) -> CsaState:
        return CsaState(self.initial, (0,) * self.k)


@dataclass(frozen=True)
class Violation:
    transition: int
    message: str

    def __str__(self):
        return f"transition {self.transition}: {self.message}"


def validate_csa(aut: CsaAutomaton) -> list[Violation]:
    """Every stack-discipline violation, in transition order.

    An empty list means the automaton is valid.  Transitions that increment a
    counter they also reset are legal but almost certainly a modelling slip,
    so they raise a :class:`ResetIncrementWarning` instead.
    """
    found = []
    for idx, t in enumerate(aut.transitions):
        if t.eq:
            lowest = min(t.eq)
            missing = [j for j in range(lowest + 1, aut.k + 1) if j not in t.eq]
            if missing:
                found.append(Violation(
                    idx,
                    f"tests c{lowest} without testing higher counters "
                    + ", ".join(f"c{j}" for j in missing),
                ))
        untested = sorted(r for r in t.resets if r not in t.eq)
        if untested:
            found.append(Violation(
                idx, "resets " + ", ".join(f"c{r}" for r in untested) + " without testing them"
            ))
        clash = sorted(r for r in t.resets if t.inc[r - 1] != 0)
        if clash:
            warnings.warn(
                f"transition {idx} increments and resets " + ", ".join(f"c{r}" for r in clash),
                ResetIncrementWarning,
                stacklevel=2,
            )
    return found


def check_csa(aut: CsaAutomaton) -> None:
    """Raise :class:`ValidationError` listing every stack-discipline violation."""
    problems = validate_csa(aut)
    if problems:
        raise ValidationError("; ".join(map(str, problems)))


def _check_state(aut: CsaAutomaton, s: CsaState) -> None:
    if s.location not in aut.outgoing:
        raise StructuralError(f"unknown location {s.location!r}")
    if len(s.counters) != aut.k:
        raise StructuralError(f"state has {len(s.counters)} counters, expected {aut.k}")
    if any(c < 0 for c in s.counters):
        raise StructuralError("counters must be non-negative")


def _fire(t: CsaTransition, counters: tuple[int, ...]) -> tuple[int, ...] | None:
    for i, v in t.eq.items():
        if counters[i - 1] != v:
            return None
    resets = t.resets
    return tuple(
        0 if i in resets else c + d
        for i, (c, d) in enumerate(zip(counters, t.inc), 1)
    )


def csa_step(aut: CsaAutomaton, s: CsaState) -> list[tuple[CsaState, int]]:
    """Successors of ``s`` with the index of the transition producing each."""
    _check_state(aut, s)
    out = []
    for idx in aut.outgoing[s.location]:
        t = aut.transitions[idx]
        nxt = _fire(t, s.counters)
        if nxt is not None:
            out.append((CsaState(t.target, nxt), idx))
    return out


@dataclass(frozen=True)
class CsaRun:
    """States ``s_0 .. s_m`` and the transition index used for each step."""

    states: tuple[CsaState, ...]
    transitions: tuple[int, ...] = ()

    def __post_init__(self):
        states = tuple(CsaState(l, tuple(c)) for l, c in self.states)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "transitions", tuple(self.transitions))
        if not states:
            raise StructuralError("a run has at least one state")
        if len(self.transitions) != len(states) - 1:
            raise StructuralError("a run needs exactly one transition per step")

    @property
    def last(self) -> CsaState:
        return self.states[-1]

    def __len__(self):
        return len(self.transitions)


def replay_run(aut: CsaAutomaton, run: CsaRun, from_initial: bool = True) -> int | None:
    """Check a run step by step.

    Returns ``None`` if the run is valid, otherwise the index of the first
    state in ``run.states`` that is not justified: ``0`` if the run does not
    start in the initial state, ``i`` if ``states[i]`` does not follow from
    ``states[i - 1]`` via ``transitions[i - 1]``.
    """
    first = run.states[0]
    try:
        _check_state(aut, first)
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
        if _fire(t, prev.counters) != cur.counters:
            return i
    return None


Bound = Union[int, Sequence[int]]


@dataclass(frozen=True)
class CsaReachResult:
    reachable: bool
    witness: CsaRun | None = None
    bound_violation: CsaState | None = None
    visited: int = 0


def _bounds(aut: CsaAutomaton, bound: Bound) -> tuple[int, ...]:
    if isinstance(bound, int):
        return (bound,) * aut.k
    bounds = tuple(bound)
    if len(bounds) != aut.k:
        raise StructuralError(f"per-counter bound has {len(bounds)} entries, expected {aut.k}")
    return bounds


def _trace(parents: dict, state) -> tuple[list, list[int]]:
    states, steps = [state], []
    while parents[state] is not None:
        state, idx = parents[state]
        states.append(state)
        steps.append(idx)
    states.reverse()
    steps.reverse()
    return states, steps


def reach_csa(
    aut: CsaAutomaton,
    target: CsaState,
    bound: Bound,
    state_budget: int = DEFAULT_STATE_BUDGET,
) -> CsaReachResult:
    """Breadth-first search from ``(l_0, 0...0)`` with a boundedness monitor.

    ``bound`` is either one bound for every counter or a per-counter vector.
    The first discovered state exceeding it aborts the search and is reported
    as ``bound_violation`` (``reachable`` is then ``False`` and meaningless).
    Transitions are explored in declaration order, so witnesses are shortest
    and reproducible.
    """
    target = CsaState(target.location, tuple(target.counters))
    _check_state(aut, target)
    bounds = _bounds(aut, bound)
    if any(c > b for c, b in zip(target.counters, bounds)):
        raise StructuralError("target counters exceed the bound")
    start = aut.initial_state()
    parents: dict[CsaState, tuple[CsaState, int] | None] = {start: None}
    frontier = deque([start])
    transitions = aut.transitions
    outgoing = aut.outgoing
    while frontier:
        s = frontier.popleft()
        if s == target:
            states, steps = _trace(parents, s)
            return CsaReachResult(True, CsaRun(tuple(states), tuple(steps)), visited=len(parents))
        for idx in outgoing[s.location]:
            t = transitions[idx]
            nxt = _fire(t, s.counters)
            if nxt is None:
                continue
            succ = CsaState(t.target, nxt)
            if succ in parents:
                continue
            parents[succ] = (s, idx)
            if any(c > b for c, b in zip(nxt, bounds)):
                return CsaReachResult(False, bound_violation=succ, visited=len(parents))
            if len(parents) > state_budget:
                raise BudgetExceeded(f"reach_csa: more than {state_budget} states visited")
            frontier.append(succ)
    return CsaReachResult(False, visited=len(parents))
