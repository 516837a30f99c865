"""Subset-sum games as counter-stack automata.

The automaton repeatedly walks a *play gadget* ``u_1 -> e_1 -> ... -> u_n ->
e_n -> w_1 -> w_2`` choosing one play, then a *reset gadget* ``r'_n, r_n, ...,
r'_1, r_1`` whose equality tests force the ``2^n`` passes to spell out a
sequential strategy.  Round ``i`` owns four counters ``a_i, b_i, e_i, f_i``
counting how often each edge was used; the top counter ``c_k`` accumulates
the play's sum and is checked against ``T`` on ``w_1 -> w_2``.

Location names: ``u1..un``, ``e1..en``, ``w1``, ``w2``, ``r1..rn``,
``r'1..r'n`` and ``t``.  Counters are always referred to by index, so the
location ``e1`` and the counter ``e_1`` never collide.
"""

from __future__ import annotations

from dataclasses import dataclass

from .csa import CsaAutomaton, CsaRun, CsaState, CsaTransition, csa_step
from .errors import PreconditionError, StructuralError
from .ssg import Play, SequentialStrategy, SsgInstance, blocks


@dataclass(frozen=True)
class CounterLayout:
    """Counter indices for ``n`` rounds: ``k = 4n + 1``, round ``i`` uses
    ``4(i-1)+1 .. 4(i-1)+4`` and the top counter is ``k``."""

    n: int

    @property
    def k(self) -> int:
        return 4 * self.n + 1

    @property
    def top(self) -> int:
        return self.k

    def a(self, i: int) -> int:
        return 4 * (i - 1) + 1

    def b(self, i: int) -> int:
        return 4 * (i - 1) + 2

    def e(self, i: int) -> int:
        return 4 * (i - 1) + 3

    def f(self, i: int) -> int:
        return 4 * (i - 1) + 4

    def counter(self, side: str, i: int) -> int:
        return {"A": self.a, "B": self.b, "E": self.e, "F": self.f}[side](i)

    def names(self) -> dict[str, int]:
        out = {}
        for i in range(1, self.n + 1):
            out.update({f"a{i}": self.a(i), f"b{i}": self.b(i), f"e{i}": self.e(i), f"f{i}": self.f(i)})
        out["top"] = self.top
        return out


def u(i: int) -> str:
    return f"u{i}"


def e(i: int) -> str:
    return f"e{i}"


def r(i: int) -> str:
    return f"r{i}"


def rp(i: int) -> str:
    return f"r'{i}"


W1, W2, GOAL = "w1", "w2", "t"


def _locations(n: int) -> tuple[str, ...]:
    locs = []
    for i in range(1, n + 1):
        locs += [u(i), e(i)]
    locs += [W1, W2]
    for i in range(n, 0, -1):
        locs += [rp(i), r(i)]
    locs.append(GOAL)
    return tuple(locs)


def _with_implicit_zeros(k: int, tests: dict[int, int]) -> dict[int, int]:
    """Complete ``tests`` with ``c_j = 0`` for every untested ``j`` above the
    lowest tested counter."""
    lowest = min(tests)
    return {j: tests.get(j, 0) for j in range(lowest, k + 1)}


def _build(n: int, instance: SsgInstance | None) -> CsaAutomaton:
    layout = CounterLayout(n)
    k = layout.k

    def inc(*pairs: tuple[int, int]) -> tuple[int, ...]:
        vec = [0] * k
        for idx, amount in pairs:
            vec[idx - 1] += amount
        return tuple(vec)

    def play_edge(src: str, dst: str, side: str, i: int) -> CsaTransition:
        pairs = [(layout.counter(side, i), 1)]
        if instance is not None:
            pairs.append((layout.top, instance.value(i, side)))
        return CsaTransition(src, dst, {}, inc(*pairs))

    zero = inc()
    ts: list[CsaTransition] = []
    for i in range(1, n + 1):
        nxt = u(i + 1) if i < n else W1
        ts.append(play_edge(u(i), e(i), "A", i))
        ts.append(play_edge(u(i), e(i), "B", i))
        ts.append(play_edge(e(i), nxt, "E", i))
        ts.append(play_edge(e(i), nxt, "F", i))
    if instance is None:
        ts.append(CsaTransition(W1, W2, {}, zero))
    else:
        ts.append(CsaTransition(W1, W2, {layout.top: instance.target}, zero, {layout.top}))
    ts.append(CsaTransition(W2, rp(n), {}, zero))
    for i in range(n, 0, -1):
        full = 2 ** (n - i)
        ei, fi, ai, bi = layout.e(i), layout.f(i), layout.a(i), layout.b(i)
        for ev, fv in ((full, 0), (0, full)):
            ts.append(CsaTransition(
                rp(i), r(i), _with_implicit_zeros(k, {ei: ev, fi: fv}), zero, {ei, fi}
            ))
        ts.append(CsaTransition(r(i), u(1), _with_implicit_zeros(k, {ai: full, bi: 0}), zero))
        down = rp(i - 1) if i > 1 else GOAL
        ts.append(CsaTransition(
            r(i), down, _with_implicit_zeros(k, {ai: full, bi: full}), zero, {ai, bi}
        ))
    return CsaAutomaton(_locations(n), k, tuple(ts), u(1))


def build_base_automaton(n: int) -> CsaAutomaton:
    """The automaton whose successful runs are exactly the sequential
    strategies of an ``n``-round game (the top counter stays unused)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return _build(n, None)


def analytic_bound(instance: SsgInstance) -> int:
    return max(2 ** instance.n, instance.total())


def counter_bounds(instance: SsgInstance) -> tuple[int, ...]:
    """Per-counter bounds: ``a_i, b_i <= 2^(n-i+1)``, ``e_i, f_i <= 2^(n-i)``,
    top counter ``<=`` the sum of all numbers."""
    n = instance.n
    layout = CounterLayout(n)
    out = [0] * layout.k
    for i in range(1, n + 1):
        out[layout.a(i) - 1] = out[layout.b(i) - 1] = 2 ** (n - i + 1)
        out[layout.e(i) - 1] = out[layout.f(i) - 1] = 2 ** (n - i)
    out[layout.top - 1] = instance.total()
    return tuple(out)


def build_full_automaton(instance: SsgInstance) -> tuple[CsaAutomaton, CsaState, int]:
    """Automaton, target state ``(t, 0...0)`` and a bound valid for every counter."""
    aut = _build(instance.n, instance)
    return aut, CsaState(GOAL, (0,) * aut.k), analytic_bound(instance)


@dataclass(frozen=True)
class Segment:
    """A stretch of a run from a visit to ``u1`` up to (and including) the
    next visit, or up to the end of the run."""

    states: tuple[CsaState, ...]
    transitions: tuple[int, ...]

    @property
    def locations(self) -> tuple[str, ...]:
        return tuple(s.location for s in self.states)

    def incremented(self) -> frozenset[int]:
        """Counters that some step of the segment increased."""
        out = set()
        for before, after in zip(self.states, self.states[1:]):
            out.update(i for i, (x, y) in enumerate(zip(before.counters, after.counters), 1) if y > x)
        return frozenset(out)

    def reset_locations(self) -> frozenset[str]:
        return frozenset(l for l in self.locations if l.startswith("r"))


def decompose_segments(run: CsaRun) -> list[Segment]:
    if run.states[0].location != u(1):
        raise StructuralError("run must start at u1")
    starts = [i for i, s in enumerate(run.states) if s.location == u(1)]
    ends = starts[1:] + [len(run.states) - 1]
    return [
        Segment(run.states[a:b + 1], run.transitions[a:b])
        for a, b in zip(starts, ends)
    ]


def ssruns_predicate(n: int, segments: list[Segment]) -> bool:
    """Block conditions on the segments present in ``segments``.

    For every ``i``-block: segments of an even block increment ``a_i``, those
    of an odd block increment ``b_i``, and all of them agree on ``e_i`` versus
    ``f_i``.
    """
    layout = CounterLayout(n)
    incs = [s.incremented() for s in segments]
    for i in range(1, n + 1):
        for block in blocks(n, i):
            want = layout.a(i) if block.even else layout.b(i)
            sides = set()
            for j in block.indices():
                if j > len(incs):
                    break
                got = incs[j - 1]
                if want not in got:
                    return False
                sides.add((layout.e(i) in got, layout.f(i) in got))
            if len(sides) > 1:
                return False
    return True


def reset_visit_oracle(n: int, j: int) -> frozenset[str]:
    """Reset locations the ``j``-th segment of a non-stuck run passes through."""
    if not 1 <= j <= 2 ** n:
        raise ValueError(f"segment index {j} outside [1, {2 ** n}]")
    out = set()
    for i in range(1, n + 1):
        if j % 2 ** (n - i) == 0:
            out.update((rp(i), r(i)))
    return frozenset(out)


def is_successful(aut: CsaAutomaton, run: CsaRun) -> bool:
    return run.last == CsaState(GOAL, (0,) * aut.k)


def run_to_sequential(instance: SsgInstance, run: CsaRun) -> SequentialStrategy:
    """Read the sequential strategy off a successful run.

    Works for runs of both the base and the full automaton; the ``j``-th play
    is given by the branches segment ``j`` takes through the play gadget.
    """
    n = instance.n
    layout = CounterLayout(n)
    if run.last != CsaState(GOAL, (0,) * layout.k):
        raise PreconditionError("run does not end in (t, 0...0)")
    plays = []
    for seg in decompose_segments(run):
        got = seg.incremented()
        universal = "".join("A" if layout.a(i) in got else "B" for i in range(1, n + 1))
        existential = "".join("E" if layout.e(i) in got else "F" for i in range(1, n + 1))
        plays.append(Play.from_moves(instance, universal, existential))
    return SequentialStrategy(instance, tuple(plays))


class StuckRunError(PreconditionError):
    """The run built from a sequential strategy got stuck."""

    def __init__(self, message: str, run: CsaRun):
        super().__init__(message)
        self.run = run


def sequential_to_run(
    instance: SsgInstance,
    seq: SequentialStrategy,
    automaton: CsaAutomaton | None = None,
) -> CsaRun:
    """Drive the full automaton (or ``automaton``) through ``seq``'s plays.

    Raises :class:`StuckRunError` carrying the partial run when no transition
    is enabled, e.g. at ``w1`` for a play that does not sum to the target.
    """
    aut = automaton if automaton is not None else build_full_automaton(instance)[0]
    n = instance.n
    state = aut.initial_state()
    states, steps = [state], []

    def take(pick) -> None:
        nonlocal state
        options = [(s, idx) for s, idx in csa_step(aut, state) if pick(aut.transitions[idx])]
        if not options:
            raise StuckRunError(
                f"stuck at {state.location} with counters {state.counters}",
                CsaRun(tuple(states), tuple(steps)),
            )
        state, idx = options[0]
        states.append(state)
        steps.append(idx)

    layout = CounterLayout(n)
    for play in seq.plays:
        for i in range(1, n + 1):
            for side in (play.universal[i - 1], play.existential[i - 1]):
                c = layout.counter(side, i)
                take(lambda t, c=c: t.inc[c - 1] == 1 and t.source in (u(i), e(i)))
        while True:
            take(lambda t: True)
            if state.location in (u(1), GOAL):
                break
    run = CsaRun(tuple(states), tuple(steps))
    if not is_successful(aut, run):
        raise StuckRunError(f"plays exhausted at {state.location} with counters {state.counters}", run)
    return run
