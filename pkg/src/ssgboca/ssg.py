"""Subset-sum games.

An instance is a list of ``n`` rounds ``(A, B, E, F)`` and a target ``T``.
In round ``i`` the universal player picks ``A_i`` or ``B_i`` and the
existential player answers with ``E_i`` or ``F_i``; the existential player
wins a play iff the ``2n`` chosen numbers sum to ``T``.

Plays are ordered sequences of tagged choices, so duplicate numbers (the QBF
reduction produces lots of zeros) never collapse.  Universal prefixes are
written as strings over ``"AB"`` and existential decisions as ``"E"``/``"F"``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence, Union

from .errors import BudgetExceeded, StructuralError, ValidationError

UNIVERSAL = "universal"
EXISTENTIAL = "existential"

_SIDE_INDEX = {"A": 0, "B": 1, "E": 2, "F": 3}
_UNIVERSAL_SIDES = ("A", "B")
_EXISTENTIAL_SIDES = ("E", "F")

DEFAULT_MAX_ROUNDS = 20


def _natural(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ValidationError(f"{what} must be a natural number, got {value!r}")
    return value


@dataclass(frozen=True)
class SsgInstance:
    """A subset-sum game ``forall{A1,B1} exists{E1,F1} ... , T``."""

    rounds: tuple[tuple[int, int, int, int], ...]
    target: int

    def __post_init__(self):
        rounds = tuple(tuple(r) for r in self.rounds)
        if not rounds:
            raise ValidationError("a subset-sum game needs at least one round")
        for i, r in enumerate(rounds, 1):
            if len(r) != 4:
                raise ValidationError(f"round {i} must be a quadruple (A, B, E, F), got {r!r}")
            for side, value in zip("ABEF", r):
                _natural(value, f"{side}{i}")
        object.__setattr__(self, "rounds", rounds)
        _natural(self.target, "target")

    @property
    def n(self) -> int:
        return len(self.rounds)

    def value(self, round_: int, side: str) -> int:
        """Number offered at ``round_`` (1-based) on ``side`` in ``"ABEF"``."""
        return self.rounds[round_ - 1][_SIDE_INDEX[side]]

    def total(self) -> int:
        """Sum of all ``4n`` numbers (an upper bound on any play sum)."""
        return sum(sum(r) for r in self.rounds)

    def max_play_sum(self) -> int:
        return sum(max(a, b) + max(e, f) for a, b, e, f in self.rounds)


class Choice(NamedTuple):
    round: int
    side: str
    value: int


@dataclass(frozen=True)
class Play:
    """One complete play: ``2n`` choices alternating universal/existential."""

    choices: tuple[Choice, ...]

    def __post_init__(self):
        object.__setattr__(self, "choices", tuple(Choice(*c) for c in self.choices))

    @classmethod
    def from_sides(cls, instance: SsgInstance, sides: Union[str, Sequence[str]]) -> "Play":
        """Build a play from a side string such as ``"AEBF"``."""
        sides = "".join(sides)
        if len(sides) != 2 * instance.n:
            raise StructuralError(f"expected {2 * instance.n} sides, got {len(sides)}")
        choices = []
        for pos, side in enumerate(sides):
            round_ = pos // 2 + 1
            allowed = _UNIVERSAL_SIDES if pos % 2 == 0 else _EXISTENTIAL_SIDES
            if side not in allowed:
                raise StructuralError(f"side {side!r} not allowed at position {pos}")
            choices.append(Choice(round_, side, instance.value(round_, side)))
        return cls(tuple(choices))

    @classmethod
    def from_moves(cls, instance: SsgInstance, universal: str, existential: str) -> "Play":
        return cls.from_sides(instance, "".join(u + e for u, e in zip(universal, existential)))

    @property
    def sides(self) -> str:
        return "".join(c.side for c in self.choices)

    @property
    def universal(self) -> str:
        """The universal moves as a string over ``"AB"``."""
        return "".join(c.side for c in self.choices[0::2])

    @property
    def existential(self) -> str:
        """The existential moves as a string over ``"EF"``."""
        return "".join(c.side for c in self.choices[1::2])

    def __str__(self):
        return " ".join(f"{c.side}{c.round}={c.value}" for c in self.choices)


def check_play(instance: SsgInstance, play: Play) -> None:
    """Raise :class:`StructuralError` unless ``play`` is a play of ``instance``."""
    if len(play.choices) != 2 * instance.n:
        raise StructuralError(
            f"play has {len(play.choices)} choices, expected {2 * instance.n}"
        )
    for pos, c in enumerate(play.choices):
        round_ = pos // 2 + 1
        allowed = _UNIVERSAL_SIDES if pos % 2 == 0 else _EXISTENTIAL_SIDES
        if c.round != round_:
            raise StructuralError(f"choice {pos} carries round {c.round}, expected {round_}")
        if c.side not in allowed:
            raise StructuralError(f"choice {pos} has side {c.side!r}, expected one of {allowed}")
        if c.value != instance.value(round_, c.side):
            raise StructuralError(
                f"choice {c.side}{round_} has value {c.value}, "
                f"instance says {instance.value(round_, c.side)}"
            )


def play_sum(instance: SsgInstance, play: Play) -> int:
    check_play(instance, play)
    return sum(c.value for c in play.choices)


def is_winning_play(instance: SsgInstance, play: Play) -> bool:
    return play_sum(instance, play) == instance.target


@dataclass(frozen=True, eq=False)
class Strategy:
    """Existential strategy ``(s_1, ..., s_n)``.

    ``maps[i - 1]`` sends every universal prefix of length ``i`` (a string
    over ``"AB"``) to ``"E"`` or ``"F"``.
    """

    maps: tuple[Mapping[str, str], ...]

    def __post_init__(self):
        maps = tuple(MappingProxyType(dict(m)) for m in self.maps)
        if not maps:
            raise StructuralError("a strategy needs at least one round")
        for i, m in enumerate(maps, 1):
            expected = {"".join(p) for p in itertools.product("AB", repeat=i)}
            if set(m) != expected:
                missing = sorted(expected - set(m))
                extra = sorted(set(m) - expected)
                raise StructuralError(
                    f"s_{i} must be total over the {2 ** i} universal prefixes "
                    f"(missing {missing}, unexpected {extra})"
                )
            bad = {k: v for k, v in m.items() if v not in _EXISTENTIAL_SIDES}
            if bad:
                raise StructuralError(f"s_{i} maps to non-existential sides {bad}")
        object.__setattr__(self, "maps", maps)

    @classmethod
    def from_function(cls, n: int, fn: Callable[[str], str]) -> "Strategy":
        """Tabulate ``fn(prefix)`` over every universal prefix of length 1..n."""
        return cls(tuple(
            {"".join(p): fn("".join(p)) for p in itertools.product("AB", repeat=i)}
            for i in range(1, n + 1)
        ))

    @property
    def n(self) -> int:
        return len(self.maps)

    def choose(self, prefix: str) -> str:
        return self.maps[len(prefix) - 1][prefix]

    def __eq__(self, other):
        if not isinstance(other, Strategy):
            return NotImplemented
        return [dict(m) for m in self.maps] == [dict(m) for m in other.maps]

    def __hash__(self):
        return hash(tuple(tuple(sorted(m.items())) for m in self.maps))

    def __repr__(self):
        return f"Strategy({[dict(m) for m in self.maps]!r})"


def _check_strategy(instance: SsgInstance, s: Strategy) -> None:
    if s.n != instance.n:
        raise StructuralError(f"strategy has {s.n} rounds, instance has {instance.n}")


def enumerate_plays(instance: SsgInstance, s: Strategy) -> frozenset[Play]:
    """The ``2^n`` plays conforming to ``s``, one per universal bit-string."""
    _check_strategy(instance, s)
    plays = set()
    for bits in itertools.product("AB", repeat=instance.n):
        universal = "".join(bits)
        existential = "".join(s.choose(universal[:i]) for i in range(1, instance.n + 1))
        plays.add(Play.from_moves(instance, universal, existential))
    return frozenset(plays)


def is_winning_strategy(instance: SsgInstance, s: Strategy) -> bool:
    return all(is_winning_play(instance, p) for p in enumerate_plays(instance, s))


@dataclass(frozen=True)
class SsgSolution:
    winner: str
    strategy: Strategy | None = None

    @property
    def existential_wins(self) -> bool:
        return self.winner == EXISTENTIAL


def solve_ssg(instance: SsgInstance, max_rounds: int = DEFAULT_MAX_ROUNDS) -> SsgSolution:
    """Decide the game by exhaustive minimax.

    Returns the winner and, when the existential player wins, a winning
    strategy.  Ties are broken towards ``E`` for the existential player and
    towards ``A`` for the universal player.  Positions are memoised on
    (round, partial sum), and partial sums above the target are cut off
    (all numbers are naturals, so such subtrees are lost).
    """
    n = instance.n
    if n > max_rounds:
        raise BudgetExceeded(f"solve_ssg: {n} rounds exceeds the cap of {max_rounds}")
    rounds = instance.rounds
    target = instance.target

    memo: dict[tuple[int, int], bool] = {}

    def wins(i: int, acc: int) -> bool:
        if acc > target:
            return False
        if i == n:
            return acc == target
        key = (i, acc)
        if key not in memo:
            a, b, e, f = rounds[i]
            memo[key] = all(wins(i + 1, acc + u + e) or wins(i + 1, acc + u + f) for u in (a, b))
        return memo[key]

    if not wins(0, 0):
        return SsgSolution(UNIVERSAL)

    maps: list[dict[str, str]] = [{} for _ in range(n)]

    def extract(i: int, prefix: str, acc: int) -> None:
        if i == n:
            return
        a, b, e, f = rounds[i]
        for side, u in (("A", a), ("B", b)):
            here = prefix + side
            if wins(i + 1, acc + u + e):
                maps[i][here] = "E"
                extract(i + 1, here, acc + u + e)
            else:
                maps[i][here] = "F"
                extract(i + 1, here, acc + u + f)

    extract(0, "", 0)
    return SsgSolution(EXISTENTIAL, Strategy(tuple(maps)))


@dataclass(frozen=True)
class Block:
    """An ``i``-block: the 1-based play interval ``[lo, hi]`` at ``level``."""

    level: int
    lo: int
    hi: int
    parity: str

    @property
    def even(self) -> bool:
        return self.parity == "even"

    def __contains__(self, j: int) -> bool:
        return self.lo <= j <= self.hi

    def indices(self) -> range:
        return range(self.lo, self.hi + 1)

    def __len__(self):
        return self.hi - self.lo + 1


def blocks(n: int, i: int) -> list[Block]:
    """The ``2^i`` blocks at level ``i`` partitioning ``[1, 2^n]``."""
    if not 1 <= i <= n:
        raise ValueError(f"block level {i} outside [1, {n}]")
    width = 2 ** (n - i)
    return [
        Block(i, m * width + 1, m * width + width, "even" if m % 2 == 0 else "odd")
        for m in range(2 ** i)
    ]


@dataclass(frozen=True)
class SequentialCheck:
    ok: bool
    violation: str | None = None
    block: Block | None = None

    def __bool__(self):
        return self.ok


def is_sequential_strategy(instance: SsgInstance, candidate: Sequence[Play]) -> SequentialCheck:
    """Check the three block conditions, reporting the first violation."""
    plays = list(candidate)
    n = instance.n
    if len(plays) != 2 ** n:
        raise StructuralError(f"expected {2 ** n} plays, got {len(plays)}")
    for play in plays:
        check_play(instance, play)
    for i in range(1, n + 1):
        for block in blocks(n, i):
            want = "A" if block.even else "B"
            sides = set()
            for j in block.indices():
                play = plays[j - 1]
                if play.universal[i - 1] != want:
                    return SequentialCheck(
                        False,
                        f"play {j} picks {play.universal[i - 1]}{i} inside "
                        f"{block.parity} {i}-block [{block.lo}, {block.hi}]",
                        block,
                    )
                sides.add(play.existential[i - 1])
            if len(sides) > 1:
                return SequentialCheck(
                    False,
                    f"existential side at round {i} changes inside "
                    f"{i}-block [{block.lo}, {block.hi}]",
                    block,
                )
    return SequentialCheck(True)


@dataclass(frozen=True)
class SequentialStrategy:
    """A strategy written as ``2^n`` plays in block order."""

    instance: SsgInstance
    plays: tuple[Play, ...]

    def __post_init__(self):
        object.__setattr__(self, "plays", tuple(self.plays))
        check = is_sequential_strategy(self.instance, self.plays)
        if not check:
            raise ValidationError(f"not a sequential strategy: {check.violation}")

    def is_winning(self) -> bool:
        return all(is_winning_play(self.instance, p) for p in self.plays)

    def __iter__(self):
        return iter(self.plays)

    def __len__(self):
        return len(self.plays)


def strategy_to_sequential(instance: SsgInstance, s: Strategy) -> SequentialStrategy:
    """Order ``plays(s)`` so that the block conditions hold.

    Refines level by level: inside every ``(i-1)``-block the plays choosing
    ``A_i`` are moved (stably) in front of those choosing ``B_i``.
    """
    n = instance.n
    order = list(enumerate_plays(instance, s))
    for i in range(1, n + 1):
        size = 2 ** (n - i + 1)
        for start in range(0, 2 ** n, size):
            chunk = order[start:start + size]
            first = [p for p in chunk if p.universal[i - 1] == "A"]
            second = [p for p in chunk if p.universal[i - 1] == "B"]
            if len(first) != len(second):
                raise StructuralError(f"uneven split at level {i}; not a strategy's plays")
            order[start:start + size] = first + second
    return SequentialStrategy(instance, tuple(order))


def sequential_to_strategy(
    instance: SsgInstance, seq: Union[SequentialStrategy, Iterable[Play]]
) -> Strategy:
    """Recover the strategy encoded by a sequential strategy.

    For a universal prefix ``D_1 ... D_i`` descend from ``[1, 2^n]`` into the
    unique sub-block whose plays all contain ``D_r`` at each level ``r``; the
    existential answer is the side shared by the plays of the final block.
    """
    if not isinstance(seq, SequentialStrategy):
        seq = SequentialStrategy(instance, tuple(seq))
    elif seq.instance != instance:
        raise ValidationError("sequential strategy belongs to a different instance")
    n = instance.n
    plays = seq.plays
    maps: list[dict[str, str]] = []
    for i in range(1, n + 1):
        m = {}
        for bits in itertools.product("AB", repeat=i):
            lo, hi = 1, 2 ** n
            for r, d in enumerate(bits, 1):
                half = (hi - lo + 1) // 2
                halves = ((lo, lo + half - 1), (lo + half, hi))
                lo, hi = next(
                    (a, b) for a, b in halves
                    if all(plays[j - 1].universal[r - 1] == d for j in range(a, b + 1))
                )
            m["".join(bits)] = plays[lo - 1].existential[i - 1]
        maps.append(m)
    return Strategy(tuple(maps))
