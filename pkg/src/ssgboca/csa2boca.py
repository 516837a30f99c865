"""Packing a bounded counter-stack automaton into one bounded counter.

Counter ``c_i`` lives in bits ``(i-1)*n_bits .. i*n_bits - 1`` of the packed
counter, so the top counter ``c_k`` occupies the most significant slot.
Because every test covers a contiguous run of slots from the top down, an
equality test becomes a single interval guard.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boca import BocaAutomaton, BocaRun, BocaState, BocaTransition
from .csa import CsaAutomaton, CsaRun, CsaState, check_csa
from .errors import StructuralError


@dataclass(frozen=True)
class PackingScheme:
    k: int
    n_bits: int

    def __post_init__(self):
        if self.k < 1 or self.n_bits < 1:
            raise ValueError("need k >= 1 and n_bits >= 1")

    @classmethod
    def for_bound(cls, k: int, bound: int) -> "PackingScheme":
        """Smallest slot width holding ``0..bound``."""
        return cls(k, max(1, bound.bit_length()))

    @property
    def per_counter_bound(self) -> int:
        return 2 ** self.n_bits - 1

    @property
    def packed_bound(self) -> int:
        return 2 ** (self.k * self.n_bits) - 1

    @property
    def width(self) -> int:
        return self.k * self.n_bits


def enc(x: int, i: int, scheme: PackingScheme) -> int:
    """``x`` shifted into slot ``i``."""
    if not 1 <= i <= scheme.k:
        raise ValueError(f"counter index {i} outside [1, {scheme.k}]")
    if not 0 <= x <= scheme.per_counter_bound:
        raise ValueError(f"value {x} outside [0, {scheme.per_counter_bound}]")
    return x << ((i - 1) * scheme.n_bits)


def pack(counters, scheme: PackingScheme) -> int:
    if len(counters) != scheme.k:
        raise StructuralError(f"expected {scheme.k} counters, got {len(counters)}")
    return sum(enc(c, i, scheme) for i, c in enumerate(counters, 1))


def unpack(c: int, scheme: PackingScheme) -> tuple[int, ...]:
    if not 0 <= c <= scheme.packed_bound:
        raise ValueError(f"packed value {c} outside [0, {scheme.packed_bound}]")
    mask = scheme.per_counter_bound
    return tuple((c >> ((i - 1) * scheme.n_bits)) & mask for i in range(1, scheme.k + 1))


def translate_state(s: CsaState, scheme: PackingScheme) -> BocaState:
    return BocaState(s.location, pack(s.counters, scheme))


def guard_window(eq: dict[int, int], scheme: PackingScheme) -> tuple[int, int]:
    """Interval of packed values whose slots ``j..k`` match ``eq``.

    ``j`` is the lowest tested counter; everything below it is free, which
    is exactly the width of one unit in slot ``j``.
    """
    if not eq:
        return 0, scheme.packed_bound
    j = min(eq)
    g1 = sum(enc(v, i, scheme) for i, v in eq.items())
    return g1, g1 + enc(1, j, scheme) - 1


def csa_to_boca(aut: CsaAutomaton, bound: int) -> tuple[BocaAutomaton, PackingScheme]:
    """Translate ``aut``, which the caller attests to be ``bound``-bounded.

    Slots are wide enough for ``bound`` and for every test value and
    increment in ``aut``.

    One BOCA transition per CSA transition, in the same order, so transition
    indices carry over between runs of the two automata.
    """
    check_csa(aut)
    # slots also fit constants of transitions that never fire within the bound
    widest = max([bound] + [v for t in aut.transitions for v in list(t.eq.values()) + list(t.inc)])
    scheme = PackingScheme.for_bound(aut.k, widest)
    out = []
    for t in aut.transitions:
        p = sum(enc(x, i, scheme) for i, x in enumerate(t.inc, 1) if i not in t.resets)
        p -= sum(enc(t.eq[i], i, scheme) for i in t.resets)
        g1, g2 = guard_window(t.eq, scheme)
        out.append(BocaTransition(t.source, t.target, p, g1, g2))
    boca = BocaAutomaton(aut.locations, scheme.packed_bound, tuple(out), aut.initial)
    return boca, scheme


def lift_run(run: BocaRun, scheme: PackingScheme) -> CsaRun:
    """Unpack every state of a BOCA run produced by :func:`csa_to_boca`."""
    return CsaRun(
        tuple(CsaState(s.location, unpack(s.value, scheme)) for s in run.states),
        run.transitions,
    )
