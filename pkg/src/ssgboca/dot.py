"""Graphviz export.

CSA edges are labelled ``c7 = 1, c8 = 0`` / ``c1 + 1, c9 + 3`` / ``R(c7, c8)``;
BOCA edges ``+p [g1, g2]``.
"""

from __future__ import annotations

import json

from .boca import BocaAutomaton
from .csa import CsaAutomaton, CsaTransition


def _q(name: str) -> str:
    return json.dumps(name)


def csa_label(t: CsaTransition, omit_zero_tests: bool = False) -> str:
    parts = []
    tests = [f"c{i} = {v}" for i, v in t.eq.items() if not (omit_zero_tests and v == 0)]
    if tests:
        parts.append(", ".join(tests))
    incs = [f"c{i} + {d}" for i, d in enumerate(t.inc, 1) if d]
    if incs:
        parts.append(", ".join(incs))
    if t.resets:
        parts.append("R(" + ", ".join(f"c{i}" for i in sorted(t.resets)) + ")")
    return "\n".join(parts)


def _header(name: str, locations, initial: str, accepting=()) -> list[str]:
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for loc in locations:
        shape = "doublecircle" if loc in accepting else "circle"
        lines.append(f"  {_q(loc)} [shape={shape}];")
    lines.append(f"  __start -> {_q(initial)};")
    return lines


def csa_to_dot(aut: CsaAutomaton, omit_zero_tests: bool = False, accepting=("t",)) -> str:
    lines = _header("csa", aut.locations, aut.initial, accepting)
    for t in aut.transitions:
        label = csa_label(t, omit_zero_tests)
        lines.append(f"  {_q(t.source)} -> {_q(t.target)} [label={_q(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def boca_to_dot(aut: BocaAutomaton, accepting=()) -> str:
    lines = _header("boca", aut.locations, aut.initial, accepting)
    for t in aut.transitions:
        label = f"{t.p:+d} [{t.g1}, {t.g2}]"
        lines.append(f"  {_q(t.source)} -> {_q(t.target)} [label={_q(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
