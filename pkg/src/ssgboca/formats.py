"""JSON (and one small text) format for every object the CLI reads or writes.

``to_json`` / ``*_from_json`` convert between objects and plain JSON values;
``dumps`` produces the canonical text form (sorted keys, two-space indent,
trailing newline) so that ``dumps(parse(text)) == text`` on canonical input.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .boca import BocaAutomaton, BocaRun, BocaState, BocaTransition
from .csa import CsaAutomaton, CsaRun, CsaState, CsaTransition
from .errors import StructuralError, ValidationError
from .qbf import EXISTS, FORALL, Literal, Qbf3Cnf
from .ssg import SsgInstance


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def digest(obj: Any) -> str:
    """Short SHA-256 of the canonical JSON form."""
    return hashlib.sha256(dumps(obj).encode()).hexdigest()[:16]


def _require(data: Any, keys: tuple[str, ...], what: str) -> None:
    if not isinstance(data, dict):
        raise StructuralError(f"{what}: expected a JSON object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise StructuralError(f"{what}: missing keys {missing}")


def _int(x: Any, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise StructuralError(f"{what}: expected an integer, got {x!r}")
    return x


# -- subset-sum games ------------------------------------------------------

def ssg_to_json(inst: SsgInstance) -> dict:
    return {"rounds": [list(r) for r in inst.rounds], "target": inst.target}


def ssg_from_json(data: Any) -> SsgInstance:
    _require(data, ("rounds", "target"), "SSG")
    rounds = []
    for r in data["rounds"]:
        if not isinstance(r, list):
            raise StructuralError("SSG: every round must be a list [A, B, E, F]")
        rounds.append(tuple(_int(x, "SSG number") for x in r))
    return SsgInstance(tuple(rounds), _int(data["target"], "SSG target"))


# -- quantified formulas ---------------------------------------------------

def qbf_to_json(q: Qbf3Cnf) -> dict:
    return {
        "prefix": [[v, quant] for v, quant in q.prefix],
        "clauses": [[[l.var, l.positive] for l in c] for c in q.clauses],
    }


def qbf_from_json(data: Any) -> Qbf3Cnf:
    _require(data, ("prefix", "clauses"), "QBF")
    prefix = tuple((str(v), str(quant)) for v, quant in data["prefix"])
    clauses = []
    for c in data["clauses"]:
        lits = []
        for var, positive in c:
            if not isinstance(positive, bool):
                raise StructuralError(f"QBF: literal sign must be true/false, got {positive!r}")
            lits.append(Literal(str(var), positive))
        clauses.append(tuple(lits))
    return Qbf3Cnf(prefix, tuple(clauses))


def qbf_from_text(text: str) -> Qbf3Cnf:
    """Parse a QDIMACS-style file restricted to 3-literal clauses.

    ``c`` lines are comments, ``p cnf <vars> <clauses>`` is the header,
    ``a``/``e`` lines quantify variables and every other line is a clause
    terminated by ``0``.  Variable ``7`` is named ``x7``; variables that are
    never quantified become existential and are placed outermost.
    """
    prefix: list[tuple[str, str]] = []
    clauses = []
    num_vars = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if len(fields) != 4 or fields[1] != "cnf":
                raise StructuralError(f"line {lineno}: malformed header")
            num_vars = int(fields[2])
            continue
        if fields[-1] != "0":
            raise StructuralError(f"line {lineno}: missing terminating 0")
        nums = [int(x) for x in fields[1:-1]] if fields[0] in ("a", "e") else [int(x) for x in fields[:-1]]
        if fields[0] in ("a", "e"):
            quant = FORALL if fields[0] == "a" else EXISTS
            prefix.extend((f"x{v}", quant) for v in nums)
        else:
            if len(nums) != 3:
                raise ValidationError(f"line {lineno}: clause has {len(nums)} literals, expected 3")
            clauses.append(tuple(Literal(f"x{abs(v)}", v > 0) for v in nums))
    if num_vars is None:
        raise StructuralError("missing 'p cnf' header")
    quantified = {v for v, _ in prefix}
    free = [(f"x{v}", EXISTS) for v in range(1, num_vars + 1) if f"x{v}" not in quantified]
    return Qbf3Cnf(tuple(free + prefix), tuple(clauses))


# -- counter-stack automata ------------------------------------------------

def csa_to_json(aut: CsaAutomaton) -> dict:
    return {
        "locations": list(aut.locations),
        "k": aut.k,
        "initial": aut.initial,
        "transitions": [
            {
                "from": t.source,
                "to": t.target,
                "eq": {str(i): v for i, v in t.eq.items()},
                "inc": list(t.inc),
                "resets": sorted(t.resets),
            }
            for t in aut.transitions
        ],
    }


def csa_from_json(data: Any) -> CsaAutomaton:
    _require(data, ("locations", "k", "initial", "transitions"), "CSA")
    k = _int(data["k"], "CSA k")
    ts = []
    for idx, t in enumerate(data["transitions"]):
        _require(t, ("from", "to"), f"CSA transition {idx}")
        eq = {int(i): _int(v, "CSA test value") for i, v in t.get("eq", {}).items()}
        inc = t.get("inc", [0] * k)
        ts.append(CsaTransition(t["from"], t["to"], eq, tuple(_int(x, "CSA increment") for x in inc),
                                frozenset(_int(r, "CSA reset") for r in t.get("resets", []))))
    return CsaAutomaton(tuple(data["locations"]), k, tuple(ts), data["initial"])


def csa_state_to_json(s: CsaState) -> dict:
    return {"location": s.location, "counters": list(s.counters)}


def csa_state_from_json(data: Any) -> CsaState:
    _require(data, ("location", "counters"), "CSA state")
    return CsaState(data["location"], tuple(_int(c, "counter") for c in data["counters"]))


def parse_csa_target(text: str, k: int) -> CsaState:
    """``"loc:1,0,3"`` (or ``"loc"`` for all-zero counters)."""
    loc, _, rest = text.rpartition(":") if ":" in text else (text, "", "")
    if not rest:
        return CsaState(loc, (0,) * k)
    counters = tuple(int(x) for x in rest.split(","))
    if len(counters) != k:
        raise StructuralError(f"target has {len(counters)} counters, expected {k}")
    return CsaState(loc, counters)


def csa_run_to_json(run: CsaRun) -> dict:
    return {"states": [csa_state_to_json(s) for s in run.states], "transitions": list(run.transitions)}


def csa_run_from_json(data: Any) -> CsaRun:
    _require(data, ("states", "transitions"), "CSA run")
    return CsaRun(tuple(csa_state_from_json(s) for s in data["states"]),
                  tuple(_int(t, "transition index") for t in data["transitions"]))


# -- bounded one-counter automata ------------------------------------------

def boca_to_json(aut: BocaAutomaton) -> dict:
    return {
        "locations": list(aut.locations),
        "bound": aut.bound,
        "initial": aut.initial,
        "transitions": [
            {"from": t.source, "to": t.target, "p": t.p, "g1": t.g1, "g2": t.g2}
            for t in aut.transitions
        ],
    }


def boca_from_json(data: Any) -> BocaAutomaton:
    _require(data, ("locations", "bound", "initial", "transitions"), "BOCA")
    bound = _int(data["bound"], "BOCA bound")
    ts = []
    for idx, t in enumerate(data["transitions"]):
        _require(t, ("from", "to", "p"), f"BOCA transition {idx}")
        ts.append(BocaTransition(t["from"], t["to"], _int(t["p"], "p"),
                                 _int(t.get("g1", 0), "g1"), _int(t.get("g2", bound), "g2")))
    return BocaAutomaton(tuple(data["locations"]), bound, tuple(ts), data["initial"])


def parse_boca_target(text: str) -> BocaState:
    """``"loc:value"``."""
    loc, sep, value = text.rpartition(":")
    if not sep:
        raise StructuralError(f"target {text!r} must look like location:value")
    return BocaState(loc, int(value))


def boca_run_to_json(run: BocaRun) -> dict:
    return {
        "states": [{"location": s.location, "value": s.value} for s in run.states],
        "transitions": list(run.transitions),
    }


def boca_run_from_json(data: Any) -> BocaRun:
    _require(data, ("states", "transitions"), "BOCA run")
    states = []
    for s in data["states"]:
        _require(s, ("location", "value"), "BOCA state")
        states.append(BocaState(s["location"], _int(s["value"], "counter value")))
    return BocaRun(tuple(states), tuple(_int(t, "transition index") for t in data["transitions"]))


def detect_kind(data: Any) -> str:
    """Guess which object a parsed JSON document describes."""
    if isinstance(data, dict):
        if "rounds" in data:
            return "ssg"
        if "prefix" in data:
            return "qbf"
        if "k" in data and "transitions" in data:
            return "csa"
        if "bound" in data and "transitions" in data:
            return "boca"
    raise StructuralError("cannot tell which kind of instance this is")


LOADERS = {
    "ssg": ssg_from_json,
    "qbf": qbf_from_json,
    "csa": csa_from_json,
    "boca": boca_from_json,
}

SAVERS = {
    SsgInstance: ssg_to_json,
    Qbf3Cnf: qbf_to_json,
    CsaAutomaton: csa_to_json,
    BocaAutomaton: boca_to_json,
}


def to_json(obj: Any) -> dict:
    try:
        return SAVERS[type(obj)](obj)
    except KeyError:
        raise TypeError(f"no JSON form for {type(obj).__name__}") from None
