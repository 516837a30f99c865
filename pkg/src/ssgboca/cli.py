"""Command-line front end.

Exit status: 0 success, 1 property violation or disagreement, 2 usage or
validation error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import formats
from .boca import reach_boca, replay_boca_run
from .csa import check_csa, reach_csa, replay_run, validate_csa
from .csa2boca import csa_to_boca, lift_run, translate_state
from .dot import boca_to_dot, csa_to_dot
from .errors import BudgetExceeded, SsgBocaError
from .generate import gen_random
from .pipeline import BUDGET_ENV, run_pipeline
from .qbf import build_digit_table, eval_qbf, qbf_to_ssg
from .ssg import solve_ssg
from .ssg2csa import CounterLayout, build_full_automaton

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        return json.loads(text), text
    except json.JSONDecodeError:
        return None, text


def _load(path: str, kind: str | None = None):
    data, text = _read(path)
    if data is None:
        if kind in (None, "qbf"):
            return "qbf", formats.qbf_from_text(text)
        raise UsageError(f"{path} is not JSON")
    try:
        detected = formats.detect_kind(data)
    except SsgBocaError:
        detected = kind
    if kind is not None and detected != kind:
        raise UsageError(f"{path} holds a {detected} instance, expected {kind}")
    kind = kind or detected
    if kind is None:
        raise UsageError(f"cannot tell which kind of instance {path} holds")
    return kind, formats.LOADERS[kind](data)


def _load_as(path: str, kind: str):
    return _load(path, kind)[1]


def _emit(args, payload: dict, text: str | None = None) -> None:
    out = formats.dumps(payload) if args.format == "json" or text is None else text + "\n"
    if getattr(args, "output", None):
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    return int(os.environ.get(BUDGET_ENV, 50_000_000))


def cmd_solve_qbf(args) -> int:
    q = _load_as(args.file, "qbf")
    value = eval_qbf(q)
    _emit(args, {"value": value}, f"{'true' if value else 'false'}")
    return EXIT_OK


def cmd_solve_ssg(args) -> int:
    inst = _load_as(args.file, "ssg")
    sol = solve_ssg(inst, max_rounds=args.max_rounds)
    payload = {"winner": sol.winner}
    if sol.strategy is not None:
        payload["strategy"] = [dict(m) for m in sol.strategy.maps]
    _emit(args, payload, sol.winner)
    return EXIT_OK


def cmd_solve_csa(args) -> int:
    aut = _load_as(args.file, "csa")
    check_csa(aut)
    target = formats.parse_csa_target(args.target, aut.k)
    res = reach_csa(aut, target, args.bound, _budget(args))
    payload = {"reachable": res.reachable, "visited": res.visited}
    if res.bound_violation is not None:
        payload["bound_violation"] = formats.csa_state_to_json(res.bound_violation)
    if res.witness is not None:
        payload["witness_length"] = len(res.witness)
        if args.witness:
            payload["witness"] = formats.csa_run_to_json(res.witness)
    text = "reachable" if res.reachable else "unreachable"
    if res.witness is not None:
        text += f" (witness length {len(res.witness)})"
    if res.bound_violation is not None:
        text = f"bound violated at {res.bound_violation.location} {res.bound_violation.counters}"
    _emit(args, payload, text)
    return EXIT_VIOLATION if res.bound_violation is not None else EXIT_OK


def cmd_solve_boca(args) -> int:
    aut = _load_as(args.file, "boca")
    target = formats.parse_boca_target(args.target)
    res = reach_boca(aut, target, _budget(args))
    payload = {"reachable": res.reachable, "visited": res.visited}
    text = "reachable" if res.reachable else "unreachable"
    if res.witness is not None:
        payload["witness_length"] = len(res.witness)
        text += f" (witness length {len(res.witness)})"
        if args.witness:
            payload["witness"] = formats.boca_run_to_json(res.witness)
            text += "\n" + "\n".join(f"  {s.location}:{s.value}" for s in res.witness.states)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_reduce(args) -> int:
    if args.reduction == "qbf-to-ssg":
        q = _load_as(args.file, "qbf")
        inst = qbf_to_ssg(q)
        _emit(args, formats.ssg_to_json(inst))
        if args.meta:
            table = build_digit_table(q)
            Path(args.meta).write_text(formats.dumps({"rows": table.rows(), "n": inst.n}))
        return EXIT_OK
    if args.reduction == "ssg-to-csa":
        inst = _load_as(args.file, "ssg")
        aut, target, bound = build_full_automaton(inst)
        meta = {
            "n": inst.n,
            "k": aut.k,
            "layout": CounterLayout(inst.n).names(),
            "target": formats.csa_state_to_json(target),
            "analytic_bound": bound,
        }
        return _emit_with_meta(args, formats.csa_to_json(aut), meta)
    aut = _load_as(args.file, "csa")
    if args.bound is None:
        raise UsageError("csa-to-boca needs --bound")
    boca, scheme = csa_to_boca(aut, args.bound)
    meta = {"n_bits": scheme.n_bits, "k": scheme.k, "packed_bound": scheme.packed_bound, "target": None}
    if args.target:
        t = translate_state(formats.parse_csa_target(args.target, aut.k), scheme)
        meta["target"] = {"location": t.location, "value": t.value}
    return _emit_with_meta(args, formats.boca_to_json(boca), meta)


def _emit_with_meta(args, automaton: dict, meta: dict) -> int:
    if args.meta:
        _emit(args, automaton)
        Path(args.meta).write_text(formats.dumps(meta))
    else:
        _emit(args, {"automaton": automaton, "meta": meta})
    return EXIT_OK


def cmd_pipeline(args) -> int:
    kwargs = {"state_budget": _budget(args)}
    if args.qbf:
        source = _load_as(args.qbf, "qbf")
    elif args.ssg:
        source = _load_as(args.ssg, "ssg")
    else:
        source = _load_as(args.csa, "csa")
        if args.target is None or args.bound is None:
            raise UsageError("pipeline --csa needs --target and --bound")
        check_csa(source)
        kwargs["target"] = formats.parse_csa_target(args.target, source.k)
        kwargs["bound"] = args.bound
    report = run_pipeline(source, **kwargs)
    _emit(args, report.to_json(), report.to_text())
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_validate(args) -> int:
    kind, obj = _load(args.file, args.kind)
    problems = [str(v) for v in validate_csa(obj)] if kind == "csa" else []
    payload = {"kind": kind, "valid": not problems, "violations": problems}
    text = f"{kind}: ok" if not problems else "\n".join(f"{kind}: {p}" for p in problems)
    _emit(args, payload, text)
    return EXIT_OK if not problems else EXIT_USAGE


def cmd_witness(args) -> int:
    aut = _load_as(args.automaton, "csa") if not args.boca else _load_as(args.automaton, "boca")
    data, _ = _read(args.run)
    if data is None:
        raise UsageError(f"{args.run} is not JSON")
    packed = bool(data.get("states")) and "value" in data["states"][0]
    payload = {}
    if args.boca:
        bad = replay_boca_run(aut, formats.boca_run_from_json(data))
        payload["replay"] = bad
    elif packed:
        if args.bound is None:
            raise UsageError("lifting a one-counter run needs --bound")
        boca, scheme = csa_to_boca(aut, args.bound)
        run = formats.boca_run_from_json(data)
        payload["replay"] = replay_boca_run(boca, run)
        if payload["replay"] is None:
            lifted = lift_run(run, scheme)
            payload["lifted_replay"] = replay_run(aut, lifted)
            payload["lifted"] = formats.csa_run_to_json(lifted)
    else:
        payload["replay"] = replay_run(aut, formats.csa_run_from_json(data))
    ok = payload["replay"] is None and payload.get("lifted_replay") is None
    payload["valid"] = ok
    text = "valid" if ok else f"invalid (replay={payload['replay']}, lifted={payload.get('lifted_replay')})"
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_export_dot(args) -> int:
    kind, obj = _load(args.file, args.kind)
    if kind == "csa":
        text = csa_to_dot(obj, omit_zero_tests=args.omit_zero_tests)
    elif kind == "boca":
        text = boca_to_dot(obj)
    elif kind == "ssg":
        text = csa_to_dot(build_full_automaton(obj)[0], omit_zero_tests=args.omit_zero_tests)
    else:
        raise UsageError("export-dot needs an ssg, csa or boca file")
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_gen(args) -> int:
    params = {
        "ssg": {"n": args.n, "max": args.max},
        "qbf": {"vars": args.vars, "clauses": args.clauses},
        "csa": {"locations": args.locations, "k": args.k, "transitions": args.transitions},
        "boca": {"locations": args.locations, "bound": args.bound, "transitions": args.transitions},
    }[args.kind]
    params = {k: v for k, v in params.items() if v is not None}
    try:
        obj = gen_random(args.kind, args.seed, **params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, formats.to_json(obj))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=None,
                        help="output format (default: text, json for gen)")
    common.add_argument("--budget", type=int, default=None,
                        help=f"visited-state cap for searches (env {BUDGET_ENV})")
    common.add_argument("-o", "--output", default=None, help="write the result here instead of stdout")

    parser = argparse.ArgumentParser(prog="ssgboca", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-qbf", parents=[common], help="evaluate a quantified 3-CNF formula")
    p.add_argument("file")
    p.set_defaults(func=cmd_solve_qbf)

    p = sub.add_parser("solve-ssg", parents=[common], help="solve a subset-sum game by minimax")
    p.add_argument("file")
    p.add_argument("--max-rounds", type=int, default=20)
    p.set_defaults(func=cmd_solve_ssg)

    p = sub.add_parser("solve-csa", parents=[common], help="reachability in a counter-stack automaton")
    p.add_argument("file")
    p.add_argument("--target", required=True, help="loc or loc:c1,...,ck")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=cmd_solve_csa)

    p = sub.add_parser("solve-boca", parents=[common], help="reachability in a one-counter automaton")
    p.add_argument("file")
    p.add_argument("--target", required=True, help="loc:value")
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=cmd_solve_boca)

    p = sub.add_parser("reduce", parents=[common], help="apply one reduction")
    p.add_argument("reduction", choices=("qbf-to-ssg", "ssg-to-csa", "csa-to-boca"))
    p.add_argument("file")
    p.add_argument("--bound", type=int)
    p.add_argument("--target", help="csa-to-boca: CSA target to translate")
    p.add_argument("--meta", help="write the metadata sidecar here")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("pipeline", parents=[common], help="run the whole chain with cross-checks")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--qbf")
    src.add_argument("--ssg")
    src.add_argument("--csa")
    p.add_argument("--target")
    p.add_argument("--bound", type=int)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("validate", parents=[common], help="check an instance or automaton")
    p.add_argument("file")
    p.add_argument("--kind", choices=("qbf", "ssg", "csa", "boca"))
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("witness", parents=[common], help="replay a run, lifting one-counter runs")
    p.add_argument("automaton")
    p.add_argument("run")
    p.add_argument("--boca", action="store_true", help="the automaton is a one-counter automaton")
    p.add_argument("--bound", type=int, help="packing bound used to lift a one-counter run")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("export-dot", parents=[common], help="Graphviz rendering of an automaton")
    p.add_argument("file")
    p.add_argument("--kind", choices=("ssg", "csa", "boca"))
    p.add_argument("--omit-zero-tests", action="store_true")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("gen", parents=[common], help="seeded random instance")
    p.add_argument("kind", choices=("ssg", "qbf", "csa", "boca"))
    p.add_argument("--seed", type=int, required=True)
    for name in ("n", "max", "vars", "clauses", "locations", "k", "transitions", "bound"):
        p.add_argument(f"--{name}", type=int)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, SsgBocaError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
