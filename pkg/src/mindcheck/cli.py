"""Command-line front end.

Commands: eval (check a formula), trace (run an operation script), induce
(program to model), extract (model to priority graphs), check (P-consistency
and the plan/intention connection). Exit codes: 0 true/ok, 1 false or a
failed assertion/finding, 2 any error. Output is deterministic; --json
switches to a versioned machine-readable form.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional, Union

from . import checker, dynamics, formulas as fm, models as md
from . import pgraph as pg, plans as pl

SCHEMA = 1

_ENGINE_ERRORS = (
    fm.FormulaError, md.ModelError, pl.LibraryError, pg.GraphError,
    pg.ProgramError, checker.CheckError,
)


class CliError(Exception):
    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}" + (f": {detail}" if detail else ""))


@dataclass(frozen=True)
class AssertStep:
    formula: fm.Formula


@dataclass(frozen=True)
class FilterStep:
    pass


ScriptStep = Union[dynamics.MentalOp, AssertStep, FilterStep]


@dataclass
class Session:
    """Model under transformation plus the history of applied operations."""

    current: md.PracticalAgentModel
    lib: pl.PlanLibrary
    history: list[dynamics.MentalOp] = field(default_factory=list)

    def apply(self, op: dynamics.MentalOp) -> None:
        self.current = op.apply(self.current, self.lib)
        self.history.append(op)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except CliError as exc:
        _emit_error(args, exc.reason, exc.detail)
        return 2
    except pg.ProgramError as exc:
        _emit_error(args, exc.reason, exc.detail)
        return 2
    except _ENGINE_ERRORS as exc:
        _emit_error(args, _reason_of(exc), str(exc))
        return 2


def _reason_of(exc) -> str:
    return {
        fm.ParseError: "parse-error",
        fm.UnknownPlanError: "unknown-plan",
        fm.FormulaError: "formula-error",
        md.UnknownAtomError: "unknown-atom",
        md.ModelError: "model-error",
        pl.LibraryError: "library-error",
        pg.GraphError: "graph-error",
        checker.EmptyModelError: "empty-model",
        checker.UnknownPlanError: "unknown-plan",
        checker.CheckError: "check-error",
    }.get(type(exc), "error")


def _emit_error(args, reason: str, detail: str) -> None:
    if getattr(args, "json", False):
        doc = {"schema": SCHEMA, "error": {"reason": reason, "detail": detail}}
        print(json.dumps(doc, sort_keys=True), file=sys.stderr)
    else:
        line = f"error: {reason}" + (f": {detail}" if detail else "")
        print(line, file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mindcheck",
        description="reason about and revise finite BDI mental-state models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, model_source=True, library=True):
        if model_source:
            p.add_argument("--program", help="agent program file (JSON)")
            p.add_argument("--model", help="model file (JSON)")
        if library:
            p.add_argument("--library", help="plan library file (JSON)")
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")
        p.add_argument("--out", help="also write the resulting document here")

    p_eval = sub.add_parser("eval", help="evaluate a formula on a model")
    common(p_eval)
    p_eval.add_argument("--formula", required=True)
    p_eval.set_defaults(run=cmd_eval)

    p_trace = sub.add_parser("trace", help="run an operation script")
    common(p_trace)
    p_trace.add_argument("--script", required=True)
    p_trace.set_defaults(run=cmd_trace)

    p_induce = sub.add_parser("induce", help="build the model a program induces")
    common(p_induce, model_source=False)
    p_induce.add_argument("--program", required=True)
    p_induce.set_defaults(run=cmd_induce)

    p_extract = sub.add_parser("extract",
                               help="extract priority graphs from a model")
    common(p_extract, model_source=False, library=False)
    p_extract.add_argument("--model", required=True)
    p_extract.set_defaults(run=cmd_extract)

    p_check = sub.add_parser("check",
                             help="check P-consistency and plan/goal linkage")
    common(p_check)
    p_check.set_defaults(run=cmd_check)
    return parser


def _read_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError("file-error", f"{path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise CliError("file-error", f"{path}: {exc}") from exc


def _load_library(args) -> pl.PlanLibrary:
    if getattr(args, "library", None):
        return pl.load_library(_read_json(args.library))
    return pl.EMPTY_LIBRARY


def _load_model(args, lib: pl.PlanLibrary) -> md.PracticalAgentModel:
    has_program = getattr(args, "program", None)
    has_model = getattr(args, "model", None)
    if bool(has_program) == bool(has_model):
        raise CliError("usage-error", "give exactly one of --program/--model")
    if has_program:
        return pg.induce_program(pg.load_program(_read_json(args.program)), lib)
    return md.load_model(_read_json(args.model))


def _dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def _write_out(args, doc: dict) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(_dump_json(doc) + "\n")


def _sorted_worlds(m: md.AgentModel) -> list[int]:
    return sorted(m.worlds, key=lambda w: (m.world_bits(w), w))


# ---------------------------------------------------------------------------
# eval

def cmd_eval(args) -> int:
    lib = _load_library(args)
    m = _load_model(args, lib)
    try:
        f = fm.parse(args.formula)
    except fm.ParseError as exc:
        raise CliError("parse-error", str(exc)) from exc
    ext = checker.extension(m, lib, f)
    verdict = ext == m.worlds
    worlds = [
        {"id": w, "bits": m.world_bits(w), "holds": w in ext}
        for w in _sorted_worlds(m)
    ]
    doc = {
        "schema": SCHEMA, "command": "eval", "formula": args.formula,
        "atoms": list(m.atoms), "worlds": worlds, "global": verdict,
    }
    if args.json:
        print(_dump_json(doc))
    else:
        print(f"formula: {args.formula}")
        header = "".join(m.atoms)
        print(f" world  {header}  holds")
        for row in worlds:
            mark = "yes" if row["holds"] else "no"
            print(f" {row['id']:>5}  {row['bits']}  {mark}")
        print(f"global: {'true' if verdict else 'false'}")
    _write_out(args, doc)
    return 0 if verdict else 1


# ---------------------------------------------------------------------------
# trace

def parse_script(text: str) -> list[tuple[int, str, ScriptStep]]:
    """Parse script lines into steps, keeping line numbers and raw text."""
    steps: list[tuple[int, str, ScriptStep]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            steps.append((lineno, line, _parse_step(head, rest)))
        except fm.ParseError as exc:
            raise CliError("script-error", f"line {lineno}: {exc}") from exc
        except ValueError as exc:
            raise CliError("script-error", f"line {lineno}: {exc}") from exc
    return steps


def _parse_step(head: str, rest: str) -> ScriptStep:
    if head == "announce":
        return dynamics.MentalOp("announce", argument=_prop(rest))
    if head in ("upgrade", "contract"):
        target, _, text = rest.partition(" ")
        if target not in ("P", "D") or not text.strip():
            raise ValueError(f"{head} needs a target (P or D) and a formula")
        return dynamics.MentalOp(head, target=target, argument=_prop(text.strip()))
    if head == "update":
        if not rest or " " in rest:
            raise ValueError("update needs exactly one plan symbol")
        return dynamics.MentalOp("product_update", argument=rest)
    if head == "filter":
        if rest:
            raise ValueError("filter takes no argument")
        return FilterStep()
    if head == "assert":
        if not rest:
            raise ValueError("assert needs a formula")
        return AssertStep(fm.parse(rest))
    raise ValueError(f"unknown operation {head!r}")


def _prop(text: str) -> fm.Formula:
    f = fm.parse(text)
    if not fm.is_propositional(f):
        raise ValueError(f"argument must be propositional: {text}")
    return f


def _step_report(index: int, line: str, m: md.PracticalAgentModel,
                 lib: pl.PlanLibrary) -> dict:
    if m.worlds:
        failure = pl.check_p_consistency(m, lib, md.intentions_of(m))
        consistent: Optional[bool] = failure is None
        min_p = sorted(m.plausibility.min_set(m.worlds))
        min_d = sorted(m.desirability.min_set(m.worlds))
    else:
        consistent = None
        min_p = []
        min_d = []
    return {
        "index": index, "op": line, "worlds": len(m.worlds),
        "min_P": min_p, "min_D": min_d,
        "intentions": sorted(md.intentions_of(m)),
        "p_consistent": consistent,
    }


def _print_step(report: dict, m: md.PracticalAgentModel) -> None:
    def label(ws):
        return " ".join(f"{w}({m.world_bits(w)})" for w in ws) or "-"

    consistent = report["p_consistent"]
    flag = "n/a" if consistent is None else ("yes" if consistent else "no")
    print(f"step {report['index']}: {report['op']}")
    print(f"  worlds: {report['worlds']}"
          f"  min_P: {label(report['min_P'])}"
          f"  min_D: {label(report['min_D'])}"
          f"  I: {', '.join(report['intentions']) or '-'}"
          f"  p-consistent: {flag}")


def cmd_trace(args) -> int:
    lib = _load_library(args)
    m = _load_model(args, lib)
    try:
        with open(args.script, encoding="utf-8") as fh:
            steps = parse_script(fh.read())
    except OSError as exc:
        raise CliError("file-error", f"{args.script}: {exc.strerror}") from exc
    session = Session(m, lib)
    reports = []
    failed_assert: Optional[dict] = None
    for index, (lineno, line, step) in enumerate(steps, start=1):
        try:
            if isinstance(step, AssertStep):
                ok = checker.holds(session.current, lib, step.formula)
                report = {"index": index, "op": line, "holds": ok}
                reports.append(report)
                if not args.json:
                    print(f"step {index}: {line}")
                    print(f"  holds: {'yes' if ok else 'no'}")
                if not ok:
                    failed_assert = report
                    break
                continue
            if isinstance(step, FilterStep):
                session.current = dynamics.filter_intentions(session.current, lib)
            else:
                session.apply(step)
            report = _step_report(index, line, session.current, lib)
        except _ENGINE_ERRORS as exc:
            raise CliError(
                _reason_of(exc), f"step {index} (line {lineno}): {exc}"
            ) from exc
        reports.append(report)
        if not args.json:
            _print_step(report, session.current)
    final_doc = md.dump_model(session.current)
    if args.json:
        doc = {
            "schema": SCHEMA, "command": "trace", "steps": reports,
            "passed": failed_assert is None, "final_model": final_doc,
        }
        print(_dump_json(doc))
    if failed_assert is not None:
        print(f"assertion failed at step {failed_assert['index']}: "
              f"{failed_assert['op']}", file=sys.stderr)
    _write_out(args, final_doc)
    return 0 if failed_assert is None else 1


# ---------------------------------------------------------------------------
# induce / extract / check

def cmd_induce(args) -> int:
    lib = _load_library(args)
    ag = pg.load_program(_read_json(args.program))
    m = pg.induce_program(ag, lib)
    doc = md.dump_model(m)
    if args.json:
        print(_dump_json({"schema": SCHEMA, "command": "induce", "model": doc}))
    else:
        print(_dump_json(doc))
    _write_out(args, doc)
    return 0


def cmd_extract(args) -> int:
    m = md.load_model(_read_json(args.model))
    structure = pg.extract_structure(m)
    doc = {
        "plausibility": pg.dump_graph(structure.plausibility_graph),
        "desirability": pg.dump_graph(structure.desirability_graph),
    }
    if args.json:
        doc = {"schema": SCHEMA, "command": "extract", **doc}
    print(_dump_json(doc))
    _write_out(args, doc)
    return 0


def cmd_check(args) -> int:
    lib = _load_library(args)
    m = _load_model(args, lib)
    p_failure = pl.check_p_consistency(m, lib, md.intentions_of(m))
    prop1_failure = None
    if p_failure is None:
        prop1_failure = checker.check_proposition1(m, lib)
    ok = p_failure is None and prop1_failure is None
    if args.json:
        doc = {
            "schema": SCHEMA, "command": "check", "ok": ok,
            "p_consistency": _failure_doc(p_failure),
            "proposition1": _failure_doc(prop1_failure),
        }
        print(_dump_json(doc))
    else:
        print(f"p-consistency: {p_failure or 'ok'}")
        if p_failure is None:
            print(f"proposition-1: {prop1_failure or 'ok'}")
        else:
            print("proposition-1: skipped (model is not P-consistent)")
    return 0 if ok else 1


def _failure_doc(failure) -> Optional[dict]:
    if failure is None:
        return None
    return {"plan": failure.plan, "reason": failure.reason}


if __name__ == "__main__":
    raise SystemExit(main())
