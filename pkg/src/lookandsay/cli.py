"""Command-line entry point; every capability is a subcommand.

Exit codes: 0 on success (score/probe additionally require zero
evaluation errors), 1 on a domain error (printed as `ErrorName: message`
on stderr), 2 on a usage error.  Identical argument vectors produce
byte-identical stdout; nothing here depends on the clock or on hidden
state.  The environment variable LNS_BUDGET overrides the default term
length budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import audioactive, core, datagen, evaluate
from ._version import __version__
from .errors import LnsError

BUDGET_ENV = "LNS_BUDGET"


def _default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return core.DEFAULT_LENGTH_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise LnsError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise LnsError(f"{BUDGET_ENV} must be positive, got {value}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise LnsError(f"cannot write {path}: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    sys.stdout.write(text)
    if out:
        _write_text(out, text)


# --- subcommand handlers ---------------------------------------------------


def _cmd_say(args: argparse.Namespace) -> int:
    print(core.say_n(args.term, args.steps, args.budget))
    return 0


def _cmd_reverse(args: argparse.Namespace) -> int:
    print(core.unsay(args.term))
    return 0


def _cmd_prefix(args: argparse.Namespace) -> int:
    for term in core.ls_prefix(args.count, args.seed_term, args.budget):
        print(term)
    return 0


def _lengths_rows(series: list[int]) -> list[tuple[int, int, float | None]]:
    rows: list[tuple[int, int, float | None]] = []
    prev: int | None = None
    for step, length in enumerate(series):
        rows.append((step, length, length / prev if prev else None))
        prev = length
    return rows


def _cmd_lengths(args: argparse.Namespace) -> int:
    series = core.length_series(args.seed_term, args.steps)
    rows = _lengths_rows(series)
    if args.format == "json":
        payload = [
            {"step": s, "length": l, "ratio": r} for s, l, r in rows
        ]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        sep = "\t" if args.format == "tsv" else "  "
        width = len(str(series[-1]))
        lines = [sep.join(("step", "length", "ratio"))]
        for s, l, r in rows:
            ratio = "-" if r is None else f"{r:.6f}"
            if args.format == "tsv":
                lines.append(f"{s}\t{l}\t{ratio}")
            else:
                lines.append(f"{s:>4}  {l:>{width}}  {ratio}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if args.figure:
        from . import plots

        plots.growth_figure(series, args.figure)
    return 0


def _closure_from_args(args: argparse.Namespace):
    return audioactive.build_closure(
        args.seed_term, t_check=args.t_check, entry_step=args.entry_step
    )


def _cmd_constant(args: argparse.Namespace) -> int:
    table, matrix = _closure_from_args(args)
    result = audioactive.growth_constant(
        matrix, table.atom_lengths(), tol=args.tol, max_iter=args.max_iter
    )
    if args.format == "json":
        text = (
            json.dumps(
                {
                    "growth_constant": result.value,
                    "iterations": result.iterations,
                    "atoms": len(table.atoms),
                },
                indent=2,
            )
            + "\n"
        )
    else:
        text = (
            f"growth_constant  {result.value:.10f}\n"
            f"iterations       {result.iterations}\n"
            f"atoms            {len(table.atoms)}\n"
        )
    _emit(text, args.out)
    return 0


def _cmd_atoms(args: argparse.Namespace) -> int:
    table, matrix = _closure_from_args(args)
    atoms_path, matrix_path = audioactive.export_atoms(table, matrix, args.out)
    print(f"atoms   {len(table.atoms)}  -> {atoms_path}")
    print(f"matrix  {len(matrix.m)}x{len(matrix.m)}  -> {matrix_path}")
    return 0


def _spec_from_args(args: argparse.Namespace) -> datagen.DatasetSpec:
    if args.spec:
        try:
            data = json.loads(Path(args.spec).read_text(encoding="utf-8"))
        except OSError as exc:
            raise LnsError(f"cannot read spec {args.spec}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise LnsError(f"spec {args.spec} is not valid JSON: {exc}") from exc
        return datagen.DatasetSpec.from_dict(data)
    try:
        alphabet = tuple(int(c) for c in args.alphabet)
    except ValueError:
        raise LnsError(f"alphabet must be digits, got {args.alphabet!r}") from None
    return datagen.DatasetSpec(
        alphabet=alphabet,
        min_len=args.min_len,
        max_len=args.max_len,
        max_run=args.max_run,
        train_size=args.train,
        test_size=args.test,
        seed=args.seed,
        direction=args.direction,
        format=args.data_format,
    )


def _cmd_gen_data(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    manifest = datagen.generate_dataset(spec, args.out)
    for name in (datagen.TRAIN_FILE, datagen.TEST_FILE):
        fd = manifest.files[name]
        print(f"wrote {name}  lines={fd.lines}  sha256={fd.sha256}")
    print(f"manifest {Path(args.out) / datagen.MANIFEST_FILE}")
    return 0


def _cmd_check_data(args: argparse.Namespace) -> int:
    report = datagen.check_dataset(args.dir)
    if report.ok:
        print(f"ok: {report.pairs_checked} pairs verified")
        return 0
    for problem in report.problems:
        print(problem)
    print(f"FAILED: {len(report.problems)} problem(s)")
    return 1


def _cmd_score(args: argparse.Namespace) -> int:
    triples = evaluate.load_eval_inputs(args.gold, args.pred)
    report = evaluate.score(triples, max_diagnostics=args.max_diagnostics)
    sys.stdout.write(evaluate.render_report(report, args.format))
    if args.out:
        _write_text(args.out, evaluate.render_report(report, "structured"))
    if args.figure:
        from . import plots

        plots.score_figure(report, args.figure)
    return 0 if report.errors == 0 else 1


def _read_probe_predictions(path: str, n: int, seed_term: str, budget: int) -> list[str]:
    lines = evaluate._read_lines(path)
    if lines and "\t" in lines[0]:
        by_source: dict[str, str] = {}
        for raw in lines:
            left, _, right = raw.partition("\t")
            by_source[evaluate._normalize(left)] = evaluate._normalize(right)
        inputs = core.ls_prefix(n, seed_term, budget)
        missing = [t for t in inputs if t not in by_source]
        if missing:
            raise LnsError(f"no prediction for orbit term {missing[0]!r}")
        return [by_source[t] for t in inputs]
    return lines


def _cmd_probe(args: argparse.Namespace) -> int:
    predictions = _read_probe_predictions(
        args.pred, args.n, args.seed_term, args.budget
    )
    report = evaluate.probe(predictions, args.n, args.seed_term)
    sys.stdout.write(evaluate.render_report(report, args.format))
    if args.out:
        _write_text(args.out, evaluate.render_report(report, "structured"))
    if args.figure:
        from . import plots

        plots.probe_figure(report, args.figure)
    return 0 if report.first_failure_step is None else 1


# --- parser ----------------------------------------------------------------


def build_parser(budget_default: int) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lns",
        description="Look-and-Say toolkit: rewrite steps, decay analysis, "
        "dataset generation, and prediction scoring.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def budget_flag(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--budget",
            type=_positive_int,
            default=budget_default,
            help="term length budget in digits (env LNS_BUDGET, "
            f"default {core.DEFAULT_LENGTH_BUDGET})",
        )

    p = sub.add_parser("say", help="apply the rewrite step to a term")
    p.add_argument("term")
    p.add_argument("--steps", type=_nonneg_int, default=1, help="default 1")
    budget_flag(p)
    p.set_defaults(func=_cmd_say)

    p = sub.add_parser("reverse", help="apply the inverse reading to a term")
    p.add_argument("term")
    p.set_defaults(func=_cmd_reverse)

    p = sub.add_parser("prefix", help="print the first N orbit terms")
    p.add_argument("count", type=_positive_int)
    p.add_argument("--seed-term", default="1")
    budget_flag(p)
    p.set_defaults(func=_cmd_prefix)

    p = sub.add_parser("lengths", help="step/length/ratio table for an orbit")
    p.add_argument("--steps", type=_nonneg_int, required=True)
    p.add_argument("--seed-term", default="1")
    p.add_argument("--format", choices=("plain", "tsv", "json"), default="plain")
    p.add_argument("--out", help="also write the table to this file")
    p.add_argument("--figure", help="write a growth figure (PNG) to this path")
    p.set_defaults(func=_cmd_lengths)

    def closure_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed-term", default="1")
        p.add_argument(
            "--t-check", type=_positive_int, default=audioactive.DEFAULT_T_CHECK
        )
        p.add_argument(
            "--entry-step",
            type=_nonneg_int,
            default=audioactive.DEFAULT_ENTRY_STEP,
        )

    p = sub.add_parser("constant", help="per-step growth factor of an orbit")
    closure_flags(p)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=_positive_int, default=10_000)
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.add_argument("--out", help="also write the result to this file")
    p.set_defaults(func=_cmd_constant)

    p = sub.add_parser("atoms", help="export the atom table and decay matrix")
    closure_flags(p)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_atoms)

    p = sub.add_parser("gen-data", help="generate a train/test dataset")
    p.add_argument("--spec", help="JSON file holding a full dataset spec")
    p.add_argument("--alphabet", default="123")
    p.add_argument("--min-len", type=_positive_int, default=1)
    p.add_argument("--max-len", type=_positive_int, default=15)
    p.add_argument("--max-run", type=_positive_int, default=3)
    p.add_argument("--train", type=_nonneg_int, default=2_000_000)
    p.add_argument("--test", type=_nonneg_int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--direction",
        choices=(datagen.FORWARD, datagen.REVERSED),
        default=datagen.FORWARD,
    )
    p.add_argument(
        "--data-format",
        choices=(datagen.RAW_TSV, datagen.SPACED_TSV),
        default=datagen.RAW_TSV,
    )
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_gen_data)

    p = sub.add_parser("check-data", help="re-verify a generated dataset")
    p.add_argument("dir")
    p.set_defaults(func=_cmd_check_data)

    p = sub.add_parser("score", help="score a prediction file against gold")
    p.add_argument("gold")
    p.add_argument("pred")
    p.add_argument(
        "--format", choices=("plain", "color", "structured"), default="plain"
    )
    p.add_argument(
        "--max-diagnostics",
        type=_nonneg_int,
        default=evaluate.DEFAULT_MAX_DIAGNOSTICS,
    )
    p.add_argument("--out", help="write the structured report to this file")
    p.add_argument("--figure", help="write an error-breakdown figure (PNG)")
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("probe", help="score predictions on the true orbit")
    p.add_argument("pred")
    p.add_argument("--n", type=_positive_int, required=True, help="probe steps")
    p.add_argument("--seed-term", default="1")
    p.add_argument(
        "--format", choices=("plain", "color", "structured"), default="plain"
    )
    p.add_argument("--out", help="write the structured report to this file")
    p.add_argument("--figure", help="write a per-step verdict figure (PNG)")
    budget_flag(p)
    p.set_defaults(func=_cmd_probe)

    return parser


def run(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser(_default_budget())
    except LnsError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except LnsError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))
