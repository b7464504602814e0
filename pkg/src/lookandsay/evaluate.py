"""Exact-match scoring of prediction files and the true-sequence probe.

The headline metric is whole-string equality against the gold target.
Token accuracy, first-divergence indices, and per-length breakdowns are
auxiliary diagnostics: they make failures inspectable but never soften
the exact-match verdict.  Predictions may contain arbitrary characters;
garbage scores as wrong, it does not crash the harness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .core import ls_prefix
from .errors import (
    DuplicatePrediction,
    EmptyEvaluation,
    FormatError,
    LineCountMismatch,
    MissingPrediction,
)

ANSI_RED = "\x1b[31m"
ANSI_RESET = "\x1b[0m"
DEFAULT_MAX_DIAGNOSTICS = 100


@dataclass(frozen=True)
class ErrorRecord:
    source: str
    gold: str
    predicted: str
    first_divergence: int | None
    length_delta: int


@dataclass
class EvalReport:
    total: int
    errors: int
    error_rate: float
    token_accuracy: float
    length_mismatches: int
    per_length: dict[int, tuple[int, int]]
    diagnostics: list[ErrorRecord]

    def to_dict(self) -> dict:
        return {
            "kind": "eval",
            "total": self.total,
            "errors": self.errors,
            "error_rate": self.error_rate,
            "token_accuracy": self.token_accuracy,
            "length_mismatches": self.length_mismatches,
            "per_length": {
                str(length): [t, e] for length, (t, e) in self.per_length.items()
            },
            "diagnostics": [
                {
                    "source": r.source,
                    "gold": r.gold,
                    "predicted": r.predicted,
                    "first_divergence": r.first_divergence,
                    "length_delta": r.length_delta,
                }
                for r in self.diagnostics
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EvalReport":
        return cls(
            total=data["total"],
            errors=data["errors"],
            error_rate=data["error_rate"],
            token_accuracy=data["token_accuracy"],
            length_mismatches=data["length_mismatches"],
            per_length={
                int(k): (v[0], v[1]) for k, v in data["per_length"].items()
            },
            diagnostics=[
                ErrorRecord(
                    d["source"],
                    d["gold"],
                    d["predicted"],
                    d["first_divergence"],
                    d["length_delta"],
                )
                for d in data["diagnostics"]
            ],
        )


@dataclass(frozen=True)
class ProbeTerm:
    step: int
    gold: str
    predicted: str
    ok: bool


@dataclass
class ProbeReport:
    terms: list[ProbeTerm]
    first_failure_step: int | None

    def to_dict(self) -> dict:
        return {
            "kind": "probe",
            "terms": [
                {"step": t.step, "gold": t.gold, "predicted": t.predicted, "ok": t.ok}
                for t in self.terms
            ],
            "first_failure_step": self.first_failure_step,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ProbeReport":
        return cls(
            terms=[
                ProbeTerm(t["step"], t["gold"], t["predicted"], t["ok"])
                for t in data["terms"]
            ],
            first_failure_step=data["first_failure_step"],
        )


def _normalize(s: str) -> str:
    # Strip separators and trailing whitespace, nothing else: grading
    # leniency would mask exactly the failures this harness exists to show.
    return s.rstrip().replace(" ", "")


def _read_lines(path: str | Path) -> list[str]:
    try:
        text = Path(path).read_text(encoding="utf-8", errors="replace")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    return text.splitlines()


def load_eval_inputs(
    gold_path: str | Path, pred_path: str | Path
) -> list[tuple[str, str, str]]:
    """Align a gold TSV with a prediction file into (source, gold, predicted).

    Gold lines are SOURCE<TAB>TARGET, raw or spaced.  Predictions are
    either one per line (aligned by line number) or SOURCE<TAB>PREDICTION
    (aligned by source; detected by a tab in the first line).
    """
    gold_rows: list[tuple[str, str]] = []
    for i, raw in enumerate(_read_lines(gold_path), 1):
        parts = raw.split("\t")
        if len(parts) != 2:
            raise FormatError(f"{gold_path}:{i}: expected SOURCE<TAB>TARGET")
        gold_rows.append((_normalize(parts[0]), _normalize(parts[1])))

    pred_lines = _read_lines(pred_path)
    if pred_lines and "\t" in pred_lines[0]:
        by_source: dict[str, str] = {}
        for i, raw in enumerate(pred_lines, 1):
            left, sep, right = raw.partition("\t")
            if not sep:
                raise FormatError(f"{pred_path}:{i}: expected SOURCE<TAB>PREDICTION")
            key = _normalize(left)
            if key in by_source:
                raise DuplicatePrediction(
                    f"{pred_path}:{i}: second prediction for source {key!r}"
                )
            by_source[key] = _normalize(right)
        triples = []
        for source, gold in gold_rows:
            if source not in by_source:
                raise MissingPrediction(f"no prediction for source {source!r}")
            triples.append((source, gold, by_source[source]))
        return triples

    if len(pred_lines) != len(gold_rows):
        raise LineCountMismatch(
            f"{len(gold_rows)} gold lines but {len(pred_lines)} prediction lines"
        )
    return [
        (source, gold, _normalize(pred))
        for (source, gold), pred in zip(gold_rows, pred_lines)
    ]


def _first_divergence(gold: str, predicted: str) -> int | None:
    limit = min(len(gold), len(predicted))
    for i in range(limit):
        if gold[i] != predicted[i]:
            return i
    if len(gold) != len(predicted):
        return limit
    return None


def score(
    triples: Iterable[tuple[str, str, str]],
    max_diagnostics: int = DEFAULT_MAX_DIAGNOSTICS,
) -> EvalReport:
    """Exact-match scoring of aligned (source, gold, predicted) triples."""
    triples = list(triples)
    if not triples:
        raise EmptyEvaluation("no examples to score")
    errors = 0
    matched = 0
    gold_digits = 0
    length_mismatches = 0
    per_length: dict[int, list[int]] = {}
    diagnostics: list[ErrorRecord] = []
    for source, gold, predicted in triples:
        bucket = per_length.setdefault(len(source), [0, 0])
        bucket[0] += 1
        gold_digits += len(gold)
        matched += sum(1 for a, b in zip(gold, predicted) if a == b)
        if len(gold) != len(predicted):
            length_mismatches += 1
        if gold != predicted:
            errors += 1
            bucket[1] += 1
            if len(diagnostics) < max_diagnostics:
                diagnostics.append(
                    ErrorRecord(
                        source,
                        gold,
                        predicted,
                        _first_divergence(gold, predicted),
                        len(predicted) - len(gold),
                    )
                )
    return EvalReport(
        total=len(triples),
        errors=errors,
        error_rate=errors / len(triples),
        token_accuracy=matched / gold_digits if gold_digits else 0.0,
        length_mismatches=length_mismatches,
        per_length={
            length: (t, e) for length, (t, e) in sorted(per_length.items())
        },
        diagnostics=diagnostics,
    )


def probe(
    predictions: Sequence[str], n: int, seed: str = "1"
) -> ProbeReport:
    """Score claimed rewrites of the true orbit of `seed`, term by term.

    predictions[i] is the model's rewrite of orbit term i; it is compared
    exactly against orbit term i+1.
    """
    if n < 1:
        raise ValueError("probe needs at least one step")
    predictions = list(predictions)
    if len(predictions) != n:
        raise LineCountMismatch(
            f"expected {n} predictions, got {len(predictions)}"
        )
    orbit = ls_prefix(n + 1, seed)
    terms: list[ProbeTerm] = []
    first_failure: int | None = None
    for i in range(n):
        predicted = _normalize(predictions[i])
        ok = predicted == orbit[i + 1]
        if not ok and first_failure is None:
            first_failure = i
        terms.append(ProbeTerm(i, orbit[i + 1], predicted, ok))
    return ProbeReport(terms=terms, first_failure_step=first_failure)


def _paint(predicted: str, divergence: int | None, color: bool) -> str:
    if not color or divergence is None:
        return predicted
    return predicted[:divergence] + ANSI_RED + predicted[divergence:] + ANSI_RESET


def _render_eval(report: EvalReport, color: bool) -> str:
    lines = [
        f"{report.errors} / {report.total} errors",
        f"error_rate         {report.error_rate:.6f}",
        f"token_accuracy     {report.token_accuracy:.6f}",
        f"length_mismatches  {report.length_mismatches}",
        "",
        "length  examples  errors",
    ]
    for length, (t, e) in report.per_length.items():
        lines.append(f"{length:<6}  {t:<8}  {e}")
    if report.diagnostics:
        lines.append("")
        lines.append(
            f"diagnostics ({len(report.diagnostics)} shown of {report.errors} errors)"
        )
        w_src = max(len(r.source) for r in report.diagnostics)
        w_gold = max(len(r.gold) for r in report.diagnostics)
        w_pred = max(len(r.predicted) for r in report.diagnostics)
        for r in report.diagnostics:
            shown = _paint(r.predicted, r.first_divergence, color)
            pad = " " * (w_pred - len(r.predicted))
            lines.append(
                f"{r.source:<{w_src}}  {r.gold:<{w_gold}}  {shown}{pad}  "
                f"div={r.first_divergence}  dlen={r.length_delta:+d}"
            )
    return "\n".join(lines) + "\n"


def _render_probe(report: ProbeReport, color: bool) -> str:
    if report.first_failure_step is None:
        verdict = "all steps correct"
    else:
        verdict = f"first failure at step {report.first_failure_step}"
    lines = [f"true-prefix probe: {len(report.terms)} steps, {verdict}", ""]
    w_gold = max(len(t.gold) for t in report.terms)
    for t in report.terms:
        mark = "ok  " if t.ok else "FAIL"
        shown = _paint(t.predicted, _first_divergence(t.gold, t.predicted), color)
        lines.append(f"{t.step:>4}  {mark}  {t.gold:<{w_gold}}  {shown}")
    return "\n".join(lines) + "\n"


def render_report(report: EvalReport | ProbeReport, mode: str = "plain") -> str:
    """Render a report as plain text, ANSI-highlighted text, or JSON."""
    if mode == "structured":
        return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    if mode not in ("plain", "color"):
        raise ValueError(f"unknown render mode {mode!r}")
    color = mode == "color"
    if isinstance(report, EvalReport):
        return _render_eval(report, color)
    if isinstance(report, ProbeReport):
        return _render_probe(report, color)
    raise TypeError(f"cannot render {type(report).__name__}")


def parse_report(text: str) -> EvalReport | ProbeReport:
    """Inverse of render_report's structured mode."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not a structured report: {exc}") from exc
    kind = data.get("kind")
    if kind == "eval":
        return EvalReport.from_dict(data)
    if kind == "probe":
        return ProbeReport.from_dict(data)
    raise FormatError(f"unknown report kind {kind!r}")
