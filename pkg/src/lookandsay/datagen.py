"""Deterministic regeneration of run-capped digit datasets.

Samples unique strings over a small digit alphabet (runs capped at 3 by
default), pairs each with its rewrite image in either direction, and
writes reproducible train/test TSV files plus a manifest carrying the
full recipe and per-file content digests.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from ._version import __version__
from .core import cap_runs, say
from .errors import FormatError, LnsError, UniverseExhausted

FORWARD = "forward"
REVERSED = "reversed"
RAW_TSV = "raw-tsv"
SPACED_TSV = "spaced-tsv"

TRAIN_FILE = "train.tsv"
TEST_FILE = "test.tsv"
MANIFEST_FILE = "manifest.json"


def count_strings(alphabet_size: int, length: int) -> int:
    """Number of digit strings of the given length: alphabet_size ** length."""
    if alphabet_size < 1:
        raise ValueError("alphabet_size must be >= 1")
    if length < 0:
        raise ValueError("length must be >= 0")
    return alphabet_size**length


def count_capped(alphabet_size: int, length: int, max_run: int) -> int:
    """Number of strings of the given length with no run longer than max_run.

    Linear recurrence over (current run length) states; exact in unbounded
    integers.
    """
    if alphabet_size < 1:
        raise ValueError("alphabet_size must be >= 1")
    if max_run < 1:
        raise ValueError("max_run must be >= 1")
    if length < 0:
        raise ValueError("length must be >= 0")
    if length == 0:
        return 1
    # ways[j] = strings whose final run is exactly j+1 digits long
    ways = [alphabet_size] + [0] * (max_run - 1)
    for _ in range(length - 1):
        total = sum(ways)
        nxt = [0] * max_run
        nxt[0] = (alphabet_size - 1) * total
        for j in range(max_run - 1):
            nxt[j + 1] = ways[j]
        ways = nxt
    return sum(ways)


@dataclass(frozen=True)
class DatasetSpec:
    """Full recipe for one dataset; two equal specs generate identical bytes."""

    alphabet: tuple[int, ...] = (1, 2, 3)
    min_len: int = 1
    max_len: int = 15
    max_run: int = 3
    train_size: int = 2_000_000
    test_size: int = 10_000
    seed: int = 0
    direction: str = FORWARD
    format: str = RAW_TSV

    def validate(self) -> None:
        if not self.alphabet:
            raise ValueError("alphabet is empty")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet has repeated digits")
        for d in self.alphabet:
            if not 1 <= d <= 9:
                raise ValueError(f"alphabet digit out of range: {d}")
        if not 1 <= self.min_len <= self.max_len:
            raise ValueError("need 1 <= min_len <= max_len")
        if self.max_run < 1:
            raise ValueError("max_run must be >= 1")
        if self.train_size < 0 or self.test_size < 0:
            raise ValueError("sizes must be non-negative")
        if self.train_size + self.test_size < 1:
            raise ValueError("nothing to generate")
        if self.direction not in (FORWARD, REVERSED):
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.format not in (RAW_TSV, SPACED_TSV):
            raise ValueError(f"unknown format {self.format!r}")
        need = self.train_size + self.test_size
        if need > self.universe_size():
            raise UniverseExhausted(
                f"{need} unique strings requested but only "
                f"{self.universe_size()} capped strings exist in range"
            )

    def universe_size(self) -> int:
        a = len(self.alphabet)
        return sum(
            count_capped(a, length, self.max_run)
            for length in range(self.min_len, self.max_len + 1)
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["alphabet"] = list(self.alphabet)
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "DatasetSpec":
        known = {f for f in cls.__dataclass_fields__}
        stray = set(data) - known
        if stray:
            raise FormatError(f"unknown dataset spec fields: {sorted(stray)}")
        kwargs = dict(data)
        if "alphabet" in kwargs:
            kwargs["alphabet"] = tuple(int(d) for d in kwargs["alphabet"])
        return cls(**kwargs)


@dataclass(frozen=True)
class DatasetPair:
    source: str
    target: str


@dataclass(frozen=True)
class FileDigest:
    sha256: str
    lines: int


@dataclass
class Manifest:
    spec: DatasetSpec
    counts: dict[str, int]
    files: dict[str, FileDigest]
    generator_version: str = __version__

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "counts": dict(self.counts),
            "files": {
                name: {"sha256": fd.sha256, "lines": fd.lines}
                for name, fd in self.files.items()
            },
            "generator_version": self.generator_version,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Manifest":
        try:
            return cls(
                spec=DatasetSpec.from_dict(data["spec"]),
                counts={k: int(v) for k, v in data["counts"].items()},
                files={
                    name: FileDigest(entry["sha256"], int(entry["lines"]))
                    for name, entry in data["files"].items()
                },
                generator_version=data["generator_version"],
            )
        except (KeyError, TypeError) as exc:
            raise FormatError(f"manifest is missing fields: {exc}") from exc

    def write(self, path: str | Path) -> None:
        text = json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"
        Path(path).write_text(text, encoding="utf-8", newline="\n")

    @classmethod
    def load(cls, path: str | Path) -> "Manifest":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise FormatError(f"cannot read manifest {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise FormatError(f"manifest {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(data)


def sample_capped(spec: DatasetSpec) -> Iterator[str]:
    """Stream of train_size + test_size unique capped strings.

    Length is drawn uniformly from [min_len, max_len], digits i.i.d.
    uniform over the alphabet, runs capped, duplicates (and strings the
    cap pushed out of the length range) rejected.  Fully determined by
    spec.seed; the draws use randrange only, which is stable across
    platforms and Python versions.
    """
    spec.validate()
    rng = random.Random(spec.seed)
    alpha = [str(d) for d in spec.alphabet]
    k = len(alpha)
    span = spec.max_len - spec.min_len + 1
    need = spec.train_size + spec.test_size
    seen: set[str] = set()
    while len(seen) < need:
        length = spec.min_len + rng.randrange(span)
        s = "".join(alpha[rng.randrange(k)] for _ in range(length))
        s = cap_runs(s, spec.max_run)
        if not spec.min_len <= len(s) <= spec.max_len:
            continue
        if s in seen:
            continue
        seen.add(s)
        yield s


def make_pairs(strings: Iterable[str], direction: str) -> Iterator[DatasetPair]:
    """Pair each string with its rewrite image, in the requested direction."""
    if direction == FORWARD:
        for s in strings:
            yield DatasetPair(s, say(s))
    elif direction == REVERSED:
        for s in strings:
            yield DatasetPair(say(s), s)
    else:
        raise ValueError(f"unknown direction {direction!r}")


def _format_line(pair: DatasetPair, fmt: str) -> str:
    if fmt == RAW_TSV:
        return f"{pair.source}\t{pair.target}\n"
    return f"{' '.join(pair.source)}\t{' '.join(pair.target)}\n"


def write_dataset(
    pairs: Iterable[DatasetPair], spec: DatasetSpec, out_dir: str | Path
) -> Manifest:
    """Write train/test files and the manifest; returns the manifest.

    The first train_size pairs land in train.tsv, the next test_size in
    test.tsv; sources are disjoint between the two because the sample
    stream never repeats a source.
    """
    spec.validate()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    it = iter(pairs)
    files: dict[str, FileDigest] = {}
    for name, size in ((TRAIN_FILE, spec.train_size), (TEST_FILE, spec.test_size)):
        path = out / name
        digest = hashlib.sha256()
        written = 0
        try:
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                while written < size:
                    try:
                        pair = next(it)
                    except StopIteration:
                        raise LnsError(
                            f"pair stream ended after {written} lines of {path}"
                        ) from None
                    line = _format_line(pair, spec.format)
                    fh.write(line)
                    digest.update(line.encode("utf-8"))
                    written += 1
        except OSError as exc:
            raise LnsError(f"cannot write {path}: {exc}") from exc
        files[name] = FileDigest(digest.hexdigest(), written)
    manifest = Manifest(
        spec=spec,
        counts={"train": spec.train_size, "test": spec.test_size},
        files=files,
    )
    manifest.write(out / MANIFEST_FILE)
    return manifest


def generate_dataset(spec: DatasetSpec, out_dir: str | Path) -> Manifest:
    """Sample, pair, and write in one call."""
    return write_dataset(
        make_pairs(sample_capped(spec), spec.direction), spec, out_dir
    )


@dataclass
class CheckReport:
    ok: bool
    pairs_checked: int
    problems: list[str] = field(default_factory=list)


_MAX_PROBLEMS = 100


def check_dataset(dir_path: str | Path) -> CheckReport:
    """Full re-verification of a written dataset directory.

    Recomputes file digests against the manifest, re-derives every pair's
    target from its source, and checks source uniqueness across the
    train/test split.
    """
    out = Path(dir_path)
    manifest = Manifest.load(out / MANIFEST_FILE)
    spec = manifest.spec
    problems: list[str] = []
    pairs_checked = 0
    seen_sources: set[str] = set()

    for name, recorded in manifest.files.items():
        path = out / name
        if not path.exists():
            problems.append(f"{name}: file missing")
            continue
        digest = hashlib.sha256()
        lines = 0
        with open(path, "r", encoding="utf-8", newline="") as fh:
            for raw in fh:
                digest.update(raw.encode("utf-8"))
                lines += 1
                if len(problems) >= _MAX_PROBLEMS:
                    continue
                line = raw.rstrip("\n")
                parts = line.split("\t")
                if len(parts) != 2:
                    problems.append(f"{name}:{lines}: expected SOURCE<TAB>TARGET")
                    continue
                source, target = parts
                if spec.format == SPACED_TSV:
                    source = source.replace(" ", "")
                    target = target.replace(" ", "")
                if source in seen_sources:
                    problems.append(f"{name}:{lines}: duplicate source {source!r}")
                seen_sources.add(source)
                try:
                    if spec.direction == FORWARD:
                        valid = say(source) == target
                    else:
                        valid = say(target) == source
                except LnsError as exc:
                    problems.append(f"{name}:{lines}: unreadable pair ({exc})")
                    continue
                if not valid:
                    problems.append(
                        f"{name}:{lines}: pair violates the {spec.direction} rule"
                    )
                else:
                    pairs_checked += 1
        if digest.hexdigest() != recorded.sha256:
            problems.append(f"{name}: checksum mismatch")
        if lines != recorded.lines:
            problems.append(
                f"{name}: {lines} lines on disk, manifest says {recorded.lines}"
            )
    if len(problems) >= _MAX_PROBLEMS:
        problems.append("... (problem list truncated)")
    return CheckReport(ok=not problems, pairs_checked=pairs_checked, problems=problems)
