"""Forward and inverse Look-and-Say steps over digit strings.

A term is a plain Python string over the digits '1'..'9' ('0' is invalid
everywhere).  Reading a term aloud run by run — count, then digit — gives
the next term: "111221" reads as three 1s, two 2s, one 1 and rewrites to
"312211".  The inverse reading expands (count, digit) pairs back out.

API-level operations work on strings or on the run-length types below.
The iteration-heavy entry points (`say_n`, `say_length`, `length_series`,
`ls_prefix`) run on a columnar run representation (numpy arrays) so that
deep iterates — the step-59 term has 12.7M digits — stay at C speed
instead of rewriting Python strings character by character.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby
from typing import Iterable

import numpy as np

from .errors import (
    EmptyInput,
    InvalidDigit,
    LengthBudgetExceeded,
    MalformedRle,
    OddLength,
    RunOverflow,
    ZeroDigit,
)

#: Runs longer than this have no single-digit count and are rejected.
MAX_RUN_COUNT = 9

#: Default cap on materialized term length (in digits).  Growth is
#: exponential; without a budget a mistyped step count exhausts memory.
DEFAULT_LENGTH_BUDGET = 64 * 1024 * 1024

_DIGITS = frozenset("123456789")
_ZERO = ord("0")


@dataclass(frozen=True)
class RleRun:
    """One maximal run: ``count`` copies of ``digit`` (both 1..9)."""

    digit: int
    count: int


@dataclass(frozen=True)
class RleString:
    """Run-length form of a term; adjacent runs carry distinct digits."""

    runs: tuple[RleRun, ...]

    def __len__(self) -> int:
        return sum(r.count for r in self.runs)


def rle_from_pairs(pairs: Iterable[tuple[int, int]]) -> RleString:
    """Build an RleString from (digit, count) pairs; no validation."""
    return RleString(tuple(RleRun(int(d), int(c)) for d, c in pairs))


def _validate_term(s: str) -> None:
    if not isinstance(s, str):
        raise InvalidDigit(f"term must be a string, got {type(s).__name__}")
    if not s:
        raise EmptyInput("term is empty")
    stray = set(s) - _DIGITS
    if stray:
        if "0" in stray:
            raise ZeroDigit("digit 0 is not valid in any term")
        raise InvalidDigit(f"invalid characters in term: {sorted(stray)!r}")


def _validate_rle(r: RleString) -> None:
    prev = None
    for run in r.runs:
        if run.count < 1:
            raise MalformedRle(f"run count must be >= 1, got {run.count}")
        if not 1 <= run.digit <= 9:
            raise MalformedRle(f"run digit must be in 1..9, got {run.digit}")
        if run.digit == prev:
            raise MalformedRle(f"adjacent runs share digit {run.digit}")
        prev = run.digit


def rle_encode(s: str) -> RleString:
    """Group a term into maximal runs."""
    _validate_term(s)
    return RleString(
        tuple(RleRun(int(d), sum(1 for _ in g)) for d, g in groupby(s))
    )


def rle_decode(r: RleString) -> str:
    """Expand runs back to the term they encode."""
    _validate_rle(r)
    return "".join(str(run.digit) * run.count for run in r.runs)


def run_count(s: str) -> int:
    """Number of maximal runs in a term."""
    _validate_term(s)
    return sum(1 for _ in groupby(s))


def say(s: str) -> str:
    """One Look-and-Say step: emit count-then-digit for each maximal run.

    Every run must be at most 9 digits long so its count stays a single
    digit; longer runs raise RunOverflow.
    """
    _validate_term(s)
    parts: list[str] = []
    for d, g in groupby(s):
        c = sum(1 for _ in g)
        if c > MAX_RUN_COUNT:
            raise RunOverflow(
                f"run of {c} '{d}'s has no single-digit count"
            )
        parts.append(str(c))
        parts.append(d)
    return "".join(parts)


def say_rle(r: RleString) -> RleString:
    """One step directly on run-length form, without materializing digits.

    Each run (d, c) contributes the digit pair c,d to the next term; equal
    neighbours are merged so the result is again maximal.
    """
    _validate_rle(r)
    if not r.runs:
        raise EmptyInput("term is empty")
    out: list[list[int]] = []

    def push(digit: int) -> None:
        if out and out[-1][0] == digit:
            out[-1][1] += 1
        else:
            out.append([digit, 1])

    for run in r.runs:
        if run.count > MAX_RUN_COUNT:
            raise RunOverflow(
                f"run of {run.count} '{run.digit}'s has no single-digit count"
            )
        push(run.count)
        push(run.digit)
    return RleString(tuple(RleRun(d, c) for d, c in out))


def unsay(s: str) -> str:
    """Inverse reading: parse (count, digit) pairs and expand each.

    unsay(say(x)) == x for every x accepted by `say`.  Note the converse
    fails: unsay is defined on strings that are not images of `say`
    (e.g. "1111" -> "11", yet say("11") == "21").
    """
    _validate_term(s)
    if len(s) % 2:
        raise OddLength(f"cannot pair up {len(s)} digits")
    return "".join(s[i + 1] * int(s[i]) for i in range(0, len(s), 2))


def is_canonical_image(s: str) -> bool:
    """True iff s == say(x) for some x, i.e. say(unsay(s)) == s.

    Characterization: even length, digits all 1..9, and distinct digits in
    adjacent (count, digit) pairs.  Malformed input yields False, never an
    exception.
    """
    if not isinstance(s, str) or not s or len(s) % 2:
        return False
    if set(s) - _DIGITS:
        return False
    digits = s[1::2]
    return all(digits[k] != digits[k + 1] for k in range(len(digits) - 1))


def cap_runs(s: str, max_run: int = 3) -> str:
    """Shorten every run longer than max_run to exactly max_run digits."""
    _validate_term(s)
    if max_run < 1:
        raise ValueError("max_run must be >= 1")
    return "".join(d * min(sum(1 for _ in g), max_run) for d, g in groupby(s))


# --- columnar engine -----------------------------------------------------
#
# A term is held as a uint8 array of digit values.  One step finds the run
# boundaries vectorized, checks the single-digit-count domain, and
# interleaves (count, digit) into the next term's array.


def _term_array(s: str) -> np.ndarray:
    _validate_term(s)
    return np.frombuffer(s.encode("ascii"), dtype=np.uint8) - _ZERO


def _array_term(a: np.ndarray) -> str:
    return (a + _ZERO).astype(np.uint8).tobytes().decode("ascii")


def _say_step(a: np.ndarray) -> np.ndarray:
    change = np.flatnonzero(a[1:] != a[:-1])
    starts = np.empty(change.size + 1, dtype=np.int64)
    starts[0] = 0
    starts[1:] = change + 1
    lengths = np.empty_like(starts)
    lengths[:-1] = np.diff(starts)
    lengths[-1] = a.size - starts[-1]
    if int(lengths.max()) > MAX_RUN_COUNT:
        raise RunOverflow("run longer than 9 digits has no single-digit count")
    out = np.empty(2 * starts.size, dtype=np.uint8)
    out[0::2] = lengths
    out[1::2] = a[starts]
    return out


def say_n(seed: str, n: int, max_len: int = DEFAULT_LENGTH_BUDGET) -> str:
    """n-fold application of `say`; say_n(s, 0) == s.

    Raises LengthBudgetExceeded as soon as any intermediate term outgrows
    max_len digits.
    """
    if n < 0:
        raise ValueError("step count must be >= 0")
    if max_len < 1:
        raise ValueError("length budget must be positive")
    a = _term_array(seed)
    if a.size > max_len:
        raise LengthBudgetExceeded(f"seed already exceeds {max_len} digits")
    for _ in range(n):
        a = _say_step(a)
        if a.size > max_len:
            raise LengthBudgetExceeded(
                f"term grew past the {max_len}-digit budget"
            )
    return _array_term(a)


def say_length(seed: str, n: int) -> int:
    """Exact length of say_n(seed, n), computed run-wise (no strings)."""
    if n < 0:
        raise ValueError("step count must be >= 0")
    a = _term_array(seed)
    for _ in range(n):
        a = _say_step(a)
    return int(a.size)


def length_series(seed: str, n: int) -> list[int]:
    """Lengths of the orbit terms at steps 0..n in one pass."""
    if n < 0:
        raise ValueError("step count must be >= 0")
    a = _term_array(seed)
    lengths = [int(a.size)]
    for _ in range(n):
        a = _say_step(a)
        lengths.append(int(a.size))
    return lengths


def ls_prefix(
    n: int, seed: str = "1", max_len: int = DEFAULT_LENGTH_BUDGET
) -> list[str]:
    """First n orbit terms of seed, starting with seed itself."""
    if n < 1:
        raise ValueError("need at least one term")
    a = _term_array(seed)
    if a.size > max_len:
        raise LengthBudgetExceeded(f"seed already exceeds {max_len} digits")
    terms = [_array_term(a)]
    for _ in range(n - 1):
        a = _say_step(a)
        if a.size > max_len:
            raise LengthBudgetExceeded(
                f"term grew past the {max_len}-digit budget"
            )
        terms.append(_array_term(a))
    return terms
