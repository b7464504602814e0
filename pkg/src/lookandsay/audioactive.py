"""Atomic decomposition of Look-and-Say orbits.

Long terms factor into substrings whose rewrites never interact with
their neighbours; each such atom decays into a fixed list of atoms.  The
integer matrix of decay multiplicities drives exact length evolution at
large step counts (unbounded ints, no term materialization) and yields
the per-step growth factor as its dominant eigenvalue.

Splits are found with a bounded non-interaction check (see find_splits);
the whole construction is certified against the direct rewrite engine in
the test suite rather than proved, so the table is exact wherever the
oracle comparison holds.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import core
from .core import say, say_length, say_n
from .errors import ClosureBudgetExceeded, LnsError, NonConvergence

DEFAULT_T_CHECK = 30
DEFAULT_ENTRY_STEP = 8
DEFAULT_MAX_ATOMS = 1000


@dataclass(frozen=True)
class Atom:
    id: int
    string: str


@dataclass
class AtomTable:
    """Closed set of atoms with the decay list of each.

    decay[i] lists atom ids whose strings concatenate to say(atoms[i]).
    Built single-threaded for deterministic numbering; queries are
    read-only apart from a memo of entry decompositions.
    """

    atoms: list[Atom]
    decay: dict[int, tuple[int, ...]]
    seed: str
    t_check: int
    entry_step: int
    _entries: dict[str, tuple[int, tuple[int, ...]]] = field(
        default_factory=dict, repr=False
    )

    def index(self) -> dict[str, int]:
        return {a.string: a.id for a in self.atoms}

    def atom_lengths(self) -> list[int]:
        return [len(a.string) for a in self.atoms]

    def entry_for(self, seed: str) -> tuple[int, tuple[int, ...]]:
        """Smallest k at which say_k(seed) decomposes into table atoms.

        Returns (k, atom ids of the decomposition, in order).  Raises
        LnsError when the orbit never lands in the closure within
        entry_step applications.
        """
        if seed in self._entries:
            return self._entries[seed]
        idx = self.index()
        term = seed
        for k in range(self.entry_step + 1):
            if k:
                term = say(term)
            chunks = find_splits(term, self.t_check)
            if all(c in idx for c in chunks):
                entry = (k, tuple(idx[c] for c in chunks))
                self._entries[seed] = entry
                return entry
        raise LnsError(
            f"orbit of {seed!r} does not reach the closure within "
            f"{self.entry_step} steps"
        )


@dataclass
class DecayMatrix:
    """m[i][j] = multiplicity of atom j in the decay of atom i."""

    m: list[list[int]]

    def __len__(self) -> int:
        return len(self.m)


@dataclass(frozen=True)
class GrowthResult:
    value: float
    iterations: int


def _boundary_holds(left_last: str, right: str, t_check: int) -> bool:
    # The left side's last digit never changes under rewriting, so
    # non-interaction up to t_check reduces to the right side's evolving
    # first digit staying distinct from it.
    left = ord(left_last) - core._ZERO
    a = core._term_array(right)
    for t in range(t_check + 1):
        if int(a[0]) == left:
            return False
        if t < t_check:
            a = core._say_step(a)
    return True


def find_splits(s: str, t_check: int = DEFAULT_T_CHECK) -> list[str]:
    """Cut s into maximal chunks that evolve independently for t_check steps.

    The concatenation of the chunks is s, and for every adjacent pair the
    boundary digits stay distinct at every rewrite depth up to t_check.
    The check at one position depends only on the suffix from that
    position, so all cut points are independent and the chunks cannot be
    split further under the same check.
    """
    core._validate_term(s)
    if t_check < 1:
        raise ValueError("t_check must be >= 1")
    chunks: list[str] = []
    start = 0
    for p in range(1, len(s)):
        if s[p - 1] != s[p] and _boundary_holds(s[p - 1], s[p:], t_check):
            chunks.append(s[start:p])
            start = p
    chunks.append(s[start:])
    return chunks


def build_closure(
    seed: str,
    t_check: int = DEFAULT_T_CHECK,
    entry_step: int = DEFAULT_ENTRY_STEP,
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> tuple[AtomTable, DecayMatrix]:
    """Discover the atom set reachable from say_entry_step(seed).

    Splits the entry term, then repeatedly decays and splits until the
    chunk set is closed.  Atom ids follow discovery order (breadth
    first), so the numbering is reproducible.
    """
    entry_term = say_n(seed, entry_step)
    ids: dict[str, int] = {}
    strings: list[str] = []
    pending: deque[int] = deque()

    def intern(chunk: str) -> int:
        i = ids.get(chunk)
        if i is None:
            if len(strings) >= max_atoms:
                raise ClosureBudgetExceeded(
                    f"more than {max_atoms} atoms; the split predicate "
                    "looks degenerate for this seed"
                )
            i = len(strings)
            ids[chunk] = i
            strings.append(chunk)
            pending.append(i)
        return i

    entry_ids = tuple(intern(c) for c in find_splits(entry_term, t_check))
    decay: dict[int, tuple[int, ...]] = {}
    while pending:
        i = pending.popleft()
        image = say(strings[i])
        parts = find_splits(image, t_check)
        decay[i] = tuple(intern(p) for p in parts)

    atoms = [Atom(i, s) for i, s in enumerate(strings)]
    table = AtomTable(atoms, decay, seed, t_check, entry_step)
    table._entries[seed] = (entry_step, entry_ids)

    n = len(atoms)
    m = [[0] * n for _ in range(n)]
    for i, parts in decay.items():
        for j in parts:
            m[i][j] += 1
    matrix = DecayMatrix(m)
    _verify_table(table, matrix)
    return table, matrix


def _verify_table(table: AtomTable, matrix: DecayMatrix) -> None:
    # Exactness is rechecked, not assumed: each decay must concatenate to
    # the literal rewrite image, and each matrix row must conserve length.
    strings = [a.string for a in table.atoms]
    for i, parts in table.decay.items():
        image = say(strings[i])
        if "".join(strings[j] for j in parts) != image:
            raise LnsError(f"decay of atom {i} does not concatenate to its image")
        weighted = sum(
            matrix.m[i][j] * len(strings[j]) for j in range(len(strings))
        )
        if weighted != len(image):
            raise LnsError(f"matrix row {i} does not conserve length")


def length_at(
    seed: str, n: int, table: AtomTable, matrix: DecayMatrix
) -> int:
    """Exact length of say_n(seed) via matrix evolution in unbounded ints.

    Steps before the orbit enters the closure fall back to the direct
    run-length engine.
    """
    if n < 0:
        raise ValueError("step count must be >= 0")
    k, entry_ids = table.entry_for(seed)
    if n <= k:
        return say_length(seed, n)
    counts = [0] * len(table.atoms)
    for i in entry_ids:
        counts[i] += 1
    adjacency = [
        [(j, mult) for j, mult in enumerate(row) if mult]
        for row in matrix.m
    ]
    for _ in range(n - k):
        nxt = [0] * len(counts)
        for i, c in enumerate(counts):
            if c:
                for j, mult in adjacency[i]:
                    nxt[j] += c * mult
        counts = nxt
    lengths = table.atom_lengths()
    return sum(c * l for c, l in zip(counts, lengths))


def growth_constant(
    matrix: DecayMatrix,
    atom_lengths: list[int] | None = None,
    tol: float = 1e-10,
    max_iter: int = 10_000,
) -> GrowthResult:
    """Dominant eigenvalue of the decay matrix by power iteration.

    The state vector plays the role of atom counts and is advanced through
    the matrix transpose; the eigenvalue estimate is the step-to-step
    ratio of total (length-weighted, when lengths are given) mass.  Stops
    when successive estimates differ by less than tol.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = len(matrix.m)
    if n == 0:
        raise ValueError("matrix is empty")
    m = np.asarray(matrix.m, dtype=float)
    w = np.ones(n) if atom_lengths is None else np.asarray(atom_lengths, dtype=float)
    x = np.ones(n)
    prev: float | None = None
    for it in range(1, max_iter + 1):
        y = x @ m  # counts evolve through the transpose
        total = float(y.sum())
        weighted_prev = float(w @ x)
        if total <= 0.0 or weighted_prev <= 0.0:
            raise NonConvergence(
                "state collapsed to zero; no growth direction reachable "
                "from a non-negative start"
            )
        lam = float(w @ y) / weighted_prev
        x = y / total
        if prev is not None and abs(lam - prev) < tol:
            return GrowthResult(lam, it)
        prev = lam
    raise NonConvergence(f"no convergence after {max_iter} iterations")


def export_atoms(
    table: AtomTable, matrix: DecayMatrix, out_dir: str | Path
) -> tuple[Path, Path]:
    """Write atoms.tsv (id, string) and matrix.tsv (integer rows)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    atoms_path = out / "atoms.tsv"
    matrix_path = out / "matrix.tsv"
    with open(atoms_path, "w", encoding="utf-8", newline="\n") as fh:
        for atom in table.atoms:
            fh.write(f"{atom.id}\t{atom.string}\n")
    with open(matrix_path, "w", encoding="utf-8", newline="\n") as fh:
        for row in matrix.m:
            fh.write("\t".join(str(v) for v in row) + "\n")
    return atoms_path, matrix_path
