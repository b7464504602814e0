"""Look-and-Say toolkit.

Exact forward/inverse rewrite steps and a fast run-length engine
(`core`), atomic decay analysis with exact length evolution and the
growth constant (`audioactive`), deterministic dataset generation
(`datagen`), and an exact-match scoring harness with the true-sequence
probe (`evaluate`).  The `lns` console script exposes everything as
subcommands.
"""

from ._version import __version__
from .audioactive import (
    Atom,
    AtomTable,
    DecayMatrix,
    GrowthResult,
    build_closure,
    export_atoms,
    find_splits,
    growth_constant,
    length_at,
)
from .core import (
    DEFAULT_LENGTH_BUDGET,
    MAX_RUN_COUNT,
    RleRun,
    RleString,
    cap_runs,
    is_canonical_image,
    length_series,
    ls_prefix,
    rle_decode,
    rle_encode,
    rle_from_pairs,
    run_count,
    say,
    say_length,
    say_n,
    say_rle,
    unsay,
)
from .datagen import (
    CheckReport,
    DatasetPair,
    DatasetSpec,
    Manifest,
    check_dataset,
    count_capped,
    count_strings,
    generate_dataset,
    make_pairs,
    sample_capped,
    write_dataset,
)
from .evaluate import (
    ErrorRecord,
    EvalReport,
    ProbeReport,
    ProbeTerm,
    load_eval_inputs,
    parse_report,
    probe,
    render_report,
    score,
)

__all__ = [
    "__version__",
    "Atom",
    "AtomTable",
    "CheckReport",
    "DatasetPair",
    "DatasetSpec",
    "DecayMatrix",
    "DEFAULT_LENGTH_BUDGET",
    "ErrorRecord",
    "EvalReport",
    "GrowthResult",
    "Manifest",
    "MAX_RUN_COUNT",
    "ProbeReport",
    "ProbeTerm",
    "RleRun",
    "RleString",
    "build_closure",
    "cap_runs",
    "check_dataset",
    "count_capped",
    "count_strings",
    "export_atoms",
    "find_splits",
    "generate_dataset",
    "growth_constant",
    "is_canonical_image",
    "length_at",
    "length_series",
    "load_eval_inputs",
    "ls_prefix",
    "make_pairs",
    "parse_report",
    "probe",
    "render_report",
    "rle_decode",
    "rle_encode",
    "rle_from_pairs",
    "run_count",
    "sample_capped",
    "say",
    "say_length",
    "say_n",
    "say_rle",
    "score",
    "unsay",
    "write_dataset",
]
