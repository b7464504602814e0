"""Shared oracles and helpers.

The oracles here deliberately avoid the library's own code paths: the
rewrite oracle walks the string with indices (no groupby, no arrays) and
the universe oracle enumerates strings exhaustively, so the tests check
the package against independent computations rather than against itself.
"""

from __future__ import annotations

import itertools
import random

from lookandsay import cap_runs


def oracle_say(s: str) -> str:
    out = []
    i = 0
    while i < len(s):
        j = i
        while j < len(s) and s[j] == s[i]:
            j += 1
        out.append(str(j - i))
        out.append(s[i])
        i = j
    return "".join(out)


def oracle_say_n(s: str, n: int) -> str:
    for _ in range(n):
        s = oracle_say(s)
    return s


def brute_capped_universe(alphabet: str, max_len: int, max_run: int = 3) -> set[str]:
    universe = set()
    for length in range(1, max_len + 1):
        for tup in itertools.product(alphabet, repeat=length):
            s = "".join(tup)
            if cap_runs(s, max_run) == s:
                universe.add(s)
    return universe


def random_capped_terms(
    count: int, seed: int, alphabet: str = "123", min_len: int = 1, max_len: int = 15
) -> list[str]:
    rng = random.Random(seed)
    terms = []
    while len(terms) < count:
        length = rng.randint(min_len, max_len)
        s = "".join(rng.choice(alphabet) for _ in range(length))
        s = cap_runs(s)
        if min_len <= len(s) <= max_len:
            terms.append(s)
    return terms
