"""Internal machinery for exhaustive scans.

Audits and metric sweeps run over every profile; doing that with Fraction
arithmetic per comparison is needlessly slow.  This module precomputes
per-ranking data once per ``m`` and converts a rule's full tabulation into
integer probability vectors over one common denominator, so the inner loops
are pure integer work.  Everything here is exact; Fractions reappear only at
the API boundary.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .budget import check_budget
from .errors import RuleError
from .profiles import Profile, all_preferences, profile_count


@dataclass(frozen=True)
class PrefData:
    """Per-ranking lookup tables for a fixed number of alternatives."""

    m: int
    prefs: tuple                 # index -> ranking tuple (best first)
    index: dict                  # ranking tuple -> index
    position: tuple              # index -> tuple alt -> 0-based position
    beats: tuple                 # index -> matrix[x][y] = 1 if x above y
    topswap: tuple               # index -> index of ranking with top two swapped
    adjacent: tuple              # index -> tuple over positions j of swapped-ranking index
    alt_transpositions: tuple    # j -> tuple: ranking index -> index after swapping alts j, j+1


@lru_cache(maxsize=None)
def pref_data(m: int) -> PrefData:
    prefs = all_preferences(m)
    index = {p: i for i, p in enumerate(prefs)}
    position = []
    beats = []
    topswap = []
    adjacent = []
    for p in prefs:
        pos = [0] * m
        for where, alt in enumerate(p):
            pos[alt] = where
        position.append(tuple(pos))
        mat = [[0] * m for _ in range(m)]
        for i, x in enumerate(p):
            for y in p[i + 1:]:
                mat[x][y] = 1
        beats.append(tuple(tuple(row) for row in mat))
        swaps = []
        for j in range(m - 1):
            q = p[:j] + (p[j + 1], p[j]) + p[j + 2:]
            swaps.append(index[q])
        adjacent.append(tuple(swaps))
        topswap.append(swaps[0] if m >= 2 else index[p])
    alt_transpositions = []
    for j in range(m - 1):
        tau = list(range(m))
        tau[j], tau[j + 1] = tau[j + 1], tau[j]
        alt_transpositions.append(tuple(index[tuple(tau[a] for a in p)] for p in prefs))
    return PrefData(
        m=m,
        prefs=prefs,
        index=index,
        position=tuple(position),
        beats=tuple(beats),
        topswap=tuple(topswap),
        adjacent=tuple(adjacent),
        alt_transpositions=tuple(alt_transpositions),
    )


@dataclass(frozen=True, eq=False)
class IntTable:
    """A rule tabulated as integer vectors over a common denominator.

    ``rows[k][x] / denom`` is the probability of alternative ``x`` at the
    profile with enumeration index ``k``.
    """

    m: int
    n: int
    denom: int
    rows: tuple


_TABLE_CACHE: dict = {}


def _cache_key(spec, m, n):
    try:
        hash(spec)
        return (spec, m, n)
    except TypeError:
        return (id(spec), m, n)


def int_table(spec, m: int, n: int, budget=None) -> IntTable:
    """Tabulate ``spec`` over all profiles as integer vectors (cached)."""
    key = _cache_key(spec, m, n)
    cached = _TABLE_CACHE.get(key)
    if cached is not None:
        return cached
    spec.check_dimensions(m, n)
    check_budget(profile_count(m, n), budget)
    data = pref_data(m)
    lotteries = []
    denom = 1
    for combo in itertools.product(data.prefs, repeat=n):
        lottery = spec.evaluate(Profile(m, combo))
        lotteries.append(lottery.probs)
        for p in lottery.probs:
            denom = denom * p.denominator // math.gcd(denom, p.denominator)
    rows = tuple(
        tuple(int(p * denom) for p in probs) for probs in lotteries
    )
    table = IntTable(m=m, n=n, denom=denom, rows=rows)
    _TABLE_CACHE[key] = table
    return table


def int_table_from_rows(m, n, denom, rows) -> IntTable:
    return IntTable(m=m, n=n, denom=denom, rows=tuple(tuple(r) for r in rows))


def radix_weights(m: int, n: int) -> tuple:
    """Positional weights of each voter's ranking index in the profile index."""
    base = math.factorial(m)
    return tuple(base ** (n - 1 - i) for i in range(n))


def profile_from_combo(m: int, combo) -> Profile:
    prefs = all_preferences(m)
    return Profile(m, tuple(prefs[r] for r in combo))


def lottery_from_row(table: IntTable, k: int):
    from .lotteries import Lottery

    return Lottery(tuple(Fraction(v, table.denom) for v in table.rows[k]))


def iter_combos(m: int, n: int):
    """All profiles as tuples of ranking indices, in enumeration order."""
    return itertools.product(range(math.factorial(m)), repeat=n)


def clear_caches():
    """Drop memoized tabulations (tests use this to measure cold paths)."""
    _TABLE_CACHE.clear()


def accumulate_support(combo, beats, m: int):
    """Supporting-size matrix for a profile given as ranking indices."""
    sup = [[0] * m for _ in range(m)]
    for r in combo:
        mat = beats[r]
        for x in range(m):
            row = sup[x]
            brow = mat[x]
            for y in range(m):
                row[y] += brow[y]
    return sup


def condorcet_winner_from_support(sup, m: int, n: int):
    for x in range(m):
        row = sup[x]
        if all(2 * row[y] > n for y in range(m) if y != x):
            return x
    return None


def dominated_alternatives(sup, m: int, n: int):
    """Alternatives Pareto-dominated by someone, given the support matrix."""
    out = []
    for y in range(m):
        for x in range(m):
            if x != y and sup[x][y] == n:
                out.append(y)
                break
    return out
