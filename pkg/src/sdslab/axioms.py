"""Decision procedures for the axioms, each returning a concrete witness on failure.

Audits are exhaustive over the full profile enumeration, never sampled: a
"holds" verdict means every profile (and every deviation, swap, or generator
permutation) was checked.  A "fails" verdict carries the first violation in
enumeration order, so reports are deterministic and reproducible.

Strategyproofness is audited against *all* unilateral misreports, not just
adjacent swaps; the swap-based monotonicity/locality audit is separate, which
makes their equivalence (for every rule: strategyproof iff non-perverse and
localized) a genuine cross-check rather than an artifact of the search space.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import _engine
from .budget import check_budget
from .errors import ScopeError
from .lotteries import Lottery, sd_failure_cutoff, sd_prefers  # noqa: F401  (re-export)
from .profiles import (
    Preference,
    Profile,
    all_preferences,
    alt_label,
    format_profile,
    majority_tally,
    profile_count,
    support_matrix,
)
from .rules import SdsSpec


@dataclass(frozen=True)
class Witness:
    """A replayable certificate of one axiom violation."""

    axiom: str
    profile: Profile
    voter: Optional[int] = None                  # 0-based
    deviation: Optional[Preference] = None
    alternatives: Optional[tuple[int, int]] = None
    cutoff: Optional[int] = None
    before: Optional[Lottery] = None
    after: Optional[Lottery] = None

    def to_json(self) -> dict:
        out = {"axiom": self.axiom, "profile": format_profile(self.profile)}
        if self.voter is not None:
            out["voter"] = self.voter + 1
        if self.deviation is not None:
            out["deviation"] = ">".join(alt_label(x) for x in self.deviation)
        if self.alternatives is not None:
            out["alternatives"] = [alt_label(x) for x in self.alternatives]
        if self.cutoff is not None:
            out["cutoff"] = alt_label(self.cutoff)
        if self.before is not None:
            out["truthful_lottery"] = self.before.as_dict()
        if self.after is not None:
            out["other_lottery"] = self.after.as_dict()
        return out

    def replay(self, spec: SdsSpec) -> bool:
        """Re-derive the violation directly from the rule; True if it reproduces."""
        from .profiles import adjacent_swap
        from .rules import evaluate

        before = evaluate(spec, self.profile)
        if self.axiom == "strategyproofness":
            truth = self.profile.voters[self.voter]
            after = evaluate(spec, self.profile.replace_voter(self.voter, self.deviation))
            return (
                before == self.before
                and after == self.after
                and not sd_prefers(truth, before, after)
            )
        if self.axiom in ("non-perversity", "localizedness"):
            x, y = self.alternatives
            after = evaluate(spec, adjacent_swap(self.profile, self.voter, x, y))
            if before != self.before or after != self.after:
                return False
            if self.axiom == "non-perversity":
                return after[y] < before[y]
            return any(after[z] != before[z] for z in range(self.profile.m) if z not in (x, y))
        if self.axiom == "anonymity":
            from .profiles import SymmetryMap, apply_symmetry

            j = self.voter
            perm = list(range(self.profile.n))
            perm[j], perm[j + 1] = perm[j + 1], perm[j]
            permuted = apply_symmetry(
                self.profile, SymmetryMap(tuple(perm), tuple(range(self.profile.m)))
            )
            return before != evaluate(spec, permuted)
        if self.axiom == "neutrality":
            from .profiles import SymmetryMap, apply_symmetry

            a, b = self.alternatives
            tau = list(range(self.profile.m))
            tau[a], tau[b] = tau[b], tau[a]
            relabeled = apply_symmetry(
                self.profile, SymmetryMap(tuple(range(self.profile.n)), tuple(tau))
            )
            after = evaluate(spec, relabeled)
            return any(before[x] != after[tau[x]] for x in range(self.profile.m))
        raise ValueError(f"cannot replay axiom {self.axiom!r}")


@dataclass(frozen=True)
class AxiomReport:
    """Per-axiom verdicts over an exhaustively enumerated scope."""

    m: int
    n: int
    mode: str
    verdicts: tuple[tuple[str, Optional[Witness]], ...]

    def witness(self, axiom: str) -> Optional[Witness]:
        for name, wit in self.verdicts:
            if name == axiom:
                return wit
        raise KeyError(axiom)

    def holds(self, axiom: Optional[str] = None) -> bool:
        if axiom is not None:
            return self.witness(axiom) is None
        return all(wit is None for _, wit in self.verdicts)

    def to_json(self) -> dict:
        return {
            "scope": {"m": self.m, "n": self.n, "mode": self.mode},
            "verdicts": {
                name: {"holds": wit is None, **({"witness": wit.to_json()} if wit else {})}
                for name, wit in self.verdicts
            },
        }


_AUDIT_CACHE: dict = {}


def _cached(kind, spec, m, n):
    return _AUDIT_CACHE.get((kind, _engine._cache_key(spec, m, n)))


def _store(kind, spec, m, n, report):
    _AUDIT_CACHE[(kind, _engine._cache_key(spec, m, n))] = report
    return report


# ---------------------------------------------------------------------------
# strategyproofness


def audit_strategyproof(spec: SdsSpec, m: int, n: int, budget=None) -> AxiomReport:
    """Check truth-dominance against every unilateral misreport, exhaustively.

    The rule is evaluated on all ``(m!)**n`` profiles; for each profile, voter,
    and replacement ranking, the truthful lottery must stochastically dominate
    the deviation lottery from the truthful voter's point of view.
    """
    cached = _cached("sp", spec, m, n)
    if cached is not None:
        return cached
    fact = math.factorial(m)
    check_budget(profile_count(m, n) * (1 + n * (fact - 1)), budget)
    table = _engine.int_table(spec, m, n, budget=budget)
    data = _engine.pref_data(m)
    weights = _engine.radix_weights(m, n)
    witness = None
    k = -1
    for combo in _engine.iter_combos(m, n):
        k += 1
        p = table.rows[k]
        for i in range(n):
            t = combo[i]
            base = k - t * weights[i]
            order = data.prefs[t]
            for d in range(fact):
                if d == t:
                    continue
                q = table.rows[base + d * weights[i]]
                if q == p:
                    continue
                sum_p = 0
                sum_q = 0
                fail = None
                for x in order[:-1]:
                    sum_p += p[x]
                    sum_q += q[x]
                    if sum_p < sum_q:
                        fail = x
                        break
                if fail is not None:
                    profile = _engine.profile_from_combo(m, combo)
                    witness = Witness(
                        axiom="strategyproofness",
                        profile=profile,
                        voter=i,
                        deviation=data.prefs[d],
                        cutoff=fail,
                        before=_engine.lottery_from_row(table, k),
                        after=_engine.lottery_from_row(table, base + d * weights[i]),
                    )
                    break
            if witness:
                break
        if witness:
            break
    report = AxiomReport(m=m, n=n, mode="full", verdicts=(("strategyproofness", witness),))
    return _store("sp", spec, m, n, report)


def is_strategyproof(spec: SdsSpec, m: int, n: int, budget=None) -> bool:
    """Strategyproofness verdict, trusting family certificates when present.

    Families that are strategyproof by construction (scoring rules, random
    dictatorships, monotone duples, validated unilaterals, mixtures of these)
    skip the exhaustive audit, which keeps scopes like (4, 5) reachable; all
    other rules are audited.
    """
    spec.check_dimensions(m, n)
    if spec.strategyproof_by_construction:
        return True
    return audit_strategyproof(spec, m, n, budget=budget).holds()


# ---------------------------------------------------------------------------
# monotonicity (non-perversity) and locality


def audit_gibbard(spec: SdsSpec, m: int, n: int, budget=None) -> AxiomReport:
    """Audit non-perversity and localizedness over every adjacent swap.

    Non-perversity: reinforcing ``y`` against ``x`` never lowers ``y``'s
    probability.  Localizedness: it never moves any third alternative's
    probability.  Together these are equivalent to strategyproofness, which
    ``audit_strategyproof`` checks independently.
    """
    cached = _cached("gibbard", spec, m, n)
    if cached is not None:
        return cached
    check_budget(profile_count(m, n) * (1 + n * (m - 1)), budget)
    table = _engine.int_table(spec, m, n, budget=budget)
    data = _engine.pref_data(m)
    weights = _engine.radix_weights(m, n)
    perverse = None
    delocalized = None
    k = -1
    for combo in _engine.iter_combos(m, n):
        k += 1
        if perverse is not None and delocalized is not None:
            break
        p = table.rows[k]
        for i in range(n):
            t = combo[i]
            base = k - t * weights[i]
            pref = data.prefs[t]
            for j in range(m - 1):
                d = data.adjacent[t][j]
                q = table.rows[base + d * weights[i]]
                if q == p:
                    continue
                x, y = pref[j], pref[j + 1]
                if perverse is None and q[y] < p[y]:
                    perverse = Witness(
                        axiom="non-perversity",
                        profile=_engine.profile_from_combo(m, combo),
                        voter=i,
                        deviation=data.prefs[d],
                        alternatives=(x, y),
                        before=_engine.lottery_from_row(table, k),
                        after=_engine.lottery_from_row(table, base + d * weights[i]),
                    )
                if delocalized is None and any(
                    q[z] != p[z] for z in range(m) if z != x and z != y
                ):
                    delocalized = Witness(
                        axiom="localizedness",
                        profile=_engine.profile_from_combo(m, combo),
                        voter=i,
                        deviation=data.prefs[d],
                        alternatives=(x, y),
                        before=_engine.lottery_from_row(table, k),
                        after=_engine.lottery_from_row(table, base + d * weights[i]),
                    )
    report = AxiomReport(
        m=m,
        n=n,
        mode="full",
        verdicts=(("non-perversity", perverse), ("localizedness", delocalized)),
    )
    return _store("gibbard", spec, m, n, report)


# ---------------------------------------------------------------------------
# anonymity and neutrality


def audit_symmetries(spec: SdsSpec, m: int, n: int, budget=None) -> AxiomReport:
    """Audit anonymity and neutrality using transposition generators.

    Invariance under adjacent voter swaps implies invariance under every
    voter permutation, and likewise for alternative transpositions, so the
    audit is exhaustive at a fraction of the cost of all ``n! m!`` maps.
    """
    cached = _cached("symmetries", spec, m, n)
    if cached is not None:
        return cached
    check_budget(profile_count(m, n) * (1 + (n - 1) + (m - 1)), budget)
    table = _engine.int_table(spec, m, n, budget=budget)
    data = _engine.pref_data(m)
    weights = _engine.radix_weights(m, n)
    anonymity = None
    neutrality = None
    k = -1
    for combo in _engine.iter_combos(m, n):
        k += 1
        if anonymity is not None and neutrality is not None:
            break
        p = table.rows[k]
        if anonymity is None:
            for j in range(n - 1):
                if combo[j] == combo[j + 1]:
                    continue
                k2 = (
                    k
                    - combo[j] * weights[j]
                    - combo[j + 1] * weights[j + 1]
                    + combo[j + 1] * weights[j]
                    + combo[j] * weights[j + 1]
                )
                if table.rows[k2] != p:
                    anonymity = Witness(
                        axiom="anonymity",
                        profile=_engine.profile_from_combo(m, combo),
                        voter=j,
                        before=_engine.lottery_from_row(table, k),
                        after=_engine.lottery_from_row(table, k2),
                    )
                    break
        if neutrality is None:
            for j in range(m - 1):
                remap = data.alt_transpositions[j]
                k2 = sum(remap[r] * w for r, w in zip(combo, weights))
                q = table.rows[k2]
                bad = None
                for x in range(m):
                    tx = j + 1 if x == j else j if x == j + 1 else x
                    if p[x] != q[tx]:
                        bad = x
                        break
                if bad is not None:
                    neutrality = Witness(
                        axiom="neutrality",
                        profile=_engine.profile_from_combo(m, combo),
                        alternatives=(j, j + 1),
                        cutoff=bad,
                        before=_engine.lottery_from_row(table, k),
                        after=_engine.lottery_from_row(table, k2),
                    )
                    break
    report = AxiomReport(
        m=m,
        n=n,
        mode="full",
        verdicts=(("anonymity", anonymity), ("neutrality", neutrality)),
    )
    return _store("symmetries", spec, m, n, report)


# ---------------------------------------------------------------------------
# majority concepts


def condorcet_winner(profile: Profile):
    """The alternative winning every pairwise majority comparison, if any."""
    sup = support_matrix(profile)
    n = profile.n
    for x in range(profile.m):
        if all(2 * sup[x][y] > n for y in range(profile.m) if y != x):
            return x
    return None


def condorcet_loser(profile: Profile):
    """The alternative losing every pairwise majority comparison, if any."""
    sup = support_matrix(profile)
    n = profile.n
    for x in range(profile.m):
        if all(2 * sup[x][y] < n for y in range(profile.m) if y != x):
            return x
    return None


def pareto_dominations(profile: Profile) -> tuple[tuple[int, int], ...]:
    """All ``(dominated, dominator)`` pairs with unanimous strict preference."""
    sup = support_matrix(profile)
    n = profile.n
    pairs = []
    for y in range(profile.m):
        for x in range(profile.m):
            if x != y and sup[x][y] == n:
                pairs.append((y, x))
    return tuple(pairs)


# ---------------------------------------------------------------------------
# Condorcet winner candidates


def _max_flow(capacity, source, sink):
    """Edmonds-Karp max flow on a dense capacity matrix (tiny graphs only)."""
    size = len(capacity)
    flow = 0
    residual = [row[:] for row in capacity]
    while True:
        parent = [-1] * size
        parent[source] = source
        queue = deque([source])
        while queue and parent[sink] < 0:
            u = queue.popleft()
            for v in range(size):
                if parent[v] < 0 and residual[u][v] > 0:
                    parent[v] = u
                    queue.append(v)
        if parent[sink] < 0:
            return flow
        bottleneck = None
        v = sink
        while v != source:
            u = parent[v]
            step = residual[u][v]
            bottleneck = step if bottleneck is None else min(bottleneck, step)
            v = u
        v = sink
        while v != source:
            u = parent[v]
            residual[u][v] -= bottleneck
            residual[v][u] += bottleneck
            v = u
        flow += bottleneck


def is_cw_candidate(profile: Profile, x: int) -> bool:
    """Can ``x`` become the Condorcet winner while keeping its rank vector?

    Reordering the other alternatives freely, voter ``i`` must place exactly
    ``rank_i(x) - 1`` alternatives above ``x``, and each other alternative may
    end up above ``x`` in at most ``ceil(n/2) - 1`` voters (so that ``x``
    strictly wins every majority comparison).  Feasibility of that
    degree-constrained assignment is decided by max flow.
    """
    m, n = profile.m, profile.n
    if not 0 <= x < m:
        raise ValueError(f"alternative {x} outside 0..{m - 1}")
    if m == 1:
        return True
    cap = (n + 1) // 2 - 1  # max voters that may put a given rival above x
    demands = [pref.index(x) for pref in profile.voters]
    total = sum(demands)
    if total > cap * (m - 1):
        return False
    # nodes: 0 source, 1..n voters, n+1..n+m-1 rivals, last is sink
    rivals = [y for y in range(m) if y != x]
    size = n + len(rivals) + 2
    sink = size - 1
    capacity = [[0] * size for _ in range(size)]
    for i, demand in enumerate(demands):
        capacity[0][1 + i] = demand
        for j in range(len(rivals)):
            capacity[1 + i][1 + n + j] = 1
    for j in range(len(rivals)):
        capacity[1 + n + j][sink] = cap
    return _max_flow(capacity, 0, sink) == total
