"""Social decision schemes: rule families, constructors, and the exact evaluator.

Every rule is an immutable spec object whose ``evaluate`` maps a profile to
an exact lottery.  The module-level ``evaluate(spec, profile)`` is the
canonical entry point; ``spec.prob(profile, x)`` computes one alternative's
probability without materializing the whole lottery, which the metric sweeps
rely on.

Families:

* point voting: a rank-indexed scoring vector ``(a_1, ..., a_m)`` with
  ``a_1 >= ... >= a_m >= 0`` and ``sum == 1/n``; probability of ``x`` is the
  sum over voters of the score at ``x``'s rank.
* supporting size: a vector ``(b_n, ..., b_0)`` with ``b_n >= ... >= b_0 >= 0``
  and ``b_i + b_{n-i} == 2/(m(m-1))``; probability of ``x`` is the sum over
  opponents ``y`` of the score at the supporting size ``n_xy``.
* random dictatorship, uniform lottery, randomized Borda, randomized
  Copeland as named rules.
* duples restricted to the monotone anonymous family ``p_x = g(n_xy)``,
  unilaterals given by an explicit table over one voter's rankings, and
  exact convex mixtures.
* a small zoo used to separate axioms: ``cond2m`` (Condorcet winner gets
  ``2/m``, rest uniform), ``cyclic_pairwise`` (majority winner of a random
  consecutive pair in a fixed cycle), ``drop_voter_copeland`` (randomized
  Copeland with one voter ignored).
* tabulated rules: an explicit profile -> lottery table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .budget import check_budget
from .errors import DimensionError, RuleError, ScopeError
from .lotteries import Lottery, frac, lottery_from_scores, mix_lotteries, sd_prefers
from .profiles import (
    Profile,
    all_preferences,
    alt_label,
    enumerate_profiles,
    format_profile,
    parse_profile,
    profile_count,
    rank,
    support_matrix,
)


class SdsSpec:
    """Base class for rule specs.  Subclasses are frozen dataclasses."""

    family = "abstract"

    def evaluate(self, profile: Profile) -> Lottery:
        raise NotImplementedError

    def prob(self, profile: Profile, x: int, support=None) -> Fraction:
        """Probability of alternative ``x``; ``support`` may carry a precomputed
        supporting-size matrix for rules that need one."""
        return self.evaluate(profile)[x]

    @property
    def strategyproof_by_construction(self) -> bool:
        """True when membership in the family alone guarantees strategyproofness.

        Point voting, supporting size, random dictatorships, monotone duples,
        validated unilaterals, and mixtures thereof are strategyproof for
        every (m, n) they are dimensioned for; rules without this certificate
        must be audited exhaustively.
        """
        return False

    def check_dimensions(self, m: int, n: int) -> None:
        """Raise ``DimensionError`` unless the spec fits profiles of shape (m, n)."""


def evaluate(spec: SdsSpec, profile: Profile) -> Lottery:
    """Exact lottery returned by ``spec`` on ``profile``."""
    spec.check_dimensions(profile.m, profile.n)
    return spec.evaluate(profile)


def _coerce_vector(values):
    return tuple(frac(v) for v in values)


# ---------------------------------------------------------------------------
# scoring families


@dataclass(frozen=True)
class PointVotingSds(SdsSpec):
    """Rank scores ``(a_1, ..., a_m)``, nonincreasing, summing to ``1/n``."""

    scores: tuple[Fraction, ...]

    family = "point_voting"

    def __post_init__(self):
        scores = _coerce_vector(self.scores)
        object.__setattr__(self, "scores", scores)
        if not scores:
            raise RuleError("empty scoring vector")
        if any(s < 0 for s in scores):
            raise RuleError("negative score in point voting vector")
        if any(scores[i] < scores[i + 1] for i in range(len(scores) - 1)):
            raise RuleError("point voting vector must be nonincreasing")
        total = sum(scores)
        if total <= 0 or (1 / total).denominator != 1:
            raise RuleError(
                f"point voting vector sums to {total}; must be 1/n for a whole number of voters"
            )

    @property
    def m(self) -> int:
        return len(self.scores)

    @property
    def n(self) -> int:
        return int(1 / sum(self.scores))

    def check_dimensions(self, m, n):
        if m != self.m or n != self.n:
            raise DimensionError(
                f"point voting vector is for (m={self.m}, n={self.n}), profile is (m={m}, n={n})"
            )

    def evaluate(self, profile):
        probs = [Fraction(0)] * profile.m
        for pref in profile.voters:
            for pos, x in enumerate(pref):
                probs[x] += self.scores[pos]
        return Lottery(tuple(probs))

    def prob(self, profile, x, support=None):
        return sum(self.scores[pref.index(x)] for pref in profile.voters)

    @property
    def strategyproof_by_construction(self):
        return True


@dataclass(frozen=True)
class SupportingSizeSds(SdsSpec):
    """Supporting-size scores ``(b_n, ..., b_0)`` with the pairing constraint.

    Stored highest index first, mirroring the conventional notation; the
    score applied to supporting size ``k`` is ``scores[n - k]``.
    """

    scores: tuple[Fraction, ...]

    family = "supporting_size"

    def __post_init__(self):
        scores = _coerce_vector(self.scores)
        object.__setattr__(self, "scores", scores)
        if len(scores) < 2:
            raise RuleError("supporting size vector needs entries for 0..n voters")
        if any(s < 0 for s in scores):
            raise RuleError("negative score in supporting size vector")
        if any(scores[i] < scores[i + 1] for i in range(len(scores) - 1)):
            raise RuleError("supporting size vector must be nonincreasing from b_n to b_0")
        pair_sum = scores[0] + scores[-1]
        if pair_sum <= 0:
            raise RuleError("supporting size vector is identically zero")
        n = self.n
        for i in range(len(scores)):
            if scores[i] + scores[n - i] != pair_sum:
                raise RuleError(
                    f"pairing violated: b_{n - i} + b_{i} != b_n + b_0 ({pair_sum})"
                )
        two_over = 2 / pair_sum  # must equal m(m-1) for an integer m >= 2
        if two_over.denominator != 1:
            raise RuleError(f"b_n + b_0 = {pair_sum} is not 2/(m(m-1)) for any integer m")
        k = int(two_over)
        m = math.isqrt(k) + 1
        if m * (m - 1) != k or m < 2:
            raise RuleError(f"b_n + b_0 = {pair_sum} is not 2/(m(m-1)) for any integer m")

    @property
    def n(self) -> int:
        return len(self.scores) - 1

    @property
    def m(self) -> int:
        k = int(2 / (self.scores[0] + self.scores[-1]))
        return math.isqrt(k) + 1

    def check_dimensions(self, m, n):
        if m != self.m or n != self.n:
            raise DimensionError(
                f"supporting size vector is for (m={self.m}, n={self.n}), "
                f"profile is (m={m}, n={n})"
            )

    def score_for(self, k: int) -> Fraction:
        return self.scores[self.n - k]

    def evaluate(self, profile):
        support = support_matrix(profile)
        n = self.n
        probs = []
        for x in range(profile.m):
            row = support[x]
            probs.append(sum(self.scores[n - row[y]] for y in range(profile.m) if y != x))
        return Lottery(tuple(probs))

    def prob(self, profile, x, support=None):
        if support is None:
            support = support_matrix(profile)
        row = support[x]
        n = self.n
        return sum(self.scores[n - row[y]] for y in range(profile.m) if y != x)

    @property
    def strategyproof_by_construction(self):
        return True


@dataclass(frozen=True)
class RandomDictatorshipSds(SdsSpec):
    """Pick voter ``i`` with weight ``weights[i]`` and return their top choice."""

    weights: tuple[Fraction, ...]

    family = "random_dictatorship"

    def __post_init__(self):
        weights = _coerce_vector(self.weights)
        object.__setattr__(self, "weights", weights)
        if not weights:
            raise RuleError("random dictatorship needs at least one voter weight")
        if any(w < 0 for w in weights):
            raise RuleError("negative voter weight")
        if sum(weights) != 1:
            raise RuleError(f"voter weights sum to {sum(weights)}, not 1")

    def check_dimensions(self, m, n):
        if n != len(self.weights):
            raise DimensionError(
                f"random dictatorship has {len(self.weights)} voter weights, profile has {n}"
            )

    def evaluate(self, profile):
        probs = [Fraction(0)] * profile.m
        for w, pref in zip(self.weights, profile.voters):
            probs[pref[0]] += w
        return Lottery(tuple(probs))

    def prob(self, profile, x, support=None):
        return sum(w for w, pref in zip(self.weights, profile.voters) if pref[0] == x)

    @property
    def strategyproof_by_construction(self):
        return True


@dataclass(frozen=True)
class UniformLotterySds(SdsSpec):
    """Ignore the profile; every alternative gets ``1/m``."""

    family = "uniform"

    def evaluate(self, profile):
        return Lottery.uniform(profile.m)

    def prob(self, profile, x, support=None):
        return Fraction(1, profile.m)

    @property
    def strategyproof_by_construction(self):
        return True


def borda_score(profile: Profile, x: int, support=None) -> int:
    """Classic Borda score: one point per opponent per voter ranked below ``x``."""
    if support is not None:
        return sum(support[x][y] for y in range(profile.m) if y != x)
    return sum(profile.m - rank(pref, x) for pref in profile.voters)


@dataclass(frozen=True)
class CopelandScore:
    """Majority wins plus half-ties for one alternative."""

    value: Fraction


def copeland_score(profile: Profile, x: int, support=None) -> Fraction:
    """Wins plus half-ties of ``x`` against every opponent."""
    if support is None:
        support = support_matrix(profile)
    n = profile.n
    score = Fraction(0)
    for y in range(profile.m):
        if y == x:
            continue
        nxy = support[x][y]
        if 2 * nxy > n:
            score += 1
        elif 2 * nxy == n:
            score += Fraction(1, 2)
    return score


@dataclass(frozen=True)
class RandomizedBordaSds(SdsSpec):
    """Probabilities proportional to Borda scores."""

    family = "borda"

    def evaluate(self, profile):
        if profile.m == 1:
            return Lottery.degenerate(1, 0)
        return lottery_from_scores([borda_score(profile, x) for x in range(profile.m)])

    def prob(self, profile, x, support=None):
        m, n = profile.m, profile.n
        if m == 1:
            return Fraction(1)
        total = n * m * (m - 1) // 2
        return Fraction(borda_score(profile, x, support), total)

    @property
    def strategyproof_by_construction(self):
        return True


@dataclass(frozen=True)
class RandomizedCopelandSds(SdsSpec):
    """Probabilities proportional to Copeland scores (wins + half-ties)."""

    family = "copeland"

    def evaluate(self, profile):
        if profile.m == 1:
            return Lottery.degenerate(1, 0)
        support = support_matrix(profile)
        return lottery_from_scores(
            [copeland_score(profile, x, support) for x in range(profile.m)]
        )

    def prob(self, profile, x, support=None):
        m = profile.m
        if m == 1:
            return Fraction(1)
        total = Fraction(m * (m - 1), 2)
        return copeland_score(profile, x, support) / total

    @property
    def strategyproof_by_construction(self):
        return True


# ---------------------------------------------------------------------------
# duples, unilaterals, mixtures


@dataclass(frozen=True)
class DupleSds(SdsSpec):
    """All probability on ``{x, y}``: ``p_x = g[n_xy]``, ``p_y`` the rest.

    ``g`` has one entry per supporting size ``0..n`` and must be nondecreasing
    with values in [0, 1]; monotonicity makes the duple non-perverse and it is
    localized by construction, hence strategyproof.
    """

    x: int
    y: int
    g: tuple[Fraction, ...]

    family = "duple"

    def __post_init__(self):
        g = _coerce_vector(self.g)
        object.__setattr__(self, "g", g)
        if self.x == self.y or self.x < 0 or self.y < 0:
            raise RuleError("duple needs two distinct alternatives")
        if len(g) < 2:
            raise RuleError("duple table needs entries for supporting sizes 0..n")
        if any(not 0 <= v <= 1 for v in g):
            raise RuleError("duple table values must lie in [0, 1]")
        if any(g[i] > g[i + 1] for i in range(len(g) - 1)):
            raise RuleError("duple table must be nondecreasing")

    @property
    def n(self) -> int:
        return len(self.g) - 1

    def check_dimensions(self, m, n):
        if n != self.n:
            raise DimensionError(f"duple table is for n={self.n}, profile has n={n}")
        if max(self.x, self.y) >= m:
            raise DimensionError("duple alternatives outside the profile's alternative set")

    def evaluate(self, profile):
        probs = [Fraction(0)] * profile.m
        nxy = sum(1 for pref in profile.voters if pref.index(self.x) < pref.index(self.y))
        probs[self.x] = self.g[nxy]
        probs[self.y] = 1 - self.g[nxy]
        return Lottery(tuple(probs))

    @property
    def strategyproof_by_construction(self):
        return True


@dataclass(frozen=True)
class UnilateralSds(SdsSpec):
    """Outcome depends on one voter only, via an explicit ranking -> lottery table.

    ``table[k]`` is the lottery returned when the owning voter reports the
    ``k``-th ranking in lexicographic order.  Construction validates that the
    owning voter can never gain by misreporting, so every instance is
    strategyproof (the other voters have no influence at all).
    """

    voter: int
    table: tuple[Lottery, ...]

    family = "unilateral"

    def __post_init__(self):
        table = tuple(self.table)
        object.__setattr__(self, "table", table)
        if self.voter < 0:
            raise RuleError("voter index must be nonnegative")
        m = self.m  # validates table length
        prefs = all_preferences(m)
        if any(lot.m != m for lot in table):
            raise RuleError("unilateral table lotteries have the wrong alternative count")
        for t, truth in enumerate(prefs):
            for d in range(len(prefs)):
                if d != t and not sd_prefers(truth, table[t], table[d]):
                    raise RuleError(
                        "unilateral table is manipulable: reporting "
                        f"{'>'.join(alt_label(a) for a in prefs[d])} beats truthful "
                        f"{'>'.join(alt_label(a) for a in truth)}"
                    )

    @property
    def m(self) -> int:
        for m in range(1, 11):
            if math.factorial(m) == len(self.table):
                return m
        raise RuleError(f"unilateral table has {len(self.table)} entries, not m! for any m")

    def check_dimensions(self, m, n):
        if m != self.m:
            raise DimensionError(f"unilateral table is for m={self.m}, profile has m={m}")
        if self.voter >= n:
            raise DimensionError(f"unilateral voter {self.voter} outside profile with n={n}")

    def evaluate(self, profile):
        prefs = all_preferences(profile.m)
        idx = prefs.index(profile.voters[self.voter])
        return self.table[idx]

    @property
    def strategyproof_by_construction(self):
        return True


@dataclass(frozen=True)
class MixtureSds(SdsSpec):
    """Exact convex combination of component rules."""

    components: tuple[tuple[Fraction, SdsSpec], ...]

    family = "mixture"

    def __post_init__(self):
        components = tuple((frac(w), spec) for w, spec in self.components)
        object.__setattr__(self, "components", components)
        if not components:
            raise RuleError("mixture needs at least one component")
        if any(w < 0 for w, _ in components):
            raise RuleError("mixture weights must be nonnegative")
        if sum(w for w, _ in components) != 1:
            raise RuleError(
                f"mixture weights sum to {sum(w for w, _ in components)}, not 1"
            )

    def check_dimensions(self, m, n):
        for _, spec in self.components:
            spec.check_dimensions(m, n)

    def evaluate(self, profile):
        return mix_lotteries((w, spec.evaluate(profile)) for w, spec in self.components)

    def prob(self, profile, x, support=None):
        return sum(w * spec.prob(profile, x, support) for w, spec in self.components)

    @property
    def strategyproof_by_construction(self):
        return all(spec.strategyproof_by_construction for _, spec in self.components)


# ---------------------------------------------------------------------------
# zoo rules (axiom-separation examples)


def _require_zoo_m(m: int):
    if m < 3:
        raise ScopeError("zoo rules are defined for m >= 3 only")


@dataclass(frozen=True)
class Cond2mSds(SdsSpec):
    """Condorcet winner gets ``2/m``; the rest is split uniformly.

    Profiles without a Condorcet winner get the uniform lottery, which keeps
    the rule anonymous and neutral; it fails strategyproofness alone.
    """

    family = "cond2m"

    def check_dimensions(self, m, n):
        _require_zoo_m(m)

    def evaluate(self, profile):
        from .axioms import condorcet_winner

        m = profile.m
        _require_zoo_m(m)
        winner = condorcet_winner(profile)
        if winner is None:
            return Lottery.uniform(m)
        rest = Fraction(1 - Fraction(2, m), m - 1)
        return Lottery(tuple(Fraction(2, m) if x == winner else rest for x in range(m)))


@dataclass(frozen=True)
class CyclicPairwiseSds(SdsSpec):
    """Majority winner of a uniformly random consecutive pair in a fixed cycle.

    Each pair ``(order[i], order[i+1 mod m])`` carries weight ``1/m``; the
    pair's majority winner takes it, a tie splits it.  Anonymous and
    strategyproof (it is a mixture of monotone duples) but not neutral once
    ``m >= 4``, because non-consecutive pairs are never compared.
    """

    order: tuple[int, ...]

    family = "cyclic_pairwise"

    def __post_init__(self):
        order = tuple(self.order)
        object.__setattr__(self, "order", order)
        if sorted(order) != list(range(len(order))):
            raise RuleError(f"cycle order {order} is not a permutation of the alternatives")
        _require_zoo_m(len(order))

    def check_dimensions(self, m, n):
        if m != len(self.order):
            raise DimensionError(
                f"cycle order covers {len(self.order)} alternatives, profile has {m}"
            )

    def evaluate(self, profile):
        m = profile.m
        support = support_matrix(profile)
        probs = [Fraction(0)] * m
        share = Fraction(1, m)
        for i in range(m):
            x = self.order[i]
            y = self.order[(i + 1) % m]
            if support[x][y] > support[y][x]:
                probs[x] += share
            elif support[x][y] < support[y][x]:
                probs[y] += share
            else:
                probs[x] += share / 2
                probs[y] += share / 2
        return Lottery(tuple(probs))

    @property
    def strategyproof_by_construction(self):
        return True


@dataclass(frozen=True)
class DropVoterCopelandSds(SdsSpec):
    """Randomized Copeland computed with one voter's ballot ignored.

    Strategyproof (the ignored voter has no influence, everyone else faces
    randomized Copeland on the rest) but not anonymous.
    """

    ignored: int

    family = "drop_voter_copeland"

    def __post_init__(self):
        if self.ignored < 0:
            raise RuleError(f"bad voter index {self.ignored}")

    def check_dimensions(self, m, n):
        _require_zoo_m(m)
        if self.ignored >= n:
            raise DimensionError(f"ignored voter {self.ignored} outside profile with n={n}")
        if n < 2:
            raise DimensionError("dropping a voter needs at least two voters")

    def _reduced(self, profile):
        voters = profile.voters[: self.ignored] + profile.voters[self.ignored + 1:]
        return Profile(profile.m, voters)

    def evaluate(self, profile):
        self.check_dimensions(profile.m, profile.n)
        return RandomizedCopelandSds().evaluate(self._reduced(profile))

    def prob(self, profile, x, support=None):
        return RandomizedCopelandSds().prob(self._reduced(profile), x)

    @property
    def strategyproof_by_construction(self):
        return True


# ---------------------------------------------------------------------------
# tabulated rules


@dataclass(frozen=True, eq=False)
class TabulatedSds(SdsSpec):
    """An explicit profile -> lottery table over all ``(m!)**n`` profiles.

    Identity-hashed (tables are large); compare tables with ``same_table``.
    """

    m: int
    n: int
    table: dict

    family = "tabulated"

    def __post_init__(self):
        if len(self.table) != profile_count(self.m, self.n):
            raise RuleError(
                f"tabulated rule needs all {profile_count(self.m, self.n)} profiles, "
                f"got {len(self.table)}"
            )

    def check_dimensions(self, m, n):
        if m != self.m or n != self.n:
            raise DimensionError(
                f"tabulation is for (m={self.m}, n={self.n}), profile is (m={m}, n={n})"
            )

    def evaluate(self, profile):
        try:
            return self.table[profile]
        except KeyError:
            raise RuleError(f"tabulation is missing profile {format_profile(profile)}") from None

    def same_table(self, other: "TabulatedSds") -> bool:
        return self.m == other.m and self.n == other.n and self.table == other.table


def tabulate(spec: SdsSpec, m: int, n: int, budget=None) -> TabulatedSds:
    """Materialize ``spec`` as an explicit table over every profile."""
    spec.check_dimensions(m, n)
    check_budget(profile_count(m, n), budget)
    table = {}
    for profile in enumerate_profiles(m, n, budget=budget):
        table[profile] = spec.evaluate(profile)
    return TabulatedSds(m, n, table)


# ---------------------------------------------------------------------------
# constructors (validating, coercion-friendly)


def make_point_voting(scores) -> PointVotingSds:
    return PointVotingSds(_coerce_vector(scores))


def make_supporting_size(scores) -> SupportingSizeSds:
    return SupportingSizeSds(_coerce_vector(scores))


def make_random_dictatorship(weights) -> RandomDictatorshipSds:
    return RandomDictatorshipSds(_coerce_vector(weights))


def make_duple(x: int, y: int, g) -> DupleSds:
    return DupleSds(x, y, _coerce_vector(g))


def make_unilateral(voter: int, table) -> UnilateralSds:
    """Build a unilateral from a sequence or ``{ranking: lottery}`` mapping.

    Mapping keys are rankings (tuples); the table must cover every ranking.
    Manipulable tables are rejected.
    """
    if hasattr(table, "keys"):
        some_key = next(iter(table))
        prefs = all_preferences(len(some_key))
        if set(table.keys()) != set(prefs):
            raise RuleError("unilateral table must cover every ranking exactly once")
        table = tuple(table[p] for p in prefs)
    return UnilateralSds(voter, tuple(table))


def make_mixture(components) -> MixtureSds:
    return MixtureSds(tuple((frac(w), spec) for w, spec in components))


def make_zoo(name: str, **params) -> SdsSpec:
    """Construct a zoo rule: ``cond2m``, ``cyclic_pairwise``, or ``drop_voter_copeland``."""
    if name == "cond2m":
        return Cond2mSds()
    if name == "cyclic_pairwise":
        return CyclicPairwiseSds(tuple(params["order"]))
    if name == "drop_voter_copeland":
        return DropVoterCopelandSds(int(params["ignored"]))
    raise RuleError(f"unknown zoo rule {name!r}")


# ---------------------------------------------------------------------------
# named registry


REGISTRY_NAMES = (
    "rd-uniform",
    "uniform",
    "borda",
    "copeland",
    "cond2m",
    "cyclic",
    "drop-voter",
)


def registry_rule(name: str, m: int, n: int) -> SdsSpec:
    """Instantiate a named rule for the given scope."""
    if name == "rd-uniform":
        return make_random_dictatorship([Fraction(1, n)] * n)
    if name == "uniform":
        return UniformLotterySds()
    if name == "borda":
        return RandomizedBordaSds()
    if name == "copeland":
        return RandomizedCopelandSds()
    if name == "cond2m":
        return Cond2mSds()
    if name == "cyclic":
        return CyclicPairwiseSds(tuple(range(m)))
    if name == "drop-voter":
        return DropVoterCopelandSds(n - 1)
    raise RuleError(f"unknown rule name {name!r}; known: {', '.join(REGISTRY_NAMES)}")


def registry(m: int, n: int) -> dict[str, SdsSpec]:
    """All named rules that are well-defined at (m, n)."""
    rules = {}
    for name in REGISTRY_NAMES:
        if m < 3 and name in ("cond2m", "cyclic", "drop-voter"):
            continue
        if n < 2 and name == "drop-voter":
            continue
        rules[name] = registry_rule(name, m, n)
    return rules


# ---------------------------------------------------------------------------
# JSON descriptors


def rule_to_json(spec: SdsSpec) -> dict:
    """Serializable descriptor, e.g. ``{"family": "supporting_size", "b": [...]}``."""
    if isinstance(spec, PointVotingSds):
        return {"family": "point_voting", "a": [str(s) for s in spec.scores]}
    if isinstance(spec, SupportingSizeSds):
        return {"family": "supporting_size", "b": [str(s) for s in spec.scores]}
    if isinstance(spec, RandomDictatorshipSds):
        return {"family": "random_dictatorship", "weights": [str(w) for w in spec.weights]}
    if isinstance(spec, UniformLotterySds):
        return {"family": "uniform"}
    if isinstance(spec, RandomizedBordaSds):
        return {"family": "borda"}
    if isinstance(spec, RandomizedCopelandSds):
        return {"family": "copeland"}
    if isinstance(spec, Cond2mSds):
        return {"family": "cond2m"}
    if isinstance(spec, CyclicPairwiseSds):
        return {"family": "cyclic_pairwise", "order": [alt_label(x) for x in spec.order]}
    if isinstance(spec, DropVoterCopelandSds):
        return {"family": "drop_voter_copeland", "ignored": spec.ignored + 1}
    if isinstance(spec, DupleSds):
        return {
            "family": "duple",
            "x": alt_label(spec.x),
            "y": alt_label(spec.y),
            "g": [str(v) for v in spec.g],
        }
    if isinstance(spec, MixtureSds):
        return {
            "family": "mixture",
            "components": [
                {"weight": str(w), "rule": rule_to_json(s)} for w, s in spec.components
            ],
        }
    if isinstance(spec, UnilateralSds):
        prefs = all_preferences(spec.m)
        return {
            "family": "unilateral",
            "voter": spec.voter + 1,
            "table": {
                ">".join(alt_label(a) for a in pref): spec.table[i].as_dict()
                for i, pref in enumerate(prefs)
            },
        }
    raise RuleError(f"cannot serialize rule family {spec.family!r}")


def _label_index(label: str) -> int:
    label = label.strip()
    if len(label) == 1 and label.islower():
        return ord(label) - ord("a")
    raise RuleError(f"bad alternative label {label!r}")


def rule_from_json(data: dict) -> SdsSpec:
    """Inverse of ``rule_to_json``."""
    family = data.get("family")
    if family == "point_voting":
        return make_point_voting(data["a"])
    if family == "supporting_size":
        return make_supporting_size(data["b"])
    if family == "random_dictatorship":
        return make_random_dictatorship(data["weights"])
    if family == "uniform":
        return UniformLotterySds()
    if family == "borda":
        return RandomizedBordaSds()
    if family == "copeland":
        return RandomizedCopelandSds()
    if family == "cond2m":
        return Cond2mSds()
    if family == "cyclic_pairwise":
        return CyclicPairwiseSds(tuple(_label_index(x) for x in data["order"]))
    if family == "drop_voter_copeland":
        return DropVoterCopelandSds(int(data["ignored"]) - 1)
    if family == "duple":
        return make_duple(_label_index(data["x"]), _label_index(data["y"]), data["g"])
    if family == "mixture":
        return make_mixture(
            (c["weight"], rule_from_json(c["rule"])) for c in data["components"]
        )
    if family == "unilateral":
        table = {}
        for key, lot in data["table"].items():
            pref = tuple(_label_index(t) for t in key.split(">"))
            table[pref] = Lottery(tuple(frac(lot[alt_label(x)]) for x in range(len(pref))))
        return make_unilateral(int(data["voter"]) - 1, table)
    raise RuleError(f"unknown rule family {family!r}")


def tabulation_to_jsonl(tab: TabulatedSds) -> str:
    """One JSON object per line: ``{"profile": ..., "lottery": {...}}``."""
    import json

    lines = []
    for profile in enumerate_profiles(tab.m, tab.n):
        lines.append(
            json.dumps(
                {"profile": format_profile(profile), "lottery": tab.table[profile].as_dict()},
                separators=(",", ":"),
            )
        )
    return "\n".join(lines) + "\n"


def tabulation_from_jsonl(text: str) -> TabulatedSds:
    import json

    table = {}
    m = None
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        data = json.loads(line)
        profile = parse_profile(data["profile"])
        if m is None:
            m = profile.m
        lottery = Lottery(
            tuple(frac(data["lottery"][alt_label(x)]) for x in range(profile.m))
        )
        table[profile] = lottery
    if not table:
        raise RuleError("empty tabulation")
    n = next(iter(table)).n
    return TabulatedSds(m, n, table)
