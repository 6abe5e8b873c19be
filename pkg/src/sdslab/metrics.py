"""Exact measurement of the three relaxation parameters and the bound checks.

For a rule ``f`` over a fixed scope (m, n):

* alpha: the worst-case probability the rule gives a Condorcet winner
  (minimum of ``f(R, winner)`` over every profile with one).
* beta: the worst-case probability a Pareto-dominated alternative receives
  (maximum of ``f(R, x)`` over dominated ``x``).
* gamma: the dictatorship share.  For strategyproof rules this is determined
  per voter: ``gamma_i`` is the minimum, over profiles where voter ``i``
  swaps their two best alternatives, of the probability gained by the
  promoted alternative.  The rule then splits exactly as
  ``f = sum_i gamma_i d_i + (1 - gamma) g`` with ``g`` strategyproof, and
  ``g`` is returned as a tabulated residual.

All values are exact; argmin/argmax witnesses are the first attaining the
optimum in enumeration order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import _engine
from .axioms import audit_strategyproof, is_strategyproof
from .budget import check_budget
from .errors import NotStrategyproofError, ScopeError
from .lotteries import Lottery
from .profiles import Profile, profile_count
from .rules import SdsSpec, TabulatedSds


@dataclass(frozen=True)
class AlphaResult:
    value: Fraction
    profile: Profile          # minimizing profile
    winner: int               # its Condorcet winner

    def to_json(self):
        from .profiles import alt_label, format_profile

        return {
            "value": str(self.value),
            "profile": format_profile(self.profile),
            "winner": alt_label(self.winner),
        }


@dataclass(frozen=True)
class BetaResult:
    value: Fraction
    profile: Optional[Profile]      # maximizing profile (None if vacuous)
    alternative: Optional[int]      # the dominated alternative
    vacuous: bool = False

    def to_json(self):
        from .profiles import alt_label, format_profile

        out = {"value": str(self.value), "vacuous": self.vacuous}
        if self.profile is not None:
            out["profile"] = format_profile(self.profile)
            out["alternative"] = alt_label(self.alternative)
        return out


@dataclass(frozen=True)
class GammaResult:
    value: Fraction
    per_voter: tuple[Fraction, ...]
    witnesses: tuple                 # per voter: (profile, best, second) attaining gamma_i
    residual: Optional[TabulatedSds]  # None when gamma == 1

    def to_json(self):
        from .profiles import alt_label, format_profile

        return {
            "value": str(self.value),
            "per_voter": [str(g) for g in self.per_voter],
            "witnesses": [
                {
                    "voter": i + 1,
                    "profile": format_profile(profile),
                    "best": alt_label(x),
                    "second": alt_label(y),
                }
                for i, (profile, x, y) in enumerate(self.witnesses)
            ],
            "residual": "none" if self.residual is None else "tabulated",
        }


@dataclass(frozen=True)
class MetricsReport:
    m: int
    n: int
    mode: str
    alpha: Optional[AlphaResult] = None
    beta: Optional[BetaResult] = None
    gamma: Optional[GammaResult] = None

    def to_json(self):
        out = {"m": self.m, "n": self.n, "mode": self.mode}
        if self.alpha is not None:
            out["alpha"] = self.alpha.to_json()
        if self.beta is not None:
            out["beta"] = self.beta.to_json()
        if self.gamma is not None:
            out["gamma"] = self.gamma.to_json()
        return out


def _sweep(m, n, mode, budget):
    """Yield ``(combo, support)`` over the requested enumeration mode."""
    check_budget(profile_count(m, n, mode), budget)
    data = _engine.pref_data(m)
    if mode == "full":
        combos = _engine.iter_combos(m, n)
    elif mode == "anonymous":
        combos = itertools.combinations_with_replacement(range(len(data.prefs)), n)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for combo in combos:
        yield combo, _engine.accumulate_support(combo, data.beats, m)


def measure_alpha(spec: SdsSpec, m: int, n: int, mode: str = "full", budget=None) -> AlphaResult:
    """Exact minimum probability of a Condorcet winner, with a minimizing profile.

    Anonymous mode enumerates one profile per preference multiset; use it only
    for rules that pass the anonymity audit (the minimum is orbit-invariant
    for those).
    """
    spec.check_dimensions(m, n)
    best = None
    witness = None
    data = _engine.pref_data(m)
    for combo, sup in _sweep(m, n, mode, budget):
        winner = _engine.condorcet_winner_from_support(sup, m, n)
        if winner is None:
            continue
        profile = _engine.profile_from_combo(m, combo)
        value = spec.prob(profile, winner, tuple(tuple(r) for r in sup))
        if best is None or value < best:
            best = value
            witness = (profile, winner)
    if best is None:
        raise ScopeError(f"no profile with a Condorcet winner in scope (m={m}, n={n})")
    return AlphaResult(value=best, profile=witness[0], winner=witness[1])


def measure_beta(spec: SdsSpec, m: int, n: int, mode: str = "full", budget=None) -> BetaResult:
    """Exact maximum probability of a Pareto-dominated alternative."""
    spec.check_dimensions(m, n)
    best = None
    witness = None
    for combo, sup in _sweep(m, n, mode, budget):
        dominated = _engine.dominated_alternatives(sup, m, n)
        if not dominated:
            continue
        profile = None
        for y in dominated:
            if profile is None:
                profile = _engine.profile_from_combo(m, combo)
            value = spec.prob(profile, y, tuple(tuple(r) for r in sup))
            if best is None or value > best:
                best = value
                witness = (profile, y)
    if best is None:
        return BetaResult(value=Fraction(0), profile=None, alternative=None, vacuous=True)
    return BetaResult(value=best, profile=witness[0], alternative=witness[1])


def measure_gamma(spec: SdsSpec, m: int, n: int, budget=None) -> GammaResult:
    """Per-voter dictatorship shares, their sum, and the strategyproof residual.

    Requires a strategyproof rule: the decomposition is characterized only
    for those, and the audit runs first (raising ``NotStrategyproofError``
    with the manipulation witness otherwise).
    """
    spec.check_dimensions(m, n)
    if m < 2:
        raise ScopeError("gamma needs at least two alternatives")
    report = audit_strategyproof(spec, m, n, budget=budget)
    if not report.holds():
        raise NotStrategyproofError(report.witness("strategyproofness"))
    table = _engine.int_table(spec, m, n, budget=budget)
    data = _engine.pref_data(m)
    weights = _engine.radix_weights(m, n)
    minima = [None] * n
    witnesses = [None] * n
    k = -1
    for combo in _engine.iter_combos(m, n):
        k += 1
        row = table.rows[k]
        for i in range(n):
            t = combo[i]
            swapped = data.topswap[t]
            y = data.prefs[t][1]  # promoted alternative
            diff = table.rows[k + (swapped - t) * weights[i]][y] - row[y]
            if minima[i] is None or diff < minima[i]:
                minima[i] = diff
                witnesses[i] = (combo, data.prefs[t][0], y)
    per_voter = tuple(Fraction(v, table.denom) for v in minima)
    gamma = sum(per_voter)
    witness_profiles = tuple(
        (_engine.profile_from_combo(m, combo), x, y) for combo, x, y in witnesses
    )
    residual = None
    if gamma < 1:
        residual = _residual_table(spec, m, n, table, per_voter, gamma)
    elif gamma > 1:
        raise AssertionError("per-voter shares exceed 1; rule cannot be strategyproof")
    return GammaResult(
        value=gamma, per_voter=per_voter, witnesses=witness_profiles, residual=residual
    )


def _residual_table(spec, m, n, table, per_voter, gamma):
    """Tabulate ``g = (f - sum_i gamma_i d_i) / (1 - gamma)`` and validate it."""
    scale = 1 - gamma
    data = _engine.pref_data(m)
    residual = {}
    k = -1
    for combo in _engine.iter_combos(m, n):
        k += 1
        probs = [Fraction(v, table.denom) for v in table.rows[k]]
        for i, t in enumerate(combo):
            probs[data.prefs[t][0]] -= per_voter[i]
        lottery = [p / scale for p in probs]
        if any(p < 0 for p in lottery) or sum(lottery) != 1:
            raise AssertionError(
                "residual is not a lottery; the per-voter shares are inconsistent "
                "(impossible for a strategyproof input)"
            )
        residual[_engine.profile_from_combo(m, combo)] = Lottery(tuple(lottery))
    return TabulatedSds(m, n, residual)


def measure(
    spec: SdsSpec,
    m: int,
    n: int,
    metrics=("alpha", "beta", "gamma"),
    mode: str = "full",
    budget=None,
) -> MetricsReport:
    """Bundle the requested metrics into one report."""
    alpha = beta = gamma = None
    if "alpha" in metrics:
        alpha = measure_alpha(spec, m, n, mode=mode, budget=budget)
    if "beta" in metrics:
        beta = measure_beta(spec, m, n, mode=mode, budget=budget)
    if "gamma" in metrics:
        gamma = measure_gamma(spec, m, n, budget=budget)
    return MetricsReport(m=m, n=n, mode=mode, alpha=alpha, beta=beta, gamma=gamma)


# ---------------------------------------------------------------------------
# bound checks


@dataclass(frozen=True)
class BoundCheck:
    status: str                      # "holds" | "violated" | "skipped"
    detail: str

    def to_json(self):
        return {"status": self.status, "detail": self.detail}


@dataclass(frozen=True)
class BoundsReport:
    """Verdicts for the three theorem bounds at one scope.

    * ``alpha_cap``: a strategyproof rule's alpha never exceeds ``2/m``.
    * ``dictatorship_floor``: ``gamma >= 1 - m * beta``; the more efficient a
      strategyproof rule, the closer it must be to a random dictatorship.
    * ``efficiency_tradeoff``: ``beta >= (m-2)/(m-1) * alpha``.
    """

    alpha_cap: BoundCheck
    dictatorship_floor: BoundCheck
    efficiency_tradeoff: BoundCheck

    def all_hold(self) -> bool:
        return all(
            check.status != "violated"
            for check in (self.alpha_cap, self.dictatorship_floor, self.efficiency_tradeoff)
        )

    def to_json(self):
        return {
            "alpha_cap": self.alpha_cap.to_json(),
            "dictatorship_floor": self.dictatorship_floor.to_json(),
            "efficiency_tradeoff": self.efficiency_tradeoff.to_json(),
        }


def verify_theorem_bounds(report: MetricsReport, strategyproof: bool) -> BoundsReport:
    """Check each bound exactly against measured values, or record why it is skipped."""
    m, n = report.m, report.n

    def skipped(reason):
        return BoundCheck(status="skipped", detail=reason)

    def decide(ok, detail):
        return BoundCheck(status="holds" if ok else "violated", detail=detail)

    if not strategyproof:
        why = "rule is not strategyproof in scope; bounds do not apply"
        return BoundsReport(skipped(why), skipped(why), skipped(why))

    if n < 3:
        alpha_cap = skipped("needs at least 3 voters")
    elif report.alpha is None:
        alpha_cap = skipped("alpha not measured")
    else:
        bound = Fraction(2, m)
        alpha_cap = decide(
            report.alpha.value <= bound,
            f"alpha = {report.alpha.value}, cap 2/m = {bound}",
        )

    if m < 3:
        floor = skipped("needs at least 3 alternatives")
    elif report.beta is None or report.gamma is None:
        floor = skipped("beta and gamma not both measured")
    else:
        bound = 1 - m * report.beta.value
        floor = decide(
            report.gamma.value >= bound,
            f"gamma = {report.gamma.value}, floor 1 - m*beta = {bound}",
        )

    if m < 4:
        tradeoff = skipped("needs at least 4 alternatives")
    elif n != 3 and n < 5:
        tradeoff = skipped("needs n >= 5 or n == 3")
    elif report.alpha is None or report.beta is None:
        tradeoff = skipped("alpha and beta not both measured")
    else:
        bound = Fraction(m - 2, m - 1) * report.alpha.value
        tradeoff = decide(
            report.beta.value >= bound,
            f"beta = {report.beta.value}, floor (m-2)/(m-1)*alpha = {bound}",
        )

    return BoundsReport(
        alpha_cap=alpha_cap, dictatorship_floor=floor, efficiency_tradeoff=tradeoff
    )


# ---------------------------------------------------------------------------
# closed forms for the four named rules


def known_metric_formulas(name: str, m: int, n: int) -> dict:
    """Closed-form (alpha, beta, gamma) for the named rules, where applicable.

    Returns ``{"alpha": Fraction | None, ...}``; ``None`` marks a cell whose
    closed form does not apply at this scope (the measured value still
    exists).  The uniform random dictatorship's ``alpha = 0`` needs
    ``m >= 4`` and ``n`` outside {2, 4}: in the excluded scopes a Condorcet
    winner is necessarily some voter's top choice.
    """
    two = Fraction(2)
    if name == "rd-uniform":
        alpha = Fraction(0) if (m >= 4 and n not in (2, 4)) else None
        return {"alpha": alpha, "beta": Fraction(0), "gamma": Fraction(1)}
    if name == "uniform":
        return {"alpha": Fraction(1, m), "beta": Fraction(1, m), "gamma": Fraction(0)}
    if name == "borda":
        return {
            "alpha": Fraction(1, m) + Fraction(2 - (n % 2), m * n),
            "beta": two * (m - 2) / (m * (m - 1)),
            "gamma": two / (m * (m - 1)),
        }
    if name == "copeland":
        return {
            "alpha": Fraction(2, m),
            "beta": two * (m - 2) / (m * (m - 1)),
            "gamma": Fraction(0),
        }
    raise ValueError(f"no closed forms for rule {name!r}")
