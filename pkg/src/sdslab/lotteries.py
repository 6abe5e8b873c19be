"""Lotteries over alternatives and the stochastic-dominance comparison.

A lottery is an exact probability distribution: a tuple of ``Fraction``
values, one per alternative, that are nonnegative and sum to exactly 1.
No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


def frac(value) -> Fraction:
    """Coerce ints, strings like ``"2/3"``, and Fractions to ``Fraction``.

    Floats are rejected: exactness is a hard requirement, and a float that
    looks like 1/3 is not 1/3.
    """
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction, int, or string")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class Lottery:
    """An exact probability distribution over alternatives 0..m-1."""

    probs: tuple[Fraction, ...]

    def __post_init__(self):
        probs = tuple(frac(p) for p in self.probs)
        object.__setattr__(self, "probs", probs)
        if not probs:
            raise ValueError("lottery needs at least one alternative")
        if any(p < 0 for p in probs):
            raise ValueError(f"negative probability in {probs}")
        if sum(probs) != 1:
            raise ValueError(f"probabilities sum to {sum(probs)}, not 1")

    @property
    def m(self) -> int:
        return len(self.probs)

    def __getitem__(self, x: int) -> Fraction:
        return self.probs[x]

    def __iter__(self):
        return iter(self.probs)

    def support(self) -> tuple[int, ...]:
        return tuple(x for x, p in enumerate(self.probs) if p > 0)

    def as_dict(self, labels=None) -> dict[str, str]:
        """Render as a label -> exact fraction string mapping, e.g. ``{"a": "2/3"}``."""
        if labels is None:
            from .profiles import alt_label

            labels = [alt_label(x) for x in range(self.m)]
        return {labels[x]: str(p) for x, p in enumerate(self.probs)}

    @staticmethod
    def uniform(m: int) -> "Lottery":
        return Lottery(tuple(Fraction(1, m) for _ in range(m)))

    @staticmethod
    def degenerate(m: int, x: int) -> "Lottery":
        if not 0 <= x < m:
            raise ValueError(f"alternative {x} outside 0..{m - 1}")
        return Lottery(tuple(Fraction(int(i == x)) for i in range(m)))


def lottery_from_scores(scores) -> Lottery:
    """Normalize nonnegative scores into a lottery, exactly.

    ``scores`` is a sequence indexed by alternative, or a mapping from
    alternative index to score covering every alternative.
    """
    if hasattr(scores, "keys"):
        m = len(scores)
        if sorted(scores.keys()) != list(range(m)):
            raise ValueError("score mapping must cover alternatives 0..m-1 exactly")
        values = [frac(scores[x]) for x in range(m)]
    else:
        values = [frac(s) for s in scores]
    if any(v < 0 for v in values):
        raise ValueError("scores must be nonnegative")
    total = sum(values)
    if total == 0:
        raise ValueError("scores are all zero; nothing to normalize")
    return Lottery(tuple(v / total for v in values))


def mix_lotteries(pairs) -> Lottery:
    """Exact convex combination of ``(weight, Lottery)`` pairs."""
    pairs = [(frac(w), lot) for w, lot in pairs]
    if not pairs:
        raise ValueError("empty mixture")
    m = pairs[0][1].m
    acc = [Fraction(0)] * m
    for w, lot in pairs:
        if lot.m != m:
            raise ValueError("mixture components over different alternative sets")
        for x in range(m):
            acc[x] += w * lot[x]
    return Lottery(tuple(acc))


def sd_prefers(pref, p: Lottery, q: Lottery) -> bool:
    """Does ``p`` weakly stochastically dominate ``q`` under ranking ``pref``?

    True iff, for every cutoff alternative, the probability that ``p`` puts
    on that alternative or better (per ``pref``, best first) is at least the
    probability ``q`` puts there.  This is a partial order: ``sd_prefers``
    may be False in both directions.
    """
    m = len(pref)
    if p.m != m or q.m != m:
        raise ValueError("lotteries and preference are over different alternative sets")
    sum_p = Fraction(0)
    sum_q = Fraction(0)
    for x in pref[:-1]:
        sum_p += p[x]
        sum_q += q[x]
        if sum_p < sum_q:
            return False
    return True


def sd_failure_cutoff(pref, p: Lottery, q: Lottery):
    """First alternative (in ``pref`` order) whose upper-contour sum witnesses non-dominance.

    Returns None when ``p`` dominates ``q``.
    """
    sum_p = Fraction(0)
    sum_q = Fraction(0)
    for x in pref[:-1]:
        sum_p += p[x]
        sum_q += q[x]
        if sum_p < sum_q:
            return x
    return None
