"""Preferences, profiles, majority tallies, and exhaustive profile enumeration.

A preference is a tuple of alternative indices, best first, covering every
alternative exactly once.  A profile is an ordered tuple of such preferences,
one per voter.  Everything is an immutable value, so profiles can be shared,
hashed, and used as dictionary keys.

Alternatives are dense indices ``0..m-1``; the text format labels them with
single lowercase letters ``a..z`` (capping the *text* format, not the API,
at 26 alternatives).  Voters are 0-based internally and 1-based in reports.
"""

from __future__ import annotations

import itertools
import math
import string
from dataclasses import dataclass
from functools import lru_cache

from .budget import check_budget
from .errors import ProfileFormatError, ScopeError

Preference = tuple[int, ...]

_LETTERS = string.ascii_lowercase


def alt_label(x: int) -> str:
    """Default display label for alternative ``x`` (``0 -> 'a'``)."""
    if 0 <= x < len(_LETTERS):
        return _LETTERS[x]
    return f"x{x}"


def validate_preference(pref, m: int) -> Preference:
    pref = tuple(pref)
    if len(pref) != m or sorted(pref) != list(range(m)):
        raise ValueError(f"{pref} is not a ranking of all {m} alternatives")
    return pref


@dataclass(frozen=True)
class Profile:
    """An ordered list of strict rankings, one per voter."""

    m: int
    voters: tuple[Preference, ...]

    def __post_init__(self):
        voters = tuple(tuple(v) for v in self.voters)
        object.__setattr__(self, "voters", voters)
        if self.m < 1:
            raise ValueError("need at least one alternative")
        if not voters:
            raise ValueError("profile needs at least one voter")
        for pref in voters:
            validate_preference(pref, self.m)

    @property
    def n(self) -> int:
        return len(self.voters)

    def replace_voter(self, i: int, pref) -> "Profile":
        pref = validate_preference(pref, self.m)
        voters = list(self.voters)
        voters[i] = pref
        return Profile(self.m, tuple(voters))

    def format(self, labels=None) -> str:
        return format_profile(self, labels)

    def __str__(self):
        return self.format()


def rank(pref, x: int) -> int:
    """1-based rank of ``x`` in ``pref``: 1 for the top alternative."""
    return pref.index(x) + 1


# ---------------------------------------------------------------------------
# text format


def _parse_ranking(token: str, labels_to_index, m: int) -> Preference:
    parts = [p.strip() for p in token.split(">")]
    if any(not p for p in parts):
        raise ProfileFormatError(f"malformed ranking {token!r}")
    seen = set()
    ranking = []
    for part in parts:
        if part not in labels_to_index:
            raise ProfileFormatError(f"unknown alternative label {part!r} in {token!r}")
        if part in seen:
            raise ProfileFormatError(f"duplicate alternative {part!r} in {token!r}")
        seen.add(part)
        ranking.append(labels_to_index[part])
    if len(ranking) != m:
        missing = sorted(set(labels_to_index) - seen)
        raise ProfileFormatError(f"ranking {token!r} omits alternatives {missing}")
    return tuple(ranking)


def _split_entries(text: str):
    """Yield ``(count, ranking_text)`` entries.

    ``#`` lines are comments; rankings are separated by newlines or ``/``.
    An entry is ``COUNT: x>y>z`` with COUNT optional (default 1).
    Returns the declared header labels, if any, as the second element.
    """
    header = None
    entries = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.startswith("alternatives:"):
            if header is not None:
                raise ProfileFormatError("duplicate alternatives header")
            if entries:
                raise ProfileFormatError("alternatives header must precede rankings")
            header = stripped[len("alternatives:"):].split()
            if not header:
                raise ProfileFormatError("empty alternatives header")
            if len(set(header)) != len(header):
                raise ProfileFormatError("duplicate label in alternatives header")
            continue
        for chunk in stripped.split("/"):
            chunk = chunk.strip()
            if not chunk:
                continue
            count = 1
            body = chunk
            if ":" in chunk:
                head, body = chunk.split(":", 1)
                head = head.strip()
                try:
                    count = int(head)
                except ValueError:
                    raise ProfileFormatError(f"bad voter count {head!r}") from None
                if count < 1:
                    raise ProfileFormatError(f"voter count must be positive, got {count}")
            entries.append((count, body.strip()))
    return entries, header


def parse_profile_with_labels(text: str):
    """Parse profile text, returning ``(Profile, labels)``.

    Without an ``alternatives:`` header the alternative set is the union of
    labels appearing in the rankings, indexed in sorted label order.
    """
    entries, header = _split_entries(text)
    if not entries:
        raise ProfileFormatError("no voters in profile text")
    if header is not None:
        labels = tuple(header)
    else:
        seen = set()
        for _, body in entries:
            seen.update(p.strip() for p in body.split(">"))
        labels = tuple(sorted(seen))
    labels_to_index = {lab: i for i, lab in enumerate(labels)}
    m = len(labels)
    voters = []
    for count, body in entries:
        ranking = _parse_ranking(body, labels_to_index, m)
        voters.extend([ranking] * count)
    return Profile(m, tuple(voters)), labels


def parse_profile(text: str) -> Profile:
    """Parse the profile text format (see ``parse_profile_with_labels``)."""
    return parse_profile_with_labels(text)[0]


def format_profile(profile: Profile, labels=None) -> str:
    """One-line rendering, rankings separated by `` / ``."""
    if labels is None:
        labels = [alt_label(x) for x in range(profile.m)]
    return " / ".join(">".join(labels[x] for x in pref) for pref in profile.voters)


# ---------------------------------------------------------------------------
# tallies


@dataclass(frozen=True)
class MajorityTally:
    """Supporting sizes and sorted rank vectors of a profile.

    ``support[x][y]`` is the number of voters preferring ``x`` to ``y``;
    ``rank_vectors[x]`` lists the per-voter ranks of ``x`` in ascending order.
    """

    n: int
    support: tuple[tuple[int, ...], ...]
    rank_vectors: tuple[tuple[int, ...], ...]

    def beats(self, x: int, y: int) -> bool:
        return self.support[x][y] > self.support[y][x]

    def ties(self, x: int, y: int) -> bool:
        return self.support[x][y] == self.support[y][x]


def support_matrix(profile: Profile) -> tuple[tuple[int, ...], ...]:
    """Supporting sizes only; cheaper than a full ``majority_tally``."""
    m = profile.m
    counts = [[0] * m for _ in range(m)]
    for pref in profile.voters:
        for i, x in enumerate(pref):
            row = counts[x]
            for y in pref[i + 1:]:
                row[y] += 1
    return tuple(tuple(row) for row in counts)


def majority_tally(profile: Profile) -> MajorityTally:
    m = profile.m
    ranks = [[] for _ in range(m)]
    for pref in profile.voters:
        for pos, x in enumerate(pref):
            ranks[x].append(pos + 1)
    return MajorityTally(
        n=profile.n,
        support=support_matrix(profile),
        rank_vectors=tuple(tuple(sorted(r)) for r in ranks),
    )


# ---------------------------------------------------------------------------
# local profile edits and symmetries


def adjacent_swap(profile: Profile, i: int, x: int, y: int) -> Profile:
    """The profile in which voter ``i`` reinforces ``y`` against ``x``.

    Requires ``x`` to sit immediately above ``y`` in voter ``i``'s ranking;
    the two are exchanged and everything else is untouched.
    """
    if not 0 <= i < profile.n:
        raise ValueError(f"voter {i} outside 0..{profile.n - 1}")
    pref = profile.voters[i]
    pos = pref.index(x)
    if pos + 1 >= len(pref) or pref[pos + 1] != y:
        raise ValueError(
            f"{alt_label(x)} does not immediately precede {alt_label(y)} "
            f"in voter {i + 1}'s ranking"
        )
    swapped = pref[:pos] + (y, x) + pref[pos + 2:]
    return profile.replace_voter(i, swapped)


@dataclass(frozen=True)
class SymmetryMap:
    """A voter permutation paired with an alternative relabeling."""

    voter_perm: tuple[int, ...]
    alt_perm: tuple[int, ...]

    def __post_init__(self):
        for name, perm in (("voter_perm", self.voter_perm), ("alt_perm", self.alt_perm)):
            perm = tuple(perm)
            object.__setattr__(self, name, perm)
            if sorted(perm) != list(range(len(perm))):
                raise ValueError(f"{name} {perm} is not a permutation")


def apply_symmetry(profile: Profile, sym: SymmetryMap) -> Profile:
    """Relabel alternatives by ``alt_perm`` and reseat voters by ``voter_perm``.

    Voter ``perm[i]`` of the result holds voter ``i``'s ranking with every
    alternative ``x`` replaced by ``alt_perm[x]``.
    """
    if len(sym.voter_perm) != profile.n or len(sym.alt_perm) != profile.m:
        raise ValueError("permutation sizes do not match the profile")
    tau = sym.alt_perm
    voters = [None] * profile.n
    for i, pref in enumerate(profile.voters):
        voters[sym.voter_perm[i]] = tuple(tau[x] for x in pref)
    return Profile(profile.m, tuple(voters))


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def all_preferences(m: int) -> tuple[Preference, ...]:
    """All ``m!`` strict rankings in lexicographic order."""
    if m < 1:
        raise ScopeError("need at least one alternative")
    if m > 10:
        raise ScopeError(f"refusing to materialize {m}! preferences")
    return tuple(itertools.permutations(range(m)))


def profile_count(m: int, n: int, mode: str = "full") -> int:
    """Number of profiles the enumerator would yield."""
    if mode == "full":
        return math.factorial(m) ** n
    if mode == "anonymous":
        return math.comb(math.factorial(m) + n - 1, n)
    raise ValueError(f"unknown mode {mode!r}")


def enumerate_profiles(m: int, n: int, budget=None):
    """Yield every profile over ``m`` alternatives and ``n`` voters exactly once.

    Profiles appear in lexicographic order of their voters' rankings; the
    position of a profile in this stream is the index used by
    ``profile_index`` / ``profile_at``, so ranges of indices partition the
    stream deterministically.
    """
    check_budget(profile_count(m, n, "full"), budget)
    prefs = all_preferences(m)
    for combo in itertools.product(prefs, repeat=n):
        yield Profile(m, combo)


def enumerate_profiles_anonymous(m: int, n: int, budget=None):
    """Yield ``(profile, multiplicity)`` for one representative per preference multiset.

    The representative's voters are sorted lexicographically; the multiplicity
    is the number of full-mode profiles with that multiset, so multiplicities
    sum to ``(m!)**n``.
    """
    check_budget(profile_count(m, n, "anonymous"), budget)
    prefs = all_preferences(m)
    n_fact = math.factorial(n)
    for combo in itertools.combinations_with_replacement(range(len(prefs)), n):
        mult = n_fact
        for _, group in itertools.groupby(combo):
            mult //= math.factorial(sum(1 for _ in group))
        yield Profile(m, tuple(prefs[r] for r in combo)), mult


def profile_index(profile: Profile) -> int:
    """Position of ``profile`` in the full enumeration order (a pure bijection)."""
    prefs = all_preferences(profile.m)
    lookup = {p: i for i, p in enumerate(prefs)}
    index = 0
    for pref in profile.voters:
        index = index * len(prefs) + lookup[pref]
    return index


def profile_at(m: int, n: int, index: int) -> Profile:
    """Inverse of ``profile_index``."""
    prefs = all_preferences(m)
    base = len(prefs)
    if not 0 <= index < base**n:
        raise ValueError(f"index {index} outside 0..{base ** n - 1}")
    digits = []
    for _ in range(n):
        index, digit = divmod(index, base)
        digits.append(digit)
    return Profile(m, tuple(prefs[d] for d in reversed(digits)))
