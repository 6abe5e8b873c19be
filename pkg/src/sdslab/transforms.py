"""Constructive machinery: symmetrization, scoring decomposition, proof-profile builders.

* ``symmetrize`` averages a rule over every voter permutation and every
  alternative relabeling, yielding an anonymous, neutral rule that keeps
  strategyproofness and never lowers the Condorcet-winner guarantee.
* ``decompose_scoring`` inverts the representation theorem for anonymous,
  neutral, strategyproof rules: it recovers an exact convex split
  ``lambda * point_voting + (1 - lambda) * supporting_size`` from a
  tabulation, reports the full feasible lambda interval, and flags
  non-uniqueness (the Borda-style ambiguity where both families express the
  same rule).
* profile builders reproduce the constructions used to establish the bounds:
  profiles with the maximum number of Condorcet-winner candidates, profiles
  whose Condorcet winner is never top-ranked and wins only minimally, and
  unanimous profiles.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import _engine
from .budget import check_budget
from .errors import InfeasibleDecompositionError, ScopeError
from .linsolve import solve_affine
from .lotteries import Lottery
from .profiles import Profile, format_profile, profile_count
from .rules import (
    MixtureSds,
    PointVotingSds,
    SdsSpec,
    SupportingSizeSds,
    TabulatedSds,
)


# ---------------------------------------------------------------------------
# symmetrization


def symmetrize(spec: SdsSpec, m: int, n: int, budget=None) -> TabulatedSds:
    """Average ``spec`` over all voter and alternative permutations, tabulated.

    The result is anonymous and neutral by construction; if the input is
    strategyproof so is the output, and the worst-case Condorcet-winner
    probability can only go up.
    """
    spec.check_dimensions(m, n)
    total_perms = math.factorial(n) * math.factorial(m)
    check_budget(profile_count(m, n) * total_perms, budget)
    table = _engine.int_table(spec, m, n, budget=budget)
    data = _engine.pref_data(m)
    weights = _engine.radix_weights(m, n)
    voter_perms = list(itertools.permutations(range(n)))
    alt_perms = list(itertools.permutations(range(m)))
    remaps = [
        tuple(data.index[tuple(tau[a] for a in p)] for p in data.prefs) for tau in alt_perms
    ]
    denom = table.denom * total_perms
    out = {}
    k = -1
    for combo in _engine.iter_combos(m, n):
        k += 1
        acc = [0] * m
        for pi in voter_perms:
            permuted = [0] * n
            for i in range(n):
                permuted[pi[i]] = combo[i]
            for tau, remap in zip(alt_perms, remaps):
                k2 = sum(remap[r] * w for r, w in zip(permuted, weights))
                row = table.rows[k2]
                for x in range(m):
                    acc[x] += row[tau[x]]
        out[_engine.profile_from_combo(m, combo)] = Lottery(
            tuple(Fraction(a, denom) for a in acc)
        )
    return TabulatedSds(m, n, out)


# ---------------------------------------------------------------------------
# scoring decomposition


@dataclass(frozen=True)
class ScoringDecomposition:
    """An exact split into a point-voting part and a supporting-size part.

    ``lam`` is the largest feasible mixing weight on the point-voting side;
    ``lambda_range`` is the whole feasible interval.  ``unique`` is False
    exactly when more than one (vector, vector, lambda) triple reproduces the
    rule.  The degenerate side of an extreme split (``lam`` 0 or 1) is None.
    """

    lam: Fraction
    point: Optional[PointVotingSds]
    supporting: Optional[SupportingSizeSds]
    unique: bool
    lambda_range: tuple[Fraction, Fraction]

    def reconstruction(self) -> SdsSpec:
        if self.lam == 1:
            return self.point
        if self.lam == 0:
            return self.supporting
        return MixtureSds(((self.lam, self.point), (1 - self.lam, self.supporting)))

    def to_json(self):
        return {
            "lambda": str(self.lam),
            "point": None if self.point is None else [str(s) for s in self.point.scores],
            "supporting": None
            if self.supporting is None
            else [str(s) for s in self.supporting.scores],
            "unique": self.unique,
            "lambda_range": [str(self.lambda_range[0]), str(self.lambda_range[1])],
        }


def _collect_equations(tab, table, data):
    """Deduplicated profile equations over (rank-count, support-count) signatures."""
    m, n = tab.m, tab.n
    width = m + n + 1
    equations = {}
    k = -1
    for combo in _engine.iter_combos(m, n):
        k += 1
        row = table.rows[k]
        sup = _engine.accumulate_support(combo, data.beats, m)
        for x in range(m):
            rank_counts = [0] * m
            for r in combo:
                rank_counts[data.position[r][x]] += 1
            supp_counts = [0] * (n + 1)
            for y in range(m):
                if y != x:
                    supp_counts[sup[x][y]] += 1
            sig = tuple(rank_counts) + tuple(supp_counts)
            rhs = Fraction(row[x], table.denom)
            seen = equations.get(sig)
            if seen is None:
                equations[sig] = (rhs, (k, x))
            elif seen[0] != rhs:
                raise InfeasibleDecompositionError(
                    "profiles with identical score patterns get different "
                    f"probabilities: index {seen[1][0]} alt {seen[1][1]} -> {seen[0]}, "
                    f"index {k} alt {x} -> {rhs}"
                )
    rows = [[Fraction(c) for c in sig] for sig in equations]
    rhs = [val for val, _ in equations.values()]
    assert all(len(r) == width for r in rows)
    return rows, rhs


def _pairing_rows(m, n):
    """Rows tying d_j + d_{n-j} to the point-voting share of the split."""
    width = m + n + 1
    unit = Fraction(2, m * (m - 1))
    rows = []
    rhs = []
    for j in range(n // 2 + 1):
        row = [Fraction(0)] * width
        for k in range(m):
            row[k] += n * unit
        row[m + j] += 1
        row[m + n - j] += 1
        rows.append(row)
        rhs.append(unit)
    return rows, rhs


def _feasible_region(u0, basis, m, n):
    """Inequalities of the scoring cones, reduced to nullspace coordinates."""
    width = m + n + 1
    constraints = []  # (coeffs over t, constant): need coeffs . t + constant >= 0

    def add(g):
        const = sum(gi * ui for gi, ui in zip(g, u0))
        coeffs = tuple(sum(gi * vi for gi, vi in zip(g, vec)) for vec in basis)
        constraints.append((coeffs, const))

    for k in range(m - 1):  # c_k >= c_{k+1}
        g = [Fraction(0)] * width
        g[k], g[k + 1] = Fraction(1), Fraction(-1)
        add(g)
    g = [Fraction(0)] * width
    g[m - 1] = Fraction(1)  # c_m >= 0
    add(g)
    for j in range(n):  # d_{j+1} >= d_j
        g = [Fraction(0)] * width
        g[m + j + 1], g[m + j] = Fraction(1), Fraction(-1)
        add(g)
    g = [Fraction(0)] * width
    g[m] = Fraction(1)  # d_0 >= 0
    add(g)
    return constraints


def _optimize_region(constraints, lam_const, lam_lin, dim):
    """Feasible vertices of the (at most 2-D) region and the lambda interval.

    Returns ``(t_star, lam_min, lam_max, unique)`` or raises
    ``InfeasibleDecompositionError``.
    """
    if dim == 0:
        for coeffs, const in constraints:
            if const < 0:
                raise InfeasibleDecompositionError(
                    "the unique solution of the equation system violates a "
                    "monotonicity or nonnegativity constraint"
                )
        return (), lam_const, lam_const, True

    if dim == 1:
        lo, hi = None, None
        for (a,), const in constraints:
            if a == 0:
                if const < 0:
                    raise InfeasibleDecompositionError(
                        "equation system and scoring-cone constraints are incompatible"
                    )
            elif a > 0:
                bound = -const / a
                lo = bound if lo is None else max(lo, bound)
            else:
                bound = -const / a
                hi = bound if hi is None else min(hi, bound)
        if lo is None or hi is None:
            raise AssertionError("decomposition region is unbounded")
        if lo > hi:
            raise InfeasibleDecompositionError(
                "no solution of the equation system satisfies every "
                "monotonicity and nonnegativity constraint"
            )
        lam_at = lambda t: lam_const + lam_lin[0] * t
        lam_lo, lam_hi = lam_at(lo), lam_at(hi)
        lam_min, lam_max = min(lam_lo, lam_hi), max(lam_lo, lam_hi)
        t_star = (hi,) if lam_hi >= lam_lo else (lo,)
        return t_star, lam_min, lam_max, lo == hi

    if dim != 2:
        raise AssertionError(f"unexpected nullspace dimension {dim}")

    def satisfied(point):
        return all(
            c1 * point[0] + c2 * point[1] + const >= 0 for (c1, c2), const in constraints
        )

    vertices = []
    for ((a1, a2), b1), ((a3, a4), b2) in itertools.combinations(constraints, 2):
        det = a1 * a4 - a2 * a3
        if det == 0:
            continue
        t1 = (-b1 * a4 + b2 * a2) / det
        t2 = (-b2 * a1 + b1 * a3) / det
        point = (t1, t2)
        if satisfied(point) and point not in vertices:
            vertices.append(point)
    if not vertices:
        raise InfeasibleDecompositionError(
            "no solution of the equation system satisfies every "
            "monotonicity and nonnegativity constraint"
        )
    lam_at = lambda point: lam_const + lam_lin[0] * point[0] + lam_lin[1] * point[1]
    lams = [lam_at(v) for v in vertices]
    lam_min, lam_max = min(lams), max(lams)
    best = sorted(v for v, lam in zip(vertices, lams) if lam == lam_max)[0]
    return best, lam_min, lam_max, len(vertices) == 1


def decompose_scoring(tab: TabulatedSds, budget=None) -> ScoringDecomposition:
    """Recover an exact point-voting / supporting-size split of a tabulated rule.

    Builds the linear system relating rank counts and supporting sizes to the
    tabulated probabilities, solves it exactly, intersects the solution space
    with the scoring-vector cones, and verifies the reconstruction against
    every profile.  Rules that are not anonymous, neutral, and strategyproof
    have no such split; ``InfeasibleDecompositionError`` then carries the
    conflict.
    """
    m, n = tab.m, tab.n
    if m < 2 or n < 1:
        raise ScopeError("decomposition needs at least two alternatives and one voter")
    check_budget(profile_count(m, n) * (m + 1), budget)
    table = _engine.int_table(tab, m, n, budget=budget)
    data = _engine.pref_data(m)

    rows, rhs = _collect_equations(tab, table, data)
    pair_rows, pair_rhs = _pairing_rows(m, n)
    solution = solve_affine(rows + pair_rows, rhs + pair_rhs)
    if solution.inconsistent_row is not None:
        raise InfeasibleDecompositionError(
            "profile equations are mutually inconsistent; the rule is outside "
            "the anonymous-neutral-strategyproof family"
        )
    u0, basis = solution.particular, solution.nullspace
    constraints = _feasible_region(u0, basis, m, n)
    lam_const = sum(u0[:m]) * n
    lam_lin = tuple(sum(vec[:m]) * n for vec in basis)
    t_star, lam_min, lam_max, unique = _optimize_region(
        constraints, lam_const, lam_lin, len(basis)
    )

    u = list(u0)
    for t, vec in zip(t_star, basis):
        for idx in range(len(u)):
            u[idx] += t * vec[idx]
    c = u[:m]
    d = u[m:]
    lam = sum(c) * n
    point = None
    supporting = None
    if lam > 0:
        point = PointVotingSds(tuple(ck / lam for ck in c))
    if lam < 1:
        supporting = SupportingSizeSds(tuple(dj / (1 - lam) for dj in reversed(d)))

    _verify_reconstruction(tab, table, data, c, d)
    return ScoringDecomposition(
        lam=lam,
        point=point,
        supporting=supporting,
        unique=unique,
        lambda_range=(lam_min, lam_max),
    )


def _verify_reconstruction(tab, table, data, c, d):
    m, n = tab.m, tab.n
    k = -1
    for combo in _engine.iter_combos(m, n):
        k += 1
        sup = _engine.accumulate_support(combo, data.beats, m)
        for x in range(m):
            value = sum(c[data.position[r][x]] for r in combo)
            value += sum(d[sup[x][y]] for y in range(m) if y != x)
            if value != Fraction(table.rows[k][x], table.denom):
                raise InfeasibleDecompositionError(
                    f"reconstruction mismatch at profile index {k}, alternative {x}"
                )


# ---------------------------------------------------------------------------
# proof-profile builders


def _pad_with_inverse_pairs(voters, n):
    """Extend with copies of (first voter, reversed first voter); margins unchanged."""
    base = voters[0]
    inverse = tuple(reversed(base))
    out = list(voters)
    while len(out) < n:
        out.extend((base, inverse))
    if len(out) != n:
        raise AssertionError("padding parity mismatch")
    return tuple(out)


def _cwc_base_odd_m(m, voters_34):
    """Base profiles for odd m: two identity voters plus one or two mirrored voters."""
    k = (m + 1) // 2
    identity = tuple(range(m))
    if voters_34 == 3:
        # third voter: candidate i (0-based) sits at 1-based position m - 2i
        slots = [None] * m
        for i in range(k):
            slots[m - 1 - 2 * i] = i
        fillers = iter(range(k, m))
        third = tuple(next(fillers) if s is None else s for s in slots)
        return (identity, identity, third), k
    # four voters: candidates occupy the top k positions in reverse order
    mirrored = tuple(range(k - 1, -1, -1)) + tuple(range(k, m))
    return (identity, identity, mirrored, mirrored), k


def build_cwc_profile(m: int, n: int):
    """A profile with the maximum number ``ceil(m/2)`` of Condorcet-winner candidates.

    Returns ``(profile, candidates)``; every candidate is certified with
    ``is_cw_candidate``.  Built from a 3- or 4-voter base matching the parity
    of ``n``, padded with inverse preference pairs, which leave all majority
    margins unchanged.
    """
    from .axioms import is_cw_candidate

    if m < 3 or n < 3:
        raise ScopeError("needs m >= 3 and n >= 3")
    base_n = 3 if n % 2 == 1 else 4
    if m % 2 == 1:
        voters, k = _cwc_base_odd_m(m, base_n)
    else:
        inner_voters, k = _cwc_base_odd_m(m - 1, base_n)
        z = m - 1
        voters = tuple(v + (z,) for v in inner_voters[:-1]) + ((z,) + inner_voters[-1],)
    profile = Profile(m, _pad_with_inverse_pairs(voters, n))
    candidates = tuple(range(k))
    for x in candidates:
        if not is_cw_candidate(profile, x):
            raise AssertionError(f"alternative {x} failed candidate certification")
    return profile, candidates


def build_minimal_margin_profile(m: int, n: int, x: int) -> Profile:
    """A profile where ``x`` wins every comparison minimally but is never ranked first.

    Three base voters split the other alternatives into residue classes and
    rank exactly one class above ``x``; even electorates duplicate the base,
    and inverse pairs (never topping ``x``) pad to ``n`` voters.  Every
    supporting size ``n_xy`` ends up exactly ``ceil((n+1)/2)``.
    """
    if m < 4:
        raise ScopeError("needs m >= 4 so that no base voter ranks x first")
    if n < 3 or (n % 2 == 0 and n < 6):
        raise ScopeError("needs n >= 3 odd, or n >= 6 even (the base triples are doubled)")
    if not 0 <= x < m:
        raise ValueError(f"alternative {x} outside 0..{m - 1}")
    others = [y for y in range(m) if y != x]
    base = []
    for i in (1, 2, 3):
        above = [others[k - 1] for k in range(1, m) if k % 3 == i - 1]
        below = [y for y in others if y not in above]
        base.append(tuple(above) + (x,) + tuple(below))
    if n % 2 == 0:
        base = base + base
    pad_front = (others[0], x) + tuple(y for y in others if y != others[0])
    voters = list(base)
    while len(voters) < n:
        voters.append(pad_front)
        voters.append(tuple(reversed(pad_front)))
    profile = Profile(m, tuple(voters))

    from .profiles import support_matrix

    sup = support_matrix(profile)
    target = (n + 2) // 2
    if any(pref[0] == x for pref in profile.voters):
        raise AssertionError("construction placed x at a top position")
    if any(sup[x][y] != target for y in others):
        raise AssertionError("construction did not hit the minimal winning margins")
    return profile


def build_unanimous_profile(m: int, n: int, x: int, y: int) -> Profile:
    """All voters rank ``x`` first and ``y`` second, the rest in ascending order."""
    if x == y:
        raise ValueError("the top two alternatives must differ")
    for alt in (x, y):
        if not 0 <= alt < m:
            raise ValueError(f"alternative {alt} outside 0..{m - 1}")
    rest = tuple(z for z in range(m) if z not in (x, y))
    ranking = (x, y) + rest
    return Profile(m, tuple(ranking for _ in range(n)))
