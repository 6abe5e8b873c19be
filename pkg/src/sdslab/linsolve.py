"""Exact linear algebra over rationals: solve, detect inconsistency, nullspace.

Small dense systems only; everything is Fraction arithmetic so solutions and
infeasibility certificates are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional


@dataclass(frozen=True)
class AffineSolution:
    """Solution set of ``A u = b`` as ``particular + span(nullspace)``.

    ``inconsistent_row`` is the index of the first original equation that
    cannot be satisfied, or None when the system is solvable.
    """

    particular: Optional[tuple[Fraction, ...]]
    nullspace: tuple[tuple[Fraction, ...], ...]
    inconsistent_row: Optional[int]


def solve_affine(rows, rhs) -> AffineSolution:
    """Gauss-Jordan elimination with exact rationals.

    ``rows`` is a list of coefficient tuples, ``rhs`` the right-hand sides.
    """
    if len(rows) != len(rhs):
        raise ValueError("coefficient rows and right-hand sides differ in length")
    if not rows:
        raise ValueError("empty system")
    width = len(rows[0])
    aug = [
        [Fraction(c) for c in row] + [Fraction(b), Fraction(i)]
        for i, (row, b) in enumerate(zip(rows, rhs))
    ]
    pivots = []
    r = 0
    for col in range(width):
        pivot_row = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if pivot_row is None:
            continue
        aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
        pivot = aug[r][col]
        aug[r] = [v / pivot for v in aug[r][:-1]] + [aug[r][-1]]
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [
                    v - factor * w for v, w in zip(aug[i][:-1], aug[r][:-1])
                ] + [aug[i][-1]]
        pivots.append(col)
        r += 1
        if r == len(aug):
            break
    for i in range(r, len(aug)):
        if aug[i][width] != 0:
            return AffineSolution(
                particular=None, nullspace=(), inconsistent_row=int(aug[i][-1])
            )
    particular = [Fraction(0)] * width
    for row_idx, col in enumerate(pivots):
        particular[col] = aug[row_idx][width]
    free_cols = [c for c in range(width) if c not in pivots]
    nullspace = []
    for free in free_cols:
        vec = [Fraction(0)] * width
        vec[free] = Fraction(1)
        for row_idx, col in enumerate(pivots):
            vec[col] = -aug[row_idx][free]
        nullspace.append(tuple(vec))
    return AffineSolution(
        particular=tuple(particular), nullspace=tuple(nullspace), inconsistent_row=None
    )
