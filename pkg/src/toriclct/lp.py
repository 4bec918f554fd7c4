"""Small exact linear programs over ``Fraction``.

Two-phase tableau simplex with Bland's rule, so it terminates on degenerate
instances.  Problems here have a handful of rows and at most a few dozen
columns; nothing is tuned for size.
"""

from dataclasses import dataclass
from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple | None = None


def _pivot(T, basis, row, col):
    piv = T[row][col]
    if piv != 1:
        T[row] = [v / piv for v in T[row]]
    pr = T[row]
    for r, other in enumerate(T):
        if r != row and other[col] != 0:
            f = other[col]
            T[r] = [a - f * b for a, b in zip(other, pr)]
    basis[row] = col


def _run(T, basis, ncols):
    """Minimise the objective stored in the last row of T; returns False if unbounded."""
    obj = T[-1]
    while True:
        obj = T[-1]
        col = next((j for j in range(ncols) if obj[j] < 0), None)
        if col is None:
            return True
        best = None
        for r in range(len(T) - 1):
            a = T[r][col]
            if a > 0:
                ratio = T[r][-1] / a
                key = (ratio, basis[r])
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:
            return False
        _pivot(T, basis, best[1], col)


def simplex(c, A, b):
    """Minimise ``c . x`` subject to ``A x = b`` and ``x >= 0``."""
    m = len(A)
    nvar = len(c)
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        rows.append((row, rhs))

    # phase 1: artificial column per row
    width = nvar + m
    T = []
    for i, (row, rhs) in enumerate(rows):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(row + art + [rhs])
    basis = list(range(nvar, nvar + m))
    phase1 = [Fraction(0)] * (width + 1)
    for r in T:
        for j in range(nvar):
            phase1[j] -= r[j]
        phase1[-1] -= r[-1]
    T.append(phase1)
    _run(T, basis, width)
    if T[-1][-1] != 0:
        return LPResult(INFEASIBLE)

    # drive remaining artificials out of the basis; drop redundant rows
    r = 0
    while r < len(T) - 1:
        if basis[r] >= nvar:
            col = next((j for j in range(nvar) if T[r][j] != 0), None)
            if col is None:
                del T[r]
                del basis[r]
                continue
            _pivot(T, basis, r, col)
        r += 1
    T = [row[:nvar] + row[-1:] for row in T[:-1]]

    objective = [Fraction(v) for v in c] + [Fraction(0)]
    for i, bcol in enumerate(basis):
        f = objective[bcol]
        if f != 0:
            objective = [a - f * v for a, v in zip(objective, T[i])]
    T.append(objective)
    if not _run(T, basis, nvar):
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * nvar
    for i, bcol in enumerate(basis):
        x[bcol] = T[i][-1]
    return LPResult(OPTIMAL, -T[-1][-1], tuple(x))


def feasible(A, b):
    return simplex([0] * len(A[0]), A, b).status == OPTIMAL
