"""Compact-facet scan for Newton polyhedra (hot kernel).

Given integer points ``P`` (m x n, n in 2..4) generating ``conv(P) + R^n_>=0``,
return every supporting hyperplane ``<w, x> = d`` with ``w > 0`` that passes
through n affinely independent points of ``P``.  Those are exactly the compact
facets.  Rows come back as ``(w_1, ..., w_n, d)`` reduced by their gcd, sorted
and unique.

Three interchangeable paths: numba, vectorised numpy, and plain Python ints.
The int64 paths are used only when an a-priori bound rules out overflow.
"""

from itertools import combinations
from math import comb, factorial, gcd

import numpy as np

from ._accel import backend, njit

# below this many n-subsets the vectorised scan beats numba's one-off compile
NUMBA_MIN_SUBSETS = 4096

INT64_SAFE = 2 ** 62


def fits_int64(points):
    n = len(points[0])
    x = max(1, max(abs(c) for p in points for c in p))
    return 2 * factorial(n) * x ** n < INT64_SAFE


def _det(rows):
    k = len(rows)
    if k == 1:
        return rows[0][0]
    if k == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0
    for j in range(k):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * _det(minor)
    return total


def normal_vector(diffs):
    """Generalised cross product of n-1 difference vectors in Z^n."""
    n = len(diffs[0])
    return tuple((-1) ** j * _det([d[:j] + d[j + 1:] for d in diffs]) for j in range(n))


def compact_facets_python(points):
    points = [tuple(int(c) for c in p) for p in points]
    n = len(points[0])
    found = set()
    for combo in combinations(points, n):
        base = combo[0]
        diffs = [tuple(q[i] - base[i] for i in range(n)) for q in combo[1:]]
        w = normal_vector(diffs)
        if all(c < 0 for c in w):
            w = tuple(-c for c in w)
        elif not all(c > 0 for c in w):
            continue
        d = sum(a * b for a, b in zip(w, base))
        if any(sum(a * b for a, b in zip(w, q)) < d for q in points):
            continue
        g = 0
        for c in w + (d,):
            g = gcd(g, c)
        found.add(tuple(c // g for c in w) + (d // g,))
    return sorted(found)


def _normals_numpy(D):
    # D: (C, n-1, n) difference stacks
    n = D.shape[2]
    if n == 2:
        return np.stack([D[:, 0, 1], -D[:, 0, 0]], axis=1)
    if n == 3:
        return np.cross(D[:, 0, :], D[:, 1, :])
    cols = []
    for j in range(4):
        keep = [c for c in range(4) if c != j]
        M = D[:, :, keep]
        det3 = (M[:, 0, 0] * (M[:, 1, 1] * M[:, 2, 2] - M[:, 1, 2] * M[:, 2, 1])
                - M[:, 0, 1] * (M[:, 1, 0] * M[:, 2, 2] - M[:, 1, 2] * M[:, 2, 0])
                + M[:, 0, 2] * (M[:, 1, 0] * M[:, 2, 1] - M[:, 1, 1] * M[:, 2, 0]))
        cols.append(det3 if j % 2 == 0 else -det3)
    return np.stack(cols, axis=1)


def compact_facets_numpy(P):
    P = np.asarray(P, dtype=np.int64)
    m, n = P.shape
    if m < n:
        return np.zeros((0, n + 1), dtype=np.int64)
    idx = np.array(list(combinations(range(m), n)), dtype=np.int64)
    D = P[idx[:, 1:]] - P[idx[:, :1]]
    W = _normals_numpy(D)
    neg = np.all(W < 0, axis=1)
    W[neg] = -W[neg]
    ok = np.all(W > 0, axis=1)
    W, idx = W[ok], idx[ok]
    if len(W) == 0:
        return np.zeros((0, n + 1), dtype=np.int64)
    d = np.einsum("ij,ij->i", W, P[idx[:, 0]])
    values = W @ P.T
    ok = np.all(values >= d[:, None], axis=1)
    rows = np.concatenate([W[ok], d[ok, None]], axis=1)
    if len(rows) == 0:
        return np.zeros((0, n + 1), dtype=np.int64)
    g = np.gcd.reduce(rows, axis=1)
    rows = rows // g[:, None]
    return np.unique(rows, axis=0)


@njit(cache=True)
def _gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _minor(D, skip, k):
    # determinant of D[:k, cols != skip], k in 1..3
    c0 = -1
    c1 = -1
    c2 = -1
    t = 0
    for c in range(k + 1):
        if c == skip:
            continue
        if t == 0:
            c0 = c
        elif t == 1:
            c1 = c
        else:
            c2 = c
        t += 1
    if k == 1:
        return D[0, c0]
    if k == 2:
        return D[0, c0] * D[1, c1] - D[0, c1] * D[1, c0]
    return (D[0, c0] * (D[1, c1] * D[2, c2] - D[1, c2] * D[2, c1])
            - D[0, c1] * (D[1, c0] * D[2, c2] - D[1, c2] * D[2, c0])
            + D[0, c2] * (D[1, c0] * D[2, c1] - D[1, c1] * D[2, c0]))


@njit(cache=True)
def _facets_numba_raw(P, capacity):
    m, n = P.shape
    out = np.empty((capacity, n + 1), dtype=np.int64)
    count = 0
    idx = np.arange(n)
    D = np.empty((n - 1, n), dtype=np.int64)
    w = np.empty(n, dtype=np.int64)
    while True:
        for r in range(n - 1):
            for c in range(n):
                D[r, c] = P[idx[r + 1], c] - P[idx[0], c]
        pos = True
        negv = True
        for j in range(n):
            v = _minor(D, j, n - 1)
            if j % 2 == 1:
                v = -v
            w[j] = v
            if v <= 0:
                pos = False
            if v >= 0:
                negv = False
        if pos or negv:
            if negv:
                for j in range(n):
                    w[j] = -w[j]
            d = 0
            for c in range(n):
                d += w[c] * P[idx[0], c]
            valid = True
            for q in range(m):
                s = 0
                for c in range(n):
                    s += w[c] * P[q, c]
                if s < d:
                    valid = False
                    break
            if valid:
                g = d
                for j in range(n):
                    g = _gcd(g, w[j])
                for j in range(n):
                    out[count, j] = w[j] // g
                out[count, n] = d // g
                count += 1
        # advance to next combination
        i = n - 1
        while i >= 0 and idx[i] == m - n + i:
            i -= 1
        if i < 0:
            break
        idx[i] += 1
        for j in range(i + 1, n):
            idx[j] = idx[j - 1] + 1
    return out[:count]


def compact_facets_numba(P):
    P = np.ascontiguousarray(P, dtype=np.int64)
    m, n = P.shape
    if m < n:
        return np.zeros((0, n + 1), dtype=np.int64)
    rows = _facets_numba_raw(P, comb(m, n))
    if len(rows) == 0:
        return rows
    return np.unique(rows, axis=0)


def compact_facets(points):
    """Dispatch to the configured backend; falls back to Python ints on overflow risk."""
    points = [tuple(int(c) for c in p) for p in points]
    if not fits_int64(points):
        return compact_facets_python(points)
    if backend() == "numba" and points and comb(len(points), len(points[0])) >= NUMBA_MIN_SUBSETS:
        rows = compact_facets_numba(np.array(points, dtype=np.int64))
    else:
        rows = compact_facets_numpy(np.array(points, dtype=np.int64))
    return [tuple(int(c) for c in r) for r in rows]
