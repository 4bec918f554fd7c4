"""Staircase arrays for lattice counting (hot kernel of the oracle).

A monomial ideal ``I`` in n <= 3 variables with pure powers ``s_j`` is encoded
by ``H[x_1, .., x_(n-1)] = min{g_n : g in I, g_i <= x_i for i < n}`` over the
box ``x_i < s_i``; the colength is ``H.sum()``.  Outside the box the ideal
contains everything, which the step below treats as height 0.

``power_step(H, box, gens, new_box)`` returns the staircase of ``I * (gens)``.
"""

import numpy as np

from ._accel import backend, njit

BIG = np.iinfo(np.int64).max // 4


def prefix_min(H):
    for axis in range(H.ndim):
        H = np.minimum.accumulate(H, axis=axis)
    return H


def from_generators(gens, box):
    """Staircase of the ideal generated by ``gens`` (int array, n columns)."""
    gens = np.asarray(gens, dtype=np.int64)
    H = np.full(tuple(box), BIG, dtype=np.int64)
    inside = np.all(gens[:, :-1] < np.asarray(box), axis=1)
    g = gens[inside]
    np.minimum.at(H, tuple(g[:, :-1].T), g[:, -1])
    return prefix_min(H)


def _step_numpy(H, gens, new_box):
    old_box = H.shape
    out = np.full(tuple(new_box), BIG, dtype=np.int64)
    # pad H with zeros beyond its box (everything there lies in the ideal)
    padded = np.zeros(tuple(new_box), dtype=np.int64)
    padded[tuple(slice(0, b) for b in old_box)] = H
    for g in gens:
        shift = g[:-1]
        if np.any(shift >= np.asarray(new_box)):
            continue
        target = tuple(slice(int(s), None) for s in shift)
        source = tuple(slice(0, b - int(s)) for b, s in zip(new_box, shift))
        np.minimum(out[target], padded[source] + g[-1], out=out[target])
    return prefix_min(out)


@njit(cache=True)
def _step_numba_1d(H, gens, n0):
    b0 = H.shape[0]
    out = np.full(n0, BIG, dtype=np.int64)
    for r in range(gens.shape[0]):
        s0 = gens[r, 0]
        h = gens[r, 1]
        for x in range(s0, n0):
            y = x - s0
            v = H[y] if y < b0 else 0
            if v + h < out[x]:
                out[x] = v + h
    for x in range(1, n0):
        if out[x - 1] < out[x]:
            out[x] = out[x - 1]
    return out


@njit(cache=True)
def _step_numba_2d(H, gens, n0, n1):
    b0, b1 = H.shape
    out = np.full((n0, n1), BIG, dtype=np.int64)
    for r in range(gens.shape[0]):
        s0 = gens[r, 0]
        s1 = gens[r, 1]
        h = gens[r, 2]
        for x in range(s0, n0):
            y = x - s0
            for z in range(s1, n1):
                w = z - s1
                v = H[y, w] if (y < b0 and w < b1) else 0
                if v + h < out[x, z]:
                    out[x, z] = v + h
    for x in range(n0):
        for z in range(n1):
            best = out[x, z]
            if x > 0 and out[x - 1, z] < best:
                best = out[x - 1, z]
            if z > 0 and out[x, z - 1] < best:
                best = out[x, z - 1]
            out[x, z] = best
    return out


def power_step(H, gens, new_box):
    gens = np.ascontiguousarray(gens, dtype=np.int64)
    if backend() == "numpy" or H.ndim == 0:
        return _step_numpy(H, gens, new_box)
    H = np.ascontiguousarray(H, dtype=np.int64)
    if H.ndim == 1:
        return _step_numba_1d(H, gens, int(new_box[0]))
    return _step_numba_2d(H, gens, int(new_box[0]), int(new_box[1]))
