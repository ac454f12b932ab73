"""Integer kernels for rank congruences.

Two interchangeable backends compute the same arrays:

* ``numba``: ``@njit`` loops (union-find for the closure, a direct double
  loop for the relation matrix);
* ``numpy``: vectorised min-label propagation and broadcasting.

The numba path is used when numba imports and ``BASISTYPE_DISABLE_NUMBA``
is unset (or ``0``). Both backends are always importable so the test suite
and ``benchmarks/bench_kernels.py`` can compare them.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


def _flag_disabled() -> bool:
    return os.environ.get("BASISTYPE_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")


USE_NUMBA = HAS_NUMBA and not _flag_disabled()
BACKEND = "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------


@njit(cache=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@njit(cache=True)
def _union_min(parent, a, b):
    # the smaller index always becomes the root, so find() returns class minima
    ra = _find(parent, a)
    rb = _find(parent, b)
    if ra == rb:
        return False
    if ra < rb:
        parent[rb] = ra
    else:
        parent[ra] = rb
    return True


@njit(cache=True)
def closure_labels_numba(pairs, bound):
    parent = np.arange(bound + 1)
    for i in range(pairs.shape[0]):
        _union_min(parent, pairs[i, 0], pairs[i, 1])
    changed = True
    while changed:
        changed = False
        for x in range(bound):
            r = _find(parent, x)
            # r <= x < bound, so r + 1 stays in range
            if _union_min(parent, x + 1, r + 1):
                changed = True
    labels = np.empty(bound + 1, dtype=np.int64)
    for x in range(bound + 1):
        labels[x] = _find(parent, x)
    return labels


@njit(cache=True)
def equiv_matrix_numba(n_min, k_period, bound):
    size = bound + 1
    out = np.zeros((size, size), dtype=np.bool_)
    for n in range(size):
        out[n, n] = True
        if n < n_min:
            continue
        for m in range(n_min, size):
            if (n - m) % k_period == 0:
                out[n, m] = True
    return out


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------


def _propagate_min(labels: np.ndarray, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    labels = labels.copy()
    while True:
        before = labels.copy()
        np.minimum.at(labels, dst, labels[src])
        np.minimum.at(labels, src, labels[dst])
        # pointer jumping: labels[x] is always a member of x's component
        labels = labels[labels]
        if np.array_equal(labels, before):
            return labels


def closure_labels_numpy(pairs: np.ndarray, bound: int) -> np.ndarray:
    labels = np.arange(bound + 1, dtype=np.int64)
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    # every in-range translate of a generating pair is in the closure; seeding
    # them all keeps the fixpoint loop below to a few rounds
    translates = [pairs]
    for a, b in pairs:
        c = np.arange(bound - max(a, b) + 1, dtype=np.int64)
        translates.append(np.stack([a + c, b + c], axis=1))
    pairs = np.concatenate(translates)
    shift_src = np.arange(1, bound + 1, dtype=np.int64)
    while True:
        src = np.concatenate([pairs[:, 0], shift_src])
        dst = np.concatenate([pairs[:, 1], labels[:-1] + 1])
        new = _propagate_min(labels, src, dst)
        if np.array_equal(new, labels):
            return new
        labels = new


def equiv_matrix_numpy(n_min: int, k_period: int, bound: int) -> np.ndarray:
    r = np.arange(bound + 1, dtype=np.int64)
    high = r >= n_min
    same_residue = ((r[:, None] - r[None, :]) % k_period) == 0
    return (high[:, None] & high[None, :] & same_residue) | np.eye(bound + 1, dtype=bool)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def closure_labels(pairs: np.ndarray, bound: int) -> np.ndarray:
    """Class-minimum label of every rank in ``0..bound`` under the translation closure of ``pairs``."""
    pairs = np.ascontiguousarray(np.asarray(pairs, dtype=np.int64).reshape(-1, 2))
    if USE_NUMBA:
        return closure_labels_numba(pairs, int(bound))
    return closure_labels_numpy(pairs, int(bound))


def equiv_matrix(n_min: int, k_period: int, bound: int) -> np.ndarray:
    """Boolean matrix ``M[n, m]`` of the (n_min, k_period) rank congruence on ``0..bound``."""
    if USE_NUMBA:
        return equiv_matrix_numba(int(n_min), int(k_period), int(bound))
    return equiv_matrix_numpy(int(n_min), int(k_period), int(bound))


def labels_to_matrix(labels: np.ndarray) -> np.ndarray:
    return labels[:, None] == labels[None, :]
