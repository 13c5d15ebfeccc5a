"""Orbit kernels for groups generated by F_2 transvections.

Orbits never leave a slice ``p + U`` where U is spanned by the generator
coordinates, so every kernel works inside slices in compressed coordinates:
slice element ``t`` (an ``nb``-bit integer) stands for ``p | deposit(t)``.
Generator ``j`` acts by flipping bit ``j`` of ``t`` when
``parity(t & cmask[j]) ^ offset_j`` is 1, where ``offset_j = parity(p & mask_j)``
is packed per slice into bit ``j`` of ``offsets[s]``.

Two interchangeable backends: numba ``@njit`` loops (default) and a pure
numpy path (label propagation).  Set ``COXTRANS_NO_NUMBA=1`` to force numpy.
"""
from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def default_backend() -> str:
    if os.environ.get("COXTRANS_NO_NUMBA", "").strip() not in ("", "0") or not HAVE_NUMBA:
        return "numpy"
    return "numba"


# -- numpy path -------------------------------------------------------------------

def _parity_np(x: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(x) & 1).astype(x.dtype)


def _labels_numpy(nb: int, cmasks: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """Min-label propagation; returns (S, 2^nb) array of orbit minima."""
    size = 1 << nb
    x = np.arange(size, dtype=np.int64)
    S = offsets.shape[0]
    images = []
    for j in range(nb):
        flip = _parity_np(x & cmasks[j])[None, :] ^ ((offsets[:, None] >> j) & 1)
        images.append(x[None, :] ^ (flip << j))
    labels = np.broadcast_to(x, (S, size)).copy()
    while True:
        old = labels
        for img in images:
            labels = np.minimum(labels, np.take_along_axis(labels, img, axis=1))
        while True:
            jumped = np.take_along_axis(labels, labels, axis=1)
            if np.array_equal(jumped, labels):
                break
            labels = jumped
        if np.array_equal(labels, old):
            return labels


def _census_numpy(nb, cmasks, offsets):
    labels = _labels_numpy(nb, cmasks, offsets)
    S, size = labels.shape
    is_rep = labels == np.arange(size, dtype=np.int64)[None, :]
    slice_idx, rep_t = np.nonzero(is_rep)
    counts = np.zeros((S, size), dtype=np.int64)
    rows = np.repeat(np.arange(S), size)
    np.add.at(counts, (rows, labels.ravel()), 1)
    sizes = counts[slice_idx, rep_t]
    return slice_idx.astype(np.int64), rep_t.astype(np.int64), sizes


# -- numba path -------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _parity_jit(x):
        x ^= x >> 32
        x ^= x >> 16
        x ^= x >> 8
        x ^= x >> 4
        x ^= x >> 2
        x ^= x >> 1
        return x & 1

    @njit(cache=True, nogil=True)
    def _census_jit(nb, cmasks, offsets):
        size = np.int64(1) << nb
        S = offsets.shape[0]
        words = (size + 63) >> 6
        visited = np.zeros(words, np.int64)
        stack = np.empty(size, np.int64)
        cap = 1024
        out_s = np.empty(cap, np.int64)
        out_t = np.empty(cap, np.int64)
        out_n = np.empty(cap, np.int64)
        count = 0
        one = np.int64(1)
        for s in range(S):
            visited[:] = 0
            off = offsets[s]
            for t0 in range(size):
                if (visited[t0 >> 6] >> (t0 & 63)) & 1:
                    continue
                visited[t0 >> 6] |= one << (t0 & 63)
                stack[0] = t0
                top = 1
                n = 0
                while top > 0:
                    top -= 1
                    y = stack[top]
                    n += 1
                    for j in range(nb):
                        flip = _parity_jit(y & cmasks[j]) ^ ((off >> j) & 1)
                        z = y ^ (flip << j)
                        if not (visited[z >> 6] >> (z & 63)) & 1:
                            visited[z >> 6] |= one << (z & 63)
                            stack[top] = z
                            top += 1
                if count == cap:
                    cap *= 2
                    a = np.empty(cap, np.int64)
                    a[:count] = out_s[:count]
                    out_s = a
                    a = np.empty(cap, np.int64)
                    a[:count] = out_t[:count]
                    out_t = a
                    a = np.empty(cap, np.int64)
                    a[:count] = out_n[:count]
                    out_n = a
                out_s[count] = s
                out_t[count] = t0
                out_n[count] = n
                count += 1
        return out_s[:count], out_t[:count], out_n[:count]

    @njit(cache=True, nogil=True)
    def _labels_jit(nb, cmasks, offsets):
        size = np.int64(1) << nb
        S = offsets.shape[0]
        labels = np.full((S, size), -1, np.int64)
        stack = np.empty(size, np.int64)
        for s in range(S):
            off = offsets[s]
            for t0 in range(size):
                if labels[s, t0] >= 0:
                    continue
                labels[s, t0] = t0
                stack[0] = t0
                top = 1
                while top > 0:
                    top -= 1
                    y = stack[top]
                    for j in range(nb):
                        flip = _parity_jit(y & cmasks[j]) ^ ((off >> j) & 1)
                        z = y ^ (flip << j)
                        if labels[s, z] < 0:
                            labels[s, z] = t0
                            stack[top] = z
                            top += 1
        return labels


def slice_census(nb: int, cmasks, offsets, backend: str | None = None):
    """Orbits of every slice listed in ``offsets``.

    Returns (slice index, orbit minimum in compressed coordinates, orbit size),
    sorted by slice then minimum.
    """
    backend = backend or default_backend()
    cmasks = np.ascontiguousarray(cmasks, dtype=np.int64)
    offsets = np.ascontiguousarray(offsets, dtype=np.int64)
    if backend == "numba":
        return _census_jit(np.int64(nb), cmasks, offsets)
    if backend == "numpy":
        return _census_numpy(nb, cmasks, offsets)
    raise ValueError(f"unknown backend {backend!r}")


def slice_labels(nb: int, cmasks, offsets, backend: str | None = None) -> np.ndarray:
    """(S, 2^nb) array: orbit minimum of every element of every slice."""
    backend = backend or default_backend()
    cmasks = np.ascontiguousarray(cmasks, dtype=np.int64)
    offsets = np.ascontiguousarray(offsets, dtype=np.int64)
    if backend == "numba":
        return _labels_jit(np.int64(nb), cmasks, offsets)
    if backend == "numpy":
        return _labels_numpy(nb, cmasks, offsets)
    raise ValueError(f"unknown backend {backend!r}")
