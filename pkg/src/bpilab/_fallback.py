"""Numpy implementations of the hot kernels.

Same signatures as the compiled ``_speedups`` module; used when the extension
is not built or when ``BPILAB_PURE=1``.

Chain data is the tuple ``(base, pos, tinv, strides)``: base points, for each
level the orbit position of every point (-1 outside the orbit), inverse coset
representatives indexed by orbit position, and mixed-radix strides.
"""
from __future__ import annotations

import numpy as np


def sift_ranks(perms, base, pos, tinv, strides):
    perms = np.asarray(perms, dtype=np.int32)
    m, n = perms.shape
    ranks = np.zeros(m, dtype=np.int64)
    alive = np.ones(m, dtype=bool)
    cur = perms.copy()
    rows = np.arange(m)
    for level in range(len(base)):
        idx = pos[level][cur[:, base[level]]]
        bad = idx < 0
        if bad.any():
            alive &= ~bad
            idx = np.where(bad, 0, idx)
        ranks += idx.astype(np.int64) * strides[level]
        inv = tinv[level][idx]
        cur = inv[rows[:, None], cur]
    ident = np.arange(n, dtype=np.int32)
    alive &= (cur == ident).all(axis=1)
    ranks[~alive] = -1
    return ranks


def conjugacy_class_ids(elements, gens, base, pos, tinv, strides):
    elements = np.asarray(elements, dtype=np.int32)
    total = elements.shape[0]
    ids = np.full(total, -1, dtype=np.int64)
    gens = [np.asarray(g, dtype=np.int32) for g in gens]
    invs = [np.argsort(g).astype(np.int32) for g in gens]
    label = 0
    for start in range(total):
        if ids[start] >= 0:
            continue
        ids[start] = label
        frontier = np.array([start], dtype=np.int64)
        while frontier.size:
            found = []
            block = elements[frontier]
            for g, gi in zip(gens, invs):
                conj = g[block[:, gi]]
                r = sift_ranks(conj, base, pos, tinv, strides)
                new = r[ids[r] < 0]
                if new.size:
                    new = np.unique(new)
                    ids[new] = label
                    found.append(new)
            frontier = np.concatenate(found) if found else np.empty(0, dtype=np.int64)
        label += 1
    return ids


def structure_constants(elements, inverses, class_ids, reps, nclasses, base, pos, tinv, strides):
    elements = np.asarray(elements, dtype=np.int32)
    r = nclasses
    out = np.zeros((r, r, r), dtype=np.int64)
    members = [np.flatnonzero(class_ids == j) for j in range(r)]
    for j in range(r):
        yinv = elements[inverses[members[j]]]
        for k in range(r):
            z = elements[reps[k]]
            prod = yinv[:, z]
            ranks = sift_ranks(prod, base, pos, tinv, strides)
            out[:, j, k] = np.bincount(class_ids[ranks], minlength=r)
    return out
