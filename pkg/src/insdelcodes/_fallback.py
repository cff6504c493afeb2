"""Pure-Python/numpy implementations of the LCS kernels.

Selected automatically when the compiled ``_kernels`` extension is missing.
Row-wise work is vectorised across rows, so the fallback stays usable on the
acceptance workloads, only slower.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 18


def lcs(a: np.ndarray, b: np.ndarray) -> int:
    row = [0] * (len(b) + 1)
    for x in a.tolist():
        diag = 0
        for j, y in enumerate(b.tolist(), start=1):
            up = row[j]
            if y == x:
                row[j] = diag + 1
            elif row[j - 1] > up:
                row[j] = row[j - 1]
            diag = up
    return row[-1]


def lcs_many(a: np.ndarray, rows: np.ndarray) -> np.ndarray:
    m, n = rows.shape
    out = np.zeros(m, dtype=np.int32)
    if m == 0 or n == 0 or len(a) == 0:
        return out
    for lo in range(0, m, _CHUNK):
        block = rows[lo:lo + _CHUNK]
        # prev[j] = LCS(a[:i], block[:, :j]) for the current i
        prev = np.zeros((n + 1, len(block)), dtype=np.int32)
        for x in a.tolist():
            cur = np.zeros_like(prev)
            eq = block == x
            for j in range(1, n + 1):
                cur[j] = np.where(eq[:, j - 1], prev[j - 1] + 1, np.maximum(prev[j], cur[j - 1]))
            prev = cur
        out[lo:lo + len(block)] = prev[n]
    return out


def best_against(a: np.ndarray, rows: np.ndarray, skip: int, cap: int) -> tuple[int, int]:
    m = rows.shape[0]
    best, best_idx = -1, -1
    for lo in range(0, m, _CHUNK):
        vals = lcs_many(a, rows[lo:lo + _CHUNK]).astype(np.int64)
        if lo <= skip < lo + len(vals):
            vals[skip - lo] = -1
        if len(vals) == 0:
            continue
        hit = np.flatnonzero(vals >= cap)
        if hit.size:
            return int(vals[hit[0]]), lo + int(hit[0])
        i = int(np.argmax(vals))
        if vals[i] > best:
            best, best_idx = int(vals[i]), lo + i
    return best, best_idx


def best_pair(words: np.ndarray, start: int, stop: int, cap: int) -> tuple[int, int, int]:
    m = words.shape[0]
    best, bi, bj = -1, -1, -1
    for i in range(start, stop):
        if i + 1 >= m:
            break
        vals = lcs_many(words[i], words[i + 1:])
        hit = np.flatnonzero(vals >= cap)
        if hit.size:
            return int(vals[hit[0]]), i, i + 1 + int(hit[0])
        j = int(np.argmax(vals))
        if vals[j] > best:
            best, bi, bj = int(vals[j]), i, i + 1 + j
    return best, bi, bj
