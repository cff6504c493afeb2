"""Insertion-deletion metric: LCS, distances, exhaustive minimum search, bound checks."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, NamedTuple, Sequence

import numpy as np

from . import kernels
from .errors import BudgetExceeded, CodeError, InvariantViolation, MixedFieldError
from .gf import FieldElement
from .lincode import (
    Codeword,
    LinearCode,
    columns_in_general_position,
    enumerate_codewords,
    mds_support_codeword,
)

PAIR_BUDGET = 1 << 32


def _plain(seq: Sequence) -> tuple[list, Any]:
    """Canonical symbols for comparison; rejects sequences drawn from several fields."""
    out = []
    spec = None
    for x in seq:
        if isinstance(x, FieldElement):
            if spec is None:
                spec = x.spec
            elif x.spec != spec:
                raise MixedFieldError("sequence mixes elements of different fields")
            out.append(x.value)
        else:
            out.append(x)
    return out, spec


def _pair(a: Sequence, b: Sequence) -> tuple[list, list]:
    pa, sa = _plain(a)
    pb, sb = _plain(b)
    if sa is not None and sb is not None and sa != sb:
        raise MixedFieldError("sequences come from different fields")
    return pa, pb


def lcs_length(a: Sequence, b: Sequence) -> int:
    a, b = _pair(a, b)
    row = [0] * (len(b) + 1)
    for x in a:
        diag = 0
        for j in range(1, len(b) + 1):
            up = row[j]
            if b[j - 1] == x:
                row[j] = diag + 1
            elif row[j - 1] > up:
                row[j] = row[j - 1]
            diag = up
    return row[-1]


def insdel_distance(a: Sequence, b: Sequence) -> int:
    """``|a| + |b| - 2 LCS(a, b)``; equals ``2n - 2 LCS`` for equal lengths."""
    return len(a) + len(b) - 2 * lcs_length(a, b)


def hamming_distance(a: Sequence, b: Sequence) -> int:
    a, b = _pair(a, b)
    if len(a) != len(b):
        raise ValueError("Hamming distance needs equal lengths")
    return sum(x != y for x, y in zip(a, b))


def words_of(code: LinearCode, rows: np.ndarray) -> list[Codeword]:
    spec = code.spec
    return [tuple(FieldElement(spec, int(v)) for v in r) for r in np.atleast_2d(rows)]


@dataclass
class DistanceReport:
    code: LinearCode
    d_hamming: int
    d_insdel: int
    witness: tuple[Codeword, Codeword]
    method: str
    pairs_examined: int
    elapsed: float = 0.0
    witness_messages: tuple[int, int] | None = None
    exact: bool = True
    context: dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def k(self) -> int:
        return self.code.k

    @property
    def bound_improved(self) -> int:
        return 2 * self.n - 2 * self.k

    @property
    def bound_singleton(self) -> int:
        return 2 * self.n - 2 * self.k + 2

    def __eq__(self, other: object) -> bool:
        # elapsed time is deliberately ignored
        if not isinstance(other, DistanceReport):
            return NotImplemented
        keys = ("code", "d_hamming", "d_insdel", "witness", "method", "pairs_examined",
                "witness_messages", "exact", "context")
        return all(getattr(self, k) == getattr(other, k) for k in keys)


class BoundVerdict(NamedTuple):
    singleton_ok: bool
    improved_applicable: bool
    improved_ok: bool | None
    meets_improved: bool
    meets_singleton: bool
    even: bool
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_bounds(report: DistanceReport) -> BoundVerdict:
    n, k, d = report.n, report.k, report.d_insdel
    applicable = n > k >= 2
    violations = []
    singleton_ok = d <= report.bound_singleton
    if not singleton_ok:
        violations.append(f"d={d} exceeds the Singleton bound 2n-2k+2={report.bound_singleton}")
    improved_ok = d <= report.bound_improved if applicable else None
    if improved_ok is False:
        violations.append(f"d={d} exceeds the improved bound 2n-2k={report.bound_improved}")
    even = d % 2 == 0
    if not even:
        violations.append(f"d={d} is odd for equal-length codewords")
    if report.d_insdel > 2 * report.d_hamming:
        violations.append(f"d={d} exceeds twice the Hamming distance {report.d_hamming}")
    return BoundVerdict(
        singleton_ok=singleton_ok,
        improved_applicable=applicable,
        improved_ok=improved_ok,
        meets_improved=d == report.bound_improved,
        meets_singleton=d == report.bound_singleton,
        even=even,
        violations=tuple(violations),
    )


# --- chunked max-LCS reduction ------------------------------------------------

def reduce_chunks(tasks: list[Callable[[], tuple]], cap: int, workers: int = 1) -> list[tuple]:
    """Run chunk tasks in order and return their results.

    Each result starts with the chunk's best LCS.  Once a chunk reaches ``cap``
    later chunks cannot change the lexicographically first maximiser, so they
    are skipped.  The outcome is the same for every ``workers`` value.
    """
    results = []
    if workers <= 1:
        for task in tasks:
            res = task()
            results.append(res)
            if res[0] >= cap:
                break
        return results
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(task) for task in tasks]
        for fut in futures:
            res = fut.result()
            results.append(res)
            if res[0] >= cap:
                for rest in futures:
                    rest.cancel()
                break
    return results


def _pair_chunks(m: int, parts: int) -> list[tuple[int, int]]:
    """Split first-index range ``[0, m)`` into ranges with roughly equal pair counts."""
    total = m * (m - 1) // 2
    if parts <= 1 or total == 0:
        return [(0, m)]
    bounds, acc, target = [0], 0, total / parts
    for i in range(m):
        acc += m - 1 - i
        if acc >= target * len(bounds) and len(bounds) < parts:
            bounds.append(i + 1)
    if bounds[-1] != m:
        bounds.append(m)
    return [(lo, hi) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]


def _pair_rank(m: int, i: int, j: int) -> int:
    """Zero-based position of pair ``(i, j)`` in the row-major scan of ``i < j``."""
    return i * (m - 1) - i * (i - 1) // 2 + (j - i - 1)


def check_pair_budget(code: LinearCode, budget: int = PAIR_BUDGET) -> int:
    m = code.size
    pairs = m * (m - 1) // 2
    if pairs > budget:
        raise BudgetExceeded(
            f"{pairs} codeword pairs exceed the exhaustive budget of {budget}; "
            "use witness_pair or the normalized search for two-dimensional codes"
        )
    return pairs


def min_insdel_exhaustive(code: LinearCode, workers: int = 1, budget: int = PAIR_BUDGET) -> DistanceReport:
    """Exact minimum insdel distance over all unordered pairs of distinct codewords.

    The witness is the first maximiser of the LCS in message order, i.e. the
    lexicographically least minimising pair.
    """
    start = time.perf_counter()
    total_pairs = check_pair_budget(code, budget)
    words = enumerate_codewords(code, budget=max(code.size, 1))
    m, n = words.shape
    cap = n - 1
    weights = np.count_nonzero(words[1:], axis=1)
    d_hamming = int(weights.min())

    parts = 1 if workers <= 1 else workers * 4
    tasks = [
        (lambda lo=lo, hi=hi: kernels.best_pair(words, lo, hi, cap))
        for lo, hi in _pair_chunks(m, parts)
    ]
    results = [r for r in reduce_chunks(tasks, cap, workers) if r[1] >= 0]
    best = max(r[0] for r in results)
    _, i, j = min((r for r in results if r[0] == best), key=lambda r: (r[1], r[2]))
    examined = _pair_rank(m, i, j) + 1 if best >= cap else total_pairs

    a, b = words_of(code, words[[i, j]])
    d = 2 * n - 2 * best
    if insdel_distance(a, b) != d:
        raise InvariantViolation("kernel LCS disagrees with the reference LCS on the witness pair")
    return DistanceReport(
        code=code,
        d_hamming=d_hamming,
        d_insdel=d,
        witness=(a, b),
        method="exhaustive",
        pairs_examined=examined,
        elapsed=time.perf_counter() - start,
        witness_messages=(i, j),
    )


class WitnessPair(NamedTuple):
    a: Codeword
    b: Codeword
    lcs_bound: int


def witness_pair(code: LinearCode) -> WitnessPair:
    """Two codewords with LCS >= k, certifying ``d(C) <= 2n - 2k`` for an MDS code.

    ``a`` is zero on coordinates ``0..k-2`` and 1 at ``k-1``; ``b`` is zero on
    ``1..k-1`` and 1 at ``k``.  Both share the subsequence ``(0, ..., 0, 1)``.
    """
    n, k = code.n, code.k
    if k < 2:
        raise CodeError("witness pairs need k >= 2")
    if n <= k:
        raise CodeError("witness pairs need n > k")
    if not columns_in_general_position(code):
        raise CodeError("code is not MDS")
    a = mds_support_codeword(code, range(0, k - 1), k - 1, check_mds=False)
    b = mds_support_codeword(code, range(1, k), k, check_mds=False)
    ell = lcs_length(a, b)
    if ell < k:
        raise InvariantViolation(f"witness LCS {ell} < k = {k}")
    return WitnessPair(a, b, ell)


def witness_report(code: LinearCode) -> DistanceReport:
    """Upper-bound report from :func:`witness_pair`; no enumeration."""
    start = time.perf_counter()
    a, b, _ = witness_pair(code)
    return DistanceReport(
        code=code,
        d_hamming=code.n - code.k + 1,
        d_insdel=insdel_distance(a, b),
        witness=(a, b),
        method="witness-only",
        pairs_examined=1,
        elapsed=time.perf_counter() - start,
        exact=False,
    )
