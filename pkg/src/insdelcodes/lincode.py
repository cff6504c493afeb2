"""Linear codes over GF(q): construction, enumeration and Hamming-metric analysis.

Codewords handed to callers are tuples of :class:`~insdelcodes.gf.FieldElement`.
Bulk paths (enumeration, distance scans) work on int32 arrays of element
encodings instead; row ``r`` of :func:`codeword_block` is the codeword of the
message whose base-``q`` digits (first symbol most significant) spell ``r``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, CodeError, InvariantViolation
from .gf import FieldElement, FieldSpec

HAMMING_BUDGET = 1 << 26

Codeword = tuple[FieldElement, ...]


def _solve(spec: FieldSpec, a: list[list[int]], b: list[int]) -> list[int] | None:
    """Solve ``a @ x = b`` over the field; None when ``a`` is singular."""
    n = len(a)
    m = [list(row) + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = spec.inv(m[col][col])
        m[col] = [spec.mul(inv, v) for v in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [spec.sub(v, spec.mul(f, w)) for v, w in zip(m[r], m[col])]
    return [row[n] for row in m]


def matrix_rank(spec: FieldSpec, rows: Sequence[Sequence[int]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = spec.inv(m[rank][col])
        m[rank] = [spec.mul(inv, v) for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [spec.sub(v, spec.mul(f, w)) for v, w in zip(m[r], m[rank])]
        rank += 1
    return rank


class LinearCode:
    """Row space of a full-rank ``k x n`` generator matrix."""

    def __init__(self, spec: FieldSpec, generator: Sequence[Sequence[FieldElement | int]]):
        rows = tuple(tuple(spec.encode(x) for x in row) for row in generator)
        if not rows or not rows[0]:
            raise CodeError("generator must have at least one row and one column")
        if len({len(r) for r in rows}) != 1:
            raise CodeError("generator rows have different lengths")
        if matrix_rank(spec, rows) != len(rows):
            raise CodeError("generator rows are linearly dependent")
        self.spec = spec
        self.rows = rows
        self._multiples: np.ndarray | None = None

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def size(self) -> int:
        return self.spec.q**self.k

    @property
    def generator(self) -> tuple[Codeword, ...]:
        return tuple(tuple(FieldElement(self.spec, v) for v in row) for row in self.rows)

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}] over GF({self.spec.q}))"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.spec == other.spec and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.spec, self.rows))

    def to_json(self) -> dict:
        return {
            "field": self.spec.to_json(),
            "n": self.n,
            "k": self.k,
            "generator": [[list(self.spec.coeffs(v)) for v in row] for row in self.rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LinearCode":
        spec = FieldSpec.from_json(data["field"])
        code = cls(spec, data["generator"])
        if code.n != data.get("n", code.n) or code.k != data.get("k", code.k):
            raise CodeError("descriptor n/k disagree with its generator matrix")
        return code

    def multiples(self) -> np.ndarray:
        """``(k, q, n)`` table: entry ``[t, a]`` is ``a`` times generator row ``t``."""
        if self._multiples is None:
            spec = self.spec
            tab = np.empty((self.k, spec.q, self.n), dtype=np.int32)
            for t, row in enumerate(self.rows):
                for a in range(spec.q):
                    tab[t, a] = [spec.mul(a, g) for g in row]
            self._multiples = tab
        return self._multiples


def encode(code: LinearCode, message: Sequence[FieldElement | int]) -> Codeword:
    spec = code.spec
    if len(message) != code.k:
        raise CodeError(f"message length {len(message)} != k = {code.k}")
    out = [0] * code.n
    for m, row in zip(message, code.rows):
        mv = spec.encode(m)
        if mv:
            out = [spec.add(o, spec.mul(mv, g)) for o, g in zip(out, row)]
    return tuple(FieldElement(spec, v) for v in out)


def message_digits(code: LinearCode, index: int) -> tuple[int, ...]:
    q = code.spec.q
    digits = []
    for _ in range(code.k):
        index, d = divmod(index, q)
        digits.append(d)
    return tuple(reversed(digits))


def codeword_block(code: LinearCode, start: int, stop: int) -> np.ndarray:
    """Codewords of message indices ``start..stop-1`` as an int32 ``(stop-start, n)`` array."""
    spec, q = code.spec, code.spec.q
    idx = np.arange(start, stop, dtype=np.int64)
    tab = code.multiples()
    out = np.zeros((len(idx), code.n), dtype=np.int64)
    for t in range(code.k - 1, -1, -1):
        digit = idx % q
        idx //= q
        out = spec.add_arrays(out, tab[t][digit])
    return np.ascontiguousarray(out, dtype=np.int32)


def iter_codeword_blocks(code: LinearCode, block: int = 1 << 20) -> Iterator[tuple[int, np.ndarray]]:
    total = code.size
    for lo in range(0, total, block):
        yield lo, codeword_block(code, lo, min(total, lo + block))


def _check_budget(code: LinearCode, budget: int) -> None:
    if code.size > budget:
        raise BudgetExceeded(
            f"q^k = {code.spec.q}^{code.k} = {code.size} codewords exceeds the budget of {budget}"
        )


def enumerate_codewords(code: LinearCode, budget: int = HAMMING_BUDGET) -> np.ndarray:
    """All ``q^k`` codewords in message order; the first row is the zero word."""
    _check_budget(code, budget)
    return codeword_block(code, 0, code.size)


def iter_codewords(code: LinearCode, budget: int = HAMMING_BUDGET) -> Iterator[Codeword]:
    _check_budget(code, budget)
    spec = code.spec
    for _, blk in iter_codeword_blocks(code, 1 << 14):
        for row in blk.tolist():
            yield tuple(FieldElement(spec, v) for v in row)


def rs_code(spec: FieldSpec, locators: Sequence[FieldElement | int], k: int) -> LinearCode:
    """Reed-Solomon code: generator row ``t`` is ``(a_1^t, ..., a_n^t)``."""
    locs = [spec.encode(a) for a in locators]
    n = len(locs)
    if len(set(locs)) != n:
        raise CodeError("code locators must be pairwise distinct")
    if n > spec.q:
        raise CodeError(f"length {n} exceeds the field size {spec.q}")
    if not 1 <= k < n:
        raise CodeError(f"need 1 <= k < n, got k={k}, n={n}")
    rows = [[spec.pow(a, t) for a in locs] for t in range(k)]
    return LinearCode(spec, rows)


def min_hamming_distance(code: LinearCode, budget: int = HAMMING_BUDGET) -> int:
    """Minimum weight over the nonzero codewords."""
    _check_budget(code, budget)
    best = code.n
    for lo, blk in iter_codeword_blocks(code):
        weights = np.count_nonzero(blk, axis=1)
        if lo == 0:
            weights = weights[1:]
        if weights.size:
            best = min(best, int(weights.min()))
    return best


def is_mds(code: LinearCode, budget: int = HAMMING_BUDGET) -> bool:
    return min_hamming_distance(code, budget) == code.n - code.k + 1


def columns_in_general_position(code: LinearCode) -> bool:
    """MDS test without enumeration: every ``k`` generator columns are independent."""
    cols = list(zip(*code.rows))
    for subset in combinations(range(code.n), code.k):
        if matrix_rank(code.spec, [cols[c] for c in subset]) != code.k:
            return False
    return True


def mds_support_codeword(
    code: LinearCode,
    zero_positions: Sequence[int],
    unit_position: int,
    check_mds: bool = True,
) -> Codeword:
    """Codeword that vanishes on ``zero_positions``, is 1 at ``unit_position`` and nonzero elsewhere.

    Solves the ``k x k`` system on the generator columns indexed by
    ``zero_positions`` and ``unit_position``.
    """
    spec, n, k = code.spec, code.n, code.k
    zeros = sorted(set(zero_positions))
    if not n > k >= 2:
        raise CodeError(f"need n > k >= 2, got [{n}, {k}]")
    if len(zeros) != k - 1 or any(not 0 <= z < n for z in zeros):
        raise CodeError(f"need {k - 1} distinct zero positions in [0, {n})")
    if not 0 <= unit_position < n or unit_position in zeros:
        raise CodeError("unit position must be a coordinate outside zero_positions")
    if check_mds and not columns_in_general_position(code):
        raise CodeError("code is not MDS")
    support = zeros + [unit_position]
    # message m with (m G)_j = target_j on the chosen columns: G_S^T m = target
    a = [[code.rows[t][j] for t in range(k)] for j in support]
    target = [0] * (k - 1) + [1]
    msg = _solve(spec, a, target)
    if msg is None:
        raise InvariantViolation(f"generator columns {support} are singular in an MDS code")
    word = encode(code, msg)
    for j, x in enumerate(word):
        expected_zero = j in zeros
        if (x.value == 0) != expected_zero:
            raise InvariantViolation(f"support codeword has the wrong zero pattern at coordinate {j}")
    return word
