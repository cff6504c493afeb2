import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from insdelcodes.errors import BudgetExceeded, CodeError
from insdelcodes.gf import make_field
from insdelcodes.lincode import (
    LinearCode,
    columns_in_general_position,
    encode,
    enumerate_codewords,
    is_mds,
    iter_codewords,
    matrix_rank,
    mds_support_codeword,
    message_digits,
    min_hamming_distance,
    rs_code,
)


def _span_oracle(code):
    """All codewords as int tuples, by direct linear combination in message order."""
    spec = code.spec
    out = []
    for msg in itertools.product(range(spec.q), repeat=code.k):
        word = [0] * code.n
        for m, row in zip(msg, code.rows):
            word = [spec.add(w, spec.mul(m, g)) for w, g in zip(word, row)]
        out.append(tuple(word))
    return out


def _min_weight_oracle(code):
    return min(sum(v != 0 for v in w) for w in _span_oracle(code) if any(w))


def test_gf7_rs_code():
    gf7 = make_field(7)
    code = rs_code(gf7, [1, 2, 3, 4, 5], 2)
    assert (code.n, code.k, code.size) == (5, 2, 49)
    assert min_hamming_distance(code) == 4
    assert is_mds(code)
    assert [x.value for x in encode(code, [1, 1])] == [2, 3, 4, 5, 6]


def test_gf8_rs_7_3():
    gf8 = make_field(2, 3)
    code = rs_code(gf8, range(1, 8), 3)
    assert min_hamming_distance(code) == 5
    assert columns_in_general_position(code)


def test_repetition_and_non_mds():
    gf2 = make_field(2)
    rep = LinearCode(gf2, [[1, 1, 1]])
    assert min_hamming_distance(rep) == 3 and is_mds(rep)
    weak = LinearCode(gf2, [[1, 0, 0, 0], [0, 1, 1, 1]])
    assert min_hamming_distance(weak) == 1
    assert not is_mds(weak) and not columns_in_general_position(weak)
    spc = LinearCode(gf2, [[1, 0, 1], [0, 1, 1]])
    assert is_mds(spc) and columns_in_general_position(spc)


def test_construction_errors():
    gf7 = make_field(7)
    with pytest.raises(CodeError):
        rs_code(gf7, [1, 1, 2], 2)
    with pytest.raises(CodeError):
        rs_code(gf7, [1, 2, 3], 3)
    with pytest.raises(CodeError):
        rs_code(make_field(2), [0, 1, 0], 1)
    with pytest.raises(CodeError):
        LinearCode(gf7, [[1, 2, 3], [2, 4, 6]])  # rank 1
    with pytest.raises(CodeError):
        encode(rs_code(gf7, [1, 2, 3], 2), [1])


def test_enumeration_order_and_digits():
    gf3 = make_field(3)
    code = LinearCode(gf3, [[1, 0, 1], [0, 1, 2]])
    words = enumerate_codewords(code)
    assert [tuple(r) for r in words.tolist()] == _span_oracle(code)
    assert words[0].tolist() == [0, 0, 0]
    assert message_digits(code, 5) == (1, 2)
    assert [tuple(x.value for x in w) for w in iter_codewords(code)] == _span_oracle(code)


def test_budget_guard():
    gf7 = make_field(7)
    code = rs_code(gf7, [1, 2, 3, 4, 5], 3)
    with pytest.raises(BudgetExceeded):
        enumerate_codewords(code, budget=100)
    with pytest.raises(BudgetExceeded):
        min_hamming_distance(code, budget=100)


def test_support_codewords():
    gf7 = make_field(7)
    code = rs_code(gf7, [1, 2, 3, 4, 5, 6], 3)
    a = mds_support_codeword(code, [0, 1], 2)
    assert [x.value for x in a[:3]] == [0, 0, 1]
    assert all(x.value for x in a[3:])
    b = mds_support_codeword(code, [1, 2], 3)
    assert b[0].value != 0 and [x.value for x in b[1:4]] == [0, 0, 1]
    with pytest.raises(CodeError):
        mds_support_codeword(code, [0], 2)


def test_json_roundtrip():
    code = rs_code(make_field(3, 2), [1, 2, 3, 4], 2)
    assert LinearCode.from_json(code.to_json()) == code


@st.composite
def small_codes(draw):
    spec = draw(st.sampled_from([make_field(2), make_field(3), make_field(2, 2), make_field(5)]))
    n = draw(st.integers(2, 6))
    k = draw(st.integers(1, min(3, n - 1)))
    rows = draw(st.lists(st.lists(st.integers(0, spec.q - 1), min_size=n, max_size=n), min_size=k, max_size=k))
    if matrix_rank(spec, rows) != k:
        # force systematic form on the first k columns
        rows = [[int(i == t) if i < k else r[i] for i in range(n)] for t, r in enumerate(rows)]
    return LinearCode(spec, rows)


@settings(max_examples=80, deadline=None)
@given(small_codes())
def test_hamming_matches_oracle_and_singleton(code):
    d = min_hamming_distance(code)
    assert d == _min_weight_oracle(code)
    assert d <= code.n - code.k + 1
    assert is_mds(code) == columns_in_general_position(code)
    words = enumerate_codewords(code)
    assert len({tuple(r) for r in words.tolist()}) == code.size
    assert np.array_equal(words, np.array(_span_oracle(code), dtype=np.int32))
