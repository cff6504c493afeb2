"""Numbered acceptance criteria.

Each test carries ``@pytest.mark.acceptance(number, title)``; ``conftest.py``
prints one PASS/FAIL line per criterion at the end of the run.  All checks are
exact integer comparisons.
"""

import itertools
import random

import numpy as np
import pytest
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from insdelcodes.channel import ChannelTrace, EditEvent, apply_edits, correction_experiment, decode_traces
from insdelcodes.gf import (
    find_primitive,
    irreducible_polynomials,
    is_prime,
    make_field,
    primitive_elements,
)
from insdelcodes.insdel import (
    check_bounds,
    hamming_distance,
    insdel_distance,
    min_insdel_exhaustive,
    witness_pair,
)
from insdelcodes.lincode import LinearCode, columns_in_general_position, iter_codewords, matrix_rank, rs_code
from insdelcodes.rs2opt import build_rs2, corollary_c_exponents, min_insdel_normalized, verify_case6_all

SWEEP_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]
SWEEP_SIZE = 600
SWEEP_MAX_WORDS = 1 << 12


def _random_code(rng, k_min=2):
    while True:
        p, e = rng.choice(SWEEP_FIELDS)
        spec = make_field(p, e)
        n = rng.randint(k_min + 1, 8)
        k = rng.randint(k_min, n - 1)
        if spec.q**k > SWEEP_MAX_WORDS:
            continue
        if rng.random() < 0.25 and n <= spec.q:
            return rs_code(spec, rng.sample(range(spec.q), n), k)
        rows = [[rng.randrange(spec.q) for _ in range(n)] for _ in range(k)]
        if matrix_rank(spec, rows) == k:
            return LinearCode(spec, rows)


@pytest.fixture(scope="module")
def sweep():
    rng = random.Random(20240601)
    codes = [_random_code(rng) for _ in range(SWEEP_SIZE)]
    return [(code, min_insdel_exhaustive(code)) for code in codes]


@pytest.fixture(scope="module")
def sweep_k1():
    rng = random.Random(7)
    codes = [_random_code(rng, k_min=1) for _ in range(200)]
    codes = [c for c in codes if c.k == 1] + [LinearCode(make_field(2), [[1, 1, 1]])]
    return [(code, min_insdel_exhaustive(code)) for code in codes]


@pytest.mark.acceptance(1, "doubling exponents n=3 over GF(2^7): d = 2n-4 = 2")
def test_doubling_n3(record_property):
    exps, e = corollary_c_exponents(3)
    spec = make_field(2, e)
    r = min_insdel_normalized(spec, find_primitive(spec), exps)
    record_property("detail", f"d={r.d_insdel}, {r.elapsed:.2f}s")
    assert (e, exps.exps) == (7, (1, 2, 4))
    assert r.d_insdel == 2 == 2 * 3 - 4


@pytest.mark.slow
@pytest.mark.acceptance(2, "doubling exponents n=4 over GF(2^13): d = 2n-4 = 4")
def test_doubling_n4(record_property):
    exps, e = corollary_c_exponents(4)
    spec = make_field(2, e)
    r = min_insdel_normalized(spec, find_primitive(spec), exps)
    record_property("detail", f"d={r.d_insdel}, {r.pairs_examined} pairs, {r.elapsed:.1f}s")
    assert (e, exps.exps) == (13, (1, 2, 4, 8))
    assert r.d_insdel == 4 == 2 * 4 - 4


@pytest.mark.acceptance(3, "random codes with 2 <= k < n: exhaustive d <= 2n-2k; witness pairs on MDS codes")
def test_improved_bound_sweep(sweep, record_property):
    violations = [c for c, r in sweep if r.d_insdel > 2 * c.n - 2 * c.k]
    mds = [c for c, _ in sweep if columns_in_general_position(c)]
    for c in mds:
        a, b, ell = witness_pair(c)
        assert ell >= c.k
        assert insdel_distance(a, b) <= 2 * c.n - 2 * c.k
        words = set(iter_codewords(c))
        assert a in words and b in words
    qs = sorted({c.spec.q for c, _ in sweep})
    record_property("detail", f"{len(sweep)} codes over q in {qs}, {len(mds)} MDS, {len(violations)} violations")
    assert len(sweep) >= 500 and set(qs) == {2, 3, 4, 5, 7, 8, 9}
    assert not violations
    assert all(check_bounds(r).ok for _, r in sweep)


@pytest.mark.acceptance(4, "Singleton-type bound d <= 2n-2k+2 incl. k=1; [3,1] binary repetition code has d = 6")
def test_singleton_sweep(sweep, sweep_k1, record_property):
    every = sweep + sweep_k1
    bad = [c for c, r in every if r.d_insdel > 2 * c.n - 2 * c.k + 2]
    rep = min_insdel_exhaustive(LinearCode(make_field(2), [[1, 1, 1]]))
    record_property("detail", f"{len(every)} codes ({len(sweep_k1)} with k=1), repetition d={rep.d_insdel}")
    assert len(sweep_k1) > 1 and not bad
    assert rep.d_insdel == 6 == 2 * 3 - 2 * 1 + 2


@pytest.mark.acceptance(5, "d = |a|+|b|-2 LCS equals BFS edit distance (lengths <= 6, 3 symbols); metric axioms")
def test_distance_oracle(record_property):
    seqs = [s for length in range(7) for s in itertools.product(range(3), repeat=length)]
    index = {s: i for i, s in enumerate(seqs)}
    rows, cols = [], []
    for s in seqs:
        for pos in range(len(s)):
            rows.append(index[s])
            cols.append(index[s[:pos] + s[pos + 1:]])
    graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(seqs), len(seqs)))
    # deleting first and inserting afterwards never exceeds the longer length, so the
    # graph on lengths <= 6 already holds every shortest script
    bfs = shortest_path(graph, method="D", directed=False, unweighted=True)
    mismatches = sum(
        insdel_distance(a, b) != bfs[i, j]
        for i, a in enumerate(seqs) for j, b in enumerate(seqs)
    )
    rng = random.Random(5)
    bad_axioms = 0
    for _ in range(10_000):
        a, b, c = ([rng.randrange(3) for _ in range(rng.randint(0, 10))] for _ in range(3))
        dab, dbc, dac = insdel_distance(a, b), insdel_distance(b, c), insdel_distance(a, c)
        ok = (dab == insdel_distance(b, a) and dac <= dab + dbc and (dab == 0) == (a == b) and dab >= 0)
        bad_axioms += not ok
    record_property("detail", f"{len(seqs)}^2 pairs, {mismatches} mismatches, {bad_axioms} axiom failures")
    assert mismatches == 0 and bad_axioms == 0


@pytest.mark.acceptance(6, "d(a,b) <= 2 d_H(a,b) on 1e5 random pairs; d(C) <= 2 d_H(C) on the sweep")
def test_half_hamming(sweep, record_property):
    rng = random.Random(6)
    bad = 0
    for _ in range(100_000):
        n = rng.randint(1, 10)
        q = rng.choice([2, 3, 5, 16])
        a = [rng.randrange(q) for _ in range(n)]
        b = [rng.randrange(q) for _ in range(n)]
        bad += insdel_distance(a, b) > 2 * hamming_distance(a, b)
    code_bad = [c for c, r in sweep if r.d_insdel > 2 * r.d_hamming]
    record_property("detail", f"{bad} pair violations, {len(code_bad)} code violations")
    assert bad == 0 and not code_bad


def _fields_up_to(q_max):
    for q in range(2, q_max + 1):
        for p in range(2, q + 1):
            if is_prime(p):
                e = round(np.log(q) / np.log(p))
                if p**e == q:
                    yield make_field(p, e)
                    break


@pytest.mark.slow
@pytest.mark.acceptance(7, "normalized search equals exhaustive search for every q <= 32, n in {3, 4}")
def test_normalized_soundness(record_property):
    checked, mismatches = 0, []
    for spec in _fields_up_to(32):
        theta = find_primitive(spec)
        for n in (3, 4):
            for exps in itertools.combinations(range(spec.q - 1), n):
                a = min_insdel_normalized(spec, theta, exps).d_insdel
                b = min_insdel_exhaustive(build_rs2(spec, theta, exps)).d_insdel
                checked += 1
                if a != b:
                    mismatches.append((spec.q, exps, a, b))
    record_property("detail", f"{checked} exponent sets, {len(mismatches)} mismatches")
    assert checked > 0 and not mismatches, mismatches[:5]


@pytest.mark.acceptance(8, "determinant certificate for both doubling instances; (0,1,2) fails its precondition")
def test_case6_certificates(record_property):
    details = []
    for n in (3, 4):
        exps, e = corollary_c_exponents(n)
        spec = make_field(2, e)
        cert = verify_case6_all(exps, spec, find_primitive(spec))
        assert cert.ok, cert.failures
        triples = len(list(itertools.combinations(range(n), 3)))
        assert cert.pairs_checked == triples**2 and cert.coincident == triples
        details.append(f"n={n}: {cert.pairs_checked} pairs")
    spec = make_field(2, 7)
    bad = verify_case6_all((0, 1, 2), spec, find_primitive(spec))
    assert not bad.ok and bad.precondition and "condition (2)" in bad.precondition
    record_property("detail", ", ".join(details) + "; (0,1,2) rejected")


@pytest.mark.slow
@pytest.mark.acceptance(9, "t=1 edits always corrected on the n=4 doubling code (d=4)")
def test_channel_doubling_code(record_property):
    exps, e = corollary_c_exponents(4)
    spec = make_field(2, e)
    code = build_rs2(spec, find_primitive(spec), exps)
    res = correction_experiment(code, t=1, trials=12, seed=2024)
    record_property("detail", f"{res.successes}/{res.trials} decoded")
    assert res.trials >= 10 and res.success_rate == 1.0


@pytest.mark.acceptance(9, "every single deletion decoded uniquely on a GF(16) code with d=4")
def test_channel_single_deletions(record_property):
    spec = make_field(2, 4)
    code = build_rs2(spec, find_primitive(spec), (0, 1, 2, 4))
    d = min_insdel_exhaustive(code).d_insdel
    traces = [
        ChannelTrace(w, (EditEvent("delete", pos),), apply_edits(w, [EditEvent("delete", pos)]))
        for w in iter_codewords(code) for pos in range(code.n)
    ]
    decode_traces(code, traces)
    ok = sum(t.success for t in traces)
    record_property("detail", f"d={d}, {ok}/{len(traces)} single deletions")
    assert d == 4 and 2 * 1 < d
    assert ok == len(traces)


@pytest.mark.acceptance(10, "GF(2^7) result unchanged across 2 moduli x 3 primitive elements")
def test_choice_independence(record_property):
    exps, _ = corollary_c_exponents(3)
    seen = {}
    for mod in itertools.islice(irreducible_polynomials(2, 7), 2):
        spec = make_field(2, 7, mod)
        for theta in itertools.islice(primitive_elements(spec), 3):
            seen[(tuple(mod), theta.value)] = min_insdel_normalized(spec, theta, exps).d_insdel
    record_property("detail", f"{len(seen)} (modulus, theta) choices -> {sorted(set(seen.values()))}")
    assert len({m for m, _ in seen}) >= 2 and len(seen) >= 4
    assert set(seen.values()) == {2}
