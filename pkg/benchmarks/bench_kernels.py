"""Compare the compiled and numpy LCS kernels on the workloads the searches use.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json out.json]

Each workload runs on every available backend; results must agree exactly.
"""

import argparse
import json
import sys
import time

import numpy as np

from insdelcodes.gf import find_primitive, make_field
from insdelcodes.kernels import available_backends
from insdelcodes.lincode import codeword_block, enumerate_codewords
from insdelcodes.rs2opt import build_rs2


def workloads():
    rng = np.random.default_rng(0)
    spec = make_field(2, 13)
    code = build_rs2(spec, find_primitive(spec), (1, 2, 4, 8))
    rows = codeword_block(code, 0, 1 << 18)
    a = rows[1].copy()
    yield "lcs_many n=4, 2^18 rows", lambda m: m.lcs_many(a, rows)
    yield "best_against n=4, 2^18 rows, no early exit", lambda m: m.best_against(a, rows, 1, 4)

    gf = make_field(2, 5)
    words = enumerate_codewords(build_rs2(gf, find_primitive(gf), (0, 1, 3, 9)))
    yield "best_pair n=4, 1024 words (all pairs)", lambda m: m.best_pair(words, 0, len(words), 4)

    long_rows = rng.integers(0, 16, size=(2000, 48), dtype=np.int32)
    yield "lcs_many n=48, 2000 rows", lambda m: m.lcs_many(long_rows[0].copy(), long_rows)
    dp_rows = rng.integers(0, 4, size=(200, 100), dtype=np.int32)
    yield "lcs_many n=100 (row DP), 200 rows", lambda m: m.lcs_many(dp_rows[0].copy(), dp_rows)


def _same(x, y):
    if isinstance(x, np.ndarray):
        return np.array_equal(x, y)
    return x == y


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", help="also write results to this file")
    args = ap.parse_args(argv)

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the numpy fallback is timed", file=sys.stderr)
    rows = []
    for name, fn in workloads():
        timings, outputs = {}, {}
        for bname, mod in backends.items():
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                outputs[bname] = fn(mod)
                best = min(best, time.perf_counter() - t0)
            timings[bname] = best
        vals = list(outputs.values())
        agree = all(_same(vals[0], v) for v in vals[1:])
        rows.append({"workload": name, "seconds": timings, "agree": agree})
        speed = ""
        if "cython" in timings:
            speed = f"  speedup {timings['python'] / timings['cython']:7.1f}x"
        cols = "  ".join(f"{b} {t * 1e3:9.2f} ms" for b, t in timings.items())
        print(f"{name:<45} {cols}{speed}  {'ok' if agree else 'MISMATCH'}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2)
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
