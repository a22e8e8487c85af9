"""Compare the numba and pure-numpy exact-rank backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Three workloads: Bareiss rank of random small-integer matrices, cup-product
rank on the chart of a large generic arrangement, and the full oracle
verification over the seeded C1/C2 corpora.  JIT compilation is triggered
before timing; results of both backends are checked for equality.
"""
import argparse
import time

import numpy as np

from jumploci import _kernels
from jumploci.arrangement import classify
from jumploci.gallery import c1_corpus, c2_corpus, nodal
from jumploci.osalg import make_chart
from jumploci.resonance import verify_oracle


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def random_matrices(rng, size, count):
    # rank-deficient on purpose: product of two thin factors
    mats = []
    for _ in range(count):
        k = int(rng.integers(size // 2, size))
        mats.append(rng.integers(-3, 4, size=(size, k)) @ rng.integers(-3, 4, size=(k, size)))
    return mats


def bench_rank(rng, repeat):
    rows = []
    for size in (16, 32, 64):
        mats = random_matrices(rng, size, 20)
        res = {}
        for backend in ("numpy", "numba"):
            _kernels.set_backend(backend)
            res[backend] = best_of(lambda: [_kernels.rank(m) for m in mats], repeat)
        assert res["numpy"][1] == res["numba"][1]
        rows.append((f"rank {size}x{size} (x20)", res["numpy"][0], res["numba"][0]))
    return rows


def bench_cup(rng, repeat):
    rows = []
    for n in (16, 24, 32):
        arr = nodal(n)
        chart = make_chart(arr, n - 1)
        inc, rf, rl = chart._kernel_data
        forms = [rng.integers(-20, 21, size=chart.n) for _ in range(20)]
        res = {}
        for backend in ("numpy", "numba"):
            _kernels.set_backend(backend)
            res[backend] = best_of(lambda: [_kernels.cup_rank(inc, rf, rl, a) for a in forms], repeat)
        assert res["numpy"][1] == res["numba"][1]
        rows.append((f"cup rank nodal({n}) b2={chart.b2} (x20)", res["numpy"][0], res["numba"][0]))
    return rows


def bench_verify(repeat):
    corpus = c1_corpus(10) + c2_corpus(10)
    charts = []
    for arr in corpus:
        info = classify(arr)
        charts.append(make_chart(arr, info.h0 if info.tag == "C1" else info.hinf))
    res = {}
    for backend in ("numpy", "numba"):
        _kernels.set_backend(backend)
        res[backend] = best_of(
            lambda: [verify_oracle(a, c, 100, 0).ok for a, c in zip(corpus, charts)], repeat)
        assert all(res[backend][1])
    return [("verify_oracle, 20 corpus arrangements", res["numpy"][0], res["numba"][0])]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if _kernels.numba is None:
        raise SystemExit("numba is not installed; nothing to compare")
    _kernels.warmup()
    rng = np.random.default_rng(args.seed)
    rows = bench_rank(rng, args.repeat) + bench_cup(rng, args.repeat) + bench_verify(args.repeat)
    width = max(len(r[0]) for r in rows)
    print(f"{'workload':<{width}}  {'numpy [s]':>10}  {'numba [s]':>10}  {'speedup':>8}")
    for name, t_np, t_nb in rows:
        print(f"{name:<{width}}  {t_np:>10.4f}  {t_nb:>10.4f}  {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
