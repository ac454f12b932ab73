"""Compare the numba and numpy backends of the congruence kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both backends are called directly, so the BASISTYPE_DISABLE_NUMBA flag does
not matter here. The first numba call per signature is timed separately as
compile (or cache load) time.
"""

import argparse
import random
import time

import numpy as np

from basistype import _kernels


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def _witness_sets(count, max_rank, seed=0):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        pairs = []
        while len(pairs) < rng.randint(1, 4):
            a, b = rng.randint(1, max_rank), rng.randint(1, max_rank)
            if a != b:
                pairs.append((a, b))
        out.append(np.array(pairs, dtype=np.int64))
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _kernels.HAS_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    start = time.perf_counter()
    _kernels.closure_labels_numba(np.array([[1, 2]], dtype=np.int64), 4)
    _kernels.equiv_matrix_numba(1, 1, 4)
    print(f"numba warm-up (compile or cache load): {time.perf_counter() - start:.3f}s")

    rows = []
    for bound in (200, 2_000, 20_000):
        sets = _witness_sets(50, 20)
        for name, fn in (("numba", _kernels.closure_labels_numba), ("numpy", _kernels.closure_labels_numpy)):
            t = _best(lambda: [fn(p, bound) for p in sets], args.repeat)
            rows.append(("closure x50", bound, name, t))
    for bound in (200, 1_000, 4_000):
        types = [(n, k) for n in range(1, 9) for k in range(1, 9)]
        for name, fn in (("numba", _kernels.equiv_matrix_numba), ("numpy", _kernels.equiv_matrix_numpy)):
            t = _best(lambda: [fn(n, k, bound) for n, k in types], args.repeat)
            rows.append(("matrix x64", bound, name, t))

    print(f"{'kernel':<12} {'bound':>7} {'backend':<7} {'best s':>9}")
    for kernel, bound, name, t in rows:
        print(f"{kernel:<12} {bound:>7} {name:<7} {t:>9.4f}")


if __name__ == "__main__":
    main()
