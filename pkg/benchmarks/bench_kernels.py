"""Time the compiled kernels against the numpy fallback on corpus groups.

    python3 benchmarks/bench_kernels.py [--repeat N] [--groups NAME ...]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from bpilab import _fallback
from bpilab.corpus import builtin

try:
    from bpilab import _speedups
except ImportError:  # extension not built
    _speedups = None

DEFAULT_GROUPS = ["S4", "GL(2,3)", "SL(2,3):3^2", "F21wrC2", "SL(2,3):3^2wrC2"]


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_group(name: str, repeat: int) -> list[tuple[str, str, float, float | None]]:
    G = builtin(name).to_group()
    E = G.elements
    arrays = G.chain.arrays
    gens = np.array(G.generators, dtype=np.int32).reshape(-1, G.degree)
    cd = G.classes
    reps = np.array([G.rank(np.asarray(r.images)[None, :])[0] for r in cd.representatives])
    jobs = {
        "sift_ranks": lambda m: m.sift_ranks(E, *arrays),
        "conjugacy_class_ids": lambda m: m.conjugacy_class_ids(E, gens, *arrays),
    }
    if G.order <= 20_000:
        jobs["structure_constants"] = lambda m: m.structure_constants(
            E, G.inverse_ranks, cd.ids, reps, len(cd), *arrays)
    out = []
    for kernel, job in jobs.items():
        t_np = _best(lambda: job(_fallback), repeat)
        t_cy = _best(lambda: job(_speedups), repeat) if _speedups is not None else None
        if _speedups is not None:
            a, b = job(_fallback), job(_speedups)
            if kernel == "conjugacy_class_ids":  # labels may differ, partitions may not
                same = len(set(zip(a.tolist(), b.tolist()))) == len(set(a.tolist()))
            else:
                same = np.array_equal(a, b)
            if not same:
                raise SystemExit(f"backends disagree on {kernel} for {name}")
        out.append((f"{name} ({G.order})", kernel, t_np, t_cy))
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--groups", nargs="*", default=DEFAULT_GROUPS)
    args = ap.parse_args()
    print(f"{'group':<26}{'kernel':<22}{'numpy s':>10}{'cython s':>10}{'speedup':>9}")
    for name in args.groups:
        for grp, kernel, t_np, t_cy in bench_group(name, args.repeat):
            cy = f"{t_cy:10.4f}" if t_cy is not None else f"{'-':>10}"
            sp = f"{t_np / t_cy:8.1f}x" if t_cy else f"{'-':>9}"
            print(f"{grp:<26}{kernel:<22}{t_np:10.4f}{cy}{sp}")


if __name__ == "__main__":
    main()
