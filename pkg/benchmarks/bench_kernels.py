"""Compare the compiled and pure-Python closure kernels.

    python benchmarks/bench_kernels.py [--objects 400] [--attrs 16] [--repeat 3]
"""

from __future__ import annotations

import argparse
import random
import timeit

from distrel import FormalContext, enumerate_concepts, kernels


def random_rows(rng: random.Random, n_objs: int, n_attrs: int, density: float) -> list[int]:
    return [sum(1 << k for k in range(n_attrs) if rng.random() < density) for _ in range(n_objs)]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--objects", type=int, default=400)
    ap.add_argument("--attrs", type=int, default=16)
    ap.add_argument("--density", type=float, default=0.4)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    rows = random_rows(rng, args.objects, args.attrs, args.density)
    backends = ["python"] + (["cython"] if kernels.BACKEND == "cython" else [])
    if len(backends) == 1:
        print("compiled kernels not built; timing the Python fallback only")

    n = len(kernels.next_closure_intents(rows, args.attrs, backend="python"))
    print(f"{args.objects} objects x {args.attrs} attributes, density {args.density}: {n} intents")
    times = {}
    for b in backends:
        packed = kernels.pack_rows(rows) if b == "cython" else rows
        t = min(timeit.repeat(lambda: kernels.next_closure_intents(packed, args.attrs, backend=b),
                              number=1, repeat=args.repeat))
        times[b] = t
        print(f"  next_closure_intents [{b:6}] {t * 1e3:9.2f} ms")
    if len(times) == 2:
        print(f"  speedup {times['python'] / times['cython']:.1f}x")

    objs = [f"g{i}" for i in range(args.objects)]
    attrs = [f"m{k}" for k in range(args.attrs)]
    ctx = FormalContext.from_rows(objs, attrs, rows)
    for b in backends:
        t = min(timeit.repeat(lambda: enumerate_concepts(ctx, backend=b), number=1,
                              repeat=args.repeat))
        print(f"  enumerate_concepts   [{b:6}] {t * 1e3:9.2f} ms")


if __name__ == "__main__":
    main()
