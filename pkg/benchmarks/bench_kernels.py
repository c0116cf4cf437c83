"""Compare the pure-Python and compiled kernel backends on pipeline-shaped data.

Run directly:  python3 benchmarks/bench_kernels.py
"""

import random
import time

from krcascade import KERNEL_BACKEND
from krcascade._kernels import _pure

try:
    from krcascade._kernels import _fast
except ImportError:
    _fast = None


def bench(label, fn, args, repeat=5, inner=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / inner)
    print("  %-22s %10.3f ms" % (label, best * 1000))
    return best


def main():
    rng = random.Random(0)
    print("active backend: %s" % KERNEL_BACKEND)
    if _fast is None:
        print("compiled backend unavailable; timing the pure backend only")
    backends = [("pure", _pure)] + ([("compiled", _fast)] if _fast else [])

    # sizes mirror the large intermediate products of a full decomposition
    n = 200_000
    f = [rng.randrange(n) for _ in range(n)]
    g = [rng.randrange(n) for _ in range(n)]
    print("compose, %d points" % n)
    times = {}
    for name, mod in backends:
        times[name] = bench(name, mod.compose, (f, g))

    na, nsym_a, nb, nsym_b = 120, 40, 3000, 6
    delta_a = [rng.randrange(na) for _ in range(na * nsym_a)]
    delta_b = [rng.randrange(nb) for _ in range(nb * nsym_b)]
    omega = [rng.randrange(nsym_b) for _ in range(na * nsym_a)]
    print("build_cascade_delta, %d x %d states" % (na, nb))
    for name, mod in backends:
        bench(name, mod.build_cascade_delta, (delta_a, na, nsym_a, delta_b, nb, nsym_b, omega))

    ns, nsym = 100_000, 4
    delta = [rng.randrange(ns) for _ in range(ns * nsym)]
    states = [rng.randrange(ns) for _ in range(ns)]
    print("advance_states, %d states" % ns)
    for name, mod in backends:
        bench(name, mod.advance_states, (delta, nsym, states, 2))

    phi = [rng.randrange(50) for _ in range(ns)]
    upper = [rng.randrange(ns) for _ in range(ns)]
    lower = [phi[u] for u in upper]
    print("count_phi_mismatch, %d pairs" % ns)
    for name, mod in backends:
        bench(name, mod.count_phi_mismatch, (phi, upper, lower))

    if _fast is not None:
        print("speedup on compose: %.1fx" % (times["pure"] / times["compiled"]))


if __name__ == "__main__":
    main()
