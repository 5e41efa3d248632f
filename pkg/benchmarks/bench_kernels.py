"""Time the numba kernels against the numpy fallback.

    python benchmarks/bench_kernels.py --n 10 14 18 --batch 4

Both backends are imported directly, so the BOOLSLEP_DISABLE_JIT flag does
not matter here. Outputs are checked for bitwise equality before timing.
"""

import argparse
import timeit

import numpy as np

from boolslep import _kernels
from boolslep._jit import HAVE_NUMBA

KERNELS = {
    "outer": (_kernels.outer_numpy, _kernels.outer_numba),
    "inner": (_kernels.inner_numpy, _kernels.inner_numba),
    "wht": (_kernels.wht_numpy, _kernels.wht_numba),
}


def best_of(func, x, n, repeat):
    # wht works in place, so every call gets a fresh copy
    timer = timeit.Timer(lambda: func(x.copy(), n))
    loops, _ = timer.autorange()
    return min(timer.repeat(repeat, loops)) / loops


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--n", type=int, nargs="+", default=[8, 12, 16, 20])
    p.add_argument("--batch", type=int, default=1)
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    if not HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(0)
    print(f"{'kernel':<6} {'n':>3} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for n in args.n:
        x = rng.standard_normal((args.batch, 1 << n))
        for name, (f_np, f_nb) in KERNELS.items():
            if not np.array_equal(f_np(x.copy(), n), f_nb(x.copy(), n)):
                raise SystemExit(f"{name} backends disagree at n={n}")
            t_np = best_of(f_np, x, n, args.repeat)
            t_nb = best_of(f_nb, x, n, args.repeat)
            print(f"{name:<6} {n:>3} {1e3 * t_np:>10.3f} {1e3 * t_nb:>10.3f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
