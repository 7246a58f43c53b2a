"""Compare the pure-numpy and compiled backends on the two hot kernels.

Usage: python benchmarks/bench_backends.py [--sizes 4 8 16 32] [--repeats 5]
"""

import argparse
import time

import numpy as np

from symchan.backend import pure

try:
    from symchan.backend import _kernels as compiled
except ImportError:
    compiled = None


def _time(fn, arg, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(arg)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16, 32, 64])
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    if compiled is None:
        print("compiled backend not built; timing the pure backend only")

    header = f"{'kernel':<6} {'n':>4} {'pure (ms)':>12}"
    if compiled is not None:
        header += f" {'compiled (ms)':>14} {'speedup':>8} {'max |diff|':>12}"
    print(header)

    for n in args.sizes:
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        h = (a + a.conj().T) / 2

        for kernel, arg in (("expm", a), ("eigh", h)):
            t_pure = _time(getattr(pure, kernel), arg, args.repeats)
            line = f"{kernel:<6} {n:>4} {t_pure * 1e3:>12.3f}"
            if compiled is not None:
                t_comp = _time(getattr(compiled, kernel), arg, args.repeats)
                if kernel == "expm":
                    diff = np.max(np.abs(pure.expm(arg) - compiled.expm(arg)))
                else:
                    w_p, *_ = pure.eigh(arg)
                    w_c, *_ = compiled.eigh(arg)
                    diff = np.max(np.abs(w_p - w_c))
                line += (
                    f" {t_comp * 1e3:>14.3f} {t_pure / t_comp:>8.2f} {diff:>12.3e}"
                )
            print(line)


if __name__ == "__main__":
    main()
