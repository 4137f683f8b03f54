"""Compare the compiled core against the pure fallback, and the three DHT kernels.

    python benchmarks/bench_kernels.py [--sizes 256 1024 4096] [--repeat 5]
"""
import argparse
import statistics
import time

import numpy as np

from dhtrand import _pure
from dhtrand.transform import DhtKernel, dht

try:
    from dhtrand import _core
except ImportError:
    _core = None


def median_time(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[256, 1024, 4096])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = [("pure", _pure)] + ([("compiled", _core)] if _core is not None else [])
    if _core is None:
        print("compiled core not available; timing the fallback only")

    print(f"{'kernel':<16}{'n':>8}" + "".join(f"{name:>14}" for name, _ in backends) + f"{'speed-up':>11}")
    rng = np.random.default_rng(0)
    for n in args.sizes:
        f = rng.uniform(-1, 1, n)
        cases = {
            "dht_direct": lambda m: m.dht_direct(f),
            "prng_bits": lambda m: m.prng_bits(12345, 64 * n),
            "dsequence_bits": lambda m: m.dsequence_bits(1000003, 64 * n),
        }
        for label, call in cases.items():
            times = [median_time(lambda m=m: call(m), args.repeat) for _, m in backends]
            ratio = f"{times[0] / times[-1]:>10.1f}x" if len(times) > 1 else ""
            print(f"{label:<16}{n:>8}" + "".join(f"{t * 1e3:>12.3f}ms" for t in times) + ratio)

    print()
    print(f"{'transform':<16}{'n':>8}" + "".join(f"{k.value:>14}" for k in DhtKernel))
    for n in args.sizes + [8192]:
        f = rng.uniform(-1, 1, n)
        times = [median_time(lambda k=k: dht(f, k), args.repeat) for k in DhtKernel]
        print(f"{'dht':<16}{n:>8}" + "".join(f"{t * 1e3:>12.3f}ms" for t in times))


if __name__ == "__main__":
    main()
