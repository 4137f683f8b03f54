"""Pure-Python/NumPy versions of the compiled kernels in ``_core.pyx``.

Used when the extension is unavailable or when ``DHTRAND_PURE=1`` is set.
"""
import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
TWO_OVER_PI = 2.0 / np.pi


def dht_direct(f):
    f = np.ascontiguousarray(f, dtype=np.float64)
    n = f.shape[0]
    idx = np.arange(n, dtype=np.float64)
    g = np.empty(n, dtype=np.float64)
    for k in range(n):
        start = 1 - (k & 1)
        cols = slice(start, n, 2)
        g[k] = TWO_OVER_PI * np.sum(f[cols] / (k - idx[cols]))
    return g


def prng_bits(seed, length):
    state = seed & MASK64
    out = np.empty(length, dtype=np.uint8)
    for i in range(length):
        state = (state + 0x9E3779B97F4A7C15) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        z ^= z >> 31
        out[i] = z >> 63
    return out, state


def dsequence_bits(p, length):
    out = np.empty(length, dtype=np.uint8)
    x = 1
    for i in range(length):
        x = (2 * x) % p
        out[i] = x & 1
    return out
