# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Mirrors ``dhtrand._pure`` function for function."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, uint8_t

cnp.import_array()

cdef double TWO_OVER_PI = 0.63661977236758134308


def dht_direct(const double[::1] f):
    cdef Py_ssize_t n = f.shape[0]
    cdef Py_ssize_t k, j
    cdef double acc
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] g = out
    for k in range(n):
        acc = 0.0
        # opposite parity only: j starts at 1 for even k, 0 for odd k
        j = 1 - (k & 1)
        while j < n:
            acc += f[j] / <double>(k - j)
            j += 2
        g[k] = TWO_OVER_PI * acc
    return out


def prng_bits(uint64_t seed, Py_ssize_t length):
    cdef uint64_t state = seed
    cdef uint64_t z
    cdef Py_ssize_t i
    out = np.empty(length, dtype=np.uint8)
    cdef uint8_t[::1] bits = out
    for i in range(length):
        state += 0x9E3779B97F4A7C15ULL
        z = state
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
        z = z ^ (z >> 31)
        bits[i] = <uint8_t>(z >> 63)
    return out, state


def dsequence_bits(long long p, Py_ssize_t length):
    cdef long long x = 1
    cdef Py_ssize_t i
    out = np.empty(length, dtype=np.uint8)
    cdef uint8_t[::1] bits = out
    for i in range(length):
        x = (2 * x) % p
        bits[i] = <uint8_t>(x & 1)
    return out
