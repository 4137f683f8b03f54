"""Kak's discrete Hilbert transform on finite data.

The infinite sums are truncated to ``0 <= k, n < len(f)``, giving the
checkerboard matrix ``M[k, n] = (2/pi) / (k - n)`` for odd ``k - n`` and zero
otherwise. Three interchangeable kernels evaluate ``g = M @ f``:

``DIRECT``
    Explicit double loop over opposite-parity samples (compiled core when
    available).
``MATRIX``
    Builds ``M`` densely and multiplies.
``FAST``
    ``M`` is Toeplitz, so the product is a linear convolution evaluated with a
    zero-padded FFT of size ``2**ceil(log2(2n - 1))``.
"""
import enum
import functools
import math

import numpy as np
from scipy.linalg import toeplitz

from . import _backend
from .errors import InvalidInputError, InvalidSizeError

TWO_OVER_PI = 2.0 / math.pi

# Below this length the dense product is cheaper than the FFT setup.
AUTO_MATRIX_MAX = 64


class DhtKernel(enum.Enum):
    DIRECT = "direct"
    MATRIX = "matrix"
    FAST = "fast"

    @classmethod
    def auto(cls, n):
        return cls.MATRIX if n <= AUTO_MATRIX_MAX else cls.FAST

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise InvalidInputError(f"unknown kernel {value!r}; expected one of {choices}") from None


def as_real_sequence(values):
    """Validate and return ``values`` as a 1-D float64 array.

    Raises
    ------
    InvalidInputError
        If the sequence is empty, not one-dimensional or holds NaN/Inf.
    """
    f = np.asarray(values, dtype=np.float64)
    if f.ndim != 1:
        raise InvalidInputError(f"expected a 1-D sequence, got shape {f.shape}")
    if f.size == 0:
        raise InvalidInputError("sequence must have at least one sample")
    if not np.all(np.isfinite(f)):
        bad = int(np.flatnonzero(~np.isfinite(f))[0])
        raise InvalidInputError(f"non-finite value at index {bad}")
    return np.ascontiguousarray(f)


def _check_size(n):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidSizeError(f"size must be a positive integer, got {n!r}")
    return int(n)


def _taps(n):
    """Kernel taps h(d) for d = 0..n-1, and h(-d) = -h(d) by construction."""
    d = np.arange(n, dtype=np.float64)
    h = np.zeros(n, dtype=np.float64)
    h[1::2] = TWO_OVER_PI / d[1::2]
    return h


def dht_matrix(n):
    """Dense ``n x n`` transform matrix.

    Entry ``[k, j]`` is ``(2/pi)/(k - j)`` when ``k - j`` is odd and exactly
    zero otherwise. The upper triangle is the negated lower one, so
    ``M + M.T == 0`` holds bitwise.
    """
    n = _check_size(n)
    h = _taps(n)
    return toeplitz(h, -h)


def _dht_matrix_kernel(f):
    return dht_matrix(f.shape[0]) @ f


@functools.lru_cache(maxsize=32)
def _fast_plan(n):
    size = 1 << max(0, (2 * n - 2).bit_length())
    h = _taps(n)
    c = np.zeros(size, dtype=np.float64)
    c[:n] = h
    # negative lags wrap to the tail of the circular buffer
    c[size - n + 1:] = -h[1:][::-1]
    spectrum = np.fft.rfft(c)
    spectrum.setflags(write=False)
    return size, spectrum


def dht_fast(f):
    """Transform via FFT convolution in O(n log n).

    Agrees with the ``MATRIX`` kernel to within about 1e-12 per element for
    lengths in the tens of thousands.
    """
    f = as_real_sequence(f)
    n = f.shape[0]
    size, spectrum = _fast_plan(n)
    g = np.fft.irfft(np.fft.rfft(f, size) * spectrum, size)
    return g[:n].copy()


def dht(f, kernel=DhtKernel.FAST):
    """Forward transform ``g = M @ f`` of a finite real sequence.

    Parameters
    ----------
    f : array_like
        Finite real samples, at least one.
    kernel : DhtKernel or str
        Evaluation strategy; all three agree to within 1e-9.

    Returns
    -------
    numpy.ndarray
        ``g`` with ``len(g) == len(f)``.
    """
    f = as_real_sequence(f)
    kernel = DhtKernel.parse(kernel)
    if kernel is DhtKernel.DIRECT:
        return np.asarray(_backend.dht_direct(f))
    if kernel is DhtKernel.MATRIX:
        return _dht_matrix_kernel(f)
    return dht_fast(f)


def inverse_dht(g, kernel=DhtKernel.FAST):
    """Finite inverse transform, ``f_rec = M.T @ g = -(M @ g)``.

    Truncation makes this only approximate: ``inverse_dht(dht(f))`` recovers
    interior samples well and degrades toward the ends. For ``n = 2`` the
    round trip is ``(4/pi**2) * f``.
    """
    return -dht(g, kernel)


def measure_weights(n):
    """Column sums ``w[j] = sum_k M[k, j]``.

    ``mean(M @ f) == dot(w, f) / n``, so the signed measure costs O(n).
    With ``H(m)`` the sum of ``1/d`` over odd ``d <= m``,
    ``w[j] = (2/pi) * (H(n-1-j) - H(j))``.
    """
    n = _check_size(n)
    inv_odd = np.zeros(n, dtype=np.float64)
    inv_odd[1::2] = 1.0 / np.arange(1, n, 2, dtype=np.float64)
    harmonic = np.cumsum(inv_odd)
    return TWO_OVER_PI * (harmonic[::-1] - harmonic)


def format_real_sequence(values):
    """One value per line, 17 significant digits, newline-terminated."""
    return "".join(f"{v:.17g}\n" for v in np.asarray(values, dtype=np.float64))


def parse_real_sequence(text):
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise InvalidInputError(f"line {lineno}: not a number: {line!r}") from None
    return as_real_sequence(values)
