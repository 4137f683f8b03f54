"""DHT-based randomness measures.

For a bit sequence ``f`` of length ``n`` with transform ``g``::

    r  = mean(g)          R  = 1 - |r|
    r' = |mean(|g|)|      R' = 1 - r'

The outer absolute value in ``r'`` is a no-op (the mean of absolute values is
never negative) but is kept to match the definition. Since
``|mean(g)| <= mean(|g|)``, ``R >= R'`` for every input.
"""
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .sequences import BitSequence
from .transform import DhtKernel, dht, measure_weights

REPORT_KEYS = ("n", "r", "R", "r_prime", "R_prime", "kernel")


@dataclass(frozen=True)
class RandomnessReport:
    n: int
    r: float
    R: float
    r_prime: float
    R_prime: float
    kernel: DhtKernel

    def format(self, machine=False):
        """``key=value`` lines; 6 decimals, or 17 significant digits if ``machine``."""
        fmt = "{:.17g}" if machine else "{:.6f}"
        lines = [f"n={self.n}"]
        for key in ("r", "R", "r_prime", "R_prime"):
            lines.append(f"{key}={fmt.format(getattr(self, key))}")
        lines.append(f"kernel={self.kernel.value}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text):
        fields = {}
        for line in text.splitlines():
            if line.strip():
                key, _, value = line.partition("=")
                fields[key.strip()] = value.strip()
        missing = [k for k in REPORT_KEYS if k not in fields]
        if missing:
            raise InvalidInputError(f"report missing keys: {', '.join(missing)}")
        return cls(
            n=int(fields["n"]),
            r=float(fields["r"]),
            R=float(fields["R"]),
            r_prime=float(fields["r_prime"]),
            R_prime=float(fields["R_prime"]),
            kernel=DhtKernel.parse(fields["kernel"]),
        )


def _real_view(f):
    if isinstance(f, BitSequence):
        x = f.as_real()
    else:
        x = np.asarray(f, dtype=np.float64).ravel()
        if x.size and not np.all((x == 0.0) | (x == 1.0)):
            raise InvalidInputError("measure is defined on 0/1 sequences only")
    if x.size == 0:
        raise InvalidInputError("cannot measure an empty sequence")
    return x


def measure(f, kernel=None):
    """Compute r, R, r' and R' for a bit sequence.

    Parameters
    ----------
    f : BitSequence or array_like of 0/1
    kernel : DhtKernel, str or None
        ``None`` picks ``MATRIX`` for ``n <= 64`` and ``FAST`` above.
    """
    x = _real_view(f)
    n = x.shape[0]
    kernel = DhtKernel.auto(n) if kernel is None else DhtKernel.parse(kernel)
    g = dht(x, kernel)
    r = float(np.sum(g) / n)
    r_prime = abs(float(np.sum(np.abs(g)) / n))
    return RandomnessReport(n=n, r=r, R=1.0 - abs(r), r_prime=r_prime, R_prime=1.0 - r_prime,
                            kernel=kernel)


def measure_fast_r(f):
    """Signed ``r`` in O(n) through the column-sum weights, no full transform."""
    x = _real_view(f)
    n = x.shape[0]
    return float(np.dot(measure_weights(n), x) / n)
