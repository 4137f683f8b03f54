"""Pick the compiled core when it is importable, else the NumPy fallback."""
import os

from . import _pure

if os.environ.get("DHTRAND_PURE", "") not in ("", "0"):
    _impl = _pure
else:
    try:
        from . import _core as _impl
    except ImportError:
        _impl = _pure

NAME = "compiled" if _impl is not _pure else "pure"

dht_direct = _impl.dht_direct
prng_bits = _impl.prng_bits
dsequence_bits = _impl.dsequence_bits
