"""Discrete Hilbert transform randomness measures for binary sequences."""

__version__ = "0.1.0"

from ._backend import NAME as backend
from .errors import DhtRandError
from .measure import RandomnessReport, measure, measure_fast_r
from .sequences import (
    BitSequence,
    PrngState,
    SwitchSpec,
    apply_switches,
    base_switch_sequence,
    dsequence,
    format_bitstring,
    parse_bitstring,
    period,
    prng_bits,
    uniform_index,
)
from .transform import DhtKernel, dht, dht_fast, dht_matrix, inverse_dht, measure_weights
