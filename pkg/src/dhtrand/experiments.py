"""Result tables, figure data and trend checks for the three sequence families.

Stochastic rows are averaged over ``trials`` independent draws. Every draw's
seed is derived from the master seed and the row's parameters, so tables are
bitwise reproducible and do not depend on row order or worker scheduling.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
import math

import numpy as np
from scipy.stats import spearmanr

from .errors import InvalidConfigError, InvalidPrimeError
from .measure import measure
from .sequences import (
    BitSequence,
    DSequence,
    Prng,
    Switch,
    SwitchSpec,
    derive_seed,
    dsequence,
    generate,
    prng_bits,
    switch_sequence,
)
from .transform import DhtKernel, dht

DEFAULT_SEED = 1
DEFAULT_TRIALS = 100

SWITCH_LENGTHS = (100, 200, 300)
SWITCH_COUNTS = (1, 3, 4, 5, 7, 10, 11, 13, 20)
DSEQ_PRIMES = (13, 67, 127, 151, 223, 331, 463, 557, 631, 821, 991)
PRNG_LENGTHS = (100, 200, 300, 400, 500, 600, 700, 800)
FIGURE_PRIMES = (101, 211, 347, 487)

# Reference (R, R') columns of the published results, keyed by row parameters.
REFERENCE_SWITCH = {
    (100, 1): (0.7801, 0.7783), (100, 3): (0.8096, 0.8043), (100, 4): (0.8153, 0.8150),
    (100, 5): (0.8268, 0.8233), (100, 7): (0.8393, 0.8310), (100, 10): (0.8568, 0.8526),
    (100, 13): (0.8802, 0.8793), (100, 20): (0.8903, 0.8803),
    (200, 4): (0.7959, 0.7832), (200, 5): (0.7969, 0.7910), (200, 7): (0.7975, 0.7934),
    (200, 11): (0.7985, 0.7964), (200, 13): (0.8891, 0.8810), (200, 20): (0.9924, 0.9915),
    (300, 4): (0.7903, 0.7893), (300, 5): (0.7933, 0.7912), (300, 7): (0.7952, 0.7946),
    (300, 11): (0.7976, 0.7965), (300, 13): (0.8075, 0.8036), (300, 20): (0.9916, 0.9825),
}
REFERENCE_DSEQ = {
    13: (0.7054, 0.7036), 67: (0.8794, 0.8723), 127: (0.9724, 0.9690),
    151: (0.9547, 0.9710), 223: (0.9690, 0.9758), 331: (0.9727, 0.9765),
    463: (0.9739, 0.9790), 557: (0.9743, 0.9810), 631: (0.9884, 0.9845),
    821: (0.9890, 0.9867), 991: (0.9992, 0.9943),
}
REFERENCE_PRNG = {
    100: (0.9653, 0.9646), 200: (0.9656, 0.9650), 300: (0.9767, 0.9690),
    400: (0.9779, 0.9771), 500: (0.9782, 0.9778), 600: (0.9889, 0.9799),
    700: (0.9893, 0.9826), 800: (0.9998, 0.9887),
}

# tags keep switch and PRNG seed streams apart
_SWITCH_TAG = 1
_PRNG_TAG = 2


@dataclass(frozen=True)
class TableRow:
    param1: int
    param2: int | None
    trials: int
    mean_R: float
    mean_R_prime: float
    std_R: float

    @property
    def stderr_R(self):
        return self.std_R / math.sqrt(self.trials)


@dataclass(frozen=True)
class FigureSeries:
    label: str
    original: BitSequence
    transformed: np.ndarray


def _summarize(param1, param2, reports):
    R = np.array([rep.R for rep in reports])
    Rp = np.array([rep.R_prime for rep in reports])
    std = float(np.std(R, ddof=1)) if len(R) > 1 else 0.0
    return TableRow(param1, param2, len(reports), float(R.mean()), float(Rp.mean()), std)


def _switch_row(args):
    length, s, trials, seed, kernel = args
    row_seed = derive_seed(seed, _SWITCH_TAG, length, s)
    reports = [
        measure(switch_sequence(length, SwitchSpec.random(s, derive_seed(row_seed, t))), kernel)
        for t in range(trials)
    ]
    return _summarize(length, s, reports)


def _prng_row(args):
    length, trials, seed, kernel = args
    row_seed = derive_seed(seed, _PRNG_TAG, length)
    reports = [measure(prng_bits(derive_seed(row_seed, t), length), kernel) for t in range(trials)]
    return _summarize(length, None, reports)


def _run(fn, tasks, jobs):
    if jobs is None or jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map preserves submission order, so each row lands in its own slot
        return list(pool.map(fn, tasks))


def _check_trials(trials):
    if isinstance(trials, bool) or not isinstance(trials, int) or trials < 1:
        raise InvalidConfigError(f"trials must be a positive integer, got {trials!r}")


def switch_table(lengths=SWITCH_LENGTHS, switch_counts=SWITCH_COUNTS, trials=DEFAULT_TRIALS,
                 seed=DEFAULT_SEED, kernel=None, jobs=1):
    """Mean/std of R over random switch sequences, one row per (length, switches).

    Switch counts larger than ``length/2`` are a configuration error.
    """
    _check_trials(trials)
    tasks = []
    for length in lengths:
        if length < 2 or length % 2:
            raise InvalidConfigError(f"switch length must be even and >= 2, got {length}")
        for s in switch_counts:
            if not 0 <= s <= length // 2:
                raise InvalidConfigError(f"{s} switches invalid for length {length}")
            tasks.append((int(length), int(s), trials, seed, kernel))
    return _run(_switch_row, tasks, jobs)


def dseq_table(primes=DSEQ_PRIMES, kernel=None):
    """One deterministic full-period row per prime (``param2`` is the period)."""
    rows = []
    for p in primes:
        try:
            seq = dsequence(p)
        except InvalidPrimeError as exc:
            raise InvalidPrimeError(f"table entry {p!r}: {exc}") from None
        rep = measure(seq, kernel)
        rows.append(TableRow(int(p), len(seq), 1, rep.R, rep.R_prime, 0.0))
    return rows


def prng_table(lengths=PRNG_LENGTHS, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED, kernel=None,
               jobs=1):
    """Mean/std of R over fresh PRNG bitstreams for each length."""
    _check_trials(trials)
    for length in lengths:
        if length < 1:
            raise InvalidConfigError(f"length must be positive, got {length}")
    tasks = [(int(length), trials, seed, kernel) for length in lengths]
    return _run(_prng_row, tasks, jobs)


def format_table_csv(rows):
    lines = ["param1,param2,trials,mean_R,std_R,mean_R_prime"]
    for row in rows:
        p2 = "" if row.param2 is None else str(row.param2)
        lines.append(f"{row.param1},{p2},{row.trials},{row.mean_R:.6f},{row.std_R:.6f},"
                     f"{row.mean_R_prime:.6f}")
    return "\n".join(lines) + "\n"


def dseq_deviation_report(rows, reference=REFERENCE_DSEQ):
    """Side-by-side computed vs reference R and R' with differences."""
    out = ["prime  period  R_computed  R_reference  dR       R'_computed  R'_reference  dR'"]
    for row in rows:
        ref = reference.get(row.param1)
        if ref is None:
            out.append(f"{row.param1:<6} {row.param2:<7} {row.mean_R:.4f}      -")
            continue
        out.append(
            f"{row.param1:<6} {row.param2:<7} {row.mean_R:.4f}      {ref[0]:.4f}       "
            f"{row.mean_R - ref[0]:+.4f}  {row.mean_R_prime:.4f}       {ref[1]:.4f}        "
            f"{row.mean_R_prime - ref[1]:+.4f}"
        )
    rho = rank_correlation(rows)
    out.append(f"spearman(prime, R_computed) = {rho:.4f}")
    return "\n".join(out) + "\n"


def rank_correlation(rows):
    """Spearman correlation between ``param1`` and ``mean_R``."""
    if len(rows) < 2:
        return float("nan")
    return float(spearmanr([r.param1 for r in rows], [r.mean_R for r in rows])[0])


def is_nondecreasing_within_stderr(rows):
    """True if each step's mean R drops by no more than the pooled standard error."""
    for a, b in zip(rows, rows[1:]):
        pooled = math.hypot(a.stderr_R, b.stderr_R)
        if b.mean_R < a.mean_R - pooled:
            return False
    return True


# -- figures ------------------------------------------------------------------

def _label(provenance):
    if isinstance(provenance, DSequence):
        return f"1/{provenance.p}"
    if isinstance(provenance, Switch):
        spec = provenance.spec
        if spec.positions is not None:
            return f"switch length {provenance.length} positions {','.join(map(str, spec.positions))}"
        return f"switch length {provenance.length} switches {spec.count} seed {spec.seed}"
    if isinstance(provenance, Prng):
        return f"prng seed {provenance.seed} length {provenance.length}"
    return "external"


def figure_series(source, kernel=None):
    """Original bits and their transform, for plotting.

    ``source`` is a ``BitSequence`` or a generator descriptor
    (``DSequence``, ``Switch``, ``Prng``).
    """
    seq = source if isinstance(source, BitSequence) else generate(source)
    x = seq.as_real()
    if kernel is None:
        kernel = DhtKernel.auto(len(x))
    return FigureSeries(_label(seq.provenance), seq, dht(x, kernel))


def format_figure_csv(series):
    lines = ["index,original,dht"]
    for i, (b, g) in enumerate(zip(series.original.bits.tolist(), series.transformed.tolist())):
        lines.append(f"{i},{b},{g:.17g}")
    return "\n".join(lines) + "\n"


def figure_svg(series, width=800, panel_height=200, margin=40):
    """Two stacked panels: original bits (step) over the transform (linear)."""
    n = len(series.original)
    span = max(n, 1)
    plot_w = width - 2 * margin

    def x_at(i):
        return margin + plot_w * i / span

    def panel(top, values, lo, hi, step):
        if hi == lo:
            lo, hi = lo - 1.0, hi + 1.0
        inner = panel_height - margin

        def y_at(v):
            return top + margin // 2 + inner * (hi - v) / (hi - lo)

        pts = []
        for i, v in enumerate(values):
            if step:
                pts.append(f"{x_at(i):.2f},{y_at(v):.2f}")
                pts.append(f"{x_at(i + 1):.2f},{y_at(v):.2f}")
            else:
                pts.append(f"{x_at(i + 0.5):.2f},{y_at(v):.2f}")
        zero = y_at(0.0)
        return (
            f'<rect x="{margin}" y="{top + margin // 2}" width="{plot_w}" height="{inner}" '
            f'fill="none" stroke="#999"/>\n'
            f'<line x1="{margin}" y1="{zero:.2f}" x2="{width - margin}" y2="{zero:.2f}" '
            f'stroke="#ccc"/>\n'
            f'<polyline fill="none" stroke="#1f4e9c" stroke-width="1" points="{" ".join(pts)}"/>\n'
        )

    g = series.transformed
    height = 2 * panel_height
    body = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n',
        f'<text x="{margin}" y="14" font-size="12">{_escape(series.label)} (a) original</text>\n',
        panel(0, series.original.bits.tolist(), 0.0, 1.0, step=True),
        f'<text x="{margin}" y="{panel_height + 14}" font-size="12">(b) DHT</text>\n',
        panel(panel_height, g.tolist(), float(g.min(initial=0.0)), float(g.max(initial=0.0)),
              step=False),
        "</svg>\n",
    ]
    return "".join(body)


def _escape(text):
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


# -- d-sequence vs switch comparison -------------------------------------------

@dataclass(frozen=True)
class Comparison:
    prime: int
    length: int
    R_dseq: float
    R_switch_low: TableRow
    R_switch_high: TableRow

    @property
    def ordered(self):
        """Whether switch(low) < d-sequence < switch(high) in mean R."""
        return self.R_switch_low.mean_R < self.R_dseq < self.R_switch_high.mean_R


def compare_dseq_switch(prime=331, length=300, low=13, high=20, trials=DEFAULT_TRIALS,
                        seed=DEFAULT_SEED, kernel=None):
    low_row, high_row = switch_table([length], [low, high], trials=trials, seed=seed,
                                     kernel=kernel)
    R_d = measure(dsequence(prime), kernel).R
    return Comparison(prime, length, R_d, low_row, high_row)


def comparison_report(trials=DEFAULT_TRIALS, seed=DEFAULT_SEED, kernel=None):
    c = compare_dseq_switch(trials=trials, seed=seed, kernel=kernel)
    lo, hi = c.R_switch_low, c.R_switch_high

    def rel(a, b):
        return "<" if a < b else (">" if a > b else "=")

    lines = [
        f"switch length {c.length}, s={lo.param2}: mean R = {lo.mean_R:.6f} "
        f"(std {lo.std_R:.6f}, {lo.trials} trials)",
        f"d-sequence 1/{c.prime} (period {len(dsequence(c.prime))}): R = {c.R_dseq:.6f}",
        f"switch length {c.length}, s={hi.param2}: mean R = {hi.mean_R:.6f} "
        f"(std {hi.std_R:.6f}, {hi.trials} trials)",
        f"ordering: R(s={lo.param2}) {rel(lo.mean_R, c.R_dseq)} R(1/{c.prime}) "
        f"{rel(c.R_dseq, hi.mean_R)} R(s={hi.param2})",
        f"expected ordering s={lo.param2} < 1/{c.prime} < s={hi.param2}: "
        f"{'holds' if c.ordered else 'does not hold'}",
    ]
    return "\n".join(lines) + "\n"

