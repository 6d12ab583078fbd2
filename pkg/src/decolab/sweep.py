"""Parameter sweeps and critical-point extraction.

Two sweep modes produce the row data behind every figure preset:

* ``sweep_r`` walks the Werner parameter r at zero noise;
* ``sweep_p`` walks the noise parameter p for each requested r under one
  channel (both qubits by default).

Critical-point finders locate where the two measures cross, where
concurrence sits below the dead-zone threshold (sudden death, and the
revival after), and where the coherence itself vanishes.  Grid detection
is refined by bisection against the continuous measure-vs-parameter
functions, so reported abscissae are far more accurate than the grid
spacing.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .channels import CHANNEL_KINDS, make_channel, apply_local
from .measures import concurrence, reqc
from .states import werner

EPS_ZERO = 1e-9          # dead-zone threshold for "the measure is zero"
CROSSOVER_FTOL = 1e-8    # |reqc - concurrence| at a refined crossover
BISECT_MAX_ITER = 60
BISECT_XTOL = 1e-10
PLATEAU_SLOPE_TOL = 1e-6

DEFAULT_R_VALUES = (0.4, 0.6, 0.8, 1.0)
DEFAULT_GRID_COUNT = 201

THREADS_ENV_VAR = "DECOLAB_THREADS"


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid over a sub-interval of [0, 1]."""

    start: float = 0.0
    stop: float = 1.0
    count: int = DEFAULT_GRID_COUNT

    def __post_init__(self):
        if self.count < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.count!r}")
        if not (0.0 <= self.start < self.stop <= 1.0):
            raise ValueError(
                f"grid must satisfy 0 <= start < stop <= 1, got [{self.start!r}, {self.stop!r}]"
            )

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepConfig:
    """What to sweep: a channel (or None for the pure r-sweep), r values, p grid."""

    channel: str | None
    r_values: tuple[float, ...] = DEFAULT_R_VALUES
    p_grid: GridSpec = field(default_factory=GridSpec)
    both_qubits: bool = True

    def __post_init__(self):
        if self.channel is not None and self.channel not in CHANNEL_KINDS:
            raise ValueError(
                f"unknown channel {self.channel!r}; expected one of {', '.join(CHANNEL_KINDS)}"
            )
        r_values = tuple(float(r) for r in self.r_values)
        if not r_values:
            raise ValueError("r_values must not be empty")
        for r in r_values:
            if not 0.0 <= r <= 1.0:
                raise ValueError(f"r values must lie in [0, 1], got {r!r}")
        object.__setattr__(self, "r_values", r_values)


@dataclass(frozen=True)
class SweepRecord:
    """One sampled point: both measures at a given (r, p)."""

    r: float
    p: float
    reqc: float
    concurrence: float


@dataclass(frozen=True)
class CriticalPoints:
    """Refined landmarks extracted from a sweep.

    ``crossovers`` are abscissae where the two measures meet;
    ``death_intervals`` and ``reqc_zeros`` are (start, end) windows where
    the respective measure stays below the dead-zone threshold;
    ``reqc_plateaus`` (informational) are windows where the coherence
    slope stays below PLATEAU_SLOPE_TOL.
    """

    crossovers: tuple[float, ...] = ()
    death_intervals: tuple[tuple[float, float], ...] = ()
    reqc_zeros: tuple[tuple[float, float], ...] = ()
    reqc_plateaus: tuple[tuple[float, float], ...] = ()


def measures_at(
    channel: str | None, r: float, p: float, both_qubits: bool = True
) -> tuple[float, float]:
    """(reqc, concurrence) of a Werner state after the given noise snapshot."""
    rho = werner(r)
    if channel is not None:
        ch = make_channel(channel, p)
        rho = apply_local(ch, ch if both_qubits else None, rho)
    return reqc(rho), concurrence(rho)


def max_workers_from_env() -> int | None:
    """Parallelism cap from DECOLAB_THREADS; None when the variable is unset."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return None
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise ValueError(f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}")
    return n


def _map_ordered(fn: Callable, items: Sequence, max_workers: int | None) -> list:
    # Every point is an independent pure computation; gathering through
    # executor.map keeps the output order identical to sequential evaluation.
    if max_workers is not None and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def sweep_r(grid: GridSpec, max_workers: int | None = None) -> list[SweepRecord]:
    """Both measures of werner(r) across an r grid, at zero noise."""

    def point(r: float) -> SweepRecord:
        c_re, c = measures_at(None, r, 0.0)
        return SweepRecord(r=float(r), p=0.0, reqc=c_re, concurrence=c)

    return _map_ordered(point, [float(r) for r in grid.values()], max_workers)


def sweep_p(config: SweepConfig, max_workers: int | None = None) -> list[SweepRecord]:
    """Both measures across the p grid for every configured r, ordered by (r, p)."""
    if config.channel is None:
        raise ValueError("sweep_p needs a channel; use sweep_r for the noiseless scan")
    points = [
        (r, float(p)) for r in config.r_values for p in config.p_grid.values()
    ]

    def point(rp: tuple[float, float]) -> SweepRecord:
        r, p = rp
        c_re, c = measures_at(config.channel, r, p, config.both_qubits)
        return SweepRecord(r=r, p=p, reqc=c_re, concurrence=c)

    return _map_ordered(point, points, max_workers)


def _bisect_crossing(
    f: Callable[[float], float], lo: float, hi: float
) -> float:
    """Root of f between lo and hi, where f(lo) and f(hi) have opposite signs.

    The bracket may be given in either order.
    """
    f_lo = f(lo)
    for _ in range(BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if abs(hi - lo) <= BISECT_XTOL:
            return mid
        if (f_lo > 0.0) == (f_mid > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def find_crossover(records: Sequence[SweepRecord]) -> CriticalPoints:
    """Interior abscissae where reqc and concurrence cross on an r sweep.

    Grid points where the two measures agree within EPS_ZERO carry no sign,
    which keeps the exact ties at r = 0 and r = 1 out of the result; each
    interior sign change is refined until |reqc - concurrence| <= CROSSOVER_FTOL.
    """

    def diff(r: float) -> float:
        c_re, c = measures_at(None, r, 0.0)
        return c_re - c

    signed = []
    for rec in records:
        d = rec.reqc - rec.concurrence
        if abs(d) > EPS_ZERO:
            signed.append((rec.r, 1.0 if d > 0.0 else -1.0))
    crossings = []
    for (r_lo, s_lo), (r_hi, s_hi) in zip(signed, signed[1:]):
        if s_lo * s_hi < 0.0:
            root = _bisect_crossing(diff, r_lo, r_hi)
            assert abs(diff(root)) <= CROSSOVER_FTOL
            crossings.append(root)
    return CriticalPoints(crossovers=tuple(crossings))


def _subthreshold_runs(values: Sequence[float], eps_zero: float) -> list[tuple[int, int]]:
    runs = []
    start = None
    for i, v in enumerate(values):
        if v <= eps_zero:
            if start is None:
                start = i
        elif start is not None:
            runs.append((start, i - 1))
            start = None
    if start is not None:
        runs.append((start, len(values) - 1))
    return runs


def _refined_intervals(
    records: Sequence[SweepRecord],
    values: Sequence[float],
    value_at: Callable[[float], float],
    eps_zero: float,
) -> tuple[tuple[float, float], ...]:
    """Sub-threshold runs as (start, end) windows with bisection-refined edges.

    A run consisting of a single record at either end of the grid is the
    trivial limit of the sweep (e.g. everything dies exactly at p = 1) and
    is not reported as a window.
    """
    ps = [rec.p for rec in records]
    last = len(ps) - 1

    def edge(i_out: int, i_in: int) -> float:
        return _bisect_crossing(
            lambda p: value_at(p) - eps_zero, ps[i_out], ps[i_in]
        )

    intervals = []
    for i, j in _subthreshold_runs(values, eps_zero):
        if i == j and (i == 0 or i == last):
            continue
        start = ps[0] if i == 0 else edge(i - 1, i)
        end = ps[last] if j == last else edge(j + 1, j)
        intervals.append((start, end))
    return tuple(intervals)


def _single_r(records: Sequence[SweepRecord]) -> float:
    rs = {rec.r for rec in records}
    if len(rs) != 1:
        raise ValueError(f"records must share a single r value, got {sorted(rs)}")
    return rs.pop()


def find_death_intervals(
    records: Sequence[SweepRecord],
    channel: str,
    both_qubits: bool = True,
    eps_zero: float = EPS_ZERO,
) -> CriticalPoints:
    """Windows of entanglement sudden death on a single-r noise sweep.

    ``channel`` names the noise the records came from; it is needed to
    re-evaluate the continuous concurrence when refining the window edges.
    """
    r = _single_r(records)

    def conc_at(p: float) -> float:
        return measures_at(channel, r, p, both_qubits)[1]

    intervals = _refined_intervals(
        records, [rec.concurrence for rec in records], conc_at, eps_zero
    )
    return CriticalPoints(death_intervals=intervals)


def find_reqc_zeros(
    records: Sequence[SweepRecord],
    channel: str,
    both_qubits: bool = True,
    eps_zero: float = EPS_ZERO,
) -> CriticalPoints:
    """Windows where the coherence disappears on a single-r noise sweep."""
    r = _single_r(records)

    def reqc_at(p: float) -> float:
        return measures_at(channel, r, p, both_qubits)[0]

    intervals = _refined_intervals(
        records, [rec.reqc for rec in records], reqc_at, eps_zero
    )
    return CriticalPoints(reqc_zeros=intervals)


def find_reqc_plateaus(
    records: Sequence[SweepRecord], slope_tol: float = PLATEAU_SLOPE_TOL
) -> tuple[tuple[float, float], ...]:
    """Grid windows where |d reqc / dp| stays below slope_tol (informational).

    Finite differences between adjacent records; a window needs at least
    two consecutive flat segments to count.
    """
    flat = []
    for a, b in zip(records, records[1:]):
        slope = (b.reqc - a.reqc) / (b.p - a.p)
        flat.append(abs(slope) <= slope_tol)
    windows = []
    for i, j in _subthreshold_runs([0.0 if f else 1.0 for f in flat], 0.5):
        if j > i:
            windows.append((records[i].p, records[j + 1].p))
    return tuple(windows)


def critical_points(
    channel: str | None,
    r: float,
    grid: GridSpec,
    both_qubits: bool = True,
    eps_zero: float = EPS_ZERO,
    max_workers: int | None = None,
) -> CriticalPoints:
    """All landmarks for one configuration (crossovers for channel None)."""
    if channel is None:
        return find_crossover(sweep_r(grid, max_workers))
    config = SweepConfig(
        channel=channel, r_values=(r,), p_grid=grid, both_qubits=both_qubits
    )
    records = sweep_p(config, max_workers)
    return CriticalPoints(
        crossovers=(),
        death_intervals=find_death_intervals(
            records, channel, both_qubits, eps_zero
        ).death_intervals,
        reqc_zeros=find_reqc_zeros(
            records, channel, both_qubits, eps_zero
        ).reqc_zeros,
        reqc_plateaus=find_reqc_plateaus(records),
    )
