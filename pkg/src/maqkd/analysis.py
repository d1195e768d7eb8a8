"""Key rates from delivered samples, plus orbit sweeps and pass averages."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import VisibilityError
from .geometry import GeometryConfig, DEFAULT_GEOMETRY, orbital_period_s
from .quantum import error_rates
from .simcore import SampleRecord


def binary_entropy(p: float) -> float:
    """Shannon entropy of a binary variable, in bits."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("binary_entropy argument must lie in [0, 1]")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def secret_fraction(e_x: float, e_z: float) -> float:
    """Asymptotic key bits per raw bit, clamped at zero.

    Lower bound 1 - h(e_X) - f*h(e_Z) with the error-correction inefficiency
    f fixed to 1.
    """
    return max(0.0, 1.0 - binary_entropy(e_x) - binary_entropy(e_z))


@dataclass(frozen=True)
class RateResult:
    """Rates and error statistics of one simulated configuration."""

    raw_rate_hz: float
    error_x: float
    error_z: float
    key_rate_hz: float
    samples: int
    raw_rate_se: float = 0.0
    error_x_se: float = 0.0
    error_z_se: float = 0.0
    key_rate_se: float = 0.0

    def __post_init__(self) -> None:
        if self.key_rate_hz < 0 or self.key_rate_hz > self.raw_rate_hz + 1e-9:
            raise ValueError("key rate must lie within [0, raw rate]")


ZERO_RATE = RateResult(0.0, 0.0, 0.0, 0.0, 0)


def key_rate(
    records: Sequence[SampleRecord],
    total_time_s: float,
    jackknife_blocks: int = 50,
) -> RateResult:
    """Sample-mean rates of a record stream.

    The raw rate is delivered pairs per second of simulated time; the error
    rates are means of the per-pair expectation values; standard errors come
    from a delete-one-block jackknife over contiguous record blocks.
    """
    if not records:
        raise ValueError("key_rate requires at least one record")
    if total_time_s <= 0:
        raise ValueError("total_time_s must be strictly positive")
    n = len(records)
    errors = np.array([error_rates(r.state) for r in records])
    e_x = float(errors[:, 0].mean())
    e_z = float(errors[:, 1].mean())
    raw = n / total_time_s
    key = raw * secret_fraction(e_x, e_z)

    blocks = min(jackknife_blocks, n)
    if blocks < 2:
        return RateResult(raw, e_x, e_z, key, n)
    bounds = np.linspace(0, n, blocks + 1).astype(int)
    times = np.array([r.time_s for r in records])
    starts = np.concatenate([[0.0], times])[bounds[:-1]]
    spans = times[bounds[1:] - 1] - starts
    sizes = np.diff(bounds)
    raw_j = np.empty(blocks)
    ex_j = np.empty(blocks)
    ez_j = np.empty(blocks)
    key_j = np.empty(blocks)
    sum_x, sum_z = errors.sum(axis=0)
    for b in range(blocks):
        lo, hi = bounds[b], bounds[b + 1]
        size = sizes[b]
        raw_j[b] = (n - size) / (total_time_s - spans[b])
        ex_j[b] = (sum_x - errors[lo:hi, 0].sum()) / (n - size)
        ez_j[b] = (sum_z - errors[lo:hi, 1].sum()) / (n - size)
        key_j[b] = raw_j[b] * secret_fraction(ex_j[b], ez_j[b])

    def jackknife_se(values: np.ndarray) -> float:
        return float(
            math.sqrt((blocks - 1) / blocks * ((values - values.mean()) ** 2).sum())
        )

    return RateResult(
        raw_rate_hz=raw,
        error_x=e_x,
        error_z=e_z,
        key_rate_hz=key,
        samples=n,
        raw_rate_se=jackknife_se(raw_j),
        error_x_se=jackknife_se(ex_j),
        error_z_se=jackknife_se(ez_j),
        key_rate_se=jackknife_se(key_j),
    )


@dataclass(frozen=True)
class OrbitPoint:
    phase_s: float
    result: RateResult


def orbit_sweep(
    phase_grid_s: Sequence[float],
    simulate: Callable[[float], RateResult],
) -> list[OrbitPoint]:
    """Run one static simulation per orbit phase.

    ``simulate`` receives the phase offset and returns the static-rate result
    at that constellation position; phases where any required link is below
    the horizon count as zero rate.
    """
    points = []
    for phase in phase_grid_s:
        try:
            result = simulate(phase)
        except VisibilityError:
            result = ZERO_RATE
        points.append(OrbitPoint(phase_s=float(phase), result=result))
    return points


@dataclass(frozen=True)
class OrbitSweepResult:
    """Pass-integrated yield of an orbit sweep."""

    window_s: float              # integration half-window tau
    raw_bits_per_pass: float
    mean_error_x: float
    mean_error_z: float
    key_bits_per_pass: float
    effective_key_rate_hz: float
    orbital_period_s: float


def effective_rate(
    points: Sequence[OrbitPoint],
    height_km: float,
    geometry_cfg: GeometryConfig = DEFAULT_GEOMETRY,
) -> OrbitSweepResult:
    """Per-pass raw bits and orbit-averaged key rate from a phase sweep.

    Integrates the raw rate and the rate-weighted error rates over a
    symmetric window [-tau, tau] by the trapezoidal rule, choosing tau among
    the grid points to maximize the key bits per pass; the effective rate
    spreads those bits over one orbital period.
    """
    if len(points) < 2:
        raise ValueError("effective_rate needs at least two sweep points")
    phases = np.array([p.phase_s for p in points])
    if np.any(np.diff(phases) <= 0):
        raise ValueError("phase grid must be strictly increasing")
    if not np.allclose(phases + phases[::-1], 0.0, atol=1e-9):
        raise ValueError("phase grid must be symmetric about zero")
    rates = np.array([p.result.raw_rate_hz for p in points])
    ex = np.array([p.result.error_x for p in points])
    ez = np.array([p.result.error_z for p in points])
    period = orbital_period_s(height_km, geometry_cfg)

    best: OrbitSweepResult | None = None
    taus = phases[phases > 0]
    for tau in taus:
        mask = np.abs(phases) <= tau + 1e-12
        t = phases[mask]
        r = rates[mask]
        raw_bits = np.trapezoid(r, t)
        if raw_bits <= 0.0:
            candidate = OrbitSweepResult(
                float(tau), 0.0, 0.0, 0.0, 0.0, 0.0, period
            )
        else:
            mean_x = np.trapezoid(r * ex[mask], t) / raw_bits
            mean_z = np.trapezoid(r * ez[mask], t) / raw_bits
            key_bits = raw_bits * secret_fraction(float(mean_x), float(mean_z))
            candidate = OrbitSweepResult(
                window_s=float(tau),
                raw_bits_per_pass=float(raw_bits),
                mean_error_x=float(mean_x),
                mean_error_z=float(mean_z),
                key_bits_per_pass=float(key_bits),
                effective_key_rate_hz=float(key_bits / period),
                orbital_period_s=period,
            )
        if best is None or candidate.key_bits_per_pass > best.key_bits_per_pass:
            best = candidate
    return best


def positive_rate_window_s(points: Sequence[OrbitPoint], key: bool = True) -> float:
    """Span of the orbit phase over which the (key or raw) rate is positive."""
    values = [
        (p.phase_s, p.result.key_rate_hz if key else p.result.raw_rate_hz)
        for p in points
    ]
    positive = [phase for phase, value in values if value > 0.0]
    if not positive:
        return 0.0
    return max(positive) - min(positive)
