"""Monte-Carlo quadrature sampling and spectrum-analyzer-style noise traces.

Traces emulate a swept zero-span measurement: every time point is an
independent block variance of the projected combination, converted to dB
relative to shot noise and passed through a single-pole video filter.
The analysis frequency is carried as metadata only — sampling works on
the Gaussian state directly, not on a synthesized RF signal.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import PhysicalityError
from .states import GaussianState, QuadForm, snl, vacuum

_CLAMP_TOL = 1e-10


def sample_quadratures(state: GaussianState, n: int, seed) -> np.ndarray:
    """Draw ``n`` joint quadrature samples, shape (n, 2 * n_modes).

    The covariance is factorized by symmetric eigendecomposition;
    eigenvalues in [-1e-10, 0) are round-off and clamped to zero, more
    negative ones raise PhysicalityError.  Deterministic given ``seed``
    (an int, SeedSequence, or Generator).
    """
    if n < 1:
        raise ValueError("need at least one sample")
    evals, evecs = np.linalg.eigh(state.cov)
    if evals.min() < -_CLAMP_TOL:
        raise PhysicalityError(
            f"covariance has eigenvalue {evals.min():.3e} below -1e-10")
    factor = evecs * np.sqrt(np.clip(evals, 0.0, None))
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, 2 * state.n_modes))
    return state.mean + z @ factor.T


@dataclass(frozen=True)
class VarianceEstimate:
    """Sample variance of a combination with its standard error."""

    variance: float
    stderr: float
    n_samples: int


def estimate_variance(samples: np.ndarray, form: QuadForm) -> VarianceEstimate:
    """Unbiased variance of a quadrature combination over a sample block.

    ``stderr = variance * sqrt(2 / (n - 1))``, the Gaussian sampling error
    of an unbiased variance estimator.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 2 or samples.shape[1] != form.coeffs.size:
        raise ValueError("samples must have shape (n, 2 * n_modes) matching the form")
    n = samples.shape[0]
    if n < 2:
        raise ValueError("variance estimation needs at least two samples")
    projected = samples @ form.coeffs
    variance = float(np.var(projected, ddof=1))
    return VarianceEstimate(variance, variance * math.sqrt(2.0 / (n - 1)), n)


@dataclass(frozen=True)
class TraceConfig:
    """Acquisition settings of an emulated noise-power trace.

    ``rbw`` sets the rate of independent variance estimates (one point
    per 1/rbw), ``vbw`` the single-pole video smoothing, ``duration`` the
    trace length in seconds.  ``analysis_frequency`` is metadata.
    """

    duration: float
    seed: int
    samples_per_point: int = 10_000
    rbw: float = 30e3
    vbw: float = 30.0
    analysis_frequency: float = 2e6

    def __post_init__(self):
        if self.duration <= 0.0:
            raise ValueError("duration must be positive")
        if self.rbw <= 0.0 or self.vbw <= 0.0:
            raise ValueError("bandwidths must be positive")
        if self.vbw > self.rbw:
            raise ValueError("video bandwidth must not exceed resolution bandwidth")
        if self.samples_per_point < 2:
            raise ValueError("need at least two samples per point")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in 64 bits")

    @property
    def n_points(self) -> int:
        return max(1, round(self.duration * self.rbw))

    @property
    def dt(self) -> float:
        return 1.0 / self.rbw


@dataclass(frozen=True, eq=False)
class NoiseTrace:
    """Time series of noise power relative to shot noise, plus its reference."""

    times: np.ndarray
    power_db: np.ndarray
    snl_reference_db: np.ndarray
    config: TraceConfig

    def __post_init__(self):
        for name in ("times", "power_db", "snl_reference_db"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        if not (len(self.times) == len(self.power_db) == len(self.snl_reference_db)):
            raise ValueError("trace arrays must have equal length")
        if not (np.isfinite(self.power_db).all()
                and np.isfinite(self.snl_reference_db).all()):
            raise ValueError("trace values must be finite")


def _video_filter(raw: np.ndarray, alpha: float) -> np.ndarray:
    """Single-pole smoothing, precharged at the trace's own mean level.

    Precharging emulates a continuously running instrument whose filter
    has settled before the recorded sweep begins; starting cold from the
    first point would correlate the whole trace with one noisy sample.
    """
    out = np.empty_like(raw)
    acc = float(raw.mean())
    for k in range(raw.size):
        acc += alpha * (raw[k] - acc)
        out[k] = acc
    return out


def emit_trace(state: GaussianState, form: QuadForm, config: TraceConfig) -> NoiseTrace:
    """Emulate a zero-span noise-power trace of a combination.

    Per point: ``samples_per_point`` draws, block variance, dB relative to
    the combination's shot-noise level, then single-pole video smoothing
    with coefficient ``1 - exp(-2*pi*vbw*dt)``.  The reference trace is
    produced identically from vacuum.  Per-point sub-seeds are spawned
    deterministically, so traces are reproducible and order-independent.
    """
    if form.coeffs.size != 2 * state.n_modes:
        raise ValueError("form does not match the state's mode count")
    n_points = config.n_points
    reference = snl(form)
    signal_root, ref_root = np.random.SeedSequence(config.seed).spawn(2)
    vac = vacuum(state.n_modes)

    def raw_trace(src: GaussianState, root) -> np.ndarray:
        out = np.empty(n_points)
        for k, child in enumerate(root.spawn(n_points)):
            block = sample_quadratures(src, config.samples_per_point, child)
            est = estimate_variance(block, form)
            out[k] = 10.0 * math.log10(est.variance / reference)
        return out

    alpha = 1.0 - math.exp(-2.0 * math.pi * config.vbw * config.dt)
    power = _video_filter(raw_trace(state, signal_root), alpha)
    snl_ref = _video_filter(raw_trace(vac, ref_root), alpha)
    times = np.arange(n_points) * config.dt
    return NoiseTrace(times, power, snl_ref, config)


def trace_to_csv(trace: NoiseTrace) -> str:
    """Render a trace as CSV with the configuration in comment headers."""
    cfg = trace.config
    buf = io.StringIO()
    buf.write(f"# duration_s = {cfg.duration!r}\n")
    buf.write(f"# seed = {cfg.seed}\n")
    buf.write(f"# samples_per_point = {cfg.samples_per_point}\n")
    buf.write(f"# rbw_hz = {cfg.rbw!r}\n")
    buf.write(f"# vbw_hz = {cfg.vbw!r}\n")
    buf.write(f"# analysis_frequency_hz = {cfg.analysis_frequency!r}\n")
    buf.write("# power unit: dB_rel_SNL\n")
    buf.write("time_s,power_db,snl_db\n")
    for t, p, s in zip(trace.times, trace.power_db, trace.snl_reference_db):
        buf.write(f"{t:.9g},{p:.6f},{s:.6f}\n")
    return buf.getvalue()
