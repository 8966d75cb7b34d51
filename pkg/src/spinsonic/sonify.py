"""Map per-step phase-space summaries and entropy to synthesis parameters.

Four stateless mappings per step: the Husimi peak height drives amplitude,
the peak azimuth drives stereo pan, the peak polar angle (weighted by the
angular spread) drives pitch, and the normalized entropy drives the mix
between a pure sine and a complex waveform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .phasespace import FrameSummary
from .quantum import EntropyTrace, wrap_phi


class Waveshape(Enum):
    TRIANGLE = "triangle"
    RING_MOD = "ringmod"


@dataclass
class MappingConfig:
    """Anchors and ranges of the parameter mapping.

    theta_init is the polar angle the system was prepared at: a peak sitting
    there sounds at exactly f_init.  entropy_max is the entropy (in bits)
    that maps to a fully complex waveform; the half-chain bound L/2 is the
    natural choice.
    """

    theta_init: float
    f_init: float = 440.0
    f_min: float = 20.0
    waveshape: Waveshape = Waveshape.TRIANGLE
    ring_ratio: float = 2.5
    entropy_max: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.f_min < self.f_init:
            raise ValueError(
                f"need 0 < f_min < f_init, got f_min={self.f_min}, f_init={self.f_init}"
            )
        if self.ring_ratio <= 0:
            raise ValueError(f"ring_ratio must be > 0, got {self.ring_ratio}")
        if self.entropy_max <= 0:
            raise ValueError(f"entropy_max must be > 0, got {self.entropy_max}")


@dataclass
class SonicFrame:
    """Synthesis parameters for one step."""

    amplitude: float
    pan: float
    frequency: float
    timbre_mix: float
    step_index: int = 0

    def __post_init__(self):
        if not 0.0 <= self.amplitude <= 1.0:
            raise ValueError(f"amplitude must lie in [0, 1], got {self.amplitude}")
        if not -1.0 <= self.pan <= 1.0:
            raise ValueError(f"pan must lie in [-1, 1], got {self.pan}")
        if self.frequency <= 0.0:
            raise ValueError(f"frequency must be > 0, got {self.frequency}")
        if not 0.0 <= self.timbre_mix <= 1.0:
            raise ValueError(f"timbre_mix must lie in [0, 1], got {self.timbre_mix}")


def map_amplitude(summary: FrameSummary) -> float:
    """Linear gain equals the Husimi peak height (master gain is applied later)."""
    return min(max(summary.peak_value, 0.0), 1.0)


def map_pan(summary: FrameSummary) -> float:
    """|phi| in [0, pi] mapped linearly to [-1, +1]: phi = 0 is full left,
    |phi| = pi full right; the sign of phi is folded away."""
    x = abs(wrap_phi(summary.peak.phi))
    return 2.0 * x / math.pi - 1.0


def map_pitch(summary: FrameSummary, cfg: MappingConfig) -> float:
    """f = f_init - |theta_peak - theta_init| * f_init * spread, clamped to
    [f_min, f_init] so a large excursion cannot go subsonic or negative."""
    raw = cfg.f_init - abs(summary.peak.theta - cfg.theta_init) * cfg.f_init * summary.spread
    return min(max(raw, cfg.f_min), cfg.f_init)


def map_timbre(entropy_bits: float, cfg: MappingConfig) -> float:
    """Fraction of the complex waveform: entropy / entropy_max, clamped to [0, 1]."""
    return min(max(entropy_bits / cfg.entropy_max, 0.0), 1.0)


def build_timeline(
    summaries: list[FrameSummary],
    entropies: EntropyTrace,
    cfg: MappingConfig,
) -> list[SonicFrame]:
    """Apply the four mappings step by step."""
    if len(summaries) != len(entropies.values):
        raise ValueError(
            f"got {len(summaries)} summaries but {len(entropies.values)} entropy values"
        )
    return [
        SonicFrame(
            amplitude=map_amplitude(summary),
            pan=map_pan(summary),
            frequency=map_pitch(summary, cfg),
            timbre_mix=map_timbre(float(entropy), cfg),
            step_index=idx,
        )
        for idx, (summary, entropy) in enumerate(zip(summaries, entropies.values))
    ]
