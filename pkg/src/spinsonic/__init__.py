"""Spin-chain entanglement dynamics rendered as sound.

Simulates one-axis-twisting and kicked-rotor evolution of spin-1/2 chains,
tracks the Husimi Q distribution and half-chain von Neumann entropy, maps
both to synthesis parameters, and renders stereo audio plus analysis files.
"""

from .audio import (
    AudioBuffer,
    AudioConfig,
    SpectrogramMatrix,
    oscillator_sample,
    read_wav,
    render,
    ring_mod_sample,
    stft,
    write_wav,
)
from .phasespace import (
    FrameSummary,
    HusimiFrame,
    SphericalGrid,
    husimi_frame,
    summarize,
)
from .quantum import (
    EntropyTrace,
    Model,
    ReducedDensityMatrix,
    ScenarioConfig,
    SphericalAngles,
    StateVector,
    align_phase,
    apply_oat,
    apply_rotation_y,
    coherent_state,
    entanglement_entropy,
    entropy_trace,
    evolve_trajectory,
    kicked_rotor_step,
    phase_aligned_distance,
    reduced_density,
    wrap_phi,
)
from .sonify import (
    MappingConfig,
    SonicFrame,
    Waveshape,
    build_timeline,
    map_amplitude,
    map_pan,
    map_pitch,
    map_timbre,
)

__all__ = [
    "AudioBuffer",
    "AudioConfig",
    "EntropyTrace",
    "FrameSummary",
    "HusimiFrame",
    "MappingConfig",
    "Model",
    "ReducedDensityMatrix",
    "ScenarioConfig",
    "SonicFrame",
    "SpectrogramMatrix",
    "SphericalAngles",
    "SphericalGrid",
    "StateVector",
    "Waveshape",
    "align_phase",
    "apply_oat",
    "apply_rotation_y",
    "build_timeline",
    "coherent_state",
    "entanglement_entropy",
    "entropy_trace",
    "evolve_trajectory",
    "husimi_frame",
    "kicked_rotor_step",
    "map_amplitude",
    "map_pan",
    "map_pitch",
    "map_timbre",
    "oscillator_sample",
    "phase_aligned_distance",
    "read_wav",
    "reduced_density",
    "render",
    "ring_mod_sample",
    "stft",
    "summarize",
    "wrap_phi",
    "write_wav",
]

__version__ = "0.1.0"
