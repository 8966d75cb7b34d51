"""Stereo synthesis of a sonic-frame timeline, WAV output, and spectrograms.

The renderer runs one phase accumulator for the fundamental (plus one for
the ring-mod carrier), linearly interpolates all frame parameters per
sample, crossfades sine against the complex branch, applies equal-power
panning, and normalizes the finished buffer to -1 dBFS.
"""

from __future__ import annotations

import wave
from dataclasses import dataclass

import numpy as np

from .sonify import MappingConfig, SonicFrame, Waveshape

PEAK_TARGET = 10.0 ** (-1.0 / 20.0)  # -1 dBFS
DB_FLOOR = -120.0
PCM16_FULL_SCALE = 32767


@dataclass
class AudioConfig:
    """Timeline pacing and output rate; parameter smoothing is always on."""

    sample_rate: int = 44100
    seconds_per_step: float = 0.05

    def __post_init__(self):
        if self.sample_rate < 8000:
            raise ValueError(f"sample_rate must be >= 8000, got {self.sample_rate}")
        if self.seconds_per_step <= 0:
            raise ValueError(
                f"seconds_per_step must be > 0, got {self.seconds_per_step}"
            )


@dataclass
class AudioBuffer:
    """Stereo float samples in [-1, 1]."""

    left: np.ndarray
    right: np.ndarray
    sample_rate: int

    def __post_init__(self):
        self.left = np.asarray(self.left, dtype=float)
        self.right = np.asarray(self.right, dtype=float)
        if self.left.shape != self.right.shape:
            raise ValueError("left and right channels must have equal length")

    @property
    def duration(self) -> float:
        return len(self.left) / self.sample_rate


@dataclass
class SpectrogramMatrix:
    """Frame times, bin frequencies, and magnitudes in dB re the matrix max."""

    times: np.ndarray
    frequencies: np.ndarray
    magnitudes_db: np.ndarray


def oscillator_sample(kind: str, phase):
    """Evaluate a unit oscillator at the given phase (radians, any real).

    'sine' is sin(phase); 'triangle' is the arcsin-of-sine triangle, peaking
    at +-1 with odd harmonics falling off as 1/n^2.
    """
    if kind == "sine":
        return np.sin(phase)
    if kind == "triangle":
        return (2.0 / np.pi) * np.arcsin(np.sin(phase))
    raise ValueError(f"unknown oscillator kind {kind!r}")


def ring_mod_sample(f1: float, f2: float, t):
    """Product of two sines; the spectrum holds only |f1 - f2| and f1 + f2."""
    if f1 <= 0 or f2 <= 0:
        raise ValueError(f"frequencies must be > 0, got f1={f1}, f2={f2}")
    return np.sin(2.0 * np.pi * f1 * t) * np.sin(2.0 * np.pi * f2 * t)


def _accumulate_phase(freq: np.ndarray, sample_rate: int) -> np.ndarray:
    """Phase accumulator: phase[i] = 2 pi / sr * sum of freq[:i] (starts at 0)."""
    increments = 2.0 * np.pi * freq / sample_rate
    phase = np.empty_like(increments)
    phase[0] = 0.0
    np.cumsum(increments[:-1], out=phase[1:])
    return phase


def _synthesize(
    timeline: list[SonicFrame], cfg: AudioConfig, mapping: MappingConfig
) -> tuple[np.ndarray, np.ndarray]:
    """Un-mastered stereo render; each frame occupies seconds_per_step."""
    if not timeline:
        raise ValueError("cannot render an empty timeline")

    num_samples = round(len(timeline) * cfg.seconds_per_step * cfg.sample_rate)
    if num_samples == 0:
        raise ValueError(
            f"timeline renders to zero samples "
            f"({len(timeline)} frames at {cfg.seconds_per_step} s/step)"
        )
    t = np.arange(num_samples) / cfg.sample_rate
    knots = np.arange(len(timeline)) * cfg.seconds_per_step

    amp = np.interp(t, knots, [f.amplitude for f in timeline])
    pan = np.interp(t, knots, [f.pan for f in timeline])
    freq = np.interp(t, knots, [f.frequency for f in timeline])
    mix = np.interp(t, knots, [f.timbre_mix for f in timeline])

    phase = _accumulate_phase(freq, cfg.sample_rate)
    sine = np.sin(phase)
    if mapping.waveshape is Waveshape.TRIANGLE:
        complex_branch = oscillator_sample("triangle", phase)
    else:
        carrier_phase = _accumulate_phase(mapping.ring_ratio * freq, cfg.sample_rate)
        complex_branch = sine * np.sin(carrier_phase)
    signal = (1.0 - mix) * sine + mix * complex_branch

    # Equal-power pan: gains trace a quarter circle, g_l^2 + g_r^2 = 1.
    angle = (pan + 1.0) * np.pi / 4.0
    left = signal * amp * np.cos(angle)
    right = signal * amp * np.sin(angle)
    return left, right


def render(
    timeline: list[SonicFrame], cfg: AudioConfig, mapping: MappingConfig
) -> AudioBuffer:
    """Synthesize the timeline and normalize the buffer to -1 dBFS peak
    (all-zero buffers are left silent)."""
    left, right = _synthesize(timeline, cfg, mapping)
    peak = max(np.abs(left).max(initial=0.0), np.abs(right).max(initial=0.0))
    if peak > 0.0:
        gain = PEAK_TARGET / peak
        left = left * gain
        right = right * gain
    return AudioBuffer(left, right, cfg.sample_rate)


def stft(buffer: AudioBuffer, window_size: int, hop: int) -> SpectrogramMatrix:
    """Hann-windowed magnitude spectrogram of the mono mix, in dB re max.

    window_size must be a power of two >= 256; frames start every `hop`
    samples and the last partial window is dropped.
    """
    if window_size < 256 or window_size & (window_size - 1) != 0:
        raise ValueError(
            f"window_size must be a power of two >= 256, got {window_size}"
        )
    if not 0 < hop <= window_size:
        raise ValueError(f"hop must be in (0, window_size], got {hop}")
    mono = (buffer.left + buffer.right) / 2.0
    if len(mono) < window_size:
        raise ValueError(
            f"buffer has {len(mono)} samples, shorter than one window ({window_size})"
        )

    window = np.hanning(window_size)
    starts = np.arange(0, len(mono) - window_size + 1, hop)
    magnitudes = np.empty((len(starts), window_size // 2 + 1))
    for row, start in enumerate(starts):
        segment = mono[start : start + window_size] * window
        magnitudes[row] = np.abs(np.fft.rfft(segment))

    reference = magnitudes.max()
    if reference > 0.0:
        with np.errstate(divide="ignore"):
            db = 20.0 * np.log10(magnitudes / reference)
        db = np.maximum(db, DB_FLOOR)
    else:
        db = np.full_like(magnitudes, DB_FLOOR)

    times = (starts + window_size / 2.0) / buffer.sample_rate
    frequencies = np.fft.rfftfreq(window_size, 1.0 / buffer.sample_rate)
    return SpectrogramMatrix(times, frequencies, db)


def _to_pcm16(samples: np.ndarray) -> np.ndarray:
    """Round half away from zero to integers, clipped to the int16 range."""
    scaled = samples * PCM16_FULL_SCALE
    rounded = np.copysign(np.floor(np.abs(scaled) + 0.5), scaled)
    return np.clip(rounded, -32768, 32767).astype("<i2")


def write_wav(buffer: AudioBuffer, path) -> None:
    """Write a RIFF/WAVE file: PCM 16-bit, stereo interleaved, left first."""
    interleaved = np.empty(2 * len(buffer.left), dtype="<i2")
    interleaved[0::2] = _to_pcm16(buffer.left)
    interleaved[1::2] = _to_pcm16(buffer.right)
    with open(path, "wb") as stream, wave.open(stream, "wb") as handle:
        handle.setnchannels(2)
        handle.setsampwidth(2)
        handle.setframerate(buffer.sample_rate)
        handle.writeframes(interleaved.tobytes())


def read_wav(path) -> AudioBuffer:
    """Read back a stereo PCM16 WAV into float samples in [-1, 1]."""
    with open(path, "rb") as stream, wave.open(stream, "rb") as handle:
        if handle.getnchannels() != 2 or handle.getsampwidth() != 2:
            raise ValueError("expected a stereo PCM16 WAV file")
        rate = handle.getframerate()
        raw = handle.readframes(handle.getnframes())
    interleaved = np.frombuffer(raw, dtype="<i2").astype(float) / PCM16_FULL_SCALE
    return AudioBuffer(interleaved[0::2], interleaved[1::2], rate)
