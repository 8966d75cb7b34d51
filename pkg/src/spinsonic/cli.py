"""Command-line pipeline: simulate, analyze, sonify, render, export.

Scenario, grid, mapping, and audio settings resolve in precedence order
defaults < preset < config file < command-line flags.  The config file is a
flat key=value text file using the flag names with underscores.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .audio import AudioConfig, render, stft, write_wav
from .phasespace import SphericalGrid, husimi_frame, summarize
from .quantum import Model, ScenarioConfig, entropy_trace, evolve_trajectory
from .sonify import MappingConfig, Waveshape, build_timeline

OUTPUT_KINDS = ("wav", "entropy_csv", "sonic_csv", "husimi_frames", "spectrogram_csv")

STFT_WINDOW = 4096
STFT_HOP = 1024

PRESETS = {
    "oat-l2": {
        "model": "oat", "spins": "2", "theta0": repr(math.pi / 2),
        "phi0": repr(-math.pi / 2), "steps": "200", "dt": repr(math.pi / 200),
    },
    "oat-l8": {
        "model": "oat", "spins": "8", "theta0": repr(math.pi / 2),
        "phi0": repr(-math.pi / 2), "steps": "200", "dt": repr(math.pi / 200),
    },
    "kicked-l2-regular": {
        "model": "kicked", "spins": "2", "theta0": "0", "phi0": "0",
        "alpha": "0.1", "beta": repr(math.pi / 2), "steps": "200",
    },
    "kicked-l8-regular": {
        "model": "kicked", "spins": "8", "theta0": "0", "phi0": "0",
        "alpha": "0.1", "beta": repr(math.pi / 2), "steps": "200",
    },
    "kicked-l2-chaotic": {
        "model": "kicked", "spins": "2", "theta0": "0", "phi0": "0",
        "alpha": "10", "beta": repr(math.pi / 2), "steps": "200",
    },
    "kicked-l8-chaotic": {
        "model": "kicked", "spins": "8", "theta0": "0", "phi0": "0",
        "alpha": "10", "beta": repr(math.pi / 2), "steps": "200",
    },
}

_DEFAULTS = {
    "theta0": "0", "phi0": "0", "alpha": "0", "beta": "0",
    "steps": "200", "dt": repr(math.pi / 200),
    "waveshape": "triangle", "grid": "64x128",
    "seconds_per_step": "0.05", "sample_rate": "44100",
    "out": "out", "emit": ",".join(OUTPUT_KINDS), "husimi_stride": "10",
}

_SETTING_KEYS = (
    "preset", "model", "spins", "theta0", "phi0", "alpha", "beta", "steps",
    "dt", "waveshape", "grid", "seconds_per_step", "sample_rate", "out",
    "emit", "husimi_stride",
)


class UsageError(ValueError):
    """Bad flag or config value; the message names the offending key."""


@dataclass
class RunManifest:
    scenario: ScenarioConfig
    grid: SphericalGrid
    mapping: MappingConfig
    audio: AudioConfig
    outputs: set[str]
    output_dir: Path
    husimi_stride: int = 1

    def __post_init__(self):
        if not self.outputs:
            raise ValueError("at least one output must be selected")
        unknown = self.outputs - set(OUTPUT_KINDS)
        if unknown:
            raise ValueError(f"unknown outputs: {sorted(unknown)}")
        if self.husimi_stride < 1:
            raise ValueError(f"husimi_stride must be >= 1, got {self.husimi_stride}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinsonic",
        description="Simulate entanglement growth in a spin-1/2 chain and "
        "render it as stereo audio plus analysis files.",
    )
    parser.add_argument("--preset", help=f"named setup: {', '.join(PRESETS)}")
    parser.add_argument("--config", help="flat key=value settings file")
    parser.add_argument("--model", help="oat | kicked")
    parser.add_argument("--spins", help="number of spins L (even, 2..14)")
    parser.add_argument("--theta0", help="initial polar angle (radians)")
    parser.add_argument("--phi0", help="initial azimuthal angle (radians)")
    parser.add_argument("--alpha", help="kick strength (kicked model)")
    parser.add_argument("--beta", help="rotation angle per kick (radians)")
    parser.add_argument("--steps", help="number of evolution steps / kicks")
    parser.add_argument("--dt", help="time increment per step (oat model)")
    parser.add_argument("--waveshape", help="triangle | ringmod")
    parser.add_argument("--grid", help="Husimi grid as NTHETAxNPHI, e.g. 64x128")
    parser.add_argument("--seconds-per-step", dest="seconds_per_step",
                        help="audio seconds per simulation step")
    parser.add_argument("--sample-rate", dest="sample_rate", help="output sample rate (Hz)")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--emit", help=f"comma list of outputs: {','.join(OUTPUT_KINDS)}")
    parser.add_argument("--husimi-stride", dest="husimi_stride",
                        help="export every k-th Husimi frame")
    return parser


def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"--config: cannot read {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"--config: line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in _SETTING_KEYS:
            raise UsageError(f"--config: unknown key {key!r} on line {lineno}")
        values[key] = value.strip()
    return values


def _parse_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise UsageError(f"--{key}: expected an integer, got {value!r}") from None


def _parse_float(key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise UsageError(f"--{key}: expected a number, got {value!r}") from None


def parse_config(argv: list[str]) -> RunManifest:
    """Resolve flags, optional config file, and preset into a RunManifest."""
    args = _build_parser().parse_args(argv)

    settings = dict(_DEFAULTS)
    file_values = _read_config_file(args.config) if args.config else {}
    preset_name = args.preset or file_values.get("preset")
    if preset_name is not None:
        if preset_name not in PRESETS:
            raise UsageError(
                f"--preset: unknown preset {preset_name!r}; "
                f"choose from {', '.join(PRESETS)}"
            )
        settings.update(PRESETS[preset_name])
    settings.update({k: v for k, v in file_values.items() if k != "preset"})
    for key in _SETTING_KEYS:
        if key in ("preset",):
            continue
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            settings[key] = flag_value

    if "model" not in settings:
        raise UsageError("--model: required (or choose a --preset)")
    model_name = settings["model"].lower()
    if model_name not in ("oat", "kicked"):
        raise UsageError(f"--model: expected oat or kicked, got {settings['model']!r}")
    model = Model.OAT if model_name == "oat" else Model.KICKED_ROTOR

    if "spins" not in settings:
        raise UsageError("--spins: required (or choose a --preset)")
    spins = _parse_int("spins", settings["spins"])
    if spins % 2 != 0:
        raise UsageError(f"--spins: must be even for the half-chain cut, got {spins}")

    alpha = _parse_float("alpha", settings["alpha"])
    if alpha < 0:
        raise UsageError(f"--alpha: must be >= 0, got {alpha}")
    steps = _parse_int("steps", settings["steps"])
    if steps < 0:
        raise UsageError(f"--steps: must be >= 0, got {steps}")
    dt = _parse_float("dt", settings["dt"])
    if model is Model.OAT and dt <= 0:
        raise UsageError(f"--dt: must be > 0 for the oat model, got {dt}")

    try:
        scenario = ScenarioConfig(
            model=model,
            num_spins=spins,
            theta0=_parse_float("theta0", settings["theta0"]),
            phi0=_parse_float("phi0", settings["phi0"]),
            num_steps=steps,
            dt=dt,
            alpha=alpha,
            beta=_parse_float("beta", settings["beta"]),
        )
    except ValueError as exc:
        raise UsageError(f"invalid scenario: {exc}") from exc

    grid_text = settings["grid"].lower()
    parts = grid_text.split("x")
    if len(parts) != 2:
        raise UsageError(f"--grid: expected NTHETAxNPHI, got {settings['grid']!r}")
    try:
        grid = SphericalGrid(_parse_int("grid", parts[0]), _parse_int("grid", parts[1]))
    except ValueError as exc:
        raise UsageError(f"--grid: {exc}") from exc

    shape_name = settings["waveshape"].lower()
    if shape_name not in ("triangle", "ringmod"):
        raise UsageError(
            f"--waveshape: expected triangle or ringmod, got {settings['waveshape']!r}"
        )
    mapping = MappingConfig(
        theta_init=scenario.theta0,
        waveshape=Waveshape.TRIANGLE if shape_name == "triangle" else Waveshape.RING_MOD,
        entropy_max=spins / 2.0,
    )

    try:
        audio = AudioConfig(
            sample_rate=_parse_int("sample_rate", settings["sample_rate"]),
            seconds_per_step=_parse_float("seconds_per_step", settings["seconds_per_step"]),
        )
    except ValueError as exc:
        raise UsageError(f"invalid audio settings: {exc}") from exc

    outputs = {item.strip() for item in settings["emit"].split(",") if item.strip()}
    if not outputs:
        raise UsageError("--emit: at least one output kind is required")
    unknown = outputs - set(OUTPUT_KINDS)
    if unknown:
        raise UsageError(
            f"--emit: unknown output {sorted(unknown)}; valid: {','.join(OUTPUT_KINDS)}"
        )

    stride = _parse_int("husimi_stride", settings["husimi_stride"])
    if stride < 1:
        raise UsageError(f"--husimi-stride: must be >= 1, got {stride}")

    return RunManifest(
        scenario=scenario,
        grid=grid,
        mapping=mapping,
        audio=audio,
        outputs=outputs,
        output_dir=Path(settings["out"]),
        husimi_stride=stride,
    )


def _write_entropy_csv(path: Path, trace) -> None:
    lines = ["step,time_or_kick,entropy_bits"]
    for idx, (axis, value) in enumerate(zip(trace.steps, trace.values)):
        lines.append(f"{idx},{float(axis)!r},{float(value)!r}")
    path.write_text("\n".join(lines) + "\n")


def _write_sonic_csv(path: Path, timeline) -> None:
    lines = ["step,amplitude,pan,frequency_hz,timbre_mix"]
    for frame in timeline:
        lines.append(
            f"{frame.step_index},{frame.amplitude!r},{frame.pan!r},"
            f"{frame.frequency!r},{frame.timbre_mix!r}"
        )
    path.write_text("\n".join(lines) + "\n")


def _write_husimi_frame(path: Path, frame) -> None:
    header = f"step={frame.step_index} n_theta={frame.grid.n_theta} n_phi={frame.grid.n_phi}"
    with open(path, "w") as handle:
        np.savetxt(handle, frame.values, delimiter=",", fmt="%.8e",
                   header=header, comments="# ")


def _write_spectrogram_csv(path: Path, spectrogram) -> None:
    lines = ["," + ",".join(f"{f!r}" for f in spectrogram.frequencies)]
    for t, row in zip(spectrogram.times, spectrogram.magnitudes_db):
        lines.append(f"{t:.6f}," + ",".join(f"{v:.2f}" for v in row))
    path.write_text("\n".join(lines) + "\n")


def run(manifest: RunManifest) -> int:
    """Execute the pipeline and write the selected outputs; returns 0 on
    success.  On any stage failure, files already written are removed."""
    scenario = manifest.scenario
    out_dir = manifest.output_dir
    out_dir.mkdir(parents=True, exist_ok=True)

    written: list[Path] = []
    try:
        states = evolve_trajectory(scenario)
        if scenario.model is Model.OAT:
            axis = scenario.dt * np.arange(len(states))
        else:
            axis = np.arange(len(states), dtype=float)
        print(f"simulate: {scenario.num_steps} steps, L={scenario.num_spins}, "
              f"model={scenario.model.value}")

        trace = entropy_trace(states, axis)
        print(f"entropy: max {trace.values.max():.6f} bits "
              f"(bound {scenario.num_spins / 2:.1f})")

        need_frames = manifest.outputs & {"wav", "sonic_csv", "spectrogram_csv",
                                          "husimi_frames"}
        need_timeline = manifest.outputs & {"wav", "sonic_csv", "spectrogram_csv"}
        need_render = manifest.outputs & {"wav", "spectrogram_csv"}

        frames = []
        timeline = []
        if need_frames:
            frames = [husimi_frame(state, manifest.grid, idx)
                      for idx, state in enumerate(states)]
        if need_timeline:
            summaries = [summarize(frame) for frame in frames]
            timeline = build_timeline(summaries, trace, manifest.mapping)
            print(f"sonify: {len(timeline)} frames")

        buffer = None
        if need_render:
            buffer = render(timeline, manifest.audio, manifest.mapping)
            peak = max(np.abs(buffer.left).max(), np.abs(buffer.right).max())
            print(f"render: {buffer.duration:.3f} s stereo at "
                  f"{buffer.sample_rate} Hz, peak {peak:.6f}")

        if "entropy_csv" in manifest.outputs:
            path = out_dir / "entropy.csv"
            written.append(path)
            _write_entropy_csv(path, trace)
        if "sonic_csv" in manifest.outputs:
            path = out_dir / "sonic.csv"
            written.append(path)
            _write_sonic_csv(path, timeline)
        if "husimi_frames" in manifest.outputs:
            for frame in frames[:: manifest.husimi_stride]:
                path = out_dir / f"husimi_{frame.step_index:04d}.csv"
                written.append(path)
                _write_husimi_frame(path, frame)
        if "wav" in manifest.outputs:
            path = out_dir / "out.wav"
            written.append(path)
            write_wav(buffer, path)
        if "spectrogram_csv" in manifest.outputs:
            spectrogram = stft(buffer, STFT_WINDOW, STFT_HOP)
            path = out_dir / "spectrogram.csv"
            written.append(path)
            _write_spectrogram_csv(path, spectrogram)

        print(f"wrote: {', '.join(p.name for p in written)} -> {out_dir}")
        return 0
    except Exception:
        for path in written:
            path.unlink(missing_ok=True)
        raise


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        manifest = parse_config(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return run(manifest)
    except Exception as exc:  # stage failure: partial outputs already removed
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
