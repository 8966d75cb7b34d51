"""Exact state-vector dynamics of collective spin-1/2 chains.

Provides spin-coherent state preparation, the S_z^2 twisting evolution, the
collective y-rotation, the stroboscopic kicked-rotor map built from the two,
and the half-chain von Neumann entropy.  All evolutions use the exact
factorized form of the propagators (diagonal phases for S_z^2, per-qubit 2x2
gates for S_y), so there is no time-step error anywhere.

Basis convention: computational basis index b of L qubits, qubit 0 is the
most significant bit.  |0> is spin-up (S_z eigenvalue +1/2).  Subsystem A of
the half-chain cut is the first L/2 qubits, i.e. the high bits of b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Sequence

import numpy as np

# 2^14 amplitudes and 128x128 reduced matrices keep everything interactive.
MAX_SPINS = 14

NORM_TOL = 1e-10


class Model(Enum):
    OAT = "oat"
    KICKED_ROTOR = "kicked"


def wrap_phi(phi: float) -> float:
    """Wrap an azimuthal angle into (-pi, pi]."""
    w = math.remainder(phi, 2.0 * math.pi)
    if w <= -math.pi:
        w = math.pi
    return w


@dataclass
class SphericalAngles:
    """Direction on the Bloch sphere: polar theta in [0, pi], azimuth phi."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        self.phi = wrap_phi(self.phi)


@dataclass
class StateVector:
    """Pure state of ``num_spins`` qubits as 2^L complex amplitudes."""

    amplitudes: np.ndarray
    num_spins: int

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.num_spins < 1:
            raise ValueError(f"num_spins must be >= 1, got {self.num_spins}")
        dim = 1 << self.num_spins
        if self.amplitudes.shape != (dim,):
            raise ValueError(
                f"expected {dim} amplitudes for L={self.num_spins}, "
                f"got shape {self.amplitudes.shape}"
            )
        norm_sq = float(np.vdot(self.amplitudes, self.amplitudes).real)
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalized: |psi|^2 = {norm_sq!r}")


@dataclass
class ReducedDensityMatrix:
    """Half-chain reduced state with its eigenvalues cached."""

    entries: np.ndarray
    eigenvalues: np.ndarray


@dataclass
class EntropyTrace:
    """Per-step half-chain entropy in bits; steps are times or kick counts."""

    steps: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.steps = np.asarray(self.steps, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.steps.shape != self.values.shape:
            raise ValueError("steps and values must have equal length")


@dataclass
class ScenarioConfig:
    """One simulation scenario: model, system size, initial state, schedule.

    For the twisting model ``dt`` is the time increment per step; for the
    kicked rotor each step is one kick of strength ``alpha`` preceded by a
    y-rotation by ``beta``.
    """

    model: Model
    num_spins: int
    theta0: float
    phi0: float
    num_steps: int
    dt: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if self.num_spins % 2 != 0:
            raise ValueError(
                f"num_spins must be even for the half-chain cut, got {self.num_spins}"
            )
        if not 2 <= self.num_spins <= MAX_SPINS:
            raise ValueError(
                f"num_spins must be in [2, {MAX_SPINS}], got {self.num_spins}"
            )
        # num_steps = 0 is allowed and yields just the initial state.
        if self.num_steps < 0:
            raise ValueError(f"num_steps must be >= 0, got {self.num_steps}")
        if self.model is Model.OAT and self.dt <= 0:
            raise ValueError(f"dt must be > 0 for the twisting model, got {self.dt}")
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        SphericalAngles(self.theta0, self.phi0)  # range check

    @property
    def initial_angles(self) -> SphericalAngles:
        return SphericalAngles(self.theta0, self.phi0)


@lru_cache(maxsize=None)
def popcounts(num_spins: int) -> np.ndarray:
    """Number of set bits for every basis index of an L-qubit register."""
    idx = np.arange(1 << num_spins, dtype=np.int64)
    counts = np.zeros_like(idx)
    for shift in range(num_spins):
        counts += (idx >> shift) & 1
    counts.setflags(write=False)
    return counts


@lru_cache(maxsize=None)
def _sz_eigenvalues(num_spins: int) -> np.ndarray:
    """Collective S_z eigenvalue m(b) = (L - 2 popcount(b)) / 2 per basis state."""
    m = (num_spins - 2 * popcounts(num_spins)) / 2.0
    m.setflags(write=False)
    return m


def coherent_state(num_spins: int, angles: SphericalAngles) -> StateVector:
    """Product state of L spins all pointing along (theta, phi).

    Each qubit is e^{-i phi/2} cos(theta/2)|0> + e^{+i phi/2} sin(theta/2)|1>,
    so the amplitude of basis state b depends only on popcount(b).
    """
    if not 1 <= num_spins <= MAX_SPINS:
        raise ValueError(
            f"num_spins must be in [1, {MAX_SPINS}] "
            f"(2^L amplitude guard), got {num_spins}"
        )
    half_theta = angles.theta / 2.0
    a0 = np.exp(-0.5j * angles.phi) * math.cos(half_theta)
    a1 = np.exp(+0.5j * angles.phi) * math.sin(half_theta)
    k = popcounts(num_spins)
    amps = a0 ** (num_spins - k) * a1**k
    return StateVector(amps, num_spins)


def apply_oat(state: StateVector, t: float) -> StateVector:
    """Evolve under the twisting generator S_z^2 for time t (exact phases)."""
    m = _sz_eigenvalues(state.num_spins)
    amps = state.amplitudes * np.exp(-1j * t * m * m)
    return StateVector(amps, state.num_spins)


def apply_rotation_y(state: StateVector, beta: float) -> StateVector:
    """Rotate every spin about y by beta, i.e. apply e^{-i beta S_y}.

    The collective rotation factorizes into the same 2x2 real gate
    [[cos(b/2), -sin(b/2)], [sin(b/2), cos(b/2)]] on each qubit.
    """
    c = math.cos(beta / 2.0)
    s = math.sin(beta / 2.0)
    gate = np.array([[c, -s], [s, c]])
    num = state.num_spins
    amps = state.amplitudes
    for qubit in range(num):
        block = 1 << (num - 1 - qubit)
        work = amps.reshape(-1, 2, block)
        amps = np.einsum("st,atb->asb", gate, work).reshape(-1)
    return StateVector(amps, num)


def kicked_rotor_step(state: StateVector, alpha: float, beta: float) -> StateVector:
    """One stroboscopic step: y-rotation by beta, then an S_z^2 kick of
    strength alpha (phase time alpha/L)."""
    rotated = apply_rotation_y(state, beta)
    return apply_oat(rotated, alpha / state.num_spins)


def evolve_trajectory(config: ScenarioConfig) -> list[StateVector]:
    """Initial coherent state followed by one state per step (length steps+1)."""
    state = coherent_state(config.num_spins, config.initial_angles)
    states = [state]
    for _ in range(config.num_steps):
        if config.model is Model.OAT:
            state = apply_oat(state, config.dt)
        else:
            state = kicked_rotor_step(state, config.alpha, config.beta)
        states.append(state)
    return states


def _half_chain_matrix(state: StateVector) -> np.ndarray:
    """Amplitudes reshaped so rows index the first L/2 qubits (subsystem A)."""
    if state.num_spins % 2 != 0:
        raise ValueError(
            f"half-chain bipartition needs even L, got {state.num_spins}"
        )
    dim_a = 1 << (state.num_spins // 2)
    return state.amplitudes.reshape(dim_a, dim_a)


def reduced_density(state: StateVector) -> ReducedDensityMatrix:
    """Trace out the last L/2 qubits; eigenvalues come from the squared
    singular values of the reshaped amplitude matrix (stabler than
    diagonalizing M M^dagger for near-rank-deficient states)."""
    m = _half_chain_matrix(state)
    rho = m @ m.conj().T
    singular = np.linalg.svd(m, compute_uv=False)
    return ReducedDensityMatrix(rho, singular**2)


def entanglement_entropy(state: StateVector) -> float:
    """Half-chain von Neumann entropy in bits, 0 <= S <= L/2."""
    singular = np.linalg.svd(_half_chain_matrix(state), compute_uv=False)
    lam = singular**2
    lam = lam[lam > 0]
    return float(-np.sum(lam * np.log2(lam)))


def entropy_trace(states: Sequence[StateVector], steps: Sequence[float]) -> EntropyTrace:
    """Entropy of each state, labelled by the given time/kick axis."""
    if len(states) != len(steps):
        raise ValueError("states and steps must have equal length")
    values = np.array([entanglement_entropy(s) for s in states])
    return EntropyTrace(np.asarray(steps, dtype=float), values)


def align_phase(amplitudes: np.ndarray) -> np.ndarray:
    """Remove the global phase by making the largest amplitude real positive.

    Canonical form for a single state; to compare two states use
    phase_aligned_distance, which shares one pivot between them.
    """
    amps = np.asarray(amplitudes, dtype=complex)
    k = int(np.argmax(np.abs(amps)))
    pivot = amps[k]
    if pivot == 0:
        return amps.copy()
    return amps * (pivot.conjugate() / abs(pivot))


def phase_aligned_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Largest amplitude difference between two states up to a global phase.

    The relative phase is read off at the amplitude where both states are
    largest (argmax of |a|*|b|), so states with many equal-magnitude
    amplitudes still align on a common pivot.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    k = int(np.argmax(np.abs(a) * np.abs(b)))
    if a[k] == 0 or b[k] == 0:  # no overlap anywhere: nothing to align
        return float(np.abs(a - b).max())
    rel = (a[k] / b[k])
    rel /= abs(rel)
    return float(np.abs(a - b * rel).max())
