"""Brute-force reference implementations for cross-checking the fast paths.

Everything here builds explicit 2^L x 2^L matrices from Kronecker products
and exponentiates them by eigendecomposition.  Deliberately slow and obvious;
capped at L <= 6 and never used by the production pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quantum import StateVector

ORACLE_MAX_SPINS = 6

_PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]])
_IDENTITY = np.eye(2, dtype=complex)


@dataclass
class DenseOperator:
    """Explicit matrix on the full 2^L-dimensional space."""

    entries: np.ndarray


def _embed(pauli: np.ndarray, site: int, num_spins: int) -> np.ndarray:
    """Pauli on one site, identity elsewhere (site 0 = most significant bit)."""
    ops = [_IDENTITY] * num_spins
    ops[site] = pauli
    out = ops[0]
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


def collective_operator(kind: str, num_spins: int) -> DenseOperator:
    """Collective spin operator: 'sy' or 'sz' is half the sum of the
    single-site Paulis, 'sz2' is the square of the latter."""
    if num_spins > ORACLE_MAX_SPINS:
        raise ValueError(
            f"oracle operators are capped at L <= {ORACLE_MAX_SPINS}, got {num_spins}"
        )
    if kind not in ("sy", "sz", "sz2"):
        raise ValueError(f"unknown operator kind {kind!r}")
    pauli = _PAULI_Y if kind == "sy" else _PAULI_Z
    total = sum(_embed(pauli, site, num_spins) for site in range(num_spins)) / 2.0
    if kind == "sz2":
        total = total @ total
    return DenseOperator(total)


def dense_evolution(op: DenseOperator, t: float) -> DenseOperator:
    """e^{-i t H} for Hermitian H, via eigendecomposition."""
    h = op.entries
    if not np.allclose(h, h.conj().T, atol=1e-12):
        raise ValueError("dense_evolution requires a Hermitian generator")
    eigvals, eigvecs = np.linalg.eigh(h)
    phases = np.exp(-1j * t * eigvals)
    return DenseOperator((eigvecs * phases) @ eigvecs.conj().T)


def brute_entropy(state: StateVector) -> float:
    """Half-chain entropy from the full density matrix and an explicit
    partial trace, in bits."""
    num = state.num_spins
    if num > ORACLE_MAX_SPINS:
        raise ValueError(
            f"brute_entropy is capped at L <= {ORACLE_MAX_SPINS}, got {num}"
        )
    if num % 2 != 0:
        raise ValueError(f"half-chain bipartition needs even L, got {num}")
    rho = np.outer(state.amplitudes, state.amplitudes.conj())
    dim_a = 1 << (num // 2)
    dim_b = 1 << (num - num // 2)
    rho = rho.reshape(dim_a, dim_b, dim_a, dim_b)
    rho_a = np.zeros((dim_a, dim_a), dtype=complex)
    for b in range(dim_b):
        rho_a += rho[:, b, :, b]
    lam = np.linalg.eigvalsh(rho_a)
    lam = lam[lam > 1e-15]
    return float(-np.sum(lam * np.log2(lam)))
