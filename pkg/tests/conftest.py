"""Shared brute-force helpers used by several test modules."""

import numpy as np


def kron_coherent(num_spins, theta, phi):
    """Coherent state built the slow way: explicit Kronecker product."""
    qubit = np.array(
        [
            np.exp(-0.5j * phi) * np.cos(theta / 2),
            np.exp(+0.5j * phi) * np.sin(theta / 2),
        ]
    )
    out = np.array([1.0 + 0.0j])
    for _ in range(num_spins):
        out = np.kron(out, qubit)
    return out


def grid_local_maxima(values, floor_fraction=0.01):
    """Strict local maxima over the 8-neighborhood of a (theta, phi) grid.

    phi wraps around; the exact-pole rows (first and last theta row) are
    excluded because they represent a single physical point each and carry
    only float ripple along phi.  Cells below floor_fraction * max are
    ignored.
    """
    n_theta, n_phi = values.shape
    floor = floor_fraction * values.max()
    maxima = []
    for i in range(1, n_theta - 1):
        for j in range(n_phi):
            center = values[i, j]
            if center < floor:
                continue
            is_max = True
            for di in (-1, 0, 1):
                for dj in (-1, 0, 1):
                    if di == 0 and dj == 0:
                        continue
                    if values[i + di, (j + dj) % n_phi] >= center:
                        is_max = False
                        break
                if not is_max:
                    break
            if is_max:
                maxima.append((i, j))
    return maxima
