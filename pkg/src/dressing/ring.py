"""Non-separable dressing on a qubit ring.

On a periodic ring the single-site y drive carries an inherent two-qubit
error delta * S_k^x (S_{k+1}^z + S_{k-1}^z). A single non-local unitary
generated by delta * sum_k S_k^z S_{k+1}^z removes the error to first order
in delta, while leaving every S_k^z and S_k^z S_l^z exactly unchanged; the
leftover residual is O(delta^2), which the scaling helpers verify
empirically.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .core import (
    Operator,
    Register,
    op_distance,
    site_operator,
    spin_matrices,
    spin_register,
    unitary_from_generator,
)


@dataclass(frozen=True)
class RingModel:
    """Periodic ring of n_qubits spins with drive amplitude fy and error delta."""

    n_qubits: int
    delta: float
    fy: float = 1.0

    def __post_init__(self) -> None:
        if self.n_qubits < 3:
            raise ValueError("ring needs at least 3 qubits")
        if abs(self.delta) >= 0.5:
            raise ValueError("error strength outside the perturbative regime (|delta| < 0.5)")

    @property
    def register(self) -> Register:
        return Register((2,) * self.n_qubits)


def _spin(reg: Register, axis: int, site: int, n: int) -> np.ndarray:
    return site_operator(reg, site % n, spin_matrices()[axis]).matrix


def actual_drive_generator(m: RingModel, k: int) -> Operator:
    """The y drive on site k with its inherent two-qubit error, fy scaled."""
    n = m.n_qubits
    if not 0 <= k < n:
        raise ValueError(f"site {k} outside ring of {n} qubits")
    reg = m.register
    sy_k = _spin(reg, 1, k, n)
    err = _spin(reg, 0, k, n) @ (_spin(reg, 2, k + 1, n) + _spin(reg, 2, k - 1, n))
    return Operator(reg, m.fy * (sy_k + m.delta * err))


def ideal_drive_generator(m: RingModel, k: int) -> Operator:
    reg = m.register
    return Operator(reg, m.fy * _spin(reg, 1, k, m.n_qubits))


def nonlocal_dressing(m: RingModel) -> Operator:
    """exp(i delta sum_k S_k^z S_{k+1}^z) around the ring.

    Diagonal generator, so it commutes exactly with every S_k^z and
    S_k^z S_l^z; it does not factor into single-site unitaries.
    """
    n = m.n_qubits
    reg = m.register
    gen = sum(_spin(reg, 2, k, n) @ _spin(reg, 2, k + 1, n) for k in range(n))
    return unitary_from_generator(Operator(reg, gen), -m.delta)


def drive_residual(m: RingModel, k: int) -> float:
    """Distance of the dressed actual drive from the clean drive.

    Conjugation orientation chosen so the first order in delta cancels:
    the residual is op_distance(V^dagger actual V, fy S_k^y) and scales as
    delta^2.
    """
    v = nonlocal_dressing(m)
    dressed = v.dagger() @ actual_drive_generator(m, k) @ v
    return op_distance(dressed, ideal_drive_generator(m, k))


def residual_scaling(m: RingModel, k: int, deltas: list[float]) -> list[float]:
    """Dressed-drive residuals for a descending list of positive error strengths."""
    ds = [float(d) for d in deltas]
    if any(d <= 0 for d in ds) or any(a <= b for a, b in zip(ds, ds[1:])):
        raise ValueError("deltas must be positive and strictly descending")
    return [drive_residual(replace(m, delta=d), k) for d in ds]
