"""Off-resonant leakage models on N-level sites and their dressings.

An N-level site hosts a qubit in levels 0 and 1. The drive that should
couple only 0 <-> 1 also leaks from level 1 into levels 2..N-1 with complex
amplitudes delta_j. A fixed single-site rotation mixing level 0 with the
leakage levels turns the leaky drive into an exact rescaling of the clean
one, leaving level 1 untouched, so preparation and measurement of level 1
survive the change of basis.

Orientation convention, fixed once for the whole module: the error-bearing
Hamiltonian is obtained from the idealized one as H = V H_id V^dagger with
V = e^{-i phi Z}, and dressed states are |psi> = V |psi_id>.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import atan, pi, sqrt

import numpy as np

from .core import Operator, Register, kron, op_distance, unitary_from_generator
from .su2 import OperatorTriple


@dataclass(frozen=True)
class LeakageModel:
    """N-level site with drive strength f and leakage amplitudes delta_j.

    deltas[j] couples level 1 to level j+2. energies = (eps1, eps2) are the
    level energies entering the dephasing Hamiltonian eps1*n1 + eps2*n2;
    physically eps1 and eps2 should be tunable or rationally related, but
    only eps1, eps2 > 0 is required here.
    """

    n_levels: int
    f: float
    deltas: tuple[complex, ...]
    energies: tuple[float, float] = (1.0, 2.0)

    def __post_init__(self) -> None:
        if self.n_levels < 3:
            raise ValueError("need at least 3 levels for a leakage model")
        deltas = tuple(complex(d) for d in self.deltas)
        if len(deltas) != self.n_levels - 2:
            raise ValueError(
                f"expected {self.n_levels - 2} leakage amplitudes, got {len(deltas)}"
            )
        e1, e2 = self.energies
        if e1 <= 0 or e2 <= 0:
            raise ValueError("level energies must be positive")
        object.__setattr__(self, "deltas", deltas)
        object.__setattr__(self, "energies", (float(e1), float(e2)))

    @property
    def register(self) -> Register:
        return Register((self.n_levels,))

    @property
    def kappa_abs(self) -> float:
        return sqrt(sum(abs(d) ** 2 for d in self.deltas))

    @property
    def phi(self) -> float:
        return atan(self.kappa_abs)


def ladder(n_levels: int, k: int, l: int) -> Operator:
    """|k><l| on a single N-level site."""
    if not (0 <= k < n_levels and 0 <= l < n_levels):
        raise ValueError(f"level index out of range for {n_levels} levels: ({k}, {l})")
    m = np.zeros((n_levels, n_levels), dtype=np.complex128)
    m[k, l] = 1.0
    return Operator(Register((n_levels,)), m)


def number_op(n_levels: int, level: int) -> Operator:
    return ladder(n_levels, level, level)


def coupling_x(n_levels: int) -> Operator:
    """The clean qubit drive |0><1| + |1><0|."""
    return ladder(n_levels, 0, 1) + ladder(n_levels, 1, 0)


def leakage_triple(m: LeakageModel) -> OperatorTriple:
    """The (X, Y, Z) triple generating the dressing for this model.

    X is the clean drive, Y the normalized leakage term, and Z the level-0 to
    leakage-level rotation generator. Z carries conjugated amplitudes so the
    two required commutation relations close for complex delta_j as well.
    Requires kappa_abs > 0.
    """
    kappa = m.kappa_abs
    if kappa == 0.0:
        raise ValueError("triple undefined at kappa = 0 (no leakage)")
    n = m.n_levels
    y = np.zeros((n, n), dtype=np.complex128)
    z = np.zeros((n, n), dtype=np.complex128)
    for j, d in enumerate(m.deltas, start=2):
        y[1, j] += d
        y[j, 1] += np.conj(d)
        z[j, 0] += 1j * np.conj(d)
        z[0, j] += -1j * d
    reg = m.register
    return OperatorTriple(coupling_x(n), Operator(reg, y / kappa), Operator(reg, z / kappa))


def actual_h1(m: LeakageModel) -> Operator:
    """The error-bearing drive f[|0><1| + sum_j delta_j |1><j| + h.c.]."""
    n = m.n_levels
    h = coupling_x(n).matrix.copy()
    for j, d in enumerate(m.deltas, start=2):
        h[1, j] += d
        h[j, 1] += np.conj(d)
    return Operator(m.register, m.f * h)


def ideal_h1(m: LeakageModel) -> Operator:
    """The rescaled clean drive f sqrt(1 + |kappa|^2) (|0><1| + |1><0|)."""
    scale = m.f * sqrt(1.0 + m.kappa_abs**2)
    return Operator(m.register, scale * coupling_x(m.n_levels).matrix)


def dressing_v(m: LeakageModel) -> tuple[Operator, bool]:
    """Dressing unitary V = e^{-i phi Z}; second value flags the trivial kappa = 0 case.

    V mixes level 0 with the leakage levels only: V|1> = |1> exactly.
    """
    if m.kappa_abs == 0.0:
        return Operator(m.register, np.eye(m.n_levels)), True
    return unitary_from_generator(leakage_triple(m).jz, m.phi), False


def verify_h1_dressing(m: LeakageModel) -> float:
    """Residual of actual_h1 = V ideal_h1 V^dagger under the module convention."""
    v, _ = dressing_v(m)
    dressed_ideal = v @ ideal_h1(m) @ v.dagger()
    return op_distance(actual_h1(m), dressed_ideal)


def phase_gate_check(m: LeakageModel) -> tuple[float, float, float]:
    """Evolve under eps1*n1 + eps2*n2 for the period of level 2.

    Returns (t_star, theta_eff, residual) with t_star = 2 pi / eps2 and
    theta_eff = 2 pi eps1 / eps2; the evolution then equals the pure qubit
    phase gate e^{-i theta_eff n1} exactly, since n2 has spectrum {0, 1}.
    """
    e1, e2 = m.energies
    t_star = 2.0 * pi / e2
    theta_eff = 2.0 * pi * e1 / e2
    n = m.n_levels
    h2 = e1 * number_op(n, 1) + e2 * number_op(n, 2)
    evolved = unitary_from_generator(h2, t_star)
    target = unitary_from_generator(number_op(n, 1), theta_eff)
    return t_star, theta_eff, op_distance(evolved, target)


def ising_invariance(mk: LeakageModel, ml: LeakageModel) -> float:
    """Residual of the two-site density-density coupling under both dressings.

    The coupling n1 x n1 commutes exactly with dressings supported off
    level 1, so conjugating by V_k x V_l leaves it unchanged.
    """
    vk, _ = dressing_v(mk)
    vl, _ = dressing_v(ml)
    coupling = kron(number_op(mk.n_levels, 1), number_op(ml.n_levels, 1))
    v_pair = kron(vk, vl)
    return op_distance(v_pair.dagger() @ coupling @ v_pair, coupling)
