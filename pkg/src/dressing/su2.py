"""Partial-su(2) operator triples and the rotation identity they support.

A triple (jx, jy, jz) only has to satisfy [jz, jx] = i jy and [jy, jz] = i jx;
the third relation [jx, jy] = i jz is reported but never required. For any
such triple and any finite real delta,

    sqrt(1 + delta^2) e^{-i phi jz} jx e^{+i phi jz} = jx + delta jy,
    phi = arctan(delta),

which is the algebraic engine behind every dressing transformation in this
package.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import atan, sqrt

import numpy as np

from .core import Operator, frobenius, unitary_from_generator

TRIPLE_TOL = 1e-12


class CommutationError(ValueError):
    """The two required commutation relations do not hold to tolerance."""


def partial_su2_residuals(jx: Operator, jy: Operator, jz: Operator) -> tuple[float, float, float]:
    """Residuals of the three su(2) relations; only the first two gate acceptance.

    r1 = ||[jz,jx] - i jy|| / max(1, ||jy||), r2 = ||[jy,jz] - i jx|| / max(1, ||jx||),
    r3 = ||[jx,jy] - i jz|| / max(1, ||jz||), all Frobenius.
    """
    if not (jx.register == jy.register == jz.register):
        raise ValueError("triple members live on different registers")
    x, y, z = jx.matrix, jy.matrix, jz.matrix
    r1 = frobenius((z @ x - x @ z) - 1j * y) / max(1.0, frobenius(y))
    r2 = frobenius((y @ z - z @ y) - 1j * x) / max(1.0, frobenius(x))
    r3 = frobenius((x @ y - y @ x) - 1j * z) / max(1.0, frobenius(z))
    return r1, r2, r3


@dataclass(frozen=True, eq=False)
class OperatorTriple:
    """Operator triple validated against the two required relations at construction."""

    jx: Operator
    jy: Operator
    jz: Operator
    r1: float = 0.0
    r2: float = 0.0
    r3: float = 0.0

    def __post_init__(self) -> None:
        r1, r2, r3 = partial_su2_residuals(self.jx, self.jy, self.jz)
        object.__setattr__(self, "r1", r1)
        object.__setattr__(self, "r2", r2)
        object.__setattr__(self, "r3", r3)
        if r1 >= TRIPLE_TOL or r2 >= TRIPLE_TOL:
            raise CommutationError(
                f"required commutation relations violated: r1={r1:.3e}, r2={r2:.3e}"
            )


def dressing_identity_residual(t: OperatorTriple, delta: float) -> float:
    """Residual of the rotation identity at dressing strength delta.

    Returns ||sqrt(1+delta^2) e^{-i phi jz} jx e^{i phi jz} - (jx + delta jy)||_F
    / max(1, ||jx||_F) with phi = arctan(delta). Below 1e-12 for any valid triple.
    """
    delta = float(delta)
    if not np.isfinite(delta):
        raise ValueError("delta must be finite")
    phi = atan(delta)
    u = unitary_from_generator(t.jz, phi).matrix
    lhs = sqrt(1.0 + delta * delta) * (u @ t.jx.matrix @ u.conj().T)
    rhs = t.jx.matrix + delta * t.jy.matrix
    return frobenius(lhs - rhs) / max(1.0, frobenius(t.jx.matrix))
