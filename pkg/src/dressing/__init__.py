"""Verification toolkit for dressing transformations between error-bearing
and idealized qubit Hamiltonians."""

__version__ = "0.1.0"

from .core import (
    Operator,
    Register,
    StateVector,
    commutator,
    embed,
    ground_state,
    hermitian_eigensystem,
    identity,
    kron,
    op_distance,
    unitary_from_generator,
)

__all__ = [
    "Operator",
    "Register",
    "StateVector",
    "commutator",
    "embed",
    "ground_state",
    "hermitian_eigensystem",
    "identity",
    "kron",
    "op_distance",
    "unitary_from_generator",
    "__version__",
]
