"""Dense complex linear algebra over labeled tensor-product spaces.

Everything is built on plain numpy arrays wrapped with a Register that
records the local dimension of each site. Matrices stay dense; the target
Hilbert spaces are small (dimension <= ~200), so eigendecompositions and
Kronecker products are cheap and exact to machine precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-12
DEGENERACY_TOL = 1e-9


def frobenius(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


@dataclass(frozen=True)
class Register:
    """Ordered list of local site dimensions defining a tensor-product space."""

    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise ValueError("register needs at least one site")
        if any(d < 2 for d in dims):
            raise ValueError(f"local dimensions must be >= 2, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def n_sites(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return prod(self.dims)


def spin_register(n_sites: int) -> Register:
    return Register((2,) * n_sites)


@dataclass(frozen=True, eq=False)
class Operator:
    """Dense complex square matrix tagged with its Register."""

    register: Register
    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.complex128)
        d = self.register.total_dim
        if m.shape != (d, d):
            raise ValueError(f"matrix shape {m.shape} does not match register dimension {d}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def dagger(self) -> "Operator":
        return Operator(self.register, self.matrix.conj().T)

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        # Derived check, never trusted metadata.
        r = frobenius(self.matrix - self.matrix.conj().T) / max(1.0, frobenius(self.matrix))
        return r < tol

    def is_unitary(self, tol: float = UNITARY_TOL) -> bool:
        d = self.register.total_dim
        return frobenius(self.matrix @ self.matrix.conj().T - np.eye(d)) < tol

    def __add__(self, other: "Operator") -> "Operator":
        _same_register(self, other)
        return Operator(self.register, self.matrix + other.matrix)

    def __sub__(self, other: "Operator") -> "Operator":
        _same_register(self, other)
        return Operator(self.register, self.matrix - other.matrix)

    def __neg__(self) -> "Operator":
        return Operator(self.register, -self.matrix)

    def __mul__(self, scalar: complex) -> "Operator":
        return Operator(self.register, self.matrix * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Operator):
            _same_register(self, other)
            return Operator(self.register, self.matrix @ other.matrix)
        if isinstance(other, StateVector):
            if other.register != self.register:
                raise ValueError("operator and state live on different registers")
            return StateVector(self.register, self.matrix @ other.amplitudes)
        return NotImplemented


@dataclass(frozen=True, eq=False)
class StateVector:
    """Dense complex vector tagged with its Register."""

    register: Register
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if v.shape != (self.register.total_dim,):
            raise ValueError(
                f"amplitude length {v.shape[0]} does not match register dimension "
                f"{self.register.total_dim}"
            )
        v.setflags(write=False)
        object.__setattr__(self, "amplitudes", v)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> "StateVector":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.register, self.amplitudes / n)

    def inner(self, other: "StateVector") -> complex:
        """<self|other> with the conjugation on self."""
        if other.register != self.register:
            raise ValueError("states live on different registers")
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def _same_register(a: Operator, b: Operator) -> None:
    if a.register != b.register:
        raise ValueError(f"register mismatch: {a.register.dims} vs {b.register.dims}")


def identity(reg: Register) -> Operator:
    return Operator(reg, np.eye(reg.total_dim))


def basis_state(reg: Register, index: int) -> StateVector:
    v = np.zeros(reg.total_dim, dtype=np.complex128)
    v[index] = 1.0
    return StateVector(reg, v)


def product_state(reg: Register, levels: tuple[int, ...]) -> StateVector:
    """Computational basis state |levels[0], levels[1], ...>."""
    if len(levels) != reg.n_sites:
        raise ValueError("one level index per site required")
    index = 0
    for d, k in zip(reg.dims, levels):
        if not 0 <= k < d:
            raise ValueError(f"level {k} out of range for local dimension {d}")
        index = index * d + k
    return basis_state(reg, index)


def kron(a: Operator, b: Operator) -> Operator:
    """Kronecker product; the result register concatenates the factors' sites."""
    reg = Register(a.register.dims + b.register.dims)
    return Operator(reg, np.kron(a.matrix, b.matrix))


def embed(local: Operator, sites: list[int] | tuple[int, ...], reg: Register) -> Operator:
    """Act as `local` on the listed sites (in that order) and as identity elsewhere."""
    sites = [int(s) for s in sites]
    n = reg.n_sites
    if len(set(sites)) != len(sites):
        raise ValueError(f"duplicate site index in {sites}")
    if any(s < 0 or s >= n for s in sites):
        raise ValueError(f"site index out of range for {n}-site register: {sites}")
    if local.register.dims != tuple(reg.dims[s] for s in sites):
        raise ValueError(
            f"local dims {local.register.dims} do not match register dims at sites {sites}"
        )
    rest = [i for i in range(n) if i not in sites]
    d_rest = prod(reg.dims[i] for i in rest) if rest else 1
    big = np.kron(local.matrix, np.eye(d_rest))
    # Tensor leg p of `big` carries register site order[p]; permute legs into
    # register order on both the row and column sides.
    order = sites + rest
    shape = [reg.dims[i] for i in order]
    perm = [order.index(i) for i in range(n)]
    t = big.reshape(shape + shape).transpose(perm + [n + p for p in perm])
    return Operator(reg, np.ascontiguousarray(t.reshape(reg.total_dim, reg.total_dim)))


def hermitian_eigensystem(h: Operator) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvector columns of a Hermitian operator."""
    if not h.is_hermitian():
        raise ValueError("operator failed the hermitian check")
    evals, evecs = np.linalg.eigh(h.matrix)
    return evals, evecs


def unitary_from_generator(k: Operator, theta: float) -> Operator:
    """exp(-i theta k) for Hermitian k, via eigendecomposition."""
    evals, evecs = hermitian_eigensystem(k)
    phases = np.exp(-1j * theta * evals)
    return Operator(k.register, (evecs * phases) @ evecs.conj().T)


def ground_state(
    h: Operator, degeneracy_tol: float = DEGENERACY_TOL
) -> tuple[float, StateVector, bool]:
    """Lowest eigenpair; the flag marks a spectral gap below degeneracy_tol."""
    evals, evecs = hermitian_eigensystem(h)
    degenerate = len(evals) > 1 and (evals[1] - evals[0]) < degeneracy_tol
    return float(evals[0]), StateVector(h.register, evecs[:, 0]), degenerate


def op_distance(a: Operator, b: Operator) -> float:
    """Relative Frobenius distance ||a - b||_F / max(1, ||a||_F)."""
    _same_register(a, b)
    return frobenius(a.matrix - b.matrix) / max(1.0, frobenius(a.matrix))


def commutator(a: Operator, b: Operator) -> Operator:
    _same_register(a, b)
    return Operator(a.register, a.matrix @ b.matrix - b.matrix @ a.matrix)


# Spin-1/2 building blocks, S = sigma/2 throughout.

def pauli_matrices() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    sx = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    sy = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
    sz = np.array([[1, 0], [0, -1]], dtype=np.complex128)
    return sx, sy, sz


def spin_matrices() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    sx, sy, sz = pauli_matrices()
    return sx / 2, sy / 2, sz / 2


def site_operator(reg: Register, site: int, local_matrix: np.ndarray) -> Operator:
    """Embed a single-site matrix at `site`, identity elsewhere."""
    d = reg.dims[site]
    return embed(Operator(Register((d,)), local_matrix), [site], reg)


def spin_component(reg: Register, site: int, direction: np.ndarray) -> Operator:
    """direction . S at one spin-1/2 site of the register."""
    sx, sy, sz = spin_matrices()
    d = np.asarray(direction, dtype=float)
    return site_operator(reg, site, d[0] * sx + d[1] * sy + d[2] * sz)


def exchange_coupling(reg: Register, k: int, l: int) -> Operator:
    """Isotropic exchange S_k . S_l between two spin-1/2 sites."""
    total = np.zeros((reg.total_dim, reg.total_dim), dtype=np.complex128)
    for s in spin_matrices():
        total += embed(Operator(spin_register(2), np.kron(s, s)), [k, l], reg).matrix
    return Operator(reg, total)
