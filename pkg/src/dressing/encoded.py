"""Three-spin encoded qubits driven by anisotropic exchange.

A logical qubit lives in the two total-spin-1/2 states of three spin-1/2
sites; exchange gates between specific site pairs are universal on such
blocks. With anisotropic exchange the same gate set acts on a dressed
logical basis obtained by counter-rotating the outer sites of each block,
and every gate matrix element in the dressed basis equals its idealized
counterpart. Entangling gates between blocks are relocated onto
nearest-neighbor pairs with exchange-generated swaps.

Spin sites are labeled 1-based throughout this module (block l owns sites
3l-2, 3l-1, 3l), matching the gate-pair notation; registers are indexed
0-based as everywhere else.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from math import sqrt

import numpy as np
from scipy.optimize import minimize_scalar

from .core import (
    Operator,
    Register,
    StateVector,
    embed,
    exchange_coupling,
    ground_state,
    identity,
    op_distance,
    pauli_matrices,
    spin_register,
    unitary_from_generator,
)
from .exchange import (
    DMVector,
    ExchangePair,
    actual_hkl,
    axis_spin,
    convention_sign,
    ideal_hkl,
    site_rotation,
)

_BLOCK_REG = spin_register(3)


@dataclass(frozen=True)
class EncodedBlock:
    """Block l >= 1 of three consecutive spins with a quantization axis."""

    block_index: int
    axis: tuple[float, float, float] = (0.0, 0.0, 1.0)

    def __post_init__(self) -> None:
        if self.block_index < 1:
            raise ValueError("block index is 1-based")
        a = np.asarray(self.axis, dtype=float)
        norm = np.linalg.norm(a)
        if norm == 0.0:
            raise ValueError("quantization axis must be nonzero")
        object.__setattr__(self, "axis", tuple(a / norm))

    @property
    def sites_1based(self) -> tuple[int, int, int]:
        l = self.block_index
        return (3 * l - 2, 3 * l - 1, 3 * l)

    def sites(self, register: Register) -> tuple[int, int, int]:
        """0-based register indices of the block's spins."""
        s = tuple(i - 1 for i in self.sites_1based)
        if s[2] >= register.n_sites:
            raise ValueError(f"block {self.block_index} does not fit the register")
        return s


@dataclass(frozen=True)
class GateSpec:
    """Exchange gate on a 1-based site pair, in the actual or ideal basis."""

    pair: tuple[int, int]
    theta: float
    basis: str = "actual"

    def __post_init__(self) -> None:
        if self.basis not in ("actual", "ideal"):
            raise ValueError(f"basis must be 'actual' or 'ideal', got {self.basis!r}")
        object.__setattr__(self, "pair", (int(self.pair[0]), int(self.pair[1])))


@dataclass(frozen=True)
class CircuitSpec:
    """Gate sequence plus one (a, b) logical amplitude pair per block."""

    gates: tuple[GateSpec, ...]
    inputs: tuple[tuple[complex, complex], ...]

    def __post_init__(self) -> None:
        gates = tuple(self.gates)
        inputs = tuple((complex(a), complex(b)) for a, b in self.inputs)
        if not inputs:
            raise ValueError("at least one block input required")
        for a, b in inputs:
            if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > 1e-9:
                raise ValueError("logical amplitudes must be normalized")
        allowed = allowed_pairs(len(inputs))
        for g in gates:
            if g.pair not in allowed:
                raise ValueError(f"gate pair {g.pair} not in the allowed set {sorted(allowed)}")
        if len({g.basis for g in gates}) > 1:
            raise ValueError("all gates in a circuit must share one basis flag")
        object.__setattr__(self, "gates", gates)
        object.__setattr__(self, "inputs", inputs)

    @property
    def n_blocks(self) -> int:
        return len(self.inputs)


def allowed_pairs(n_blocks: int) -> frozenset[tuple[int, int]]:
    """Universal gate pairs (1-based): two intra-block pairs per block plus the
    nearest-neighbor entangling pair between adjacent blocks."""
    pairs = set()
    for l in range(1, n_blocks + 1):
        pairs.add((3 * l - 2, 3 * l - 1))
        pairs.add((3 * l - 1, 3 * l))
    for l in range(1, n_blocks):
        pairs.add((3 * l - 2, 3 * l + 2))
    return frozenset(pairs)


def entangling_neighbors(n_blocks: int) -> tuple[tuple[int, int], ...]:
    """Nearest-neighbor site pairs between adjacent rows of the block layout."""
    pairs = []
    for l in range(1, n_blocks):
        pairs.append((3 * l - 2, 3 * l + 2))
        pairs.append((3 * l - 1, 3 * l + 3))
    return tuple(pairs)


def axis_alignment(axis: np.ndarray) -> np.ndarray:
    """2x2 rotation taking the +z spin state to the +axis spin state."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    sx, sy, sz = pauli_matrices()
    s = sqrt(n[0] ** 2 + n[1] ** 2)
    if s == 0.0:
        return np.eye(2, dtype=np.complex128) if n[2] > 0 else -1j * sx
    beta = np.arctan2(s, n[2])
    m = np.array([-n[1], n[0], 0.0]) / s
    msigma = m[0] * sx + m[1] * sy + m[2] * sz
    return np.cos(beta / 2) * np.eye(2) - 1j * np.sin(beta / 2) * msigma


def logical_basis(block: EncodedBlock) -> tuple[StateVector, StateVector]:
    """Orthonormal logical basis of the block, quantized along its axis.

    Along +z the basis is the singlet of the first two spins times spin-up,
    and the orthogonal total-spin-1/2 partner; both carry total spin
    projection +1/2 along the axis.
    """
    zero = np.zeros(8, dtype=np.complex128)
    zero[2] = 1 / sqrt(2)   # up down up
    zero[4] = -1 / sqrt(2)  # down up up
    one = np.zeros(8, dtype=np.complex128)
    one[1] = sqrt(2.0 / 3.0)   # up up down
    one[2] = -1 / sqrt(6.0)
    one[4] = -1 / sqrt(6.0)
    u = axis_alignment(np.asarray(block.axis))
    rot = np.kron(np.kron(u, u), u)
    return (
        StateVector(_BLOCK_REG, rot @ zero),
        StateVector(_BLOCK_REG, rot @ one),
    )


def logical_state(a: complex, b: complex, block: EncodedBlock) -> StateVector:
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > 1e-9:
        raise ValueError("logical amplitudes must be normalized")
    zero, one = logical_basis(block)
    return StateVector(_BLOCK_REG, a * zero.amplitudes + b * one.amplitudes)


def block_dressing(dm: DMVector, block: EncodedBlock) -> Operator:
    """Dressing of one block: counter-rotation of its outer spins by the full
    anisotropy angle (the squared pair counter-rotation); middle spin untouched."""
    if dm.d_abs == 0.0:
        return identity(_BLOCK_REG)
    n = dm.n
    eps = convention_sign() * dm.epsilon
    return site_rotation(_BLOCK_REG, 0, n, eps) @ site_rotation(_BLOCK_REG, 2, n, -eps)


def total_dressing(dm: DMVector, n_blocks: int) -> Operator:
    """Product of all block dressings on the n_blocks * 3 spin register."""
    reg = spin_register(3 * n_blocks)
    v = identity(reg)
    for l in range(1, n_blocks + 1):
        block = EncodedBlock(l)
        local = block_dressing(dm, block)
        v = v @ embed(local, list(block.sites(reg)), reg)
    return v


def dressed_state(a: complex, b: complex, dm: DMVector, block: EncodedBlock) -> StateVector:
    """The dressed logical state: block dressing inverse applied to the ideal one."""
    v = block_dressing(dm, block)
    return v.dagger() @ logical_state(a, b, block)


def gate_unitary(g: GateSpec, dm: DMVector, register: Register, scaled: bool = True) -> Operator:
    """exp(-i theta H) for the gate's pair, with H per the basis flag.

    basis 'actual' uses the anisotropic pair Hamiltonian at J = 1; basis
    'ideal' uses the sqrt(1+|D|^2)-scaled isotropic one (the generator the
    equivalence statements pair with), or bare S_k.S_l when scaled=False.
    """
    n_sites = register.n_sites
    if n_sites % 3 != 0:
        raise ValueError("register must hold whole 3-spin blocks")
    if g.pair not in allowed_pairs(n_sites // 3):
        raise ValueError(f"gate pair {g.pair} not in the allowed set")
    k, l = g.pair[0] - 1, g.pair[1] - 1
    pair = ExchangePair(1.0, dm, k, l, register)
    if g.basis == "actual":
        h = actual_hkl(pair)
    elif scaled:
        h = ideal_hkl(pair)
    else:
        h = exchange_coupling(register, k, l)
    return unitary_from_generator(h, g.theta)


def _random_logical_product(
    rng: np.random.Generator, n_blocks: int
) -> StateVector:
    reg = spin_register(3 * n_blocks)
    amps = np.array([1.0], dtype=np.complex128)
    for l in range(1, n_blocks + 1):
        ab = rng.normal(size=2) + 1j * rng.normal(size=2)
        ab = ab / np.linalg.norm(ab)
        amps = np.kron(amps, logical_state(ab[0], ab[1], EncodedBlock(l)).amplitudes)
    return StateVector(reg, amps)


def verify_gate_equivalence(
    g: GateSpec, dm: DMVector, seed: int = 0, probes: int = 6
) -> float:
    """Worst matrix-element mismatch between the actual gate in the dressed
    basis and the ideal gate in the idealized basis, over seeded probe states."""
    n_blocks = (max(g.pair) + 2) // 3
    reg = spin_register(3 * n_blocks)
    u_act = gate_unitary(GateSpec(g.pair, g.theta, "actual"), dm, reg)
    u_id = gate_unitary(GateSpec(g.pair, g.theta, "ideal"), dm, reg)
    v = total_dressing(dm, n_blocks)
    vd = v.dagger()
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(probes):
        phi_id = _random_logical_product(rng, n_blocks)
        psi_id = _random_logical_product(rng, n_blocks)
        phi = vd @ phi_id
        psi = vd @ psi_id
        elem_dressed = psi.inner(u_act @ phi)
        elem_ideal = psi_id.inner(u_id @ phi_id)
        worst = max(worst, abs(elem_dressed - elem_ideal))
    return worst


def _bare_gate(register: Register, k: int, l: int, theta: float) -> Operator:
    return unitary_from_generator(exchange_coupling(register, k, l), theta)


@lru_cache(maxsize=1)
def swap_angle() -> float:
    """Gate angle that turns the isotropic pair gate into a swap conjugator.

    Found by brute-force scan plus local refinement of the relocation
    residual on three spins; under S = sigma/2 it lands on pi.
    """
    reg = spin_register(3)
    theta_probe = 1.3
    target = _bare_gate(reg, 0, 2, theta_probe)
    mid = _bare_gate(reg, 1, 2, theta_probe)

    def residual(theta: float) -> float:
        u = _bare_gate(reg, 0, 1, theta)
        return op_distance(u.dagger() @ mid @ u, target)

    grid = np.linspace(0.0, 2 * np.pi, 800, endpoint=False)
    best = min(grid, key=residual)
    width = grid[1] - grid[0]
    opt = minimize_scalar(
        lambda t: residual(t) ** 2,
        bounds=(best - width, best + width),
        method="bounded",
        options={"xatol": 1e-14},
    )
    return float(opt.x)


def swap_relocation_residual(
    theta: float, sites: tuple[int, int, int], register: Register
) -> float:
    """Residual of relocating the ideal gate from pair (l, m) to (k, m) by
    conjugation with the (k, l) gate at the swap angle. Sites are 1-based."""
    k, l, m = (s - 1 for s in sites)
    if len({k, l, m}) != 3:
        raise ValueError("relocation sites must be distinct")
    theta_s = swap_angle()
    u_swap = _bare_gate(register, k, l, theta_s)
    moved = u_swap.dagger() @ _bare_gate(register, l, m, theta) @ u_swap
    return op_distance(moved, _bare_gate(register, k, m, theta))


def two_step_relocation_residual(theta: float) -> float:
    """Residual of moving the inter-block gate from the inner pair (3, 4) to
    the nearest-neighbor pair (1, 5) with two swap conjugations."""
    reg = spin_register(6)
    theta_s = swap_angle()
    w1 = _bare_gate(reg, 0, 2, theta_s)  # swap sites 1,3
    w2 = _bare_gate(reg, 3, 4, theta_s)  # swap sites 4,5
    inner = _bare_gate(reg, 2, 3, theta)
    moved = w2.dagger() @ w1.dagger() @ inner @ w1 @ w2
    return op_distance(moved, _bare_gate(reg, 0, 4, theta))


def simulate_circuit(
    c: CircuitSpec, dm: DMVector
) -> tuple[StateVector, StateVector, float]:
    """Run the circuit along both routes and compare.

    The actual gates act on the dressed input, the scaled ideal gates on the
    idealized input; the returned residual is the 2-norm distance between the
    dressed output and the dressed image of the ideal output.
    """
    n_blocks = c.n_blocks
    reg = spin_register(3 * n_blocks)
    ideal_amps = np.array([1.0], dtype=np.complex128)
    for l, (a, b) in enumerate(c.inputs, start=1):
        ideal_amps = np.kron(ideal_amps, logical_state(a, b, EncodedBlock(l)).amplitudes)
    ideal_state = StateVector(reg, ideal_amps)
    v = total_dressing(dm, n_blocks)
    vd = v.dagger()
    dressed = vd @ ideal_state
    ideal = ideal_state
    for g in c.gates:
        dressed = gate_unitary(GateSpec(g.pair, g.theta, "actual"), dm, reg) @ dressed
        ideal = gate_unitary(GateSpec(g.pair, g.theta, "ideal"), dm, reg) @ ideal
    residual = float(np.linalg.norm(dressed.amplitudes - (vd @ ideal).amplitudes))
    return dressed, ideal, residual


def prepare_logical_zero(
    dm: DMVector, b_field: float, block: EncodedBlock, j: float = 1.0
) -> tuple[StateVector, float, bool]:
    """Ground state of the block under a strong actual pair coupling of its
    first two spins plus a pinning field on the third.

    The field acts along the anisotropy axis (falling back to the block axis
    at D = 0); physically 0 < b_field < J sqrt(1+|D|^2) is the relaxation
    window. Returns (ground state, overlap with the dressed logical zero,
    degenerate-ground flag); b_field = 0 leaves the third spin unpinned and
    sets the flag.
    """
    if b_field < 0:
        raise ValueError("pinning field must be non-negative")
    axis = dm.n if dm.d_abs > 0 else np.asarray(block.axis)
    aligned = replace(block, axis=tuple(axis))
    h = actual_hkl(ExchangePair(j, dm, 0, 1, _BLOCK_REG)) - b_field * axis_spin(
        _BLOCK_REG, 2, axis
    )
    _, ground, degenerate = ground_state(h)
    target = dressed_state(1.0, 0.0, dm, aligned)
    overlap = abs(ground.inner(target))
    return ground, overlap, degenerate


def singlet_measurement_probability(
    state: StateVector, dm: DMVector, block: EncodedBlock
) -> float:
    """Weight of the state on the dressed image of the first-two-spin singlet.

    This is the Born probability of the measurement that distinguishes the
    logical zero from the logical one when the actual pair coupling of the
    block's first two spins is read out.
    """
    if state.register != _BLOCK_REG:
        raise ValueError("state must live on a single 3-spin block")
    s = np.zeros(4, dtype=np.complex128)
    s[1] = 1 / sqrt(2)
    s[2] = -1 / sqrt(2)
    proj = embed(
        Operator(spin_register(2), np.outer(s, s.conj())), [0, 1], _BLOCK_REG
    )
    v = block_dressing(dm, block)
    dressed_proj = v.dagger() @ proj @ v
    return float(np.real(state.inner(dressed_proj @ state)))
