"""Operator and state algebra on the truncated atom-cavity Hilbert space.

The composite space is C^2 (x) C^d: a two-level atom tensored with a
single cavity mode whose Fock space is truncated to {|0>, ..., |d-1>}.
The atom factor comes first, with basis order (|g>, |e>), so the basis
state |atom, n> has linear index atom*d + n and the ground-state density
matrix is the unit entry of the (0, 0) block.

Hamiltonians and collapse operators are kept sparse (they are banded);
density matrices are dense because dissipation fills them in.  All types
here are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

ATOM_DIM = 2

# Tolerances enforced by DensityMatrix on construction / on demand.
HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-8
POSITIVITY_TOL = 1e-8


@dataclass(frozen=True)
class HilbertDims:
    """Dimensions of the atom (x) cavity product space."""

    fock_cutoff: int
    atom_dim: int = ATOM_DIM

    def __post_init__(self):
        if self.atom_dim != ATOM_DIM:
            raise ValueError("atom factor must be a two-level system")
        if self.fock_cutoff < 2:
            raise ValueError("Fock cutoff must be at least 2")

    @property
    def total(self) -> int:
        return self.atom_dim * self.fock_cutoff

    def index(self, atom: int, n: int) -> int:
        """Linear index of the basis state |atom, n> (atom 0 = g, 1 = e)."""
        if atom not in (0, 1):
            raise ValueError("atom index must be 0 (g) or 1 (e)")
        if not 0 <= n < self.fock_cutoff:
            raise ValueError(f"Fock index {n} outside cutoff {self.fock_cutoff}")
        return atom * self.fock_cutoff + n


@dataclass(frozen=True, eq=False)
class Operator:
    """Sparse operator on the composite space."""

    dims: HilbertDims
    data: sp.csr_matrix

    def __post_init__(self):
        n = self.dims.total
        if self.data.shape != (n, n):
            raise ValueError(f"operator shape {self.data.shape} != ({n}, {n})")

    def dag(self) -> "Operator":
        return Operator(self.dims, self.data.conj().T.tocsr())

    def to_dense(self) -> np.ndarray:
        return self.data.toarray()

    def norm_inf(self) -> float:
        """Maximum absolute row sum; cheap upper bound on the spectral norm."""
        if self.data.nnz == 0:
            return 0.0
        return float(np.max(np.abs(self.data).sum(axis=1)))

    def __add__(self, other: "Operator") -> "Operator":
        _check_same_dims(self.dims, other.dims)
        return Operator(self.dims, _pruned(self.data + other.data))

    def __sub__(self, other: "Operator") -> "Operator":
        _check_same_dims(self.dims, other.dims)
        return Operator(self.dims, _pruned(self.data - other.data))

    def __matmul__(self, other: "Operator") -> "Operator":
        _check_same_dims(self.dims, other.dims)
        return Operator(self.dims, _pruned(self.data @ other.data))

    def __mul__(self, scalar: complex) -> "Operator":
        return Operator(self.dims, _pruned(self.data * scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "Operator":
        return Operator(self.dims, -self.data)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Dense system state; Hermitian with unit trace (checked on construction).

    Positivity is more expensive and is checked on demand via
    :meth:`min_eigenvalue`, not per construction.
    """

    dims: HilbertDims
    data: np.ndarray

    def __post_init__(self):
        n = self.dims.total
        mat = np.array(self.data, dtype=complex)
        if mat.shape != (n, n):
            raise ValueError(f"density matrix shape {mat.shape} != ({n}, {n})")
        herm = np.max(np.abs(mat - mat.conj().T))
        if herm > HERMITICITY_TOL:
            raise ValueError(f"density matrix not Hermitian: max |rho - rho^+| = {herm:.3e}")
        tr = mat.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace {tr} deviates from 1 beyond {TRACE_TOL}")
        mat.setflags(write=False)
        object.__setattr__(self, "data", mat)

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.data)[0])


def _check_same_dims(a: HilbertDims, b: HilbertDims) -> None:
    if a != b:
        raise ValueError(f"dimension mismatch: {a} vs {b}")


def _pruned(mat) -> sp.csr_matrix:
    out = sp.csr_matrix(mat)
    out.eliminate_zeros()
    return out


def cavity_ladder(d: int) -> sp.csr_matrix:
    """Cavity-space annihilation operator: <n-1|a|n> = sqrt(n), d-1 nonzeros."""
    cols = np.arange(1, d)
    rows = cols - 1
    vals = np.sqrt(cols).astype(complex)
    return sp.csr_matrix((vals, (rows, cols)), shape=(d, d))


def annihilation(dims: HilbertDims) -> Operator:
    """Full-space annihilation operator I_2 (x) a."""
    eye_atom = sp.identity(dims.atom_dim, dtype=complex, format="csr")
    return Operator(dims, _pruned(sp.kron(eye_atom, cavity_ladder(dims.fock_cutoff), format="csr")))


def atomic_operators(dims: HilbertDims) -> tuple[Operator, Operator, Operator]:
    """Atomic lowering, raising and inversion operators on the full space.

    Returns (sigma_minus, sigma_plus, sigma_z) with the atom basis ordered
    (|g>, |e>): sigma_plus maps g to e, sigma_z = diag(-1, +1) (x) I_d.
    """
    d = dims.fock_cutoff
    sm_atom = sp.csr_matrix((np.array([1.0 + 0j]), (np.array([0]), np.array([1]))), shape=(2, 2))
    sz_atom = sp.csr_matrix(np.diag([-1.0 + 0j, 1.0 + 0j]))
    eye_cav = sp.identity(d, dtype=complex, format="csr")
    sigma_minus = Operator(dims, _pruned(sp.kron(sm_atom, eye_cav, format="csr")))
    sigma_plus = sigma_minus.dag()
    sigma_z = Operator(dims, _pruned(sp.kron(sz_atom, eye_cav, format="csr")))
    return sigma_minus, sigma_plus, sigma_z


def identity_operator(dims: HilbertDims) -> Operator:
    return Operator(dims, sp.identity(dims.total, dtype=complex, format="csr"))


def number_operator(dims: HilbertDims) -> Operator:
    a = annihilation(dims)
    return a.dag() @ a


def fock_projector(dims: HilbertDims, k: int) -> Operator:
    """Projector I_2 (x) |k><k| onto the k-photon subspace (both atom states)."""
    if not 0 <= k < dims.fock_cutoff:
        raise ValueError(f"Fock index {k} outside cutoff {dims.fock_cutoff}")
    idx = np.array([dims.index(0, k), dims.index(1, k)])
    vals = np.ones(2, dtype=complex)
    return Operator(dims, sp.csr_matrix((vals, (idx, idx)), shape=(dims.total, dims.total)))


def op_power(op: Operator, k: int) -> Operator:
    """k-th matrix power with op**0 = identity; explicit zeros pruned."""
    if k < 0:
        raise ValueError("power must be non-negative")
    result = identity_operator(op.dims)
    for _ in range(k):
        result = result @ op
    return result


def expectation(rho: DensityMatrix, op: Operator) -> complex:
    """Tr(op . rho)."""
    _check_same_dims(rho.dims, op.dims)
    return complex(op.data.multiply(rho.data.T).sum())


def fock_probabilities(rho: DensityMatrix) -> np.ndarray:
    """Photon-number populations P_k = Tr[(I_2 (x) |k><k|) rho], length d."""
    d = rho.dims.fock_cutoff
    diag = np.real(np.diag(rho.data))
    return diag[:d] + diag[d:]


def basis_state(dims: HilbertDims, atom: int, n: int) -> np.ndarray:
    vec = np.zeros(dims.total, dtype=complex)
    vec[dims.index(atom, n)] = 1.0
    return vec


def pure_state(dims: HilbertDims, vec: np.ndarray) -> DensityMatrix:
    """Density matrix |psi><psi| of a (normalized) state vector."""
    v = np.asarray(vec, dtype=complex)
    if v.shape != (dims.total,):
        raise ValueError(f"state vector length {v.shape} != ({dims.total},)")
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ValueError("cannot normalize the zero vector")
    v = v / norm
    return DensityMatrix(dims, np.outer(v, v.conj()))


def ground_state(dims: HilbertDims) -> DensityMatrix:
    """|g, 0><g, 0|, the default initial state."""
    return pure_state(dims, basis_state(dims, 0, 0))
