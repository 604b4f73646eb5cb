"""Dense complex linear algebra on a four-factor Hilbert space a ⊗ A ⊗ B ⊗ b.

Alice holds system A and ancilla a, Bob holds system B and ancilla b.  All
amplitude vectors in the package use the fixed index ordering (a, A, B, b)
with the last factor varying fastest, i.e. the C-order flattening of a
four-axis array of shape (d_a, d_A, d_B, d_b).  Gates act on the middle
(A, B) pair only.
"""

from dataclasses import dataclass, field

import numpy as np

#: Canonical subsystem labels, in index order.
SUBSYSTEMS = ("a", "A", "B", "b")

NORM_TOL = 1e-12
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGVAL_FLOOR = -1e-10


def kron(m, n):
    """Kronecker product of two matrices (block structure M_ij * N)."""
    return np.kron(np.asarray(m), np.asarray(n))


def is_unitary(m, tol: float = 1e-10) -> bool:
    """Whether ``m`` satisfies ‖M†M − I‖_F < tol."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0])) < tol


@dataclass(frozen=True)
class PureState:
    """Normalized pure state on a ⊗ A ⊗ B ⊗ b.

    Parameters
    ----------
    dims : tuple of int
        (d_a, d_A, d_B, d_b), all positive.
    amplitudes : ndarray
        Complex vector of length d_a*d_A*d_B*d_b, index ordering
        (a, A, B, b) with b fastest.
    """

    dims: tuple
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) != 4 or any(d < 1 for d in dims):
            raise ValueError(f"dims must be four positive integers, got {self.dims}")
        amp = np.ascontiguousarray(self.amplitudes, dtype=complex).reshape(-1)
        if amp.size != int(np.prod(dims)):
            raise ValueError(
                f"amplitude length {amp.size} does not match dims {dims}"
            )
        nrm = np.linalg.norm(amp)
        if abs(nrm - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalized: ‖ψ‖ = {nrm!r}")
        amp.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def tensor(self) -> np.ndarray:
        """The amplitudes as a four-axis array indexed (a, A, B, b)."""
        return self.amplitudes.reshape(self.dims)

    def conjugate(self) -> "PureState":
        """Entry-wise complex conjugate state."""
        return PureState(self.dims, self.amplitudes.conj())

    @staticmethod
    def from_tensor(arr) -> "PureState":
        arr = np.asarray(arr)
        return PureState(arr.shape, arr.reshape(-1))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix."""

    matrix: np.ndarray = field(repr=False)
    dim: int = 0

    def __post_init__(self):
        m = np.ascontiguousarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {m.shape}")
        if np.linalg.norm(m - m.conj().T) > HERMITICITY_TOL:
            raise ValueError("density matrix not Hermitian within 1e-12")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace {tr!r} differs from 1")
        if np.linalg.eigvalsh(m)[0] < EIGVAL_FLOOR:
            raise ValueError("density matrix has an eigenvalue below -1e-10")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dim", m.shape[0])

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


def _axes_of(keep) -> tuple:
    axes = []
    for label in keep:
        if label not in SUBSYSTEMS:
            raise ValueError(f"unknown subsystem {label!r}; use one of {SUBSYSTEMS}")
        axes.append(SUBSYSTEMS.index(label))
    if len(set(axes)) != len(axes):
        raise ValueError(f"duplicate subsystem in {tuple(keep)}")
    return tuple(sorted(axes))


def apply_gate(state: PureState, gate) -> PureState:
    """Apply a bipartite gate to the (A, B) factors: |ψ'⟩ = (I_a ⊗ U ⊗ I_b)|ψ⟩.

    The gate matrix acts on the fused (A, B) index in place; the full
    d_a*d_A*d_B*d_b square matrix is never formed.
    """
    da, dA, dB, db = state.dims
    if (dA, dB) != (gate.dimA, gate.dimB):
        raise ValueError(
            f"state system dims ({dA}, {dB}) do not match gate dims "
            f"({gate.dimA}, {gate.dimB})"
        )
    t = state.amplitudes.reshape(da, dA * dB, db)
    out = np.einsum("mn,anb->amb", gate.matrix, t)
    return PureState(state.dims, out.reshape(-1))


def partial_trace(state: PureState, keep) -> DensityMatrix:
    """Reduced density matrix on the kept subsystems.

    ``keep`` is a nonempty proper subset of {'a','A','B','b'}; the result is
    indexed by the kept factors in their (a, A, B, b) sub-ordering.
    """
    axes = _axes_of(keep)
    if len(axes) == 0:
        raise ValueError("keep-set must be nonempty")
    if len(axes) == 4:
        raise ValueError("keep-set must be a proper subset (use the projector directly)")
    traced = tuple(i for i in range(4) if i not in axes)
    t = state.tensor().transpose(axes + traced)
    dk = int(np.prod([state.dims[i] for i in axes]))
    mat = t.reshape(dk, -1)
    return DensityMatrix(mat @ mat.conj().T)


def _check_hermitian(m, tol):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if np.linalg.norm(m - m.conj().T) > tol:
        raise ValueError("matrix is not Hermitian within tolerance")
    return m


def hermitian_eigvals(rho, tol: float = 1e-10) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, in descending order.

    Accepts a DensityMatrix or a plain array; raises if the input is not
    Hermitian within ``tol``.
    """
    m = rho.matrix if isinstance(rho, DensityMatrix) else _check_hermitian(rho, tol)
    return np.linalg.eigvalsh(m)[::-1]


def hermitian_eig(rho, tol: float = 1e-10):
    """Eigenvalues (descending) and matching orthonormal eigenvector columns."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else _check_hermitian(rho, tol)
    vals, vecs = np.linalg.eigh(m)
    return vals[::-1], vecs[:, ::-1]


def clamped_spectrum(rho, tol: float = 1e-10) -> np.ndarray:
    """Descending eigenvalues clamped to [0, 1], for entropy evaluation."""
    return np.clip(hermitian_eigvals(rho, tol=tol), 0.0, 1.0)


def maximally_entangled(d: int) -> np.ndarray:
    """Amplitudes of (1/√d) Σ_j |jj⟩ on a d×d pair, first factor major."""
    phi = np.zeros(d * d, dtype=complex)
    phi[:: d + 1] = 1.0 / np.sqrt(d)
    return phi


def product_input(psi_aA, psi_Bb, dims) -> PureState:
    """Assemble |ψ⟩_aA ⊗ |φ⟩_Bb into a four-factor PureState."""
    da, dA, dB, db = dims
    left = np.asarray(psi_aA, dtype=complex).reshape(da * dA)
    right = np.asarray(psi_Bb, dtype=complex).reshape(dB * db)
    return PureState(dims, np.kron(left, right))
