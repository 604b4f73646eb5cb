"""Explicit bipartite gate constructions.

The centerpiece is a 2×3 gate built from two orthogonal triples of "trine"
qubit states and cube-root-of-unity phases.  It entangles maximally (two
ebits) but provably cannot disentangle maximally; see the certify module
for the numerical certificate.  An independent construction of its inverse
serves as a cross-check oracle.
"""

from dataclasses import dataclass, field

import numpy as np

from .tensor import PureState, product_input

#: Cube root of unity e^{2πi/3}, stored as exact cos/sin values.
OMEGA = complex(-0.5, np.sqrt(3.0) / 2.0)

UNITARITY_TOL = 1e-10


@dataclass(frozen=True)
class BipartiteGate:
    """Unitary on A ⊗ B with its dimension split.

    The matrix is indexed A-major (B fastest): basis order
    |00⟩, |01⟩, ..., |0,B-1⟩, |10⟩, ...  Construction fails if the matrix
    is not unitary within ‖U†U − I‖_F < 1e-10.
    """

    dimA: int
    dimB: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.ascontiguousarray(self.matrix, dtype=complex)
        d = self.dimA * self.dimB
        if m.shape != (d, d):
            raise ValueError(f"matrix shape {m.shape} does not match dims "
                             f"({self.dimA}, {self.dimB})")
        err = np.linalg.norm(m.conj().T @ m - np.eye(d))
        if err > UNITARITY_TOL:
            raise ValueError(f"matrix is not unitary: ‖U†U − I‖_F = {err:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.dimA * self.dimB

    def dagger(self) -> "BipartiteGate":
        return BipartiteGate(self.dimA, self.dimB, self.matrix.conj().T)


def trine_states():
    """Two orthogonal trine triples (α, β, γ, α⊥, β⊥, γ⊥) in dimension 2.

    Each triple consists of three real unit vectors at mutual angle 120° on
    a great circle of the Bloch sphere; each ⊥ partner is orthogonal to its
    mate.
    """
    s = np.sqrt(3.0) / 2.0
    alpha = np.array([1.0, 0.0], dtype=complex)
    beta = np.array([-0.5, s], dtype=complex)
    gamma = np.array([-0.5, -s], dtype=complex)
    alpha_perp = np.array([0.0, 1.0], dtype=complex)
    beta_perp = np.array([-s, -0.5], dtype=complex)
    gamma_perp = np.array([s, -0.5], dtype=complex)
    return alpha, beta, gamma, alpha_perp, beta_perp, gamma_perp


def build_u2x3() -> BipartiteGate:
    """The trine-based 2×3 gate: maximally entangling, not maximally disentangling.

    Column (ij) holds c_ij |w_ij⟩ in the A-major ordering, where
    w_0j = (|α,0⟩ + ω^j |β,1⟩ + ω^{2j} |γ,2⟩)/√3 and w_1j uses the
    perpendicular trine; c_00 = c_12 = −i and all other coefficients are 1.
    """
    alpha, beta, gamma, alpha_p, beta_p, gamma_p = trine_states()
    triples = ((alpha, beta, gamma), (alpha_p, beta_p, gamma_p))
    eb = np.eye(3, dtype=complex)
    u = np.zeros((6, 6), dtype=complex)
    for i in (0, 1):
        t0, t1, t2 = triples[i]
        for j in range(3):
            w = (np.kron(t0, eb[0]) + OMEGA**j * np.kron(t1, eb[1])
                 + OMEGA ** (2 * j) * np.kron(t2, eb[2])) / np.sqrt(3.0)
            coeff = -1j if (i, j) in ((0, 0), (1, 2)) else 1.0
            u[:, 3 * i + j] = coeff * w
    return BipartiteGate(2, 3, u)


def u2x3_inverse_vectors():
    """The qutrit vectors (v_j, v'_j) of the inverse expansion, j = 0, 1, 2.

    v_j = (i|0⟩ + ω^{−j}|1⟩ + ω^{−2j}|2⟩)/√3 and
    v'_j = (|0⟩ + ω^{−j}|1⟩ + i ω^{−2j}|2⟩)/√3; each has unit norm.
    """
    v = np.empty((3, 3), dtype=complex)
    vp = np.empty((3, 3), dtype=complex)
    for j in range(3):
        v[j] = np.array([1j, OMEGA ** (-j), OMEGA ** (-2 * j)]) / np.sqrt(3.0)
        vp[j] = np.array([1.0, OMEGA ** (-j), 1j * OMEGA ** (-2 * j)]) / np.sqrt(3.0)
    return v, vp


def build_u2x3_dagger_oracle() -> BipartiteGate:
    """The inverse of the 2×3 gate, built independently from its six-term expansion.

    This does not take a conjugate transpose anywhere: it assembles the
    inverse directly from the (v_j, v'_j) vectors, so it can serve as an
    oracle against ``build_u2x3().dagger()``.
    """
    v, vp = u2x3_inverse_vectors()
    e2 = np.eye(2, dtype=complex)
    e3 = np.eye(3, dtype=complex)
    s = np.sqrt(3.0) / 2.0

    def ket(avec, bvec):
        return np.kron(avec, bvec)

    terms = [
        (ket(e2[0], v[0]), ket(e2[0], e3[0])),
        (-0.5 * ket(e2[0], v[1]) - s * ket(e2[1], vp[1]), ket(e2[0], e3[1])),
        (-0.5 * ket(e2[0], v[2]) + s * ket(e2[1], vp[2]), ket(e2[0], e3[2])),
        (ket(e2[1], vp[0]), ket(e2[1], e3[0])),
        (s * ket(e2[0], v[1]) - 0.5 * ket(e2[1], vp[1]), ket(e2[1], e3[1])),
        (-s * ket(e2[0], v[2]) - 0.5 * ket(e2[1], vp[2]), ket(e2[1], e3[2])),
    ]
    u = np.zeros((6, 6), dtype=complex)
    for out_vec, in_vec in terms:
        u += np.outer(out_vec, in_vec.conj())
    return BipartiteGate(2, 3, u)


@dataclass(frozen=True)
class TwoQubitCanonical:
    """Interaction angles (radians) of the two-qubit canonical form."""

    alpha: float
    beta: float
    gamma: float


#: Columns: the Bell states Φ+, Φ−, Ψ+, Ψ− (the shared eigenbasis of the
#: three commuting generators σ_j ⊗ σ_j).
BELL_BASIS = np.array(
    [
        [1, 1, 0, 0],
        [0, 0, 1, 1],
        [0, 0, 1, -1],
        [1, -1, 0, 0],
    ],
    dtype=complex,
) / np.sqrt(2.0)


def canonical_phases(p: TwoQubitCanonical) -> np.ndarray:
    """Eigenphases of the canonical gate on (Φ+, Φ−, Ψ+, Ψ−).

    The σ_j ⊗ σ_j generators have eigenvalue signs (+,−,+), (−,+,+),
    (+,+,−), (−,−,−) on the Bell basis, so the phases are the four
    combinations ±α ± β ± γ with an odd number of minus signs.
    """
    a, b, g = p.alpha, p.beta, p.gamma
    return np.array([a - b + g, -a + b + g, a + b - g, -a - b - g])


def canonical_two_qubit(p: TwoQubitCanonical) -> BipartiteGate:
    """exp(i α σx⊗σx + i β σy⊗σy + i γ σz⊗σz) by spectral synthesis.

    The three generators commute, so the gate is diagonal in the Bell basis
    with phases from :func:`canonical_phases`; no matrix exponential is
    needed.
    """
    phases = np.exp(1j * canonical_phases(p))
    u = (BELL_BASIS * phases) @ BELL_BASIS.conj().T
    return BipartiteGate(2, 2, u)


def swap_gate(d: int) -> BipartiteGate:
    """The swap F|ij⟩ = |ji⟩ on two d-dimensional systems."""
    f = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            f[j * d + i, i * d + j] = 1.0
    return BipartiteGate(d, d, f)


def swap_matrix(d: int) -> np.ndarray:
    """The swap operator on C^d ⊗ C^d as a plain matrix."""
    return swap_gate(d).matrix


def phi1_in() -> PureState:
    """The two-ebit witness input ½(|00⟩+|11⟩)_aA ⊗ (|00⟩+|22⟩)_Bb.

    It is a product across the aA|Bb cut (zero entanglement); the 2×3 trine
    gate maps it to a state with two ebits.
    """
    left = np.zeros(4, dtype=complex)
    left[0] = left[3] = 1.0 / np.sqrt(2.0)
    right = np.zeros(9, dtype=complex)
    right[0] = right[8] = 1.0 / np.sqrt(2.0)
    return product_input(left, right, (2, 2, 3, 3))
