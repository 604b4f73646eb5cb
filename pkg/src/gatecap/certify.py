"""Numerical certificate that the 2×3 trine gate cannot disentangle maximally.

If its inverse could create two full ebits, the input could be taken (by
the product-ansatz reduction) to have Alice maximally entangled and Bob in
a pure two-qutrit state described by three vectors τ₀, τ₁, τ₂ with
‖τ₀‖² + ‖τ₁‖² + ‖τ₂‖² = 1.  Maximal output entanglement then forces the
four Bob-side states Φ_ij to be orthonormal.  Chasing those constraints
pins the τ inner products completely, yet leaves ⟨Φ₀₀|Φ₁₁⟩ = 2/3 ≠ 0 — a
contradiction.  This module makes every link of that chain executable and
bounds the orthonormality defect from below by direct minimization.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .capacity import OptimizerConfig, _maximize_on_sphere
from .gates import OMEGA, build_u2x3_dagger_oracle, u2x3_inverse_vectors
from .streams import keyed_stream
from .tensor import PureState, apply_gate

NORM_TOL = 1e-12
CHECK_TOL = 1e-10


@dataclass(frozen=True)
class TauTriple:
    """Bob's three qutrit ancilla components τ₀, τ₁, τ₂.

    Their squared norms must sum to 1 (normalization of the joint input
    state); the individual vectors need not be normalized or orthogonal.
    """

    tau0: np.ndarray
    tau1: np.ndarray
    tau2: np.ndarray

    def __post_init__(self):
        vecs = []
        for name in ("tau0", "tau1", "tau2"):
            v = np.ascontiguousarray(getattr(self, name), dtype=complex).reshape(-1)
            if v.size != 3:
                raise ValueError(f"{name} must have dimension 3")
            v.setflags(write=False)
            object.__setattr__(self, name, v)
            vecs.append(v)
        total = sum(float(np.vdot(v, v).real) for v in vecs)
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"τ norms must sum to 1, got {total!r}")

    def stacked(self) -> np.ndarray:
        return np.stack([self.tau0, self.tau1, self.tau2])

    def as_vector(self) -> np.ndarray:
        return self.stacked().reshape(-1)

    @staticmethod
    def from_vector(vec) -> "TauTriple":
        t = np.asarray(vec, dtype=complex).reshape(3, 3)
        return TauTriple(t[0], t[1], t[2])

    @staticmethod
    def random(stream: np.random.Generator) -> "TauTriple":
        v = stream.standard_normal(9) + 1j * stream.standard_normal(9)
        return TauTriple.from_vector(v / np.linalg.norm(v))


def phi2_in(tau: TauTriple) -> PureState:
    """The candidate maximal-disentanglement input with Bob's side given by τ.

    (1/√2)(|00⟩ + |11⟩)_aA ⊗ (|0⟩_B|τ₀⟩_b + |1⟩|τ₁⟩ + |2⟩|τ₂⟩); it has no
    entanglement across the aA|Bb cut.
    """
    t = np.zeros((2, 2, 3, 3), dtype=complex)
    stacked = tau.stacked() / np.sqrt(2.0)
    t[0, 0] = stacked
    t[1, 1] = stacked
    return PureState((2, 2, 3, 3), t.reshape(-1))


def build_phi_states(tau: TauTriple) -> np.ndarray:
    """The four Bob-side output components Φ₀₀, Φ₀₁, Φ₁₀, Φ₁₁ (rows, dim 9).

    Built from the inverse expansion's (v_j, v'_j) qutrit vectors; indexing
    is B-major (b fastest).  Reassembling ½ Σ_ij |i⟩_a|j⟩_A|Φ_ij⟩ must
    reproduce the inverse gate acting on :func:`phi2_in` — that identity is
    the module's keystone correctness check and is enforced in the tests.
    """
    v, vp = u2x3_inverse_vectors()
    t0, t1, t2 = tau.tau0, tau.tau1, tau.tau2
    s = np.sqrt(3.0) / 2.0
    phi = np.empty((4, 9), dtype=complex)
    phi[0] = np.kron(v[0], t0) - 0.5 * np.kron(v[1], t1) - 0.5 * np.kron(v[2], t2)
    phi[1] = -s * np.kron(vp[1], t1) + s * np.kron(vp[2], t2)
    phi[2] = s * np.kron(v[1], t1) - s * np.kron(v[2], t2)
    phi[3] = np.kron(vp[0], t0) - 0.5 * np.kron(vp[1], t1) - 0.5 * np.kron(vp[2], t2)
    return np.sqrt(2.0) * phi


def reassemble_output(tau: TauTriple) -> PureState:
    """½ Σ_ij |i⟩_a |j⟩_A |Φ_ij⟩_Bb as a four-factor state."""
    phi = build_phi_states(tau)
    t = np.zeros((2, 2, 3, 3), dtype=complex)
    for i in (0, 1):
        for j in (0, 1):
            t[i, j] = 0.5 * phi[2 * i + j].reshape(3, 3)
    return PureState((2, 2, 3, 3), t.reshape(-1))


def reassembly_deviation(tau: TauTriple) -> float:
    """‖reassembled output − U†(Φ₂ⁱⁿ)‖ (two independent readings must agree)."""
    direct = apply_gate(phi2_in(tau), build_u2x3_dagger_oracle())
    return float(np.linalg.norm(reassemble_output(tau).amplitudes - direct.amplitudes))


def gram_matrix(tau: TauTriple) -> np.ndarray:
    """The 4×4 Gram matrix ⟨Φ_ij|Φ_km⟩ in the order (00, 01, 10, 11)."""
    phi = build_phi_states(tau)
    return phi.conj() @ phi.T


@dataclass(frozen=True)
class GramResidual:
    """Distance of the Φ family from orthonormality at a given τ."""

    residual: float
    tau: TauTriple
    gram: np.ndarray = field(repr=False)


def gram_residual(tau: TauTriple) -> GramResidual:
    """Frobenius distance ‖G(τ) − I₄‖_F; zero would certify two ebits."""
    g = gram_matrix(tau)
    return GramResidual(
        residual=float(np.linalg.norm(g - np.eye(4))), tau=tau, gram=g
    )


def forced_constraint_tau() -> TauTriple:
    """An explicit τ satisfying every constraint the orthonormality chain forces.

    τ₁ = |1⟩/√3, τ₂ = ω τ₁, and τ₀ is the unique (up to an irrelevant
    choice of the orthogonal direction) vector with ‖τ₀‖² = 1/3 and
    ⟨τ₀|τ₁⟩ = −ω/6, split as a component along τ₁ plus a real component
    along an orthogonal unit vector.
    """
    tau1 = np.array([0.0, 1.0, 0.0], dtype=complex) / np.sqrt(3.0)
    tau2 = OMEGA * tau1
    # <tau0|tau1> = conj(c)/sqrt(3) with tau0 = c|1> + d|0>  =>  c = -ω²/(2√3)
    c = -(OMEGA**2) / (2.0 * np.sqrt(3.0))
    d = np.sqrt(1.0 / 3.0 - abs(c) ** 2)
    tau0 = np.array([d, c, 0.0], dtype=complex)
    return TauTriple(tau0, tau1, tau2)


@dataclass(frozen=True)
class ForcedConstraintReport:
    """Numerical values of the constraint chain at the forced witness."""

    tau: TauTriple
    gram: np.ndarray = field(repr=False)
    norms_squared: tuple
    overlap_t1_t2: complex
    overlap_t0_t1: complex
    overlap_t0_t2: complex
    overlap_00_11: complex
    max_deviation: float


def forced_constraint_check(tol: float = CHECK_TOL) -> ForcedConstraintReport:
    """Reproduce the forced-constraint chain and its 2/3 contradiction.

    Asserts, each within ``tol``: the three squared norms equal 1/3,
    ⟨τ₁|τ₂⟩ = ω/3, ⟨τ₀|τ₁⟩ = −ω/6 and ⟨τ₀|τ₂⟩ = −ω²/6 (the latter is
    verified rather than assumed), the four Φ_ij are normalized, the three
    imposed orthogonality relations hold, and finally ⟨Φ₀₀|Φ₁₁⟩ = 2/3.
    Raises RuntimeError if any relation fails — that would indicate a
    construction bug, not a property of the gate.
    """
    tau = forced_constraint_tau()
    g = gram_matrix(tau)
    t0, t1, t2 = tau.tau0, tau.tau1, tau.tau2
    norms = tuple(float(np.vdot(t, t).real) for t in (t0, t1, t2))
    t1_t2 = complex(np.vdot(t1, t2))
    t0_t1 = complex(np.vdot(t0, t1))
    t0_t2 = complex(np.vdot(t0, t2))
    checks = [
        ("‖τ0‖²", norms[0], 1.0 / 3.0),
        ("‖τ1‖²", norms[1], 1.0 / 3.0),
        ("‖τ2‖²", norms[2], 1.0 / 3.0),
        ("⟨τ1|τ2⟩", t1_t2, OMEGA / 3.0),
        ("⟨τ0|τ1⟩", t0_t1, -OMEGA / 6.0),
        ("⟨τ0|τ2⟩", t0_t2, -(OMEGA**2) / 6.0),
        ("⟨Φ00|Φ00⟩", complex(g[0, 0]), 1.0),
        ("⟨Φ01|Φ01⟩", complex(g[1, 1]), 1.0),
        ("⟨Φ10|Φ10⟩", complex(g[2, 2]), 1.0),
        ("⟨Φ11|Φ11⟩", complex(g[3, 3]), 1.0),
        ("⟨Φ00|Φ10⟩", complex(g[0, 2]), 0.0),
        ("⟨Φ01|Φ10⟩", complex(g[1, 2]), 0.0),
        ("⟨Φ00|Φ01⟩", complex(g[0, 1]), 0.0),
        ("⟨Φ00|Φ11⟩", complex(g[0, 3]), 2.0 / 3.0),
    ]
    failures = [
        f"{name}: got {got}, expected {want}"
        for name, got, want in checks
        if abs(got - want) > tol
    ]
    if failures:
        raise RuntimeError("forced-constraint chain broken: " + "; ".join(failures))
    return ForcedConstraintReport(
        tau=tau,
        gram=g,
        norms_squared=norms,
        overlap_t1_t2=t1_t2,
        overlap_t0_t1=t0_t1,
        overlap_t0_t2=t0_t2,
        overlap_00_11=complex(g[0, 3]),
        max_deviation=max(abs(got - want) for _, got, want in checks),
    )


def _unchecked_triple(stacked) -> TauTriple:
    """A TauTriple without the normalization check, for internal linear probes."""
    t = TauTriple.__new__(TauTriple)
    rows = np.array(stacked, dtype=complex)
    object.__setattr__(t, "tau0", rows[0])
    object.__setattr__(t, "tau1", rows[1])
    object.__setattr__(t, "tau2", rows[2])
    return t


@lru_cache(maxsize=1)
def _quartic_tensor() -> np.ndarray:
    """A[p, q] = M_p† M_q where Φ_p = M_p τ as a linear map on stacked τ ∈ C⁹."""
    m = np.zeros((4, 9, 9), dtype=complex)
    basis = np.zeros((3, 3), dtype=complex)
    for j in range(3):
        for k in range(3):
            basis[j, k] = 1.0
            m[:, :, 3 * j + k] = build_phi_states(_unchecked_triple(basis))
            basis[j, k] = 0.0
    return np.einsum("pij,qik->pqjk", m.conj(), m)


def _residual_objective():
    """Batched (−r², gradient) closures over unit vectors τ ∈ C⁹."""
    a = _quartic_tensor()
    eye = np.eye(4)

    def value(t):
        g = np.einsum("rj,pqjk,rk->rpq", t.conj(), a, t) - eye
        return -np.sum(np.abs(g) ** 2, axis=(1, 2))

    def value_and_grad(t):
        g = np.einsum("rj,pqjk,rk->rpq", t.conj(), a, t) - eye
        val = -np.sum(np.abs(g) ** 2, axis=(1, 2))
        grad = np.einsum("rpq,pqjk,rk->rj", g.conj(), a, t)
        grad += np.einsum("rpq,qpjk,rk->rj", g, a, t)
        return val, -2.0 * grad

    return value, value_and_grad


def infeasibility_search(cfg: OptimizerConfig = None) -> GramResidual:
    """Minimize the orthonormality defect over all normalized τ triples.

    The theorem predicts a strictly positive floor; the returned residual
    is the smallest value found over ``cfg.restarts`` independent starts,
    together with the achieving τ.
    """
    cfg = cfg or OptimizerConfig()
    x0 = np.empty((cfg.restarts, 9), dtype=complex)
    for r in range(cfg.restarts):
        rng = keyed_stream(cfg.seed, "tau-init", r)
        x0[r] = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    x0 /= np.linalg.norm(x0, axis=1)[:, None]
    value, value_and_grad = _residual_objective()
    f, x, _, _ = _maximize_on_sphere(value, value_and_grad, x0, cfg)
    best = int(np.argmax(f))
    tau = TauTriple.from_vector(x[best] / np.linalg.norm(x[best]))
    return gram_residual(tau)
