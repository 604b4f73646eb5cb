"""Haar-random gate statistics: mean output purity, capacity scatter, twirling.

The canonical probe input is the tensor product of two maximally entangled
pairs, Alice's system with her ancilla and Bob's with his.  For a
Haar-random gate the expected output purity on Alice's side has the exact
closed form (A² + B² − 2)/(A²B² − 1), which lower-bounds the expected
output entanglement through the Rényi-2 entropy.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .capacity import OptimizerConfig, disentangling_power, entangling_power
from .entropy import entropy_of_spectrum
from .gates import BipartiteGate, swap_matrix
from .streams import derive_seed, keyed_stream
from .tensor import DensityMatrix, PureState, maximally_entangled, product_input

#: Desk-scale defaults for the optimizers inside the scatter experiment.
SCATTER_OPTIMIZER = OptimizerConfig(restarts=16, max_iters=500)


def haar_unitary(d: int, stream: np.random.Generator) -> np.ndarray:
    """Draw a d×d unitary from the Haar measure.

    A complex Ginibre matrix is orthonormalized by QR and the diagonal of R
    is rephased to unit modulus, which removes the QR sign convention and
    makes the distribution exactly Haar.
    """
    z = (stream.standard_normal((d, d)) + 1j * stream.standard_normal((d, d)))
    q, r = np.linalg.qr(z / np.sqrt(2.0))
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def haar_gate(dim_a: int, dim_b: int, stream: np.random.Generator) -> BipartiteGate:
    """A Haar-random bipartite gate on A ⊗ B."""
    return BipartiteGate(dim_a, dim_b, haar_unitary(dim_a * dim_b, stream))


def canonical_input(dim_a: int, dim_b: int) -> PureState:
    """|Φ_A⟩_aA ⊗ |Φ_B⟩_Bb, both factors maximally entangled."""
    return product_input(
        maximally_entangled(dim_a),
        maximally_entangled(dim_b),
        (dim_a, dim_a, dim_b, dim_b),
    )


def _output_gram(gate: BipartiteGate) -> np.ndarray:
    """ρ_aA of the canonical input after the gate, as an A²×A² matrix.

    For the canonical input the output amplitudes are the gate matrix
    itself up to index reshuffling: y[a, m_A, m_B, b] = U[(m_A m_B), (a b)]
    / √(AB), so the reduced state is a Gram matrix of gate columns.
    """
    a, b = gate.dimA, gate.dimB
    u4 = gate.matrix.reshape(a, b, a, b)
    x = u4.transpose(2, 0, 1, 3).reshape(a * a, b * b) / np.sqrt(a * b)
    return x @ x.conj().T


def purity_after_gate(gate: BipartiteGate) -> float:
    """Tr(ρ_aA²) of the canonical input after the gate."""
    g = _output_gram(gate)
    return float(np.real(np.trace(g @ g)))


def output_entanglement(gate: BipartiteGate) -> float:
    """Entanglement E(Φ_out) of the canonical input after the gate, in ebits."""
    return entropy_of_spectrum(np.linalg.eigvalsh(_output_gram(gate)))


@dataclass(frozen=True)
class MomentReport:
    """Empirical mean output purity against the exact Haar prediction."""

    dims: tuple
    samples: int
    mean_purity: float
    predicted_purity: float
    std_error: float

    @property
    def z_score(self) -> float:
        return (self.mean_purity - self.predicted_purity) / self.std_error


def predicted_mean_purity(dim_a: int, dim_b: int) -> float:
    """The exact Haar average of Tr(ρ_aA²): (A² + B² − 2)/(A²B² − 1)."""
    a2, b2 = dim_a * dim_a, dim_b * dim_b
    return (a2 + b2 - 2) / (a2 * b2 - 1)


def mean_purity_experiment(dim_a: int, dim_b: int, samples: int, seed: int
                           ) -> MomentReport:
    """Monte Carlo estimate of the mean output purity over Haar gates."""
    if samples < 100:
        raise ValueError("need at least 100 samples for a meaningful std error")
    purpose = f"purity-{dim_a}x{dim_b}"
    total = 0.0
    total_sq = 0.0
    for i in range(samples):
        u = haar_unitary(dim_a * dim_b, keyed_stream(seed, purpose, i))
        p = purity_after_gate(BipartiteGate(dim_a, dim_b, u))
        total += p
        total_sq += p * p
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    return MomentReport(
        dims=(dim_a, dim_b),
        samples=samples,
        mean_purity=mean,
        predicted_purity=predicted_mean_purity(dim_a, dim_b),
        std_error=math.sqrt(var / samples),
    )


def expected_entanglement_bound(dim_a: int, dim_b: int) -> float:
    """Lower bound on the Haar-expected output entanglement, in ebits.

    Requires A ≤ B; the bound is 2 log₂ A − (1/ln 2)(A²/B²) and follows
    from the exact mean purity through the Rényi-2 entropy and convexity.
    """
    if dim_a > dim_b:
        raise ValueError("orient dimensions so that A <= B")
    return 2.0 * math.log2(dim_a) - (dim_a * dim_a) / (dim_b * dim_b) / math.log(2.0)


@dataclass(frozen=True)
class ScatterRecord:
    """Capacity estimates of a single sampled gate."""

    index: int
    e_up: float
    e_down: float

    @property
    def gap(self) -> float:
        return self.e_up - self.e_down


def _scatter_one(dim_a, dim_b, seed, cfg, index) -> ScatterRecord:
    gate = haar_gate(dim_a, dim_b, keyed_stream(seed, "scatter-gate", index))
    up = entangling_power(
        gate, cfg=replace(cfg, seed=derive_seed(seed, "scatter-up", index))
    )
    down = disentangling_power(
        gate, cfg=replace(cfg, seed=derive_seed(seed, "scatter-down", index))
    )
    return ScatterRecord(index=index, e_up=up.value, e_down=down.value)


def _scatter_chunk(args):
    dim_a, dim_b, seed, cfg, start, stop = args
    return [_scatter_one(dim_a, dim_b, seed, cfg, i) for i in range(start, stop)]


def scatter_experiment(dim_a: int, dim_b: int, n_gates: int,
                       cfg: OptimizerConfig = None, seed: int = 0,
                       workers: int = 1) -> list:
    """Estimate both capacities for ``n_gates`` Haar gates with anc = (A, B).

    Every gate and every optimizer restart draws from a stream keyed by
    (seed, purpose, index), so the records are identical for any number of
    workers.  Records are returned in index order.
    """
    cfg = cfg or SCATTER_OPTIMIZER
    if workers <= 1 or n_gates <= 1:
        return _scatter_chunk((dim_a, dim_b, seed, cfg, 0, n_gates))
    chunk = max(1, min(16, (n_gates + workers - 1) // workers))
    tasks = [
        (dim_a, dim_b, seed, cfg, start, min(start + chunk, n_gates))
        for start in range(0, n_gates, chunk)
    ]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_scatter_chunk, tasks))
    return [record for part in parts for record in part]


def max_gap(records) -> float:
    """Largest observed e_up − e_down in a scatter run."""
    return max(r.e_up - r.e_down for r in records)


def twirl(rho) -> DensityMatrix:
    """Average of (U ⊗ U) ρ (U ⊗ U)† over Haar U, in closed form.

    The input lives on two copies of a d-dimensional system (matrix size
    d² × d²); the result is the Werner projection
    σ Tr(ρ Π_sym) + α Tr(ρ Π_anti) with σ, α the normalized symmetric and
    antisymmetric states.
    """
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    d2 = m.shape[0]
    d = math.isqrt(d2)
    if d * d != d2 or m.shape != (d2, d2):
        raise ValueError(f"matrix size {m.shape} is not a two-copy square d²×d²")
    f = swap_matrix(d)
    eye = np.eye(d2)
    pi_sym = (eye + f) / 2.0
    pi_anti = (eye - f) / 2.0
    sigma = 2.0 * pi_sym / (d * (d + 1))
    alpha = 2.0 * pi_anti / (d * (d - 1))
    out = (sigma * np.trace(m @ pi_sym).real
           + alpha * np.trace(m @ pi_anti).real)
    return DensityMatrix(out)
