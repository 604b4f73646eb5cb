"""Entangling and disentangling power by multi-start ascent on the state sphere.

The entangling power of a gate is the supremum of the entanglement gain over
ancilla-extended pure inputs; the disentangling power is the same quantity
for the inverse gate.  Both are estimated by projected gradient ascent on
the unit sphere of amplitude vectors, restarted from independent random
points.  Reported values are lower bounds on the true suprema for the given
ancilla dimensions.

Restarts are batched: all active restarts advance together through
vectorized eigendecompositions, and each restart draws its starting point
from its own counter-based stream, so results do not depend on how the work
is partitioned.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from .gates import BipartiteGate
from .streams import DEFAULT_SEED, keyed_stream
from .tensor import PureState
from .entropy import ZERO_EIGVAL, entanglement
from . import tensor

#: Eigenvalues are clamped to at least this inside the gradient's logarithm;
#: the true directional derivative at a zero eigenvalue is unbounded, and
#: this keeps steps finite without biasing interior optima.
GRAD_EIG_CLAMP = 1e-12

_STEP_FLOOR = 1e-18
_MAX_TRIALS = 200


@dataclass(frozen=True)
class OptimizerConfig:
    """Knobs of the multi-start projected-gradient ascent."""

    restarts: int = 64
    max_iters: int = 10000
    initial_step: float = 0.1
    shrink_factor: float = 0.5
    grad_tol: float = 1e-8
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.restarts < 1 or self.max_iters < 1:
            raise ValueError("restarts and max_iters must be positive")
        if self.initial_step <= 0 or self.grad_tol <= 0:
            raise ValueError("initial_step and grad_tol must be positive")
        if not 0.0 < self.shrink_factor < 1.0:
            raise ValueError("shrink_factor must lie in (0, 1)")


@dataclass(frozen=True)
class CapacityEstimate:
    """Best value found, the achieving input, and optimizer diagnostics.

    ``value`` equals ``max(per_restart_values)``; ``converged`` and
    ``iterations_used`` refer to the best restart.  The value is a lower
    bound on the true capacity for the chosen ancilla dimensions.
    """

    value: float
    best_input: PureState
    per_restart_values: np.ndarray = field(repr=False)
    converged: bool
    iterations_used: int


def _batched_entropy_parts(z, k, kb, with_grad):
    """Entropies (and log-density actions) for a batch of kept-side splits."""
    x = z.reshape(-1, k, kb)
    rho = x @ x.conj().transpose(0, 2, 1)
    if with_grad:
        lam, v = np.linalg.eigh(rho)
    else:
        lam = np.linalg.eigvalsh(rho)
    lam = np.clip(lam.real, 0.0, 1.0)
    safe = np.where(lam > ZERO_EIGVAL, lam, 1.0)
    s = -(lam * np.log2(safe)).sum(axis=1)
    if not with_grad:
        return s, None
    loglam = np.log2(np.maximum(lam, GRAD_EIG_CLAMP))
    logrho = (v * loglam[:, None, :]) @ v.conj().transpose(0, 2, 1)
    return s, (logrho @ x).reshape(z.shape)


def _make_objective(u, dims):
    """Batched value / value-and-gradient closures for ΔE under gate ``u``.

    States are rows of an (R, N) complex array, assumed unit norm.  The
    gradient is the Euclidean gradient (packed as a complex array g with
    df = Re⟨g, dx⟩ over the real and imaginary parts) of the map
    x ↦ ΔE(x/‖x‖), evaluated on the sphere.
    """
    da, dA, dB, db = dims
    k, kb = da * dA, dB * db
    u = np.ascontiguousarray(u, dtype=complex)
    uc = u.conj()

    def apply(x):
        t = x.reshape(-1, da, dA * dB, db)
        return np.einsum("mn,ranb->ramb", u, t).reshape(x.shape)

    def apply_dagger(x):
        t = x.reshape(-1, da, dA * dB, db)
        return np.einsum("nm,ranb->ramb", uc, t).reshape(x.shape)

    def value(x):
        s_out, _ = _batched_entropy_parts(apply(x), k, kb, with_grad=False)
        s_in, _ = _batched_entropy_parts(x, k, kb, with_grad=False)
        return s_out - s_in

    def value_and_grad(x):
        y = apply(x)
        s_out, ly = _batched_entropy_parts(y, k, kb, with_grad=True)
        s_in, lx = _batched_entropy_parts(x, k, kb, with_grad=True)
        de = s_out - s_in
        w = -apply_dagger(ly) + lx - de[:, None] * x
        return de, 2.0 * w

    return value, value_and_grad


def _maximize_on_sphere(value, value_and_grad, x0, cfg: OptimizerConfig):
    """Batched projected gradient ascent with backtracking/expanding line search.

    Each row of ``x0`` is an independent restart.  A row leaves the active
    set when its projected gradient norm drops below ``grad_tol``
    (converged) or when the line search cannot improve it any further at
    any step size (stalled at float resolution).

    Returns (values, states, converged flags, iterations used) per row.
    """
    x = np.array(x0, dtype=complex)
    n_rows = x.shape[0]
    f = value(x)
    eta = np.full(n_rows, cfg.initial_step)
    eta_cap = max(8.0, cfg.initial_step)
    converged = np.zeros(n_rows, dtype=bool)
    iters = np.zeros(n_rows, dtype=int)
    active = np.arange(n_rows)

    for it in range(cfg.max_iters):
        if active.size == 0:
            break
        xa = x[active]
        fa, g = value_and_grad(xa)
        g -= np.einsum("rn,rn->r", xa.conj(), g).real[:, None] * xa
        grad_norm = np.linalg.norm(g, axis=1)
        iters[active] = it + 1
        conv = grad_norm < cfg.grad_tol
        converged[active[conv]] = True
        active, xa, fa, g = active[~conv], xa[~conv], fa[~conv], g[~conv]
        if active.size == 0:
            break

        # Line search: shrink until the first improvement, then keep
        # doubling while it still improves; remember the best point seen.
        m = active.size
        cur = eta[active].copy()
        taken = np.zeros(m)
        phase = np.zeros(m, dtype=np.int8)  # 0 shrinking, 1 expanding, 2 done
        x_best = xa.copy()
        f_best = fa.copy()
        for _ in range(_MAX_TRIALS):
            todo = np.where(phase < 2)[0]
            if todo.size == 0:
                break
            cand = xa[todo] + cur[todo, None] * g[todo]
            cand /= np.linalg.norm(cand, axis=1)[:, None]
            fc = value(cand)
            better = fc > f_best[todo]
            hit = todo[better]
            x_best[hit] = cand[better]
            f_best[hit] = fc[better]
            taken[hit] = cur[hit]
            phase[hit] = 1
            cur[hit] *= 2.0
            miss = todo[~better]
            expanding = phase[miss] == 1
            phase[miss[expanding]] = 2
            shrinking = miss[~expanding]
            cur[shrinking] *= cfg.shrink_factor
            phase[shrinking[cur[shrinking] <= _STEP_FLOOR]] = 2

        improved = f_best > fa
        x[active] = np.where(improved[:, None], x_best, xa)
        f[active] = np.where(improved, f_best, fa)
        eta[active] = np.where(
            improved, np.minimum(taken / cfg.shrink_factor, eta_cap), eta[active]
        )
        active = active[improved]

    return f, x, converged, iters


def _random_starts(n, restarts, seed, purpose):
    x0 = np.empty((restarts, n), dtype=complex)
    for r in range(restarts):
        rng = keyed_stream(seed, purpose, r)
        x0[r] = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    x0 /= np.linalg.norm(x0, axis=1)[:, None]
    return x0


def _pack_estimate(f, x, converged, iters, dims):
    best = int(np.argmax(f))  # exact ties resolve to the lowest restart index
    amp = x[best] / np.linalg.norm(x[best])
    return CapacityEstimate(
        value=float(f[best]),
        best_input=PureState(dims, amp),
        per_restart_values=f.copy(),
        converged=bool(converged[best]),
        iterations_used=int(iters[best]),
    )


def delta_entanglement(gate: BipartiteGate, psi_in: PureState) -> float:
    """Entanglement change E(ψ_out) − E(ψ_in) produced by one gate application."""
    return entanglement(tensor.apply_gate(psi_in, gate)) - entanglement(psi_in)


def gradient_delta_entanglement(gate: BipartiteGate, psi_in: PureState) -> np.ndarray:
    """Euclidean gradient of x ↦ ΔE(x/‖x‖) at ψ_in.

    Returned as a real vector of length 2N: derivatives with respect to the
    real parts of the amplitudes, then the imaginary parts.  The optimizer
    projects this onto the sphere tangent space; callers comparing against
    central finite differences of the normalized map need no projection.
    """
    dims = psi_in.dims
    if (dims[1], dims[2]) != (gate.dimA, gate.dimB):
        raise ValueError("state and gate dimensions do not match")
    _, value_and_grad = _make_objective(gate.matrix, dims)
    _, g = value_and_grad(psi_in.amplitudes[None, :])
    return np.concatenate([g[0].real, g[0].imag])


def entangling_power(gate: BipartiteGate, anc=None, cfg: OptimizerConfig = None
                     ) -> CapacityEstimate:
    """Estimate the entangling power of ``gate`` with ancilla dims ``anc``.

    ``anc`` defaults to (dimA, dimB), which is provably sufficient for
    maximally entangling gates; for general gates the estimate is a lower
    bound both in the ancilla choice and in the optimization.
    """
    cfg = cfg or OptimizerConfig()
    da, db = anc if anc is not None else (gate.dimA, gate.dimB)
    if da < 1 or db < 1:
        raise ValueError("ancilla dimensions must be at least 1")
    dims = (int(da), gate.dimA, gate.dimB, int(db))
    n = int(np.prod(dims))
    x0 = _random_starts(n, cfg.restarts, cfg.seed, "capacity-init")
    value, value_and_grad = _make_objective(gate.matrix, dims)
    f, x, converged, iters = _maximize_on_sphere(value, value_and_grad, x0, cfg)
    return _pack_estimate(f, x, converged, iters, dims)


def disentangling_power(gate: BipartiteGate, anc=None, cfg: OptimizerConfig = None
                        ) -> CapacityEstimate:
    """Estimate the disentangling power: the entangling power of the inverse."""
    return entangling_power(gate.dagger(), anc=anc, cfg=cfg)


def entangling_power_product_ansatz(gate: BipartiteGate, cfg: OptimizerConfig = None
                                    ) -> CapacityEstimate:
    """Entangling power restricted to product inputs with Alice maximally entangled.

    Alice's side is frozen to the maximally entangled state on a×A with
    a = A; the search runs over Bob's pure state on B×b with b = B only.
    For a maximally entangling gate this restriction is lossless; in
    general it lower-bounds the full estimate.
    """
    cfg = cfg or OptimizerConfig()
    a, b = gate.dimA, gate.dimB
    dims = (a, a, b, b)
    phi = tensor.maximally_entangled(a)
    value, value_and_grad = _make_objective(gate.matrix, dims)

    def embed(psi):
        return np.einsum("p,rq->rpq", phi, psi).reshape(psi.shape[0], -1)

    def val(psi):
        return value(embed(psi))

    def val_grad(psi):
        f, g = value_and_grad(embed(psi))
        gp = np.einsum("p,rpq->rq", phi.conj(), g.reshape(psi.shape[0], a * a, b * b))
        return f, gp

    x0 = _random_starts(b * b, cfg.restarts, cfg.seed, "ansatz-init")
    f, psi, converged, iters = _maximize_on_sphere(val, val_grad, x0, cfg)
    best = int(np.argmax(f))
    amp = psi[best] / np.linalg.norm(psi[best])
    return CapacityEstimate(
        value=float(f[best]),
        best_input=tensor.product_input(phi, amp, dims),
        per_restart_values=f.copy(),
        converged=bool(converged[best]),
        iterations_used=int(iters[best]),
    )


def scaled(cfg: OptimizerConfig, **overrides) -> OptimizerConfig:
    """A copy of ``cfg`` with the given fields replaced."""
    return replace(cfg, **overrides)
