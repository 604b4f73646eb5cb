"""Entropy and entanglement measures, all in base 2 (ebits).

Entanglement of a pure four-party state is the von Neumann entropy of its
reduced state on Alice's side (a, A); this is the quantity the capacity
optimizer maximizes the change of.
"""

import numpy as np

from .tensor import DensityMatrix, PureState, clamped_spectrum, partial_trace

#: Eigenvalues below this are treated as exactly zero in -λ log λ.
ZERO_EIGVAL = 1e-14


def entropy_of_spectrum(lam) -> float:
    """Shannon entropy (base 2) of a clamped eigenvalue vector."""
    lam = np.clip(np.asarray(lam, dtype=float), 0.0, 1.0)
    safe = np.where(lam > ZERO_EIGVAL, lam, 1.0)
    return float(-(lam * np.log2(safe)).sum())


def von_neumann(rho) -> float:
    """S(ρ) = −Σ λ_i log₂ λ_i over the clamped spectrum, with 0·log 0 = 0."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    tr = np.trace(m).real
    if abs(tr - 1.0) > 1e-8:
        raise ValueError(f"trace {tr!r} deviates from 1 beyond 1e-8")
    return entropy_of_spectrum(clamped_spectrum(m))


def entanglement(state: PureState) -> float:
    """Entanglement across the aA|Bb cut, in ebits."""
    return von_neumann(partial_trace(state, ("a", "A")))


def renyi2(rho) -> float:
    """Rényi-2 entropy −log₂ Tr ρ²; lower-bounds the von Neumann entropy."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    p = np.real(np.trace(m @ m))
    return float(-np.log2(p))


def binary_entropy(delta: float) -> float:
    """H₂(δ) = −δ log₂ δ − (1−δ) log₂(1−δ) on [0, 1]."""
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"binary entropy argument {delta!r} outside [0, 1]")
    return entropy_of_spectrum([delta, 1.0 - delta])


def conditional_entropy(state: PureState, x, y) -> float:
    """S(X|Y) = S(ρ_XY) − S(ρ_Y); may be negative for entangled states."""
    xs, ys = set(x), set(y)
    if xs & ys:
        raise ValueError(f"subsystems overlap: {sorted(xs & ys)}")
    joint = [label for label in ("a", "A", "B", "b") if label in xs | ys]
    s_xy = von_neumann(partial_trace(state, joint))
    s_y = von_neumann(partial_trace(state, sorted(ys, key="aABb".index)))
    return s_xy - s_y
