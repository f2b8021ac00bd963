"""Brute-force many-body reference for small chains (M <= 12).

Basis index bit ``j`` is the occupation ``n_j`` of mode ``j``.  The fermions
are the Jordan-Wigner operators ``c_l = (prod_{j<l} Z_j) S^-_l`` with
``Z_j = 2 n_j - 1``, so the Majorana strings ``(prod_{j<l} Z_j) X_l`` and
``(prod_{j<l} Z_j) Y_l`` are ``c_l + c_l^+`` and ``i (c_l - c_l^+)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .errors import DegenerateGroundStateError
from .model import ModelSpec, SymmetryClass, build_A_matrix, build_B_matrix

MAX_SITES = 12


@dataclass
class FockState:
    amplitudes: np.ndarray
    M: int

    def __post_init__(self):
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state norm {norm} is not 1")


def _site_op(op, j: int, M: int, string: bool = False):
    # kron order puts mode M-1 first so that bit j of the index is mode j
    z = sp.diags([-1.0, 1.0])  # 2n - 1 for n = 0, 1
    eye = sp.identity(2, format="csr")
    factors = []
    for site in reversed(range(M)):
        if site == j:
            factors.append(op)
        elif string and site < j:
            factors.append(z)
        else:
            factors.append(eye)
    return reduce(lambda a, b: sp.kron(a, b, format="csr"), factors)


def annihilators(M: int) -> list[sp.csr_matrix]:
    lower = sp.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))  # |1> -> |0>
    return [_site_op(lower, j, M, string=True) for j in range(M)]


def majoranas(M: int) -> list[sp.csr_matrix]:
    """``[m_0, ..., m_{2M-1}]`` with ``m_{2l} = i(c_l - c_l^+)``, ``m_{2l+1} = c_l + c_l^+``."""
    out = []
    for c in annihilators(M):
        out.append((1j * (c - c.T)).tocsr())
        out.append((c + c.T).tocsr())
    return out


def build_hamiltonian_dense(spec: ModelSpec) -> np.ndarray:
    """``sum c^+ AA c + 1/2 sum (c^+ BB c^+ - c BB c)`` as a dense matrix."""
    M = spec.M
    if M > MAX_SITES:
        raise ValueError(f"dense oracle limited to M <= {MAX_SITES}")
    A = build_A_matrix(spec)
    B = build_B_matrix(spec) if spec.cls is SymmetryClass.UNITARY else np.zeros((M, M))
    c = annihilators(M)
    cd = [x.T.tocsr() for x in c]
    H = sp.csr_matrix((2**M, 2**M))
    for j in range(M):
        for k in range(M):
            if A[j, k]:
                H = H + A[j, k] * (cd[j] @ c[k])
            if B[j, k]:
                H = H + 0.5 * B[j, k] * (cd[j] @ cd[k] - c[j] @ c[k])
    return H.toarray()


def xx_spin_hamiltonian(alpha: float, M: int) -> np.ndarray:
    """Periodic Pauli form ``-alpha/2 sum (X_j X_{j+1} + Y_j Y_{j+1}) - sum Z_j``."""
    if M > MAX_SITES:
        raise ValueError(f"dense oracle limited to M <= {MAX_SITES}")
    X = sp.csr_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    Y = sp.csr_matrix(np.array([[0.0, 1j], [-1j, 0.0]]))  # basis order (n=0, n=1) = (down, up)
    Z = sp.diags([-1.0, 1.0])
    H = sp.csr_matrix((2**M, 2**M), dtype=complex)
    for j in range(M):
        k = (j + 1) % M
        H = H - alpha / 2 * (_site_op(X, j, M) @ _site_op(X, k, M) + _site_op(Y, j, M) @ _site_op(Y, k, M))
        H = H - _site_op(Z, j, M)
    return H.toarray()


def ground_state(H: np.ndarray, gap_tol: float | None = None) -> tuple[FockState, float]:
    """Lowest eigenvector and the gap above it."""
    w, V = np.linalg.eigh(H)
    scale = max(np.abs(w).max(), 1.0)
    tol = 1e-8 * scale if gap_tol is None else gap_tol
    gap = float(w[1] - w[0]) if len(w) > 1 else np.inf
    if gap < tol:
        raise DegenerateGroundStateError(f"ground-state gap {gap:.3e} below {tol:.3e}")
    M = int(np.log2(H.shape[0]))
    return FockState(V[:, 0], M), gap


def reduced_density_matrix(state: FockState, N: int) -> np.ndarray:
    """Reduced state of modes ``0..N-1``."""
    if not 1 <= N < state.M:
        raise ValueError(f"N={N} outside 1..{state.M - 1}")
    psi = state.amplitudes.reshape(2 ** (state.M - N), 2**N)
    return psi.T @ psi.conj()


def reduced_density_entropy(state: FockState, N: int) -> float:
    """Von Neumann entropy in bits of the leading ``N`` modes."""
    if not 1 <= N < state.M:
        raise ValueError(f"N={N} outside 1..{state.M - 1}")
    s = np.linalg.svd(state.amplitudes.reshape(2 ** (state.M - N), 2**N), compute_uv=False) ** 2
    s = s[s > 0]
    return float(-np.sum(s * np.log2(s)))


def m_correlator(state: FockState, indices: Sequence[int], ops: list | None = None) -> complex:
    """``<psi| m_{i1} m_{i2} ... m_{in} |psi>``."""
    ops = majoranas(state.M) if ops is None else ops
    v = state.amplitudes.astype(complex)
    for i in reversed(indices):
        if not 0 <= i < len(ops):
            raise IndexError(f"Majorana index {i} out of range 0..{len(ops) - 1}")
        v = ops[i] @ v
    return complex(np.vdot(state.amplitudes, v))
