"""Ground-state correlation matrices and Majorana correlators.

The Majorana operators of site ``l`` are ``m_{2l} = i(c_l - c_l^+)`` and
``m_{2l+1} = c_l + c_l^+``.  In the ground state

    <m_j m_k> = delta_jk + i C_jk,

where ``C`` is assembled from 2x2 blocks ``[[0, T_lm], [-T_ml, 0]]`` and
``T`` is the orthogonal polar factor of ``AA + BB``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import DegenerateGroundStateError, ModelError
from .model import ModelSpec, SymmetryClass, build_A_matrix, build_B_matrix
from .symbol import JumpSet, TrigSymbol, find_jumps, sign_symbol_fourier


@dataclass
class CorrelationMatrix:
    """Real matrix ``T`` plus where it came from.

    ``source`` is ``"finite"`` (truncated polar factor of a chain of length
    ``M``) or ``"symbol"`` (Toeplitz matrix of the limiting sign symbol).
    """

    T: np.ndarray
    cls: SymmetryClass = SymmetryClass.UNITARY
    source: str = "finite"
    M: int | None = None
    meta: dict = field(default_factory=dict)

    @property
    def N(self) -> int:
        return self.T.shape[0]

    @cached_property
    def singular_values(self) -> np.ndarray:
        T = self.T
        if np.array_equal(T, T.T):
            return np.sort(np.abs(np.linalg.eigvalsh(T)))[::-1]
        return np.linalg.svd(T, compute_uv=False)


def polar_factor(X: np.ndarray, degeneracy_tol: float | None = None) -> np.ndarray:
    """Orthogonal ``Q`` with ``X = Q (X^T X)^{1/2}``.

    Symmetric inputs go through ``eigh`` (``Q`` is then the matrix sign of
    ``X``); everything else through the SVD.
    """
    X = np.asarray(X, dtype=float)
    scale = np.linalg.norm(X, 2) if X.size else 0.0
    tol = 1e-8 * scale if degeneracy_tol is None else degeneracy_tol
    if np.array_equal(X, X.T):
        w, V = np.linalg.eigh(X)
        smin = np.min(np.abs(w))
        if smin < tol or scale == 0.0:
            raise DegenerateGroundStateError(f"smallest |eigenvalue| {smin:.3e} below tolerance {tol:.3e}")
        return (V * np.sign(w)) @ V.T
    U, s, Vt = np.linalg.svd(X)
    if s[-1] < tol or scale == 0.0:
        raise DegenerateGroundStateError(f"smallest singular value {s[-1]:.3e} below tolerance {tol:.3e}")
    return U @ Vt


def coupling_matrix(spec: ModelSpec) -> np.ndarray:
    X = build_A_matrix(spec)
    if spec.cls is SymmetryClass.UNITARY and spec.gamma != 0.0:
        X = X + build_B_matrix(spec)
    return X


def eigenpair_check(spec: ModelSpec, tol: float | None = None) -> float:
    """Max residual of the mode equations linking ``phi_k`` and ``psi_k``.

    ``phi_k`` diagonalise ``(AA - BB)(AA + BB)`` with eigenvalue ``|Lambda_k|^2``,
    ``psi_k = (AA + BB) phi_k / |Lambda_k|``; the residuals of
    ``(AA + BB)(AA - BB) psi_k = |Lambda_k|^2 psi_k`` and
    ``(AA - BB) psi_k = |Lambda_k| phi_k`` are returned, together with the
    mismatch between ``sum_k psi_k phi_k^T`` and :func:`polar_factor`.
    """
    X = coupling_matrix(spec)
    Xt = X.T
    lam2, phi = np.linalg.eigh(Xt @ X)
    lam = np.sqrt(np.clip(lam2, 0.0, None))
    scale = np.linalg.norm(X, 2)
    tol = 1e-8 * scale if tol is None else tol
    if lam.min() < tol:
        raise DegenerateGroundStateError(f"|Lambda_k| = {lam.min():.3e} below tolerance")
    psi = X @ phi / lam
    r7 = np.abs(X @ (Xt @ psi) - psi * lam2).max()
    r8 = np.abs(Xt @ psi - phi * lam).max()
    T = psi @ phi.T
    rT = np.abs(T - polar_factor(X, tol)).max()
    return float(max(r7, r8, rT) / max(scale, 1.0))


def t_matrix_finite(spec: ModelSpec, degeneracy_tol: float | None = None) -> CorrelationMatrix:
    T = polar_factor(coupling_matrix(spec), degeneracy_tol)
    return CorrelationMatrix(T, spec.cls, "finite", spec.M)


def truncate(cm: CorrelationMatrix, N: int) -> CorrelationMatrix:
    """Leading ``N x N`` block."""
    if not 1 <= N <= cm.N:
        raise ValueError(f"N={N} outside 1..{cm.N}")
    return CorrelationMatrix(cm.T[:N, :N].copy(), cm.cls, cm.source, cm.M, dict(cm.meta))


def t_matrix_limit_unitary(sym: TrigSymbol | JumpSet, N: int, sign_at_0: int | None = None) -> CorrelationMatrix:
    """Toeplitz matrix ``(T_N)_jk = g_{j-k}`` of the limiting sign symbol."""
    if isinstance(sym, TrigSymbol):
        if not sym.is_real_even():
            raise ModelError("the symbol limit needs an isotropic (real, even) dispersion")
        sym = find_jumps(sym)
    g = sign_symbol_fourier(sym, np.arange(N), sign_at_0)
    T = scipy.linalg.toeplitz(g)
    return CorrelationMatrix(T, SymmetryClass.UNITARY, "symbol", None, {"R": sym.R, "theta": list(sym.theta)})


def _c_entry(T: np.ndarray, j: int, k: int) -> float:
    a, p = divmod(j, 2)
    b, q = divmod(k, 2)
    if p == q:
        return 0.0
    return T[a, b] if p == 0 else -T[b, a]


def two_point_correlator(T: np.ndarray | CorrelationMatrix, j: int, k: int) -> complex:
    """``<m_j m_k>`` for Majorana indices ``0 <= j, k < 2M``."""
    T = T.T if isinstance(T, CorrelationMatrix) else np.asarray(T)
    n = 2 * T.shape[0]
    if not (0 <= j < n and 0 <= k < n):
        raise IndexError(f"Majorana index out of range 0..{n - 1}")
    return complex(float(j == k), _c_entry(T, j, k))


def pfaffian(A: np.ndarray) -> complex | float:
    """Pfaffian of an antisymmetric matrix by pivoted Parlett-Reid elimination."""
    A = np.array(A, dtype=complex if np.iscomplexobj(A) else float)
    n = A.shape[0]
    if n % 2:
        return 0.0
    pf = 1.0
    for k in range(0, n - 1, 2):
        # pivot the largest entry of column k below the diagonal into row k+1
        p = k + 1 + int(np.argmax(np.abs(A[k + 1:, k])))
        if p != k + 1:
            A[[k + 1, p], :] = A[[p, k + 1], :]
            A[:, [k + 1, p]] = A[:, [p, k + 1]]
            pf = -pf
        if A[k + 1, k] == 0:
            return 0.0 * pf
        pf *= A[k, k + 1]
        if k + 2 < n:
            tau = A[k, k + 2:] / A[k, k + 1]
            # eliminate using the pair (k, k+1)
            A[k + 2:, k + 2:] += np.outer(A[k + 1, k + 2:], tau) - np.outer(tau, A[k + 1, k + 2:])
    return pf


def wick_expectation(T: np.ndarray | CorrelationMatrix, indices: Sequence[int]) -> complex:
    """``<m_{i1} m_{i2} ... m_{in}>`` by Wick's theorem, as a Pfaffian.

    The result is real for products of ``4k`` operators and imaginary for
    ``4k + 2``, so it is returned as a complex number.
    """
    T = T.T if isinstance(T, CorrelationMatrix) else np.asarray(T)
    idx = [int(i) for i in indices]
    if len(set(idx)) != len(idx):
        raise ValueError("Majorana indices must be distinct")
    n = 2 * T.shape[0]
    if any(not 0 <= i < n for i in idx):
        raise IndexError(f"Majorana index out of range 0..{n - 1}")
    if len(idx) % 2:
        return 0j
    G = np.zeros((len(idx), len(idx)), dtype=complex)
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            G[a, b] = 1j * _c_entry(T, idx[a], idx[b])
            G[b, a] = -G[a, b]
    return complex(pfaffian(G))


def dump_t_matrix(cm: CorrelationMatrix, path: str | Path) -> tuple[Path, Path]:
    """Write ``T`` as row-major little-endian float64 plus a JSON header."""
    path = Path(path)
    bin_path, json_path = path.with_suffix(".bin"), path.with_suffix(".json")
    np.ascontiguousarray(cm.T, dtype="<f8").tofile(bin_path)
    json_path.write_text(json.dumps({"N": cm.N, "class": cm.cls.value, "source": cm.source, "M": cm.M}))
    return bin_path, json_path


def load_t_matrix(path: str | Path) -> CorrelationMatrix:
    path = Path(path)
    head = json.loads(path.with_suffix(".json").read_text())
    N = int(head["N"])
    T = np.fromfile(path.with_suffix(".bin"), dtype="<f8").reshape(N, N)
    return CorrelationMatrix(T, SymmetryClass(head["class"]), head["source"], head["M"])
