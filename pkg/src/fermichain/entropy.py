"""Entanglement entropy of the leading ``N`` sites from the correlation matrix.

Entropies are in bits.
"""

from __future__ import annotations

import csv
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.special import xlogy

from .correlation import CorrelationMatrix, t_matrix_finite, t_matrix_limit_unitary, truncate
from .errors import DegenerateGroundStateError, SpectralBoundError
from .model import ModelSpec
from .symbol import JumpSet, TrigSymbol, find_jumps

CLAMP_TOL = 1e-10
BOUND_TOL = 1e-8


def binary_entropy(x, nu):
    """``e(x, nu) = -(x+nu)/2 log2((x+nu)/2) - (x-nu)/2 log2((x-nu)/2)``."""
    x = np.asarray(x, dtype=float)
    nu = np.asarray(nu, dtype=float)
    if np.any(np.abs(nu) > x):
        raise ValueError("binary_entropy needs |nu| <= x")
    p, q = (x + nu) / 2, (x - nu) / 2
    out = -(xlogy(p, p) + xlogy(q, q)) / np.log(2)
    return out if out.ndim else float(out)


def mode_spectrum(T: CorrelationMatrix | np.ndarray) -> np.ndarray:
    """Eigenvalues of ``S = (T T^t)^{1/2}``, i.e. the singular values of ``T``."""
    if not isinstance(T, CorrelationMatrix):
        T = CorrelationMatrix(np.asarray(T, dtype=float))
    sigma = T.singular_values
    excess = sigma.max(initial=0.0) - 1.0
    if excess > BOUND_TOL:
        raise SpectralBoundError(f"mode spectrum exceeds 1 by {excess:.3e}")
    if excess > CLAMP_TOL:
        warnings.warn(f"clamping mode spectrum that exceeds 1 by {excess:.3e}", RuntimeWarning)
    return np.clip(sigma, 0.0, 1.0)


def entanglement_entropy(T: CorrelationMatrix | np.ndarray) -> float:
    """``E_P = sum_i e(1, sigma_i)``."""
    return float(np.sum(binary_entropy(1.0, mode_spectrum(T))))


def _gauss_panels(breaks: np.ndarray, n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    a, b = breaks[:-1, None], breaks[1:, None]
    nodes = 0.5 * (b - a) * x + 0.5 * (a + b)
    weights = 0.5 * (b - a) * w
    return nodes.ravel(), weights.ravel()


def _graded_breaks(lo: float, hi: float, centres: np.ndarray, h: float) -> np.ndarray:
    # panels of width h, 2h, 4h, ... away from every pole
    pts = [lo, hi]
    steps = h * 2.0 ** np.arange(0, 60)
    steps = steps[steps < (hi - lo)]
    for c in centres:
        pts.extend(c + steps)
        pts.extend(c - steps)
        pts.append(c)
    pts = np.unique(np.clip(pts, lo, hi))
    return pts


def entropy_via_contour(T: CorrelationMatrix | np.ndarray, epsilon: float = 1e-4, quadrature_nodes: int = 16) -> float:
    """Contour-integral form of the entropy, evaluated by quadrature.

    Integrates ``e(1+epsilon, z) d/dz ln det(z - S)`` around a stadium at
    distance ``delta = epsilon/2`` from ``[-1, 1]``, traversed anticlockwise.
    The straight edges are split into panels graded geometrically around
    every eigenvalue of ``S``; each panel and each end cap uses
    ``quadrature_nodes`` Gauss-Legendre points.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    sigma = mode_spectrum(T)
    x = 1.0 + epsilon
    delta = epsilon / 2

    def ee(z):
        p, q = (x + z) / 2, (x - z) / 2
        return -(p * np.log(p) + q * np.log(q)) / np.log(2)

    def dlogD(z):
        return np.sum(1.0 / (z[:, None] - sigma[None, :]), axis=1)

    total = 0j
    # straight edges: bottom left->right, top right->left
    # grade towards every pole and towards both ends, which sit next to the branch points
    breaks = _graded_breaks(-1.0, 1.0, np.concatenate([sigma, [-1.0, 1.0]]), delta)
    t, w = _gauss_panels(breaks, quadrature_nodes)
    for y, direction in ((-delta, 1.0), (delta, -1.0)):
        z = t + 1j * y
        total += direction * np.sum(w * ee(z) * dlogD(z))
    # end caps: right from -pi/2 to pi/2, left from pi/2 to 3pi/2
    for centre, (a0, a1) in ((1.0, (-np.pi / 2, np.pi / 2)), (-1.0, (np.pi / 2, 3 * np.pi / 2))):
        phi, wphi = _gauss_panels(np.linspace(a0, a1, 9), quadrature_nodes)
        z = centre + delta * np.exp(1j * phi)
        dz = 1j * delta * np.exp(1j * phi)
        total += np.sum(wphi * ee(z) * dlogD(z) * dz)
    result = total / (2j * np.pi)
    if not np.isfinite(result):
        raise ArithmeticError("contour quadrature produced a non-finite value")
    return float(result.real)


@dataclass
class EntropyCurve:
    N: np.ndarray
    E: np.ndarray
    error: np.ndarray
    cls: str = "Unitary"
    meta: dict = field(default_factory=dict)

    def to_csv(self, path: str | Path, header: dict | None = None) -> None:
        with open(path, "w", newline="") as fh:
            for key, value in (header or {}).items():
                fh.write(f"# {key}={value}\n")
            wr = csv.writer(fh)
            wr.writerow(["N", "E_P_bits", "convergence_error"])
            for n, e, err in zip(self.N, self.E, self.error):
                wr.writerow([int(n), repr(float(e)), repr(float(err))])

    @classmethod
    def from_csv(cls, path: str | Path) -> "EntropyCurve":
        with open(path) as fh:
            rows = [r for r in csv.reader(line for line in fh if not line.startswith("#"))]
        data = np.array([[float(v) for v in r] for r in rows[1:]])
        return cls(data[:, 0].astype(int), data[:, 1], data[:, 2])


def _finite_T(spec: ModelSpec, M: int) -> CorrelationMatrix:
    try:
        return t_matrix_finite(spec.with_M(M))
    except DegenerateGroundStateError:
        # commensurate lengths can put a mode exactly at zero energy; M + 2
        # keeps the parity of M, so a grid symmetric under theta -> pi - theta stays so
        return t_matrix_finite(spec.with_M(M + 2))


def entropy_curve(
    source: ModelSpec | TrigSymbol | JumpSet,
    N_list: Sequence[int],
    M_factor: int = 8,
    doublings: int = 2,
    threads: int = 1,
) -> EntropyCurve:
    """Entropy for each block size in ``N_list``.

    Symbols (and jump sets) use the limiting Toeplitz matrix directly.  Model
    specs are solved on chains of length ``M_factor * max(N_list)`` and its
    doublings (``doublings`` lengths in total); the reported entropy comes from
    the longest chain and ``convergence_error`` is the change over the last
    doubling.  The ``M`` stored on ``source`` is ignored.
    """
    N_list = [int(n) for n in N_list]
    if not N_list:
        raise ValueError("N_list is empty")
    if any(b <= a for a, b in zip(N_list, N_list[1:])) or N_list[0] < 1:
        raise ValueError("N_list must be strictly increasing positive integers")

    def run(jobs):
        if threads > 1:
            with ThreadPoolExecutor(threads) as pool:
                return list(pool.map(lambda f: f(), jobs))
        return [f() for f in jobs]

    if isinstance(source, (TrigSymbol, JumpSet)):
        jumps = find_jumps(source) if isinstance(source, TrigSymbol) else source
        full = t_matrix_limit_unitary(jumps, N_list[-1])
        E = run([lambda n=n: entanglement_entropy(truncate(full, n)) for n in N_list])
        return EntropyCurve(np.array(N_list), np.array(E), np.zeros(len(N_list)), "Unitary",
                            {"source": "symbol", "R": jumps.R, "theta": list(jumps.theta)})

    if M_factor < 1 or doublings < 1:
        raise ValueError("M_factor and doublings must be positive")
    M0 = M_factor * N_list[-1]
    ladder = []
    for i in range(doublings):
        cm = _finite_T(source, M0 * 2**i)
        E = run([lambda n=n: entanglement_entropy(truncate(cm, n)) for n in N_list])
        ladder.append((cm.M, np.array(E)))
    err = np.abs(ladder[-1][1] - ladder[-2][1]) if len(ladder) > 1 else np.full(len(N_list), np.nan)
    return EntropyCurve(np.array(N_list), ladder[-1][1], err, source.cls.value,
                        {"source": "finite", "M": [m for m, _ in ladder]})
