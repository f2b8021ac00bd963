"""Monte Carlo check of the Heine-Szego identity over Haar-random U(N).

Randomness comes from numpy's counter-based ``Philox`` bit generator.  The
sample budget is cut into fixed-size chunks, chunk ``i`` drawing from the
``i``-th child of ``SeedSequence(seed)``, so results do not depend on the
number of worker threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np
import scipy.linalg

CHUNK = 10_000


def make_stream(seed: int, index: int = 0) -> np.random.Generator:
    child = np.random.SeedSequence(seed).spawn(index + 1)[index]
    return np.random.Generator(np.random.Philox(child))


def haar_unitary_sample(N: int, stream: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Haar-distributed ``N x N`` unitary (or a stack of ``size`` of them).

    QR of a complex Ginibre matrix, with the phases of ``diag(R)`` moved into
    ``Q`` so the distribution is exactly Haar.
    """
    if N < 1:
        raise ValueError("N must be positive")
    shape = (N, N) if size is None else (size, N, N)
    Z = (stream.standard_normal(shape) + 1j * stream.standard_normal(shape)) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R, axis1=-2, axis2=-1)
    return Q * (d / np.abs(d))[..., None, :]


def eigenphases(U: np.ndarray) -> np.ndarray:
    """Eigenphases in ``[0, 2 pi)``."""
    return np.mod(np.angle(np.linalg.eigvals(U)), 2 * np.pi)


@dataclass
class MonteCarloResult:
    mean: complex
    stderr: float
    samples: int


def _chunk_sums(g, N, n, seed, index):
    stream = make_stream(seed, index)
    theta = eigenphases(haar_unitary_sample(N, stream, n))
    vals = np.prod(g(theta), axis=-1)
    return vals.sum(), (np.abs(vals) ** 2).sum()


def class_function_average(
    g: Callable[[np.ndarray], np.ndarray], N: int, samples: int, seed: int = 0, threads: int = 1
) -> MonteCarloResult:
    """Monte Carlo estimate of ``< prod_j g(theta_j) >`` over Haar ``U(N)``."""
    sizes = [CHUNK] * (samples // CHUNK) + ([samples % CHUNK] if samples % CHUNK else [])
    jobs = [(n, i) for i, n in enumerate(sizes)]
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda job: _chunk_sums(g, N, job[0], seed, job[1]), jobs))
    else:
        parts = [_chunk_sums(g, N, n, seed, i) for n, i in jobs]
    s1 = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    mean = s1 / samples
    var = max(s2 / samples - abs(mean) ** 2, 0.0) * samples / max(samples - 1, 1)
    return MonteCarloResult(complex(mean), float(np.sqrt(var / samples)), samples)


def toeplitz_determinant(coeffs: Callable[[int], complex] | Mapping[int, complex], N: int) -> complex:
    """``det(g_{j-k})_{j,k=0..N-1}``; missing coefficients count as zero."""
    get = coeffs if callable(coeffs) else (lambda k: coeffs.get(k, 0.0))
    col = np.array([get(j) for j in range(N)], dtype=complex)
    row = np.array([get(-k) for k in range(N)], dtype=complex)
    det = np.linalg.det(scipy.linalg.toeplitz(col, row))
    return complex(det)


@dataclass
class HeineSzegoCheck:
    N: int
    samples: int
    seed: int
    mc_mean: complex
    stderr: float
    determinant: complex
    z: float

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "samples": self.samples,
            "seed": self.seed,
            "mc_mean": self.mc_mean.real if self.mc_mean.imag == 0 else [self.mc_mean.real, self.mc_mean.imag],
            "stderr": self.stderr,
            "determinant": self.determinant.real if self.determinant.imag == 0 else
            [self.determinant.real, self.determinant.imag],
            "z": self.z,
        }


def heine_szego_check(
    g: Callable[[np.ndarray], np.ndarray],
    coeffs: Callable[[int], complex] | Mapping[int, complex],
    N: int,
    samples: int = 100_000,
    seed: int = 0,
    threads: int = 1,
) -> HeineSzegoCheck:
    """z-score of the Haar average of ``prod g(theta_j)`` against the Toeplitz determinant."""
    mc = class_function_average(g, N, samples, seed, threads)
    det = toeplitz_determinant(coeffs, N)
    delta = mc.mean - det
    # signed for real-valued checks, modulus otherwise
    diff = delta.real if abs(delta.imag) <= 1e-12 else abs(delta)
    if mc.stderr == 0.0:
        if abs(diff) > 1e-12:
            raise ArithmeticError(f"zero-variance average {mc.mean} differs from determinant {det}")
        z = 0.0
    else:
        z = diff / mc.stderr
    return HeineSzegoCheck(N, samples, seed, mc.mean, mc.stderr, det, float(z))
