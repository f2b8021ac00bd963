"""Dispersion relations, their sign-changing zeros, and the sign symbol."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import DegenerateSymbolError, ModelError
from .model import ModelSpec, SymmetryClass

MERGE_TOL = 1e-9


@dataclass(frozen=True)
class TrigSymbol:
    """Trigonometric polynomial ``Lambda(theta) = sum_j coeffs[j] exp(i j theta)``."""

    coeffs: Mapping[int, complex]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {int(j): complex(v) for j, v in self.coeffs.items() if v != 0})

    @classmethod
    def from_cosines(cls, c: Mapping[int, float]) -> "TrigSymbol":
        """Real even symbol ``c[0] + sum_{j>0} c[j] cos(j theta)``."""
        coeffs = {}
        for j, v in c.items():
            j = int(j)
            if j == 0:
                coeffs[0] = coeffs.get(0, 0) + v
            else:
                coeffs[j] = coeffs.get(j, 0) + v / 2
                coeffs[-j] = coeffs.get(-j, 0) + v / 2
        return cls(coeffs)

    @property
    def degree(self) -> int:
        return max([0, *(abs(j) for j in self.coeffs)])

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(theta.shape, dtype=complex)
        for j, v in self.coeffs.items():
            out += v * np.exp(1j * j * theta)
        return out

    def real_part(self, theta):
        """Real-valued evaluation for even, real symbols."""
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(theta.shape)
        for j, v in self.coeffs.items():
            out += v.real * np.cos(j * theta)
        return out

    def is_real_even(self, tol: float = 1e-12) -> bool:
        return all(abs(v - self.coeffs.get(-j, 0)) <= tol and abs(v.imag) <= tol for j, v in self.coeffs.items())

    def scaled(self, c: float) -> "TrigSymbol":
        return TrigSymbol({j: c * v for j, v in self.coeffs.items()})


@dataclass(frozen=True)
class JumpSet:
    """Odd-order zeros of an even real dispersion on ``[0, pi)``.

    ``sign_at_0`` is the value of ``Lambda/|Lambda|`` just right of 0;
    ``touch_points`` lists even-order zeros that were detected and excluded.
    """

    theta: tuple[float, ...]
    sign_at_0: int = 1
    touch_points: tuple[float, ...] = field(default=())

    @property
    def R(self) -> int:
        return len(self.theta)

    def to_json(self) -> str:
        return json.dumps({"R": self.R, "theta": list(self.theta), "sign_at_0": self.sign_at_0})

    @classmethod
    def from_json(cls, text: str) -> "JumpSet":
        d = json.loads(text)
        js = cls(tuple(float(t) for t in d["theta"]), int(d["sign_at_0"]))
        if js.R != int(d["R"]):
            raise ValueError(f"R={d['R']} does not match {js.R} angles")
        return js


def symbol_from_model(spec: ModelSpec) -> TrigSymbol:
    """Dispersion of the cyclic chain: ``Lambda_j = a(j) - alpha*gamma*b(j)``.

    With this convention ``Lambda(theta)`` is the eigenvalue of ``AA + BB``
    on the plane wave ``exp(i theta j)``.
    """
    scale = spec.alpha * spec.gamma
    coeffs = dict(spec.law.a)
    for j, v in spec.law.b.items():
        coeffs[j] = coeffs.get(j, 0.0) - scale * v
    return TrigSymbol(coeffs)


def dispersion_finite(spec: ModelSpec) -> np.ndarray:
    """Eigenvalues of ``AA + BB`` on ``phi_l = exp(2 pi i l j / M)``, l = 0..M-1."""
    if spec.cls is not SymmetryClass.UNITARY:
        raise ModelError("finite-M dispersion exists only for the cyclic (unitary) class")
    M = spec.M
    k = 2 * np.pi * np.arange(M) / M
    lam = np.full(M, spec.law.a.get(0, 0.0), dtype=complex)
    scale = spec.alpha * spec.gamma
    half = (M - 1) // 2 if M % 2 else M // 2 - 1
    for j in range(1, half + 1):
        lam += 2 * spec.law.a.get(j, 0.0) * np.cos(k * j) - 2j * scale * spec.law.b.get(j, 0.0) * np.sin(k * j)
    if M % 2 == 0:
        lam += (-1.0) ** np.arange(M) * spec.law.a.get(M // 2, 0.0)
    return lam


def find_jumps(sym: TrigSymbol, root_tol: float = 1e-12) -> JumpSet:
    """Locate the sign-changing zeros of a real even symbol in ``[0, pi)``."""
    if not sym.coeffs:
        raise DegenerateSymbolError("Lambda vanishes identically")
    if not sym.is_real_even(1e-12):
        raise ModelError("jump finding needs a real even symbol (gamma = 0)")
    f = sym.real_part
    scale = max(abs(v) for v in sym.coeffs.values())
    n = max(64, 64 * sym.degree)
    grid = np.linspace(0.0, np.pi, n + 1)
    vals = f(grid)
    if np.all(np.abs(vals) <= 1e-14 * scale):
        raise DegenerateSymbolError("Lambda vanishes on the whole sampling grid")

    roots = []
    zero_at = np.abs(vals) <= 1e-15 * scale
    for i in range(n):
        lo, hi = vals[i], vals[i + 1]
        if zero_at[i] and 0 < i:
            if np.sign(vals[i - 1]) * np.sign(hi) < 0:
                roots.append(grid[i])
            continue
        if zero_at[i + 1]:
            continue
        if lo * hi < 0:
            roots.append(brentq(f, grid[i], grid[i + 1], xtol=root_tol, rtol=4 * np.finfo(float).eps))

    # even-order zeros: local minima of |Lambda| that reach zero without a sign change
    touches = []
    absv = np.abs(vals)
    for i in range(1, n):
        if absv[i] <= absv[i - 1] and absv[i] <= absv[i + 1] and np.sign(vals[i - 1]) == np.sign(vals[i + 1]) != 0:
            res = minimize_scalar(lambda t: abs(f(t)), bounds=(grid[i - 1], grid[i + 1]), method="bounded",
                                  options={"xatol": 1e-12})
            if abs(f(res.x)) <= 1e-10 * scale:
                touches.append(float(res.x))
    for end in (0.0, np.pi):
        if abs(f(end)) <= 1e-12 * scale:
            touches.append(end)
    if touches:
        warnings.warn(f"even-order zeros of Lambda at {touches} do not count as jumps", RuntimeWarning)

    merged = []
    for r in sorted(roots):
        if merged and r - merged[-1] < MERGE_TOL:
            warnings.warn(f"merging nearly coincident zeros at {merged[-1]} and {r}", RuntimeWarning)
            continue
        merged.append(float(r))
    roots = [r for r in merged if r < np.pi]

    probe = 0.5 * (roots[0] if roots else np.pi)
    s0 = np.sign(f(probe))
    if s0 == 0:
        s0 = np.sign(vals[np.nonzero(vals)[0][0]])
    return JumpSet(tuple(roots), int(s0), tuple(sorted(touches)))


def _arcs(jumps: JumpSet, sign_at_0: int):
    edges = [0.0, *jumps.theta, np.pi]
    sign = sign_at_0
    for lo, hi in zip(edges[:-1], edges[1:]):
        yield lo, hi, sign
        sign = -sign


def sign_symbol_values(jumps: JumpSet, theta, sign_at_0: int | None = None) -> np.ndarray:
    """Evaluate the +-1 symbol at arbitrary angles."""
    s0 = jumps.sign_at_0 if sign_at_0 is None else sign_at_0
    t = np.abs(np.angle(np.exp(1j * np.asarray(theta, dtype=float))))
    count = np.searchsorted(np.asarray(jumps.theta), t, side="right")
    return s0 * (-1.0) ** count


def sign_symbol_fourier(jumps: JumpSet, k, sign_at_0: int | None = None) -> np.ndarray:
    """Fourier coefficients ``g_k = (1/2pi) int g(theta) exp(-i k theta)``.

    ``g`` is even, so ``g_k = (1/pi) int_0^pi g cos(k theta)``; each arc of
    constant sign is integrated in closed form.
    """
    s0 = jumps.sign_at_0 if sign_at_0 is None else sign_at_0
    k = np.abs(np.asarray(k, dtype=float))
    out = np.zeros(k.shape)
    nz = k != 0
    for lo, hi, s in _arcs(jumps, s0):
        out[~nz] += s * (hi - lo)
        out[nz] += s * (np.sin(k[nz] * hi) - np.sin(k[nz] * lo)) / k[nz]
    return out / np.pi
