"""Predicted and fitted constants of ``E_P ~ kappa log2 N + kappa_tilde``."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .entropy import EntropyCurve
from .model import SymmetryClass
from .symbol import JumpSet

EULER_GAMMA = 0.57721566490153286061
I3 = 0.0221603
# one unit in the last printed digit of I3
I3_UNCERTAINTY = 1e-7
DEFAULT_N_MIN = 32


def predict_kappa(cls: SymmetryClass, jumps: JumpSet | int) -> Fraction:
    R = jumps if isinstance(jumps, int) else jumps.R
    return Fraction(2**cls.w_G * R, 6)


def compute_K(jumps: JumpSet | tuple[float, ...]) -> float:
    """Constant ``K`` entering the unitary ``kappa_tilde``.

    Jumps are taken in ascending order; the alternating sign of the pair sum
    refers to that labelling.
    """
    theta = np.sort(np.asarray(jumps.theta if isinstance(jumps, JumpSet) else jumps, dtype=float))
    R = len(theta)
    if R == 0:
        raise ValueError("K is defined only for R >= 1")
    for t in theta:
        if abs(1 - np.exp(2j * t)) < 1e-14:
            raise ValueError(f"jump at theta={t} makes ln|1 - exp(2i theta)| singular")
    single = np.sum(np.log(np.abs(1 - np.exp(2j * theta))))
    pairs = 0.0
    for r in range(R):
        for s in range(r + 1, R):
            num = abs(1 - np.exp(1j * (theta[r] - theta[s])))
            den = abs(1 - np.exp(1j * (theta[r] + theta[s])))
            if num < 1e-14 or den < 1e-14:
                raise ValueError(f"jumps {r + 1} and {s + 1} (theta={theta[r]}, {theta[s]}) are singular")
            # labels r+1, s+1 are one-based
            pairs += (-1.0) ** (r + s + 2) * np.log(num / den)
    return 1 + EULER_GAMMA + single / R - 2 * pairs / R


def predict_kappa_tilde(cls: SymmetryClass, jumps: JumpSet) -> float | None:
    """Constant term; ``None`` when ``R = 0`` (no closed form for the plateau)."""
    if jumps.R == 0:
        return None
    unitary = jumps.R / (3 * np.log(2)) * (compute_K(jumps) - 6 * I3 * np.log(2))
    if cls is SymmetryClass.UNITARY:
        return float(unitary)
    return float(unitary / 2 + jumps.R / 6)


@dataclass
class AsymptoticPrediction:
    cls: SymmetryClass
    jumps: JumpSet
    kappa: Fraction
    kappa_tilde: float | None
    K: float | None
    constants: dict = field(default_factory=lambda: {"gamma_E": EULER_GAMMA, "I_3": I3})

    @property
    def R(self) -> int:
        return self.jumps.R

    @property
    def central_charge(self) -> float | None:
        """``3 kappa`` for the unitary class."""
        return 3 * float(self.kappa) if self.cls is SymmetryClass.UNITARY else None

    def to_dict(self) -> dict:
        d = {
            "class": self.cls.value,
            "R": self.R,
            "theta": list(self.jumps.theta),
            "theta_order": "ascending",
            "kappa": float(self.kappa),
            "kappa_tilde": self.kappa_tilde,
        }
        if self.kappa_tilde is None:
            d["note"] = "R = 0: entropy saturates; the plateau value is measured, not predicted"
        return d


def predict(cls: SymmetryClass, jumps: JumpSet) -> AsymptoticPrediction:
    K = compute_K(jumps) if jumps.R else None
    return AsymptoticPrediction(cls, jumps, predict_kappa(cls, jumps), predict_kappa_tilde(cls, jumps), K)


@dataclass
class FitResult:
    kappa_fit: float
    kappa_tilde_fit: float
    rms_residual: float
    n_points: int
    N_min: int


def fit_entropy(curve: EntropyCurve, N_min: int = DEFAULT_N_MIN) -> FitResult:
    """Least-squares line ``E = kappa log2 N + kappa_tilde`` over ``N >= N_min``."""
    N = np.asarray(curve.N)
    mask = N >= N_min
    if mask.sum() < 4:
        raise ValueError(f"need at least 4 points with N >= {N_min}, got {int(mask.sum())}")
    x = np.log2(N[mask].astype(float))
    y = np.asarray(curve.E, dtype=float)[mask]
    (slope, intercept), *_ = np.linalg.lstsq(np.column_stack([x, np.ones_like(x)]), y, rcond=None)
    resid = y - (slope * x + intercept)
    return FitResult(float(slope), float(intercept), float(np.sqrt(np.mean(resid**2))), int(mask.sum()), N_min)


def comparison_json(prediction: AsymptoticPrediction, fit: FitResult, **extra) -> str:
    d = prediction.to_dict()
    d.update(kappa_fit=fit.kappa_fit, kappa_tilde_fit=fit.kappa_tilde_fit, rms_residual=fit.rms_residual)
    d.update(extra)
    return json.dumps(d, sort_keys=True)
