"""Quadratic fermion chain models and their coupling matrices.

A chain of ``M`` Fermi oscillators is described by

    H = sum_jk c_j^+ AA_jk c_k + 1/2 sum_jk (c_j^+ BB_jk c_k^+ - c_j BB_jk c_k)

with ``AA = alpha*A - 2I`` real symmetric and ``BB = alpha*gamma*B`` real
antisymmetric.  :class:`CouplingLaw` stores

* ``a`` -- the entries of ``AA`` as a function of the index offset.  The
  on-site term ``-2`` and the factor ``alpha`` are already folded in, so the
  symmetry-class rules below act on ``a`` directly;
* ``b`` -- the shape of the pairing matrix ``B``; the builder scales it by
  ``alpha*gamma``.

Six structural rules are supported (``j, k`` run over ``0..M-1``)::

    UNITARY                 AA_jk = a(j-k)          (cyclic, indices mod M)
    ORTHOGONAL_PLUS_EVEN    AA_jk = a(j-k) + a(j+k)
    SYMPLECTIC              AA_jk = a(j-k) - a(j+k+2)
    ORTHOGONAL_MINUS_EVEN   AA_jk = a(j-k) - a(j+k+2)
    ORTHOGONAL_PLUS_ODD     AA_jk = a(j-k) - a(j+k+1)
    ORTHOGONAL_MINUS_ODD    AA_jk = a(j-k) + a(j+k+1)

Only the unitary class is translation invariant.  The other classes are open
chains with a reflecting boundary next to site 0; their index sums are not
reduced modulo ``M``, so the far end of the chain is a plain open edge.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import ModelError


class SymmetryClass(enum.Enum):
    UNITARY = "Unitary"
    ORTHOGONAL_PLUS_EVEN = "OrthogonalPlusEven"
    SYMPLECTIC = "Symplectic"
    ORTHOGONAL_MINUS_EVEN = "OrthogonalMinusEven"
    ORTHOGONAL_PLUS_ODD = "OrthogonalPlusOdd"
    ORTHOGONAL_MINUS_ODD = "OrthogonalMinusOdd"

    @property
    def w_G(self) -> int:
        """1 for the unitary group, 0 for the orthogonal and symplectic ones."""
        return 1 if self is SymmetryClass.UNITARY else 0

    @property
    def group(self) -> str:
        return {
            "Unitary": "U(N)",
            "OrthogonalPlusEven": "O+(2N)",
            "Symplectic": "Sp(2N)",
            "OrthogonalMinusEven": "O-(2N+2)",
            "OrthogonalPlusOdd": "O+(2N+1)",
            "OrthogonalMinusOdd": "O-(2N+1)",
        }[self.value]


# (sign, shift) of the Hankel part a(j+k+shift) for the open-chain classes
_HANKEL = {
    SymmetryClass.ORTHOGONAL_PLUS_EVEN: (1.0, 0),
    SymmetryClass.SYMPLECTIC: (-1.0, 2),
    SymmetryClass.ORTHOGONAL_MINUS_EVEN: (-1.0, 2),
    SymmetryClass.ORTHOGONAL_PLUS_ODD: (-1.0, 1),
    SymmetryClass.ORTHOGONAL_MINUS_ODD: (1.0, 1),
}


def _clean(d: Mapping) -> dict[int, float]:
    return {int(k): float(v) for k, v in d.items() if float(v) != 0.0}


@dataclass(frozen=True)
class CouplingLaw:
    """Offset-dependent couplings ``a`` (even) and ``b`` (odd).

    Values at offsets absent from the mappings are zero.  Use
    :meth:`from_halves` to build a law from its non-negative (``a``) or
    positive (``b``) offsets only.
    """

    a: Mapping[int, float] = field(default_factory=dict)
    b: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "a", _clean(self.a))
        object.__setattr__(self, "b", _clean(self.b))

    @classmethod
    def from_halves(cls, a: Mapping[int, float] = None, b: Mapping[int, float] = None) -> "CouplingLaw":
        full_a, full_b = {}, {}
        for j, v in (a or {}).items():
            full_a[int(j)] = full_a[-int(j)] = float(v)
        for j, v in (b or {}).items():
            j = int(j)
            if j == 0:
                raise ModelError("b(0) must vanish")
            full_b[j], full_b[-j] = float(v), -float(v)
        return cls(full_a, full_b)

    @property
    def radius(self) -> int:
        """Support radius ``s`` (at least 1)."""
        keys = [abs(j) for j in (*self.a, *self.b)]
        return max([1, *keys])

    def a_at(self, d):
        d = np.asarray(d)
        out = np.zeros(d.shape)
        for j, v in self.a.items():
            out[d == j] = v
        return out

    def b_at(self, d):
        d = np.asarray(d)
        out = np.zeros(d.shape)
        for j, v in self.b.items():
            out[d == j] = v
        return out


@dataclass(frozen=True)
class ModelSpec:
    alpha: float
    gamma: float
    law: CouplingLaw
    cls: SymmetryClass
    M: int

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "gamma": self.gamma,
            "class": self.cls.value,
            "M": self.M,
            "a": {str(j): v for j, v in sorted(self.law.a.items())},
            "b": {str(j): v for j, v in sorted(self.law.b.items())},
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "ModelSpec":
        try:
            return cls(
                alpha=float(d["alpha"]),
                gamma=float(d["gamma"]),
                law=CouplingLaw(d.get("a", {}), d.get("b", {})),
                cls=SymmetryClass(d["class"]),
                M=int(d["M"]),
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise ModelError(f"malformed model document: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "ModelSpec":
        return cls.from_dict(json.loads(text))

    def with_M(self, M: int) -> "ModelSpec":
        return ModelSpec(self.alpha, self.gamma, self.law, self.cls, M)


def validate(spec: ModelSpec) -> list[str]:
    """Return a list of human-readable invariant violations (empty if none)."""
    problems = []
    law = spec.law
    for j, v in law.a.items():
        if law.a.get(-j, 0.0) != v:
            problems.append(f"a is not even at offset {j}: a({j})={v}, a({-j})={law.a.get(-j, 0.0)}")
    if law.b.get(0, 0.0) != 0.0:
        problems.append(f"b is not odd: b(0)={law.b[0]}")
    for j, v in law.b.items():
        if j != 0 and law.b.get(-j, 0.0) != -v:
            problems.append(f"b is not odd at offset {j}: b({j})={v}, b({-j})={law.b.get(-j, 0.0)}")
    if not 0.0 <= spec.gamma <= 1.0:
        problems.append(f"gamma={spec.gamma} outside [0, 1]")
    if spec.cls is not SymmetryClass.UNITARY and spec.gamma != 0.0:
        problems.append(f"class {spec.cls.value} requires gamma = 0, got {spec.gamma}")
    if spec.M < 1:
        problems.append(f"chain length M={spec.M} must be positive")
    elif spec.M <= 2 * law.radius:
        problems.append(f"chain length M={spec.M} must exceed twice the support radius {law.radius}")
    if not (np.isfinite(spec.alpha) and np.isfinite(spec.gamma)):
        problems.append("alpha and gamma must be finite")
    return problems


def _cyclic_offsets(M: int) -> np.ndarray:
    j = np.arange(M)
    d = (j[:, None] - j[None, :]) % M
    # symmetric range (-M/2, M/2]
    return np.where(d > M // 2, d - M, d)


def build_A_matrix(spec: ModelSpec) -> np.ndarray:
    """Symmetric coupling matrix ``AA`` with the class-specific structure."""
    if spec.cls is not SymmetryClass.UNITARY and spec.gamma != 0.0:
        raise ModelError(f"class {spec.cls.value} is defined only for gamma = 0")
    M = spec.M
    if spec.cls is SymmetryClass.UNITARY:
        return spec.law.a_at(_cyclic_offsets(M))
    j = np.arange(M)
    sign, shift = _HANKEL[spec.cls]
    return spec.law.a_at(j[:, None] - j[None, :]) + sign * spec.law.a_at(j[:, None] + j[None, :] + shift)


def build_B_matrix(spec: ModelSpec) -> np.ndarray:
    """Antisymmetric pairing matrix ``BB = alpha*gamma*B`` (cyclic)."""
    if spec.cls is not SymmetryClass.UNITARY:
        raise ModelError("pairing matrices exist only for the unitary (cyclic) class")
    if any(2 * abs(j) >= spec.M for j in spec.law.b):
        # b(M/2) and b(-M/2) would land on the same cyclic offset
        raise ModelError(f"pairing support does not fit on a ring of M={spec.M} sites")
    return spec.alpha * spec.gamma * spec.law.b_at(_cyclic_offsets(spec.M))


def xx_model(alpha: float, M: int) -> ModelSpec:
    """Periodic XX chain ``-alpha/2 sum (XX + YY) - sum Z`` in fermion form.

    With the Jordan-Wigner fermions ``c_l = (prod_{j<l} Z_j) S^-_l`` the chain
    becomes hopping ``-alpha`` between neighbours plus the on-site ``-2``.
    """
    if M < 4:
        raise ModelError("the XX preset needs M >= 4")
    law = CouplingLaw.from_halves(a={0: -2.0, 1: -float(alpha)})
    return ModelSpec(alpha=float(alpha), gamma=0.0, law=law, cls=SymmetryClass.UNITARY, M=M)
