import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fermichain.errors import ModelError
from fermichain.model import (
    CouplingLaw,
    ModelSpec,
    SymmetryClass,
    build_A_matrix,
    build_B_matrix,
    validate,
    xx_model,
)
from fermichain.symbol import dispersion_finite

U = SymmetryClass.UNITARY


def spec(a=None, b=None, cls=U, M=4, alpha=1.0, gamma=1.0):
    return ModelSpec(alpha, gamma if cls is U else 0.0, CouplingLaw.from_halves(a, b), cls, M)


def test_unitary_circulant():
    A = build_A_matrix(spec({0: -2, 1: 1}))
    np.testing.assert_array_equal(A[0], [-2, 1, 0, 1])
    for r in range(4):
        np.testing.assert_array_equal(A[r], np.roll(A[0], r))


def test_orthogonal_plus_even_entries():
    # a(j-l) + a(j+l) evaluated by hand, no wrap-around
    A = build_A_matrix(spec({0: 0, 1: 1}, cls=SymmetryClass.ORTHOGONAL_PLUS_EVEN, M=3))
    np.testing.assert_array_equal(A, [[0, 2, 0], [2, 0, 1], [0, 1, 0]])


@pytest.mark.parametrize(
    "cls, expected",
    [
        # a(0)=1, a(1)=0.5 on M=3; hand-evaluated Hankel corrections
        (SymmetryClass.SYMPLECTIC, [[1, 0.5, 0], [0.5, 1, 0.5], [0, 0.5, 1]]),
        (SymmetryClass.ORTHOGONAL_MINUS_EVEN, [[1, 0.5, 0], [0.5, 1, 0.5], [0, 0.5, 1]]),
        (SymmetryClass.ORTHOGONAL_PLUS_ODD, [[0.5, 0.5, 0], [0.5, 1, 0.5], [0, 0.5, 1]]),
        (SymmetryClass.ORTHOGONAL_MINUS_ODD, [[1.5, 0.5, 0], [0.5, 1, 0.5], [0, 0.5, 1]]),
    ],
)
def test_other_class_rules(cls, expected):
    A = build_A_matrix(spec({0: 1, 1: 0.5}, cls=cls, M=3))
    np.testing.assert_allclose(A, expected)


def test_symplectic_hankel_reaches_diagonal():
    # a(j-k) - a(j+k+2) with radius 2: entry (0,0) loses a(2)
    A = build_A_matrix(spec({0: 1, 1: 0.5, 2: 0.25}, cls=SymmetryClass.SYMPLECTIC, M=6))
    assert A[0, 0] == pytest.approx(0.75)
    assert A[1, 1] == pytest.approx(1.0)


@pytest.mark.parametrize("cls", list(SymmetryClass))
def test_zero_law_gives_zero_matrix(cls):
    assert not build_A_matrix(spec({}, cls=cls, M=5)).any()


def test_B_circulant():
    B = build_B_matrix(spec(b={1: 1}))
    np.testing.assert_array_equal(B[0], [0, -1, 0, 1])
    np.testing.assert_array_equal(B, -B.T)


def test_B_vanishes_without_anisotropy():
    assert not build_B_matrix(spec(b={1: 1, 2: 0.3}, M=7, gamma=0.0)).any()
    assert not build_B_matrix(spec(b={}, M=7)).any()


def test_B_needs_cyclic_class():
    with pytest.raises(ModelError):
        build_B_matrix(spec({0: 1}, cls=SymmetryClass.SYMPLECTIC))


def test_gamma_mismatch_rejected():
    bad = ModelSpec(1.0, 0.5, CouplingLaw.from_halves({0: 1}), SymmetryClass.SYMPLECTIC, 6)
    with pytest.raises(ModelError):
        build_A_matrix(bad)
    assert any("gamma" in p for p in validate(bad))


def test_validate():
    assert validate(xx_model(2.0, 10)) == []
    odd_broken = ModelSpec(1.0, 0.5, CouplingLaw({}, {0: 1.0}), U, 6)
    assert any("b(0)" in p for p in validate(odd_broken))
    uneven = ModelSpec(1.0, 0.0, CouplingLaw({1: 1.0, -1: 0.5}), U, 6)
    assert any("not even" in p for p in validate(uneven))
    short = ModelSpec(1.0, 0.0, CouplingLaw.from_halves({0: 1, 3: 1}), U, 6)
    assert any("twice the support" in p for p in validate(short))


def test_xx_preset():
    s = xx_model(0.7, 12)
    assert s.gamma == 0.0 and s.cls is U
    assert s.law.a == {0: -2.0, 1: -0.7, -1: -0.7}
    with pytest.raises(ModelError):
        xx_model(1.0, 3)
    np.testing.assert_allclose(build_A_matrix(xx_model(0.0, 6)), -2 * np.eye(6))


def test_json_roundtrip(rng):
    s = ModelSpec(1.5, 0.3, CouplingLaw.from_halves({0: -2, 1: 0.4}, {1: 0.2, 2: -0.1}), U, 9)
    doc = json.loads(s.to_json())
    assert set(doc) == {"alpha", "gamma", "class", "M", "a", "b"}
    assert doc["b"]["-2"] == 0.1
    assert ModelSpec.from_json(s.to_json()) == s


laws = st.fixed_dictionaries(
    {
        "a": st.lists(st.floats(-3, 3), min_size=1, max_size=4),
        "b": st.lists(st.floats(-3, 3), min_size=0, max_size=3),
        "M": st.integers(9, 20),
        "gamma": st.floats(0, 1),
    }
)


@settings(max_examples=60, deadline=None)
@given(laws)
def test_symmetry_properties(d):
    law = CouplingLaw.from_halves(dict(enumerate(d["a"])), {j + 1: v for j, v in enumerate(d["b"])})
    s = ModelSpec(1.3, d["gamma"], law, U, d["M"])
    A, B = build_A_matrix(s), build_B_matrix(s)
    assert np.array_equal(A, A.T)
    assert np.array_equal(B, -B.T)
    assert np.abs(A @ B - B @ A).max() < 1e-12
    for cls in SymmetryClass:
        if cls is not U:
            A = build_A_matrix(ModelSpec(1.3, 0.0, law, cls, d["M"]))
            assert np.array_equal(A, A.T)


@pytest.mark.parametrize("M", [7, 8, 11, 12])
def test_plane_waves_diagonalise(M, rng):
    law = CouplingLaw.from_halves({j: rng.normal() for j in range(4)}, {j: rng.normal() for j in range(1, 4)})
    s = ModelSpec(0.9, 0.6, law, U, M)
    X = build_A_matrix(s) + build_B_matrix(s)
    lam = dispersion_finite(s)
    j = np.arange(M)
    for l in range(M):
        phi = np.exp(2j * np.pi * l * j / M) / np.sqrt(M)
        assert np.abs(X @ phi - lam[l] * phi).max() < 1e-10


def test_even_M_alternating_term():
    # radius M/2 is allowed by the dispersion formula even though validate flags it
    s = ModelSpec(1.0, 0.0, CouplingLaw.from_halves({0: 0.1, 2: 0.5}), U, 4)
    X = build_A_matrix(s)
    lam = dispersion_finite(s)
    j = np.arange(4)
    for l in range(4):
        phi = np.exp(2j * np.pi * l * j / 4)
        np.testing.assert_allclose(X @ phi, lam[l] * phi, atol=1e-12)
    np.testing.assert_allclose(lam.real, 0.1 + 0.5 * (-1.0) ** j)


def test_pairing_support_must_fit_ring():
    law = CouplingLaw.from_halves({0: 1.0}, {3: 0.5})
    with pytest.raises(ModelError):
        build_B_matrix(ModelSpec(1.0, 0.5, law, SymmetryClass.UNITARY, 6))
    assert build_B_matrix(ModelSpec(1.0, 0.5, law, SymmetryClass.UNITARY, 7)).shape == (7, 7)
