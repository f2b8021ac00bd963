import json

import numpy as np
import pytest
from scipy.integrate import quad

from fermichain.errors import DegenerateSymbolError
from fermichain.model import CouplingLaw, ModelSpec, SymmetryClass, build_A_matrix, build_B_matrix
from fermichain.symbol import (
    JumpSet,
    TrigSymbol,
    dispersion_finite,
    find_jumps,
    sign_symbol_fourier,
    sign_symbol_values,
    symbol_from_model,
)

COS = TrigSymbol.from_cosines({1: 1.0})
COS2 = TrigSymbol.from_cosines({2: 1.0})


def test_xx_type_symbol():
    alpha = 0.8
    s = ModelSpec(alpha, 0.0, CouplingLaw.from_halves({0: -2, 1: -alpha}), SymmetryClass.UNITARY, 9)
    sym = symbol_from_model(s)
    theta = np.linspace(-np.pi, np.pi, 101)
    np.testing.assert_allclose(sym(theta), -2 - 2 * alpha * np.cos(theta), atol=1e-14)
    np.testing.assert_allclose(dispersion_finite(s), sym(2 * np.pi * np.arange(9) / 9), atol=1e-12)


def test_zero_and_cosine_symbols():
    assert TrigSymbol({}).degree == 0
    sym = symbol_from_model(ModelSpec(1, 0, CouplingLaw.from_halves({1: 0.5}), SymmetryClass.UNITARY, 4))
    np.testing.assert_allclose(sym([0.3, 1.1]), np.cos([0.3, 1.1]), atol=1e-15)
    np.testing.assert_allclose(
        dispersion_finite(ModelSpec(1, 0, CouplingLaw.from_halves({1: 0.5}), SymmetryClass.UNITARY, 4)),
        [1, 0, -1, 0],
        atol=1e-15,
    )


def test_isotropic_symbol_is_real_even(rng):
    law = CouplingLaw.from_halves({j: rng.normal() for j in range(4)}, {1: 0.3})
    sym = symbol_from_model(ModelSpec(1.1, 0.0, law, SymmetryClass.UNITARY, 12))
    theta = np.linspace(-np.pi, np.pi, 2001)
    vals = sym(theta)
    assert np.abs(vals.imag).max() < 1e-12
    assert np.abs(vals - sym(-theta)).max() < 1e-12
    assert sym.degree <= 3


@pytest.mark.parametrize("M", [7, 10, 13])
def test_dispersion_matches_dense_eigenvalues(M, rng):
    law = CouplingLaw.from_halves({j: rng.normal() for j in range(3)}, {j: rng.normal() for j in (1, 2)})
    s = ModelSpec(1.2, 0.4, law, SymmetryClass.UNITARY, M)
    X = build_A_matrix(s) + build_B_matrix(s)
    dense = np.linalg.eigvals(X)
    disp = dispersion_finite(s)
    # conjugate pairs make sorting fragile; match each value to its nearest partner
    assert np.abs(disp[:, None] - dense[None, :]).min(axis=1).max() < 1e-10
    assert np.abs(dense[:, None] - disp[None, :]).min(axis=1).max() < 1e-10
    # exact agreement with the continuum symbol on the momentum grid
    assert np.abs(dispersion_finite(s) - symbol_from_model(s)(2 * np.pi * np.arange(M) / M)).max() < 1e-12


def test_jumps_of_simple_symbols():
    j = find_jumps(COS)
    assert j.R == 1 and j.theta[0] == pytest.approx(np.pi / 2, abs=1e-12) and j.sign_at_0 == 1
    j2 = find_jumps(COS2)
    np.testing.assert_allclose(j2.theta, [np.pi / 4, 3 * np.pi / 4], atol=1e-12)
    assert find_jumps(TrigSymbol.from_cosines({0: 2.0, 1: 1.0})).R == 0


def test_degenerate_symbol():
    with pytest.raises(DegenerateSymbolError):
        find_jumps(TrigSymbol({}))


def test_even_order_zero_is_excluded():
    # 1 + cos(theta) touches zero at pi; (cos theta)^2 = 1/2 + cos(2 theta)/2 touches at pi/2
    with pytest.warns(RuntimeWarning):
        assert find_jumps(TrigSymbol.from_cosines({0: 1.0, 1: 1.0})).R == 0
    with pytest.warns(RuntimeWarning):
        js = find_jumps(TrigSymbol.from_cosines({0: 0.5, 2: 0.5}))
    assert js.R == 0
    assert js.touch_points[0] == pytest.approx(np.pi / 2, abs=1e-6)


@pytest.mark.parametrize("c", [0.5, 3.0, 1e3])
def test_jumps_scale_invariant(c, rng):
    sym = TrigSymbol.from_cosines({0: 0.2, 1: 1.0, 2: -0.7, 3: 0.4})
    base = find_jumps(sym)
    assert find_jumps(sym.scaled(c)) == base
    flipped = find_jumps(sym.scaled(-c))
    np.testing.assert_allclose(flipped.theta, base.theta, atol=1e-12)
    assert flipped.sign_at_0 == -base.sign_at_0


def test_sign_of_cosine_fourier():
    g = sign_symbol_fourier(find_jumps(COS), np.arange(4))
    np.testing.assert_allclose(g, [0, 2 / np.pi, 0, -2 / (3 * np.pi)], atol=1e-15)


def test_no_jump_fourier():
    g = sign_symbol_fourier(JumpSet((), 1), np.arange(-3, 4))
    np.testing.assert_allclose(g, [0, 0, 0, 1, 0, 0, 0], atol=1e-15)


def _quadrature_coeff(sym, k):
    # independent route: integrate Lambda/|Lambda| panel by panel
    jumps = find_jumps(sym)
    edges = [0.0, *jumps.theta, np.pi]
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, _ = quad(lambda t: np.sign(sym.real_part(t)) * np.cos(k * t), lo, hi, epsabs=1e-13, epsrel=1e-13)
        total += val
    return total / np.pi


@pytest.mark.parametrize(
    "sym", [COS, COS2, TrigSymbol.from_cosines({0: -0.3, 1: 1.0}), TrigSymbol.from_cosines({0: 0.1, 1: 1, 3: -0.8})]
)
def test_fourier_against_quadrature(sym):
    jumps = find_jumps(sym)
    ks = np.arange(0, 12)
    closed = sign_symbol_fourier(jumps, ks)
    numeric = [_quadrature_coeff(sym, k) for k in ks]
    np.testing.assert_allclose(closed, numeric, atol=1e-8)
    # real and even
    np.testing.assert_allclose(sign_symbol_fourier(jumps, -ks), closed)


def test_sign_values_match_symbol():
    sym = TrigSymbol.from_cosines({0: 0.1, 1: 1, 3: -0.8})
    jumps = find_jumps(sym)
    theta = np.linspace(-2 * np.pi, 2 * np.pi, 999)
    theta = theta[np.min(np.abs(np.abs(theta)[:, None] % (2 * np.pi) - np.array(jumps.theta)), axis=1) > 1e-6]
    np.testing.assert_array_equal(sign_symbol_values(jumps, theta), np.sign(sym.real_part(theta)))


def test_parseval():
    for sym in (COS, COS2, TrigSymbol.from_cosines({0: 0.1, 1: 1, 3: -0.8})):
        k = np.arange(-10_000, 10_001)
        assert np.sum(sign_symbol_fourier(find_jumps(sym), k) ** 2) >= 0.99


def test_jumpset_json():
    js = find_jumps(COS2)
    doc = json.loads(js.to_json())
    assert doc["R"] == 2 and doc["sign_at_0"] == 1
    assert JumpSet.from_json(js.to_json()).theta == js.theta
