import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import dirichlet_entry, dirichlet_lambda1_cos2x, neumann_entry, neumann_mu0_cos2x
from spectral_sums.errors import DomainError, InsufficientSpectrumError
from spectral_sums.interval_spectrum import (
    BoundaryCondition,
    IntervalProblem,
    assemble_dirichlet,
    assemble_neumann,
    default_basis_size,
    eigenvalues,
    fd_oracle,
    solve,
)
from spectral_sums.potential import FourierPotential, SampledPotential

COS2X = FourierPotential.from_terms({2: 1.0})


def test_free_dirichlet_and_neumann():
    zero = FourierPotential.constant(0.0)
    d = solve(zero, "dirichlet", 20)
    assert np.allclose(d.values, np.arange(1, 21) ** 2, atol=1e-10)
    n = solve(zero, "neumann", 20)
    assert np.allclose(n.values, np.arange(0, 20) ** 2, atol=1e-10)
    assert n.bc is BoundaryCondition.NEUMANN and n.bc.first_index == 0


def test_constant_shift():
    d = solve(FourierPotential.constant(2.5), "dirichlet", 5)
    assert np.allclose(d.values, np.arange(1, 6) ** 2 + 2.5, atol=1e-12)


def test_small_assembly_examples():
    h = assemble_dirichlet(COS2X, 3)
    assert np.allclose(h, [[0.5, 0.0, 0.5], [0.0, 4.0, 0.0], [0.5, 0.0, 9.0]])
    g = assemble_neumann(COS2X, 2)
    r = 1 / math.sqrt(2)
    assert np.allclose(g, [[0.0, 0.0, r], [0.0, 1.5, 0.0], [r, 0.0, 4.0]])


@pytest.mark.parametrize("coeffs", [(0.3, -1.0, 2.0), (1.0, 0.0, 0.0, 0.7, -0.2), (0.0, 0.5)])
def test_assembly_matches_quadrature(coeffs):
    p = FourierPotential(coeffs)
    h = assemble_dirichlet(p, 5)
    g = assemble_neumann(p, 5)
    for j in range(5):
        for k in range(5):
            assert h[j, k] == pytest.approx(dirichlet_entry(coeffs, j + 1, k + 1), abs=1e-10)
    for j in range(6):
        for k in range(6):
            assert g[j, k] == pytest.approx(neumann_entry(coeffs, j, k), abs=1e-10)


def test_cos2x_against_mathieu_oracle():
    d = solve(COS2X, "dirichlet", 1, basis_size=64)
    n = solve(COS2X, "neumann", 1, basis_size=64)
    assert d.values[0] == pytest.approx(dirichlet_lambda1_cos2x(), abs=1e-12)
    assert n.values[0] == pytest.approx(neumann_mu0_cos2x(), abs=1e-12)


def test_finite_difference_agrees_with_galerkin():
    fd_d = fd_oracle(COS2X, "dirichlet", 3, 4096)
    fd_n = fd_oracle(COS2X, "neumann", 3, 4096)
    gd = solve(COS2X, "dirichlet", 3)
    gn = solve(COS2X, "neumann", 3)
    assert np.allclose(fd_d.values, gd.values, atol=2e-6)
    assert np.allclose(fd_n.values, gn.values, atol=2e-6)
    # O(h^2): halving the grid error estimate bounds the actual difference
    assert np.all(np.abs(fd_d.values - gd.values) <= fd_d.errors)


def test_finite_difference_on_samples():
    s = COS2X.sample(1024)
    fd = fd_oracle(s, "neumann", 2, 1024)
    assert fd.values[0] == pytest.approx(neumann_mu0_cos2x(), abs=1e-4)
    with pytest.raises(DomainError):
        fd_oracle(s, "neumann", 2, 2048)


@given(st.lists(st.floats(-3, 3, allow_nan=False), min_size=1, max_size=8), st.integers(1, 6))
@settings(max_examples=40, deadline=None)
def test_galerkin_values_are_upper_bounds(coeffs, count):
    """Rayleigh-Ritz monotonicity: enlarging the basis can only lower each eigenvalue."""
    p = FourierPotential(tuple(coeffs))
    for bc in ("dirichlet", "neumann"):
        small = solve(p, bc, count, basis_size=4 * count + 8)
        large = solve(p, bc, count, basis_size=128)
        assert np.all(large.values <= small.values + 1e-9)
        assert np.all(np.diff(large.values) >= -1e-12)


def test_error_estimates_shrink_with_basis():
    p = FourierPotential(tuple(1.0 / (1 + k) ** 2 for k in range(40)))
    coarse = solve(p, "dirichlet", 4, basis_size=16)
    fine = solve(p, "dirichlet", 4, basis_size=96)
    assert fine.errors.sum() < coarse.errors.sum()


def test_count_guard_and_require():
    with pytest.raises(DomainError):
        eigenvalues(IntervalProblem(COS2X, "dirichlet", 16), 5)
    with pytest.raises(DomainError):
        IntervalProblem(COS2X, "dirichlet", 4)
    res = solve(COS2X, "dirichlet", 2)
    with pytest.raises(InsufficientSpectrumError):
        res.require(3)
    assert default_basis_size(10) == 42 and default_basis_size(20) == 80


def test_eigenvectors_are_free_basis_coordinates():
    res = solve(COS2X, "dirichlet", 3, basis_size=32, want_vectors=True)
    v = res.vectors
    h = assemble_dirichlet(COS2X, 32)
    assert np.allclose(v.T @ v, np.eye(32), atol=1e-12)
    assert np.allclose(h @ v[:, :3], v[:, :3] * res.values, atol=1e-11)
    # cos 2x couples sin x only to sin 3x, sin 5x, ...
    assert np.allclose(v[1::2, 0], 0.0, atol=1e-14)


def test_bc_parse():
    assert BoundaryCondition.parse("Neumann") is BoundaryCondition.NEUMANN
    with pytest.raises(DomainError):
        BoundaryCondition.parse("robin")


def test_sampled_potential_is_transformed():
    s = SampledPotential.from_function(lambda x: np.cos(2 * x), 256)
    assert solve(s, "dirichlet", 1).values[0] == pytest.approx(dirichlet_lambda1_cos2x(), abs=1e-10)
