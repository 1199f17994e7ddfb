import warnings

import numpy as np
import pytest

from polycat import (
    BoundaryWarning, ConvergenceError, GroupSpec, PhaseSpaceGrid, SeedGaussian, cat_state, inverse_radon,
    symmetric_state, symplectic_tomogram, wigner_grid,
)

GRID = PhaseSpaceGrid(-2.5, 2.5, -2.5, 2.5, 6, 6)


def sampler(state):
    return lambda X, mu, nu: symplectic_tomogram(state, X, mu, nu)


def coherent(alpha):
    return symmetric_state(SeedGaussian.coherent(alpha), GroupSpec("cyclic", 1, 1))


def test_vacuum_round_trip():
    field = inverse_radon(sampler(coherent(0.0)), GRID)
    assert np.abs(field.values - wigner_grid(coherent(0.0), GRID).values).max() < 1e-6
    assert field.provenance == "oracle"
    assert field.meta["inverse_radon_prefactor"] == "1/(4 pi^2)"


def test_displaced_coherent_round_trip():
    state = coherent(0.6 - 0.4j)
    field = inverse_radon(sampler(state), GRID)
    assert np.abs(field.values - wigner_grid(state, GRID).values).max() < 1e-4


def test_linear_in_the_tomogram():
    a, b = coherent(0.5), coherent(-0.5j)
    fa = inverse_radon(sampler(a), GRID, x_max=7.0).values
    fb = inverse_radon(sampler(b), GRID, x_max=7.0).values
    mix = inverse_radon(lambda X, mu, nu: 0.3 * sampler(a)(X, mu, nu) + 0.7 * sampler(b)(X, mu, nu),
                        GRID, x_max=7.0).values
    assert np.allclose(mix, 0.3 * fa + 0.7 * fb, atol=1e-13)


def test_cat_round_trip_warns_about_truncation():
    state = cat_state(1.5, "even")
    with pytest.warns(BoundaryWarning):
        field = inverse_radon(sampler(state), GRID)
    assert np.abs(field.values - wigner_grid(state, GRID).values).max() < 1e-2
    assert field.meta["error_estimate"] < 1e-2


def test_unresolved_reconstruction_raises():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BoundaryWarning)
        with pytest.raises(ConvergenceError):
            inverse_radon(sampler(cat_state(2.5, "odd")), GRID, n_theta=16, rho_panels=2, tol=1e-4)
