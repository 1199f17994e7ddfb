import cmath
import math
import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import IntegrationWarning, quad

from polycat import ComplexGaussian, DegenerateState, DomainError, coherent_gaussian, gaussian_integral, normalize, overlap, state_norm
from polycat.gaussian import SuperposedState, overlap_matrix

# integral of exp(-a x^2 + b x) over the real line, frozen from adaptive quadrature
QUAD_REFERENCE = [
    ((1 + 1j, 1 - 1j), 0.9291692370589066 - 0.6957132229999428j),
    ((0.3 - 2j, 2 + 0.5j), 0.37292981160401206 + 0.976725922321906j),
]

finite = st.floats(-3.0, 3.0, allow_nan=False)
positive = st.floats(0.1, 3.0, allow_nan=False)


def mp_gaussian_integral(a, b):
    """Reference by mpmath quadrature on panels around the peak of |integrand|."""
    x0, width = b.real / (2 * a.real), 1 / math.sqrt(a.real)
    with mpmath.workdps(20):
        am, bm = mpmath.mpc(a), mpmath.mpc(b)
        edges = mpmath.linspace(x0 - 12 * width, x0 + 12 * width, 49)
        return complex(mpmath.quad(lambda x: mpmath.exp(-am * x * x + bm * x), edges))


def quad_complex(f, lo=-np.inf, hi=np.inf):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        re = quad(lambda x: f(x).real, lo, hi, epsabs=1e-13, limit=400)[0]
        im = quad(lambda x: f(x).imag, lo, hi, epsabs=1e-13, limit=400)[0]
    return re + 1j * im


@pytest.mark.parametrize("args, expected", QUAD_REFERENCE)
def test_gaussian_integral_frozen(args, expected):
    assert abs(gaussian_integral(*args) - expected) < 1e-12


@given(positive, finite, finite, finite)
@settings(max_examples=25, deadline=None)
def test_gaussian_integral_against_mpmath(ar, ai, br, bi):
    a, b = complex(ar, ai), complex(br, bi)
    ref = mp_gaussian_integral(a, b)
    assert abs(gaussian_integral(a, b) - ref) <= 1e-12 * (1 + abs(ref))


def test_gaussian_integral_vectorizes():
    b = np.array([0.0, 1.0, 1j])
    out = gaussian_integral(1.0, b)
    assert out.shape == (3,)
    assert out[0] == pytest.approx(math.sqrt(math.pi))


@pytest.mark.parametrize("a", [0.0, -1.0, 1j, -0.5 + 2j])
def test_divergent_integral_rejected(a):
    with pytest.raises(DomainError):
        gaussian_integral(a, 0.0)


@given(positive, finite, finite, finite)
@settings(max_examples=40, deadline=None)
def test_normalize_gives_unit_norm(ar, ai, br, bi):
    g = normalize(complex(ar, ai), complex(br, bi))
    assert overlap(g, g).real == pytest.approx(1.0, abs=1e-12)
    assert abs(overlap(g, g).imag) < 1e-12


def test_overlap_against_quadrature():
    g1 = ComplexGaussian(0.7 + 0.2j, 0.5 - 1j, 0.1 + 0.3j)
    g2 = ComplexGaussian(1.2 - 0.4j, -0.3 + 0.2j, -0.2j)
    ref = quad_complex(lambda x: np.conj(g1(x)) * g2(x))
    assert abs(overlap(g1, g2) - ref) < 1e-11


@given(finite, finite, finite, finite)
@settings(max_examples=30, deadline=None)
def test_coherent_overlap_formula(ar, ai, br, bi):
    alpha, beta = complex(ar, ai), complex(br, bi)
    expected = cmath.exp(-abs(alpha) ** 2 / 2 - abs(beta) ** 2 / 2 + alpha.conjugate() * beta)
    assert abs(overlap(coherent_gaussian(alpha), coherent_gaussian(beta)) - expected) < 1e-12


def test_wigner_moments_of_coherent_state():
    mean, cov = coherent_gaussian(1 + 2j).wigner_moments()
    assert np.allclose(mean, [math.sqrt(2), 2 * math.sqrt(2)])
    assert np.allclose(cov, 0.5 * np.eye(2))


def test_overlap_matrix_is_hermitian():
    gs = [coherent_gaussian(z) for z in (0.0, 1.0, 1j, -0.5 + 0.5j)]
    S = overlap_matrix(gs)
    assert np.allclose(S, S.conj().T, atol=1e-14)
    assert np.allclose(np.diag(S), 1.0)


def test_state_norm_rejects_cancelling_terms():
    g = coherent_gaussian(0.3)
    with pytest.raises(DegenerateState):
        state_norm([(1.0, g), (-1.0, g)])


def test_superposed_state_evaluates_normalized_wavefunction():
    state = SuperposedState.from_terms([(1.0, coherent_gaussian(1.0)), (1.0, coherent_gaussian(-1.0))])
    mass = quad(lambda x: abs(state(x)) ** 2, -np.inf, np.inf, epsabs=1e-13)[0]
    assert mass == pytest.approx(1.0, abs=1e-10)
    assert state.norm_squared() == pytest.approx(1.0, abs=1e-12)
