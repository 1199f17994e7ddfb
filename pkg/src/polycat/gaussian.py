"""Complex Gaussian wavepackets and superpositions of them.

Every wavepacket uses the convention

    psi(x) = exp(-A x**2 + B x + C),    Re(A) > 0,

with hbar = 1 in position representation. All complex square roots take the
principal branch of the fully fused argument.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import DegenerateState, DomainError

#: Gram sums at or below this value mark a state annihilated by the projection.
GRAM_THRESHOLD = 1e-12

# Wigner envelope of every term is cut at this many standard deviations.
_EXTENT_SIGMAS = 10.0


def _check_convergent(a, what="a"):
    if np.any(np.real(a) <= 0):
        raise DomainError(f"Re({what}) must be > 0 for a convergent Gaussian integral, got {a!r}")


def gaussian_integral(a, b):
    """Return the integral of exp(-a z**2 + b z) over the real line.

    Equal to sqrt(pi / a) * exp(b**2 / (4 a)). Accepts scalars or broadcastable
    arrays; raises DomainError when Re(a) <= 0.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    _check_convergent(a)
    out = np.sqrt(np.pi / a) * np.exp(b * b / (4.0 * a))
    return complex(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ComplexGaussian:
    """One wavepacket exp(-A x^2 + B x + C)."""

    A: complex
    B: complex = 0j
    C: complex = 0j

    def __post_init__(self):
        for name in ("A", "B", "C"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        _check_convergent(self.A, "A")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.exp(-self.A * x * x + self.B * x + self.C)

    def conj(self) -> "ComplexGaussian":
        """Position-space complex conjugate, psi*(x)."""
        return ComplexGaussian(self.A.conjugate(), self.B.conjugate(), self.C.conjugate())

    def wigner_moments(self):
        """Mean vector and covariance of this packet's (Gaussian) Wigner function.

        Valid for hbar = 1 and independent of C.
        """
        ra, ia = self.A.real, self.A.imag
        cov = 0.25 * np.array(
            [[1.0 / ra, -2.0 * ia / ra], [-2.0 * ia / ra, 4.0 * abs(self.A) ** 2 / ra]]
        )
        x0 = self.B.real / (2.0 * ra)
        p0 = self.B.imag - 2.0 * ia * x0
        return np.array([x0, p0]), cov


def normalize(A, B, phase=0.0) -> ComplexGaussian:
    """Unit-norm Gaussian with given A, B and global phase Im(C) = phase."""
    A = complex(A)
    B = complex(B)
    _check_convergent(A, "A")
    re_c = 0.25 * math.log(2.0 * A.real / math.pi) - B.real ** 2 / (4.0 * A.real)
    return ComplexGaussian(A, B, complex(re_c, phase))


def coherent_gaussian(alpha) -> ComplexGaussian:
    """Glauber coherent state |alpha> centred at (sqrt2 Re alpha, sqrt2 Im alpha)."""
    alpha = complex(alpha)
    c = -0.5 * abs(alpha) ** 2 - 0.5 * alpha * alpha - 0.25 * math.log(math.pi)
    return ComplexGaussian(0.5, math.sqrt(2.0) * alpha, c)


def overlap(g1: ComplexGaussian, g2: ComplexGaussian) -> complex:
    """Inner product <g1|g2> = integral of conj(g1(x)) g2(x)."""
    a = g1.A.conjugate() + g2.A
    b = g1.B.conjugate() + g2.B
    _check_convergent(a)
    # prefactor exp(C1* + C2) folded into the exponent to stay finite for large B
    return complex(np.sqrt(np.pi / a) * np.exp(b * b / (4.0 * a) + g1.C.conjugate() + g2.C))


def overlap_matrix(left: Sequence[ComplexGaussian], right: Sequence[ComplexGaussian] | None = None):
    """Matrix S[i, j] = <left_i | right_j>."""
    right = left if right is None else right
    A1 = np.array([g.A for g in left])[:, None].conj()
    B1 = np.array([g.B for g in left])[:, None].conj()
    C1 = np.array([g.C for g in left])[:, None].conj()
    A2 = np.array([g.A for g in right])[None, :]
    B2 = np.array([g.B for g in right])[None, :]
    C2 = np.array([g.C for g in right])[None, :]
    a = A1 + A2
    b = B1 + B2
    return np.sqrt(np.pi / a) * np.exp(b * b / (4.0 * a) + C1 + C2)


def _split_terms(terms):
    terms = list(terms)
    if not terms:
        raise ValueError("a superposition needs at least one term")
    coefs = np.array([complex(c) for c, _ in terms])
    gaussians = [g for _, g in terms]
    return coefs, gaussians


def state_norm(terms: Iterable[tuple[complex, ComplexGaussian]]) -> float:
    """Normalization constant N = (sum_{r,s} c_r c_s* <g_s|g_r>)**(-1/2).

    Raises DegenerateState when the Gram sum is at or below GRAM_THRESHOLD.
    """
    coefs, gaussians = _split_terms(terms)
    gram = float(np.real(coefs.conj() @ overlap_matrix(gaussians) @ coefs))
    if gram <= GRAM_THRESHOLD:
        raise DegenerateState(f"superposition has vanishing norm (Gram sum {gram:.3e})", gram_sum=gram)
    return 1.0 / math.sqrt(gram)


@dataclass(frozen=True)
class SuperposedState:
    """Normalized superposition N * sum_j c_j g_j of complex Gaussians.

    ``group`` is an optional provenance tag (a GroupSpec for symmetric states).
    """

    terms: tuple
    norm_constant: float
    group: Any = None

    def __post_init__(self):
        terms = tuple((complex(c), g) for c, g in self.terms)
        if not terms:
            raise ValueError("a superposition needs at least one term")
        if not all(isinstance(g, ComplexGaussian) for _, g in terms):
            raise TypeError("terms must be (coefficient, ComplexGaussian) pairs")
        if not self.norm_constant >= 0:
            raise ValueError("norm_constant must be non-negative")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "norm_constant", float(self.norm_constant))

    @classmethod
    def from_terms(cls, terms, group=None) -> "SuperposedState":
        terms = tuple(terms)
        return cls(terms, state_norm(terms), group)

    def __len__(self):
        return len(self.terms)

    @cached_property
    def coefficients(self) -> np.ndarray:
        return np.array([c for c, _ in self.terms], dtype=complex)

    @cached_property
    def gaussians(self) -> tuple:
        return tuple(g for _, g in self.terms)

    @cached_property
    def params(self):
        """Arrays (A, B, C) over terms."""
        A = np.array([g.A for g in self.gaussians], dtype=complex)
        B = np.array([g.B for g in self.gaussians], dtype=complex)
        C = np.array([g.C for g in self.gaussians], dtype=complex)
        return A, B, C

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        A, B, C = self.params
        xs = x[..., None]
        vals = np.exp(-A * xs * xs + B * xs + C) @ self.coefficients
        return self.norm_constant * vals

    def norm_squared(self) -> float:
        c = self.coefficients
        return self.norm_constant ** 2 * float(np.real(c.conj() @ overlap_matrix(self.gaussians) @ c))

    @cached_property
    def extent(self) -> float:
        """Radius of a phase-space disc holding the state's Wigner function.

        Outside it every term's Gaussian envelope is below exp(-50) of its peak.
        """
        radius = 0.0
        for g in self.gaussians:
            mean, cov = g.wigner_moments()
            sigma = math.sqrt(float(np.linalg.eigvalsh(cov)[-1]))
            radius = max(radius, float(np.hypot(*mean)) + _EXTENT_SIGMAS * sigma)
        return radius

    @cached_property
    def position_extent(self) -> float:
        """Half-width of a position window holding the wavefunction's support."""
        reach = 0.0
        for g in self.gaussians:
            mean, cov = g.wigner_moments()
            reach = max(reach, abs(mean[0]) + _EXTENT_SIGMAS * math.sqrt(cov[0, 0]))
        return reach


def inner(left: SuperposedState, right: SuperposedState) -> complex:
    """<left|right> for two normalized superpositions."""
    S = overlap_matrix(left.gaussians, right.gaussians)
    value = left.coefficients.conj() @ S @ right.coefficients
    return complex(left.norm_constant * right.norm_constant * value)
