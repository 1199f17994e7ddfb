"""Wigner functions of Gaussian superpositions.

For psi = N sum_j c_j g_j the Wigner function

    W(x, p) = 1/(2 pi hbar) int psi(x + xi/2) psi*(x - xi/2) exp(-i p xi / hbar) dxi

is a double sum over term pairs of closed-form Gaussian integrals. It is
normalized so that the integral of W over dx dp is 1; the vacuum has
W(0, 0) = 1/pi.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad_vec

from . import _kernels
from .errors import BoundaryWarning, ConsistencyError, ConvergenceError, RangeError
from .gaussian import ComplexGaussian, SuperposedState, gaussian_integral
from .groups import GroupSpec, SeedGaussian, character, group_angles, rotate_params, seed_term, symmetric_state

RESIDUE_TOL = 1e-10
EDGE_TOL = 1e-8


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Rectangular (x, p) grid, endpoints included."""

    x_min: float = -6.0
    x_max: float = 6.0
    p_min: float = -6.0
    p_max: float = 6.0
    nx: int = 201
    n_p: int = 201
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.p_min < self.p_max):
            raise RangeError("grid needs x_min < x_max and p_min < p_max")
        if self.nx < 2 or self.n_p < 2:
            raise RangeError("grid needs at least 2 points per axis")
        if not self.hbar > 0:
            raise RangeError("hbar must be positive")

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    @property
    def p(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.n_p)

    def mesh(self):
        return np.meshgrid(self.x, self.p, indexing="ij")


@dataclass(frozen=True, eq=False)
class FieldGrid:
    """Real values on a 2-D grid, ``values[i, j]`` at (axes[0][i], axes[1][j])."""

    values: np.ndarray
    axes: tuple
    provenance: str = "closed-form"
    target: str = "wigner"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        (n0, a0), (n1, a1) = self.axes
        a0 = np.asarray(a0, dtype=float)
        a1 = np.asarray(a1, dtype=float)
        if values.shape != (a0.size, a1.size):
            raise ValueError(f"values shape {values.shape} does not match axes ({a0.size}, {a1.size})")
        if not np.all(np.isfinite(values)):
            raise ValueError("field values must be finite")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "axes", ((str(n0), a0), (str(n1), a1)))

    @property
    def axis_names(self):
        return self.axes[0][0], self.axes[1][0]


def wigner_pair_kernel(g_r: ComplexGaussian, g_s: ComplexGaussian, x, p, hbar=1.0):
    """Coefficient-free pair integral

        int g_r*(x - xi/2) g_s(x + xi/2) exp(-i p xi / hbar) dxi.

    Hermitian: kernel(g_r, g_s) = conj(kernel(g_s, g_r)).
    """
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    ar, br, cr = g_r.A.conjugate(), g_r.B.conjugate(), g_r.C.conjugate()
    a_quad = 0.25 * (ar + g_s.A)
    b_lin = (ar - g_s.A) * x + 0.5 * (g_s.B - br) - 1j * p / hbar
    rest = np.exp(cr + g_s.C - (ar + g_s.A) * x * x + (br + g_s.B) * x)
    out = rest * gaussian_integral(a_quad, b_lin)
    return complex(out) if np.ndim(out) == 0 else out


def _check_residue(values, what):
    resid = np.abs(values.imag)
    bad = resid > RESIDUE_TOL * (1.0 + np.abs(values.real))
    if np.any(bad):
        worst = float(resid.max())
        raise ConsistencyError(f"{what} has imaginary residue {worst:.3e}; pair sum is not Hermitian")


def wigner_values(state: SuperposedState, x, p, hbar=1.0):
    """Closed-form W at broadcast arrays of points."""
    x, p = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(p, dtype=float))
    shape = x.shape
    A, B, C = state.params
    table = _kernels.wigner_pair_table(A, B, C, state.coefficients)
    xf = np.ascontiguousarray(x, dtype=float).ravel()
    pf = np.ascontiguousarray(p / hbar, dtype=float).ravel()
    raw = _kernels.wigner_sum(table, xf, pf)
    values = state.norm_constant ** 2 / (2.0 * math.pi * hbar) * raw
    _check_residue(values, "Wigner sum")
    return values.real.reshape(shape)


def wigner_point(state: SuperposedState, x: float, p: float, hbar=1.0) -> float:
    return float(wigner_values(state, x, p, hbar))


def wigner_grid(state: SuperposedState, grid: PhaseSpaceGrid) -> FieldGrid:
    X, P = grid.mesh()
    values = wigner_values(state, X, P, grid.hbar)
    return FieldGrid(values, (("x", grid.x), ("p", grid.p)), "closed-form", "wigner", {"hbar": grid.hbar})


def wigner_oracle(state: SuperposedState, x, p, hbar=1.0, epsabs=1e-12, limit=20000):
    """W by adaptive quadrature of the defining xi integral of the term-sum wavefunction.

    Vectorized over points: one adaptive Gauss-Kronrod run refines until the
    largest error over all points is below ``epsabs`` (before the 1/(2 pi hbar)
    factor). The xi window is cut where every term is below exp(-50) of its peak.
    """
    x, p = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(p, dtype=float))
    shape = x.shape
    xf, pf = x.ravel(), p.ravel() / hbar
    half = state.position_extent + (float(np.max(np.abs(xf))) if xf.size else 0.0)

    def integrand(xi):
        return state(xf + 0.5 * xi) * np.conj(state(xf - 0.5 * xi)) * np.exp(-1j * pf * xi)

    res, err, info = quad_vec(
        integrand, -2.0 * half, 2.0 * half, epsabs=epsabs, epsrel=1e-14, norm="max", limit=limit,
        full_output=True,
    )
    if info.status == 1 or (info.status == 2 and err > 10 * epsabs):
        raise ConvergenceError(f"Wigner quadrature stopped early: {info.message} (error {err:.2e})")
    values = res / (2.0 * math.pi * hbar)
    out = values.real.reshape(shape)
    return float(out) if out.ndim == 0 else out


def negativity_volume(state: SuperposedState, grid: PhaseSpaceGrid) -> float:
    """Integral of max(0, -W) over the grid (trapezoidal rule)."""
    W = wigner_grid(state, grid).values
    edge = max(np.abs(W[0]).max(), np.abs(W[-1]).max(), np.abs(W[:, 0]).max(), np.abs(W[:, -1]).max())
    if edge > EDGE_TOL:
        warnings.warn(f"Wigner function reaches {edge:.2e} on the grid boundary", BoundaryWarning, stacklevel=2)
    neg = np.maximum(0.0, -W)
    return float(np.trapezoid(np.trapezoid(neg, grid.p, axis=1), grid.x))


# --- explicit four-family assembly for dihedral states ---------------------

def expanded_pair_wigner(ar, br, lr, as_, bs, ls, x, p, hbar=1.0):
    """Pair integral written out as the expanded exponent in (x, p).

    ``lr`` and ``ls`` are log-prefactors, so c_r* c_s = exp(conj(lr) + ls). The
    square root uses a_r* + a_s, matching the denominators of the exponent.
    """
    arc, brc = np.conj(ar), np.conj(br)
    D = arc + as_
    expo = (
        -4.0 * arc * as_ / D * x * x
        - p * p / (D * hbar ** 2)
        + 2j * p * x * (as_ - arc) / (hbar * D)
        + 2.0 * (arc * bs + as_ * brc) / D * x
        + 1j * p * (brc - bs) / (hbar * D)
        + (brc - bs) ** 2 / (4.0 * D)
    )
    return 2.0 * np.sqrt(np.pi / D) * np.exp(np.conj(lr) + ls + expo)


def dihedral_wigner_four_kernel(seed: SeedGaussian, group: GroupSpec, x, p, hbar=1.0):
    """Dihedral W assembled as four pair-integral families over the n rotations.

    The families differ by which of the two rotated packets is conjugated;
    each one reuses the expanded pair formula with a -> a*, b -> b*,
    prefactor -> prefactor* substituted on the conjugated side. Used to check
    the flat 2n-term evaluation.
    """
    if group.kind != "dihedral":
        raise RangeError("four-kernel assembly applies to dihedral groups")
    state = symmetric_state(seed, group)
    x, p = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(p, dtype=float))
    rotated = []
    for j, theta in enumerate(group_angles(group.n)):
        a_j, b_j = rotate_params(seed, theta)
        rotated.append((character(group.n, group.lam, j + 1), a_j, b_j, seed_term(a_j, b_j).C))
    conj = np.conj
    total = np.zeros(x.shape, dtype=complex)
    for chi_r, ar, br, lr in rotated:
        for chi_s, as_, bs, ls in rotated:
            plain_plain = expanded_pair_wigner(ar, br, lr, as_, bs, ls, x, p, hbar)
            plain_conj = expanded_pair_wigner(ar, br, lr, conj(as_), conj(bs), conj(ls), x, p, hbar)
            conj_plain = expanded_pair_wigner(conj(ar), conj(br), conj(lr), as_, bs, ls, x, p, hbar)
            conj_conj = expanded_pair_wigner(conj(ar), conj(br), conj(lr), conj(as_), conj(bs), conj(ls), x, p, hbar)
            total += (
                chi_r * conj(chi_s) * plain_plain
                + chi_r * chi_s * plain_conj
                + conj(chi_r) * conj(chi_s) * conj_plain
                + conj(chi_r) * chi_s * conj_conj
            )
    values = state.norm_constant ** 2 / (2.0 * math.pi * hbar) * total
    _check_residue(values, "four-kernel Wigner sum")
    return values.real
