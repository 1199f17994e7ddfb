"""Cyclic and dihedral superpositions of a rotated Gaussian seed.

A seed phi(x) ~ exp(-a x^2 + b x) is rotated in phase space by
R(theta) = exp(-i theta n) at the n angles theta_j = 2 pi (j - 1) / n, and the
rotated copies are weighted with characters of the cyclic group C_n.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegenerateState, DomainError, RangeError
from .gaussian import ComplexGaussian, SuperposedState, inner, state_norm

KINDS = ("cyclic", "dihedral")

_QUARTER_TURNS = (1 + 0j, 1j, -1 + 0j, -1j)


@dataclass(frozen=True)
class GroupSpec:
    """Symmetry family, group order ``n`` and representation label ``lam`` in 1..n."""

    kind: str
    n: int
    lam: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise RangeError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if int(self.n) != self.n or self.n < 1:
            raise RangeError(f"group order must be a positive integer, got {self.n!r}")
        if int(self.lam) != self.lam or not 1 <= self.lam <= self.n:
            raise RangeError(f"lambda must lie in [1, {self.n}], got {self.lam!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "lam", int(self.lam))

    def with_lam(self, lam: int) -> "GroupSpec":
        return GroupSpec(self.kind, self.n, lam)


@dataclass(frozen=True)
class SeedGaussian:
    """Non-invariant initial state exp(-a x^2 + b x), up to normalization and phase."""

    a: complex
    b: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        if not self.a.real > 0:
            raise DomainError(f"seed needs Re(a) > 0, got a={self.a!r}")

    @classmethod
    def coherent(cls, alpha) -> "SeedGaussian":
        return cls(0.5, math.sqrt(2.0) * complex(alpha))


def character(n: int, lam: int, r: int) -> complex:
    """Character exp(2 pi i (lam - 1)(r - 1) / n) of element r in representation lam."""
    if n < 1 or not 1 <= lam <= n or not 1 <= r <= n:
        raise RangeError(f"need 1 <= lam, r <= n; got n={n}, lam={lam}, r={r}")
    k = ((lam - 1) * (r - 1)) % n
    if (4 * k) % n == 0:
        return _QUARTER_TURNS[(4 * k) // n]
    return cmath.exp(2j * math.pi * k / n)


def group_angles(n: int) -> np.ndarray:
    return 2.0 * math.pi * np.arange(n) / n


def rotate_params(seed: SeedGaussian, theta: float) -> tuple[complex, complex]:
    """Parameters (a_j, b_j) of R(theta) phi; the rotation keeps Re(a_j) > 0."""
    a, b = seed.a, seed.b
    c, s = math.cos(theta), math.sin(theta)
    a_j = (2j * a * c - s) / (2.0 * (1j * c - 2.0 * a * s))
    b_j = b / (c + 2j * a * s)
    return a_j, b_j


def seed_term(a: complex, b: complex) -> ComplexGaussian:
    """Normalized packet with the phase-fixed prefactor

    ((a + a*)/pi * (1 + 2a)/(1 + 2a*))**(1/4) * exp(-(b^2 + |b|^2) / (4 (a + a*))).

    The (1 + 2a)/(1 + 2a*) phase makes the overlap with the vacuum independent of
    rotation, so rotated copies carry the exact phase of R(theta) phi.
    """
    a = complex(a)
    b = complex(b)
    two_re = 2.0 * a.real
    log_pref = (
        0.25 * math.log(two_re / math.pi)
        + 0.25j * cmath.phase((1 + 2 * a) / (1 + 2 * a.conjugate()))
        - (b * b + abs(b) ** 2) / (4.0 * two_re)
    )
    return ComplexGaussian(a, b, log_pref)


def rotated_gaussian(seed: SeedGaussian, theta: float) -> ComplexGaussian:
    return seed_term(*rotate_params(seed, theta))


def _normalized(terms, group):
    try:
        return SuperposedState(tuple(terms), state_norm(terms), group)
    except DegenerateState as exc:
        raise DegenerateState(
            f"{group.kind} lambda={group.lam} projection of the seed vanishes "
            f"(Gram sum {exc.gram_sum:.3e})",
            lam=group.lam,
            gram_sum=exc.gram_sum,
        ) from None


def cyclic_terms(seed: SeedGaussian, group: GroupSpec) -> SuperposedState:
    """n-term state N sum_j chi_j R(theta_j) phi."""
    if group.kind != "cyclic":
        raise RangeError(f"cyclic_terms needs a cyclic group, got {group.kind!r}")
    terms = [
        (character(group.n, group.lam, j + 1), rotated_gaussian(seed, theta))
        for j, theta in enumerate(group_angles(group.n))
    ]
    return _normalized(terms, group)


def dihedral_terms(seed: SeedGaussian, group: GroupSpec) -> SuperposedState:
    """2n-term dihedral state.

    For each rotation r the list holds the conjugated rotated packet weighted by
    chi_r and the plain rotated packet weighted by conj(chi_r); the resulting
    wavefunction is real, which gives the p -> -p mirror symmetry.
    """
    if group.kind != "dihedral":
        raise RangeError(f"dihedral_terms needs a dihedral group, got {group.kind!r}")
    terms = []
    for j, theta in enumerate(group_angles(group.n)):
        chi = character(group.n, group.lam, j + 1)
        g = rotated_gaussian(seed, theta)
        terms.append((chi, g.conj()))
        terms.append((chi.conjugate(), g))
    return _normalized(terms, group)


def symmetric_state(seed: SeedGaussian, group: GroupSpec) -> SuperposedState:
    if group.kind == "cyclic":
        return cyclic_terms(seed, group)
    return dihedral_terms(seed, group)


def cat_state(alpha, parity: str = "even") -> SuperposedState:
    """Even (lam=1) or odd (lam=2) Schroedinger cat N(|alpha> +- |-alpha>)."""
    lam = {"even": 1, "odd": 2}[parity]
    return cyclic_terms(SeedGaussian.coherent(alpha), GroupSpec("cyclic", 2, lam))


class GramResult(NamedTuple):
    matrix: np.ndarray
    degenerate: tuple


def gram_matrix(seed: SeedGaussian, kind: str, n: int) -> GramResult:
    """Inner products between the normalized lam = 1..n states of one seed.

    Rows and columns of degenerate representations are NaN and their labels are
    listed in ``degenerate``.
    """
    states = {}
    degenerate = []
    for lam in range(1, n + 1):
        try:
            states[lam] = symmetric_state(seed, GroupSpec(kind, n, lam))
        except DegenerateState:
            degenerate.append(lam)
    matrix = np.full((n, n), np.nan + 0j)
    for i, si in states.items():
        for j, sj in states.items():
            matrix[i - 1, j - 1] = inner(si, sj)
    return GramResult(matrix, tuple(degenerate))
