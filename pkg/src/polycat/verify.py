"""Oracle suites: every closed form checked against an independent route."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.integrate import quad_vec

from . import _kernels
from .errors import PolycatError
from .groups import cat_state, gram_matrix
from .scenario import PRESETS, Scenario, parse_scenario, serialize_scenario
from .tomogram import RADON_CONVENTION, optical_tomogram, radon_oracle, symplectic_tomogram
from .wigner import dihedral_wigner_four_kernel, wigner_oracle, wigner_values


@dataclass
class Check:
    name: str
    passed: bool
    worst_error: float | None  # None when the check raised
    tolerance: float
    detail: str = ""


def _run(name, tolerance, fn):
    try:
        worst = float(fn())
    except PolycatError as exc:
        return Check(name, False, None, tolerance, f"{type(exc).__name__}: {exc}")
    return Check(name, bool(worst <= tolerance), worst, tolerance)


def check_wigner_oracle(state, rng, npoints=40, box=4.0, tol=1e-8):
    """Closed form vs quadrature, error scaled by (1 + |oracle|)."""
    def run():
        x, p = rng.uniform(-box, box, (2, npoints))
        ref = wigner_oracle(state, x, p)
        return np.max(np.abs(wigner_values(state, x, p) - ref) / (1.0 + np.abs(ref)))
    return _run("wigner_oracle", tol, run)


def check_rotation(state, n, rng, npoints=100, box=4.0, tol=1e-10):
    def run():
        x, p = rng.uniform(-box, box, (2, npoints))
        c, s = math.cos(2 * math.pi / n), math.sin(2 * math.pi / n)
        return np.max(np.abs(wigner_values(state, c * x - s * p, s * x + c * p) - wigner_values(state, x, p)))
    return _run("rotation_symmetry", tol, run)


def check_mirror(state, rng, npoints=100, box=4.0, tol=1e-10):
    def run():
        x, p = rng.uniform(-box, box, (2, npoints))
        return np.max(np.abs(wigner_values(state, x, -p) - wigner_values(state, x, p)))
    return _run("mirror_symmetry", tol, run)


def check_four_kernel(scenario, state, rng, npoints=40, box=4.0, tol=1e-12):
    def run():
        x, p = rng.uniform(-box, box, (2, npoints))
        four = dihedral_wigner_four_kernel(scenario.seed_gaussian(), scenario.group, x, p)
        return np.max(np.abs(four - wigner_values(state, x, p)))
    return _run("four_kernel_wigner", tol, run)


def check_two_route(state, s, rng, nsamples=30, tol=1e-10):
    def run():
        theta = rng.uniform(0.0, 2.0 * math.pi, nsamples)
        X = rng.uniform(-5.0, 5.0, nsamples)
        kernel_route = optical_tomogram(state, X, theta, s)
        amplitude_route = symplectic_tomogram(state, X, s * np.cos(theta), np.sin(theta) / s)
        return np.max(np.abs(kernel_route - amplitude_route))
    return _run("tomogram_two_route", tol, run)


def check_radon(state, rng, ndirections=5, per_direction=4, tol=1e-6):
    def run():
        worst = 0.0
        for _ in range(ndirections):
            theta = rng.uniform(0.0, 2.0 * math.pi)
            s = rng.uniform(0.5, 2.0)
            mu, nu = s * math.cos(theta), math.sin(theta) / s
            X = rng.uniform(-4.0, 4.0, per_direction)
            diff = radon_oracle(state, X, mu, nu) - symplectic_tomogram(state, X, mu, nu)
            worst = max(worst, float(np.max(np.abs(diff))))
        return worst
    return _run("radon_consistency", tol, run)


def tomogram_masses(state, thetas, s=1.0):
    """Integral over X of the optical tomogram at each angle (adaptive quadrature)."""
    thetas = np.asarray(thetas, dtype=float)
    reach = state.extent * max(s, 1.0 / s)
    res, _ = quad_vec(lambda X: optical_tomogram(state, X, thetas, s), -reach, reach,
                      epsabs=1e-13, epsrel=1e-14, norm="max")
    return res


def check_normalization(state, s, tol=1e-8):
    def run():
        return np.max(np.abs(tomogram_masses(state, np.pi * np.arange(8) / 8, s) - 1.0))
    return _run("tomogram_normalization", tol, run)


def check_orthogonality(scenario, tol=1e-10):
    def run():
        g = gram_matrix(scenario.seed_gaussian(), scenario.group.kind, scenario.group.n)
        m = g.matrix.copy()
        np.fill_diagonal(m, 0.0)
        m = m[np.isfinite(m)]
        return float(np.max(np.abs(m))) if m.size else 0.0
    return _run("gram_orthogonality", tol, run)


def check_cat_constants(alphas=(0.5, 1.0, 2.0), tol=1e-12):
    def run():
        worst = 0.0
        for alpha in alphas:
            q = math.exp(-2.0 * alpha ** 2)
            worst = max(worst, abs(cat_state(alpha, "even").norm_constant - (2.0 * (1.0 + q)) ** -0.5))
            worst = max(worst, abs(cat_state(alpha, "odd").norm_constant - (2.0 * (1.0 - q)) ** -0.5))
        return worst
    return _run("cat_normalization_constants", tol, run)


def verify_scenario(scenario: Scenario, name: str = "scenario", seed: int = 0) -> dict:
    rng = np.random.default_rng(seed)
    try:
        state = scenario.state()
    except PolycatError as exc:
        return {"scenario": name, "checks": [asdict(Check("construct_state", False, None, 0.0, str(exc)))]}
    s = scenario.tomo_grid.s
    checks = [
        check_wigner_oracle(state, rng),
        check_rotation(state, scenario.group.n, rng),
        check_two_route(state, s, rng),
        check_radon(state, rng),
        check_normalization(state, s),
        check_orthogonality(scenario),
    ]
    if scenario.group.kind == "dihedral":
        checks.append(check_mirror(state, rng))
        checks.append(check_four_kernel(scenario, state, rng))
    return {"scenario": name, "definition": serialize_scenario(scenario).strip().splitlines()[:2],
            "checks": [asdict(c) for c in checks]}


def _passed(suites):
    return all(c["passed"] for suite in suites for c in suite["checks"])


def verify(scenario: Scenario | None = None, run_all: bool = False) -> dict:
    """Run the oracle suites and return a JSON-ready report.

    ``run_all`` covers every preset figure scenario plus the even/odd cat
    normalization constants; otherwise only ``scenario`` is checked.
    """
    suites = []
    if scenario is not None:
        suites.append(verify_scenario(scenario))
    if run_all:
        for i, (name, text) in enumerate(PRESETS.items()):
            suites.append(verify_scenario(parse_scenario(text), name, seed=i))
        suites.append({"scenario": "even_odd_cats", "checks": [asdict(check_cat_constants())]})
    return {
        "passed": _passed(suites),
        "backend": _kernels.BACKEND,
        "conventions": dict(RADON_CONVENTION, hbar=1.0),
        "suites": suites,
    }
