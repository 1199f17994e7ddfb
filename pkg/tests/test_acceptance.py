"""Acceptance criteria, one test each, at their stated tolerances.

Each test records a PASS/FAIL line that the session summary prints in order.
"""
import math
import time
import warnings

import numpy as np

from polycat import (
    BoundaryWarning, GroupSpec, PhaseSpaceGrid, SeedGaussian, cat_state, gram_matrix, inverse_radon,
    optical_tomogram, radon_oracle, symmetric_state, symplectic_tomogram, wigner_grid, wigner_oracle,
    wigner_values,
)
from polycat.verify import tomogram_masses

SQRT2 = math.sqrt(2.0)
TOMOGRAM_PRESETS = ("cyclic4_tomogram", "cyclic5_tomogram", "dihedral4_tomogram", "dihedral5_tomogram")


def test_01_wigner_matches_quadrature(record, presets):
    axis = np.linspace(-4.0, 4.0, 21)
    x, p = (m.ravel() for m in np.meshgrid(axis, axis, indexing="ij"))
    start = time.perf_counter()
    worst = 0.0
    for name in ("cyclic4_wigner", "cyclic5_wigner", "dihedral4_wigner"):
        state = presets[name].state()
        ref = wigner_oracle(state, x, p)
        worst = max(worst, float(np.max(np.abs(wigner_values(state, x, p) - ref) / (1.0 + np.abs(ref)))))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-8 and elapsed <= 60.0
    record(1, ok, f"Wigner vs quadrature, 3 x 441 points: worst {worst:.2e} (<= 1e-8), {elapsed:.1f} s (<= 60 s)")
    assert worst <= 1e-8
    assert elapsed <= 60.0


def test_02_two_tomogram_routes_agree(record, presets, rng):
    names = list(presets)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(50):
        state = presets[names[rng.integers(len(names))]].state()
        X = rng.uniform(-5.0, 5.0)
        theta = rng.uniform(0.0, 2.0 * math.pi)
        s = rng.uniform(0.5, 2.0)
        a = optical_tomogram(state, X, theta, s)
        b = symplectic_tomogram(state, X, s * math.cos(theta), math.sin(theta) / s)
        worst = max(worst, abs(a - b))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-10 and elapsed <= 10.0
    record(2, ok, f"pair-kernel vs amplitude route, 50 triples: worst {worst:.2e} (<= 1e-10), {elapsed:.2f} s")
    assert worst <= 1e-10
    assert elapsed <= 10.0


def test_03_radon_of_wigner_is_tomogram(record, presets, rng):
    worst = 0.0
    for name in TOMOGRAM_PRESETS:
        state = presets[name].state()
        for _ in range(5):
            theta = rng.uniform(0.0, 2.0 * math.pi)
            mu, nu = math.cos(theta), math.sin(theta)
            X = rng.uniform(-4.0, 4.0)
            worst = max(worst, abs(radon_oracle(state, X, mu, nu) - symplectic_tomogram(state, X, mu, nu)))
    record(3, worst <= 1e-6, f"line integral of W vs tomogram, 20 samples: worst {worst:.2e} (<= 1e-6)")
    assert worst <= 1e-6


def test_04_tomograms_are_normalized(record, presets):
    thetas = np.pi * np.arange(8) / 8
    states = [sc.state() for sc in presets.values()]
    states += [cat_state(2.0, "even"), cat_state(2.0, "odd")]
    worst = max(float(np.max(np.abs(tomogram_masses(st, thetas) - 1.0))) for st in states)
    record(4, worst <= 1e-8, f"integral over X at 8 angles, {len(states)} states: worst {worst:.2e} (<= 1e-8)")
    assert worst <= 1e-8


def test_05_negativity(record, presets):
    odd = symmetric_state(SeedGaussian.coherent(2.0), GroupSpec("cyclic", 2, 2))
    origin_err = abs(wigner_values(odd, 0.0, 0.0) + 1.0 / math.pi)
    minima = {name: float(wigner_grid(sc.state(), sc.phase_grid).values.min()) for name, sc in presets.items()}
    minima["odd_cat_alpha2"] = float(wigner_grid(odd, PhaseSpaceGrid()).values.min())
    highest = max(minima.values())
    ok = origin_err <= 1e-8 and highest < -1e-3
    record(5, ok, f"odd cat |W(0,0) + 1/pi| = {origin_err:.2e} (<= 1e-8); largest grid minimum {highest:.3e} (< -1e-3)")
    assert origin_err <= 1e-8
    assert highest < -1e-3


def test_06_symmetries(record, presets, rng):
    worst_rot = worst_mirror = 0.0
    for sc in presets.values():
        state, n = sc.state(), sc.group.n
        x, p = rng.uniform(-4.0, 4.0, (2, 100))
        c, s = math.cos(2 * math.pi / n), math.sin(2 * math.pi / n)
        w = wigner_values(state, x, p)
        worst_rot = max(worst_rot, float(np.max(np.abs(wigner_values(state, c * x - s * p, s * x + c * p) - w))))
        if sc.group.kind == "dihedral":
            worst_mirror = max(worst_mirror, float(np.max(np.abs(wigner_values(state, x, -p) - w))))
    ok = worst_rot <= 1e-10 and worst_mirror <= 1e-10
    record(6, ok, f"rotation worst {worst_rot:.2e}, mirror worst {worst_mirror:.2e} (both <= 1e-10)")
    assert worst_rot <= 1e-10
    assert worst_mirror <= 1e-10


def test_07_cyclic_family_is_orthogonal(record):
    gram = gram_matrix(SeedGaussian(1.0, SQRT2 * (1 + 1j)), "cyclic", 4)
    off = gram.matrix - np.diag(np.diag(gram.matrix))
    worst = float(np.abs(off).max())
    ok = worst < 1e-10 and not any(gram.degenerate)
    record(7, ok, f"C4 Gram off-diagonal max {worst:.2e} (< 1e-10)")
    assert not any(gram.degenerate)
    assert worst < 1e-10


def test_08_cat_normalization_constants(record):
    worst = 0.0
    for alpha in (0.5, 1.0, 2.0):
        q = math.exp(-2.0 * alpha ** 2)
        worst = max(worst, abs(cat_state(alpha, "even").norm_constant - (2.0 * (1.0 + q)) ** -0.5))
        worst = max(worst, abs(cat_state(alpha, "odd").norm_constant - (2.0 * (1.0 - q)) ** -0.5))
    record(8, worst <= 1e-12, f"N+ and N- for alpha in (0.5, 1, 2): worst {worst:.2e} (<= 1e-12)")
    assert worst <= 1e-12


def test_09_inverse_radon_round_trip(record):
    grid = PhaseSpaceGrid(-3.0, 3.0, -3.0, 3.0, 11, 11)
    start = time.perf_counter()
    errors = {}
    for label, state in (("vacuum", symmetric_state(SeedGaussian.coherent(0.0), GroupSpec("cyclic", 1, 1))),
                         ("even cat 1.5", cat_state(1.5, "even"))):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", BoundaryWarning)
            field = inverse_radon(lambda X, mu, nu, st=state: symplectic_tomogram(st, X, mu, nu), grid)
        errors[label] = float(np.abs(field.values - wigner_grid(state, grid).values).max())
    elapsed = time.perf_counter() - start
    worst = max(errors.values())
    ok = worst <= 1e-2 and elapsed <= 300.0
    detail = ", ".join(f"{k} {v:.2e}" for k, v in errors.items())
    record(9, ok, f"reconstruction on 11x11: {detail} (<= 1e-2), {elapsed:.1f} s (<= 300 s)")
    assert worst <= 1e-2
    assert elapsed <= 300.0


def _local_maxima(X, w):
    inner = (w[1:-1] > w[:-2]) & (w[1:-1] > w[2:])
    return X[1:-1][inner]


def test_10_three_fringe_maxima(record):
    alpha = 3.0
    state = symmetric_state(SeedGaussian.coherent(alpha), GroupSpec("cyclic", 3, 1))
    X = np.linspace(-8.0, 8.0, 16001)
    peaks = _local_maxima(X, optical_tomogram(state, X, 0.0, 1.0))
    targets = [SQRT2 * (alpha * np.exp(2j * np.pi * j / 3)).real for j in range(3)]
    misses = [float(np.min(np.abs(peaks - t))) for t in targets]
    ok = all(m <= 0.1 for m in misses)
    detail = ", ".join(f"j={j}: target {t:+.3f}, nearest max off by {m:.3f}" for j, (t, m) in enumerate(zip(targets, misses)))
    record(10, ok, f"C3 cat maxima (<= 0.1): {detail}")
    assert ok, f"local maxima at {np.round(peaks, 3).tolist()}"
