"""Time the numba and numpy backends on Wigner and tomogram grids.

    python3 benchmarks/bench_kernels.py [--size 201] [--repeat 5]

Both backends are imported from the same module, so the env flag is not
needed here; the first numba call (compilation or cache load) is excluded.
"""
import argparse
import time

import numpy as np

from polycat import _kernels
from polycat.scenario import preset


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(size):
    state = preset("dihedral5_wigner").state()
    A, B, C = state.params
    coef = state.coefficients
    axis = np.linspace(-6, 6, size)
    x, p = (m.ravel().copy() for m in np.meshgrid(axis, axis, indexing="ij"))
    # keep clear of nu = 0, where the amplitude route hands over to the position density
    angles = np.linspace(0.05, np.pi - 0.05, size)
    X, theta = (m.ravel().copy() for m in np.meshgrid(axis, angles, indexing="ij"))
    wtab = _kernels.wigner_pair_table(A, B, C, coef)
    ttab = _kernels.tomogram_pair_table(A, B, C, coef)
    mu, nu = np.cos(theta), np.sin(theta)
    return {
        "wigner pair sum": ({"numpy": lambda: _kernels.wigner_sum_numpy(wtab, x, p),
                             "numba": lambda: _kernels.wigner_sum_jit(wtab, x, p)}, len(state) ** 2),
        "tomogram pair sum": ({"numpy": lambda: _kernels.tomogram_pair_sum_numpy(ttab, X, theta, 1.0),
                               "numba": lambda: _kernels.tomogram_pair_sum_jit(ttab, X, theta, 1.0)}, len(state) ** 2),
        "tomogram amplitude": ({"numpy": lambda: _kernels.tomogram_amplitude_numpy(A, B, C, coef, X, mu, nu),
                                "numba": lambda: _kernels.tomogram_amplitude_jit(A, B, C, coef, X, mu, nu)}, len(state)),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=201, help="points per grid axis")
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--threads", type=int, default=0)
    args = parser.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    _kernels.set_threads(args.threads)

    print(f"grid {args.size}x{args.size}, D5 state, best of {args.repeat}")
    print(f"{'kernel':<20}{'terms':>7}{'numpy [ms]':>13}{'numba [ms]':>13}{'speed-up':>10}{'max diff':>11}")
    for name, (impls, terms) in cases(args.size).items():
        diff = np.abs(impls["numba"]() - impls["numpy"]()).max()  # also warms up the jit
        t_np = best_of(impls["numpy"], args.repeat)
        t_nb = best_of(impls["numba"], args.repeat)
        print(f"{name:<20}{terms:>7}{1e3 * t_np:>13.2f}{1e3 * t_nb:>13.2f}{t_np / t_nb:>9.1f}x{diff:>11.1e}")


if __name__ == "__main__":
    main()
