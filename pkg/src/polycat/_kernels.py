"""Point loops of the Wigner and tomogram double sums.

Each sum has a numba implementation (``*_jit``, parallel over evaluation points,
sequential over term pairs) and a chunked numpy implementation (``*_numpy``).
The public names ``wigner_sum``, ``tomogram_amplitude`` and ``tomogram_pair_sum``
point at the numba versions unless numba is missing or ``POLYCAT_NO_NUMBA`` is
set to a true value when this module is imported.

All kernels take flattened float64 point arrays and return complex128 arrays;
physical prefactors (N^2, 1/(2 pi hbar), ...) are applied by the callers.
"""
import os

import numpy as np

_CHUNK = 2048


def numba_disabled_by_env() -> bool:
    return os.environ.get("POLYCAT_NO_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


try:
    import numba

    # the bundled TBB can be too old for numba; try OpenMP first
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "tbb", "workqueue"]
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not numba_disabled_by_env()
BACKEND = "numba" if USE_NUMBA else "numpy"


# --- pair tables (shared by both backends) ---------------------------------

def wigner_pair_table(A, B, C, coef):
    """Constants of the Wigner kernel for every ordered pair (r, s), flattened.

    With D = A_r* + A_s the pair term at (x, p) is
        pref * exp(sC - D x^2 + sB x + beta^2 / D),
        beta = dA x + dB - i p,
    which is the completed square of the xi integral of
    g_r*(x - xi/2) g_s(x + xi/2) exp(-i p xi).
    """
    Ar, As = np.conj(A)[:, None], A[None, :]
    Br, Bs = np.conj(B)[:, None], B[None, :]
    Cr, Cs = np.conj(C)[:, None], C[None, :]
    D = Ar + As
    pref = 2.0 * np.sqrt(np.pi / D) * np.conj(coef)[:, None] * coef[None, :]
    table = (D, pref, Ar - As, 0.5 * (Bs - Br), Br + Bs, Cr + Cs)
    return tuple(np.ascontiguousarray(t, dtype=np.complex128).ravel() for t in table)


def tomogram_pair_table(A, B, C, coef):
    """Per-pair constants (a_r*, a_r', b_r*, b_r', C_r* + C_r', c_r* c_r')."""
    ar, a2 = np.conj(A)[:, None], A[None, :]
    br, b2 = np.conj(B)[:, None], B[None, :]
    n = A.size
    table = (
        np.broadcast_to(ar, (n, n)),
        np.broadcast_to(a2, (n, n)),
        np.broadcast_to(br, (n, n)),
        np.broadcast_to(b2, (n, n)),
        np.conj(C)[:, None] + C[None, :],
        np.conj(coef)[:, None] * coef[None, :],
    )
    return tuple(np.ascontiguousarray(t, dtype=np.complex128).ravel() for t in table)


# --- numpy implementations --------------------------------------------------

def wigner_sum_numpy(table, x, p):
    D, pref, dA, dB, sB, sC = table
    invD = 1.0 / D
    out = np.empty(x.size, dtype=np.complex128)
    for lo in range(0, x.size, _CHUNK):
        xs = x[lo:lo + _CHUNK, None]
        ps = p[lo:lo + _CHUNK, None]
        beta = dA * xs + dB - 1j * ps
        expo = sC - D * xs * xs + sB * xs + beta * beta * invD
        out[lo:lo + _CHUNK] = (pref * np.exp(expo)).sum(axis=1)
    return out


def tomogram_amplitude_numpy(A, B, C, coef, X, mu, nu):
    out = np.empty(X.size, dtype=np.complex128)
    for lo in range(0, X.size, _CHUNK):
        Xs = X[lo:lo + _CHUNK, None]
        ms = mu[lo:lo + _CHUNK, None]
        ns = nu[lo:lo + _CHUNK, None]
        a = A - 0.5j * ms / ns
        b = B - 1j * Xs / ns
        out[lo:lo + _CHUNK] = (coef * np.sqrt(np.pi / a) * np.exp(C + b * b / (4.0 * a))).sum(axis=1)
    return out


def tomogram_pair_sum_numpy(table, X, theta, s):
    ar, a2, br, b2, sC, cc = table
    out = np.empty(X.size, dtype=np.complex128)
    s2 = s * s
    for lo in range(0, X.size, _CHUNK):
        Xs = X[lo:lo + _CHUNK, None]
        c = np.cos(theta[lo:lo + _CHUNK, None])
        sn = np.sin(theta[lo:lo + _CHUNK, None])
        D1 = s2 * c + 2j * a2 * sn
        D2 = s2 * c - 2j * sn * ar
        prod = D1 * D2
        expo = (
            -s2 * Xs * Xs * (ar + a2) / prod
            + Xs * (s * br / D2 + s * b2 / D1)
            + 0.5 * sn * (br * br / (2.0 * sn * ar + 1j * s2 * c) + b2 * b2 / (2.0 * a2 * sn - 1j * s2 * c))
        )
        out[lo:lo + _CHUNK] = (cc * (2.0 * np.pi * abs(s)) / np.sqrt(prod) * np.exp(sC + expo)).sum(axis=1)
    return out


# --- numba implementations --------------------------------------------------

if HAVE_NUMBA:

    @numba.njit(parallel=True, cache=True)
    def _wigner_sum_jit(D, pref, dA, dB, sB, sC, x, p, out):
        invD = 1.0 / D
        for i in numba.prange(x.size):
            xi = x[i]
            pi = p[i]
            acc = 0j
            for k in range(D.size):
                beta = dA[k] * xi + dB[k] - 1j * pi
                acc += pref[k] * np.exp(sC[k] - D[k] * xi * xi + sB[k] * xi + beta * beta * invD[k])
            out[i] = acc

    @numba.njit(parallel=True, cache=True)
    def _tomogram_amplitude_jit(A, B, C, coef, X, mu, nu, out):
        for i in numba.prange(X.size):
            acc = 0j
            for j in range(A.size):
                a = A[j] - 0.5j * mu[i] / nu[i]
                b = B[j] - 1j * X[i] / nu[i]
                acc += coef[j] * np.sqrt(np.pi / a) * np.exp(C[j] + b * b / (4.0 * a))
            out[i] = acc

    @numba.njit(parallel=True, cache=True)
    def _tomogram_pair_sum_jit(ar, a2, br, b2, sC, cc, X, theta, s, out):
        s2 = s * s
        scale = 2.0 * np.pi * abs(s)
        for i in numba.prange(X.size):
            x = X[i]
            c = np.cos(theta[i])
            sn = np.sin(theta[i])
            acc = 0j
            for k in range(ar.size):
                D1 = s2 * c + 2j * a2[k] * sn
                D2 = s2 * c - 2j * sn * ar[k]
                prod = D1 * D2
                expo = (
                    -s2 * x * x * (ar[k] + a2[k]) / prod
                    + x * (s * br[k] / D2 + s * b2[k] / D1)
                    + 0.5 * sn * (br[k] * br[k] / (2.0 * sn * ar[k] + 1j * s2 * c)
                                  + b2[k] * b2[k] / (2.0 * a2[k] * sn - 1j * s2 * c))
                )
                acc += cc[k] * scale / np.sqrt(prod) * np.exp(sC[k] + expo)
            out[i] = acc


def wigner_sum_jit(table, x, p):
    out = np.empty(x.size, dtype=np.complex128)
    _wigner_sum_jit(*table, x, p, out)
    return out


def tomogram_amplitude_jit(A, B, C, coef, X, mu, nu):
    out = np.empty(X.size, dtype=np.complex128)
    _tomogram_amplitude_jit(A, B, C, coef, X, mu, nu, out)
    return out


def tomogram_pair_sum_jit(table, X, theta, s):
    out = np.empty(X.size, dtype=np.complex128)
    _tomogram_pair_sum_jit(*table, X, theta, float(s), out)
    return out


if USE_NUMBA:
    wigner_sum = wigner_sum_jit
    tomogram_amplitude = tomogram_amplitude_jit
    tomogram_pair_sum = tomogram_pair_sum_jit
else:
    wigner_sum = wigner_sum_numpy
    tomogram_amplitude = tomogram_amplitude_numpy
    tomogram_pair_sum = tomogram_pair_sum_numpy


def set_threads(n: int) -> None:
    """Cap the numba thread pool; a no-op on the numpy backend."""
    if USE_NUMBA and n:
        numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))
