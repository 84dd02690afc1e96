"""Dense complex-matrix kernel.

Matrices are plain ``numpy`` complex arrays. Eigenvalues come from a cyclic
Jacobi sweep that operates on whole stacks of Hermitian matrices at once, so
the measures can push every commutator of a state through a single call.
"""
from __future__ import annotations

from enum import Enum
from functools import lru_cache

import numpy as np

HERMITIAN_TOL = 1e-10
CLAMP_TOL = 1e-12
JACOBI_RTOL = 1e-13
MAX_SWEEPS = 100


class NumericalError(RuntimeError):
    """Raised when an iterative kernel fails to converge."""


class NotHermitianError(ValueError):
    pass


class Subsystem(str, Enum):
    A = "A"
    B = "B"


def as_matrix(m, name="matrix") -> np.ndarray:
    """Coerce ``m`` to a finite complex128 array with at least two axes."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim < 2:
        raise ValueError(f"{name} must be at least two-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf entries")
    return arr


def _square(m: np.ndarray, name="matrix") -> np.ndarray:
    if m.shape[-1] != m.shape[-2]:
        raise ValueError(f"{name} must be square, got shape {m.shape[-2:]}")
    return m


def adjoint(m) -> np.ndarray:
    m = as_matrix(m)
    return np.conj(np.swapaxes(m, -1, -2))


def commutator(x, y) -> np.ndarray:
    """Return ``xy - yx``; leading axes broadcast."""
    x = _square(as_matrix(x, "x"), "x")
    y = _square(as_matrix(y, "y"), "y")
    if x.shape[-1] != y.shape[-1]:
        raise ValueError(f"dimension mismatch: {x.shape[-1]} vs {y.shape[-1]}")
    return x @ y - y @ x


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


@lru_cache(maxsize=None)
def _off_mask(n: int) -> np.ndarray:
    return ~np.eye(n, dtype=bool)


def _off_norm(a: np.ndarray) -> np.ndarray:
    mask = _off_mask(a.shape[-1])
    return np.sqrt(np.sum(np.abs(a[:, mask]) ** 2, axis=-1))


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Circle-method schedule: n-1 rounds of disjoint (p, q) pairs, p < q, covering each pair once."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[k], players[m - 1 - k]) for k in range(m // 2)]
        pairs = [(min(x, y), max(x, y)) for x, y in pairs if x < n and y < n]
        rounds.append((np.array([x for x, _ in pairs]), np.array([y for _, y in pairs])))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return tuple(rounds)


def hermitian_eigenvalues(h) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix (or a stack of them), ascending.

    Cyclic Jacobi with round-robin ordering: every sweep visits each ``(p, q)``
    pair once, in rounds of disjoint pairs whose zeroing rotations are applied
    together. Iteration stops when the off-diagonal Frobenius mass of every
    matrix in the stack drops to ``1e-13`` times its Frobenius norm.

    Raises
    ------
    NotHermitianError
        If any entry of ``h - h^dagger`` exceeds 1e-10 in modulus.
    NumericalError
        If the sweep limit is reached before convergence.
    """
    h = _square(as_matrix(h, "h"), "h")
    dev = np.max(np.abs(h - adjoint(h))) if h.size else 0.0
    if dev > HERMITIAN_TOL:
        raise NotHermitianError(f"matrix is not Hermitian (max |h - h^dagger| = {dev:.3e})")

    return _jacobi_eigenvalues(0.5 * (h + adjoint(h)))


def _jacobi_eigenvalues(h: np.ndarray) -> np.ndarray:
    """Jacobi core without input checks; ``h`` must already be Hermitian."""
    shape = h.shape
    n = shape[-1]
    a = h.reshape(-1, n, n).copy()
    if n == 1:
        return a[:, 0, 0].real.reshape(shape[:-1])

    tol = JACOBI_RTOL * np.sqrt(np.sum(np.abs(a) ** 2, axis=(-1, -2)))
    tiny = np.finfo(float).tiny
    for _ in range(MAX_SWEEPS):
        if np.all(_off_norm(a) <= tol):
            break
        for ps, qs in _round_robin(n):
            apq = a[:, ps, qs]
            g = np.abs(apq)
            active = g > tiny
            if not active.any():
                continue
            g_safe = np.where(active, g, 1.0)
            phase = np.where(active, apq / g_safe, 1.0)
            tau = (a[:, qs, qs].real - a[:, ps, ps].real) / (2.0 * g_safe)
            sgn = np.where(tau >= 0, 1.0, -1.0)
            t = sgn / (np.abs(tau) + np.hypot(1.0, tau))
            c = np.where(active, 1.0 / np.hypot(1.0, t), 1.0)
            s = np.where(active, t * c, 0.0)
            # A <- G^H A G, G[:, p] = c e_p - s conj(phase) e_q, G[:, q] = s e_p + c conj(phase) e_q
            cp = a[:, :, ps]
            cq = a[:, :, qs] * np.conj(phase)[:, None, :]
            a[:, :, ps] = c[:, None, :] * cp - s[:, None, :] * cq
            a[:, :, qs] = s[:, None, :] * cp + c[:, None, :] * cq
            rp = a[:, ps, :]
            rq = a[:, qs, :] * phase[:, :, None]
            a[:, ps, :] = c[:, :, None] * rp - s[:, :, None] * rq
            a[:, qs, :] = s[:, :, None] * rp + c[:, :, None] * rq
            a[:, ps, qs] = 0.0
            a[:, qs, ps] = 0.0
    else:
        if not np.all(_off_norm(a) <= tol):
            raise NumericalError(f"Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps")

    vals = np.sort(np.real(np.diagonal(a, axis1=-2, axis2=-1)), axis=-1)
    return vals.reshape(shape[:-1])


def singular_values(x) -> np.ndarray:
    """Singular values, descending, as square roots of the spectrum of x^dagger x."""
    x = as_matrix(x, "x")
    g = adjoint(x) @ x
    ev = _jacobi_eigenvalues(0.5 * (g + adjoint(g)))
    ev = np.where((ev < 0) & (ev >= -CLAMP_TOL), 0.0, ev)
    if np.any(ev < 0):
        raise NumericalError(f"x^dagger x has eigenvalue {ev.min():.3e} below the clamp window")
    return np.sqrt(ev)[..., ::-1]


def trace_norm(x):
    """Schatten-1 norm. Returns a float, or an array for stacked input."""
    out = np.sum(singular_values(x), axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def hs_norm(x):
    """Hilbert-Schmidt (Frobenius) norm."""
    x = as_matrix(x, "x")
    out = np.sqrt(np.sum(np.abs(x) ** 2, axis=(-1, -2)))
    return float(out) if np.ndim(out) == 0 else out


def partial_trace(rho, dA: int, dB: int, keep) -> np.ndarray:
    """Reduced matrix on subsystem ``keep`` with composite index ``i*dB + j``."""
    rho = as_matrix(rho, "rho")
    if rho.shape[-2:] != (dA * dB, dA * dB):
        raise ValueError(f"rho has shape {rho.shape[-2:]}, expected {(dA * dB, dA * dB)}")
    keep = Subsystem(keep)
    t = rho.reshape(rho.shape[:-2] + (dA, dB, dA, dB))
    if keep is Subsystem.A:
        return np.einsum("...ijkj->...ik", t)
    return np.einsum("...ijil->...jl", t)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary from QR of a complex Ginibre matrix, R diagonal made positive."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))
