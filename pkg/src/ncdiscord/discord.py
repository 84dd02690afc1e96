"""Entropic quantum discord for states with a qubit B subsystem.

Measurements on B are rank-1 projector pairs ``(I +- n.sigma)/2``. The
conditional entropy is minimized over the Bloch axis ``n`` in two stages: a
Fibonacci lattice on the half sphere, then Nelder-Mead in ``(theta, phi)``
from the best lattice points. Entropies are in bits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize

from .blocks import tiles
from .numerics import _jacobi_eigenvalues, as_matrix, hermitian_eigenvalues, partial_trace
from .states import PAULI, DensityMatrix, SchmidtVector, pure_from_schmidt

LATTICE_SIZE = 2000
N_STARTS = 5
SIMPLEX_TOL = 1e-7
P_MIN = 1e-14
ZERO_TOL = 1e-9


@dataclass(frozen=True)
class MeasurementAxis:
    theta: float
    phi: float

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta) % (2 * math.pi))
        object.__setattr__(self, "phi", float(self.phi) % (2 * math.pi))
        # fold onto theta in [0, pi]
        if self.theta > math.pi:
            object.__setattr__(self, "theta", 2 * math.pi - self.theta)
            object.__setattr__(self, "phi", (self.phi + math.pi) % (2 * math.pi))

    @classmethod
    def from_vector(cls, n) -> "MeasurementAxis":
        x, y, z = (float(v) for v in n)
        r = math.sqrt(x * x + y * y + z * z)
        return cls(math.acos(max(-1.0, min(1.0, z / r))), math.atan2(y, x) % (2 * math.pi))

    @property
    def vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        ns = sum(c * s for c, s in zip(self.vector, PAULI))
        eye = np.eye(2)
        return 0.5 * (eye + ns), 0.5 * (eye - ns)


@dataclass(frozen=True)
class DiscordResult:
    value: float
    argmin_axis: MeasurementAxis
    iterations: int
    converged: bool
    lattice_value: float = float("nan")


def _entropy_from_eigs(ev: np.ndarray) -> np.ndarray:
    ev = np.clip(ev, 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(ev > 0, -ev * np.log2(np.where(ev > 0, ev, 1.0)), 0.0)
    return np.sum(terms, axis=-1)


def von_neumann_entropy(rho) -> float:
    """``-Tr(rho log2 rho)`` with ``0 log 0 = 0``."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else as_matrix(rho)
    return float(_entropy_from_eigs(hermitian_eigenvalues(m)))


def mutual_information(rho: DensityMatrix) -> float:
    dA, dB = rho.dims
    sa = von_neumann_entropy(partial_trace(rho.matrix, dA, dB, "A"))
    sb = von_neumann_entropy(partial_trace(rho.matrix, dA, dB, "B"))
    return sa + sb - von_neumann_entropy(rho)


def _require_qubit_b(rho: DensityMatrix):
    if rho.dim_b != 2:
        raise ValueError(f"discord is implemented for a qubit B subsystem only (dB={rho.dim_b})")


def _pauli_components(rho: DensityMatrix) -> np.ndarray:
    """``T_mu[i, j] = Tr(s_mu B_ij)`` for ``s = (I, sx, sy, sz)``, shape (4, dA, dA)."""
    B = tiles(rho.matrix, rho.dim_a, 2)
    ops = (np.eye(2),) + PAULI
    T = np.stack([np.einsum("ab,ijba->ij", s, B) for s in ops])
    return 0.5 * (T + np.conj(np.swapaxes(T, -1, -2)))


def _conditional_entropies(T: np.ndarray, n: np.ndarray) -> np.ndarray:
    """``sum_k p_k S(rho_k)`` for Bloch axes ``n`` shaped (m, 3)."""
    proj = np.einsum("mx,xij->mij", n, T[1:])
    post = np.empty(proj.shape[:1] + (2,) + proj.shape[1:], dtype=complex)  # (m, 2, dA, dA)
    post[:, 0] = 0.5 * (T[0] + proj)
    post[:, 1] = 0.5 * (T[0] - proj)
    p = np.trace(post, axis1=-2, axis2=-1).real
    ev = _jacobi_eigenvalues(post)
    # p S(post/p) = -sum mu log mu + p log p
    with np.errstate(divide="ignore", invalid="ignore"):
        plogp = np.where(p > P_MIN, p * np.log2(np.where(p > P_MIN, p, 1.0)), 0.0)
    terms = np.where(p > P_MIN, _entropy_from_eigs(ev) + plogp, 0.0)
    return np.sum(terms, axis=-1)


def conditional_entropy_after(rho: DensityMatrix, axis: MeasurementAxis) -> float:
    """``S(rho | Pi^b)`` for the projective measurement along ``axis``."""
    _require_qubit_b(rho)
    return float(_conditional_entropies(_pauli_components(rho), axis.vector[None, :])[0])


def fibonacci_half_sphere(n: int) -> np.ndarray:
    """``n`` near-uniform unit vectors with ``z > 0`` (golden-angle spiral)."""
    k = np.arange(n) + 0.5
    z = k / n
    r = np.sqrt(1.0 - z * z)
    phi = math.pi * (3.0 - math.sqrt(5.0)) * np.arange(n)
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def _angles_to_vec(x) -> np.ndarray:
    th, ph = x
    return np.array([[math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th)]])


def discord_numeric(rho: DensityMatrix, lattice_size: int = LATTICE_SIZE, n_starts: int = N_STARTS) -> DiscordResult:
    """``D(rho) = I(rho) - max_Pi [S(rho_a) - S(rho|Pi)]`` over projective qubit measurements."""
    _require_qubit_b(rho)
    dA = rho.dim_a
    T = _pauli_components(rho)
    base = von_neumann_entropy(partial_trace(rho.matrix, dA, 2, "B")) - von_neumann_entropy(rho)

    pts = fibonacci_half_sphere(lattice_size)
    vals = _conditional_entropies(T, pts)
    order = np.argsort(vals, kind="stable")
    best_val = float(vals[order[0]])
    best_axis = MeasurementAxis.from_vector(pts[order[0]])
    lattice_val = best_val

    step = math.sqrt(2 * math.pi / lattice_size)

    def objective(x):
        return float(_conditional_entropies(T, _angles_to_vec(x))[0])

    iterations = 0
    converged = True
    for idx in order[:n_starts]:
        ax = MeasurementAxis.from_vector(pts[idx])
        x0 = np.array([ax.theta, ax.phi])
        simplex = np.array([x0, x0 + [step, 0.0], x0 + [0.0, step]])
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={"initial_simplex": simplex, "xatol": SIMPLEX_TOL, "fatol": 1e-15, "maxiter": 2000},
        )
        iterations += int(res.nit)
        converged &= bool(res.success)
        if res.fun < best_val:
            best_val = float(res.fun)
            best_axis = MeasurementAxis(*res.x)

    value = base + best_val
    if value < 0:
        if value < -ZERO_TOL:
            converged = False
        value = 0.0
    return DiscordResult(float(value), best_axis, iterations, converged, base + lattice_val)


def pure_state_crossovers(norm="trace", log_base: float = 2.0, n_grid: int = 4001) -> list[float]:
    """Schmidt coefficients ``l1`` in (0, 1) where ``D_N`` equals the entropic discord.

    For a two-qubit pure state the discord is the entanglement entropy of
    ``(l1^2, 1 - l1^2)``. Returns the sign changes of ``D_N - D`` on a grid,
    each refined by Brent's method; an empty list means one measure dominates.
    """
    from .measures import NormKind, d_n_pure_closed

    def gap(l1):
        l2 = math.sqrt(max(0.0, 1.0 - l1 * l1))
        p = np.array([l1 * l1, l2 * l2])
        p = p[p > 0]
        ent = float(-np.sum(p * np.log(p)) / math.log(log_base))
        return d_n_pure_closed(SchmidtVector.normalized([l1, l2]), NormKind(norm)) - ent

    xs = np.linspace(1e-6, 1 - 1e-6, n_grid)
    g = np.array([gap(x) for x in xs])
    roots = []
    for a, b, ga, gb in zip(xs[:-1], xs[1:], g[:-1], g[1:]):
        if ga == 0:
            roots.append(float(a))
        elif ga * gb < 0:
            roots.append(float(brentq(gap, a, b, xtol=1e-12)))
    return roots


def pure_discord(lam, d: int = 2) -> float:
    """Entropic discord of a pure state, checked against the numeric route in tests."""
    return discord_numeric(pure_from_schmidt(lam, d)).value
