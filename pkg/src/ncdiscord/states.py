"""Bipartite density matrices used throughout the package.

Basis ordering is fixed: the composite index of ``|i_a>|j_b>`` is ``i*dB + j``.
Bell states follow ``|beta_ab> = (|0,b> + (-1)^a |1,1+b>)/sqrt(2)``, so
``beta_00 = Phi+``, ``beta_01 = Psi+``, ``beta_10 = Phi-``, ``beta_11 = Psi-``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .numerics import HERMITIAN_TOL, adjoint, as_matrix, hermitian_eigenvalues

TRACE_TOL = 1e-10
PSD_TOL = 1e-10
SCHMIDT_TOL = 1e-12
TETRA_TOL = 1e-12
RNG_ALGORITHM = "numpy.PCG64"

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

# Bell-basis correlation vectors: beta_ab has c = BELL_SIGNS[(a, b)].
BELL_SIGNS = {
    (0, 0): (1, -1, 1),
    (0, 1): (1, 1, -1),
    (1, 0): (-1, 1, 1),
    (1, 1): (-1, -1, -1),
}
BELL_NAMES = {(0, 0): "Phi+", (0, 1): "Psi+", (1, 0): "Phi-", (1, 1): "Psi-"}


@dataclass(frozen=True)
class Violation:
    kind: str
    magnitude: float

    def __str__(self):
        return f"{self.kind}: {self.magnitude:.6g}"


class StateValidationError(ValueError):
    """A matrix failed one or more density-matrix invariants.

    ``violations`` lists every failed check, not only the first.
    """

    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))

    @property
    def magnitude(self) -> float:
        return self.violations[0].magnitude


class NotHermitian(StateValidationError):
    pass


class TraceNotOne(StateValidationError):
    pass


class NotPSD(StateValidationError):
    pass


class TetrahedronViolation(ValueError):
    def __init__(self, name: str, eigenvalue: float):
        self.name = name
        self.eigenvalue = eigenvalue
        super().__init__(
            f"point outside the Bell tetrahedron: eigenvalue of {name} is {eigenvalue:.6g}"
        )


_ERROR_FOR = {"NotHermitian": NotHermitian, "TraceNotOne": TraceNotOne, "NotPSD": NotPSD}


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    dim_a: int
    dim_b: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def dims(self) -> tuple[int, int]:
        return self.dim_a, self.dim_b


def check(m, dA: int, dB: int) -> list[Violation]:
    """Return every violated density-matrix invariant (empty list if valid)."""
    m = as_matrix(m)
    n = dA * dB
    if m.shape != (n, n):
        raise ValueError(f"matrix has shape {m.shape}, expected {(n, n)} for dims ({dA}, {dB})")
    out = []
    herm = float(np.max(np.abs(m - adjoint(m))))
    if herm > HERMITIAN_TOL:
        out.append(Violation("NotHermitian", herm))
    tr = np.trace(m)
    tr_dev = float(abs(tr - 1.0))
    if tr_dev > TRACE_TOL:
        out.append(Violation("TraceNotOne", tr_dev))
    if herm <= HERMITIAN_TOL:
        lo = float(hermitian_eigenvalues(m)[0])
        if lo < -PSD_TOL:
            out.append(Violation("NotPSD", lo))
    return out


def validate(m, dA: int, dB: int) -> DensityMatrix:
    if dA < 1 or dB < 1:
        raise ValueError("subsystem dimensions must be positive")
    violations = check(m, dA, dB)
    if violations:
        raise _ERROR_FOR[violations[0].kind](violations)
    return DensityMatrix(dA, dB, np.array(m, dtype=np.complex128))


@dataclass(frozen=True)
class SchmidtVector:
    """Schmidt coefficients; stored in descending order."""

    coefficients: tuple[float, ...]

    def __post_init__(self):
        lam = np.asarray(self.coefficients, dtype=float)
        if lam.ndim != 1 or lam.size == 0:
            raise ValueError("Schmidt vector must be a non-empty 1-D sequence")
        if np.any(lam < 0) or not np.all(np.isfinite(lam)):
            raise ValueError("Schmidt coefficients must be finite and nonnegative")
        norm = float(np.sum(lam**2))
        if abs(norm - 1.0) > SCHMIDT_TOL:
            raise ValueError(f"sum of squared Schmidt coefficients is {norm!r}, expected 1")
        object.__setattr__(self, "coefficients", tuple(float(x) for x in sorted(lam, reverse=True)))

    @classmethod
    def normalized(cls, values) -> "SchmidtVector":
        lam = np.abs(np.asarray(values, dtype=float))
        return cls(tuple(lam / np.linalg.norm(lam)))

    def __len__(self):
        return len(self.coefficients)

    def as_array(self) -> np.ndarray:
        return np.array(self.coefficients)


@dataclass(frozen=True)
class BellCoefficients:
    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        for c in self.astuple():
            if not -1.0 - TETRA_TOL <= c <= 1.0 + TETRA_TOL:
                raise ValueError(f"Bell coefficient {c} outside [-1, 1]")
        for ab, lam in self.eigenvalues().items():
            if lam < -TETRA_TOL:
                raise TetrahedronViolation(BELL_NAMES[ab], lam)

    def astuple(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)

    def eigenvalues(self) -> dict[tuple[int, int], float]:
        """Weights of the four Bell projectors, keyed by ``(a, b)``."""
        c = np.array(self.astuple())
        return {ab: 0.25 * (1.0 + float(np.dot(s, c))) for ab, s in BELL_SIGNS.items()}


def bell_vector(a: int, b: int) -> np.ndarray:
    v = np.zeros(4, dtype=complex)
    v[0 * 2 + b] = 1.0
    v[1 * 2 + (1 - b)] = (-1.0) ** a
    return v / np.sqrt(2.0)


def _pure(v: np.ndarray) -> np.ndarray:
    return np.outer(v, np.conj(v))


def pure_from_schmidt(lam, d: int) -> DensityMatrix:
    if not isinstance(lam, SchmidtVector):
        lam = SchmidtVector(tuple(lam))
    if len(lam) > d:
        raise ValueError(f"{len(lam)} Schmidt coefficients do not fit a {d}x{d} system")
    v = np.zeros(d * d, dtype=complex)
    for k, x in enumerate(lam.coefficients):
        v[k * d + k] = x
    return validate(_pure(v), d, d)


def max_entangled(d: int) -> DensityMatrix:
    if d < 2:
        raise ValueError("max_entangled needs d >= 2")
    return pure_from_schmidt(SchmidtVector((1.0 / np.sqrt(d),) * d), d)


def swap_operator(d: int) -> np.ndarray:
    F = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            F[i * d + j, j * d + i] = 1.0
    return F


def _check_family(d, x, name):
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {x}")


def werner(d: int, alpha: float) -> DensityMatrix:
    """Werner state, a weighted sum of the symmetric and antisymmetric projectors."""
    _check_family(d, alpha, "alpha")
    eye = np.eye(d * d, dtype=complex)
    F = swap_operator(d)
    sym = 0.5 * (eye + F)
    anti = 0.5 * (eye - F)
    m = 2 * (1 - alpha) / (d * (d + 1)) * sym + 2 * alpha / (d * (d - 1)) * anti
    return validate(m, d, d)


def isotropic(d: int, beta: float) -> DensityMatrix:
    _check_family(d, beta, "beta")
    P = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            P[i * d + i, j * d + j] = 1.0
    P /= d
    m = ((1 - beta) * np.eye(d * d) + (d * d * beta - 1) * P) / (d * d - 1)
    return validate(m, d, d)


def bell_diagonal(c) -> DensityMatrix:
    if not isinstance(c, BellCoefficients):
        c = BellCoefficients(*c)
    m = np.eye(4, dtype=complex)
    for cj, s in zip(c.astuple(), PAULI):
        m = m + cj * np.kron(s, s)
    return validate(m / 4.0, 2, 2)


def bell_mixture(weights: Mapping[tuple[int, int], float]) -> DensityMatrix:
    """Convex combination of Bell projectors keyed by ``(a, b)``."""
    total = 0.0
    m = np.zeros((4, 4), dtype=complex)
    for ab, w in weights.items():
        if ab not in BELL_SIGNS:
            raise ValueError(f"unknown Bell label {ab!r}")
        if w < 0:
            raise ValueError(f"negative weight {w} for {ab}")
        total += w
        m += w * _pure(bell_vector(*ab))
    if abs(total - 1.0) > 1e-12:
        raise ValueError(f"weights sum to {total!r}, expected 1")
    return validate(m, 2, 2)


def bell_coefficients_of(rho: DensityMatrix) -> tuple[float, float, float]:
    """Correlation coefficients ``Tr(rho sigma_j x sigma_j)``."""
    return tuple(float(np.trace(rho.matrix @ np.kron(s, s)).real) for s in PAULI)


def rho_family(n: int, p: float) -> DensityMatrix:
    """The four one-parameter Bell mixtures rho_1 .. rho_4."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    weights = {
        1: {(0, 1): 0.5, (0, 0): p / 2, (1, 0): (1 - p) / 2},
        2: {(1, 1): p, (0, 1): (1 - p) / 2, (0, 0): (1 - p) / 2},
        3: {(1, 1): p, (0, 1): 1 - p},
        4: {(1, 0): p, (0, 1): 1 - p},
    }
    if n not in weights:
        raise ValueError(f"no rho family {n}; expected 1..4")
    return bell_mixture(weights[n])


def quantum_classical(components, dB: int | None = None) -> DensityMatrix:
    """``sum_j q_j rho_a^(j) (x) |j><j|`` on B; zero discord with respect to B."""
    components = list(components)
    if not components:
        raise ValueError("need at least one component")
    dB = len(components) if dB is None else dB
    if len(components) > dB:
        raise ValueError(f"{len(components)} components exceed dB={dB}")
    weights = np.array([w for w, _ in components], dtype=float)
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-12:
        raise ValueError("weights must be nonnegative and sum to 1")
    dA = np.asarray(components[0][1]).shape[0]
    m = np.zeros((dA * dB, dA * dB), dtype=complex)
    for j, (w, ra) in enumerate(components):
        ra = validate(ra, dA, 1).matrix
        proj = np.zeros((dB, dB))
        proj[j, j] = 1.0
        m += w * np.kron(ra, proj)
    return validate(m, dA, dB)


def classical_classical(p) -> DensityMatrix:
    """``sum_ij p_ij |i><i| (x) |j><j|`` from a dA x dB probability table."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 2 or np.any(p < 0) or abs(p.sum() - 1.0) > 1e-12:
        raise ValueError("p must be a nonnegative 2-D table summing to 1")
    return validate(np.diag(p.ravel()).astype(complex), *p.shape)


def _ginibre_density(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ adjoint(g)
    return m / np.trace(m).real


def random_density(dA: int, dB: int, seed: int) -> DensityMatrix:
    """Seeded state ``G G^dagger / Tr(G G^dagger)``, G drawn from PCG64."""
    if dA < 2 or dB < 2:
        raise ValueError("random_density needs dims >= 2")
    rng = np.random.Generator(np.random.PCG64(seed))
    return validate(_ginibre_density(dA * dB, rng), dA, dB)


def random_quantum_classical(dA: int, dB: int, seed: int) -> DensityMatrix:
    rng = np.random.Generator(np.random.PCG64(seed))
    q = rng.dirichlet(np.ones(dB))
    return quantum_classical([(float(w), _ginibre_density(dA, rng)) for w in q], dB)


def random_bell_coefficients(rng: np.random.Generator) -> BellCoefficients:
    """Uniform point of the Bell tetrahedron (Dirichlet weights on its vertices)."""
    w = rng.dirichlet(np.ones(4))
    c = sum(wi * np.array(s, dtype=float) for wi, s in zip(w, BELL_SIGNS.values()))
    return BellCoefficients(*(float(x) for x in c))


def random_density_batch(dA: int, dB: int, count: int, seed: int) -> np.ndarray:
    """``count`` seeded random states as a ``(count, n, n)`` array.

    Same construction as :func:`random_density` from one PCG64 stream; the whole
    stack is checked for positivity with a single batched eigenvalue call.
    """
    n = dA * dB
    rng = np.random.Generator(np.random.PCG64(seed))
    g = rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n))
    m = g @ adjoint(g)
    m = m / np.trace(m, axis1=-2, axis2=-1).real[:, None, None]
    lo = hermitian_eigenvalues(m)[:, 0]
    if np.any(lo < -PSD_TOL):
        raise NotPSD([Violation("NotPSD", float(lo.min()))])
    return m
