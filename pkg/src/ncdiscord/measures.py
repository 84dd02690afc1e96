"""Non-commutativity measures of discord.

``D_N`` sums the trace norm of ``[B_ij, B_kl]`` over the index pairs returned by
:func:`pair_set`; ``D'_N`` uses the Hilbert-Schmidt norm on the same pairs.
The pair set ``{i<=k, j<=l, (i,j)!=(k,l)} U {i<k, l<j}`` contains every
unordered pair of distinct blocks exactly once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import product

import numpy as np

from .blocks import a_tiles, tiles
from .numerics import as_matrix, commutator, hs_norm, trace_norm
from .states import BellCoefficients, DensityMatrix, SchmidtVector

SQRT2 = math.sqrt(2.0)


class NormKind(str, Enum):
    TRACE = "trace"
    HS = "hs"


class Method(str, Enum):
    DIRECT = "direct"
    CLOSED_FORM = "closed_form"
    NUMERIC = "numeric_minimization"


@dataclass(frozen=True)
class MeasureResult:
    value: float
    measure: str
    norm: NormKind | None
    method: Method
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not math.isfinite(self.value) or self.value < 0:
            raise ValueError(f"measure value must be finite and nonnegative, got {self.value}")

    def __float__(self):
        return self.value

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "measure": self.measure,
            "norm": None if self.norm is None else self.norm.value,
            "method": self.method.value,
            "metadata": dict(self.metadata),
        }


def _norm_fn(norm):
    return trace_norm if NormKind(norm) is NormKind.TRACE else hs_norm


@lru_cache(maxsize=None)
def pair_set(dA: int) -> tuple[tuple[tuple[int, int], tuple[int, int]], ...]:
    """Index pairs ``((i, j), (k, l))`` entering ``D_N``, 0-based, lexicographic."""
    if dA < 1:
        raise ValueError("dA must be >= 1")
    out = []
    for i, j, k, l in product(range(dA), repeat=4):
        first = i <= k and j <= l and (i, j) != (k, l)
        second = i < k and l < j
        if first or second:
            out.append(((i, j), (k, l)))
    return tuple(out)


@lru_cache(maxsize=None)
def _pair_index(dA: int):
    pairs = pair_set(dA)
    if not pairs:
        return (np.zeros(0, int),) * 4
    idx = np.array([(i, j, k, l) for (i, j), (k, l) in pairs])
    return idx[:, 0], idx[:, 1], idx[:, 2], idx[:, 3]


def total_non_commutativity(gamma, norm=NormKind.TRACE) -> float:
    """Sum of ``||[A_i, A_j]||`` over unordered pairs ``i < j`` of ``gamma``."""
    mats = [as_matrix(g) for g in gamma]
    if not mats:
        return 0.0
    n = mats[0].shape
    for m in mats:
        if m.ndim != 2 or m.shape != n or n[0] != n[1]:
            raise ValueError("all operators must be square with equal dimension")
    if len(mats) < 2:
        return 0.0
    stack = np.stack(mats)
    iu, ju = np.triu_indices(len(mats), k=1)
    return float(np.sum(_norm_fn(norm)(commutator(stack[iu], stack[ju]))))


def _grid_sum(grid: np.ndarray, norm) -> np.ndarray:
    """Pair-set sum over block grids shaped ``(..., d, d, n, n)``."""
    d = grid.shape[-3]
    i, j, k, l = _pair_index(d)
    if i.size == 0:
        return np.zeros(grid.shape[:-4])
    comms = commutator(grid[..., i, j, :, :], grid[..., k, l, :, :])
    return np.sum(_norm_fn(norm)(comms), axis=-1)


def measure_values(matrices, dA: int, dB: int, norm=NormKind.TRACE, side="B") -> np.ndarray:
    """Vectorized pair sum over a stack of ``(dA*dB)``-square matrices.

    ``side="B"`` gives ``D_N``/``D'_N`` (depending on ``norm``); ``side="A"``
    gives the A-side half of the symmetric measure. No state validation is done
    here; use it for sweeps and sampling over states built by this package.
    """
    m = as_matrix(matrices)
    grid = tiles(m, dA, dB) if side == "B" else a_tiles(m, dA, dB)
    return _grid_sum(grid, norm)


def _meta(rho: DensityMatrix, extra=None):
    meta = {"dims": list(rho.dims)}
    if extra:
        meta.update(extra)
    return meta


def d_n(rho: DensityMatrix, **metadata) -> MeasureResult:
    v = float(measure_values(rho.matrix, rho.dim_a, rho.dim_b, NormKind.TRACE))
    return MeasureResult(v, "DN", NormKind.TRACE, Method.DIRECT, _meta(rho, metadata))


def d_n_prime(rho: DensityMatrix, **metadata) -> MeasureResult:
    v = float(measure_values(rho.matrix, rho.dim_a, rho.dim_b, NormKind.HS))
    return MeasureResult(v, "DNprime", NormKind.HS, Method.DIRECT, _meta(rho, metadata))


def d_n_symmetric(rho: DensityMatrix, norm=NormKind.TRACE, **metadata) -> MeasureResult:
    """B-side pair sum plus the same-form sum over the A-side blocks ``A_kl``."""
    norm = NormKind(norm)
    dA, dB = rho.dims
    v = float(measure_values(rho.matrix, dA, dB, norm, "B") + measure_values(rho.matrix, dA, dB, norm, "A"))
    return MeasureResult(v, "DNsymmetric", norm, Method.DIRECT, _meta(rho, metadata))


# --- closed forms -----------------------------------------------------------


def _omega(i, j, d, with_diagonal):
    if i < j:
        for k in range(d):
            for l in range(d):
                if i < k <= j <= l or (with_diagonal and (k, l) == (i, j)):
                    yield k, l
    elif i == j:
        for k in range(i, d):
            for l in range(k + 1, d):
                yield k, l


def _printed_pure(lam: np.ndarray, with_diagonal: bool) -> float:
    d = lam.size
    total = 0.0
    for i in range(d):
        for j in range(i, d):
            inner = sum(lam[k] * lam[l] for k, l in _omega(i, j, d, with_diagonal))
            total += lam[i] * lam[j] * inner
    return 2.0 * total


def d_n_pure_closed(lam, norm=NormKind.TRACE, variant: str = "exact") -> float:
    """Closed form of ``D_N`` / ``D'_N`` for a pure state with Schmidt vector ``lam``.

    With ``B_ij = l_i l_j |i><j|`` a commutator of two blocks is either a single
    scaled matrix unit (one index match, norm ``l_i l_j l_k l_l`` for both norms)
    or ``l_i^2 l_j^2 (E_ii - E_jj)`` for a transposed pair, whose trace norm is
    twice and HS norm ``sqrt(2)`` times the prefactor. Summing gives::

        2 sum_{i<j} l_i l_j  +  w sum_{i<j} l_i^2 l_j^2,   w = 2 or sqrt(2)

    ``variant="printed"`` evaluates the published Omega-set expressions instead
    (the HS one with its additive ``sqrt(2)`` constant); those agree with the
    direct computation only up to ``d = 3`` (and the HS one not even there).
    """
    if not isinstance(lam, SchmidtVector):
        lam = SchmidtVector(tuple(lam))
    x = lam.as_array()
    norm = NormKind(norm)
    if variant == "printed":
        if norm is NormKind.TRACE:
            return _printed_pure(x, with_diagonal=True)
        return _printed_pure(x, with_diagonal=False) + SQRT2
    if variant != "exact":
        raise ValueError(f"unknown variant {variant!r}")
    iu, ju = np.triu_indices(x.size, k=1)
    cross = float(np.sum(x[iu] * x[ju]))
    swap = float(np.sum((x[iu] * x[ju]) ** 2))
    return 2.0 * cross + (2.0 if norm is NormKind.TRACE else SQRT2) * swap


def _check_paper_d(d):
    if d not in (2, 3, 4):
        raise ValueError(f"published family formulas exist for d in (2, 3, 4), got {d}")


def werner_closed_paper(d: int, alpha: float, norm=NormKind.TRACE) -> float:
    """Published Werner-state expressions, evaluated verbatim.

    They are not equal to the direct pair sum: the ratio printed/direct is 4 at
    d=2, 23/6 at d=3 and 13/5 at d=4 for the trace norm. Only the zeros agree.
    """
    _check_paper_d(d)
    if NormKind(norm) is NormKind.TRACE:
        coef = {2: 2 / 3, 3: 23 / 36, 4: 13 / 300}[d]
    else:
        coef = {2: (4 + SQRT2) / 9, 3: (19 + 2 * SQRT2) / 36, 4: (35 + 2 * SQRT2) / 900}[d]
    base = {2: 1 - 4 * alpha, 3: 1 - 3 * alpha, 4: 3 - 8 * alpha}[d]
    return coef * base**2


def isotropic_closed_paper(d: int, beta: float, norm=NormKind.TRACE) -> float:
    """Published isotropic-state expressions, evaluated verbatim (zeros at 1/d^2)."""
    _check_paper_d(d)
    trace = NormKind(norm) is NormKind.TRACE
    if d == 2:
        return (2 / 3 if trace else (4 + SQRT2) / 9) * (1 - 4 * beta) ** 2
    if d == 3:
        u, v = abs(1 - 9 * beta), abs(1 - 8 * beta)
        if trace:
            return 3 / 16 * u * (u + v)
        return u * ((6 + 3 * SQRT2) / 64 * u + 3 / 16 * v)
    u, v = abs(1 - 16 * beta), abs(1 - 15 * beta)
    return u * ((4 / 25 if trace else (8 + 2 * SQRT2) / 75) * u + v / 9)


def bell_diagonal_closed(c, norm=NormKind.TRACE) -> float:
    if not isinstance(c, BellCoefficients):
        c = BellCoefficients(*c)
    c1, c2, c3 = c.astuple()
    if NormKind(norm) is NormKind.TRACE:
        return 0.5 * abs(c1 * c2) + 0.5 * abs(c3) * (abs(c1 - c2) + abs(c1 + c2))
    return abs(c1 * c2) / (2 * SQRT2) + abs(c3) / SQRT2 * math.hypot(c1, c2)


def bell_diagonal_closed_grid(c1, c2, c3, norm=NormKind.TRACE) -> np.ndarray:
    """Array version of :func:`bell_diagonal_closed` (no tetrahedron check)."""
    c1, c2, c3 = (np.asarray(x, dtype=float) for x in (c1, c2, c3))
    if NormKind(norm) is NormKind.TRACE:
        return 0.5 * np.abs(c1 * c2) + 0.5 * np.abs(c3) * (np.abs(c1 - c2) + np.abs(c1 + c2))
    return np.abs(c1 * c2) / (2 * SQRT2) + np.abs(c3) / SQRT2 * np.hypot(c1, c2)
