"""Local-operator block grids of a bipartite state.

For ``rho = sum_ij E_ij (x) B_ij`` the B-side block ``B_ij`` is the dB x dB tile
at block-row ``i`` and block-column ``j``; equivalently
``Tr_a((|j><i| (x) 1) rho)``. The A-side grid does the same with the roles of
the factors exchanged. Indices are 0-based (the usual 1-based ``B_11`` is
``blocks[0, 0]`` here).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numerics import Subsystem, adjoint, as_matrix
from .states import DensityMatrix, validate


@dataclass(frozen=True, eq=False)
class BlockGrid:
    side: Subsystem
    blocks: np.ndarray = field(repr=False)  # (outer, outer, inner, inner)

    @property
    def outer_dim(self) -> int:
        return self.blocks.shape[0]

    @property
    def inner_dim(self) -> int:
        return self.blocks.shape[2]

    def __getitem__(self, ij):
        return self.blocks[ij]


def tiles(matrix, dA: int, dB: int) -> np.ndarray:
    """B-side tiles of one or more matrices, shape ``(..., dA, dA, dB, dB)``."""
    m = np.asarray(matrix)
    return np.swapaxes(m.reshape(m.shape[:-2] + (dA, dB, dA, dB)), -3, -2)


def a_tiles(matrix, dA: int, dB: int) -> np.ndarray:
    """A-side blocks ``A_kl`` of one or more matrices, shape ``(..., dB, dB, dA, dA)``."""
    m = np.asarray(matrix)
    t = m.reshape(m.shape[:-2] + (dA, dB, dA, dB))
    # A_kl[i, j] = rho[(i,k), (j,l)]
    return np.moveaxis(t, (-4, -3, -2, -1), (-2, -4, -1, -3))


def b_blocks(rho: DensityMatrix) -> BlockGrid:
    return BlockGrid(Subsystem.B, tiles(rho.matrix, rho.dim_a, rho.dim_b))


def a_blocks(rho: DensityMatrix) -> BlockGrid:
    return BlockGrid(Subsystem.A, a_tiles(rho.matrix, rho.dim_a, rho.dim_b))


def b_block_by_contraction(rho: DensityMatrix, i: int, j: int) -> np.ndarray:
    """``Tr_a((|j_a><i_a| (x) 1_b) rho)`` evaluated literally (reference route)."""
    dA, dB = rho.dims
    op = np.zeros((dA, dA))
    op[j, i] = 1.0
    prod = np.kron(op, np.eye(dB)) @ rho.matrix
    return np.einsum("ajak->jk", prod.reshape(dA, dB, dA, dB))


def a_block_by_contraction(rho: DensityMatrix, k: int, l: int) -> np.ndarray:
    """``Tr_b((1_a (x) |l_b><k_b|) rho)`` evaluated literally."""
    dA, dB = rho.dims
    op = np.zeros((dB, dB))
    op[l, k] = 1.0
    prod = np.kron(np.eye(dA), op) @ rho.matrix
    return np.einsum("ibjb->ij", prod.reshape(dA, dB, dA, dB))


def reassemble(grid: BlockGrid, validate_state: bool = True):
    """Inverse of block extraction.

    Returns a :class:`DensityMatrix` (or the raw matrix when
    ``validate_state`` is false).
    """
    blk = as_matrix(grid.blocks, "blocks")
    if blk.ndim != 4 or blk.shape[0] != blk.shape[1] or blk.shape[2] != blk.shape[3]:
        raise ValueError(f"inconsistent block grid shape {blk.shape}")
    outer, inner = blk.shape[0], blk.shape[2]
    side = Subsystem(grid.side)
    if side is Subsystem.B:
        dA, dB = outer, inner
        m = np.swapaxes(blk, 1, 2).reshape(dA * dB, dA * dB)
    else:
        dA, dB = inner, outer
        m = np.moveaxis(blk, (0, 1, 2, 3), (1, 3, 0, 2)).reshape(dA * dB, dA * dB)
    return validate(m, dA, dB) if validate_state else m


def swap_subsystems(rho: DensityMatrix) -> DensityMatrix:
    dA, dB = rho.dims
    t = rho.matrix.reshape(dA, dB, dA, dB).transpose(1, 0, 3, 2)
    return validate(t.reshape(dA * dB, dA * dB), dB, dA)


def is_block_hermitian(grid: BlockGrid, tol: float = 1e-10) -> bool:
    b = grid.blocks
    return bool(np.max(np.abs(np.swapaxes(b, 0, 1) - adjoint(b))) <= tol)
