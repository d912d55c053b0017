"""Separability-structure classification for non-GME pure states.

A vanishing cut concurrence certifies a product structure across that
bipartition; the common refinement of all such cuts yields the finest
factorization detectable from the cut table, which is verified by
reconstructing the state from its factor marginals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InternalInvariantError, ValidationError
from .states import Cut, PureState, _pure_marginal
from .concurrence import all_cut_concurrences

DEFAULT_TOL = 1e-6
MARGINAL_FACTOR = 10.0
MAX_PARTIES = 10

__all__ = [
    "Factorization",
    "product_cuts",
    "marginal_cuts",
    "finest_factorization",
    "DEFAULT_TOL",
]


@dataclass(frozen=True)
class Factorization:
    """Disjoint party blocks whose tensor product reproduces the state."""

    factors: tuple[tuple[int, ...], ...]
    is_gme: bool

    def __post_init__(self):
        if self.is_gme != (len(self.factors) == 1):
            raise ValidationError("is_gme must hold exactly for a single "
                                  "factor block")


def _cut_table(psi: PureState, caller: str):
    n = psi.nparties
    if n < 2:
        raise ValidationError(f"{caller} needs at least 2 parties")
    if n > MAX_PARTIES:
        raise ValidationError(
            f"{caller} is capped at {MAX_PARTIES} parties (cut enumeration "
            f"is exponential); got {n}")
    return all_cut_concurrences(psi, n // 2)


def product_cuts(psi: PureState, tol: float = DEFAULT_TOL) -> list[Cut]:
    """Canonical cuts whose concurrence is at most ``tol``."""
    table = _cut_table(psi, "product_cuts")
    return sorted(cut for cut, value in table.entries.items()
                  if value <= tol)


def marginal_cuts(psi: PureState, tol: float = DEFAULT_TOL) -> list[Cut]:
    """Cuts within 10x of the threshold, flagged instead of classified."""
    table = _cut_table(psi, "marginal_cuts")
    return sorted(cut for cut, value in table.entries.items()
                  if tol < value <= MARGINAL_FACTOR * tol)


def _refine_blocks(blocks: list[tuple[int, ...]],
                   subset: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Split every block against a subset and its complement."""
    s = set(subset)
    out = []
    for block in blocks:
        inside = tuple(p for p in block if p in s)
        outside = tuple(p for p in block if p not in s)
        if inside:
            out.append(inside)
        if outside:
            out.append(outside)
    return sorted(out)


def _reconstruction_error(psi: PureState,
                          factors: list[tuple[int, ...]]) -> float:
    """Max entrywise deviation of the factor-marginal product from psi."""
    n = psi.nparties
    dims = psi.dims
    marginals = [_pure_marginal(psi.amplitudes, dims, [p - 1 for p in block])
                 for block in factors]
    rec = marginals[0]
    for m in marginals[1:]:
        rec = np.kron(rec, m)
    order0 = [p - 1 for block in factors for p in block]
    inv = np.argsort(order0)
    block_dims = [dims[i] for i in order0]
    rec = rec.reshape(block_dims + block_dims)
    rec = np.transpose(rec, list(inv) + [n + k for k in inv])
    rec = rec.reshape(psi.dim, psi.dim)
    target = np.outer(psi.amplitudes, psi.amplitudes.conj())
    return float(np.max(np.abs(rec - target)))


def finest_factorization(psi: PureState,
                         tol: float = DEFAULT_TOL) -> Factorization:
    """Finest party factorization detectable from vanishing cuts.

    Starting from the single block 1..N, every product cut refines each
    block against the cut and its complement; the result is verified by
    checking that the tensor product of the factor marginals equals
    |psi><psi| within ``tol`` clipped to [1e-6, 1e-2].  The upper clip
    keeps an absurdly loose cut threshold from hiding its own
    misclassification.
    """
    n = psi.nparties
    blocks = [tuple(range(1, n + 1))]
    for cut in product_cuts(psi, tol):
        blocks = _refine_blocks(blocks, cut.parties)

    err = _reconstruction_error(psi, blocks)
    recon_tol = max(1e-6, min(tol, 1e-2))
    if err > recon_tol:
        raise InternalInvariantError(
            f"inconsistent factorization: reconstruction error {err!r} "
            f"exceeds {recon_tol!r} for factors {tuple(blocks)}; the cut "
            f"threshold {tol!r} is likely too loose for this state")
    return Factorization(tuple(blocks), is_gme=(len(blocks) == 1))
