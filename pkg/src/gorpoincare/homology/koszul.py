"""Tor over Q through the Koszul complex on x_1..x_e.

C_i = exterior power of degree i tensored with M; the summand e_S (x) M_{j-i}
sits in internal degree j. The differential sends e_S (x) m to
sum_k (-1)^k e_{S - s_k} (x) x_{s_k} m.
"""

from __future__ import annotations

import logging
from itertools import combinations

import numpy as np

from gorpoincare.algebra.linalg import rank_mod
from gorpoincare.homology.modules import GradedModule
from gorpoincare.homology.resolution import BettiTable

logger = logging.getLogger(__name__)


def _subsets(e: int, i: int) -> list[tuple[int, ...]]:
    return list(combinations(range(e), i)) if 0 <= i <= e else []


def koszul_differential(module: GradedModule, i: int, j: int) -> np.ndarray:
    """Matrix of C_{i,j} -> C_{i-1,j}."""
    e = module.e
    source_sets = _subsets(e, i)
    target_sets = _subsets(e, i - 1)
    n_src = module.dim(j - i)
    n_tgt = module.dim(j - i + 1)
    out = np.zeros((len(target_sets) * n_tgt, len(source_sets) * n_src), dtype=np.int64)
    if out.size == 0:
        return out
    position = {S: k for k, S in enumerate(target_sets)}
    p = module.modulus
    for col, S in enumerate(source_sets):
        for k, var in enumerate(S):
            row = position[S[:k] + S[k + 1 :]]
            block = module.action(var, j - i)
            if k % 2:
                block = (-block) % p
            out[row * n_tgt : (row + 1) * n_tgt, col * n_src : (col + 1) * n_src] = block
    return out


def koszul_betti(module: GradedModule) -> BettiTable:
    """beta_{i,j}^Q(M) = dim H_i(K (x) M)_j for all i <= e.

    Every step is complete: the Koszul complex has length e and M is finite.
    """
    e, p = module.e, module.modulus
    entries: dict[tuple[int, int], int] = {}
    if module.is_zero():
        return BettiTable({}, [True] * (e + 1), e, 0, terminated=True)
    low, top = module.low, module.top
    ranks: dict[tuple[int, int], int] = {}

    def rank(i: int, j: int) -> int:
        if i < 1 or i > e:
            return 0
        if (i, j) not in ranks:
            ranks[(i, j)] = rank_mod(koszul_differential(module, i, j), p)
        return ranks[(i, j)]

    for i in range(e + 1):
        width = len(_subsets(e, i))
        for j in range(low + i, top + i + 1):
            dim = width * module.dim(j - i)
            beta = dim - rank(i, j) - rank(i + 1, j)
            if beta:
                entries[(i, j)] = beta
    logger.debug("Koszul Betti numbers of %s: %s", module.name, entries)
    return BettiTable(entries, [True] * (e + 1), e, top + e, terminated=True)
