"""LMG Hamiltonian and driving operator in the Dicke basis.

    H = -(lam/N)(1+gamma)(S^2 - S_z^2 - N/2) - 2 h S_z - (lam/2N)(1-gamma)(S_+^2 + S_-^2)

Every constant is kept on the diagonal, so absolute energies equal those of
the pair Hamiltonian -(lam/N) sum_{i<j} (sx sx + gamma sy sy) - h sum_i sz.
"""

import numpy as np

from src.model.banded import BandedSpinMatrix
from src.model.basis import DickeBasis, ModelParams


def build_hamiltonian(params: ModelParams) -> BandedSpinMatrix:
    basis = DickeBasis(params.N)
    N, S = params.N, basis.S
    m = basis.m_values
    casimir = S * (S + 1)

    diag = (
        -(params.lam / N) * (1 + params.gamma) * (casimir - m**2 - N / 2)
        - 2 * params.h * m
    )
    lower = m[:-2]
    # <m+2| S_+^2 |m>; the product is >= 0 for every m in the multiplet
    raising = np.sqrt(
        np.clip(
            (casimir - lower * (lower + 1)) * (casimir - (lower + 1) * (lower + 2)),
            0.0,
            None,
        )
    )
    offdiag2 = -(params.lam / (2 * N)) * (1 - params.gamma) * raising
    return BandedSpinMatrix(diag, offdiag2)


def build_driving(params: ModelParams) -> BandedSpinMatrix:
    """H_I = -2 S_z, the term multiplied by h."""
    basis = DickeBasis(params.N)
    return BandedSpinMatrix(-2 * basis.m_values, np.zeros(max(basis.dimension - 2, 0)))
