"""Brute-force 2^N spin-1/2 construction of the LMG Hamiltonian, used as an oracle."""

from math import comb

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.linalg import eigsh

from src.exceptions import InvalidParametersError
from src.model.basis import ModelParams

PAULI_MAX_SPINS = 12
_DENSE_LIMIT = 256

_SX = sp.csr_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
_SY = sp.csr_matrix(np.array([[0.0, -1.0j], [1.0j, 0.0]]))
_SZ = sp.csr_matrix(np.array([[1.0, 0.0], [0.0, -1.0]]))


def _site_operator(op: sp.csr_matrix, site: int, N: int) -> sp.csr_matrix:
    left = sp.identity(2**site, format="csr")
    right = sp.identity(2 ** (N - site - 1), format="csr")
    return sp.kron(sp.kron(left, op, format="csr"), right, format="csr")


def pauli_hamiltonian(params: ModelParams) -> sp.csr_matrix:
    """-(lam/N) sum_{i<j} (sx^i sx^j + gamma sy^i sy^j) - h sum_i sz^i on 2^N states."""
    N = params.N
    if N > PAULI_MAX_SPINS:
        raise InvalidParametersError(
            f"the Pauli oracle is limited to N <= {PAULI_MAX_SPINS}, got {N}"
        )
    sx = [_site_operator(_SX, i, N) for i in range(N)]
    sy = [_site_operator(_SY, i, N) for i in range(N)]
    sz = [_site_operator(_SZ, i, N) for i in range(N)]

    dim = 2**N
    pairs = sp.csr_matrix((dim, dim), dtype=np.complex128)
    for i in range(N):
        for j in range(i + 1, N):
            pairs = pairs + sx[i] @ sx[j] + params.gamma * (sy[i] @ sy[j])
    field = sum(sz, sp.csr_matrix((dim, dim)))
    H = -(params.lam / N) * pairs - params.h * field
    return sp.csr_matrix(H.real)


def dicke_embedding(N: int) -> sp.csr_matrix:
    """Columns are the Dicke states |S, m> written on 2^N product states.

    Bit 0 of a site means spin up (sz = +1); column i holds m = -S + i, i.e.
    the symmetric state with i spins up.
    """
    if N > PAULI_MAX_SPINS:
        raise InvalidParametersError(
            f"the Pauli oracle is limited to N <= {PAULI_MAX_SPINS}, got {N}"
        )
    states = np.arange(2**N)
    ups = N - np.array([bin(b).count("1") for b in states])
    weights = 1 / np.sqrt(np.array([comb(N, k) for k in ups], dtype=np.float64))
    return sp.csr_matrix((weights, (states, ups)), shape=(2**N, N + 1))


def pauli_lowest(params: ModelParams, k: int = 2) -> tuple[np.ndarray, np.ndarray]:
    """Lowest k energies (ascending) and their vectors of the 2^N Hamiltonian."""
    H = pauli_hamiltonian(params)
    k = min(k, H.shape[0])
    if H.shape[0] <= _DENSE_LIMIT:
        energies, vectors = scipy.linalg.eigh(H.toarray())
        return energies[:k], vectors[:, :k]
    v0 = np.ones(H.shape[0]) / np.sqrt(H.shape[0])
    energies, vectors = eigsh(H, k=k, which="SA", v0=v0, tol=0)
    order = np.argsort(energies)
    return energies[order], vectors[:, order]
