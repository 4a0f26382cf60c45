"""Independent reference computations used as test oracles.

Nothing here calls into the SVD or block-extraction code paths under test;
everything goes through full density matrices and explicit Kronecker
products instead.
"""

import numpy as np


def charpoly_eigenvalues(h):
    """Eigenvalues of a Hermitian matrix from its Faddeev-LeVerrier polynomial."""
    h = np.asarray(h, dtype=np.complex128)
    d = h.shape[0]
    coeffs = [1.0 + 0j]
    mk = np.zeros_like(h)
    for k in range(1, d + 1):
        mk = h @ mk + coeffs[-1] * np.eye(d)
        coeffs.append(-np.trace(h @ mk) / k)
    roots = np.roots(coeffs)
    return np.sort(roots.real)[::-1]


def density(vec):
    v = np.asarray(vec, dtype=np.complex128).reshape(-1)
    return np.outer(v, v.conj())


def partial_trace_b(rho, m, n):
    return np.einsum("ijkj->ik", rho.reshape(m, n, m, n))


def entropy_bits(evals):
    p = np.clip(np.real(evals), 0.0, None)
    p = p[p > 1e-15]
    return float(-np.sum(p * np.log2(p)))


def eof_bruteforce(vec, m, n):
    """Entropy of rho_A from the full projector, normalizing first."""
    v = np.asarray(vec, dtype=np.complex128).reshape(-1)
    v = v / np.linalg.norm(v)
    return entropy_bits(np.linalg.eigvalsh(partial_trace_b(density(v), m, n)))


def antisym(dim, lo, hi):
    g = np.zeros((dim, dim))
    g[lo - 1, hi - 1] = 1.0
    g[hi - 1, lo - 1] = -1.0
    return g


def theorem_bruteforce(vec, m, n, b_dim=None, norm=None):
    """Block-reconstruction sum built from full (L (x) L) rho (L (x) L)^dag matrices."""
    b_dim = n if b_dim is None else b_dim
    if norm is None:
        norm = 1.0 / ((m - 1) * (b_dim - 1)) if b_dim == n else 1.0 / (m - 1) ** 2
    rho = density(vec)
    total = 0.0
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            for k in range(1, b_dim + 1):
                for l in range(k + 1, b_dim + 1):
                    op = np.kron(antisym(m, i, j), antisym(n, k, l))
                    rp = op @ rho @ op.conj().T
                    t = np.trace(rp).real
                    if t <= 1e-12:
                        continue
                    e = entropy_bits(np.linalg.eigvalsh(partial_trace_b(rp / t, m, n)))
                    c = 1.0 / t
                    total += (e + np.log2(c)) / c
    return norm * total


def pauli_expectation_full(vec, m, n, a_op, b_op):
    v = np.asarray(vec, dtype=np.complex128).reshape(-1)
    return v.conj() @ np.kron(a_op, b_op) @ v


def concurrence_sq_purity(block):
    """C^2 = 2 (1 - Tr rho_A^2) for the normalized two-qubit block."""
    x = np.asarray(block, dtype=np.complex128)
    x = x / np.linalg.norm(x)
    ra = partial_trace_b(density(x), 2, 2)
    return float(2.0 * (1.0 - np.trace(ra @ ra).real))
