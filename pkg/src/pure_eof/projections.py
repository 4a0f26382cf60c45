"""Antisymmetric generator pairs and the two-qubit blocks they carve out of a state.

Indices in :class:`GeneratorIndex` are 1-based to match the usual |i><j|
notation; array access converts to 0-based internally.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DegenerateBlockError, DimensionError, InvalidBasisError
from .states import EPS_ZERO, binary_entropy, is_schmidt_diagonal

EPS_SKIP = 1e-12
CENSUS_TOL = 1e-10
MODES = ("paper", "rect")


@dataclass(frozen=True, order=True)
class GeneratorIndex:
    lo: int
    hi: int

    def __post_init__(self):
        if not 1 <= self.lo < self.hi:
            raise DimensionError(f"generator pair needs 1 <= lo < hi, got ({self.lo}, {self.hi})")

    def check(self, dim):
        if self.hi > dim:
            raise DimensionError(f"generator pair ({self.lo}, {self.hi}) exceeds dimension {dim}")
        return self

    def as_tuple(self):
        return (self.lo, self.hi)


def _pair(p):
    return p if isinstance(p, GeneratorIndex) else GeneratorIndex(*p)


def check_mode(mode):
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


def generator(dim, pair):
    """Matrix |lo><hi| - |hi><lo| on C^dim."""
    pair = _pair(pair).check(dim)
    g = np.zeros((dim, dim))
    g[pair.lo - 1, pair.hi - 1] = 1.0
    g[pair.hi - 1, pair.lo - 1] = -1.0
    return g


def enumerate_pairs(m, n, mode="rect"):
    """All (alpha, beta) generator pairs in lexicographic order.

    ``rect`` ranges beta over every pair of the n-dimensional side; ``paper``
    keeps only beta pairs with ``hi <= m``.
    """
    check_mode(mode)
    if not 2 <= m <= n:
        raise DimensionError(f"need 2 <= m <= n, got m={m}, n={n}")
    b_dim = m if mode == "paper" else n
    a_pairs = [GeneratorIndex(i, j) for i, j in combinations(range(1, m + 1), 2)]
    b_pairs = [GeneratorIndex(k, l) for k, l in combinations(range(1, b_dim + 1), 2)]
    return [(a, b) for a in a_pairs for b in b_pairs]


def normalization(m, n, mode):
    """Prefactor matching the number of times each Schmidt value is counted."""
    check_mode(mode)
    return 1.0 / (m - 1) ** 2 if mode == "paper" else 1.0 / ((m - 1) * (n - 1))


def apply_projection(state, alpha, beta):
    """(L_alpha (x) L_beta)|psi> as an m x n coefficient matrix (unnormalized)."""
    la = generator(state.m, alpha)
    lb = generator(state.n, beta)
    return la @ state.amplitudes @ lb.T


@dataclass(frozen=True)
class BlockState:
    """Restriction of a state to span{i, j} (x) span{k, l}.

    ``block`` holds the amplitudes at (i,k), (i,l), (j,k), (j,l). ``c_const``
    is ``1 / weight_T`` or None when the weight is below the skip cutoff.
    """

    alpha: GeneratorIndex
    beta: GeneratorIndex
    block: np.ndarray
    weight_T: float
    c_const: float | None

    @property
    def defined(self):
        return self.c_const is not None


def block_from_amplitudes(alpha, beta, block):
    block = np.asarray(block, dtype=np.complex128).reshape(4)
    weight = float(np.sum(np.abs(block) ** 2))
    c = 1.0 / weight if weight > EPS_SKIP else None
    return BlockState(_pair(alpha), _pair(beta), block, weight, c)


def block_extract(state, alpha, beta):
    alpha = _pair(alpha).check(state.m)
    beta = _pair(beta).check(state.n)
    a = state.amplitudes
    i, j, k, l = alpha.lo - 1, alpha.hi - 1, beta.lo - 1, beta.hi - 1
    return block_from_amplitudes(alpha, beta, [a[i, k], a[i, l], a[j, k], a[j, l]])


def block_concurrence(b):
    """Two-qubit concurrence 2|b_ik b_jl - b_il b_jk| of the normalized block."""
    if not b.defined:
        raise DegenerateBlockError(
            f"block {b.alpha.as_tuple()}x{b.beta.as_tuple()} has weight {b.weight_T:.3g}"
        )
    x = b.block
    c = 2.0 * abs(x[0] * x[3] - x[1] * x[2]) / b.weight_T
    return float(min(1.0, max(0.0, c)))


def eof_from_concurrence(c):
    """Two-qubit pure-state monotone h((1 + sqrt(1 - C^2)) / 2)."""
    c = min(1.0, max(0.0, float(c)))
    # smaller eigenvalue (1 - sqrt(1 - C^2)) / 2 without cancellation
    small = c * c / (2.0 * (1.0 + np.sqrt(1.0 - c * c)))
    return binary_entropy(small)


def block_eof(b):
    return eof_from_concurrence(block_concurrence(b))


def local_weight(state, alpha, beta):
    """<psi| L_a^dag L_a (x) L_b^dag L_b |psi> computed with full matrices."""
    la = generator(state.m, alpha)
    lb = generator(state.n, beta)
    op = np.kron(la.T @ la, lb.T @ lb)
    v = state.vector
    return float(np.real(v.conj() @ op @ v))


def projected_spectrum(state, alpha, beta):
    """Nonzero eigenvalues of Tr_B of the projected (unnormalized) state."""
    p = apply_projection(state, alpha, beta)
    mu = np.linalg.eigvalsh(p @ p.conj().T)
    return mu[mu > EPS_ZERO]


def spectrum_census(state, mode="rect"):
    """Count how often each Schmidt value appears among projected-block spectra.

    Returns a dict mapping 1-based Schmidt index k to its multiplicity. Each
    block eigenvalue is matched to an unused index whose value agrees within
    ``CENSUS_TOL``, preferring indices of the block's A-side pair.
    """
    if not is_schmidt_diagonal(state):
        raise InvalidBasisError("spectrum_census requires a Schmidt-diagonal state")
    lam = np.abs(np.diagonal(state.amplitudes)) ** 2
    counts = {k: 0 for k in range(1, state.m + 1)}
    for alpha, beta in enumerate_pairs(state.m, state.n, mode):
        if block_extract(state, alpha, beta).weight_T <= EPS_SKIP:
            continue
        used = set()
        for mu in projected_spectrum(state, alpha, beta):
            preferred = [alpha.lo, alpha.hi]
            rest = [k for k in counts if k not in preferred]
            match = next(
                (k for k in preferred + rest if k not in used and abs(lam[k - 1] - mu) <= CENSUS_TOL),
                None,
            )
            if match is None:
                raise InvalidBasisError(
                    f"block eigenvalue {mu:.6g} for {alpha.as_tuple()}x{beta.as_tuple()} "
                    "matches no Schmidt value"
                )
            used.add(match)
            counts[match] += 1
    return counts

