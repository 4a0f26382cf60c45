"""Bipartite pure states, Schmidt decomposition and direct entanglement of formation."""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateStateError,
    DimensionError,
    InvalidInputError,
    InvalidSpectrumError,
    InvalidUnitaryError,
    NormalizationError,
)
from .linalg import as_matrix, svd

NORM_TOL = 1e-8
EPS_ZERO = 1e-12
MAX_DIM = 32


@dataclass(frozen=True, eq=False)
class PureState:
    """A normalized state sum_ij a_ij |i>|j> on C^m (x) C^n with m <= n.

    ``amplitudes`` is the m x n coefficient matrix (A index along rows). It is
    stored read-only; build instances through :func:`new_pure_state`.
    """

    m: int
    n: int
    amplitudes: np.ndarray

    @property
    def vector(self):
        """Row-major state vector of length m*n."""
        return self.amplitudes.reshape(-1)

    def __eq__(self, other):
        if not isinstance(other, PureState):
            return NotImplemented
        return (
            self.m == other.m
            and self.n == other.n
            and np.array_equal(self.amplitudes, other.amplitudes)
        )

    __hash__ = None


def new_pure_state(m, n, amplitudes, renormalize=False, max_dim=MAX_DIM):
    """Validate dimensions and normalization and return a :class:`PureState`.

    ``amplitudes`` may be a flat row-major sequence of m*n values or an
    m x n array.
    """
    m, n = int(m), int(n)
    if not 2 <= m <= n:
        raise DimensionError(f"need 2 <= m <= n, got m={m}, n={n}")
    if n > max_dim:
        raise DimensionError(f"dimension {n} exceeds cap {max_dim}")
    arr = np.array(amplitudes, dtype=np.complex128)
    if arr.size != m * n:
        raise DimensionError(f"expected {m * n} amplitudes for {m}x{n}, got {arr.size}")
    if arr.ndim == 2 and arr.shape != (m, n):
        raise DimensionError(f"amplitude matrix has shape {arr.shape}, expected {(m, n)}")
    arr = arr.reshape(m, n)
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("amplitudes contain NaN or infinite entries")

    norm = float(np.linalg.norm(arr))
    if renormalize:
        if norm <= EPS_ZERO:
            raise DegenerateStateError("cannot renormalize a zero state vector")
        arr = arr / norm
    elif abs(norm**2 - 1.0) > NORM_TOL:
        if norm <= EPS_ZERO:
            raise DegenerateStateError("state vector is zero")
        raise NormalizationError(
            f"amplitudes are not normalized: sum |a_ij|^2 = {norm**2:.12g}, must equal 1"
        )
    arr.setflags(write=False)
    return PureState(m, n, arr)


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Schmidt values and the local bases realizing them.

    ``basis_a[:, i]`` and ``basis_b[:, i]`` are the i-th Schmidt vectors so that
    the state equals sum_i sqrt(values[i]) basis_a[:, i] (x) basis_b[:, i].
    """

    values: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray

    def rotate(self, state):
        """Coefficient matrix of ``state`` expressed in the Schmidt bases."""
        return self.basis_a.conj().T @ state.amplitudes @ self.basis_b.conj()


def schmidt(state):
    u, s, v = svd(state.amplitudes, full_matrices=True)
    values = s**2
    values[values < EPS_ZERO] = 0.0
    values /= values.sum()
    return SchmidtDecomposition(values=values, basis_a=u, basis_b=v.conj())


def to_schmidt_basis(state):
    """Equivalent state whose coefficient matrix is diag(sqrt(lambda_i))."""
    values = schmidt(state).values
    diag = np.sqrt(values)
    diag /= np.linalg.norm(diag)
    amps = np.zeros((state.m, state.n), dtype=np.complex128)
    amps[np.arange(state.m), np.arange(state.m)] = diag
    return new_pure_state(state.m, state.n, amps)


def is_schmidt_diagonal(state, atol=1e-10):
    """True when the coefficient matrix is real, nonnegative and diagonal."""
    a = state.amplitudes
    off = a.copy()
    off[np.arange(state.m), np.arange(state.m)] = 0.0
    d = np.diagonal(a)
    return bool(
        np.all(np.abs(off) <= atol) and np.all(np.abs(d.imag) <= atol) and np.all(d.real >= -atol)
    )


def reduced_density_a(state):
    a = state.amplitudes
    return a @ a.conj().T


def reduced_density_b(state):
    a = state.amplitudes
    return (a.conj().T @ a).T


def von_neumann_entropy(spectrum):
    """Shannon entropy in bits of a probability vector, with 0 log 0 = 0."""
    p = np.asarray(spectrum, dtype=float).reshape(-1)
    if p.size == 0 or not np.all(np.isfinite(p)):
        raise InvalidSpectrumError("spectrum must be a non-empty finite vector")
    if np.any(p < -1e-12):
        raise InvalidSpectrumError(f"spectrum has a negative entry {p.min():.3g}")
    if abs(p.sum() - 1.0) > NORM_TOL:
        raise InvalidSpectrumError(f"spectrum sums to {p.sum():.12g}, not 1")
    p = p[p > 0]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def binary_entropy(x):
    """h(x) = -x log2 x - (1-x) log2 (1-x)."""
    return von_neumann_entropy([x, 1.0 - x])


def eof_direct(state):
    """Entanglement of formation in bits from the Schmidt spectrum."""
    return von_neumann_entropy(schmidt(state).values)


# state generators


def haar_unitary(d, rng):
    """Haar-distributed d x d unitary via QR with the phase fix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * ph


def _check_unitary(u, d, side):
    u = as_matrix(u, f"unitary on side {side}")
    if u.shape != (d, d):
        raise DimensionError(f"side {side} unitary must be {d}x{d}, got {u.shape}")
    dev = np.max(np.abs(u.conj().T @ u - np.eye(d)))
    if dev > 1e-8:
        raise InvalidUnitaryError(f"side {side} rotation deviates from unitary by {dev:.3g}")
    return u


def haar_random(m, n, seed=None):
    rng = np.random.default_rng(seed)
    amps = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
    return new_pure_state(m, n, amps, renormalize=True)


def schmidt_diag(lambdas, n=None):
    lam = np.asarray(lambdas, dtype=float).reshape(-1)
    if lam.size < 2 or np.any(lam < 0) or abs(lam.sum() - 1.0) > NORM_TOL:
        raise InvalidSpectrumError(
            f"Schmidt values must be >= 0, at least two, and sum to 1; got {lam.tolist()}"
        )
    m = lam.size
    n = m if n is None else int(n)
    amps = np.zeros((m, n), dtype=np.complex128)
    amps[np.arange(m), np.arange(m)] = np.sqrt(lam)
    return new_pure_state(m, n, amps)


def bell():
    return schmidt_diag([0.5, 0.5])


def max_entangled(d):
    return schmidt_diag(np.full(d, 1.0 / d))


def product(m, n, seed=None):
    """Random product state phi_A (x) phi_B."""
    rng = np.random.default_rng(seed)
    fa = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    fb = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return new_pure_state(m, n, np.outer(fa, fb), renormalize=True)


def rotated(base, u_a, u_b):
    """Apply local unitaries: a -> U_A a U_B^T."""
    u_a = _check_unitary(u_a, base.m, "A")
    u_b = _check_unitary(u_b, base.n, "B")
    return new_pure_state(base.m, base.n, u_a @ base.amplitudes @ u_b.T, renormalize=True)


def gen_state(kind, seed=None, **params):
    """Build a state from a family name.

    ``kind`` is one of ``haar_random`` (m, n), ``schmidt_diag`` (lambdas, n),
    ``bell``, ``max_entangled`` (d), ``product`` (m, n) or ``rotated``
    (base, u_a, u_b; random Haar rotations drawn from ``seed`` when omitted).
    """
    if kind == "haar_random":
        return haar_random(params["m"], params["n"], seed)
    if kind == "schmidt_diag":
        return schmidt_diag(params["lambdas"], params.get("n"))
    if kind == "bell":
        return bell()
    if kind == "max_entangled":
        return max_entangled(params["d"])
    if kind == "product":
        return product(params["m"], params["n"], seed)
    if kind == "rotated":
        base = params["base"]
        rng = np.random.default_rng(seed)
        u_a = params.get("u_a")
        u_b = params.get("u_b")
        if u_a is None:
            u_a = haar_unitary(base.m, rng)
        if u_b is None:
            u_b = haar_unitary(base.n, rng)
        return rotated(base, u_a, u_b)
    raise ValueError(f"unknown state kind {kind!r}")


# JSON state file format: {"m": int, "n": int, "amplitudes": [[re, im], ...]}


def state_to_dict(state):
    return {
        "m": state.m,
        "n": state.n,
        "amplitudes": [[float(z.real), float(z.imag)] for z in state.vector],
    }


def state_from_dict(data):
    if not isinstance(data, dict):
        raise InvalidInputError("state file must contain a JSON object")
    for key in ("m", "n", "amplitudes"):
        if key not in data:
            raise InvalidInputError(f"state file is missing field {key!r}")
    m, n = data["m"], data["n"]
    for key, val in (("m", m), ("n", n)):
        if isinstance(val, bool) or not isinstance(val, int):
            raise InvalidInputError(f"field {key!r} must be an integer, got {val!r}")
    raw = data["amplitudes"]
    if not isinstance(raw, list):
        raise InvalidInputError("field 'amplitudes' must be a list of [re, im] pairs")
    amps = []
    for idx, pair in enumerate(raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise InvalidInputError(f"field 'amplitudes[{idx}]' must be a [re, im] number pair")
        amps.append(complex(pair[0], pair[1]))
    if len(amps) != m * n:
        raise DimensionError(
            f"field 'amplitudes' has {len(amps)} entries, expected m*n = {m * n}"
        )
    return new_pure_state(m, n, amps)
