"""Local observables on two-qubit blocks and a finite-shot estimator of EoF.

For a generator pair (i, j) on one side, the embedded operators are

* s = 0: projector onto span{i, j}
* s = 1: |i><j| + |j><i|
* s = 2: i|i><j| - i|j><i|
* s = 3: |i><i| - |j><j|

Expectations are taken in the full (unnormalized-block) state, so
``<S0 (x) G0>`` equals the block weight T and the normalized-block quantities
are recovered by multiplying with ``C = 1/T``.
"""

from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DegenerateBlockError, DimensionError, InvalidInputError
from .projections import (
    EPS_SKIP,
    GeneratorIndex,
    _pair,
    block_extract,
    check_mode,
    enumerate_pairs,
    eof_from_concurrence,
    normalization,
)
from .reconstruction import block_contribution, check_basis
from .states import to_schmidt_basis

PAULIS = (
    np.array([[1, 0], [0, 1]], dtype=np.complex128),
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, 1j], [-1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)

# (s, t) labels of the ExpectationSet fields, in field order.
OBSERVABLES = ((0, 0), (3, 3), (3, 0), (0, 3), (0, 1), (3, 1), (0, 2), (3, 2))
# sign of each squared mean inside the concurrence bracket (index 0 is the weight)
_BRACKET_SIGNS = np.array([0.0, 1.0, -1.0, -1.0, -1.0, 1.0, -1.0, 1.0])


@dataclass(frozen=True)
class ObservableSpec:
    side_dim: int
    pair: GeneratorIndex
    s: int

    def __post_init__(self):
        object.__setattr__(self, "pair", _pair(self.pair))
        if self.s not in (0, 1, 2, 3):
            raise ValueError(f"observable index must be 0..3, got {self.s}")


def build_observable(spec):
    """Dense side_dim x side_dim matrix of the embedded operator."""
    spec.pair.check(spec.side_dim)
    out = np.zeros((spec.side_dim, spec.side_dim), dtype=np.complex128)
    idx = np.array([spec.pair.lo - 1, spec.pair.hi - 1])
    out[np.ix_(idx, idx)] = PAULIS[spec.s]
    return out


def expectation(state, a_spec, b_spec):
    """<psi| Sigma_s (x) Gamma_t |psi> for the full state (real part)."""
    if a_spec.side_dim != state.m or b_spec.side_dim != state.n:
        raise DimensionError(
            f"observables act on {a_spec.side_dim}x{b_spec.side_dim}, state is {state.m}x{state.n}"
        )
    a = state.amplitudes
    sa = build_observable(a_spec)
    gb = build_observable(b_spec)
    return float(np.real(np.sum(a.conj() * (sa @ a @ gb.T))))


def block_expectation(block, s, t):
    """Same expectation evaluated on the 4 block amplitudes (ik, il, jk, jl)."""
    x = np.asarray(block, dtype=np.complex128)
    return float(np.real(x.conj() @ np.kron(PAULIS[s], PAULIS[t]) @ x))


def weight_from_observable(state, alpha, beta):
    alpha, beta = _pair(alpha), _pair(beta)
    return expectation(state, ObservableSpec(state.m, alpha, 0), ObservableSpec(state.n, beta, 0))


@dataclass(frozen=True)
class ExpectationSet:
    s0g0: float
    s3g3: float
    s3g0: float
    s0g3: float
    s0g1: float
    s3g1: float
    s0g2: float
    s3g2: float

    @classmethod
    def from_array(cls, values):
        return cls(*(float(v) for v in values))

    def to_array(self):
        return np.array(list(asdict(self).values()))


def exact_expectations(state, alpha, beta):
    alpha, beta = _pair(alpha), _pair(beta)
    return ExpectationSet.from_array(
        [
            expectation(state, ObservableSpec(state.m, alpha, s), ObservableSpec(state.n, beta, t))
            for s, t in OBSERVABLES
        ]
    )


def _concurrence_sq(means, squares=None, clamp=True):
    """Closing-formula C^2 from an array of eight means (weight first)."""
    means = np.asarray(means, dtype=float)
    weight = means[0]
    if weight <= EPS_SKIP:
        raise DegenerateBlockError(f"block weight {weight:.3g} is below the skip cutoff")
    sq = means**2 if squares is None else squares
    c_ab = 1.0 / weight
    value = 0.5 + 0.5 * c_ab**2 * float(np.dot(_BRACKET_SIGNS, sq))
    return min(1.0, max(0.0, value)) if clamp else value


def concurrence_sq_from_observables(es, clamp=True):
    return _concurrence_sq(es.to_array(), clamp=clamp)


# sampling


@dataclass(frozen=True)
class ShotPlan:
    shots_per_observable: int
    master_seed: int = 0

    def __post_init__(self):
        if int(self.shots_per_observable) < 1:
            raise InvalidInputError("shots_per_observable must be >= 1")
        if not 0 <= int(self.master_seed) < 2**64:
            raise InvalidInputError("master_seed must be a 64-bit unsigned integer")


def _as_entropy(stream_seed):
    if isinstance(stream_seed, (int, np.integer)):
        return [int(stream_seed)]
    return [int(x) for x in stream_seed]


def outcome_probabilities(block, s, t):
    """(p_minus, p_zero, p_plus) of measuring Sigma_s (x) Gamma_t.

    Only the 4x4 restriction to the block subspace has nonzero eigenvalues, so
    the spectral projectors are built there; everything outside contributes to
    outcome 0.
    """
    x = np.asarray(block, dtype=np.complex128)
    evals, evecs = np.linalg.eigh(np.kron(PAULIS[s], PAULIS[t]))
    amp2 = np.abs(evecs.conj().T @ x) ** 2
    labels = np.rint(evals)
    p_plus = float(np.clip(amp2[labels == 1].sum(), 0.0, 1.0))
    p_minus = float(np.clip(amp2[labels == -1].sum(), 0.0, 1.0))
    total = p_plus + p_minus
    if total > 1.0:
        p_plus, p_minus = p_plus / total, p_minus / total
    return np.array([p_minus, max(0.0, 1.0 - p_plus - p_minus), p_plus])


def _sample(probs, shots, entropy):
    rng = np.random.default_rng(np.random.SeedSequence(entropy))
    return rng.multinomial(shots, probs / probs.sum())


def sample_observable(state, a_spec, b_spec, shots, stream_seed):
    """Simulate ``shots`` projective measurements; returns counts keyed by -1, 0, +1."""
    if a_spec.side_dim != state.m or b_spec.side_dim != state.n:
        raise DimensionError("observable dimensions do not match the state")
    if shots < 1:
        raise InvalidInputError("shots must be >= 1")
    block = block_extract(state, a_spec.pair, b_spec.pair).block
    probs = outcome_probabilities(block, a_spec.s, b_spec.s)
    counts = _sample(probs, int(shots), _as_entropy(stream_seed))
    return {-1: int(counts[0]), 0: int(counts[1]), 1: int(counts[2])}


@dataclass
class BlockEstimate:
    alpha: tuple
    beta: tuple
    T_hat: float
    C_hat: float
    C2_hat: float
    E_block_hat: float
    contribution: float
    std_error: float
    clamps: list = field(default_factory=list)


@dataclass
class EstimateReport:
    mode: str
    basis: str
    normalization: float
    shots_per_observable: int
    master_seed: int
    exact: bool
    blocks: list
    e_hat: float
    std_error: float
    shots_used: int
    dropped_blocks: int
    certified: bool
    unbiased: bool = False
    bootstrap_std_error: float | None = None

    def to_dict(self):
        return asdict(self)


def _block_estimate(means, var_mean, unbiased):
    """Contribution, E, T, C^2 and clamp notes from estimated means."""
    clamps = []
    weight = means[0]
    if weight > 1.0:
        clamps.append("T_hat clipped to 1")
        weight = 1.0
    sq = means**2
    if unbiased:
        sq = sq - var_mean
    raw = _concurrence_sq(np.concatenate(([weight], means[1:])), squares=sq, clamp=False)
    c2 = min(1.0, max(0.0, raw))
    if c2 != raw:
        clamps.append(f"C2_hat {raw:.3g} clipped to [0, 1]")
    e = eof_from_concurrence(np.sqrt(c2))
    return float(block_contribution(weight, e)), e, weight, c2, clamps


def _contribution_only(means, var_mean, unbiased):
    if means[0] <= EPS_SKIP:
        return 0.0
    return _block_estimate(means, var_mean, unbiased)[0]


def _delta_std(means, var_mean, unbiased, step=1e-7):
    """First-order propagation of independent per-observable variances."""
    grad = np.zeros(len(means))
    for k in range(len(means)):
        up, dn = means.copy(), means.copy()
        up[k] += step
        dn[k] -= step
        grad[k] = (
            _contribution_only(up, var_mean, unbiased) - _contribution_only(dn, var_mean, unbiased)
        ) / (2 * step)
    return float(np.sqrt(np.sum(grad**2 * var_mean)))


def _moments(counts, shots):
    mean = (counts[:, 2] - counts[:, 0]) / shots
    second = (counts[:, 2] + counts[:, 0]) / shots
    var = np.maximum(second - mean**2, 0.0)
    if shots > 1:
        var = var * shots / (shots - 1)
    return mean, var / shots


def estimate_eof(
    state, plan, mode="rect", basis="schmidt", exact=False, unbiased=False, bootstrap=0
):
    """Estimate EoF from simulated local measurements.

    Every block of the enumeration gets ``plan.shots_per_observable`` shots on
    each of the eight observables. Each (block, observable) pair draws from its
    own generator seeded by ``(master_seed, block index, observable index)``.

    Parameters
    ----------
    exact : bool
        Use exact outcome probabilities instead of sampled counts (the
        infinite-shot limit).
    unbiased : bool
        Subtract the variance of each sample mean from its square before it
        enters the concurrence formula; removes the O(1/N) upward bias.
    bootstrap : int
        Number of nonparametric bootstrap replicates for an extra standard
        error estimate; 0 disables it.
    """
    check_mode(mode)
    check_basis(basis)
    work = to_schmidt_basis(state) if basis == "schmidt" else state
    norm = normalization(state.m, state.n, mode)
    shots = int(plan.shots_per_observable)
    pairs = enumerate_pairs(state.m, state.n, mode)

    block_counts = []
    records = []
    total = 0.0
    var_total = 0.0
    dropped = 0
    for b_idx, (alpha, beta) in enumerate(pairs):
        x = block_extract(work, alpha, beta).block
        probs = np.array([outcome_probabilities(x, s, t) for s, t in OBSERVABLES])
        if exact:
            counts = probs * shots
            means = probs[:, 2] - probs[:, 0]
            var_mean = np.zeros(len(OBSERVABLES))
        else:
            counts = np.array(
                [
                    _sample(p, shots, [plan.master_seed, 0, b_idx, o_idx])
                    for o_idx, p in enumerate(probs)
                ]
            )
            means, var_mean = _moments(counts, shots)
        block_counts.append(counts)
        if means[0] <= EPS_SKIP:
            dropped += 1
            continue
        contribution, e, weight, c2, clamps = _block_estimate(means, var_mean, unbiased)
        std = 0.0 if exact else _delta_std(means, var_mean, unbiased)
        records.append(
            BlockEstimate(
                alpha=alpha.as_tuple(),
                beta=beta.as_tuple(),
                T_hat=float(weight),
                C_hat=float(1.0 / weight),
                C2_hat=float(c2),
                E_block_hat=float(e),
                contribution=contribution,
                std_error=norm * std,
                clamps=clamps,
            )
        )
        total += contribution
        var_total += std**2

    boot = None
    if bootstrap and not exact:
        boot = _bootstrap(block_counts, shots, plan.master_seed, unbiased, int(bootstrap)) * norm

    return EstimateReport(
        mode=mode,
        basis=basis,
        normalization=norm,
        shots_per_observable=shots,
        master_seed=int(plan.master_seed),
        exact=bool(exact),
        blocks=records,
        e_hat=float(norm * total),
        std_error=float(norm * np.sqrt(var_total)),
        shots_used=0 if exact else shots * len(OBSERVABLES) * len(pairs),
        dropped_blocks=dropped,
        certified=basis == "schmidt",
        unbiased=bool(unbiased),
        bootstrap_std_error=None if boot is None else float(boot),
    )


def _bootstrap(block_counts, shots, master_seed, unbiased, reps):
    rng = np.random.default_rng(np.random.SeedSequence([master_seed, 1]))
    totals = np.zeros(reps)
    for counts in block_counts:
        p_hat = counts / shots
        for r in range(reps):
            resampled = np.array([rng.multinomial(shots, p) for p in p_hat])
            means, var_mean = _moments(resampled, shots)
            totals[r] += _contribution_only(means, var_mean, unbiased)
    return float(np.std(totals, ddof=1)) if reps > 1 else 0.0
