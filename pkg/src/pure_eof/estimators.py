"""scikit-learn compatible front end.

:class:`EoFTransformer` maps a batch of pure-state amplitude vectors to a
single column of entanglement-of-formation values, so it can sit inside a
``Pipeline`` or be cloned and grid-searched like any other transformer.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .measurement import ShotPlan, estimate_eof
from .reconstruction import check_basis, reconstruct_eof
from .projections import check_mode
from .states import eof_direct, new_pure_state

METHODS = ("direct", "theorem", "measured")


def check_states(X, m, n, renormalize=False):
    """Validate a batch of amplitudes and return a list of PureState.

    ``X`` may have shape (n_samples, m*n) in row-major order or
    (n_samples, m, n). Complex dtype is preserved; sklearn's ``check_array``
    rejects complex input so the checks are done here.
    """
    arr = np.asarray(X)
    if arr.ndim == 3:
        if arr.shape[1:] != (m, n):
            raise ValueError(f"expected samples of shape {(m, n)}, got {arr.shape[1:]}")
        arr = arr.reshape(arr.shape[0], m * n)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D or 3-D array, got {arr.ndim}-D")
    if arr.shape[1] != m * n:
        raise ValueError(f"X has {arr.shape[1]} features, but m*n = {m * n}")
    if arr.shape[0] < 1:
        raise ValueError("X contains no samples")
    return [new_pure_state(m, n, row, renormalize=renormalize) for row in arr]


class EoFTransformer(TransformerMixin, BaseEstimator):
    """Entanglement of formation (bits) of each state in a batch.

    Parameters
    ----------
    m, n : int
        Local dimensions with ``2 <= m <= n``.
    method : {"direct", "theorem", "measured"}
        Schmidt-spectrum entropy, block reconstruction, or simulated
        finite-shot measurement.
    mode : {"rect", "paper"}
        Generator-pair enumeration used by the block-based methods.
    basis : {"schmidt", "raw"}
        Basis the block-based methods operate in.
    shots : int
        Shots per observable for ``method="measured"``.
    random_state : int
        Master seed; sample ``i`` uses a stream derived from (random_state, i).
    renormalize : bool
        Divide each row by its norm instead of rejecting unnormalized input.
    """

    def __init__(
        self,
        m=2,
        n=2,
        method="direct",
        mode="rect",
        basis="schmidt",
        shots=10_000,
        random_state=0,
        renormalize=False,
    ):
        self.m = m
        self.n = n
        self.method = method
        self.mode = mode
        self.basis = basis
        self.shots = shots
        self.random_state = random_state
        self.renormalize = renormalize

    def fit(self, X, y=None):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        check_mode(self.mode)
        check_basis(self.basis)
        check_states(X, self.m, self.n, self.renormalize)
        self.n_features_in_ = self.m * self.n
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        states = check_states(X, self.m, self.n, self.renormalize)
        return np.array([[self._eof(i, s)] for i, s in enumerate(states)])

    def _eof(self, index, state):
        if self.method == "direct":
            return eof_direct(state)
        if self.method == "theorem":
            return reconstruct_eof(state, self.mode, self.basis).total
        seed = np.random.SeedSequence([int(self.random_state), index]).generate_state(1, np.uint64)[0]
        return estimate_eof(state, ShotPlan(self.shots, int(seed)), self.mode, self.basis).e_hat

    def get_feature_names_out(self, input_features=None):
        return np.array(["eof_bits"], dtype=object)
