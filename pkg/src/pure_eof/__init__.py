"""Entanglement of formation of bipartite pure states by three routes.

* :func:`eof_direct` - entropy of the Schmidt spectrum.
* :func:`reconstruct_eof` - sum over two-qubit blocks cut out by pairs of
  antisymmetric generators, each block evaluated through its concurrence.
* :func:`estimate_eof` - the same sum assembled from simulated finite-shot
  measurements of local observables.
"""

from .errors import (
    DegenerateBlockError,
    DegenerateStateError,
    DimensionError,
    EoFError,
    InvalidBasisError,
    InvalidInputError,
    InvalidSpectrumError,
    InvalidUnitaryError,
    NormalizationError,
)
from .estimators import EoFTransformer
from .linalg import adjoint, hs_norm, mat_mul, svd, trace
from .measurement import (
    ExpectationSet,
    ObservableSpec,
    ShotPlan,
    build_observable,
    concurrence_sq_from_observables,
    estimate_eof,
    exact_expectations,
    expectation,
    sample_observable,
    weight_from_observable,
)
from .projections import (
    BlockState,
    GeneratorIndex,
    apply_projection,
    block_concurrence,
    block_eof,
    block_extract,
    enumerate_pairs,
    spectrum_census,
)
from .reconstruction import ReconstructionReport, reconstruct_eof, verify_theorem
from .states import (
    PureState,
    SchmidtDecomposition,
    eof_direct,
    gen_state,
    new_pure_state,
    reduced_density_a,
    schmidt,
    to_schmidt_basis,
    von_neumann_entropy,
)

__version__ = "0.1.0"
