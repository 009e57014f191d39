"""Density matrices, reduced density matrices and conditional density matrices
on finite-dimensional tensor-product spaces."""
from ._backend import NAME as BACKEND
from .errors import (
    AxiomViolation,
    BasisError,
    ConvergenceError,
    DimensionError,
    HermiticityError,
    LengthError,
    NormalizationError,
    OrthogonalityError,
    QcdmError,
    ShapeError,
    ZeroProbability,
)
from .linalg import adjoint, eig_hermitian, matmul, partial_trace, tensor, tensor_vec, trace
from .spin import Direction, chi, projector_onto, sigma_dot_n, singlet
from .state import (
    ConditionalResult,
    DensityMatrix,
    Observable,
    Projector,
    SpectralDecomposition,
    conditional,
    dispersion,
    expectation,
    has_definite_value,
    is_pure,
    mixture_expansion,
    purity,
    reduce,
    spectral,
)

__version__ = "0.1.0"
