"""Density matrices, observables, reduced and conditional density matrices."""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import AxiomViolation, BasisError, DimensionError, HermiticityError, ZeroProbability

TOL_AXIOM = 1e-9
TOL_DERIVED = 1e-8  # re-validation after partial traces; rounding compounds
TOL_IDEMPOTENT = 1e-9
TOL_PURE = 1e-8
TOL_PROB = 1e-12
TOL_IMAG = 1e-9
TOL_DISPERSION_CLAMP = 1e-10
TOL_BASIS = 1e-9


@dataclass(frozen=True)
class AxiomReport:
    """Measured residuals of the three density-matrix axioms."""

    hermiticity_residual: float
    trace: complex
    min_eigenvalue: float
    norm: float
    tol: float

    @property
    def hermitian(self) -> bool:
        return self.hermiticity_residual <= self.tol * max(1.0, self.norm)

    @property
    def unit_trace(self) -> bool:
        return abs(self.trace - 1.0) <= self.tol

    @property
    def positive(self) -> bool:
        return self.min_eigenvalue >= -self.tol

    @property
    def ok(self) -> bool:
        return self.hermitian and self.unit_trace and self.positive


def check_axioms(matrix, tol: float = TOL_AXIOM) -> AxiomReport:
    """Hermiticity, unit trace and positivity residuals of ``matrix``.

    Positivity is measured on the Hermitian part, so a non-Hermitian input
    still gets a meaningful smallest eigenvalue.
    """
    m = linalg.as_matrix(matrix)
    herm = (m + m.conj().T) / 2
    w, _ = linalg.eig_hermitian(herm)
    return AxiomReport(
        hermiticity_residual=linalg.hermiticity_residual(m),
        trace=complex(np.trace(m)),
        min_eigenvalue=float(w[-1]),
        norm=float(np.linalg.norm(m)),
        tol=tol,
    )


class DensityMatrix:
    """A validated density matrix with its tensor-factor shape.

    ``shape`` lists the factor dimensions (defaults to a single factor). The
    stored matrix is read-only.
    """

    __slots__ = ("matrix", "shape")

    def __init__(self, matrix, shape: Sequence[int] | None = None, *, tol: float = TOL_AXIOM):
        m = linalg.as_matrix(matrix)
        dims = linalg.check_shape(shape if shape is not None else [m.shape[0]], m.shape[0])
        report = check_axioms(m, tol)
        if not report.ok:
            raise AxiomViolation(_describe(report))
        object.__setattr__(self, "matrix", linalg.frozen(m))
        object.__setattr__(self, "shape", dims)

    def __setattr__(self, name, value):
        raise AttributeError("DensityMatrix is immutable")

    @classmethod
    def from_vector(cls, psi, shape: Sequence[int] | None = None) -> DensityMatrix:
        """The pure state ``|psi><psi|``."""
        v = linalg.as_vector(psi)
        return cls(np.outer(v, v.conj()), shape)

    @classmethod
    def maximally_mixed(cls, dim: int) -> DensityMatrix:
        return cls(np.eye(dim) / dim)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self):
        return f"DensityMatrix(shape={list(self.shape)}, purity={purity(self):.6g})"

    def to_json(self) -> dict:
        out = linalg.matrix_to_json(self.matrix)
        out["shape"] = list(self.shape)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> DensityMatrix:
        m = linalg.matrix_from_json(obj)
        return cls(m, obj.get("shape"))


def _describe(report: AxiomReport) -> str:
    failed = []
    if not report.hermitian:
        failed.append(f"not Hermitian (residual {report.hermiticity_residual:.3e})")
    if not report.unit_trace:
        failed.append(f"trace {report.trace:.6g} != 1")
    if not report.positive:
        failed.append(f"negative eigenvalue {report.min_eigenvalue:.6g}")
    return "; ".join(failed) or "ok"


def _hermitian_matrix(matrix, what: str) -> np.ndarray:
    m = linalg.as_matrix(matrix)
    resid = linalg.hermiticity_residual(m)
    if resid > TOL_AXIOM * max(1.0, float(np.linalg.norm(m))):
        raise HermiticityError(f"{what} is not Hermitian (residual {resid:.3e})")
    return linalg.frozen(m)


@dataclass(frozen=True, eq=False)
class Observable:
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", _hermitian_matrix(self.matrix, "observable"))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class Projector:
    """Hermitian idempotent operator, ``P @ P == P``."""

    matrix: np.ndarray

    def __post_init__(self):
        m = _hermitian_matrix(self.matrix, "projector")
        resid = float(np.linalg.norm(m @ m - m))
        if resid > TOL_IDEMPOTENT:
            raise AxiomViolation(f"projector is not idempotent (residual {resid:.3e})")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def rank(self) -> int:
        return int(round(np.trace(self.matrix).real))


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    eigenvalues: tuple[float, ...]
    projectors: tuple[Projector, ...]

    def reconstruct(self) -> np.ndarray:
        return sum(p * P.matrix for p, P in zip(self.eigenvalues, self.projectors))


@dataclass(frozen=True)
class ConditionalResult:
    cdm: DensityMatrix
    probability: float


def _operator(f, dim: int) -> np.ndarray:
    m = f.matrix if isinstance(f, (Observable, Projector)) else Observable(f).matrix
    if m.shape[0] != dim:
        raise DimensionError(f"operator dimension {m.shape[0]} does not match state dimension {dim}")
    return m


def expectation(f, rho: DensityMatrix) -> float:
    """Average value ``Tr(F rho)``."""
    m = _operator(f, rho.dim)
    val = np.einsum("ij,ji->", m, rho.matrix)
    if abs(val.imag) > TOL_IMAG * max(1.0, float(np.linalg.norm(m))):
        raise HermiticityError(f"expectation has imaginary part {val.imag:.3e}")
    return float(val.real)


def dispersion(f, rho: DensityMatrix) -> float:
    """Variance ``Tr(Q^2 rho)`` with ``Q = F - <F>``; tiny negatives clamp to 0."""
    m = _operator(f, rho.dim)
    mean = expectation(Observable(m), rho)
    q = m - mean * np.eye(rho.dim)
    d = float(np.einsum("ij,jk,ki->", q, q, rho.matrix).real)
    if d < 0:
        if d < -TOL_DISPERSION_CLAMP:
            raise AxiomViolation(f"negative dispersion {d:.3e}")
        d = 0.0
    return d


def has_definite_value(f, rho: DensityMatrix, tol: float) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    return dispersion(f, rho) <= tol


def purity(rho: DensityMatrix) -> float:
    return float(np.einsum("ij,ji->", rho.matrix, rho.matrix).real)


def is_pure(rho: DensityMatrix) -> bool:
    m = rho.matrix
    return float(np.linalg.norm(m @ m - m)) <= TOL_PURE


def reduce(rho: DensityMatrix, keep: int | Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on the factors in ``keep`` (1-based)."""
    keep = _indices(keep)
    m = linalg.partial_trace(rho.matrix, rho.shape, keep)
    dims = [rho.shape[k - 1] for k in sorted(keep)]
    return DensityMatrix(m, dims, tol=TOL_DERIVED)


def _indices(which) -> list[int]:
    if isinstance(which, (int, np.integer)):
        return [int(which)]
    return list(which)


def conditional(rho: DensityMatrix, p2, on_factor: int | Sequence[int]) -> ConditionalResult:
    """Conditional density matrix of the remaining factors, given that the
    factors in ``on_factor`` are selected by the projector ``p2``.

    ``on_factor`` may list several factors; ``p2`` then acts on their tensor
    product in the listed order. The result is
    ``Tr_S(P rho) / Tr(P rho)`` with ``P`` embedded as identity elsewhere.

    Raises ZeroProbability if ``Tr(P rho) <= 1e-12``.
    """
    if not isinstance(p2, Projector):
        p2 = Projector(p2)
    factors = _indices(on_factor)
    if len(rho.shape) < 2:
        raise DimensionError("conditioning needs a state with at least two factors")
    if len(factors) >= len(rho.shape):
        raise DimensionError("conditioning must leave at least one factor")
    big = linalg.embed(p2.matrix, rho.shape, factors)
    weighted = big @ rho.matrix
    p = float(np.trace(weighted).real)
    if p < -TOL_PROB or p > 1 + TOL_PROB:
        raise AxiomViolation(f"selection probability {p!r} outside [0, 1]")
    if p <= TOL_PROB:
        raise ZeroProbability(f"selection probability {p:.3e} is zero; the conditional state is undefined")
    keep = [k for k in range(1, len(rho.shape) + 1) if k not in factors]
    m = linalg.partial_trace(weighted, rho.shape, keep) / p
    # P rho is not Hermitian, but its partial trace over the projected factors is
    m = (m + m.conj().T) / 2
    cdm = DensityMatrix(m, [rho.shape[k - 1] for k in keep], tol=TOL_DERIVED)
    return ConditionalResult(cdm=cdm, probability=min(max(p, 0.0), 1.0))


def spectral(rho) -> SpectralDecomposition:
    """Group eigenvalues within 1e-8 and return one projector per group.

    Accepts a DensityMatrix, an Observable or a Hermitian matrix.
    """
    m = rho.matrix if hasattr(rho, "matrix") else rho
    w, v = linalg.eig_hermitian(m)
    values, projs = [], []
    for group in linalg.group_eigenvalues(w):
        vecs = v[:, group]
        values.append(float(np.mean(w[group])))
        projs.append(Projector(vecs @ vecs.conj().T))
    return SpectralDecomposition(tuple(values), tuple(projs))


def mixture_expansion(
    rho: DensityMatrix, basis2: Sequence, on_factor: int
) -> list[tuple[float, DensityMatrix | None]]:
    """Decompose the reduced state of the other factors into conditional states.

    For each basis vector ``phi_n`` of factor ``on_factor`` returns
    ``(p_n, cdm_n)``; ``cdm_n`` is None when ``p_n <= 1e-12``. Then
    ``sum p_n cdm_n`` equals the reduced density matrix of the complement.
    """
    d = rho.shape[on_factor - 1]
    vecs = np.array([linalg.as_vector(b, normalized=False) for b in basis2])
    if vecs.ndim != 2 or vecs.shape != (d, d):
        raise BasisError(f"basis must hold {d} vectors of dimension {d}")
    gram = vecs.conj() @ vecs.T
    if np.max(np.abs(gram - np.eye(d))) > TOL_BASIS:
        raise BasisError("basis is not orthonormal")
    out = []
    for phi in vecs:
        try:
            res = conditional(rho, Projector(np.outer(phi, phi.conj())), on_factor)
        except ZeroProbability:
            big = linalg.embed(np.outer(phi, phi.conj()), rho.shape, on_factor)
            p = float(np.trace(big @ rho.matrix).real)
            out.append((min(max(p, 0.0), 1.0), None))
        else:
            out.append((res.probability, res.cdm))
    return out


def random_density_matrix(dim: int, rng: np.random.Generator, rank: int | None = None,
                          shape: Sequence[int] | None = None) -> DensityMatrix:
    """``A A^H / Tr`` with a complex Gaussian ``dim x rank`` matrix ``A``."""
    rank = dim if rank is None else rank
    a = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = a @ a.conj().T
    return DensityMatrix(m / np.trace(m).real, shape)
