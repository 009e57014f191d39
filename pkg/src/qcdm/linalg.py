"""Dense complex linear algebra on small square matrices.

Matrices are ``numpy`` complex128 arrays. Tensor factors are ordered with
the left factor as the slow (outer) index, the ``np.kron`` convention, and
factor indices are 1-based everywhere in the public API.
"""
from __future__ import annotations

import math
from collections.abc import Iterable, Sequence

import numpy as np

from ._backend import kernels
from .errors import (
    ConvergenceError,
    DimensionError,
    HermiticityError,
    NormalizationError,
    ShapeError,
)

ATOL = 1e-12
RTOL = 1e-9
TOL_NORM = 1e-10
TOL_HERM = 1e-9
TOL_EIGGROUP = 1e-8
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def isclose(x, y, atol=ATOL, rtol=RTOL) -> bool:
    """``|x - y| <= atol + rtol * max(|x|, |y|)``."""
    return abs(x - y) <= atol + rtol * max(abs(x), abs(y))


def as_matrix(a) -> np.ndarray:
    """Validate and return ``a`` as a square, finite complex128 matrix."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def as_vector(v, *, normalized: bool = True) -> np.ndarray:
    """Validate a state vector; by default it must have unit norm."""
    x = np.asarray(v, dtype=np.complex128)
    if x.ndim != 1 or x.size < 1:
        raise DimensionError(f"expected a non-empty vector, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("vector has non-finite entries")
    if normalized and abs(np.linalg.norm(x) - 1.0) > TOL_NORM:
        raise NormalizationError(f"vector norm {np.linalg.norm(x):.3e} is not 1")
    return x


def frozen(a: np.ndarray) -> np.ndarray:
    """Read-only copy, so values can be shared between threads."""
    out = np.array(a, dtype=np.complex128, copy=True)
    out.flags.writeable = False
    return out


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def trace(a) -> complex:
    return complex(np.trace(as_matrix(a)))


def tensor(*factors) -> np.ndarray:
    """Kronecker product of one or more matrices, left factor outermost."""
    out = as_matrix(factors[0])
    for f in factors[1:]:
        out = np.kron(out, as_matrix(f))
    return out


def tensor_vec(*vectors) -> np.ndarray:
    out = as_vector(vectors[0], normalized=False)
    for w in vectors[1:]:
        out = np.kron(out, as_vector(w, normalized=False))
    return out


def check_shape(shape: Sequence[int], dim: int) -> tuple[int, ...]:
    dims = tuple(int(d) for d in shape)
    if not dims or any(d < 1 for d in dims):
        raise ShapeError(f"invalid factor shape {list(shape)}")
    if math.prod(dims) != dim:
        raise ShapeError(f"factor shape {list(dims)} does not multiply to dimension {dim}")
    return dims


def _factor_indices(which: int | Iterable[int], nfactors: int) -> list[int]:
    if isinstance(which, (int, np.integer)):
        which = [int(which)]
    idx = [int(k) for k in which]
    for k in idx:
        if not 1 <= k <= nfactors:
            raise ShapeError(f"factor index {k} outside 1..{nfactors}")
    if len(set(idx)) != len(idx):
        raise ShapeError(f"repeated factor index in {idx}")
    return idx


def _offsets(dims: Sequence[int], factors: Sequence[int]) -> np.ndarray:
    """Flat-index contribution of every multi-index over ``factors`` (0-based)."""
    strides = [math.prod(dims[k + 1:]) for k in range(len(dims))]
    off = np.zeros(1, dtype=np.intp)
    for k in factors:
        off = (off[:, None] + np.arange(dims[k], dtype=np.intp)[None, :] * strides[k]).ravel()
    return off


def partial_trace(a, shape: Sequence[int], keep: int | Iterable[int]) -> np.ndarray:
    """Sum out every factor not listed in ``keep``.

    Kept factors appear in the result in their original order.
    """
    a = as_matrix(a)
    dims = check_shape(shape, a.shape[0])
    keep = sorted(_factor_indices(keep, len(dims)))
    if not keep:
        raise DimensionError("keep must name at least one factor")
    kept = [k - 1 for k in keep]
    traced = [k for k in range(len(dims)) if k not in kept]
    return kernels.partial_trace(
        np.ascontiguousarray(a), _offsets(dims, kept), _offsets(dims, traced)
    )


def permute(a, shape: Sequence[int], order: Sequence[int]) -> np.ndarray:
    """Reorder tensor factors: factor ``j`` of the result is factor ``order[j]`` of ``a``."""
    a = as_matrix(a)
    dims = check_shape(shape, a.shape[0])
    order = _factor_indices(order, len(dims))
    if len(order) != len(dims):
        raise ShapeError("order must list every factor exactly once")
    n = len(dims)
    axes = [k - 1 for k in order]
    t = a.reshape(dims + dims).transpose(axes + [n + k for k in axes])
    return t.reshape(a.shape)


def embed(op, shape: Sequence[int], factors: int | Iterable[int]) -> np.ndarray:
    """Lift ``op`` acting on ``factors`` (in that order) to the full space.

    Every other factor receives the identity.
    """
    dims = check_shape(shape, math.prod(int(d) for d in shape))
    factors = _factor_indices(factors, len(dims))
    op = as_matrix(op)
    sub = math.prod(dims[k - 1] for k in factors)
    if op.shape[0] != sub:
        raise DimensionError(
            f"operator of dimension {op.shape[0]} cannot act on factors {factors} "
            f"of total dimension {sub}"
        )
    rest = [k for k in range(1, len(dims) + 1) if k not in factors]
    big = np.kron(op, np.eye(math.prod(dims[k - 1] for k in rest), dtype=np.complex128))
    current = factors + rest
    # factor j of `big` is original factor current[j]; invert that placement
    inverse = [current.index(k) + 1 for k in range(1, len(dims) + 1)]
    return permute(big, [dims[k - 1] for k in current], inverse)


def hermiticity_residual(a) -> float:
    a = as_matrix(a)
    return float(np.linalg.norm(a - a.conj().T))


def eig_hermitian(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(w, v)``: real eigenvalues in descending order and a unitary
    matrix whose column ``k`` is the eigenvector for ``w[k]``.

    Raises HermiticityError when ``||a - a^H||_F > 1e-9 ||a||_F`` and
    ConvergenceError if 100 sweeps do not bring the off-diagonal mass below
    ``1e-12 ||a||_F``.
    """
    a = as_matrix(a)
    norm = float(np.linalg.norm(a))
    resid = hermiticity_residual(a)
    if resid > TOL_HERM * norm:
        raise HermiticityError(f"matrix is not Hermitian (residual {resid:.3e})")
    work = np.ascontiguousarray((a + a.conj().T) / 2)
    w, v, _, off = kernels.jacobi_eigh(work, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if off > JACOBI_TOL * norm:
        raise ConvergenceError(f"Jacobi did not converge (off-diagonal {off:.3e})")
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def group_eigenvalues(w: np.ndarray, tol: float = TOL_EIGGROUP) -> list[list[int]]:
    """Split descending eigenvalues into runs whose neighbours differ by at most ``tol``."""
    groups: list[list[int]] = []
    for k, x in enumerate(w):
        if groups and w[groups[-1][-1]] - x <= tol:
            groups[-1].append(k)
        else:
            groups.append([k])
    return groups


def matrix_to_json(a) -> dict:
    a = as_matrix(a)
    return {"dim": int(a.shape[0]), "re": a.real.tolist(), "im": a.imag.tolist()}


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        dim = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix JSON: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise DimensionError(f"matrix JSON entries do not match dim={dim}")
    return as_matrix(re + 1j * im)
