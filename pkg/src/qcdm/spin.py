"""Spin-1/2 and photon-polarization primitives.

Photon polarization is treated as the same two-level system as a spin-1/2,
so a polarizer setting is just a Bloch-sphere direction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .state import Observable, Projector

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
for _m in (SIGMA_X, SIGMA_Y, SIGMA_Z):
    _m.flags.writeable = False

TOL_DIRECTION = 1e-9


@dataclass(frozen=True)
class Direction:
    """Unit vector ``(sin t cos p, sin t sin p, cos t)`` given by polar and azimuthal angles."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise ValueError("direction angles must be finite")

    @property
    def vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])

    def opposite(self) -> Direction:
        return Direction(math.pi - self.theta, (self.phi + math.pi) % (2 * math.pi))

    def matches(self, other: Direction, tol: float = TOL_DIRECTION) -> bool:
        return float(np.linalg.norm(self.vector - other.vector)) <= tol

    @classmethod
    def from_vector(cls, v) -> Direction:
        x, y, z = (float(c) for c in v)
        r = math.sqrt(x * x + y * y + z * z)
        if r == 0:
            raise ValueError("zero vector has no direction")
        return cls(math.acos(max(-1.0, min(1.0, z / r))), math.atan2(y, x) % (2 * math.pi))

    @classmethod
    def random(cls, rng: np.random.Generator) -> Direction:
        """Uniform on the sphere."""
        return cls(math.acos(rng.uniform(-1.0, 1.0)), rng.uniform(0.0, 2 * math.pi))

    def to_json(self) -> dict:
        return {"theta": self.theta, "phi": self.phi}

    @classmethod
    def from_json(cls, obj: dict) -> Direction:
        return cls(float(obj["theta"]), float(obj.get("phi", 0.0)))


PLUS_Z = Direction(0.0, 0.0)
MINUS_Z = Direction(math.pi, 0.0)
PLUS_X = Direction(math.pi / 2, 0.0)
MINUS_X = Direction(math.pi / 2, math.pi)
PLUS_Y = Direction(math.pi / 2, math.pi / 2)


def chi(n: Direction, sign: int = 1) -> np.ndarray:
    """Eigenvector of ``sigma . n`` with eigenvalue ``sign``.

    Phase convention: ``chi_+ = (cos t/2, e^{ip} sin t/2)`` and
    ``chi_- = (-e^{-ip} sin t/2, cos t/2)``.
    """
    c, s = math.cos(n.theta / 2), math.sin(n.theta / 2)
    if sign == 1:
        return np.array([c, np.exp(1j * n.phi) * s], dtype=np.complex128)
    if sign == -1:
        return np.array([-np.exp(-1j * n.phi) * s, c], dtype=np.complex128)
    raise ValueError(f"sign must be +1 or -1, got {sign}")


def sigma_dot_n(n: Direction) -> Observable:
    x, y, z = n.vector
    return Observable(x * SIGMA_X + y * SIGMA_Y + z * SIGMA_Z)


def singlet(n: Direction | None = None) -> np.ndarray:
    """Total-spin-zero two-qubit state.

    Without ``n`` this is ``(|01> - |10>)/sqrt(2)``. With ``n`` it is built as
    ``(chi_n x chi_-n - chi_-n x chi_n)/sqrt(2)``, which equals the default up to
    a global phase.
    """
    if n is None:
        return np.array([0, 1, -1, 0], dtype=np.complex128) / math.sqrt(2)
    up, down = chi(n, 1), chi(n, -1)
    return (np.kron(up, down) - np.kron(down, up)) / math.sqrt(2)


def projector_onto(v) -> Projector:
    v = linalg.as_vector(v)
    return Projector(np.outer(v, v.conj()))


def spinor_overlap(a: Direction, b: Direction) -> complex:
    """``<chi_a|chi_b>`` for the +1 spinors of two directions."""
    return complex(np.vdot(chi(a), chi(b)))
