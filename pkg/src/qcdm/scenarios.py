"""Conditional-state calculations for spin and photon-pair experiments.

Each function builds the joint pure state, conditions on a selection, and
reports the selection probability together with the fidelity of the
resulting state against the closed-form answer.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OrthogonalityError
from .spin import PLUS_Z, Direction, chi, projector_onto, singlet, spinor_overlap
from .state import DensityMatrix, conditional, is_pure

TOL_ORTHOGONAL = 1e-9


@dataclass(frozen=True)
class ScenarioReport:
    name: str
    probability: float
    result_state: DensityMatrix
    expected_state: DensityMatrix
    fidelity: float

    @property
    def pure(self) -> bool:
        return is_pure(self.result_state)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "probability": self.probability,
            "fidelity": self.fidelity,
            "result_state": self.result_state.to_json(),
            "expected_state": self.expected_state.to_json(),
        }


def fidelity(result: DensityMatrix, expected: DensityMatrix) -> float:
    """``Tr(result @ expected)``; the usual fidelity when ``expected`` is pure."""
    return float(np.einsum("ij,ji->", result.matrix, expected.matrix).real)


def _report(name, res, expected_vec, shape) -> ScenarioReport:
    expected = DensityMatrix.from_vector(expected_vec, shape)
    return ScenarioReport(name, res.probability, res.cdm, expected, fidelity(res.cdm, expected))


def singlet_state() -> DensityMatrix:
    return DensityMatrix.from_vector(singlet(), [2, 2])


def parapositronium(m: Direction = PLUS_Z) -> ScenarioReport:
    """Electron state once the positron (factor 2) passes a filter along ``m``."""
    res = conditional(singlet_state(), projector_onto(chi(m, 1)), 2)
    return _report("parapositronium", res, chi(m, -1), [2])


def teleportation_state(m: Direction) -> DensityMatrix:
    """Photons 1, 2 in the singlet, photon 3 polarized along ``m``."""
    return DensityMatrix.from_vector(np.kron(singlet(), chi(m, 1)), [2, 2, 2])


def teleportation(m: Direction = PLUS_Z) -> ScenarioReport:
    """Photon 2 given that photons 1 and 3 are found in the singlet."""
    res = conditional(teleportation_state(m), projector_onto(singlet()), (1, 3))
    return _report("teleportation", res, chi(m, 1), [2])


def two_pair_state() -> DensityMatrix:
    """Independent singlet pairs (1, 2) and (3, 4)."""
    return DensityMatrix.from_vector(np.kron(singlet(), singlet()), [2, 2, 2, 2])


def entanglement_swapping() -> ScenarioReport:
    """Pair (1, 4) given that photons 2 and 3 are selected in the singlet."""
    res = conditional(two_pair_state(), projector_onto(singlet()), (2, 3))
    return _report("swapping", res, singlet(), [2, 2])


def polarized_pairs(n: Direction, m: Direction, r: Direction, s: Direction) -> ScenarioReport:
    """Pair (1, 3) after photons 2 and 4 pass polarizers along ``m`` and ``s``.

    ``n`` must be orthogonal to ``m`` and ``r`` to ``s`` as spinors, i.e.
    antipodal on the Bloch sphere.
    """
    for a, b, label in ((n, m, "n, m"), (r, s, "r, s")):
        overlap = abs(spinor_overlap(a, b))
        if overlap > TOL_ORTHOGONAL:
            raise OrthogonalityError(f"polarizations {label} are not orthogonal (|<a|b>| = {overlap:.3e})")
    selector = projector_onto(np.kron(chi(m, 1), chi(s, 1)))
    res = conditional(two_pair_state(), selector, (2, 4))
    return _report("polarized-pairs", res, np.kron(chi(n, 1), chi(r, 1)), [2, 2])
