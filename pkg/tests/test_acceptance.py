"""Acceptance criteria, one check per criterion.

Run ``pytest tests/test_acceptance.py -s`` (or ``python tests/test_acceptance.py``)
to see one PASS/FAIL line per criterion.
"""
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from qcdm import linalg  # noqa: E402
from qcdm.scenarios import (  # noqa: E402
    entanglement_swapping,
    parapositronium,
    polarized_pairs,
    singlet_state,
    teleportation,
)
from qcdm.spin import Direction, chi, projector_onto, singlet  # noqa: E402
from qcdm.state import (  # noqa: E402
    DensityMatrix,
    check_axioms,
    conditional,
    dispersion,
    expectation,
    mixture_expansion,
    purity,
    random_density_matrix,
    reduce,
)
from qcdm.vernam import alice_encode, bob_decode, eve_single_photon_stats, keygen, xor  # noqa: E402


def _proj(v):
    return np.outer(v, np.conj(v))


def _unit(rng, n):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def _unitary(rng, n):
    q, r = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


def crit_parapositronium():
    rng = np.random.default_rng(1)
    worst_f, worst_p = 1.0, 0.0
    for _ in range(50):
        m = Direction.random(rng)
        rep = parapositronium(m)
        f = float(np.trace(rep.result_state.matrix @ _proj(chi(m, -1))).real)
        worst_f = min(worst_f, f)
        worst_p = max(worst_p, abs(rep.probability - 0.5))
    electron = np.abs(reduce(singlet_state(), 1).matrix - np.eye(2) / 2).max()
    ok = worst_f >= 1 - 1e-10 and worst_p <= 1e-12 and electron <= 1e-12
    return ok, f"min fidelity {worst_f:.15f}, max |p-1/2| {worst_p:.1e}, |rho_e - I/2| {electron:.1e}"


def crit_teleportation():
    rng = np.random.default_rng(2)
    worst_f, worst_p = 1.0, 0.0
    for _ in range(50):
        m = Direction.random(rng)
        rep = teleportation(m)
        f = float(np.trace(rep.result_state.matrix @ _proj(chi(m))).real)
        worst_f = min(worst_f, f)
        worst_p = max(worst_p, abs(rep.probability - 0.25))
    ok = worst_f >= 1 - 1e-10 and worst_p <= 1e-12
    return ok, f"min fidelity {worst_f:.15f}, max |p-1/4| {worst_p:.1e}"


def crit_swapping():
    rep = entanglement_swapping()
    err = np.abs(rep.result_state.matrix - _proj(singlet())).max()
    dp = abs(rep.probability - 0.25)
    return err <= 1e-10 and dp <= 1e-12, f"|cdm - singlet| {err:.1e}, |p-1/4| {dp:.1e}"


def crit_polarized_pairs():
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(20):
        n, r = Direction.random(rng), Direction.random(rng)
        rep = polarized_pairs(n, n.opposite(), r, r.opposite())
        want = _proj(np.kron(chi(n), chi(r)))
        worst = max(worst, np.abs(rep.result_state.matrix - want).max())
    return worst <= 1e-10, f"max |cdm - chi_n x chi_r| {worst:.1e}"


def _expansion_cases():
    rng = np.random.default_rng(5)
    for dims, count in (([2, 2], 100), ([3, 2], 20)):
        for _ in range(count):
            rho = random_density_matrix(int(np.prod(dims)), rng, rank=int(rng.integers(1, 5)), shape=dims)
            basis = _unitary(rng, 2).T
            yield rho, mixture_expansion(rho, basis, 2)


def crit_mixture_expansion():
    worst_sum, worst_p = 0.0, 0.0
    for rho, out in _expansion_cases():
        total = sum(p * c.matrix for p, c in out if c is not None)
        worst_sum = max(worst_sum, np.abs(total - reduce(rho, 1).matrix).max())
        worst_p = max(worst_p, abs(sum(p for p, _ in out) - 1))
    return worst_sum <= 1e-9 and worst_p <= 1e-9, f"max |sum p_n cdm_n - rho_1| {worst_sum:.1e}, max |sum p_n - 1| {worst_p:.1e}"


def crit_cdm_axioms():
    checked, failed = 0, 0
    for _, out in _expansion_cases():
        for _, cdm in out:
            if cdm is None:
                continue
            checked += 1
            failed += not check_axioms(cdm.matrix, tol=1e-8).ok
    return failed == 0 and checked > 0, f"{checked} conditional states checked, {failed} failed"


def crit_purity_theorem():
    rng = np.random.default_rng(7)
    worst_prod, worst_ent = 0.0, 0.0
    for d in (2, 3, 4):
        for _ in range(10):
            f, w = _unit(rng, d), _unit(rng, 3)
            rho = DensityMatrix.from_vector(np.kron(f, w), [d, 3])
            worst_prod = max(worst_prod, abs(purity(reduce(rho, 1)) - 1))
            u = _unitary(rng, d)
            f, w = u[:, 0], u[:, 1]
            for sign in (1, -1):
                psi = (np.kron(f, w) + sign * np.kron(w, f)) / np.sqrt(2)
                red = reduce(DensityMatrix.from_vector(psi, [d, d]), 1)
                worst_ent = max(worst_ent, abs(purity(red) - 0.5))
    ok = worst_prod <= 1e-10 and worst_ent <= 1e-10
    return ok, f"product |purity-1| {worst_prod:.1e}, entangled |purity-1/2| {worst_ent:.1e}"


def crit_definite_value():
    rng = np.random.default_rng(8)
    worst_d, worst_c, worst_e = 0.0, 0.0, 0.0
    for i in range(50):
        n = 2 + i % 4
        f = _hermitian(rng, n)
        _, v = linalg.eig_hermitian(f)
        rho = DensityMatrix.from_vector(v[:, rng.integers(n)])
        worst_d = max(worst_d, dispersion(f, rho))
        comm = np.linalg.norm(f @ rho.matrix - rho.matrix @ f) / np.linalg.norm(f)
        worst_c = max(worst_c, comm)
        eigs = np.linalg.eigvalsh(f)
        worst_e = max(worst_e, np.min(np.abs(eigs - expectation(f, rho))))
    ok = worst_d <= 1e-10 and worst_c <= 1e-7 and worst_e <= 1e-7
    return ok, f"max dispersion {worst_d:.1e}, max ||[F,rho]||/||F|| {worst_c:.1e}, max eigenvalue gap {worst_e:.1e}"


def crit_oracles():
    rng = np.random.default_rng(9)
    worst = {"partial_trace": 0.0, "conditional": 0.0, "expectation": 0.0}
    for _ in range(100):
        dims = [int(rng.integers(2, 4)), int(rng.integers(2, 4))]
        n = dims[0] * dims[1]
        rho = random_density_matrix(n, rng, shape=dims)
        keep = int(rng.integers(1, 3))
        got = linalg.partial_trace(rho.matrix, dims, {keep})
        worst["partial_trace"] = max(worst["partial_trace"],
                                     np.abs(got - oracles.partial_trace(rho.matrix, dims, {keep})).max())
        u = _unit(rng, dims[1])
        res = conditional(rho, projector_onto(u), 2)
        want, p = oracles.conditional_last(rho.matrix, dims, u)
        worst["conditional"] = max(worst["conditional"], np.abs(res.cdm.matrix - want).max(), abs(res.probability - p))
        f = _hermitian(rng, n)
        worst["expectation"] = max(worst["expectation"],
                                   abs(expectation(f, rho) - oracles.expectation(f, rho.matrix).real))
    ok = all(v <= 1e-10 for v in worst.values())
    return ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items())


def crit_vernam():
    m, k = keygen(1000, 1024), keygen(1001, 1024)
    round_trip = bob_decode(alice_encode(m, k)) == m
    m2 = keygen(1002, 1024)
    reuse = xor(xor(m, k), xor(m2, k)) == xor(m, m2)
    worst = 0.0
    for seed in (1, 2, 3):
        msg, key = keygen(10_000 + seed, 4096), keygen(seed, 4096)
        pairs = alice_encode(msg, key)
        for stream in (1, 3):
            worst = max(worst, abs(eve_single_photon_stats(pairs, stream, msg)[1]))
    ok = round_trip and reuse and worst < 0.05
    return ok, f"round trip {round_trip}, key reuse identity {reuse}, max |r| {worst:.4f}"


CRITERIA = [
    ("1 parapositronium", crit_parapositronium),
    ("2 teleportation", crit_teleportation),
    ("3 entanglement swapping", crit_swapping),
    ("4 polarized pairs", crit_polarized_pairs),
    ("5 mixture expansion", crit_mixture_expansion),
    ("6 conditional state axioms", crit_cdm_axioms),
    ("7 purity inheritance", crit_purity_theorem),
    ("8 definite value", crit_definite_value),
    ("9 oracle equivalence", crit_oracles),
    ("10 vernam protocol", crit_vernam),
]


@pytest.mark.parametrize("name,check", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {name}: {detail}")
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for name, check in CRITERIA:
        ok, detail = check()
        failures += not ok
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {name}: {detail}")
    sys.exit(1 if failures else 0)
