import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qcdm import _pykernels  # noqa: E402

try:
    from qcdm import _kernels
except ImportError:  # extension not built
    _kernels = None

KERNELS = [pytest.param(_pykernels, id="python")]
if _kernels is not None:
    KERNELS.append(pytest.param(_kernels, id="cython"))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=KERNELS)
def kernels(request):
    return request.param


def random_matrix(rng, n):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def random_hermitian(rng, n):
    a = random_matrix(rng, n)
    return (a + a.conj().T) / 2


def random_unit(rng, n):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def random_unitary(rng, n):
    q, r = np.linalg.qr(random_matrix(rng, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))
