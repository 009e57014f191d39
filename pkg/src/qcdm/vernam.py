"""One-time pad and its realization with pairs of polarized photons.

Alice sets photon 1 of each pair from a key bit and photon 3 from
``message_bit ^ key_bit``. Bob reads both polarizations and adds them
modulo 2. Bit 0 maps to ``basis0`` and bit 1 to ``basis1``, which must be
orthogonal polarizations.

Keys come from ``numpy.random.default_rng`` (PCG64, 128-bit state) seeded
with the given integer.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import BasisError, LengthError, OrthogonalityError
from .spin import MINUS_Z, PLUS_Z, Direction, chi, sigma_dot_n, spinor_overlap
from .state import DensityMatrix, expectation, reduce

TOL_ORTHOGONAL = 1e-9


@dataclass(frozen=True)
class BitString:
    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if not bits:
            raise LengthError("bit string must be non-empty")
        if any(b not in (0, 1) for b in bits):
            raise ValueError("bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    def __len__(self):
        return len(self.bits)

    def __iter__(self):
        return iter(self.bits)

    def __str__(self):
        return "".join(map(str, self.bits))

    @classmethod
    def parse(cls, text: str) -> BitString:
        """From a string of ``0`` and ``1`` characters."""
        return cls(tuple(int(c) for c in text))

    @classmethod
    def from_hex(cls, text: str) -> BitString:
        """Most significant bit first within each byte."""
        try:
            data = bytes.fromhex(text)
        except ValueError as exc:
            raise ValueError(f"malformed hex string {text!r}") from exc
        return cls(tuple(int(b) for b in np.unpackbits(np.frombuffer(data, dtype=np.uint8))))

    def hex(self) -> str:
        if len(self) % 8:
            raise LengthError("hex form needs a whole number of bytes")
        return np.packbits(np.array(self.bits, dtype=np.uint8)).tobytes().hex()

    def ones_fraction(self) -> float:
        return sum(self.bits) / len(self)


def xor(a: BitString, b: BitString) -> BitString:
    if len(a) != len(b):
        raise LengthError(f"lengths differ: {len(a)} vs {len(b)}")
    return BitString(tuple(x ^ y for x, y in zip(a, b)))


def keygen(seed: int, length: int) -> BitString:
    if length < 1:
        raise LengthError("key length must be positive")
    rng = np.random.default_rng(seed)
    return BitString(tuple(rng.integers(0, 2, size=length).tolist()))


@dataclass(frozen=True)
class PhotonPairRecord:
    pol1: Direction
    pol3: Direction


def _check_bases(basis0: Direction, basis1: Direction) -> None:
    overlap = abs(spinor_overlap(basis0, basis1))
    if overlap > TOL_ORTHOGONAL:
        raise OrthogonalityError(f"basis settings are not orthogonal (|<0|1>| = {overlap:.3e})")


def alice_encode(message: BitString, key: BitString,
                 basis0: Direction = PLUS_Z, basis1: Direction = MINUS_Z) -> list[PhotonPairRecord]:
    if len(message) != len(key):
        raise LengthError(f"message has {len(message)} bits but key has {len(key)}")
    _check_bases(basis0, basis1)
    basis = (basis0, basis1)
    return [PhotonPairRecord(basis[k], basis[m ^ k]) for m, k in zip(message, key)]


def classify(pol: Direction, basis0: Direction, basis1: Direction) -> int:
    if pol.matches(basis0):
        return 0
    if pol.matches(basis1):
        return 1
    raise BasisError(f"polarization {pol} matches neither basis setting")


def stream_bits(pairs: Sequence[PhotonPairRecord], which: int,
                basis0: Direction = PLUS_Z, basis1: Direction = MINUS_Z) -> BitString:
    """Classical bits carried by photon 1 or photon 3 of every pair."""
    if which not in (1, 3):
        raise ValueError("stream must be 1 or 3")
    attr = "pol1" if which == 1 else "pol3"
    return BitString(tuple(classify(getattr(p, attr), basis0, basis1) for p in pairs))


def bob_decode(pairs: Sequence[PhotonPairRecord],
               basis0: Direction = PLUS_Z, basis1: Direction = MINUS_Z) -> BitString:
    return xor(stream_bits(pairs, 1, basis0, basis1), stream_bits(pairs, 3, basis0, basis1))


def eve_single_photon_stats(pairs: Sequence[PhotonPairRecord], which: int, message: BitString,
                            basis0: Direction = PLUS_Z,
                            basis1: Direction = MINUS_Z) -> tuple[float, float]:
    """Ones fraction of one photon stream and its Pearson correlation with the message.

    The correlation is reported as 0.0 when either sequence is constant,
    since it is undefined there.
    """
    if not pairs:
        raise LengthError("no pairs to analyse")
    bits = stream_bits(pairs, which, basis0, basis1)
    if len(bits) != len(message):
        raise LengthError("message and pair list differ in length")
    x = np.array(bits.bits, dtype=float)
    y = np.array(message.bits, dtype=float)
    if x.std() == 0 or y.std() == 0:
        corr = 0.0
    else:
        corr = float(np.corrcoef(x, y)[0, 1])
    return float(x.mean()), corr


def quantum_state_of_pair(record: PhotonPairRecord) -> DensityMatrix:
    """Product state of the two polarized photons, shape ``[2, 2]``."""
    return DensityMatrix.from_vector(np.kron(chi(record.pol1), chi(record.pol3)), [2, 2])


def measure_pair(rho: DensityMatrix, basis1: Direction = MINUS_Z) -> tuple[int, int]:
    """Read both bits of a pair state from ``<sigma . basis1>`` on each photon."""
    obs = sigma_dot_n(basis1)
    bits = []
    for k in (1, 2):
        e = expectation(obs, reduce(rho, k))
        bits.append(1 if e > 0 else 0)
    return bits[0], bits[1]


@dataclass(frozen=True)
class ProtocolTranscript:
    message: BitString
    key: BitString
    pairs: tuple[PhotonPairRecord, ...]
    decoded: BitString
    seed: int
    eve_stream: int = 1
    eve: tuple[float, float] = field(default=(0.0, 0.0))
    basis0: Direction = PLUS_Z
    basis1: Direction = MINUS_Z

    @property
    def ok(self) -> bool:
        return self.decoded == self.message

    def to_json(self) -> dict:
        pol1 = stream_bits(self.pairs, 1, self.basis0, self.basis1)
        pol3 = stream_bits(self.pairs, 3, self.basis0, self.basis1)
        return {
            "seed": self.seed,
            "message_hex": self.message.hex(),
            "key_hex": self.key.hex(),
            "decoded_hex": self.decoded.hex(),
            "pairs": [{"pol1_bit": a, "pol3_bit": b} for a, b in zip(pol1, pol3)],
            "eve": {"stream": self.eve_stream, "ones_fraction": self.eve[0], "correlation": self.eve[1]},
        }


def run_protocol(seed: int, message: BitString, *, eve_stream: int = 1,
                 basis0: Direction = PLUS_Z, basis1: Direction = MINUS_Z) -> ProtocolTranscript:
    key = keygen(seed, len(message))
    pairs = alice_encode(message, key, basis0, basis1)
    decoded = bob_decode(pairs, basis0, basis1)
    eve = eve_single_photon_stats(pairs, eve_stream, message, basis0, basis1)
    return ProtocolTranscript(message, key, tuple(pairs), decoded, seed, eve_stream, eve, basis0, basis1)
