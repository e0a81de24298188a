from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

DEFAULT_BITS_PER_GENE = 3

_TO_TEXT = bytes.maketrans(b"\x00\x01", b"01")
_FROM_TEXT = bytes.maketrans(b"01", b"\x00\x01")


def place_values(b: int) -> np.ndarray:
    """MSB-first weights of the bits inside one gene."""
    return (1 << np.arange(b - 1, -1, -1)).astype(np.int64)


@dataclass(frozen=True, slots=True)
class Chromosome:
    """
    Fixed-length bit string of m genes x b bits, stored one byte (0 or 1) per bit.
    Immutable and hashable.
    """
    bits: bytes
    m: int
    b: int

    def __post_init__(self) -> None:
        if self.b < 1:
            raise ValueError("Chromosome.b must be >= 1.")
        if self.m < 0:
            raise ValueError("Chromosome.m must be >= 0.")
        if len(self.bits) != self.m * self.b:
            raise ValueError(
                f"Chromosome length {len(self.bits)} does not match m*b = {self.m * self.b}."
            )
        if self.bits.translate(None, b"\x00\x01"):
            raise ValueError("Chromosome bits must be 0 or 1.")

    @property
    def n(self) -> int:
        return len(self.bits)

    def to_array(self) -> np.ndarray:
        """Read-only uint8 view of the bits."""
        return np.frombuffer(self.bits, dtype=np.uint8)

    def to_text(self) -> str:
        return self.bits.translate(_TO_TEXT).decode("ascii")

    def ones(self) -> int:
        return self.bits.count(1)

    @staticmethod
    def from_array(arr: np.ndarray, b: int) -> "Chromosome":
        flat = np.asarray(arr, dtype=np.uint8).reshape(-1)
        if flat.size % b:
            raise ValueError(f"Bit count {flat.size} is not a multiple of b={b}.")
        return Chromosome(bits=flat.tobytes(), m=flat.size // b, b=b)

    @staticmethod
    def from_text(text: str, b: int) -> "Chromosome":
        """Parse the dump format: contiguous '0'/'1' characters."""
        raw = text.strip().encode("ascii")
        if raw.translate(None, b"01"):
            raise ValueError("Chromosome text may only contain '0' and '1'.")
        if len(raw) % b:
            raise ValueError(f"Chromosome text length {len(raw)} is not a multiple of b={b}.")
        return Chromosome(bits=raw.translate(_FROM_TEXT), m=len(raw) // b, b=b)


@dataclass(frozen=True, slots=True)
class LabelAssignment:
    """Cube -> cluster labels; every label is in [0, 2**b)."""
    labels: tuple[int, ...]
    b: int

    def __post_init__(self) -> None:
        if self.b < 1:
            raise ValueError("LabelAssignment.b must be >= 1.")
        k = 1 << self.b
        for i, label in enumerate(self.labels):
            if not (0 <= label < k):
                raise ValueError(f"Label {label} at gene {i} is outside [0, {k}).")

    @property
    def m(self) -> int:
        return len(self.labels)

    @property
    def k(self) -> int:
        return 1 << self.b

    def as_array(self) -> np.ndarray:
        return np.array(self.labels, dtype=np.int64)

    @staticmethod
    def of(labels: Sequence[int], b: int = DEFAULT_BITS_PER_GENE) -> "LabelAssignment":
        return LabelAssignment(labels=tuple(int(v) for v in labels), b=b)


def decode_bits(bits: np.ndarray, b: int) -> np.ndarray:
    """
    Vectorised decode: (..., m*b) bit array -> (..., m) int64 labels, MSB first.
    """
    arr = np.asarray(bits, dtype=np.int64)
    genes = arr.reshape(arr.shape[:-1] + (arr.shape[-1] // b, b))
    return genes @ place_values(b)


def decode(c: Chromosome) -> LabelAssignment:
    labels = decode_bits(c.to_array(), c.b)
    return LabelAssignment(labels=tuple(int(v) for v in labels), b=c.b)


def encode(a: LabelAssignment | Sequence[int], b: int = DEFAULT_BITS_PER_GENE) -> Chromosome:
    """
    Inverse of decode. Raises ValueError for labels outside [0, 2**b).
    """
    if isinstance(a, LabelAssignment):
        if a.b != b:
            a = LabelAssignment.of(a.labels, b)
    else:
        a = LabelAssignment.of(a, b)
    labels = a.as_array()
    shifts = np.arange(b - 1, -1, -1)
    bits = ((labels[:, None] >> shifts) & 1).astype(np.uint8)
    return Chromosome(bits=bits.tobytes(), m=a.m, b=b)


def random_bits(rng: np.random.Generator, shape: int | tuple[int, ...]) -> np.ndarray:
    return rng.integers(0, 2, size=shape, dtype=np.uint8)


def random_chromosome(rng: np.random.Generator, n: int, b: int = 1) -> Chromosome:
    """
    Each bit is 0 or 1 with probability 1/2, drawn from `rng`.
    `n` must be a multiple of `b`.
    """
    if n < 1:
        raise ValueError("random_chromosome needs n >= 1.")
    if n % b:
        raise ValueError(f"n={n} is not a multiple of b={b}.")
    return Chromosome(bits=random_bits(rng, n).tobytes(), m=n // b, b=b)


def hamming(a: Chromosome, b: Chromosome) -> int:
    if a.n != b.n:
        raise ValueError(f"Cannot compare chromosomes of lengths {a.n} and {b.n}.")
    return int(np.count_nonzero(a.to_array() != b.to_array()))


def mean_pairwise_hamming(bits: np.ndarray) -> float:
    """
    Average Hamming distance over all unordered pairs of rows of a (P, n) bit matrix.
    Computed per bit position from the ones count: sum_j ones_j * (P - ones_j).
    """
    arr = np.asarray(bits, dtype=np.int64)
    p = arr.shape[0]
    if p < 2:
        return 0.0
    ones = arr.sum(axis=0)
    return float(np.sum(ones * (p - ones)) / (p * (p - 1) / 2))
