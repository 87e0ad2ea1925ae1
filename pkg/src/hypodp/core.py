"""Domain types shared by every accounting module.

All types here are immutable after construction and validate their
invariants eagerly, so downstream code never has to re-check them.

Conventions:

* A guarantee is a :class:`PrivacyParams` pair ``(epsilon, delta)`` with
  epsilon in nats.
* A :class:`BitVector` of length ``k`` selects, per iteration, which of
  the two neighboring databases a mechanism is invoked on. Vectors are
  stored as machine words, which caps ``k`` at 63; position 0 is the
  first iteration (the leftmost character of the string form).
* A :class:`Hypothesis` is a finite probability distribution over
  bit vectors, i.e. a composite belief about database membership.
"""

import math
from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import (
    KTooLargeError,
    MixedLengthError,
    NonNormalizedError,
    NonPositiveWeightError,
)

MAX_K = 63

# User-facing normalization tolerance; internal refinement prunes at the
# much finer WEIGHT_PRUNE_TOLERANCE so input noise and arithmetic dust
# stay two orders of magnitude apart.
NORMALIZATION_TOLERANCE = 1e-9
WEIGHT_PRUNE_TOLERANCE = 1e-12

# Enumerating all of {0,1}^k is refused beyond this many vectors.
MAX_ENUMERATION = 10_000_000


@dataclass(frozen=True)
class PrivacyParams:
    """An (epsilon, delta) differential-privacy guarantee."""

    epsilon: float
    delta: float = 0.0

    def __post_init__(self):
        if not self.epsilon >= 0.0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError(f"delta must be in [0, 1], got {self.delta}")

    def as_tuple(self) -> tuple[float, float]:
        return (self.epsilon, self.delta)


def bounded_params(epsilon: float, delta: float) -> PrivacyParams:
    """Build a guarantee, clamping delta to 1 and epsilon rounding dust to 0.

    A statement with delta >= 1 is vacuous but well formed; clamping keeps
    comparisons total. Tiny negative epsilon can only arise from rounding
    in log-space aggregation and is mathematically zero.
    """
    if -1e-9 < epsilon < 0.0:
        epsilon = 0.0
    return PrivacyParams(epsilon, min(1.0, delta))


@dataclass(frozen=True)
class BitVector:
    """A fixed-length binary vector stored as a machine word.

    ``word`` holds the bits with position 0 (iteration 1) as the most
    significant bit, so numeric order on words equals lexicographic
    order on the string form.
    """

    word: int
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= MAX_K:
            raise KTooLargeError(f"k must be in [1, {MAX_K}], got {self.k}")
        if not 0 <= self.word < (1 << self.k):
            raise ValueError(f"word {self.word} out of range for k={self.k}")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        bits = list(bits)
        word = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bits must be 0 or 1, got {b!r}")
            word = (word << 1) | b
        return cls(word, len(bits))

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"expected a nonempty string of 0/1, got {s!r}")
        return cls(int(s, 2), len(s))

    @classmethod
    def zeros(cls, k: int) -> "BitVector":
        return cls(0, k)

    @classmethod
    def ones(cls, k: int) -> "BitVector":
        return cls((1 << k) - 1, k)

    def bit(self, i: int) -> int:
        """Bit at 0-based position ``i`` (position 0 = first iteration)."""
        if not 0 <= i < self.k:
            raise IndexError(f"position {i} out of range for k={self.k}")
        return (self.word >> (self.k - 1 - i)) & 1

    def bits(self) -> tuple[int, ...]:
        return tuple(self.bit(i) for i in range(self.k))

    def flip(self) -> "BitVector":
        """Invert every bit; an involution."""
        return BitVector(self.word ^ ((1 << self.k) - 1), self.k)

    def ones_count(self) -> int:
        return self.word.bit_count()

    def __str__(self) -> str:
        return format(self.word, f"0{self.k}b")


def all_vectors(k: int) -> list[BitVector]:
    """Every vector in {0,1}^k in lexicographic order."""
    if k > MAX_K or (1 << k) > MAX_ENUMERATION:
        raise KTooLargeError(f"enumerating 2^{k} vectors is not supported")
    return [BitVector(w, k) for w in range(1 << k)]


class Hypothesis:
    """A finite probability distribution over bit vectors of equal length.

    Validated on every construction path: weights strictly positive,
    summing to 1 within ``NORMALIZATION_TOLERANCE``, all atoms sharing
    one length. Instances are immutable.
    """

    def __init__(self, atoms: Mapping[BitVector, float] | Iterable[tuple[BitVector, float]]):
        items = list(atoms.items()) if isinstance(atoms, Mapping) else list(atoms)
        if not items:
            raise NonNormalizedError("a hypothesis needs at least one atom")
        k = items[0][0].k
        for vec, w in items:
            if vec.k != k:
                raise MixedLengthError(f"atom {vec} has k={vec.k}, expected {k}")
            if not w > 0.0:
                raise NonPositiveWeightError(f"atom {vec} has non-positive weight {w}")
        total = math.fsum(w for _, w in items)
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise NonNormalizedError(f"weights sum to {total!r}, not 1")
        self._atoms = tuple(sorted(((v, float(w)) for v, w in items), key=lambda a: a[0].word))
        self._k = k

    @property
    def k(self) -> int:
        return self._k

    @property
    def atoms(self) -> tuple[tuple[BitVector, float], ...]:
        """Atoms sorted lexicographically by vector."""
        return self._atoms

    @cached_property
    def _weight_map(self) -> dict[BitVector, float]:
        return dict(self._atoms)

    def weight(self, vec: BitVector) -> float:
        return self._weight_map.get(vec, 0.0)

    def support(self) -> tuple[BitVector, ...]:
        return tuple(v for v, _ in self._atoms)

    def __len__(self) -> int:
        return len(self._atoms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Hypothesis) and self._atoms == other._atoms

    def __hash__(self) -> int:
        return hash(self._atoms)

    def __repr__(self) -> str:
        inner = ", ".join(f"{v}: {w!r}" for v, w in self._atoms)
        return f"Hypothesis({{{inner}}})"

    @classmethod
    def point_mass(cls, vec: BitVector) -> "Hypothesis":
        return cls({vec: 1.0})

    @classmethod
    def uniform(cls, vectors: Iterable[BitVector]) -> "Hypothesis":
        vectors = list(vectors)
        if not vectors:
            raise NonNormalizedError("cannot build a uniform hypothesis over nothing")
        return cls({v: 1.0 / len(vectors) for v in vectors})

    @classmethod
    def uniform_all(cls, k: int) -> "Hypothesis":
        """Uniform over all of {0,1}^k."""
        return cls.uniform(all_vectors(k))

    @classmethod
    def uniform_nonzero(cls, k: int) -> "Hypothesis":
        """Uniform over {0,1}^k minus the zero vector."""
        return cls.uniform(v for v in all_vectors(k) if v.word != 0)


@dataclass(frozen=True)
class MechanismSequence:
    """Per-iteration DP guarantees for a sequence of mechanisms.

    The sequence itself may be longer than 63; only operations that
    enumerate bit vectors are capped at ``MAX_K``.
    """

    guarantees: tuple[PrivacyParams, ...]

    def __post_init__(self):
        if not self.guarantees:
            raise ValueError("a mechanism sequence must be non-empty")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, float]]) -> "MechanismSequence":
        return cls(tuple(PrivacyParams(e, d) for e, d in pairs))

    @classmethod
    def homogeneous(cls, epsilon: float, delta: float, k: int) -> "MechanismSequence":
        return cls(tuple(PrivacyParams(epsilon, delta) for _ in range(k)))

    @property
    def k(self) -> int:
        return len(self.guarantees)

    def is_homogeneous(self) -> bool:
        return all(g == self.guarantees[0] for g in self.guarantees)

    def subsequence(self, indices: Iterable[int]) -> tuple[PrivacyParams, ...]:
        """Guarantees at the given 0-based positions (may be empty)."""
        return tuple(self.guarantees[i] for i in indices)

    def __iter__(self) -> Iterator[PrivacyParams]:
        return iter(self.guarantees)

    def __len__(self) -> int:
        return len(self.guarantees)

    def __getitem__(self, i):
        return self.guarantees[i]


@dataclass(frozen=True)
class HypothesisPairSet:
    """A finite set of hypothesis pairs sharing one vector length."""

    pairs: tuple[tuple[Hypothesis, Hypothesis], ...]

    def __post_init__(self):
        ks = {h.k for pair in self.pairs for h in pair}
        if len(ks) > 1:
            raise MixedLengthError(f"hypotheses mix lengths {sorted(ks)}")

    @classmethod
    def of(cls, pairs: Iterable[tuple[Hypothesis, Hypothesis]]) -> "HypothesisPairSet":
        return cls(tuple(pairs))

    def __iter__(self) -> Iterator[tuple[Hypothesis, Hypothesis]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)
