"""Bounds derived from public constraints on database membership.

When it is public knowledge that one individual can contribute to at
most m of the k databases (or only to databases matching one of a few
known patterns), the adversary's hypotheses are supported on a
restricted vector set and the worst case composes fewer mechanisms.
The neighborhood mode matters: under unbounded DP one hypothesis is
"contributed nowhere" (the zero vector), so at most m positions differ;
under bounded DP both hypotheses may place the contribution, so up to
min(2m, k) positions differ.

``parallel_bound`` reproduces what classic parallel composition would
give for the same setting (the count times the worst per-mechanism
epsilon, for pure epsilon-DP mechanisms only). It serves as the
comparison baseline; the constraint-derived bounds never lose to it.
"""

import enum
import itertools
import math
import warnings
from dataclasses import dataclass
from typing import Sequence

from .composition import Advanced, CompositionTheorem, Simple, compose
from .core import BitVector, MAX_K, PrivacyParams, bounded_params
from .errors import (
    IncompatibleModeError,
    IncompatibleTheoremError,
    InvalidBoundariesError,
    KTooLargeError,
    MixedLengthError,
    NonzeroDeltaError,
)
from .hypothesis_dp import differing_indices

# Exhaustive subset search is attempted up to this many candidate subsets.
MAX_SUBSET_SEARCH = 1_000_000


@dataclass(frozen=True)
class MaxOnes:
    """At most ``m`` of the k databases may contain the contribution."""

    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")


@dataclass(frozen=True)
class PatternSet:
    """Membership is known to match one of finitely many fixed patterns."""

    patterns: frozenset[BitVector]

    def __post_init__(self):
        if not self.patterns:
            raise ValueError("pattern set must be non-empty")
        ks = {p.k for p in self.patterns}
        if len(ks) > 1:
            raise MixedLengthError(f"patterns mix lengths {sorted(ks)}")

    @classmethod
    def of(cls, patterns) -> "PatternSet":
        return cls(frozenset(patterns))

    @property
    def k(self) -> int:
        return next(iter(self.patterns)).k


MembershipConstraint = MaxOnes | PatternSet

# "Exactly one database at most" is the m=1 special case.
AT_MOST_ONE = MaxOnes(1)


class NeighborhoodMode(enum.Enum):
    UNBOUNDED = "unbounded"
    BOUNDED = "bounded"


def allowed_vectors(constraint: MembershipConstraint, k: int) -> set[BitVector]:
    """All membership vectors of length k satisfying the constraint."""
    if k > MAX_K:
        raise KTooLargeError(f"cannot enumerate vectors for k={k} > {MAX_K}")
    if isinstance(constraint, PatternSet):
        if constraint.k != k:
            raise MixedLengthError(f"patterns have k={constraint.k}, expected {k}")
        return set(constraint.patterns)
    m = min(constraint.m, k)
    count = sum(math.comb(k, j) for j in range(m + 1))
    if count > 10_000_000:
        raise KTooLargeError(f"constraint admits {count} vectors; enumeration refused")
    vectors = set()
    for j in range(m + 1):
        for positions in itertools.combinations(range(k), j):
            word = 0
            for p in positions:
                word |= 1 << (k - 1 - p)
            vectors.add(BitVector(word, k))
    return vectors


def _pick(candidates: list[PrivacyParams]) -> PrivacyParams:
    """The epsilon-maximizing candidate; ties resolve to the larger delta."""
    return max(candidates, key=lambda g: (g.epsilon, g.delta))


def _max_over_subsets(
    seq: Sequence[PrivacyParams], size: int, theorem: CompositionTheorem
) -> PrivacyParams:
    """Worst composition over all index subsets of the given size."""
    k = len(seq)
    size = min(size, k)
    if size == 0:
        return PrivacyParams(0.0, 0.0)
    if isinstance(theorem, Advanced):
        # Advanced composition needs identical guarantees, so any subset of
        # a homogeneous sequence gives the same value; a heterogeneous
        # sequence makes some candidate subset incompatible.
        if any(g != seq[0] for g in seq):
            raise IncompatibleTheoremError(
                "the advanced theorem requires a homogeneous sequence"
            )
        return compose(seq[:size], theorem)
    if math.comb(k, size) <= MAX_SUBSET_SEARCH:
        candidates = [
            compose([seq[i] for i in subset], theorem)
            for subset in itertools.combinations(range(k), size)
        ]
        return _pick(candidates)
    if isinstance(theorem, Simple):
        # Too many subsets to enumerate: sum the top epsilons and the top
        # deltas independently. Each component is the exact maximum over
        # subsets, so the pair dominates every single subset, but the
        # delta may be larger than the delta of the epsilon-maximizing
        # subset that exhaustive search would report.
        warnings.warn(
            "subset search skipped; reporting componentwise top-m sums "
            "(delta may be conservative)",
            RuntimeWarning,
            stacklevel=3,
        )
        top_eps = sorted((g.epsilon for g in seq), reverse=True)[:size]
        top_delta = sorted((g.delta for g in seq), reverse=True)[:size]
        return bounded_params(math.fsum(top_eps), math.fsum(top_delta))
    raise KTooLargeError(
        f"C({k}, {size}) subsets exceed the exhaustive search limit"
    )


def _pattern_pairs(
    patterns: frozenset[BitVector], mode: NeighborhoodMode
) -> list[tuple[BitVector, BitVector]]:
    ordered = sorted(patterns, key=lambda p: p.word)
    if mode is NeighborhoodMode.BOUNDED:
        return list(itertools.combinations(ordered, 2))
    zero = BitVector.zeros(ordered[0].k)
    if zero not in patterns:
        raise IncompatibleModeError(
            "unbounded mode compares presence against absence, which needs "
            "the all-absent (zero) vector among the patterns"
        )
    return [(zero, p) for p in ordered if p.word != 0]


def _max_over_pairs(
    seq: Sequence[PrivacyParams],
    vector_pairs: list[tuple[BitVector, BitVector]],
    theorem: CompositionTheorem,
) -> PrivacyParams:
    if not vector_pairs:
        return PrivacyParams(0.0, 0.0)
    candidates = [
        compose([seq[i] for i in differing_indices(a, b)], theorem)
        for a, b in vector_pairs
    ]
    return _pick(candidates)


def constrained_bound(
    seq: Sequence[PrivacyParams],
    constraint: MembershipConstraint,
    mode: NeighborhoodMode,
    theorem: CompositionTheorem,
) -> PrivacyParams:
    """Worst-case guarantee over all hypothesis pairs the constraint allows.

    For ``MaxOnes(m)`` the worst pair differs in at most m positions
    (unbounded) or min(2m, k) positions (bounded), so the bound is the
    worst composition over index subsets of that size. For a
    ``PatternSet`` the candidate pairs are the allowed pattern pairs and
    each pair composes over its symmetric-difference positions.
    """
    if isinstance(constraint, MaxOnes):
        size = constraint.m if mode is NeighborhoodMode.UNBOUNDED else 2 * constraint.m
        return _max_over_subsets(seq, size, theorem)
    if constraint.k != len(seq):
        raise MixedLengthError(
            f"patterns have k={constraint.k}, sequence has k={len(seq)}"
        )
    return _max_over_pairs(seq, _pattern_pairs(constraint.patterns, mode), theorem)


def exclusive_groups_bound(
    seq: Sequence[PrivacyParams],
    shared_end: int,
    first_only_end: int,
    total: int,
    mode: NeighborhoodMode,
    theorem: CompositionTheorem = Simple(),
) -> PrivacyParams:
    """Bound for two user groups with shared and mutually exclusive columns.

    Positions [0, shared_end) are populated by both groups, positions
    [shared_end, first_only_end) only by the first group, and positions
    [first_only_end, total) only by the second group. The possible
    membership vectors are therefore the first-group pattern, the
    second-group pattern, and the zero vector. Unbounded mode compares
    the first-group pattern against the other two; bounded mode compares
    all three pairwise. Every pair composes over the exact positions
    where its two patterns differ.
    """
    if not (0 <= shared_end < first_only_end < total == len(seq)):
        raise InvalidBoundariesError(
            f"need 0 <= {shared_end} < {first_only_end} < {total} == len(seq)={len(seq)}"
        )
    k = total
    first = BitVector.from_bits(
        [1] * first_only_end + [0] * (k - first_only_end)
    )
    second = BitVector.from_bits(
        [1] * shared_end + [0] * (first_only_end - shared_end) + [1] * (k - first_only_end)
    )
    zero = BitVector.zeros(k)
    pairs = [(first, second), (first, zero)]
    if mode is NeighborhoodMode.BOUNDED:
        pairs.append((second, zero))
    return _max_over_pairs(seq, pairs, theorem)


def parallel_bound(
    seq: Sequence[PrivacyParams], m: int, mode: NeighborhoodMode
) -> PrivacyParams:
    """What parallel composition gives for the same contribution limit.

    Parallel composition covers pure epsilon-DP only and charges the
    worst per-mechanism epsilon once per position in which neighboring
    merged databases can differ: m positions unbounded, min(2m, k)
    bounded.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    guarantees = list(seq)
    if any(g.delta != 0.0 for g in guarantees):
        raise NonzeroDeltaError("parallel composition applies to delta=0 mechanisms only")
    count = m if mode is NeighborhoodMode.UNBOUNDED else min(2 * m, len(guarantees))
    return PrivacyParams(count * max(g.epsilon for g in guarantees), 0.0)
