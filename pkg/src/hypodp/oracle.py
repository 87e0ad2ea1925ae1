"""Exact brute-force verification of claimed guarantees on small instances.

For finite-alphabet mechanisms whose two behaviors (record absent /
record present) are given explicitly, the distribution of the full view
under any membership vector is a product measure that can be enumerated
exactly. The minimal delta making the guarantee inequality hold at a
given epsilon for *every* output set is then a finite sum: the maximal
violation is always attained by the set of views where one distribution
exceeds e^eps times the other. This gives a ground-truth soundness
check for every analytic bound in the library on desk-scale instances.

The oracle covers nonadaptive, fixed-mechanism adversaries only, so the
adversary's coin tosses carry no information and views are plain output
tuples. Continuous mechanisms are out of scope: exactness requires a
finite view space.
"""

import math
from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

import numpy as np

from .core import BitVector, Hypothesis, PrivacyParams
from .errors import (
    InvalidRateError,
    MismatchedSupportError,
    MixedLengthError,
    ViewSpaceTooLargeError,
)

MAX_VIEW_SPACE = 10_000_000

# Absolute slack on delta comparisons; covers accumulated rounding in
# product measures over up to MAX_VIEW_SPACE entries.
SOUNDNESS_SLACK = 1e-12

Symbol = Hashable
View = tuple


@dataclass(frozen=True)
class DiscreteMechanism:
    """A mechanism given by its two output distributions on a finite alphabet.

    ``absent`` is the output distribution when the target record is not
    in the database, ``present`` when it is.
    """

    absent: Mapping[Symbol, float]
    present: Mapping[Symbol, float]

    def __post_init__(self):
        if set(self.absent) != set(self.present):
            raise MismatchedSupportError("absent and present must share one alphabet")
        for name, dist in (("absent", self.absent), ("present", self.present)):
            if any(p < 0.0 for p in dist.values()):
                raise ValueError(f"{name} distribution has a negative probability")
            total = math.fsum(dist.values())
            if abs(total - 1.0) > 1e-12:
                raise ValueError(f"{name} distribution sums to {total!r}, not 1")

    def dist_for(self, bit: int) -> Mapping[Symbol, float]:
        return self.present if bit else self.absent

    @property
    def alphabet(self) -> tuple[Symbol, ...]:
        return tuple(sorted(self.absent))


@dataclass(frozen=True)
class ViewDistribution:
    """Exact probability of every view tuple."""

    probs: Mapping[View, float]

    def __post_init__(self):
        total = math.fsum(self.probs.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"view probabilities sum to {total!r}, not 1")


def randomized_response(q: float) -> DiscreteMechanism:
    """The canonical binary test mechanism.

    Reports the true bit with probability 1-q and lies with probability
    q, giving a pure DP guarantee of epsilon = ln((1-q)/q).
    """
    if not 0.0 < q < 0.5:
        raise InvalidRateError(f"q must be in (0, 0.5), got {q}")
    return DiscreteMechanism(absent={1: q, 0: 1.0 - q}, present={1: 1.0 - q, 0: q})


def randomized_response_guarantee(q: float) -> PrivacyParams:
    """The (ln((1-q)/q), 0) guarantee of :func:`randomized_response`."""
    if not 0.0 < q < 0.5:
        raise InvalidRateError(f"q must be in (0, 0.5), got {q}")
    return PrivacyParams(math.log((1.0 - q) / q), 0.0)


def _check_view_space(mechs: Sequence[DiscreteMechanism]) -> int:
    total = 1
    for m in mechs:
        total *= len(m.absent)
        if total > MAX_VIEW_SPACE:
            raise ViewSpaceTooLargeError(
                f"view space exceeds {MAX_VIEW_SPACE} entries"
            )
    return total


def view_distribution(mechs: Sequence[DiscreteMechanism], b: BitVector) -> ViewDistribution:
    """Product distribution of the k outputs when vector b picks the databases."""
    if len(mechs) != b.k:
        raise MixedLengthError(f"{len(mechs)} mechanisms but vector of length {b.k}")
    _check_view_space(mechs)
    views: dict[View, float] = {(): 1.0}
    for mech, bit in zip(mechs, b.bits()):
        dist = mech.dist_for(bit)
        views = {
            v + (y,): p * dist[y]
            for v, p in views.items()
            for y in mech.alphabet
        }
    return ViewDistribution(views)


def mixture_view_distribution(
    mechs: Sequence[DiscreteMechanism], h: Hypothesis
) -> ViewDistribution:
    """View distribution under a composite hypothesis: the atom-weighted mixture.

    Accumulation follows the hypothesis's sorted atom order, so results
    are deterministic; memory stays bounded by the view space even for
    hypotheses with thousands of atoms.
    """
    mixture: dict[View, float] = {}
    for vec, w in h.atoms:
        for v, p in view_distribution(mechs, vec).probs.items():
            mixture[v] = mixture.get(v, 0.0) + w * p
    return ViewDistribution(mixture)


def required_delta(p0: ViewDistribution, p1: ViewDistribution, eps: float) -> float:
    """Minimal delta making Pr0(S) <= e^eps Pr1(S) + delta hold for all S.

    Equals the hockey-stick divergence sum_v max(0, P0(v) - e^eps P1(v)):
    the worst output set is exactly the set of views where P0 exceeds
    e^eps P1. At eps = 0 this is the total variation distance.
    """
    if set(p0.probs) != set(p1.probs):
        raise MismatchedSupportError("view distributions cover different view spaces")
    if eps < 0.0:
        raise ValueError(f"epsilon must be >= 0, got {eps}")
    factor = math.exp(eps) if eps < 700.0 else math.inf
    gaps = []
    for v, q0 in p0.probs.items():
        q1 = p1.probs[v]
        gap = q0 if q1 == 0.0 else q0 - factor * q1
        if gap > 0.0:
            gaps.append(gap)
    return math.fsum(gaps)


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of checking a claimed guarantee against exact enumeration."""

    delta_needed_fwd: float
    delta_needed_rev: float
    sound: bool

    @property
    def delta_needed(self) -> float:
        return max(self.delta_needed_fwd, self.delta_needed_rev)


def verify_hdp(
    mechs: Sequence[DiscreteMechanism],
    p0: Hypothesis,
    p1: Hypothesis,
    claimed: PrivacyParams,
) -> VerifyReport:
    """Check a claimed guarantee for a hypothesis pair by exact enumeration.

    Both directed inequalities are evaluated at the claimed epsilon; the
    claim is sound iff the larger of the two required deltas stays
    within the claimed delta plus ``SOUNDNESS_SLACK``.
    """
    d0 = mixture_view_distribution(mechs, p0)
    d1 = mixture_view_distribution(mechs, p1)
    fwd = required_delta(d0, d1, claimed.epsilon)
    rev = required_delta(d1, d0, claimed.epsilon)
    return VerifyReport(
        delta_needed_fwd=fwd,
        delta_needed_rev=rev,
        sound=max(fwd, rev) <= claimed.delta + SOUNDNESS_SLACK,
    )


def simulate_experiment(
    mechs: Sequence[DiscreteMechanism],
    b: BitVector,
    trials: int,
    seed: int,
) -> dict[View, int]:
    """Sample i.i.d. views under vector b and count them.

    Uses the counter-based Philox generator with one stream per
    iteration derived from (seed, iteration index), so counts are
    bit-reproducible across platforms for a given seed. Every view in
    the space appears in the result, including zero counts.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must fit in 64 bits, got {seed}")
    if len(mechs) != b.k:
        raise MixedLengthError(f"{len(mechs)} mechanisms but vector of length {b.k}")
    total = _check_view_space(mechs)

    alphabets = [m.alphabet for m in mechs]
    combined = np.zeros(trials, dtype=np.int64)
    stride = total
    for i, (mech, bit) in enumerate(zip(mechs, b.bits())):
        probs = np.array([mech.dist_for(bit)[y] for y in alphabets[i]], dtype=np.float64)
        probs /= probs.sum()
        rng = np.random.Generator(np.random.Philox(key=np.array([seed, i], dtype=np.uint64)))
        draws = rng.choice(len(alphabets[i]), size=trials, p=probs)
        stride //= len(alphabets[i])
        combined += draws * stride

    counts = np.bincount(combined, minlength=total)
    views: dict[View, int] = {}
    for flat in range(total):
        view = []
        rem = flat
        for alpha in reversed(alphabets):
            view.append(alpha[rem % len(alpha)])
            rem //= len(alpha)
        views[tuple(reversed(view))] = int(counts[flat])
    return views
