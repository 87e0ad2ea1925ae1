"""Guarantees against adversaries holding composite membership hypotheses.

A pair of hypotheses (distributions over bit vectors) is handled in two
steps: refine the pair into equal-weight matched vector pairs, then
compose, for each matched pair, only the iterations where its two
vectors differ; iterations where they agree contribute no evidence
either way. The per-pair guarantees are averaged with the matched
weights: delta arithmetically, epsilon through ``ln(sum w * e^eps)``.
"""

import math
import warnings
from typing import Iterable, Sequence

from .composition import CompositionTheorem, compose
from .core import (
    BitVector,
    Hypothesis,
    HypothesisPairSet,
    PrivacyParams,
    bounded_params,
)
from .errors import EmptySetError, MixedLengthError
from .refinement import refine_tuples


def differing_indices(b0: BitVector, b1: BitVector) -> tuple[int, ...]:
    """0-based positions where the two vectors disagree, ascending."""
    if b0.k != b1.k:
        raise MixedLengthError(f"vectors have k={b0.k} and k={b1.k}")
    diff = b0.word ^ b1.word
    k = b0.k
    return tuple(i for i in range(k) if (diff >> (k - 1 - i)) & 1)


def pair_guarantee(
    b0: BitVector,
    b1: BitVector,
    seq: Sequence[PrivacyParams],
    theorem: CompositionTheorem,
) -> PrivacyParams:
    """Guarantee for distinguishing two deterministic vectors.

    Only the mechanisms at differing positions are composed; identical
    vectors need no composition at all and yield (0, 0).
    """
    indices = differing_indices(b0, b1)
    if not indices:
        return PrivacyParams(0.0, 0.0)
    return compose([seq[i] for i in indices], theorem)


def _aggregate(terms: Iterable[tuple[float, float, float]]) -> PrivacyParams:
    """Combine weighted per-pair guarantees (weight, epsilon, delta).

    Epsilon uses log-sum-exp with the maximum factored out so that
    composed epsilons far beyond 700 nats cannot overflow. Terms are
    sorted before summation so the result is bit-stable regardless of
    the order they were produced in.
    """
    terms = sorted(terms, key=lambda t: (t[1], t[2], t[0]))
    if not terms:
        return PrivacyParams(0.0, 0.0)
    delta = math.fsum(w * d for w, _, d in terms)
    eps_max = max(e for _, e, _ in terms)
    eps = eps_max + math.log(math.fsum(w * math.exp(e - eps_max) for w, e, _ in terms))
    return bounded_params(eps, delta)


def hdp_guarantee(
    p0: Hypothesis,
    p1: Hypothesis,
    seq: Sequence[PrivacyParams],
    theorem: CompositionTheorem,
) -> PrivacyParams:
    """Guarantee for distinguishing two composite hypotheses.

    Refines the pair into matched equal-weight vector pairs and
    aggregates the per-pair guarantees with the matched weights.
    Aggregation never sees unmatched weights: refinement always runs
    first.
    """
    refinement = refine_tuples(p0, p1)
    terms = []
    for t0, t1 in refinement.pairs:
        g = pair_guarantee(t0.vector, t1.vector, seq, theorem)
        terms.append((t0.weight, g.epsilon, g.delta))
    return _aggregate(terms)


def hdp_guarantee_over_set(
    pairs: HypothesisPairSet | Iterable[tuple[Hypothesis, Hypothesis]],
    seq: Sequence[PrivacyParams],
    theorem: CompositionTheorem,
) -> PrivacyParams:
    """Componentwise maximum of the pair guarantees over a set of pairs."""
    pairs = list(pairs)
    if not pairs:
        raise EmptySetError("need at least one hypothesis pair")
    results = [hdp_guarantee(p0, p1, seq, theorem) for p0, p1 in pairs]
    return PrivacyParams(
        max(g.epsilon for g in results),
        max(g.delta for g in results),
    )


def uniform_nonzero_closed_form(eps: float, delta: float, k: int) -> PrivacyParams:
    """Closed form for the all-absent vs uniform-nonzero hypothesis pair.

    For k mechanisms each (eps, delta)-DP, composed per pair with simple
    composition, the aggregation collapses to

        epsilon = ln[((1 + e^eps)^k - 1) / (2^k - 1)]
        delta   = k 2^(k-1) / (2^k - 1) * delta

    The epsilon part is evaluated in log space so large k cannot
    overflow.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    # ln((1+e^eps)^k - 1) = A + ln(1 - e^-A) with A = k*ln(1+e^eps).
    a = k * _softplus(eps)
    log_num = a + _log1mexp(a)
    log_den = _log_pow2_minus1(k)
    delta_out = k * (2 ** (k - 1) / (2**k - 1)) * delta
    return bounded_params(log_num - log_den, delta_out)


def _softplus(x: float) -> float:
    """ln(1 + e^x), overflow-safe."""
    if x > 0:
        return x + math.log1p(math.exp(-x))
    return math.log1p(math.exp(x))


def _log1mexp(a: float) -> float:
    """ln(1 - e^-a) for a > 0."""
    if a <= 0:
        raise ValueError(f"need a > 0, got {a}")
    return math.log(-math.expm1(-a))


def _log_pow2_minus1(k: int) -> float:
    """ln(2^k - 1); switches to log space beyond exact float range."""
    if k <= 50:
        return math.log((1 << k) - 1)
    return k * math.log(2.0) + _log1mexp(k * math.log(2.0))
