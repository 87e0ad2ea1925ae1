"""Classic composition theorems behind a pluggable dispatch.

Two theorems are provided: simple composition (sum the epsilons and the
deltas) and advanced composition for k identical (epsilon, delta)
mechanisms, which trades a small additive delta slack for a much smaller
epsilon. The dispatch also accepts any object exposing a
``compose_guarantees(guarantees)`` method, so tighter theorems can be
plugged in without touching callers.

Epsilons stay in plain double precision throughout; anything that needs
``exp`` of a composed epsilon is expected to work in log space on the
caller's side. Delta sums use ``math.fsum`` (exact compensated
summation), which also makes the sums order-independent.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Union

from .core import PrivacyParams, bounded_params
from .errors import HeterogeneousInputError, IncompatibleTheoremError, InvalidSlackError


@dataclass(frozen=True)
class Simple:
    """Simple composition: epsilons and deltas add up."""


@dataclass(frozen=True)
class Advanced:
    """Advanced composition for homogeneous sequences.

    ``delta_slack`` is the additional additive delta spent to shrink
    epsilon; it must lie strictly inside (0, 1).
    """

    delta_slack: float

    def __post_init__(self):
        if not 0.0 < self.delta_slack < 1.0:
            raise InvalidSlackError(f"delta_slack must be in (0, 1), got {self.delta_slack}")


CompositionTheorem = Union[Simple, Advanced]

SIMPLE = Simple()


def simple_compose(guarantees: Iterable[PrivacyParams]) -> PrivacyParams:
    """Sum of per-mechanism guarantees; the empty sequence composes to (0, 0)."""
    guarantees = list(guarantees)
    eps = math.fsum(g.epsilon for g in guarantees)
    delta = math.fsum(g.delta for g in guarantees)
    return bounded_params(eps, delta)


def advanced_compose(guarantees: Iterable[PrivacyParams], delta_slack: float) -> PrivacyParams:
    """Advanced composition of k identical (epsilon, delta) mechanisms.

    Returns ``(sqrt(2 k ln(1/delta_slack)) eps + k eps (e^eps - 1),
    k delta + delta_slack)`` with the delta clamped to 1.

    Raises:
        HeterogeneousInputError: if the guarantees are not all identical.
        InvalidSlackError: if ``delta_slack`` is outside (0, 1).
    """
    if not 0.0 < delta_slack < 1.0:
        raise InvalidSlackError(f"delta_slack must be in (0, 1), got {delta_slack}")
    guarantees = list(guarantees)
    if not guarantees:
        raise HeterogeneousInputError("advanced composition needs at least one mechanism")
    first = guarantees[0]
    if any(g != first for g in guarantees):
        raise HeterogeneousInputError(
            "advanced composition requires identical guarantees; "
            "use simple composition for heterogeneous sequences"
        )
    k = len(guarantees)
    eps = first.epsilon
    eps_total = math.sqrt(2.0 * k * math.log(1.0 / delta_slack)) * eps + k * eps * math.expm1(eps)
    delta_total = k * first.delta + delta_slack
    return bounded_params(eps_total, delta_total)


def is_compatible(guarantees: Iterable[PrivacyParams], theorem: CompositionTheorem) -> bool:
    """Whether ``theorem`` can be applied to the sequence."""
    if isinstance(theorem, Simple):
        return True
    if isinstance(theorem, Advanced):
        guarantees = list(guarantees)
        return bool(guarantees) and all(g == guarantees[0] for g in guarantees)
    return hasattr(theorem, "compose_guarantees")


def compose(guarantees: Iterable[PrivacyParams], theorem: CompositionTheorem) -> PrivacyParams:
    """Compose a sequence under the chosen theorem.

    The empty sequence composes to (0, 0) under every theorem.

    Raises:
        IncompatibleTheoremError: if the theorem cannot handle the sequence
            (e.g. the advanced theorem on a heterogeneous sequence).
    """
    guarantees = list(guarantees)
    if not guarantees:
        return PrivacyParams(0.0, 0.0)
    if isinstance(theorem, Simple):
        return simple_compose(guarantees)
    if isinstance(theorem, Advanced):
        if not is_compatible(guarantees, theorem):
            raise IncompatibleTheoremError(
                "the advanced theorem requires a homogeneous sequence"
            )
        return advanced_compose(guarantees, theorem.delta_slack)
    if hasattr(theorem, "compose_guarantees"):
        return theorem.compose_guarantees(guarantees)
    raise IncompatibleTheoremError(f"unknown composition theorem: {theorem!r}")


def best_classic_bound(guarantees: Iterable[PrivacyParams], delta_slack: float) -> PrivacyParams:
    """The epsilon-smaller of simple and (when applicable) advanced composition.

    Ties on epsilon break toward the smaller delta.
    """
    guarantees = list(guarantees)
    candidates = [simple_compose(guarantees)]
    if is_compatible(guarantees, Advanced(delta_slack)):
        candidates.append(advanced_compose(guarantees, delta_slack))
    return min(candidates, key=lambda g: (g.epsilon, g.delta))
