import math

import pytest
from hypothesis import given, strategies as st

from hypodp.composition import (
    Advanced,
    Simple,
    advanced_compose,
    best_classic_bound,
    compose,
    simple_compose,
)
from hypodp.core import MechanismSequence, PrivacyParams
from hypodp.errors import (
    HeterogeneousInputError,
    IncompatibleTheoremError,
    InvalidSlackError,
)

# Frozen via direct 50-digit evaluation of
# sqrt(2 k ln(1/slack)) eps + k eps (e^eps - 1).
ADV_K100 = 5.8502350929445575   # eps=0.1, delta=1e-8, slack=1e-5
ADV_K10 = 1.7674290543447575    # eps=0.1, delta=0,    slack=1e-6
ADV_K2_HALF = 4.3656434595499665  # eps=0.5, delta=0,  slack=1e-6
ADV_K365 = 0.9534401981542315   # eps=0.01, delta=0,   slack=1e-5


class TestSimpleCompose:
    def test_empty_sequence(self):
        assert simple_compose([]) == PrivacyParams(0.0, 0.0)

    def test_homogeneous_triple(self):
        g = simple_compose([PrivacyParams(0.1, 1e-6)] * 3)
        assert g.epsilon == pytest.approx(0.3, rel=1e-15)
        assert g.delta == pytest.approx(3e-6, rel=1e-15)

    def test_heterogeneous(self):
        g = simple_compose([PrivacyParams(0.1, 0.0), PrivacyParams(0.2, 1e-6)])
        assert g.epsilon == pytest.approx(0.3, rel=1e-15)
        assert g.delta == 1e-6

    def test_delta_clamped(self):
        g = simple_compose([PrivacyParams(1.0, 0.7)] * 2)
        assert g.delta == 1.0

    @given(st.lists(st.tuples(
        st.floats(min_value=0.0, max_value=5.0),
        st.floats(min_value=0.0, max_value=1e-3),
    ), min_size=0, max_size=8))
    def test_permutation_invariant(self, pairs):
        seq = [PrivacyParams(e, d) for e, d in pairs]
        forward = simple_compose(seq)
        backward = simple_compose(list(reversed(seq)))
        # fsum returns the correctly rounded sum, so order cannot matter.
        assert forward == backward

    @given(st.lists(st.tuples(
        st.floats(min_value=0.0, max_value=5.0),
        st.floats(min_value=0.0, max_value=1e-4),
    ), min_size=0, max_size=6), st.lists(st.tuples(
        st.floats(min_value=0.0, max_value=5.0),
        st.floats(min_value=0.0, max_value=1e-4),
    ), min_size=0, max_size=6))
    def test_additive(self, pairs_a, pairs_b):
        a = [PrivacyParams(e, d) for e, d in pairs_a]
        b = [PrivacyParams(e, d) for e, d in pairs_b]
        joint = simple_compose(a + b)
        ga, gb = simple_compose(a), simple_compose(b)
        assert joint.epsilon == pytest.approx(ga.epsilon + gb.epsilon, rel=1e-12, abs=1e-15)
        assert joint.delta == pytest.approx(ga.delta + gb.delta, rel=1e-12, abs=1e-18)


class TestAdvancedCompose:
    def test_zero_epsilon(self):
        g = advanced_compose([PrivacyParams(0.0, 0.0)] * 10, 1e-5)
        assert g == PrivacyParams(0.0, 1e-5)

    def test_k100(self):
        g = advanced_compose([PrivacyParams(0.1, 1e-8)] * 100, 1e-5)
        assert g.epsilon == pytest.approx(ADV_K100, abs=1e-12)
        assert g.delta == pytest.approx(1.1e-5, rel=1e-15)

    def test_k10(self):
        g = advanced_compose([PrivacyParams(0.1, 0.0)] * 10, 1e-6)
        assert g.epsilon == pytest.approx(ADV_K10, abs=1e-12)
        assert g.delta == 1e-6

    def test_heterogeneous_rejected(self):
        seq = [PrivacyParams(0.1, 0.0), PrivacyParams(0.2, 0.0)]
        with pytest.raises(HeterogeneousInputError):
            advanced_compose(seq, 1e-5)

    @pytest.mark.parametrize("slack", [0.0, 1.0, -0.1, 2.0])
    def test_invalid_slack_rejected(self, slack):
        with pytest.raises(InvalidSlackError):
            advanced_compose([PrivacyParams(0.1, 0.0)], slack)

    def test_monotone_in_k_eps_delta(self):
        base = advanced_compose([PrivacyParams(0.1, 1e-7)] * 10, 1e-6)
        for k, eps, delta in [(11, 0.1, 1e-7), (10, 0.11, 1e-7), (10, 0.1, 2e-7)]:
            bigger = advanced_compose([PrivacyParams(eps, delta)] * k, 1e-6)
            assert bigger.epsilon >= base.epsilon
            assert bigger.delta >= base.delta


class TestComposeDispatch:
    def test_single_mechanism_simple(self):
        g = compose([PrivacyParams(0.5, 1e-6)], Simple())
        assert g == PrivacyParams(0.5, 1e-6)

    def test_advanced_dispatch_matches_direct(self):
        seq = [PrivacyParams(0.1, 0.0)] * 100
        assert compose(seq, Advanced(1e-5)) == advanced_compose(seq, 1e-5)

    def test_heterogeneous_advanced_incompatible(self):
        seq = [PrivacyParams(0.1, 0.0), PrivacyParams(0.2, 0.0)]
        with pytest.raises(IncompatibleTheoremError):
            compose(seq, Advanced(1e-5))

    def test_accepts_mechanism_sequence(self):
        seq = MechanismSequence.homogeneous(0.1, 1e-6, 3)
        assert compose(seq, Simple()) == simple_compose(seq)

    def test_pluggable_theorem(self):
        class Fixed:
            def compose_guarantees(self, guarantees):
                return PrivacyParams(42.0, 0.0)

        assert compose([PrivacyParams(1.0, 0.0)], Fixed()).epsilon == 42.0

    def test_unknown_theorem_rejected(self):
        with pytest.raises(IncompatibleTheoremError):
            compose([PrivacyParams(1.0, 0.0)], object())


class TestBestClassicBound:
    def test_simple_wins_small_k(self):
        g = best_classic_bound([PrivacyParams(0.5, 0.0)] * 2, 1e-6)
        assert g.epsilon == pytest.approx(1.0, rel=1e-15)
        assert g.delta == 0.0
        # sanity: the advanced branch really is worse here
        adv = advanced_compose([PrivacyParams(0.5, 0.0)] * 2, 1e-6)
        assert adv.epsilon == pytest.approx(ADV_K2_HALF, abs=1e-12)

    def test_advanced_wins_large_k(self):
        g = best_classic_bound([PrivacyParams(0.01, 0.0)] * 365, 1e-5)
        assert g.epsilon == pytest.approx(ADV_K365, abs=1e-12)
        assert g.delta == 1e-5

    def test_single_mechanism_is_identity(self):
        g = best_classic_bound([PrivacyParams(0.3, 1e-7)], 1e-6)
        assert g == PrivacyParams(0.3, 1e-7)

    def test_never_beats_simple_on_epsilon(self):
        for k in (1, 5, 50, 200):
            seq = [PrivacyParams(0.05, 0.0)] * k
            assert best_classic_bound(seq, 1e-6).epsilon <= simple_compose(seq).epsilon

    def test_heterogeneous_falls_back_to_simple(self):
        seq = [PrivacyParams(0.1, 0.0), PrivacyParams(0.2, 0.0)]
        assert best_classic_bound(seq, 1e-6) == simple_compose(seq)


def test_advanced_formula_shape():
    # Spot-check the closed form against an inline evaluation.
    eps, k, slack = 0.2, 20, 1e-4
    expected = math.sqrt(2 * k * math.log(1 / slack)) * eps + k * eps * (math.exp(eps) - 1)
    g = advanced_compose([PrivacyParams(eps, 0.0)] * k, slack)
    assert g.epsilon == pytest.approx(expected, rel=1e-12)
