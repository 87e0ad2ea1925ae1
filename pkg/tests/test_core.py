import pytest
from hypothesis import given, strategies as st

from hypodp.core import (
    BitVector,
    Hypothesis,
    HypothesisPairSet,
    MechanismSequence,
    PrivacyParams,
    all_vectors,
    bounded_params,
)
from hypodp.errors import (
    KTooLargeError,
    MixedLengthError,
    NonNormalizedError,
    NonPositiveWeightError,
)


class TestPrivacyParams:
    def test_valid(self):
        g = PrivacyParams(0.5, 1e-6)
        assert g.as_tuple() == (0.5, 1e-6)

    def test_negative_epsilon_rejected(self):
        with pytest.raises(ValueError, match="epsilon"):
            PrivacyParams(-0.1, 0.0)

    def test_delta_out_of_range_rejected(self):
        with pytest.raises(ValueError, match="delta"):
            PrivacyParams(0.1, 1.5)
        with pytest.raises(ValueError, match="delta"):
            PrivacyParams(0.1, -1e-9)

    def test_bounded_params_clamps_delta_to_one(self):
        assert bounded_params(1.0, 3.0).delta == 1.0

    def test_bounded_params_zeroes_rounding_dust(self):
        assert bounded_params(-1e-16, 0.0).epsilon == 0.0


class TestBitVector:
    def test_flip_examples(self):
        assert str(BitVector.from_string("000").flip()) == "111"
        assert str(BitVector.from_string("101").flip()) == "010"

    def test_flip_is_involution(self):
        b = BitVector.from_string("0110")
        assert b.flip().flip() == b

    @given(st.integers(min_value=1, max_value=63), st.data())
    def test_flip_involution_property(self, k, data):
        word = data.draw(st.integers(min_value=0, max_value=(1 << k) - 1))
        b = BitVector(word, k)
        assert b.flip().flip() == b
        assert b.flip().k == k

    def test_string_roundtrip(self):
        for s in ("0", "1", "0101", "111000"):
            assert str(BitVector.from_string(s)) == s

    def test_bits_and_bit(self):
        b = BitVector.from_string("101")
        assert b.bits() == (1, 0, 1)
        assert [b.bit(i) for i in range(3)] == [1, 0, 1]

    def test_from_bits(self):
        assert BitVector.from_bits([1, 0, 1]) == BitVector.from_string("101")

    def test_k_cap(self):
        with pytest.raises(KTooLargeError):
            BitVector(0, 64)

    def test_word_range(self):
        with pytest.raises(ValueError):
            BitVector(4, 2)

    def test_ones_count(self):
        assert BitVector.from_string("1011").ones_count() == 3

    def test_lexicographic_word_order(self):
        vecs = all_vectors(3)
        assert [str(v) for v in vecs] == sorted(str(v) for v in vecs)


class TestHypothesis:
    def test_point_mass_ok(self):
        h = Hypothesis({BitVector.from_string("000"): 1.0})
        assert h.k == 3
        assert len(h) == 1

    def test_symmetric_two_atom_ok(self):
        h = Hypothesis({
            BitVector.from_string("01"): 0.5,
            BitVector.from_string("10"): 0.5,
        })
        assert h.weight(BitVector.from_string("01")) == 0.5

    def test_non_normalized_rejected(self):
        with pytest.raises(NonNormalizedError):
            Hypothesis({
                BitVector.from_string("01"): 0.5,
                BitVector.from_string("10"): 0.4,
            })

    def test_non_positive_weight_rejected(self):
        with pytest.raises(NonPositiveWeightError):
            Hypothesis({
                BitVector.from_string("01"): 1.0,
                BitVector.from_string("10"): 0.0,
            })

    def test_mixed_length_rejected(self):
        with pytest.raises(MixedLengthError):
            Hypothesis({
                BitVector.from_string("01"): 0.5,
                BitVector.from_string("100"): 0.5,
            })

    def test_normalization_tolerance(self):
        # 1e-10 off is inside the 1e-9 tolerance, 1e-8 off is not.
        Hypothesis({BitVector.from_string("0"): 1.0 - 1e-10})
        with pytest.raises(NonNormalizedError):
            Hypothesis({BitVector.from_string("0"): 1.0 - 1e-8})

    def test_atoms_sorted_lexicographically(self):
        h = Hypothesis({
            BitVector.from_string("10"): 0.25,
            BitVector.from_string("01"): 0.75,
        })
        assert [str(v) for v, _ in h.atoms] == ["01", "10"]

    def test_uniform_nonzero(self):
        h = Hypothesis.uniform_nonzero(3)
        assert len(h) == 7
        assert all(v.word != 0 for v in h.support())

    def test_uniform_all(self):
        assert len(Hypothesis.uniform_all(3)) == 8

    def test_uniform_enumeration_guard(self):
        with pytest.raises(KTooLargeError):
            Hypothesis.uniform_nonzero(40)


class TestMechanismSequence:
    def test_homogeneous(self):
        seq = MechanismSequence.homogeneous(0.1, 1e-6, 3)
        assert seq.k == 3
        assert seq.is_homogeneous()

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            MechanismSequence(())

    def test_subsequence(self):
        seq = MechanismSequence.from_pairs([(0.1, 0.0), (0.2, 0.0), (0.3, 0.0)])
        assert seq.subsequence([0, 2]) == (seq[0], seq[2])
        assert seq.subsequence([]) == ()

    def test_long_sequences_allowed(self):
        # Only vector-enumerating operations are capped at k=63.
        assert MechanismSequence.homogeneous(0.01, 0.0, 365).k == 365


class TestHypothesisPairSet:
    def test_uniform_k_enforced(self):
        a = Hypothesis.point_mass(BitVector.from_string("00"))
        b = Hypothesis.point_mass(BitVector.from_string("000"))
        with pytest.raises(MixedLengthError):
            HypothesisPairSet.of([(a, b)])

    def test_iteration(self):
        a = Hypothesis.point_mass(BitVector.from_string("00"))
        pairs = HypothesisPairSet.of([(a, a)])
        assert len(pairs) == 1
        assert list(pairs) == [(a, a)]
