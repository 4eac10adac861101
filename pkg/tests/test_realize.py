import pytest

from klab import Group, GuardError, InvalidInputError, OutOfHypothesisError
from klab.naive import naive_atoms, naive_factorizations
from klab.realize import (
    RealizationTask,
    aamp_survey,
    default_family,
    witness_search,
)


class TestRealizationTask:
    def test_lengths_below_two_rejected(self):
        with pytest.raises(OutOfHypothesisError):
            RealizationTask((1, 3), (1, 1))

    def test_malformed_tasks_rejected(self):
        with pytest.raises(InvalidInputError):
            RealizationTask((), ())
        with pytest.raises(InvalidInputError):
            RealizationTask((3, 2), (1, 1))
        with pytest.raises(InvalidInputError):
            RealizationTask((2, 3), (1,))
        with pytest.raises(InvalidInputError):
            RealizationTask((2, 3), (1, 0))


class TestWitnessSearch:
    def test_two_three(self):
        task = RealizationTask((2, 3), (1, 1), (Group.parse("C3"),))
        w = witness_search(task)
        assert w is not None
        assert w.group == Group.parse("C3")
        assert w.sequence.literal(short=True) == "[1^3,2^3]"
        assert w.report.factorization_counts == {2: 1, 3: 1}

    def test_single_length_two_over_c2(self):
        task = RealizationTask((2,), (1,), (Group.parse("C2"),))
        w = witness_search(task)
        assert w is not None
        assert w.sequence.literal(short=True) == "[1^4]"

    def test_absent_within_small_family(self):
        # no length set over C2 has two distinct lengths
        task = RealizationTask((2, 3), (1, 1), (Group.parse("C2"),))
        assert witness_search(task) is None

    def test_multiplicity_requirement_bites(self):
        # over {1,2} in C3 each length has exactly one factorization, so
        # asking for two of length 2 pushes the search past C3 entirely
        assert witness_search(RealizationTask((2,), (2,), (Group.parse("C3"),))) is None
        richer = witness_search(RealizationTask((2,), (2,)))
        assert richer is not None
        assert richer.report.factorization_counts[2] >= 2

    def test_deterministic(self):
        task = RealizationTask((2, 4), (1, 1))
        w1 = witness_search(task)
        w2 = witness_search(task)
        assert w1 is not None and w2 is not None
        assert (w1.group, w1.sequence) == (w2.group, w2.sequence)

    def test_family_extension_keeps_witness(self):
        small = RealizationTask((2, 3), (1, 1), (Group.parse("C2"), Group.parse("C3")))
        big = RealizationTask((2, 3), (1, 1), default_family())
        a, b = witness_search(small), witness_search(big)
        assert a is not None and b is not None
        assert (a.group, a.sequence) == (b.group, b.sequence)

    def test_witnesses_revalidate_through_naive_route(self):
        for lengths in [(2, 3), (2, 4)]:
            task = RealizationTask(lengths, (1,) * len(lengths))
            w = witness_search(task)
            assert w is not None
            facs = naive_factorizations(w.sequence, naive_atoms(w.support))
            assert tuple(sorted({len(f) for f in facs})) == lengths


class TestAampSurvey:
    def test_c3_progressions(self):
        report = aamp_survey(Group.parse("C3"), 9)
        assert report.failures == ()
        assert report.empirical_bound == 0
        assert report.delta_star_values == (1,)

    def test_trivial_group(self):
        report = aamp_survey(Group.trivial(), 5)
        assert report.failures == ()
        assert report.empirical_bound == 0
        assert report.delta_star_values == ()
        assert report.differences_used == (1,)

    def test_c2_c2(self):
        report = aamp_survey(Group.parse("C2xC2"), 12)
        assert report.failures == ()

    def test_guard(self):
        with pytest.raises(GuardError):
            aamp_survey(Group.parse("C3"), 9, guard=2)
        assert aamp_survey(Group.parse("C3"), 9, guard=2, force=True).failures == ()

    def test_counts_the_corpus(self):
        report = aamp_survey(Group.parse("C2"), 6)
        # zero-sum sequences over {0, 1} with length <= 6: 1^(2k) times 0^j
        assert report.sequences_checked == 16
        assert report.distinct_length_sets >= 1
