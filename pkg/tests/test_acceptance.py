"""Acceptance suite.

One test per criterion; each prints a single PASS line with its elapsed
time (run with -s to see them live).  Budgets are asserted as hard caps.
"""

import random
import time


from klab import Group
from klab.abelian import IntMatrix, smith_normal_form
from klab.krull import MonoidElement, dedekind_model, localize, monoid_length_set, transfer
from klab.lengths import (
    delta_star,
    factorizations,
    half_factorial_check,
    length_set,
    max_delta_star_formula,
    zero_sum_vectors,
)
from klab.naive import naive_atoms, naive_factorizations
from klab.realize import RealizationTask, aamp_survey, witness_search
from klab.zerosum import Sequence, Support, atoms


class _Criterion:
    def __init__(self, name, budget_seconds):
        self.name = name
        self.budget = budget_seconds

    def __enter__(self):
        self.start = time.monotonic()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.monotonic() - self.start
        verdict = "PASS" if exc_type is None else "FAIL"
        print(f"{verdict} {self.name} ({elapsed:.2f}s, budget {self.budget}s)")
        if exc_type is None:
            assert elapsed < self.budget, f"{self.name} exceeded its {self.budget}s budget"
        return False


def test_criterion_1_max_delta_star_formula():
    expected = {"C3": 1, "C4": 2, "C5": 3, "C2xC2": 1}
    with _Criterion("criterion-1 max-delta-star-formula", 60):
        for spec, value in expected.items():
            g = Group.parse(spec)
            report = delta_star(g, 3 * g.order())
            assert report.max_value == value, (spec, report.values)
            assert max_delta_star_formula(g) == value


def test_criterion_2_model_and_localizations():
    specs = ["C2", "C3", "C2xC2", "C5"]
    with _Criterion("criterion-2 model-localizations", 1):
        model = dedekind_model([Group.parse(s) for s in specs])
        assert model.class_group.order() == 120
        assert model.class_group == Group(0, (2, 2, 30))
        for i, spec in enumerate(specs):
            inverted = [
                gen
                for j, comp in enumerate(model.component_generators)
                if j != i
                for gen in comp
            ]
            localized, _ = localize(model, classes=inverted)
            assert localized.class_group == Group.parse(spec), spec


def test_criterion_3_transfer_identity():
    with _Criterion("criterion-3 transfer-identity", 120):
        checked = 0
        for spec in ["C2", "C3", "C2xC2"]:
            model = dedekind_model([Group.parse(spec)])
            support = Support(model.class_group, [e.element for e in model.prime_classes])
            atom_set = atoms(support)
            for vec in zero_sum_vectors(support, 8):
                element = MonoidElement.from_class_vector(model, vec)
                lengths = monoid_length_set(element)
                report = length_set(transfer(element), atom_set)
                assert lengths == report.length_set, vec
                checked += 1
        assert checked > 200


def test_criterion_4_realization_tasks():
    tasks = [(2, 3), (2, 4), (2, 3, 4), (2, 5)]
    with _Criterion("criterion-4 realization", 300):
        for lengths in tasks:
            task = RealizationTask(lengths, (1,) * len(lengths))
            witness = witness_search(task)
            assert witness is not None, lengths
            # independent recount through the definitional enumerators
            slow = naive_factorizations(witness.sequence, naive_atoms(witness.support))
            counts = {}
            for indices in slow:
                counts[len(indices)] = counts.get(len(indices), 0) + 1
            assert tuple(sorted(counts)) == lengths
            assert all(counts[m] >= 1 for m in lengths)


def test_criterion_5_aamp_survey():
    cases = [("C3", 9), ("C4", 12), ("C2xC2", 12)]
    with _Criterion("criterion-5 aamp-survey", 300):
        for spec, cap in cases:
            report = aamp_survey(Group.parse(spec), cap)
            assert report.failures == (), spec


def test_criterion_6_half_factoriality():
    with _Criterion("criterion-6 half-factoriality", 10):
        # independent basis of C2 + C3 inside its canonical form C6
        c6 = Group.parse("C6")
        basis = Support(c6, [c6.element([], [3]), c6.element([], [2])])
        assert half_factorial_check(basis, 20).half_factorial_at_cap

        g = Group.parse("C2xC2xC4")
        basis = Support(
            g,
            [g.element([], [1, 0, 0]), g.element([], [0, 1, 0]), g.element([], [0, 0, 1])],
        )
        assert half_factorial_check(basis, 20).half_factorial_at_cap

        c3 = Group.parse("C3")
        support = Support(c3, [c3.element([], [1]), c3.element([], [2])])
        report = half_factorial_check(support, 9)
        assert not report.half_factorial_at_cap
        sequence, lengths = report.counterexample
        assert sequence.literal(short=True) == "[1^3,2^3]"
        assert lengths == (2, 3)


def test_criterion_7_length_set_conventions():
    with _Criterion("criterion-7 length-set-conventions", 60):
        specs = ["trivial", "C2", "C3", "C4", "C2xC2", "C5", "C6"]
        checked = 0
        for spec in specs:
            g = Group.parse(spec)
            support = Support(g, list(g.elements()))
            atom_set = atoms(support)
            for vec in zero_sum_vectors(support, 8):
                s = Sequence(support, vec)
                report = length_set(s, atom_set)
                assert (0 in report.length_set) == s.is_empty
                assert (1 in report.length_set) == (s in atom_set)
                checked += 1
        assert checked > 500


def test_criterion_8_oracle_equivalence():
    rng = random.Random(2024)
    specs = ["C2", "C3", "C4", "C2xC2", "C5", "C6"]
    with _Criterion("criterion-8 oracle-equivalence", 300):
        for _ in range(200):
            g = Group.parse(rng.choice(specs))
            elements = list(g.elements())
            members = rng.sample(elements, rng.randint(1, len(elements)))
            support = Support(g, members)
            fast = atoms(support)
            slow = naive_atoms(support)
            assert [a.multiplicities for a in fast] == [a.multiplicities for a in slow]

            candidates = zero_sum_vectors(support, 8)
            vec = candidates[rng.randrange(len(candidates))]
            target = Sequence(support, vec)
            fast_facs = sorted(f.atom_indices for f in factorizations(target, fast))
            slow_facs = naive_factorizations(target, list(fast.atoms))
            assert fast_facs == slow_facs


def test_criterion_9_snf_contract():
    rng = random.Random(99)
    with _Criterion("criterion-9 snf-contract", 10):
        for _ in range(500):
            rows = rng.randint(1, 5)
            cols = rng.randint(1, 5)
            m = IntMatrix([[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)])
            u, d, v = smith_normal_form(m)
            assert (u @ m @ v) == d
            assert u.det() in (1, -1)
            assert v.det() in (1, -1)
            diag = d.diagonal()
            for i in range(d.nrows):
                for j in range(d.ncols):
                    if i != j:
                        assert d.rows[i][j] == 0
            for a, b in zip(diag, diag[1:]):
                assert a >= 0 and b >= 0
                assert (b % a == 0) if a else (b == 0)
            if rows == cols:
                product = 1
                for e in diag:
                    product *= e
                assert abs(m.det()) == product
