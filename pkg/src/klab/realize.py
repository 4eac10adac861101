"""Search harnesses over the zero-sum calculus.

witness_search hunts, by bounded exhaustive search, for a sequence whose
set of lengths is exactly a prescribed set with at least prescribed numbers
of factorizations per length.  aamp_survey computes the length set of every
zero-sum sequence over a finite group up to a cap and reports the smallest
AAMP bound that covers the whole corpus.  Absence of a witness is never a
nonexistence claim, only the outcome of the search within its caps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .abelian import Group
from .errors import (
    GuardError,
    InvalidInputError,
    OutOfHypothesisError,
    SurveyFailureError,
    UnsupportedError,
)
from .lengths import (
    DEFAULT_SUBSET_GUARD,
    LengthReport,
    _bit_table,
    _default_cap,
    aamp_check,
    delta_star,
    length_set,
)
from .naive import naive_atoms, naive_factorizations
from .zerosum import Sequence, Support, atoms, davenport

DEFAULT_FAMILY_SPECS = (
    "C2",
    "C3",
    "C4",
    "C5",
    "C6",
    "C7",
    "C8",
    "C2xC2",
    "C2xC2xC2",
    "C3xC3",
    "C2xC4",
    "C2xC6",
)


def default_family() -> tuple[Group, ...]:
    return tuple(Group.parse(s) for s in DEFAULT_FAMILY_SPECS)


@dataclass(frozen=True)
class RealizationTask:
    """Target length set {m1 < ... < mk} with multiplicities (n1, ..., nk),
    searched over a family of candidate groups under explicit caps."""

    target_lengths: tuple[int, ...]
    multiplicities: tuple[int, ...]
    group_family: tuple[Group, ...] = field(default_factory=default_family)
    support_cap: int | None = None
    length_cap: int | None = None

    def __post_init__(self):
        lengths = tuple(int(m) for m in self.target_lengths)
        mults = tuple(int(n) for n in self.multiplicities)
        if not lengths:
            raise InvalidInputError("the target length set must be nonempty")
        if sorted(set(lengths)) != list(lengths):
            raise InvalidInputError("target lengths must be strictly increasing")
        if lengths[0] < 2:
            raise OutOfHypothesisError("lengths must be >= 2")
        if len(mults) != len(lengths):
            raise InvalidInputError("one multiplicity per target length is needed")
        if any(n < 1 for n in mults):
            raise InvalidInputError("multiplicities must be >= 1")
        object.__setattr__(self, "target_lengths", lengths)
        object.__setattr__(self, "multiplicities", mults)
        object.__setattr__(self, "group_family", tuple(self.group_family))


@dataclass(frozen=True)
class RealizationWitness:
    """A validated hit: the sequence's length set equals the target and each
    length carries at least the requested number of factorizations."""

    group: Group
    support: Support
    sequence: Sequence
    report: LengthReport

    def to_json_dict(self) -> dict:
        return {
            "group": self.group.spec_string(),
            "support": [e.literal() for e in self.support.elements],
            "sequence": self.sequence.literal(short=True),
            "length_set": list(self.report.length_set),
            "factorization_counts": {
                str(k): v for k, v in sorted(self.report.factorization_counts.items())
            },
        }


def _counts_suffice(report: LengthReport, task: RealizationTask) -> bool:
    return all(
        report.factorization_counts.get(m, 0) >= n
        for m, n in zip(task.target_lengths, task.multiplicities)
    )


def _revalidate(witness: RealizationWitness, task: RealizationTask) -> None:
    # independent recount through the unpruned enumerators
    slow_atoms = naive_atoms(witness.support)
    facs = naive_factorizations(witness.sequence, slow_atoms)
    counts: dict[int, int] = {}
    for indices in facs:
        counts[len(indices)] = counts.get(len(indices), 0) + 1
    assert tuple(sorted(counts)) == task.target_lengths, "witness failed the recount"
    assert all(
        counts.get(m, 0) >= n for m, n in zip(task.target_lengths, task.multiplicities)
    ), "witness multiplicities failed the recount"


def witness_search(task: RealizationTask) -> RealizationWitness | None:
    """First validated witness in the canonical search order, or None.

    Order: groups in family order; supports by size then lexicographically;
    candidate sequences by length then lexicographically.  Any witness has a
    factorization into m1 atoms, so its length is at most m1 times the
    maximal atom length, which caps the per-group search exactly.

    Supports range over subsets avoiding the zero class: its only atom is
    the single zero, which shifts every length uniformly, and the canonical
    witnesses live over the nonzero classes.  Absence therefore remains a
    statement about this search space and its caps, never a nonexistence
    claim.
    """
    targets = task.target_lengths
    for group in task.group_family:
        longest_atom = davenport(group)
        cap = targets[0] * longest_atom
        if task.length_cap is not None:
            cap = min(cap, task.length_cap)
        if targets[-1] > cap:
            continue  # not even one atom per factor would fit
        elems = [e for e in group.elements() if not e.is_zero]
        max_size = len(elems) if task.support_cap is None else min(len(elems), task.support_cap)
        target_mask = 0
        for m in targets:
            target_mask |= 1 << m
        for size in range(1, max_size + 1):
            for combo in combinations(elems, size):
                support = Support(group, combo)
                atom_set = atoms(support)
                table = _bit_table(support, atom_set, cap)
                candidates = [
                    table.decode(code)
                    for code, mask in table.masks.items()
                    if mask == target_mask
                ]
                candidates.sort(key=lambda v: (sum(v), v))
                for vec in candidates:
                    seq = Sequence(support, vec)
                    report = length_set(seq, atom_set)
                    assert report.length_set == targets
                    if _counts_suffice(report, task):
                        witness = RealizationWitness(group, support, seq, report)
                        _revalidate(witness, task)
                        return witness
    return None


@dataclass(frozen=True)
class SurveyReport:
    """AAMP structure of every length set over a group up to a cap.

    empirical_bound is the largest bound needed so that each length set is
    an AAMP with some difference from the group's minimal distances (1 when
    that set is empty); it says nothing beyond the surveyed corpus.
    """

    group: Group
    element_cap: int
    delta_star_values: tuple[int, ...]
    differences_used: tuple[int, ...]
    sequences_checked: int
    distinct_length_sets: int
    empirical_bound: int
    worst: tuple[str, tuple[int, ...], int] | None
    failures: tuple = ()

    def to_json_dict(self) -> dict:
        worst = None
        if self.worst is not None:
            worst = {
                "sequence": self.worst[0],
                "length_set": list(self.worst[1]),
                "bound": self.worst[2],
            }
        return {
            "group": self.group.spec_string(),
            "element_cap": self.element_cap,
            "delta_star": list(self.delta_star_values),
            "differences_used": list(self.differences_used),
            "sequences_checked": self.sequences_checked,
            "distinct_length_sets": self.distinct_length_sets,
            "empirical_bound": self.empirical_bound,
            "worst": worst,
            "failures": list(self.failures),
        }


def aamp_survey(
    group: Group,
    element_cap: int | None = None,
    guard: int = DEFAULT_SUBSET_GUARD,
    force: bool = False,
) -> SurveyReport:
    """Check that every length set over the group (up to the cap) is an AAMP
    with a difference from the minimal-distance sweep, and report the least
    uniform bound.  A failure would be an implementation bug and aborts with
    the offending sequence serialized."""
    if not group.is_finite:
        raise UnsupportedError("the survey needs a finite group")
    if group.order() > guard and not force:
        raise GuardError(
            f"group order {group.order()} exceeds the survey guard {guard}; "
            "pass force=True (CLI: --force) to override"
        )
    cap = _default_cap(group, element_cap)
    star = delta_star(group, cap, guard=guard, force=force)
    differences = star.values if star.values else (1,)
    support = Support(group, list(group.elements()))
    atom_set = atoms(support)
    table = _bit_table(support, atom_set, cap)

    bound_cache: dict[int, int | None] = {}

    def minimal_bound(mask: int) -> int | None:
        if mask in bound_cache:
            return bound_cache[mask]
        lengths = table.lengths(mask)
        found = None
        for b in range(lengths[-1] - lengths[0] + 1):
            if any(aamp_check(lengths, d, b) is not None for d in differences):
                found = b
                break
        bound_cache[mask] = found
        return found

    checked = 0
    best = 0
    worst = None
    for code, mask in table.items_graded():
        checked += 1
        b = minimal_bound(mask)
        if b is None:
            seq = Sequence(support, table.decode(code))
            raise SurveyFailureError(
                "no AAMP decomposition found; this is a bug. "
                f"sequence={seq.literal(short=True)} lengths={list(table.lengths(mask))} "
                f"differences={list(differences)}"
            )
        if worst is None or b > best:
            best = b
            worst = (
                Sequence(support, table.decode(code)).literal(short=True),
                table.lengths(mask),
                b,
            )
    return SurveyReport(
        group=group,
        element_cap=cap,
        delta_star_values=star.values,
        differences_used=differences,
        sequences_checked=checked,
        distinct_length_sets=len(bound_cache),
        empirical_bound=best,
        worst=worst,
        failures=(),
    )
