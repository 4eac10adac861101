"""Factorization lengths and their structure: sets of lengths, distance
sets, minimal distances over supports, half-factoriality, and the
almost arithmetic multiprogression (AAMP) decision procedure.

Distance-type invariants of a whole monoid are unions over infinitely many
elements, so they are always computed under an explicit element cap and the
cap is recorded in every report; results are cap-bounded evidence, never a
claim of exhaustiveness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .abelian import Group
from .errors import (
    GuardError,
    InvalidInputError,
    OutOfHypothesisError,
    UnsupportedError,
)
from .zerosum import AtomSet, Sequence, Support, atoms

DEFAULT_CAP_FACTOR = 3
DEFAULT_SUBSET_GUARD = 8


@dataclass(frozen=True)
class Factorization:
    """A multiset of atoms concatenating to a target, held as a sorted tuple
    of indices into an AtomSet."""

    atom_set: AtomSet
    atom_indices: tuple[int, ...]
    target: Sequence

    @property
    def length(self) -> int:
        return len(self.atom_indices)

    def atoms(self) -> tuple[Sequence, ...]:
        return tuple(self.atom_set.atoms[i] for i in self.atom_indices)

    def concatenation(self) -> Sequence:
        out = Sequence(self.target.support, [0] * len(self.target.support))
        for a in self.atoms():
            out = out.concat(a)
        return out

    def is_valid(self) -> bool:
        return self.concatenation() == self.target


@dataclass(frozen=True)
class LengthReport:
    """Lengths of the factorizations of one sequence, with distances and
    per-length counts of distinct (unordered) factorizations."""

    target: Sequence
    length_set: tuple[int, ...]
    delta_set: tuple[int, ...]
    factorization_counts: dict[int, int]
    complete: bool
    factorizations: tuple[Factorization, ...] | None = None

    def to_json_dict(self) -> dict:
        return {
            "length_set": list(self.length_set),
            "delta_set": list(self.delta_set),
            "factorization_counts": {str(k): v for k, v in sorted(self.factorization_counts.items())},
            "complete": self.complete,
            "sequence": self.target.literal(short=True),
        }


def _delta_of(lengths) -> tuple[int, ...]:
    ordered = sorted(lengths)
    return tuple(b - a for a, b in zip(ordered, ordered[1:]))


def factorizations(
    s: Sequence, atom_set: AtomSet, allow_incomplete: bool = False
) -> list[Factorization]:
    """All distinct unordered factorizations of s into atoms.

    Atoms are chosen in nondecreasing index order, which enumerates each
    multiset of atoms exactly once.  The empty sequence has exactly the
    empty factorization.
    """
    if s.support != atom_set.support:
        raise InvalidInputError("sequence and atom set live over different supports")
    if not s.is_zero_sum():
        raise InvalidInputError("only zero-sum sequences factor into atoms")
    if not atom_set.complete and not allow_incomplete:
        raise InvalidInputError(
            "atom set is incomplete; pass allow_incomplete to accept a lower bound"
        )
    atom_vecs = [a.multiplicities for a in atom_set.atoms]
    sizes = [sum(v) for v in atom_vecs]
    out = []

    def rec(remaining, total, start, chosen):
        if total == 0:
            out.append(Factorization(atom_set, tuple(chosen), s))
            return
        for i in range(start, len(atom_vecs)):
            if sizes[i] > total:
                break  # atoms are sorted by length
            av = atom_vecs[i]
            if all(x <= y for x, y in zip(av, remaining)):
                chosen.append(i)
                rec(tuple(y - x for x, y in zip(av, remaining)), total - sizes[i], i, chosen)
                chosen.pop()

    rec(s.multiplicities, s.length, 0, [])
    return out


def length_set(
    s: Sequence,
    atom_set: AtomSet | None = None,
    cap: int | None = None,
    include_factorizations: bool = False,
    allow_incomplete: bool = False,
) -> LengthReport:
    """Set of lengths of s, computed by full factorization enumeration.

    {0} appears exactly for the empty sequence and 1 appears exactly when s
    is itself an atom.
    """
    if atom_set is None:
        atom_set = atoms(s.support, cap)
    facs = factorizations(s, atom_set, allow_incomplete=allow_incomplete)
    counts: dict[int, int] = {}
    for f in facs:
        counts[f.length] = counts.get(f.length, 0) + 1
    lengths = tuple(sorted(counts))
    return LengthReport(
        target=s,
        length_set=lengths,
        delta_set=_delta_of(lengths),
        factorization_counts=counts,
        complete=atom_set.complete,
        factorizations=tuple(facs) if include_factorizations else None,
    )


def _subgroup_closure(base: frozenset, extra) -> frozenset:
    # subgroup generated by a subgroup plus one element of a finite group
    out = set(base)
    shift = extra
    while True:
        coset = {x + shift for x in base}
        if coset <= out:
            return frozenset(out)
        out |= coset
        shift = shift + extra


def zero_sum_vectors(support: Support, cap: int) -> list[tuple[int, ...]]:
    """Multiplicity vectors of every zero-sum sequence of length <= cap."""
    if not support.group.is_finite:
        raise UnsupportedError("bulk zero-sum enumeration needs a finite group")
    elems = support.elements
    n = len(elems)
    zero = support.group.zero()
    reachable = [None] * (n + 1)
    reachable[n] = frozenset([zero])
    for i in range(n - 1, -1, -1):
        reachable[i] = _subgroup_closure(reachable[i + 1], elems[i])
    out = []
    mults = [0] * n

    def rec(i, total, sig):
        if i == n:
            if sig == zero:
                out.append(tuple(mults))
            return
        if sig not in reachable[i]:
            return  # -sig cannot be reached with the remaining support
        e = elems[i]
        val = sig
        c = 0
        while True:
            mults[i] = c
            rec(i + 1, total + c, val)
            c += 1
            if total + c > cap:
                break
            val = val + e
        mults[i] = 0

    rec(0, 0, zero)
    return out


class _BitTable:
    """Length sets of every zero-sum sequence up to a cap, bit-packed.

    A multiplicity vector is one integer (fixed-width fields, first support
    coordinate in the highest field, so integer order is graded-lex within
    a total).  A length set is a bitmask, so appending one atom to every
    factorization is a single left shift.  Starting from the empty sequence
    and repeatedly adding atoms reaches exactly the zero-sum vectors up to
    the cap, because a complete atom set factors every zero-sum sequence.
    """

    __slots__ = ("support", "cap", "kbits", "codes", "masks", "_shifts")

    def __init__(self, support, cap, kbits, codes, masks, shifts):
        self.support = support
        self.cap = cap
        self.kbits = kbits
        self.codes = codes
        self.masks = masks
        self._shifts = shifts

    def decode(self, code: int) -> tuple[int, ...]:
        field = (1 << self.kbits) - 1
        return tuple((code >> s) & field for s in self._shifts)

    def encode(self, vec) -> int:
        return sum(v << s for v, s in zip(vec, self._shifts))

    @staticmethod
    def lengths(mask: int) -> tuple[int, ...]:
        out = []
        k = 0
        while mask:
            if mask & 1:
                out.append(k)
            mask >>= 1
            k += 1
        return tuple(out)

    def items_graded(self):
        """(vector code, length mask) pairs by total length, then lex."""
        order = sorted(self.codes, key=lambda c: (sum(self.decode(c)), c))
        for code in order:
            yield code, self.masks[code]


def _bit_table(support: Support, atom_set: AtomSet, cap: int) -> _BitTable:
    if support != atom_set.support:
        raise InvalidInputError("support and atom set do not match")
    if not atom_set.complete:
        raise InvalidInputError("the bulk length table needs a complete atom set")
    if cap < 0:
        raise InvalidInputError("cap must be nonnegative")
    n = len(support.elements)
    kbits = max((2 * cap + 1).bit_length(), 1)
    shifts = tuple((n - 1 - i) * kbits for i in range(n))
    high = 1 << (kbits - 1)
    guard = sum((high - 1 - cap) << s for s in shifts)
    highbits = sum(high << s for s in shifts)

    def encode(vec):
        return sum(v << s for v, s in zip(vec, shifts))

    steps = sorted((sum(a.multiplicities), encode(a.multiplicities)) for a in atom_set.atoms)
    masks = {0: 1}
    buckets: list[list[int]] = [[] for _ in range(cap + 1)]
    buckets[0].append(0)
    get = masks.get
    for total in range(cap + 1):
        for code in buckets[total]:
            shifted = masks[code] << 1
            for size, step in steps:
                new_total = total + size
                if new_total > cap:
                    break
                moved = code + step
                if (moved + guard) & highbits:
                    continue  # some coordinate left the [0, cap] window
                prev = get(moved)
                if prev is None:
                    masks[moved] = shifted
                    buckets[new_total].append(moved)
                else:
                    masks[moved] = prev | shifted
    return _BitTable(support, cap, kbits, sorted(masks), masks, shifts)


def length_table(
    support: Support, atom_set: AtomSet, cap: int
) -> dict[tuple[int, ...], frozenset[int]]:
    """Length sets of every zero-sum sequence of length <= cap over the
    support.  Needs a complete atom set; see _BitTable for the engine."""
    table = _bit_table(support, atom_set, cap)
    return {table.decode(c): frozenset(table.lengths(m)) for c, m in table.masks.items()}


def _default_cap(group: Group, element_cap: int | None) -> int:
    if element_cap is not None:
        if element_cap < 0:
            raise InvalidInputError("element cap must be nonnegative")
        return element_cap
    if not group.is_finite:
        raise UnsupportedError("an explicit element cap is needed over an infinite group")
    return DEFAULT_CAP_FACTOR * group.order()


@dataclass(frozen=True)
class DeltaReport:
    """Distances seen among elements of length <= element_cap.

    The true distance set of the monoid is a union over infinitely many
    elements; this is a cap-bounded under-approximation and element_cap
    records the cap it was computed at.
    """

    support: Support
    distances: tuple[int, ...]
    element_cap: int

    @property
    def min_distance(self) -> int | None:
        return self.distances[0] if self.distances else None

    def to_json_dict(self) -> dict:
        return {
            "distances": list(self.distances),
            "min_delta": self.min_distance,
            "element_cap": self.element_cap,
            "cap_bounded": True,
        }


def delta_of_monoid(support: Support, element_cap: int | None = None) -> DeltaReport:
    """Union of the distance sets of all zero-sum sequences up to the cap."""
    cap = _default_cap(support.group, element_cap)
    atom_set = atoms(support)
    table = _bit_table(support, atom_set, cap)
    seen: set[int] = set()
    per_mask: dict[int, tuple[int, ...]] = {}
    for mask in table.masks.values():
        if mask not in per_mask:
            per_mask[mask] = _delta_of(table.lengths(mask))
        seen.update(per_mask[mask])
    return DeltaReport(support=support, distances=tuple(sorted(seen)), element_cap=cap)


def min_delta(support: Support, element_cap: int | None = None) -> int | None:
    """Least distance at the cap, or None when no distances appear."""
    return delta_of_monoid(support, element_cap).min_distance


@dataclass(frozen=True)
class DeltaStarReport:
    """Minimal distances over all subsets of a finite group, with the
    per-subset audit trail."""

    group: Group
    values: tuple[int, ...]
    element_cap: int
    per_subset: tuple[tuple[tuple, int | None, tuple[int, ...]], ...] = field(repr=False)

    @property
    def max_value(self) -> int | None:
        return self.values[-1] if self.values else None

    def to_json_dict(self) -> dict:
        return {
            "values": list(self.values),
            "max": self.max_value,
            "element_cap": self.element_cap,
            "subsets": [
                {
                    "support": [e.literal() for e in subset],
                    "min_delta": md,
                    "distances": list(dist),
                }
                for subset, md, dist in self.per_subset
            ],
        }


def delta_star(
    group: Group,
    element_cap: int | None = None,
    guard: int = DEFAULT_SUBSET_GUARD,
    force: bool = False,
) -> DeltaStarReport:
    """Sweep every nonempty subset of a finite group and collect the minimal
    distance of each subset whose distance set is nonempty at the cap."""
    if not group.is_finite:
        raise UnsupportedError("the subset sweep needs a finite group")
    order = group.order()
    if order > guard and not force:
        raise GuardError(
            f"group order {order} exceeds the subset-sweep guard {guard}; "
            "pass force=True (CLI: --force) to override"
        )
    cap = _default_cap(group, element_cap)
    elems = list(group.elements())
    values: set[int] = set()
    per_subset = []
    for size in range(1, len(elems) + 1):
        for combo in combinations(elems, size):
            support = Support(group, combo)
            report = delta_of_monoid(support, cap)
            per_subset.append((tuple(combo), report.min_distance, report.distances))
            if report.min_distance is not None:
                values.add(report.min_distance)
    return DeltaStarReport(
        group=group,
        values=tuple(sorted(values)),
        element_cap=cap,
        per_subset=tuple(per_subset),
    )


def max_delta_star_formula(group: Group) -> int:
    """Closed form max(rank - 1, exponent - 2) for a finite group of order >= 3."""
    if not group.is_finite or group.order() < 3:
        raise OutOfHypothesisError(
            "the closed form applies to finite groups of order at least 3"
        )
    return max(group.rank() - 1, group.exponent() - 2)


@dataclass(frozen=True)
class AampWitness:
    """Decomposition of a finite set as an almost arithmetic multiprogression:
    a shift y, a period pattern d_set + d*Z, a central progression part
    l_star, and initial/final parts l_prime and l_dprime within the bound."""

    d: int
    bound: int
    y: int
    d_set: tuple[int, ...]
    l_prime: tuple[int, ...]
    l_star: tuple[int, ...]
    l_dprime: tuple[int, ...]

    def is_valid_for(self, target) -> bool:
        L = set(int(x) for x in target)
        d, bound, y = self.d, self.bound, self.y
        dset = set(self.d_set)
        if d < 1 or bound < 0:
            return False
        if not ({0, d} <= dset and all(0 <= x <= d for x in dset)):
            return False
        star = set(self.l_star)
        if not star or min(star) != 0:
            return False
        top = max(star)
        pattern_window = {z for z in range(0, top + 1) if any((z - e) % d == 0 for e in dset)}
        if star != pattern_window:
            return False
        prime = set(self.l_prime)
        dprime = set(self.l_dprime)
        if prime and not (-bound <= min(prime) and max(prime) <= -1):
            return False
        if dprime and not (top + 1 <= min(dprime) and max(dprime) <= top + bound):
            return False
        if {y + x for x in prime | star | dprime} != L:
            return False
        # containment in the full periodic pattern
        return all(any((x - y - e) % d == 0 for e in dset) for x in L)

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "bound": self.bound,
            "y": self.y,
            "d_set": list(self.d_set),
            "l_prime": list(self.l_prime),
            "l_star": list(self.l_star),
            "l_dprime": list(self.l_dprime),
        }


def aamp_check(L, d: int, bound: int) -> AampWitness | None:
    """Search for an AAMP decomposition of L with the given difference and
    bound; returns a validated witness or None.

    The search is complete: 0 lies in the central part, so the shift y is an
    element of L with min L <= y <= min L + bound, and for each shift every
    admissible period set and every central window is tried.
    """
    if d < 1:
        raise InvalidInputError("difference must be a positive integer")
    if bound < 0:
        raise InvalidInputError("bound must be nonnegative")
    values = sorted(set(int(x) for x in L))
    if not values:
        raise InvalidInputError("the set must be nonempty")
    lmin = values[0]

    interior = list(range(1, d))
    d_choices = []
    for size in range(0, len(interior) + 1):
        for combo in combinations(interior, size):
            d_choices.append(tuple(sorted((0,) + combo + (d,))))

    for y in [x for x in values if lmin <= x <= lmin + bound]:
        shifted = [x - y for x in values]
        if shifted[0] < -bound:
            continue
        residues = {x % d for x in shifted}
        for dset in d_choices:
            dres = {e % d for e in dset}
            if not residues <= dres:
                continue  # some member escapes the periodic pattern
            for top in sorted((x for x in shifted if x >= 0), reverse=True):
                window = [z for z in range(0, top + 1) if z % d in dres]
                if any(z not in set(shifted) for z in window):
                    continue
                dprime = [x for x in shifted if x > top]
                if dprime and max(dprime) > top + bound:
                    continue
                witness = AampWitness(
                    d=d,
                    bound=bound,
                    y=y,
                    d_set=dset,
                    l_prime=tuple(x for x in shifted if x < 0),
                    l_star=tuple(window),
                    l_dprime=tuple(dprime),
                )
                assert witness.is_valid_for(values)
                return witness
    return None


@dataclass(frozen=True)
class HalfFactorialReport:
    """Outcome of the every-length-set-is-a-singleton check up to a cap.

    A False verdict is a definitive refutation carrying the witness; a True
    verdict is evidence bounded by element_cap only.
    """

    support: Support
    half_factorial_at_cap: bool
    element_cap: int
    counterexample: tuple[Sequence, tuple[int, ...]] | None = None

    def to_json_dict(self) -> dict:
        ce = None
        if self.counterexample is not None:
            seq, lengths = self.counterexample
            ce = {"sequence": seq.literal(short=True), "length_set": list(lengths)}
        return {
            "half_factorial_at_cap": self.half_factorial_at_cap,
            "element_cap": self.element_cap,
            "counterexample": ce,
        }


def half_factorial_check(
    support: Support, element_cap: int | None = None
) -> HalfFactorialReport:
    """Check that every zero-sum sequence up to the cap has a single length."""
    cap = _default_cap(support.group, element_cap)
    atom_set = atoms(support)
    table = _bit_table(support, atom_set, cap)
    witness = None
    for code, mask in table.masks.items():
        if mask & (mask - 1):  # more than one factorization length
            vec = table.decode(code)
            key = (sum(vec), code)
            if witness is None or key < witness[0]:
                witness = (key, vec, table.lengths(mask))
    if witness is not None:
        _, vec, lengths = witness
        return HalfFactorialReport(
            support=support,
            half_factorial_at_cap=False,
            element_cap=cap,
            counterexample=(Sequence(support, vec), lengths),
        )
    return HalfFactorialReport(support=support, half_factorial_at_cap=True, element_cap=cap)
