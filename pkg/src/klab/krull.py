"""Class-group models of Krull/Dedekind arithmetic.

A presentation is a class group together with a count of primes per class
(a natural number or omega, meaning infinitely many).  Localization inverts
primes: the localized class group is the quotient by the classes of the
inverted primes, and the surviving primes land in their image classes.
Replacing each prime of an element by its class is a transfer to the
zero-sum monoid over the populated classes and preserves sets of lengths;
that identity is recomputed through both routes and asserted, not assumed.
"""

from __future__ import annotations

from itertools import product

from .abelian import (
    Group,
    GroupElement,
    Projection,
    direct_sum_with_embeddings,
    parse_element,
    quotient,
)
from .errors import (
    InvalidElementError,
    InvalidLocalizationError,
    InvalidSpecError,
    NeedsBoxError,
)
from .lengths import length_set
from .zerosum import Sequence, Support, atoms, has_proper_zero_subsequence


class _Omega:
    """Infinite prime count; a single shared instance named OMEGA."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "omega"

    def __deepcopy__(self, memo):
        return self

    def __reduce__(self):
        return (_Omega, ())


OMEGA = _Omega()


def _is_count(value) -> bool:
    return value is OMEGA or (isinstance(value, int) and not isinstance(value, bool) and value >= 1)


class PrimeClass:
    """One class of the class group with its prime count and, for finite
    counts, stable labels for the individual primes."""

    __slots__ = ("element", "count", "labels")

    def __init__(self, element: GroupElement, count, labels=()):
        if not _is_count(count):
            raise InvalidSpecError("a prime count is a positive integer or OMEGA")
        labels = tuple(str(x) for x in labels)
        if count is OMEGA:
            if labels:
                raise InvalidSpecError("omega classes cannot carry prime labels")
        elif labels and len(labels) != count:
            raise InvalidSpecError("label list does not match the prime count")
        self.element = element
        self.count = count
        self.labels = labels

    def __eq__(self, other):
        if not isinstance(other, PrimeClass):
            return NotImplemented
        return (
            self.element == other.element
            and self.count == other.count
            and self.labels == other.labels
        )

    def __hash__(self):
        count_key = "omega" if self.count is OMEGA else self.count
        return hash((self.element, count_key, self.labels))

    def __repr__(self):
        return f"PrimeClass({self.element.literal()}, {self.count!r})"


class KrullPresentation:
    """A class group plus the distribution of primes over its classes.

    The populated classes must generate the class group (checked by the
    quotient being trivial); individual classes may be unpopulated, which
    the fully_populated flag records for every output.
    """

    __slots__ = ("class_group", "prime_classes", "component_generators")

    def __init__(self, class_group: Group, prime_classes, component_generators=None):
        entries = []
        for entry in prime_classes:
            if not isinstance(entry, PrimeClass):
                entry = PrimeClass(*entry)
            if entry.element.group != class_group:
                raise InvalidSpecError("prime class element is not in the class group")
            entries.append(entry)
        entries.sort(key=lambda e: e.element.key)
        seen = set()
        for e in entries:
            if e.element in seen:
                raise InvalidSpecError("prime classes must be distinct")
            seen.add(e.element)
        q, _ = quotient(class_group, [e.element for e in entries])
        if not q.is_trivial:
            raise InvalidSpecError("the populated classes do not generate the class group")
        # default labels for finite counts, unique across the presentation
        labelled = []
        for i, e in enumerate(entries):
            if e.count is not OMEGA and not e.labels:
                e = PrimeClass(e.element, e.count, tuple(f"c{i}p{j}" for j in range(e.count)))
            labelled.append(e)
        all_labels = [lbl for e in labelled for lbl in e.labels]
        if len(all_labels) != len(set(all_labels)):
            raise InvalidSpecError("prime labels must be unique across the presentation")
        self.class_group = class_group
        self.prime_classes = tuple(labelled)
        self.component_generators = component_generators

    @property
    def fully_populated(self) -> bool:
        if not self.class_group.is_finite:
            return False
        return len(self.prime_classes) == self.class_group.order()

    def class_index(self, element: GroupElement) -> int:
        for i, e in enumerate(self.prime_classes):
            if e.element == element:
                return i
        raise InvalidLocalizationError(
            f"no populated class {element.literal()} in the presentation"
        )

    def find_label(self, label: str) -> tuple[int, str]:
        for i, e in enumerate(self.prime_classes):
            if label in e.labels:
                return i, label
        raise InvalidLocalizationError(f"no prime labelled {label!r} in the presentation")

    def to_json_dict(self) -> dict:
        classes = []
        for e in self.prime_classes:
            item = {
                "element": e.element.literal(),
                "count": "omega" if e.count is OMEGA else e.count,
            }
            if e.labels:
                item["labels"] = list(e.labels)
            classes.append(item)
        gens = None
        if self.component_generators is not None:
            gens = [[g.literal() for g in comp] for comp in self.component_generators]
        return {
            "schema": "presentation/v1",
            "class_group": self.class_group.spec_string(),
            "classes": classes,
            "fully_populated": self.fully_populated,
            "component_generators": gens,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> KrullPresentation:
        group = Group.parse(data["class_group"])
        entries = []
        for item in data["classes"]:
            count = item["count"]
            count = OMEGA if count == "omega" else count
            entries.append(
                PrimeClass(parse_element(item["element"], group), count, item.get("labels", ()))
            )
        gens = None
        if data.get("component_generators"):
            gens = tuple(
                tuple(parse_element(t, group) for t in comp)
                for comp in data["component_generators"]
            )
        return cls(group, entries, gens)

    def __eq__(self, other):
        if not isinstance(other, KrullPresentation):
            return NotImplemented
        return (
            self.class_group == other.class_group
            and self.prime_classes == other.prime_classes
        )

    def __repr__(self):
        return (
            f"KrullPresentation({self.class_group.spec_string()}, "
            f"{len(self.prime_classes)} populated classes)"
        )


def dedekind_model(groups, box: int | None = None) -> KrullPresentation:
    """Model of a Dedekind domain with class group the direct sum of the
    given groups and infinitely many primes in every class.

    For class groups with free rank the classes cannot all be listed; they
    are enumerated with free coordinates inside [-box, box], so a box is
    required (and must be at least 1 for the classes to generate).
    """
    groups = list(groups)
    if not groups:
        raise InvalidSpecError("the model needs at least one summand")
    total, embeddings = direct_sum_with_embeddings(groups)
    if total.free_rank and box is None:
        raise NeedsBoxError(
            "class groups with free rank need a coordinate box to enumerate classes"
        )
    if total.free_rank:
        span = range(-box, box + 1)
        classes = [
            total.element(free, tors)
            for free in product(span, repeat=total.free_rank)
            for tors in product(*[range(d) for d in total.invariant_factors])
        ]
    else:
        classes = list(total.elements())
    return KrullPresentation(
        total,
        [PrimeClass(c, OMEGA) for c in classes],
        component_generators=embeddings,
    )


def localize(
    presentation: KrullPresentation, classes=(), primes=()
) -> tuple[KrullPresentation, Projection]:
    """Invert primes and return the localized presentation with the
    projection of the old class group onto the new one.

    Inverting a class (by element or index) removes all its primes, the
    divisor-closed choice; inverting a labelled prime removes only that
    prime, which is possible for finite counts only.  Either way the class
    of anything inverted becomes trivial in the localized class group, and
    surviving counts merge additively with omega absorbing.
    """
    full = set()
    for c in classes:
        if isinstance(c, GroupElement):
            full.add(presentation.class_index(c))
        elif isinstance(c, int) and not isinstance(c, bool):
            if not 0 <= c < len(presentation.prime_classes):
                raise InvalidLocalizationError(f"no class with index {c}")
            full.add(c)
        else:
            raise InvalidLocalizationError(f"cannot interpret inverted class {c!r}")
    removed_labels: dict[int, set[str]] = {}
    for label in primes:
        idx, lbl = presentation.find_label(str(label))
        removed_labels.setdefault(idx, set()).add(lbl)

    relations = []
    for idx in sorted(full | set(removed_labels)):
        relations.append(presentation.prime_classes[idx].element)
    new_group, proj = quotient(presentation.class_group, relations)

    merged: dict[GroupElement, object] = {}
    merged_labels: dict[GroupElement, list[str]] = {}
    for idx, entry in enumerate(presentation.prime_classes):
        if idx in full:
            continue
        count = entry.count
        labels = list(entry.labels)
        if idx in removed_labels:
            labels = [l for l in labels if l not in removed_labels[idx]]
            count = count - len(removed_labels[idx])
            if count <= 0:
                continue
        image = proj(entry.element)
        if image in merged:
            prev = merged[image]
            merged[image] = OMEGA if (prev is OMEGA or count is OMEGA) else prev + count
        else:
            merged[image] = count
        merged_labels.setdefault(image, []).extend(labels)

    entries = [
        PrimeClass(elem, count, tuple(merged_labels[elem]) if count is not OMEGA else ())
        for elem, count in merged.items()
    ]
    return KrullPresentation(new_group, entries), proj


class MonoidElement:
    """A zero-class product of primes of a presentation, as a multiset of
    (class index, prime instance) pairs."""

    __slots__ = ("presentation", "primes")

    def __init__(self, presentation: KrullPresentation, primes):
        primes = tuple(sorted((int(ci), int(inst)) for ci, inst in primes))
        total = presentation.class_group.zero()
        for ci, inst in primes:
            if not 0 <= ci < len(presentation.prime_classes):
                raise InvalidElementError(f"no prime class with index {ci}")
            entry = presentation.prime_classes[ci]
            if inst < 0 or (entry.count is not OMEGA and inst >= entry.count):
                raise InvalidElementError(
                    f"class {entry.element.literal()} has no prime instance {inst}"
                )
            total = total + entry.element
        if not total.is_zero:
            raise InvalidElementError(
                "the class sum of the primes must vanish for a monoid element"
            )
        self.presentation = presentation
        self.primes = primes

    @classmethod
    def from_classes(cls, presentation: KrullPresentation, class_elements) -> MonoidElement:
        """Build an element from class elements, instantiating prime
        instances 0, 1, 2, ... per class, each occurrence a distinct prime."""
        counter: dict[int, int] = {}
        primes = []
        for c in class_elements:
            idx = presentation.class_index(c)
            inst = counter.get(idx, 0)
            counter[idx] = inst + 1
            primes.append((idx, inst))
        return cls(presentation, primes)

    @classmethod
    def from_class_vector(cls, presentation: KrullPresentation, mults) -> MonoidElement:
        """Build from a multiplicity vector aligned with the presentation's
        prime classes."""
        elems = []
        for idx, m in enumerate(mults):
            elems.extend([presentation.prime_classes[idx].element] * m)
        return cls.from_classes(presentation, elems)

    @property
    def size(self) -> int:
        return len(self.primes)

    def __eq__(self, other):
        if not isinstance(other, MonoidElement):
            return NotImplemented
        return self.presentation == other.presentation and self.primes == other.primes

    def __repr__(self):
        return f"MonoidElement({self.primes!r})"


def transfer(a: MonoidElement) -> Sequence:
    """Replace each prime by its class: the image is a zero-sum sequence
    over the populated classes."""
    presentation = a.presentation
    support = Support(
        presentation.class_group, [e.element for e in presentation.prime_classes]
    )
    return Sequence.from_items(
        support, [presentation.prime_classes[ci].element for ci, _ in a.primes]
    )


def _labeled_length_set(a: MonoidElement) -> frozenset[int]:
    """Factorization lengths computed directly on the labelled primes.

    A sub-multiset of primes is an atom exactly when its class sequence is a
    minimal zero-sum sequence, so blocks are tested through their classes.
    The recursion takes the first remaining prime, tries every admissible
    block through it, and collects partition sizes.
    """
    items = sorted(set(a.primes))
    counts = tuple(a.primes.count(it) for it in items)
    classes = [a.presentation.prime_classes[ci].element for ci, _ in items]
    group = a.presentation.class_group
    zero = group.zero()

    def block_is_atom(block) -> bool:
        support_elems = sorted({classes[i] for i in range(len(items)) if block[i]}, key=lambda e: e.key)
        support = Support(group, support_elems)
        mults = [0] * len(support_elems)
        for i, b in enumerate(block):
            if b:
                mults[support_elems.index(classes[i])] += b
        seq = Sequence(support, mults)
        if not seq.is_zero_sum():
            return False
        return not has_proper_zero_subsequence(seq)

    memo: dict[tuple[int, ...], frozenset[int]] = {}

    def lengths_of(remaining) -> frozenset[int]:
        if not any(remaining):
            return frozenset([0])
        if remaining in memo:
            return memo[remaining]
        first = next(i for i, c in enumerate(remaining) if c)
        acc = set()
        # blocks are sub-multisets forced to contain the first remaining prime
        ranges = [
            range(1, c + 1) if i == first else range(c + 1)
            for i, c in enumerate(remaining)
        ]
        for block in product(*ranges):
            total = zero
            for i, b in enumerate(block):
                if b:
                    total = total + b * classes[i]
            if not total.is_zero:
                continue
            if not block_is_atom(block):
                continue
            rest = tuple(r - b for r, b in zip(remaining, block))
            acc.update(k + 1 for k in lengths_of(rest))
        result = frozenset(acc)
        memo[remaining] = result
        return result

    return lengths_of(counts)


def monoid_length_set(a: MonoidElement, cap: int | None = None) -> tuple[int, ...]:
    """Set of lengths of a monoid element.

    Computed in the labelled-prime model and independently through the
    class sequence; the two routes are asserted equal, making the
    length-preservation of the transfer a checked fact on every call.
    """
    seq = transfer(a)
    atom_set = atoms(seq.support, cap)
    report = length_set(seq, atom_set, allow_incomplete=cap is not None)
    direct = _labeled_length_set(a)
    assert direct == frozenset(report.length_set), (
        "transfer identity violated: "
        f"labelled route {sorted(direct)} vs class route {list(report.length_set)}"
    )
    return report.length_set
