"""Sequences over a subset of an abelian group and the zero-sum monoid.

A sequence is a finite multiset over a fixed, sorted support; the collection
of all sequences over G0 is a free abelian monoid, and the zero-sum ones
form the submonoid where factorization questions live.  Atoms (minimal
nonempty zero-sum sequences) are enumerated exhaustively: over a finite
group any zero-sum sequence longer than the group order contains a proper
zero-sum subsequence (pigeonhole on prefix sums), so the enumeration bound
|G| provably covers all atoms.
"""

from __future__ import annotations

import ast

from .abelian import Group, GroupElement, element_from_value, format_element
from .errors import (
    InvalidElementError,
    InvalidInputError,
    NeedsCapError,
    UnsupportedError,
)


class Support:
    """A subset G0 of a group, stored sorted and duplicate free."""

    __slots__ = ("group", "elements")

    def __init__(self, group: Group, elements=()):
        elems = []
        seen = set()
        for e in elements:
            if not isinstance(e, GroupElement) or e.group != group:
                raise InvalidElementError("support element does not belong to the group")
            if e not in seen:
                seen.add(e)
                elems.append(e)
        elems.sort(key=lambda e: e.key)
        self.group = group
        self.elements = tuple(elems)

    @classmethod
    def parse(cls, text: str, group: Group) -> Support:
        try:
            value = ast.literal_eval(text.strip())
        except (ValueError, SyntaxError):
            raise InvalidInputError(f"cannot parse support literal {text!r}") from None
        if not isinstance(value, (list, tuple)):
            raise InvalidInputError("a support literal is a list of elements")
        return cls(group, [element_from_value(v, group) for v in value])

    def index_of(self, e: GroupElement) -> int:
        try:
            return self.elements.index(e)
        except ValueError:
            raise InvalidInputError(f"{e!r} is not in the support") from None

    def literal(self, short: bool = False) -> str:
        return "[" + ",".join(e.literal(short=short) for e in self.elements) + "]"

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, Support):
            return NotImplemented
        return self.group == other.group and self.elements == other.elements

    def __hash__(self):
        return hash((self.group, self.elements))

    def __repr__(self):
        return f"Support({self.group.spec_string()}, {self.literal(short=True)})"


class Sequence:
    """Finite multiset over a support, as a multiplicity vector.

    The empty sequence (all multiplicities zero) is the monoid identity.
    Two sequences are equal exactly when they share the support and the
    multiplicity vector.
    """

    __slots__ = ("support", "multiplicities")

    def __init__(self, support: Support, multiplicities):
        mults = tuple(int(m) for m in multiplicities)
        if len(mults) != len(support.elements):
            raise InvalidInputError("multiplicity vector does not match the support")
        if any(m < 0 for m in mults):
            raise InvalidInputError("multiplicities must be nonnegative")
        self.support = support
        self.multiplicities = mults

    @classmethod
    def from_items(cls, support: Support, items) -> Sequence:
        """Build from an iterable of elements or (element, multiplicity) pairs."""
        mults = [0] * len(support.elements)
        for item in items:
            if isinstance(item, tuple):
                e, m = item
            else:
                e, m = item, 1
            if m < 0:
                raise InvalidInputError("multiplicities must be nonnegative")
            mults[support.index_of(e)] += m
        return cls(support, mults)

    @classmethod
    def parse(cls, text: str, group: Group, support: Support | None = None) -> Sequence:
        """Parse a sequence literal like "[1^3,2^3]" or "[([0],[1])^2]".

        When no support is given, the distinct elements of the literal form it.
        """
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise InvalidInputError(f"cannot parse sequence literal {text!r}")
        body = body[1:-1].strip()
        items = []
        depth = 0
        cur = ""
        for ch in body:
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
            if ch == "," and depth == 0:
                items.append(cur)
                cur = ""
            else:
                cur += ch
        if cur.strip():
            items.append(cur)
        pairs = []
        for item in items:
            item = item.strip()
            if not item:
                raise InvalidInputError(f"empty entry in sequence literal {text!r}")
            if "^" in item:
                elt_text, _, mult_text = item.rpartition("^")
                try:
                    mult = int(mult_text)
                except ValueError:
                    raise InvalidInputError(f"bad multiplicity in {item!r}") from None
            else:
                elt_text, mult = item, 1
            if mult < 0:
                raise InvalidInputError(f"negative multiplicity in {item!r}")
            try:
                value = ast.literal_eval(elt_text.strip())
            except (ValueError, SyntaxError):
                raise InvalidInputError(f"cannot parse element in {item!r}") from None
            pairs.append((element_from_value(value, group), mult))
        if support is None:
            support = Support(group, [e for e, _ in pairs])
        return cls.from_items(support, pairs)

    @property
    def length(self) -> int:
        return sum(self.multiplicities)

    @property
    def is_empty(self) -> bool:
        return self.length == 0

    def items(self):
        for e, m in zip(self.support.elements, self.multiplicities):
            if m:
                yield e, m

    def expand(self) -> list[GroupElement]:
        out = []
        for e, m in self.items():
            out.extend([e] * m)
        return out

    def sigma(self) -> GroupElement:
        """Sum of the multiset; the empty sequence sums to zero."""
        total = self.support.group.zero()
        for e, m in self.items():
            total = total + m * e
        return total

    def is_zero_sum(self) -> bool:
        return self.sigma().is_zero

    def _same_support(self, other: Sequence):
        if self.support != other.support:
            raise InvalidInputError("sequences live over different supports")

    def concat(self, other: Sequence) -> Sequence:
        self._same_support(other)
        return Sequence(
            self.support, [a + b for a, b in zip(self.multiplicities, other.multiplicities)]
        )

    def contains(self, other: Sequence) -> bool:
        self._same_support(other)
        return all(a >= b for a, b in zip(self.multiplicities, other.multiplicities))

    def minus(self, other: Sequence) -> Sequence:
        self._same_support(other)
        if not self.contains(other):
            raise InvalidInputError("cannot remove a sub-multiset that is not contained")
        return Sequence(
            self.support, [a - b for a, b in zip(self.multiplicities, other.multiplicities)]
        )

    def literal(self, short: bool = False) -> str:
        parts = []
        for e, m in self.items():
            text = e.literal(short=short)
            parts.append(text if m == 1 else f"{text}^{m}")
        return "[" + ",".join(parts) + "]"

    def __eq__(self, other):
        if not isinstance(other, Sequence):
            return NotImplemented
        return self.support == other.support and self.multiplicities == other.multiplicities

    def __hash__(self):
        return hash((self.support, self.multiplicities))

    def __repr__(self):
        return f"Sequence({self.literal(short=True)} over {self.support.group.spec_string()})"


class AtomSet:
    """Atoms of the zero-sum monoid over a support, sorted by (length, vector).

    complete is True only when the enumeration bound provably covers every
    atom; cap_used records the bound that was applied.
    """

    __slots__ = ("support", "atoms", "complete", "cap_used", "_vectors")

    def __init__(self, support: Support, atoms, complete: bool, cap_used: int):
        self.support = support
        self.atoms = tuple(atoms)
        self.complete = bool(complete)
        self.cap_used = int(cap_used)
        self._vectors = {a.multiplicities: i for i, a in enumerate(self.atoms)}

    def __len__(self):
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __contains__(self, seq):
        return isinstance(seq, Sequence) and seq.multiplicities in self._vectors

    def index_of(self, seq: Sequence) -> int:
        try:
            return self._vectors[seq.multiplicities]
        except KeyError:
            raise InvalidInputError("sequence is not an atom of this set") from None

    def max_atom_length(self) -> int:
        return max((a.length for a in self.atoms), default=0)

    def to_json_dict(self) -> dict:
        return {
            "schema": "atoms/v1",
            "group": self.support.group.spec_string(),
            "support": [e.literal() for e in self.support.elements],
            "cap_used": self.cap_used,
            "complete": self.complete,
            "count": len(self.atoms),
            "atoms": [
                {"multiplicities": list(a.multiplicities), "literal": a.literal(short=True)}
                for a in self.atoms
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> AtomSet:
        group = Group.parse(data["group"])
        from .abelian import parse_element

        support = Support(group, [parse_element(t, group) for t in data["support"]])
        atoms = [Sequence(support, entry["multiplicities"]) for entry in data["atoms"]]
        return cls(support, atoms, data["complete"], data["cap_used"])

    def __eq__(self, other):
        if not isinstance(other, AtomSet):
            return NotImplemented
        return (
            self.support == other.support
            and self.atoms == other.atoms
            and self.complete == other.complete
            and self.cap_used == other.cap_used
        )

    def __repr__(self):
        flag = "complete" if self.complete else f"capped at {self.cap_used}"
        return f"AtomSet({len(self.atoms)} atoms over {self.support.literal(short=True)}, {flag})"


def has_proper_zero_subsequence(seq: Sequence) -> bool:
    """Whether a nonempty zero-sum sequence has a proper nonempty zero-sum
    sub-multiset; this failing is exactly minimality (being an atom)."""
    if seq.is_empty or not seq.is_zero_sum():
        raise InvalidInputError("argument must be a nonempty zero-sum sequence")
    zero = seq.support.group.zero()
    # states: (partial sum, took anything yet, dropped anything yet)
    states = {(zero, False, False)}
    for e, m in seq.items():
        new = set()
        for (s, took, dropped) in states:
            val = s
            for c in range(m + 1):
                new.add((val, took or c > 0, dropped or c < m))
                if c < m:
                    val = val + e
        states = new
    return any(s == zero and took and dropped for (s, took, dropped) in states)


def atoms(support: Support, cap: int | None = None) -> AtomSet:
    """All minimal nonempty zero-sum sequences over the support, up to a bound.

    For a finite ambient group the bound is min(cap, |G|) and the result is
    complete whenever cap is absent or at least |G|.  Over a group with free
    rank a cap is required and the result is always flagged incomplete.
    """
    group = support.group
    if cap is not None and cap < 0:
        raise InvalidInputError("cap must be nonnegative")
    if not group.is_finite:
        if cap is None:
            raise NeedsCapError(
                "atom enumeration over an infinite group needs an explicit cap"
            )
        bound = cap
        complete = False
    else:
        order = group.order()
        bound = order if cap is None else min(cap, order)
        complete = cap is None or cap >= order

    elems = support.elements
    n = len(elems)
    zero = group.zero()
    found = []

    # DFS over multisets in nondecreasing element order.  Each live node p
    # has no nonempty zero-sum sub-multiset, and carries the sums of its
    # proper sub-multisets; adding e creates a proper nonempty zero-sum
    # sub-multiset exactly when -e is such a sum, which prunes the branch.
    def extend(start, mults, total, sig, proper_sums):
        if total >= bound:
            return
        for i in range(start, n):
            e = elems[i]
            child_has_pzs = (-e) in proper_sums
            child_sig = sig + e
            mults[i] += 1
            if child_sig == zero:
                if not child_has_pzs:
                    found.append(tuple(mults))
                # any extension would contain this zero-sum multiset properly
            elif not child_has_pzs:
                child_proper = proper_sums | {s + e for s in proper_sums} | {sig}
                extend(i, mults, total + 1, child_sig, child_proper)
            mults[i] -= 1

    extend(0, [0] * n, 0, zero, frozenset())
    found.sort(key=lambda v: (sum(v), v))
    atom_seqs = [Sequence(support, v) for v in found]
    return AtomSet(support, atom_seqs, complete, bound)


def davenport(group: Group) -> int:
    """Maximum length of an atom over the full group (finite groups only)."""
    if not group.is_finite:
        raise UnsupportedError("the maximal atom length is defined for finite groups only")
    full = Support(group, tuple(group.elements()))
    return atoms(full).max_atom_length()


def parse_support(text: str, group: Group) -> Support:
    return Support.parse(text, group)


def parse_sequence(text: str, group: Group, support: Support | None = None) -> Sequence:
    return Sequence.parse(text, group, support)
