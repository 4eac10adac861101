"""Definitional reimplementations of the atom and factorization enumerations.

No pruning, no canonical-order constraint, duplicates removed after the
fact.  Deliberately slow; these exist to cross-check the main enumerators
and to revalidate search results through an independent route.
"""

from __future__ import annotations

from itertools import product

from .errors import InvalidInputError, NeedsCapError
from .zerosum import Sequence, Support


def _all_vectors(size: int, bound: int):
    # every multiplicity vector with total at most bound
    vec = [0] * size

    def rec(i, remaining):
        if i == size:
            yield tuple(vec)
            return
        for c in range(remaining + 1):
            vec[i] = c
            yield from rec(i + 1, remaining - c)
        vec[i] = 0

    yield from rec(0, bound)


def _is_minimal_zero_sum(seq: Sequence) -> bool:
    if seq.is_empty or not seq.is_zero_sum():
        return False
    zero = seq.support.group.zero()
    mults = seq.multiplicities
    elems = seq.support.elements
    for sub in product(*[range(m + 1) for m in mults]):
        if sum(sub) == 0 or sub == mults:
            continue
        total = zero
        for e, c in zip(elems, sub):
            total = total + c * e
        if total == zero:
            return False
    return True


def naive_atoms(support: Support, bound: int | None = None) -> list[Sequence]:
    """Atoms by exhaustive scan of every multiset up to the bound."""
    group = support.group
    if bound is None:
        if not group.is_finite:
            raise NeedsCapError("naive atom scan over an infinite group needs a bound")
        bound = group.order()
    out = []
    for vec in _all_vectors(len(support.elements), bound):
        seq = Sequence(support, vec)
        if _is_minimal_zero_sum(seq):
            out.append(seq)
    out.sort(key=lambda s: (s.length, s.multiplicities))
    return out


def naive_factorizations(target: Sequence, atom_seqs) -> list[tuple[int, ...]]:
    """Every multiset of atoms concatenating to the target, as sorted index
    tuples; enumerated in every order and deduplicated afterwards."""
    if not target.is_zero_sum():
        raise InvalidInputError("factorization target must be zero-sum")
    atom_vecs = [a.multiplicities for a in atom_seqs]
    seen = set()

    def rec(remaining, chosen):
        if not any(remaining):
            seen.add(tuple(sorted(chosen)))
            return
        for i, av in enumerate(atom_vecs):
            if all(x <= y for x, y in zip(av, remaining)):
                rec(tuple(y - x for x, y in zip(av, remaining)), chosen + [i])

    rec(target.multiplicities, [])
    return sorted(seen)
