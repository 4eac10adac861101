"""Exact arithmetic for finitely generated abelian groups.

A group is kept in canonical form: a free rank r together with an
invariant-factor chain d1 | d2 | ... | dk, every dj >= 2, representing
Z^r + Z/d1 + ... + Z/dk.  Canonical forms are unique, so two groups are
isomorphic exactly when they compare equal.  Everything is arbitrary
precision integer arithmetic; no floating point appears anywhere.

>>> direct_sum([Group(0, (2,)), Group(0, (3,))]).spec_string()
'C6'
>>> Group.parse("C4 x C2").invariant_factors
(2, 4)
"""

from __future__ import annotations

import ast
from math import gcd, prod

from .errors import InvalidElementError, InvalidInputError, InvalidSpecError, UnsupportedError


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    # (g, x, y) with g = a*x + b*y and g = gcd(a, b) >= 0.
    x0, x1 = 1, 0
    y0, y1 = 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class IntMatrix:
    """Immutable integer matrix with exact entries."""

    __slots__ = ("rows", "_ncols")

    def __init__(self, rows, ncols: int | None = None):
        self.rows = tuple(tuple(int(x) for x in row) for row in rows)
        if self.rows:
            width = len(self.rows[0])
            if any(len(row) != width for row in self.rows):
                raise InvalidInputError("matrix rows have inconsistent lengths")
            if ncols is not None and ncols != width:
                raise InvalidInputError("ncols does not match row width")
            self._ncols = width
        else:
            self._ncols = int(ncols or 0)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    def mul(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise InvalidInputError("dimension mismatch in matrix product")
        out = []
        for row in self.rows:
            out.append(
                [sum(row[k] * other.rows[k][j] for k in range(self.ncols)) for j in range(other.ncols)]
            )
        return IntMatrix(out, ncols=other.ncols)

    __matmul__ = mul

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.rows[i][i] for i in range(min(self.nrows, self.ncols)))

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        n = self.nrows
        if n != self.ncols:
            raise InvalidInputError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = [list(row) for row in self.rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.rows == other.rows and self._ncols == other._ncols

    def __hash__(self):
        return hash((self.rows, self._ncols))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]!r})"


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Diagonalize an integer matrix by unimodular transforms.

    Returns (U, D, V) with U*m*V = D, det(U) = +-1, det(V) = +-1, and D
    diagonal with nonnegative entries forming a divisibility chain
    d1 | d2 | ... (zero entries trailing).
    """
    nr, nc = m.nrows, m.ncols
    a = [list(row) for row in m.rows]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for mat in (a, v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def combine_rows(i, j, x, y, z, w):
        # rows (i, j) <- (x*ri + y*rj, z*ri + w*rj); the 2x2 block is unimodular
        for mat in (a, u):
            ri, rj = mat[i], mat[j]
            for col in range(len(ri)):
                p, q = ri[col], rj[col]
                ri[col] = x * p + y * q
                rj[col] = z * p + w * q

    def combine_cols(i, j, x, y, z, w):
        for mat in (a, v):
            for row in mat:
                p, q = row[i], row[j]
                row[i] = x * p + y * q
                row[j] = z * p + w * q

    def clear_once(t):
        for i in range(t + 1, nr):
            b = a[i][t]
            if b == 0:
                continue
            p = a[t][t]
            if b % p == 0:
                combine_rows(t, i, 1, 0, -(b // p), 1)
            else:
                g, x, y = _xgcd(p, b)
                combine_rows(t, i, x, y, -(b // g), p // g)
        for j in range(t + 1, nc):
            b = a[t][j]
            if b == 0:
                continue
            p = a[t][t]
            if b % p == 0:
                combine_cols(t, j, 1, 0, -(b // p), 1)
            else:
                g, x, y = _xgcd(p, b)
                combine_cols(t, j, x, y, -(b // g), p // g)

    t = 0
    while t < min(nr, nc):
        piv = None
        for i in range(t, nr):
            for j in range(t, nc):
                e = a[i][j]
                if e and (piv is None or abs(e) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            swap_rows(t, piv[0])
        if piv[1] != t:
            swap_cols(t, piv[1])
        while True:
            clear_once(t)
            if any(a[i][t] for i in range(t + 1, nr)) or any(a[t][j] for j in range(t + 1, nc)):
                continue
            # make the pivot divide the whole trailing block, or fold in a bad row
            p = a[t][t]
            bad = None
            for i in range(t + 1, nr):
                if any(a[i][j] % p for j in range(t + 1, nc)):
                    bad = i
                    break
            if bad is None:
                break
            combine_rows(t, bad, 1, 1, 0, 1)
        t += 1

    for i in range(min(nr, nc)):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]

    return IntMatrix(u, ncols=nr), IntMatrix(a, ncols=nc), IntMatrix(v, ncols=nc)


class Group:
    """Finitely generated abelian group in canonical form.

    free_rank is the rank of the free part; invariant_factors is the chain
    d1 | d2 | ... | dk with every dj >= 2.  The trivial group is Group(0).
    """

    __slots__ = ("free_rank", "invariant_factors", "_hash")

    def __init__(self, free_rank: int, invariant_factors=()):
        free_rank = int(free_rank)
        factors = tuple(int(d) for d in invariant_factors)
        if free_rank < 0:
            raise InvalidSpecError("free rank must be nonnegative")
        for d in factors:
            if d < 2:
                raise InvalidSpecError("invariant factors must be >= 2")
        for prev, nxt in zip(factors, factors[1:]):
            if nxt % prev:
                raise InvalidSpecError(
                    f"{factors!r} is not a divisibility chain; use Group.from_parts"
                )
        self.free_rank = free_rank
        self.invariant_factors = factors
        self._hash = hash((free_rank, factors))

    @classmethod
    def from_parts(cls, free_rank: int, torsion=()) -> Group:
        """Canonical form of Z^free_rank + C_n1 + ... for arbitrary torsion orders."""
        torsion = tuple(int(n) for n in torsion)
        for n in torsion:
            if n < 2:
                raise InvalidSpecError(f"torsion order {n} is < 2")
        if not torsion:
            return cls(free_rank)
        k = len(torsion)
        diag = IntMatrix([[torsion[i] if i == j else 0 for j in range(k)] for i in range(k)])
        _, d, _ = smith_normal_form(diag)
        return cls(free_rank, tuple(e for e in d.diagonal() if e >= 2))

    @classmethod
    def trivial(cls) -> Group:
        return cls(0)

    @classmethod
    def parse(cls, spec: str) -> Group:
        """Parse a group spec like "Z^2 x C2 x C6", "C4xC2", or "trivial"."""
        text = spec.strip()
        if text in ("trivial", "1"):
            return cls(0)
        free = 0
        torsion = []
        for token in text.split("x"):
            token = token.strip()
            if not token:
                raise InvalidSpecError(f"empty factor in group spec {spec!r}")
            if token == "Z":
                free += 1
            elif token.startswith("Z^"):
                try:
                    r = int(token[2:])
                except ValueError:
                    raise InvalidSpecError(f"bad free part {token!r}") from None
                if r < 0:
                    raise InvalidSpecError(f"bad free part {token!r}")
                free += r
            elif token.startswith("C"):
                try:
                    n = int(token[1:])
                except ValueError:
                    raise InvalidSpecError(f"bad cyclic factor {token!r}") from None
                if n < 2:
                    raise InvalidSpecError(f"cyclic factor order {n} is < 2")
                torsion.append(n)
            else:
                raise InvalidSpecError(f"cannot parse group factor {token!r}")
        return cls.from_parts(free, torsion)

    def spec_string(self) -> str:
        if self.free_rank == 0 and not self.invariant_factors:
            return "trivial"
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"C{d}" for d in self.invariant_factors)
        return " x ".join(parts)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        return prod(self.invariant_factors)

    def exponent(self) -> int | None:
        """Least n >= 1 killing every element; None when infinite, 1 for trivial."""
        if self.free_rank:
            return None
        if not self.invariant_factors:
            return 1
        return self.invariant_factors[-1]

    def rank(self) -> int:
        """Maximum of the p-ranks over all primes p.

        Every prime dividing d1 divides the whole chain, so the maximum is
        free_rank plus the number of invariant factors.
        """
        return self.free_rank + len(self.invariant_factors)

    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * self.free_rank, (0,) * len(self.invariant_factors))

    def element(self, free=(), torsion=()) -> GroupElement:
        return GroupElement(self, free, torsion)

    def elements(self):
        """All elements of a finite group in lexicographic coordinate order."""
        if self.free_rank:
            raise UnsupportedError("cannot enumerate an infinite group")
        from itertools import product

        for combo in product(*[range(d) for d in self.invariant_factors]):
            yield GroupElement(self, (), combo)

    def generators(self) -> tuple[GroupElement, ...]:
        """Canonical generating set: free basis then torsion basis."""
        gens = []
        for i in range(self.free_rank):
            free = [0] * self.free_rank
            free[i] = 1
            gens.append(GroupElement(self, free, (0,) * len(self.invariant_factors)))
        for j in range(len(self.invariant_factors)):
            tors = [0] * len(self.invariant_factors)
            tors[j] = 1
            gens.append(GroupElement(self, (0,) * self.free_rank, tors))
        return tuple(gens)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Group):
            return NotImplemented
        return (
            self.free_rank == other.free_rank
            and self.invariant_factors == other.invariant_factors
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Group({self.free_rank}, {self.invariant_factors!r})"

    def __str__(self):
        return self.spec_string()


class GroupElement:
    """Element of a Group: integer free coordinates plus reduced torsion coordinates."""

    __slots__ = ("group", "free", "torsion", "_hash")

    def __init__(self, group: Group, free=(), torsion=()):
        free = tuple(int(x) for x in free)
        torsion = tuple(int(x) for x in torsion)
        if len(free) != group.free_rank:
            raise InvalidElementError(
                f"free part has length {len(free)}, expected {group.free_rank}"
            )
        if len(torsion) != len(group.invariant_factors):
            raise InvalidElementError(
                f"torsion part has length {len(torsion)}, expected {len(group.invariant_factors)}"
            )
        self.group = group
        self.free = free
        self.torsion = tuple(x % d for x, d in zip(torsion, group.invariant_factors))
        self._hash = None

    @classmethod
    def _raw(cls, group, free, torsion) -> GroupElement:
        # arithmetic fast path: inputs have the right lengths already
        e = object.__new__(cls)
        e.group = group
        e.free = free
        e.torsion = tuple(x % d for x, d in zip(torsion, group.invariant_factors))
        e._hash = None
        return e

    def _same_group(self, other: GroupElement):
        if self.group is not other.group and self.group != other.group:
            raise InvalidElementError("operands live in different groups")

    @property
    def key(self) -> tuple:
        return (self.free, self.torsion)

    @property
    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def __add__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        self._same_group(other)
        return GroupElement._raw(
            self.group,
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.torsion, other.torsion)),
        )

    def __neg__(self):
        return GroupElement._raw(
            self.group,
            tuple(-a for a in self.free),
            tuple(-a for a in self.torsion),
        )

    def __sub__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return GroupElement._raw(
            self.group,
            tuple(n * a for a in self.free),
            tuple(n * a for a in self.torsion),
        )

    __rmul__ = __mul__

    def order(self) -> int | None:
        """Least n >= 1 with n*x = 0, or None when the free part is nonzero."""
        if any(self.free):
            return None
        n = 1
        for x, d in zip(self.torsion, self.group.invariant_factors):
            m = d // gcd(d, x)
            n = n * m // gcd(n, m)
        return n

    def literal(self, short: bool = False) -> str:
        """Canonical serialization "([f1,...],[t1,...])"; short form is the bare
        coordinate for one-coordinate groups."""
        coords = self.free + self.torsion
        if short and len(coords) == 1:
            return str(coords[0])
        f = ",".join(str(x) for x in self.free)
        t = ",".join(str(x) for x in self.torsion)
        return f"([{f}],[{t}])"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, GroupElement):
            return NotImplemented
        return (
            self.free == other.free
            and self.torsion == other.torsion
            and self.group == other.group
        )

    def __lt__(self, other):
        self._same_group(other)
        return self.key < other.key

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.group._hash, self.free, self.torsion))
        return self._hash

    def __repr__(self):
        return f"<{self.literal()} in {self.group.spec_string()}>"


def element_from_value(value, group: Group) -> GroupElement:
    """Build an element from a parsed literal: a ([free],[torsion]) pair, a flat
    coordinate tuple, or a bare integer for one-coordinate groups."""
    n = group.free_rank + len(group.invariant_factors)
    if isinstance(value, bool):
        raise InvalidElementError(f"cannot interpret {value!r} as a group element")
    if isinstance(value, int):
        if n != 1:
            raise InvalidElementError(
                f"bare integer element needs a one-coordinate group, not {group.spec_string()}"
            )
        coords = [value]
    elif isinstance(value, (tuple, list)):
        items = list(value)
        if len(items) == 2 and all(isinstance(p, list) for p in items):
            free, torsion = items
            if not all(isinstance(x, int) for x in free + torsion):
                raise InvalidElementError(f"non-integer coordinates in {value!r}")
            return group.element(free, torsion)
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in items):
            raise InvalidElementError(f"cannot interpret {value!r} as a group element")
        if len(items) != n:
            raise InvalidElementError(
                f"element has {len(items)} coordinates, {group.spec_string()} needs {n}"
            )
        coords = items
    else:
        raise InvalidElementError(f"cannot interpret {value!r} as a group element")
    return group.element(coords[: group.free_rank], coords[group.free_rank :])


def parse_element(text: str, group: Group) -> GroupElement:
    try:
        value = ast.literal_eval(text.strip())
    except (ValueError, SyntaxError):
        raise InvalidElementError(f"cannot parse element literal {text!r}") from None
    return element_from_value(value, group)


def format_element(e: GroupElement, short: bool = False) -> str:
    return e.literal(short=short)


def parse_group(spec: str) -> Group:
    return Group.parse(spec)


class Projection:
    """Surjection of a group onto a quotient, kept as the unimodular transform
    of the relation matrix plus the coordinate profile of the target."""

    __slots__ = ("source", "target", "transform", "_free_pos", "_torsion_pos")

    def __init__(self, source, target, transform, free_pos, torsion_pos):
        self.source = source
        self.target = target
        self.transform = transform
        self._free_pos = tuple(free_pos)
        self._torsion_pos = tuple(torsion_pos)

    def apply(self, x: GroupElement) -> GroupElement:
        if self.source is None or x.group != self.source:
            raise InvalidElementError("element does not belong to the projection source")
        return self._apply_vector(list(x.free) + list(x.torsion))

    def _apply_vector(self, vec) -> GroupElement:
        y = [sum(row[j] * vec[j] for j in range(len(vec))) for row in self.transform.rows]
        free = [y[i] for i in self._free_pos]
        torsion = [y[i] for i, _ in self._torsion_pos]
        return self.target.element(free, torsion)

    def __call__(self, x: GroupElement) -> GroupElement:
        return self.apply(x)


def _cokernel(n: int, relation_cols):
    """Canonical form of Z^n modulo the span of the given column vectors,
    with the data needed to map cosets to canonical coordinates."""
    m = len(relation_cols)
    rows = [[relation_cols[j][i] for j in range(m)] for i in range(n)]
    matrix = IntMatrix(rows, ncols=m)
    u, d, _ = smith_normal_form(matrix)
    diag = d.diagonal()
    torsion_pos = [(i, diag[i]) for i in range(len(diag)) if diag[i] >= 2]
    free_pos = [i for i in range(len(diag)) if diag[i] == 0]
    free_pos.extend(range(len(diag), n))
    target = Group(len(free_pos), tuple(dd for _, dd in torsion_pos))
    return target, u, free_pos, torsion_pos


def quotient(g: Group, relations) -> tuple[Group, Projection]:
    """Canonical form of g modulo the subgroup generated by the relations,
    plus the projection handle mapping elements of g to their images."""
    relations = list(relations)
    for x in relations:
        if not isinstance(x, GroupElement) or x.group != g:
            raise InvalidElementError("quotient relation does not belong to the group")
    n = g.free_rank + len(g.invariant_factors)
    cols = []
    for j, d in enumerate(g.invariant_factors):
        col = [0] * n
        col[g.free_rank + j] = d
        cols.append(col)
    for x in relations:
        cols.append(list(x.free) + list(x.torsion))
    target, u, free_pos, torsion_pos = _cokernel(n, cols)
    return target, Projection(g, target, u, free_pos, torsion_pos)


def direct_sum_with_embeddings(groups) -> tuple[Group, tuple[tuple[GroupElement, ...], ...]]:
    """Canonical direct sum together with, per summand, the images of its
    canonical generators inside the sum."""
    groups = list(groups)
    total_free = sum(g.free_rank for g in groups)
    torsion = [d for g in groups for d in g.invariant_factors]
    n = total_free + len(torsion)
    cols = []
    for j, d in enumerate(torsion):
        col = [0] * n
        col[total_free + j] = d
        cols.append(col)
    target, u, free_pos, torsion_pos = _cokernel(n, cols)
    proj = Projection(None, target, u, free_pos, torsion_pos)

    embeddings = []
    free_off = 0
    tors_off = 0
    for g in groups:
        gens = []
        for i in range(g.free_rank):
            vec = [0] * n
            vec[free_off + i] = 1
            gens.append(proj._apply_vector(vec))
        for j in range(len(g.invariant_factors)):
            vec = [0] * n
            vec[total_free + tors_off + j] = 1
            gens.append(proj._apply_vector(vec))
        embeddings.append(tuple(gens))
        free_off += g.free_rank
        tors_off += len(g.invariant_factors)
    return target, tuple(embeddings)


def direct_sum(groups) -> Group:
    """Canonical form of the direct sum of the given groups."""
    return direct_sum_with_embeddings(groups)[0]
