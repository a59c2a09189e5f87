"""Exact linear algebra over the rationals.

Vectors, matrices, subspaces in canonical reduced row echelon form, and
finite matrix groups generated by closure. All arithmetic uses
``fractions.Fraction``; no code path touches floating point. Every value
type is immutable and hashable, which is what lets group closure run over
plain sets and lets expensive pure operations be memoized upstream.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import CapExceeded, DimensionMismatch, ValidationError

__all__ = [
    "Rational",
    "rat",
    "QVec",
    "QMat",
    "QSubspace",
    "MatrixGroup",
    "qvec",
    "qmat",
    "group_closure",
    "fixed_subspace",
    "average_operator",
    "solve_linear",
    "DEFAULT_CLOSURE_CAP",
]

Rational = Fraction

DEFAULT_CLOSURE_CAP = 10_000

_RAT_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")

RatLike = Union[int, str, Fraction]


def rat(value: RatLike) -> Fraction:
    """Coerce an int, Fraction, or ``"p/q"`` string to an exact rational.

    Floats are rejected outright: silently converting one would smuggle
    binary rounding into every downstream computation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValidationError(f"not an exact rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RAT_RE.match(value):
            raise ValidationError(f"malformed rational literal: {value!r}")
        return Fraction(value)
    raise ValidationError(f"not an exact rational: {value!r}")


def format_rat(q: Fraction) -> str:
    """Render ``p/q``, or just ``p`` when the denominator is 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class QVec:
    """Immutable rational vector."""

    entries: tuple[Fraction, ...]

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def _same_dim(self, other: "QVec") -> None:
        if len(self.entries) != len(other.entries):
            raise DimensionMismatch(
                f"vector dims differ: {len(self.entries)} vs {len(other.entries)}"
            )

    def __add__(self, other: "QVec") -> "QVec":
        self._same_dim(other)
        return QVec(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "QVec") -> "QVec":
        self._same_dim(other)
        return QVec(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "QVec":
        return QVec(tuple(-a for a in self.entries))

    def __rmul__(self, scalar: RatLike) -> "QVec":
        c = rat(scalar)
        return QVec(tuple(c * a for a in self.entries))

    def dot(self, other: "QVec") -> Fraction:
        self._same_dim(other)
        return sum((a * b for a, b in zip(self.entries, other.entries)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.entries)

    @staticmethod
    def zero(dim: int) -> "QVec":
        return QVec((Fraction(0),) * dim)


def qvec(values: Iterable[RatLike]) -> QVec:
    return QVec(tuple(rat(v) for v in values))


@dataclass(frozen=True)
class QMat:
    """Immutable rational matrix, entries stored flat in row-major order."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValidationError("matrix shape must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValidationError(
                f"matrix entry count {len(self.entries)} does not match "
                f"shape {self.rows}x{self.cols}"
            )

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> QVec:
        return QVec(self.entries[i * self.cols : (i + 1) * self.cols])

    def col(self, j: int) -> QVec:
        return QVec(tuple(self.entries[i * self.cols + j] for i in range(self.rows)))

    def row_list(self) -> list[list[Fraction]]:
        return [list(self.entries[i * self.cols : (i + 1) * self.cols]) for i in range(self.rows)]

    @staticmethod
    def identity(n: int) -> "QMat":
        ent = [Fraction(0)] * (n * n)
        for i in range(n):
            ent[i * n + i] = Fraction(1)
        return QMat(n, n, tuple(ent))

    @staticmethod
    def zero(rows: int, cols: int) -> "QMat":
        return QMat(rows, cols, (Fraction(0),) * (rows * cols))

    @staticmethod
    def from_rows(rows: Sequence[Sequence[RatLike] | QVec], cols: Optional[int] = None) -> "QMat":
        mat_rows = [tuple(rat(v) for v in r) for r in rows]
        if mat_rows:
            width = len(mat_rows[0])
            if any(len(r) != width for r in mat_rows):
                raise ValidationError("matrix rows have unequal lengths")
        else:
            if cols is None:
                raise ValidationError("empty matrix needs an explicit column count")
            width = cols
        if cols is not None and mat_rows and width != cols:
            raise DimensionMismatch(f"expected {cols} columns, got {width}")
        flat = tuple(v for r in mat_rows for v in r)
        return QMat(len(mat_rows), width, flat)

    def transpose(self) -> "QMat":
        ent = tuple(
            self.entries[i * self.cols + j]
            for j in range(self.cols)
            for i in range(self.rows)
        )
        return QMat(self.cols, self.rows, ent)

    def __add__(self, other: "QMat") -> "QMat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ in addition")
        return QMat(
            self.rows,
            self.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: "QMat") -> "QMat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ in subtraction")
        return QMat(
            self.rows,
            self.cols,
            tuple(a - b for a, b in zip(self.entries, other.entries)),
        )

    def __rmul__(self, scalar: RatLike) -> "QMat":
        c = rat(scalar)
        return QMat(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: Union["QMat", QVec]) -> Union["QMat", QVec]:
        if isinstance(other, QVec):
            if self.cols != other.dim:
                raise DimensionMismatch(
                    f"matrix cols {self.cols} vs vector dim {other.dim}"
                )
            e, v, n = self.entries, other.entries, self.cols
            return QVec(
                tuple(
                    sum((e[i * n + k] * v[k] for k in range(n)), Fraction(0))
                    for i in range(self.rows)
                )
            )
        if isinstance(other, QMat):
            if self.cols != other.rows:
                raise DimensionMismatch(
                    f"matrix shapes {self.rows}x{self.cols} and "
                    f"{other.rows}x{other.cols} do not compose"
                )
            a, b = self.entries, other.entries
            n, m, p = self.rows, self.cols, other.cols
            out = []
            for i in range(n):
                arow = a[i * m : (i + 1) * m]
                for j in range(p):
                    acc = Fraction(0)
                    for k in range(m):
                        acc += arow[k] * b[k * p + j]
                    out.append(acc)
            return QMat(n, p, tuple(out))
        return NotImplemented

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.entries)

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.at(i, j) == self.at(j, i)
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def det(self) -> Fraction:
        if not self.is_square():
            raise DimensionMismatch("determinant of a non-square matrix")
        n = self.rows
        rows = self.row_list()
        sign = Fraction(1)
        det = Fraction(1)
        for col in range(n):
            pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
            if pivot is None:
                return Fraction(0)
            if pivot != col:
                rows[col], rows[pivot] = rows[pivot], rows[col]
                sign = -sign
            det *= rows[col][col]
            inv = 1 / rows[col][col]
            for r in range(col + 1, n):
                factor = rows[r][col] * inv
                if factor != 0:
                    rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
        return sign * det

    def inverse(self) -> "QMat":
        if not self.is_square():
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        aug = [row + ident for row, ident in zip(self.row_list(), QMat.identity(n).row_list())]
        reduced, pivots = _rref(aug)
        if pivots != list(range(n)):
            raise ValidationError("matrix is singular")
        flat = tuple(reduced[i][n + j] for i in range(n) for j in range(n))
        return QMat(n, n, flat)


def qmat(rows: Sequence[Sequence[RatLike]]) -> QMat:
    return QMat.from_rows(rows)


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form in place; returns (rows, pivot columns)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [a * inv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


@dataclass(frozen=True)
class QSubspace:
    """Linear subspace of Q^n held in canonical RREF basis form.

    Canonicality makes equality of subspaces plain data equality: two spans
    agree iff their reduced bases agree.
    """

    ambient_dim: int
    basis: QMat  # RREF with no zero rows; basis.cols == ambient_dim

    @staticmethod
    def span(vectors: Sequence[QVec], ambient_dim: int) -> "QSubspace":
        for v in vectors:
            if v.dim != ambient_dim:
                raise DimensionMismatch(
                    f"spanning vector has dim {v.dim}, ambient is {ambient_dim}"
                )
        rows = [list(v.entries) for v in vectors]
        reduced, pivots = _rref(rows)
        keep = [reduced[i] for i in range(len(pivots))]
        return QSubspace(ambient_dim, QMat.from_rows(keep, cols=ambient_dim))

    @staticmethod
    def full(n: int) -> "QSubspace":
        return QSubspace(n, QMat.identity(n))

    @staticmethod
    def zero_space(n: int) -> "QSubspace":
        return QSubspace(n, QMat(0, n, ()))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def basis_vectors(self) -> list[QVec]:
        return [self.basis.row(i) for i in range(self.basis.rows)]

    def contains(self, v: QVec) -> bool:
        if v.dim != self.ambient_dim:
            raise DimensionMismatch(
                f"vector dim {v.dim} vs ambient {self.ambient_dim}"
            )
        # reduce v against the RREF basis; membership iff remainder vanishes
        rem = list(v.entries)
        for i in range(self.basis.rows):
            row = self.basis.row(i).entries
            lead = next(j for j in range(self.ambient_dim) if row[j] != 0)
            if rem[lead] != 0:
                factor = rem[lead]
                rem = [a - factor * b for a, b in zip(rem, row)]
        return all(a == 0 for a in rem)

    def is_subspace_of(self, other: "QSubspace") -> bool:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("subspaces live in different ambient spaces")
        return all(other.contains(v) for v in self.basis_vectors())


def kernel(m: QMat) -> QSubspace:
    """Exact kernel {v : m @ v = 0} as a canonical subspace."""
    reduced, pivots = _rref(m.row_list())
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][f]
        basis.append(QVec(tuple(v)))
    return QSubspace.span(basis, m.cols)


@dataclass(frozen=True)
class MatrixGroup:
    """Finite group of invertible rational matrices, elements in sorted order."""

    dim: int
    elements: tuple[QMat, ...]
    generators: tuple[QMat, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[QMat]:
        return iter(self.elements)

    def __contains__(self, m: QMat) -> bool:
        return m in set(self.elements)


def _canonical_elements(elems: Iterable[QMat]) -> tuple[QMat, ...]:
    return tuple(sorted(elems, key=lambda m: m.entries))


def group_closure(generators: Sequence[QMat], cap: int = DEFAULT_CLOSURE_CAP) -> MatrixGroup:
    """Close a nonempty generator list under multiplication.

    A finite multiplicatively closed set of invertible matrices containing
    the identity is automatically closed under inverses, so right
    multiplication by generators from the identity enumerates the whole
    generated group. Raises CapExceeded when the element count passes cap.
    """
    if not generators:
        raise ValidationError("group_closure needs at least one generator")
    dim = generators[0].rows
    for g in generators:
        if not g.is_square() or g.rows != dim:
            raise ValidationError("generators must be square matrices of equal dimension")
        if g.det() == 0:
            raise ValidationError("generators must be invertible")
    gens = []
    seen_gens = set()
    for g in generators:
        if g not in seen_gens:
            seen_gens.add(g)
            gens.append(g)
    identity = QMat.identity(dim)
    elements = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                prod = e @ g
                if prod not in elements:
                    elements.add(prod)
                    if len(elements) > cap:
                        raise CapExceeded(
                            f"group closure exceeded cap of {cap} elements"
                        )
                    nxt.append(prod)
        frontier = nxt
    return MatrixGroup(dim, _canonical_elements(elements), tuple(gens))


def fixed_subspace(group: MatrixGroup) -> QSubspace:
    """Subspace of vectors fixed by every element.

    The group is generated by its generators, so stacking (g - I) over
    generators alone cuts out the same kernel as stacking over all elements.
    """
    gens = group.generators if group.generators else group.elements
    n = group.dim
    rows: list[list[Fraction]] = []
    ident = QMat.identity(n)
    for g in gens:
        diff = g - ident
        rows.extend(diff.row_list())
    if not rows:
        return QSubspace.full(n)
    return kernel(QMat.from_rows(rows, cols=n))


def average_operator(group: MatrixGroup) -> QMat:
    """(1/|G|) sum of all elements; idempotent projection onto the fixed space."""
    n = group.dim
    total = QMat.zero(n, n)
    for e in group.elements:
        total = total + e
    return Fraction(1, group.order) * total


def solve_linear(a: QMat, b: QVec) -> Optional[tuple[QVec, QSubspace]]:
    """Solve a @ x = b exactly.

    Returns None when inconsistent, else (particular solution, kernel of a):
    the full solution set is the particular solution plus the kernel.
    """
    if a.rows != b.dim:
        raise DimensionMismatch(f"matrix has {a.rows} rows but rhs has dim {b.dim}")
    aug = [row + [bv] for row, bv in zip(a.row_list(), b.entries)]
    if not aug:
        # zero equations: everything solves
        return QVec.zero(a.cols), QSubspace.full(a.cols)
    reduced, pivots = _rref(aug)
    if pivots and pivots[-1] == a.cols:
        return None
    particular = [Fraction(0)] * a.cols
    for r, p in enumerate(pivots):
        particular[p] = reduced[r][a.cols]
    pivot_set = set(pivots)
    free = [c for c in range(a.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * a.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][f]
        basis.append(QVec(tuple(v)))
    return QVec(tuple(particular)), QSubspace.span(basis, a.cols)
