"""Root data for possibly disconnected reductive groups.

A group is presented as a root datum (character lattice X, cocharacter
lattice Y, paired roots and coroots) together with a finite component group
acting on Y by unimodular matrices that respect the root datum and a chosen
base. The full Weyl group is generated by the root reflections and the
component action matrices; everything downstream (invariant subspaces, trace
form, parabolic and Levi data, invariant norms) is derived from it exactly.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .convex import check_positive_definite
from .errors import (
    NotPositiveDefinite,
    SeedNotPD,
    ValidationError,
)
from .linalg import (
    DEFAULT_CLOSURE_CAP,
    MatrixGroup,
    QMat,
    QSubspace,
    QVec,
    fixed_subspace,
    group_closure,
    kernel,
    qvec,
    solve_linear,
)

__all__ = [
    "RootDatum",
    "ComponentAction",
    "GroupData",
    "ParabolicData",
    "InvariantNorm",
    "make_root_datum",
    "trivial_components",
    "make_group",
    "reflection",
    "weyl_group",
    "connected_weyl_group",
    "rational_characters",
    "central_cocharacters",
    "trace_form",
    "trace_character",
    "parabolic",
    "invariant_norm",
    "dual_gram",
    "dual_character",
    "levi_subgroup_data",
]


@dataclass(frozen=True)
class RootDatum:
    """Rank, roots in X, and index-paired coroots in Y."""

    rank: int
    roots: tuple[QVec, ...]
    coroots: tuple[QVec, ...]


@dataclass(frozen=True)
class ComponentAction:
    """Finite component group with its action on the cocharacter lattice.

    table[i][j] is the index of labels[i] * labels[j]; matrices[i] is the
    action of labels[i] on Y.
    """

    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    matrices: tuple[QMat, ...]

    @property
    def size(self) -> int:
        return len(self.labels)

    def identity_index(self) -> int:
        for e in range(self.size):
            if all(self.table[e][j] == j for j in range(self.size)):
                return e
        raise ValidationError("component table has no identity element")

    def inverse_index(self, i: int) -> int:
        e = self.identity_index()
        for j in range(self.size):
            if self.table[i][j] == e:
                return j
        raise ValidationError("component table has no inverse; not a group")

    def is_subgroup(self, indices: Iterable[int]) -> bool:
        idx = set(indices)
        if not idx or not idx.issubset(range(self.size)):
            return False
        if self.identity_index() not in idx:
            return False
        return all(self.table[i][j] in idx for i in idx for j in idx)


@dataclass(frozen=True)
class GroupData:
    """Root datum plus component action plus a declared base of simple roots."""

    datum: RootDatum
    components: ComponentAction
    base: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.datum.rank


@dataclass(frozen=True)
class ParabolicData:
    """Parabolic attached to a rational cocharacter: the roots it pairs
    nonnegatively with, the Levi roots it kills, and the Weyl stabilizer."""

    cochar: QVec
    parabolic_roots: tuple[int, ...]
    levi_roots: tuple[int, ...]
    levi_weyl: MatrixGroup


@dataclass(frozen=True)
class InvariantNorm:
    """Weyl-invariant positive definite form on the cocharacter space."""

    gram: QMat

    def norm_sq(self, v: QVec) -> Fraction:
        return (self.gram @ v).dot(v)


def reflection(datum: RootDatum, i: int) -> QMat:
    """Reflection in the i-th root, acting on Y: s = I - coroot . root^T."""
    alpha = datum.roots[i]
    alpha_v = datum.coroots[i]
    n = datum.rank
    ent = []
    for r in range(n):
        for c in range(n):
            v = Fraction(1) if r == c else Fraction(0)
            ent.append(v - alpha_v[r] * alpha[c])
    return QMat(n, n, tuple(ent))


def contragredient(m: QMat) -> QMat:
    """Action induced on X by an action m on Y: (m^{-1})^T."""
    return m.inverse().transpose()


def _pairs_permuted(datum: RootDatum, on_y: QMat) -> bool:
    """Does (contragredient(on_y), on_y) permute the (root, coroot) pairs?"""
    on_x = contragredient(on_y)
    pairs = set(zip((r.entries for r in datum.roots), (c.entries for c in datum.coroots)))
    for r, c in zip(datum.roots, datum.coroots):
        img = ((on_x @ r).entries, (on_y @ c).entries)
        if img not in pairs:
            return False
    return True


def make_root_datum(
    rank: int,
    roots: Sequence[Sequence] | Sequence[QVec],
    coroots: Sequence[Sequence] | Sequence[QVec],
) -> RootDatum:
    if rank < 0:
        raise ValidationError("rank must be nonnegative")
    root_vecs = tuple(r if isinstance(r, QVec) else qvec(r) for r in roots)
    coroot_vecs = tuple(c if isinstance(c, QVec) else qvec(c) for c in coroots)
    if len(root_vecs) != len(coroot_vecs):
        raise ValidationError("roots and coroots must be index-paired lists of equal length")
    for v in root_vecs + coroot_vecs:
        if v.dim != rank:
            raise ValidationError(f"root datum vector of dim {v.dim} does not match rank {rank}")
        if not v.is_integral():
            raise ValidationError("roots and coroots must be integer vectors")
    datum = RootDatum(rank, root_vecs, coroot_vecs)
    for i, (r, c) in enumerate(zip(root_vecs, coroot_vecs)):
        if r.is_zero():
            raise ValidationError(f"root {i} is zero")
        if c.dot(r) != 2:
            raise ValidationError(
                f"pairing of coroot {i} with root {i} is {c.dot(r)}, must be 2"
            )
    for i in range(len(root_vecs)):
        if not _pairs_permuted(datum, reflection(datum, i)):
            raise ValidationError(
                f"reflection in root {i} does not permute the (root, coroot) pairs"
            )
    return datum


def simple_roots_default(datum: RootDatum) -> tuple[int, ...]:
    """Default base: indecomposable lex-positive roots."""
    def positive(v: QVec) -> bool:
        for a in v.entries:
            if a != 0:
                return a > 0
        return False

    pos = [i for i, r in enumerate(datum.roots) if positive(r)]
    pos_set = {datum.roots[i].entries for i in pos}
    base = []
    for i in pos:
        r = datum.roots[i]
        decomposable = any(
            (r - datum.roots[j]).entries in pos_set
            for j in pos
            if j != i and not (r - datum.roots[j]).is_zero()
        )
        if not decomposable:
            base.append(i)
    return tuple(base)


def _validate_base(datum: RootDatum, base: Sequence[int]) -> None:
    if len(set(base)) != len(base):
        raise ValidationError("base contains repeated root indices")
    for b in base:
        if not 0 <= b < len(datum.roots):
            raise ValidationError(f"base index {b} out of range")
    if not base and datum.roots:
        raise ValidationError("base is empty but the datum has roots")
    if not base:
        return
    cols = QMat.from_rows(
        [[datum.roots[b][r] for b in base] for r in range(datum.rank)],
        cols=len(base),
    )
    for i, root in enumerate(datum.roots):
        sol = solve_linear(cols, root)
        if sol is None or sol[1].dim != 0:
            raise ValidationError(
                f"base is not independent or root {i} is outside its span"
            )
        coeffs = sol[0]
        if not coeffs.is_integral():
            raise ValidationError(f"root {i} is not an integer combination of the base")
        if any(c > 0 for c in coeffs) and any(c < 0 for c in coeffs):
            raise ValidationError(
                f"root {i} has mixed-sign coefficients over the base; not a base"
            )


def trivial_components(rank: int) -> ComponentAction:
    return ComponentAction(("1",), ((0,),), (QMat.identity(rank),))


def _validate_components(
    comp: ComponentAction, datum: RootDatum, base: tuple[int, ...], check_pinning: bool
) -> None:
    n = comp.size
    if n == 0:
        raise ValidationError("component group must be nonempty")
    if len(set(comp.labels)) != n:
        raise ValidationError("component labels must be distinct")
    if len(comp.table) != n or any(len(row) != n for row in comp.table):
        raise ValidationError("component table must be square of size |pi0|")
    for row in comp.table:
        for v in row:
            if not 0 <= v < n:
                raise ValidationError("component table entry out of range")
    for i in range(n):
        if len({comp.table[i][j] for j in range(n)}) != n:
            raise ValidationError(f"component table row {i} is not a permutation")
        if len({comp.table[j][i] for j in range(n)}) != n:
            raise ValidationError(f"component table column {i} is not a permutation")
    comp.identity_index()  # raises if absent
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if comp.table[comp.table[i][j]][k] != comp.table[i][comp.table[j][k]]:
                    raise ValidationError("component table is not associative")
    if len(comp.matrices) != n:
        raise ValidationError("component action must give one matrix per label")
    for i, m in enumerate(comp.matrices):
        if not (m.is_square() and m.rows == datum.rank):
            raise ValidationError(f"action matrix {comp.labels[i]} has wrong shape")
        if not m.is_integral():
            raise ValidationError(f"action matrix {comp.labels[i]} is not integral")
        if abs(m.det()) != 1:
            raise ValidationError(f"action matrix {comp.labels[i]} is not unimodular")
    for i in range(n):
        for j in range(n):
            if comp.matrices[i] @ comp.matrices[j] != comp.matrices[comp.table[i][j]]:
                raise ValidationError(
                    "component action is not a homomorphism against the table"
                )
    for i, m in enumerate(comp.matrices):
        if not _pairs_permuted(datum, m):
            raise ValidationError(
                f"action matrix {comp.labels[i]} does not permute the (root, coroot) pairs"
            )
    if check_pinning and base:
        base_set = {datum.roots[b].entries for b in base}
        for i, m in enumerate(comp.matrices):
            on_x = contragredient(m)
            image = {(on_x @ datum.roots[b]).entries for b in base}
            if image != base_set:
                raise ValidationError(
                    f"action matrix {comp.labels[i]} does not preserve the base (pinning)"
                )


def make_group(
    datum: RootDatum,
    components: Optional[ComponentAction] = None,
    base: Optional[Sequence[int]] = None,
    *,
    check_pinning: bool = True,
) -> GroupData:
    comp = components if components is not None else trivial_components(datum.rank)
    chosen_base = tuple(base) if base is not None else simple_roots_default(datum)
    _validate_base(datum, chosen_base)
    _validate_components(comp, datum, chosen_base, check_pinning)
    return GroupData(datum, comp, chosen_base)


def _reflection_generators(datum: RootDatum) -> list[QMat]:
    gens = []
    seen = set()
    for i in range(len(datum.roots)):
        s = reflection(datum, i)
        if s not in seen:
            seen.add(s)
            gens.append(s)
    return gens


@functools.lru_cache(maxsize=None)
def weyl_group(g: GroupData, cap: int = DEFAULT_CLOSURE_CAP) -> MatrixGroup:
    """Full Weyl group on Y: reflections and component matrices together."""
    gens = _reflection_generators(g.datum) + list(g.components.matrices)
    return group_closure(gens, cap=cap)


@functools.lru_cache(maxsize=None)
def connected_weyl_group(g: GroupData, cap: int = DEFAULT_CLOSURE_CAP) -> MatrixGroup:
    """Weyl group of the identity component: reflections only."""
    gens = _reflection_generators(g.datum) + [QMat.identity(g.rank)]
    return group_closure(gens, cap=cap)


def rational_characters(g: GroupData, cap: int = DEFAULT_CLOSURE_CAP) -> QSubspace:
    """Subspace of X_Q fixed by the contragredient Weyl action.

    The transposes of the Weyl generators generate the contragredient group
    as a set, so their fixed space is the one we want.
    """
    gens = weyl_group(g, cap).generators
    contra = MatrixGroup(
        g.rank,
        tuple(m.transpose() for m in gens),
        tuple(m.transpose() for m in gens),
    )
    return fixed_subspace(contra)


def central_cocharacters(g: GroupData, cap: int = DEFAULT_CLOSURE_CAP) -> QSubspace:
    """Subspace of Y_Q fixed by the full Weyl group."""
    return fixed_subspace(weyl_group(g, cap))


@functools.lru_cache(maxsize=None)
def trace_form(g: GroupData) -> QMat:
    """Integer symmetric PSD form on Y: sum over roots of root . root^T."""
    n = g.rank
    ent = [Fraction(0)] * (n * n)
    for alpha in g.datum.roots:
        for r in range(n):
            ar = alpha[r]
            if ar == 0:
                continue
            for c in range(n):
                ent[r * n + c] += ar * alpha[c]
    return QMat(n, n, tuple(ent))


def trace_character(g: GroupData, cochar: QVec) -> QVec:
    """Character paired with a cocharacter under the trace form: sum over
    roots of <cochar, root> root."""
    return trace_form(g) @ cochar


def trace_form_kernel(g: GroupData) -> QSubspace:
    return kernel(trace_form(g))


def parabolic(g: GroupData, cochar: QVec, cap: int = DEFAULT_CLOSURE_CAP) -> ParabolicData:
    """Parabolic data of a rational cocharacter."""
    if cochar.dim != g.rank:
        raise ValidationError(f"cocharacter dim {cochar.dim} does not match rank {g.rank}")
    para = []
    levi = []
    for i, alpha in enumerate(g.datum.roots):
        pairing = cochar.dot(alpha)
        if pairing >= 0:
            para.append(i)
        if pairing == 0:
            levi.append(i)
    stab = [w for w in weyl_group(g, cap) if w @ cochar == cochar]
    levi_weyl = MatrixGroup(g.rank, tuple(sorted(stab, key=lambda m: m.entries)), tuple(stab))
    return ParabolicData(cochar, tuple(para), tuple(levi), levi_weyl)


def invariant_norm(g: GroupData, seed: QMat, cap: int = DEFAULT_CLOSURE_CAP) -> InvariantNorm:
    """Average w^T . seed . w over the full Weyl group.

    The result is Weyl-invariant and stays positive definite because
    averaging positive definite forms preserves positive definiteness.
    """
    if not (seed.is_square() and seed.rows == g.rank):
        raise SeedNotPD(f"seed must be a {g.rank}x{g.rank} matrix")
    try:
        check_positive_definite(seed)
    except NotPositiveDefinite as exc:
        raise SeedNotPD(str(exc)) from exc
    w = weyl_group(g, cap)
    n = g.rank
    total = QMat.zero(n, n)
    for m in w:
        total = total + (m.transpose() @ seed @ m)
    gram = Fraction(1, w.order) * total
    check_positive_definite(gram)
    return InvariantNorm(gram)


@functools.lru_cache(maxsize=None)
def dual_gram(norm: InvariantNorm) -> QMat:
    """Inverse Gram matrix: the induced form on X_Q."""
    return norm.gram.inverse()


def dual_character(norm: InvariantNorm, cochar: QVec) -> QVec:
    """Character dual to a cocharacter under the norm: gram . cochar.

    For any w fixing the cocharacter, (w^{-1})^T fixes the output, because
    the gram matrix intertwines w with its contragredient.
    """
    return norm.gram @ cochar


def levi_subgroup_data(
    g: GroupData, cochar: QVec, cap: int = DEFAULT_CLOSURE_CAP
) -> tuple[GroupData, tuple[int, ...]]:
    """Group data of the Levi attached to a cocharacter.

    Roots are the ones the cocharacter kills; the component group is the
    stabilizer of the cocharacter inside the ambient component group. The
    returned index tuple locates the retained components in the ambient
    labels. Pinning revalidation is skipped: restricted matrices permute the
    Levi roots but need not preserve any particular Levi base, and the
    generated Weyl group does not depend on that choice.
    """
    if cochar.dim != g.rank:
        raise ValidationError(f"cocharacter dim {cochar.dim} does not match rank {g.rank}")
    levi_idx = [i for i, alpha in enumerate(g.datum.roots) if cochar.dot(alpha) == 0]
    datum = RootDatum(
        g.rank,
        tuple(g.datum.roots[i] for i in levi_idx),
        tuple(g.datum.coroots[i] for i in levi_idx),
    )
    comp = g.components
    stab = [a for a in range(comp.size) if comp.matrices[a] @ cochar == cochar]
    pos = {a: k for k, a in enumerate(stab)}
    table = tuple(
        tuple(pos[comp.table[a][b]] for b in stab) for a in stab
    )
    sub = ComponentAction(
        tuple(comp.labels[a] for a in stab),
        table,
        tuple(comp.matrices[a] for a in stab),
    )
    base = simple_roots_default(datum)
    return GroupData(datum, sub, base), tuple(stab)
