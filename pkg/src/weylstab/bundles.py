"""Semistability of split and Levi-induced principal bundles.

A split bundle is induced from the maximal torus and is determined by its
multidegree, a rational cocharacter. Three independent semistability routes
are kept: the closed-form root-pairing test, a brute-force sweep of the
dominant-cone test vectors against the trace pairing, and the adjoint-degree
multiset. A Levi-induced bundle carries an inner degree over the Levi and is
semistable iff the inner bundle is semistable and its degree is adapted to
the inclusion.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from .changegroup import RationalDegree, is_adapted, make_degree, make_hom
from .errors import ValidationError
from .linalg import DEFAULT_CLOSURE_CAP, QMat, QVec, kernel, qvec
from .rootdata import (
    GroupData,
    InvariantNorm,
    dual_gram,
    levi_subgroup_data,
    trace_form,
    weyl_group,
)

__all__ = [
    "SplitBundle",
    "LeviInducedBundle",
    "Destabilizer",
    "make_split_bundle",
    "make_levi_bundle",
    "adjoint_degrees",
    "split_semistable",
    "split_semistable_bruteforce",
    "adjoint_semistable",
    "filtration_weight",
    "filtration_weight_decomposed",
    "canonical_destabilizer",
    "levi_induced_semistable",
]


@dataclass(frozen=True)
class SplitBundle:
    group: GroupData
    degree: QVec  # multidegree of the torus reduction, in Y_Q


@dataclass(frozen=True)
class LeviInducedBundle:
    group: GroupData
    levi_cochar: QVec
    levi: GroupData
    levi_components: tuple[int, ...]  # ambient indices of the retained components
    inner: RationalDegree
    inner_semistable: Optional[bool]


@dataclass(frozen=True)
class Destabilizer:
    cochar: QVec
    norm_sq: Fraction


def make_split_bundle(group: GroupData, degree: Sequence | QVec) -> SplitBundle:
    d = degree if isinstance(degree, QVec) else qvec(degree)
    if d.dim != group.rank:
        raise ValidationError(f"multidegree dim {d.dim} does not match rank {group.rank}")
    return SplitBundle(group, d)


def make_levi_bundle(
    group: GroupData,
    levi_cochar: Sequence | QVec,
    inner_subgroup,
    inner_vector: Sequence | QVec,
    inner_semistable: Optional[bool],
    cap: int = DEFAULT_CLOSURE_CAP,
) -> LeviInducedBundle:
    lam = levi_cochar if isinstance(levi_cochar, QVec) else qvec(levi_cochar)
    if lam.dim != group.rank:
        raise ValidationError(f"Levi cocharacter dim {lam.dim} does not match rank {group.rank}")
    levi, retained = levi_subgroup_data(group, lam, cap)
    inner = make_degree(levi, inner_subgroup, inner_vector, cap)
    if inner_semistable is None and levi.datum.roots:
        raise ValidationError(
            "inner_semistable must be given: the Levi has roots, so inner "
            "semistability is not derivable"
        )
    if inner_semistable is False and not levi.datum.roots:
        raise ValidationError(
            "inner_semistable=false contradicts a torus Levi, over which "
            "every bundle is semistable"
        )
    return LeviInducedBundle(group, lam, levi, retained, inner, inner_semistable)


def adjoint_degrees(b: SplitBundle) -> tuple[Fraction, ...]:
    """Degrees of the adjoint line summands: one pairing per root plus a
    zero per Cartan direction; returned sorted as a canonical multiset."""
    degs = [b.degree.dot(alpha) for alpha in b.group.datum.roots]
    degs.extend([Fraction(0)] * b.group.rank)
    return tuple(sorted(degs))


def split_semistable(b: SplitBundle) -> bool:
    """Closed form: semistable iff the multidegree kills every root."""
    return all(b.degree.dot(alpha) == 0 for alpha in b.group.datum.roots)


def adjoint_semistable(b: SplitBundle) -> bool:
    """Adjoint route: semistable iff the adjoint degree multiset is all zero."""
    return all(d == 0 for d in adjoint_degrees(b))


@functools.lru_cache(maxsize=None)
def _cone_test_vectors(g: GroupData, cap: int = DEFAULT_CLOSURE_CAP) -> tuple[QVec, ...]:
    """Test cocharacters: the Weyl orbit of the fundamental coweights of the
    declared base plus both signs of a central basis.

    Fundamental coweights are cleared to integer vectors; positive scaling
    does not move them out of the dominant cone.
    """
    base = g.base
    vectors: list[QVec] = []
    if base:
        k = len(base)
        cartan = QMat.from_rows(
            [
                [g.datum.coroots[bi].dot(g.datum.roots[bj]) for bj in base]
                for bi in base
            ]
        )
        inv = cartan.transpose().inverse()
        for j in range(k):
            coeffs = inv.col(j)
            omega = QVec.zero(g.rank)
            for i, bi in enumerate(base):
                omega = omega + coeffs[i] * g.datum.coroots[bi]
            scale = lcm(*(c.denominator for c in omega.entries))
            vectors.append(Fraction(scale) * omega)
    for v in kernel(trace_form(g)).basis_vectors():
        vectors.append(v)
        vectors.append(-v)
    orbit: set[QVec] = set()
    w = weyl_group(g, cap)
    for v in vectors:
        for m in w:
            orbit.add(m @ v)
    return tuple(sorted(orbit, key=lambda v: v.entries))


def split_semistable_bruteforce(b: SplitBundle, cap: int = DEFAULT_CLOSURE_CAP) -> bool:
    """Sweep route: no test cocharacter pairs positively with the multidegree.

    The decided double loop (dominant test vectors against all Weyl
    translates of the multidegree) folds into a single pass because the
    trace pairing is Weyl-invariant and the test set is Weyl-closed.
    """
    a = trace_form(b.group)
    target = a @ b.degree
    return all(lam.dot(target) <= 0 for lam in _cone_test_vectors(b.group, cap))


def filtration_weight(g: GroupData, cochar: QVec, degree: QVec) -> Fraction:
    """Weight of the degree filtration along a cocharacter: (cochar, degree)
    under the trace form."""
    return (trace_form(g) @ degree).dot(cochar)


def filtration_weight_decomposed(b: SplitBundle, cochar: QVec) -> Fraction:
    """Same weight assembled root by root from the adjoint degrees."""
    total = Fraction(0)
    for alpha in b.group.datum.roots:
        total += cochar.dot(alpha) * b.degree.dot(alpha)
    return total


def canonical_destabilizer(
    b: SplitBundle, norm: InvariantNorm, cap: int = DEFAULT_CLOSURE_CAP
) -> Optional[Destabilizer]:
    """Norm-optimal destabilizing cocharacter, or None when semistable.

    For each Weyl translate of the multidegree, the candidate is the norm
    dual of its trace character; the scaling identity
    (lambda, lambda)_norm = (translate, lambda)_trace holds exactly by
    construction and is asserted. Ties in the squared norm break toward the
    lexicographically greatest candidate.
    """
    a = trace_form(b.group)
    binv = dual_gram(norm)
    best: Optional[QVec] = None
    best_val = Fraction(0)
    for m in weyl_group(b.group, cap):
        v = a @ (m @ b.degree)
        lam = binv @ v
        val = v.dot(lam)
        assert norm.norm_sq(lam) == lam.dot(v)  # exact scaling identity
        if val > best_val or (
            val == best_val and val > 0 and (best is None or lam.entries > best.entries)
        ):
            best, best_val = lam, val
    if best is None or best_val == 0:
        return None
    return Destabilizer(best, best_val)


def levi_induced_semistable(b: LeviInducedBundle, cap: int = DEFAULT_CLOSURE_CAP) -> bool:
    """Semistable iff the inner bundle is semistable and the inner degree is
    adapted to the Levi inclusion."""
    if b.inner_semistable is None:
        inner_ss = True  # torus Levi: every bundle over it is semistable
    else:
        inner_ss = b.inner_semistable
    inclusion = make_hom(
        b.levi,
        b.group,
        QMat.identity(b.group.rank),
        tuple(b.levi_components),
        cap=cap,
    )
    return inner_ss and is_adapted(inclusion, b.inner, cap)
