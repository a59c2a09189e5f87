"""Homomorphisms between group presentations and rational bundle degrees.

A homomorphism is declared by its torus part (an integer matrix between
cocharacter lattices) and its component part (a map of component groups).
A rational degree is the bundle invariant [F, d]: a subgroup F of the
component group together with a Weyl-invariant rational cocharacter d.
The operations decide adaptedness of a degree along a homomorphism and
produce a destabilizing one-parameter witness when adaptedness fails.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    GroupMismatch,
    InvariantBroken,
    NotASubgroup,
    ValidationError,
)
from .linalg import DEFAULT_CLOSURE_CAP, MatrixGroup, QMat, QVec, group_closure, qvec
from .rootdata import (
    GroupData,
    ParabolicData,
    _reflection_generators,
    connected_weyl_group,
    parabolic,
    trace_form,
)

__all__ = [
    "HomData",
    "RationalDegree",
    "DestabilizingWitness",
    "make_hom",
    "compose_hom",
    "make_degree",
    "weyl_of_subgroup",
    "degrees_equivalent",
    "push_degree",
    "is_adapted",
    "destabilizing_witness",
]


@dataclass(frozen=True)
class HomData:
    """Torus part tau: Y_source -> Y_target and component part phi0."""

    source: GroupData
    target: GroupData
    tau: QMat
    phi0: tuple[int, ...]


@dataclass(frozen=True)
class RationalDegree:
    """Bundle degree [F, d]: component subgroup F and invariant cocharacter d."""

    group: GroupData
    subgroup: tuple[int, ...]
    cochar: QVec


@dataclass(frozen=True)
class DestabilizingWitness:
    cochar: QVec
    parabolic: ParabolicData
    weight: Fraction


def _resolve_component_indices(
    g: GroupData, items: Iterable[Union[int, str]]
) -> tuple[int, ...]:
    labels = g.components.labels
    out = []
    for item in items:
        if isinstance(item, str):
            if item not in labels:
                raise ValidationError(f"unknown component label {item!r}")
            out.append(labels.index(item))
        elif isinstance(item, int) and not isinstance(item, bool):
            if not 0 <= item < len(labels):
                raise ValidationError(f"component index {item} out of range")
            out.append(item)
        else:
            raise ValidationError(f"component reference must be a label or index: {item!r}")
    return tuple(sorted(set(out)))


def make_hom(
    source: GroupData,
    target: GroupData,
    tau: QMat,
    phi0: Union[dict[str, str], Sequence[int], None] = None,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> HomData:
    """Validate and build a homomorphism.

    The torus part must be integral of shape rank(target) x rank(source) and
    must intertwine the declared component actions up to the connected Weyl
    group of the target: the target's component action is only canonical up
    to inner reflections, so literal equality is too strong a demand.
    """
    if tau.rows != target.rank or tau.cols != source.rank:
        raise ValidationError(
            f"tau must be {target.rank}x{source.rank}, got {tau.rows}x{tau.cols}"
        )
    if not tau.is_integral():
        raise ValidationError("tau must be an integer matrix")

    ns = source.components.size
    if phi0 is None:
        if ns != 1:
            raise ValidationError("phi0 is required when the source has components")
        mapped = (target.components.identity_index(),)
    elif isinstance(phi0, dict):
        tgt_labels = target.components.labels
        mapped_list = []
        for lab in source.components.labels:
            if lab not in phi0:
                raise ValidationError(f"phi0 missing source label {lab!r}")
            tgt = phi0[lab]
            if tgt not in tgt_labels:
                raise ValidationError(f"phi0 maps to unknown target label {tgt!r}")
            mapped_list.append(tgt_labels.index(tgt))
        mapped = tuple(mapped_list)
    else:
        mapped = tuple(phi0)
        if len(mapped) != ns:
            raise ValidationError("phi0 must map every source component")
        for v in mapped:
            if not 0 <= v < target.components.size:
                raise ValidationError(f"phi0 index {v} out of range in target")

    stab = source.components.table
    ttab = target.components.table
    for i in range(ns):
        for j in range(ns):
            if mapped[stab[i][j]] != ttab[mapped[i]][mapped[j]]:
                raise ValidationError("phi0 is not a group homomorphism")

    inner = connected_weyl_group(target, cap)
    for a in range(ns):
        lhs = tau @ source.components.matrices[a]
        head = target.components.matrices[mapped[a]]
        if not any(head @ w @ tau == lhs for w in inner):
            raise ValidationError(
                f"tau does not intertwine the component actions at "
                f"{source.components.labels[a]!r}, even up to inner reflections"
            )
    return HomData(source, target, tau, mapped)


def compose_hom(outer: HomData, inner: HomData, cap: int = DEFAULT_CLOSURE_CAP) -> HomData:
    if inner.target != outer.source:
        raise GroupMismatch("homomorphisms do not compose: middle groups differ")
    return make_hom(
        inner.source,
        outer.target,
        outer.tau @ inner.tau,
        tuple(outer.phi0[i] for i in inner.phi0),
        cap=cap,
    )


@functools.lru_cache(maxsize=None)
def weyl_of_subgroup(
    g: GroupData, subgroup: tuple[int, ...], cap: int = DEFAULT_CLOSURE_CAP
) -> MatrixGroup:
    """Weyl group of the open subgroup G^F: reflections plus the F-action."""
    if not g.components.is_subgroup(subgroup):
        raise NotASubgroup(
            f"component indices {tuple(subgroup)} are not a subgroup of pi0"
        )
    gens = _reflection_generators(g.datum) + [
        g.components.matrices[a] for a in subgroup
    ]
    return group_closure(gens, cap=cap)


def make_degree(
    group: GroupData,
    subgroup: Iterable[Union[int, str]],
    cochar: Sequence | QVec,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> RationalDegree:
    """Validate [F, d]: F a subgroup of pi0 and d fixed by the Weyl group of G^F."""
    f = _resolve_component_indices(group, subgroup)
    d = cochar if isinstance(cochar, QVec) else qvec(cochar)
    if d.dim != group.rank:
        raise ValidationError(f"degree vector dim {d.dim} does not match rank {group.rank}")
    w = weyl_of_subgroup(group, f, cap)  # raises NotASubgroup
    for gen in w.generators:
        if gen @ d != d:
            raise ValidationError(
                "degree vector is not invariant under the Weyl group of G^F"
            )
    return RationalDegree(group, f, d)


def degrees_equivalent(
    a: RationalDegree, b: RationalDegree, cap: int = DEFAULT_CLOSURE_CAP
) -> bool:
    """Are two degrees conjugate under the ambient component group?"""
    if a.group != b.group:
        raise GroupMismatch("degrees live over different groups")
    comp = a.group.components
    fb = set(b.subgroup)
    for c in range(comp.size):
        cinv = comp.inverse_index(c)
        conj = {comp.table[comp.table[c][f]][cinv] for f in a.subgroup}
        if conj != fb:
            continue
        if comp.matrices[c] @ a.cochar == b.cochar:
            return True
    return False


def push_degree(f: HomData, deg: RationalDegree, cap: int = DEFAULT_CLOSURE_CAP) -> RationalDegree:
    """Pushforward (phi0(F), tau . d) along f.

    The image vector must itself satisfy the degree invariant over the
    target; failure means the homomorphism data and the degree are mutually
    inconsistent, reported as InvariantBroken rather than silently projected.
    """
    if deg.group != f.source:
        raise GroupMismatch("degree is not over the source of the homomorphism")
    image_f = tuple(sorted({f.phi0[a] for a in deg.subgroup}))
    image_d = f.tau @ deg.cochar
    w = weyl_of_subgroup(f.target, image_f, cap)
    for gen in w.generators:
        if gen @ image_d != image_d:
            raise InvariantBroken(
                "pushed degree is not invariant under the target Weyl group; "
                "homomorphism and degree data are inconsistent"
            )
    return RationalDegree(f.target, image_f, image_d)


def is_adapted(f: HomData, deg: RationalDegree, cap: int = DEFAULT_CLOSURE_CAP) -> bool:
    """Does the pushed degree land centrally in the target?

    Two routes are computed and must agree: centrality for the open target
    subgroup (root pairings vanish and the pushed vector is fixed by the
    image components) and centrality for the identity component alone (root
    pairings vanish). Validated inputs force the fixedness half whenever the
    root pairings vanish, so a disagreement means corrupted data.
    """
    if deg.group != f.source:
        raise GroupMismatch("degree is not over the source of the homomorphism")
    image_d = f.tau @ deg.cochar
    root_kill = all(image_d.dot(beta) == 0 for beta in f.target.datum.roots)
    comp_fixed = all(
        f.target.components.matrices[f.phi0[a]] @ image_d == image_d
        for a in deg.subgroup
    )
    central_in_open = root_kill and comp_fixed
    central_in_identity = root_kill
    assert central_in_open == central_in_identity, (
        "adaptedness routes disagree on validated input"
    )
    return central_in_open


def destabilizing_witness(
    f: HomData, deg: RationalDegree, cap: int = DEFAULT_CLOSURE_CAP
) -> DestabilizingWitness:
    """One-parameter subgroup witnessing non-adaptedness.

    The witness is the pushed vector itself; its parabolic contains it as a
    dominant cocharacter and its trace-form self-pairing is positive exactly
    when adaptedness fails.
    """
    if deg.group != f.source:
        raise GroupMismatch("degree is not over the source of the homomorphism")
    lam = f.tau @ deg.cochar
    pdata = parabolic(f.target, lam, cap)
    weight = (trace_form(f.target) @ lam).dot(lam)
    return DestabilizingWitness(lam, pdata, weight)
