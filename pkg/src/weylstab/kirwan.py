"""Instability stratification of linearized torus actions.

A linearized action is a weight list in the character space, a Weyl-fixed
rational shift, and an invariant norm. Points of the underlying projective
space enter only through their support pattern: the set of weight indices
where a coordinate is nonzero. The per-point operations require the identity
component to be a torus; the component group may be arbitrary, and every
classification loops over the component translates of the support as a
built-in consistency check (the translates provably agree for valid input).

The stratification attaches to each support pattern an instability label:
the Weyl-canonical nearest point of the shifted weight hull to the origin.
verify_recursion re-derives each label through the shifted linearization on
the stratum centre and compares.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .convex import (
    check_positive_definite,
    min_norm_point,
    origin_in_hull,
    origin_in_interior,
    origin_in_relative_interior,
)
from .errors import (
    CapExceeded,
    InvariantBroken,
    NonAbelianIdentityComponent,
    ValidationError,
)
from .linalg import DEFAULT_CLOSURE_CAP, QMat, QVec, qvec
from .rootdata import (
    GroupData,
    InvariantNorm,
    ParabolicData,
    contragredient,
    dual_gram,
    levi_subgroup_data,
    parabolic,
    weyl_group,
)

__all__ = [
    "LinearizedAction",
    "StratumData",
    "make_action",
    "hilbert_mumford_weight",
    "is_semistable",
    "is_stable",
    "is_polystable",
    "instability",
    "candidate_strata",
    "stratify_supports",
    "verify_recursion",
    "DEFAULT_SUBSET_CAP",
    "DEFAULT_PATTERN_CAP",
]

DEFAULT_SUBSET_CAP = 2**20
DEFAULT_PATTERN_CAP = 2**16


@dataclass(frozen=True)
class LinearizedAction:
    group: GroupData
    weights: tuple[QVec, ...]
    shift: QVec
    norm: InvariantNorm


@dataclass(frozen=True)
class StratumData:
    """One instability stratum: canonical label in X_Q, its dual cocharacter,
    squared norm level, centre and attractor weight indices, the parabolic of
    the cocharacter, and the shift of the recursion linearization."""

    label: QVec
    cochar: QVec
    level: Fraction
    centre_indices: tuple[int, ...]
    attractor_indices: tuple[int, ...]
    parabolic: ParabolicData
    shifted_shift: QVec


def make_action(
    group: GroupData,
    weights: Sequence[Sequence] | Sequence[QVec],
    shift: Sequence | QVec,
    norm: InvariantNorm,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> LinearizedAction:
    wvecs = tuple(w if isinstance(w, QVec) else qvec(w) for w in weights)
    if not wvecs:
        raise ValidationError("action needs at least one weight")
    for w in wvecs:
        if w.dim != group.rank:
            raise ValidationError(f"weight dim {w.dim} does not match rank {group.rank}")
        if not w.is_integral():
            raise ValidationError("weights must be integer vectors")
    sh = shift if isinstance(shift, QVec) else qvec(shift)
    if sh.dim != group.rank:
        raise ValidationError(f"shift dim {sh.dim} does not match rank {group.rank}")
    check_positive_definite(norm.gram)
    wgens = weyl_group(group, cap).generators
    multiset = sorted(w.entries for w in wvecs)
    for gen in wgens:
        u = contragredient(gen)
        if sorted((u @ w).entries for w in wvecs) != multiset:
            raise ValidationError(
                "the contragredient Weyl action does not permute the weight multiset"
            )
        if u @ sh != sh:
            raise ValidationError("shift is not fixed by the contragredient Weyl action")
        if gen.transpose() @ norm.gram @ gen != norm.gram:
            raise ValidationError("norm is not Weyl-invariant")
    return LinearizedAction(group, wvecs, sh, norm)


def _require_torus(act: LinearizedAction) -> None:
    if act.group.datum.roots:
        raise NonAbelianIdentityComponent(
            "support-pattern classification needs a torus identity component"
        )


def _check_support(act: LinearizedAction, support: Iterable[int]) -> frozenset[int]:
    s = frozenset(support)
    if not s:
        raise ValidationError("support pattern must be nonempty")
    for i in s:
        if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < len(act.weights):
            raise ValidationError(f"support index {i!r} out of range")
    return s


@functools.lru_cache(maxsize=None)
def _translate_perms(act: LinearizedAction) -> tuple[tuple[int, ...], ...]:
    """Index permutation of the weight multiset under each component element."""
    perms = []
    for m in act.group.components.matrices:
        u = contragredient(m)
        used = [False] * len(act.weights)
        perm = []
        for w in act.weights:
            img = u @ w
            j = next(
                k
                for k, cand in enumerate(act.weights)
                if not used[k] and cand == img
            )
            used[j] = True
            perm.append(j)
        perms.append(tuple(perm))
    return tuple(perms)


def hilbert_mumford_weight(
    act: LinearizedAction, support: Iterable[int], cochar: QVec
) -> Fraction:
    """min over the support of <cochar, weight> minus <cochar, shift>."""
    s = _check_support(act, support)
    if cochar.dim != act.group.rank:
        raise ValidationError("cocharacter dimension does not match the action")
    return min(cochar.dot(act.weights[i]) for i in s) - cochar.dot(act.shift)


def _translated_supports(
    act: LinearizedAction, s: frozenset[int]
) -> list[frozenset[int]]:
    return [frozenset(perm[i] for i in s) for perm in _translate_perms(act)]


def _shifted_points(act: LinearizedAction, s: frozenset[int]) -> list[QVec]:
    return [act.weights[i] - act.shift for i in sorted(s)]


def _classify(act: LinearizedAction, support: Iterable[int], test) -> bool:
    _require_torus(act)
    s = _check_support(act, support)
    answers = [test(_shifted_points(act, t)) for t in _translated_supports(act, s)]
    if any(a != answers[0] for a in answers):
        raise InvariantBroken("component translates disagree on a classification")
    return answers[0]


def is_semistable(act: LinearizedAction, support: Iterable[int]) -> bool:
    """Semistable iff 0 lies in the shifted weight hull of every translate."""
    return _classify(act, support, origin_in_hull)


def is_stable(act: LinearizedAction, support: Iterable[int]) -> bool:
    """Stable iff the shifted hull is full-dimensional with 0 interior."""
    return _classify(act, support, origin_in_interior)


def is_polystable(act: LinearizedAction, support: Iterable[int]) -> bool:
    """Polystable iff 0 lies in the relative interior of the shifted hull."""
    return _classify(act, support, origin_in_relative_interior)


@functools.lru_cache(maxsize=None)
def _cached_min_norm(points: tuple[QVec, ...], gram: QMat) -> QVec:
    return min_norm_point(points, gram)


def _canonical_orbit_rep(g: GroupData, v: QVec, cap: int) -> QVec:
    """Lexicographically greatest member of the contragredient Weyl orbit."""
    best = None
    for m in weyl_group(g, cap):
        img = contragredient(m) @ v
        if best is None or img.entries > best.entries:
            best = img
    return best


def _stratum_from_label(
    act: LinearizedAction, label: QVec, cap: int
) -> StratumData:
    binv = dual_gram(act.norm)
    cochar = binv @ label
    level = label.dot(cochar)
    centre = []
    attractor = []
    for i, w in enumerate(act.weights):
        pairing = cochar.dot(w - act.shift)
        if pairing == level:
            centre.append(i)
        if pairing >= level:
            attractor.append(i)
    return StratumData(
        label,
        cochar,
        level,
        tuple(centre),
        tuple(attractor),
        parabolic(act.group, cochar, cap),
        act.shift + label,
    )


@functools.lru_cache(maxsize=None)
def _instability_cached(
    act: LinearizedAction, s: frozenset[int], cap: int
) -> StratumData:
    binv = dual_gram(act.norm)
    labels = set()
    for t in _translated_supports(act, s):
        pts = tuple(sorted(_shifted_points(act, t), key=lambda p: p.entries))
        beta = _cached_min_norm(pts, binv)
        labels.add(_canonical_orbit_rep(act.group, beta, cap))
    if len(labels) != 1:
        raise InvariantBroken("component translates disagree on the instability label")
    return _stratum_from_label(act, labels.pop(), cap)


def instability(
    act: LinearizedAction, support: Iterable[int], cap: int = DEFAULT_CLOSURE_CAP
) -> StratumData:
    """Instability stratum of a support pattern.

    The label is the Weyl-canonicalized nearest point of the shifted hull to
    the origin, computed for every component translate; the translates must
    agree because the contragredient action is an isometry permuting the
    weights.
    """
    _require_torus(act)
    s = _check_support(act, support)
    return _instability_cached(act, s, cap)


def candidate_strata(
    act: LinearizedAction,
    cap_subsets: int = DEFAULT_SUBSET_CAP,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> tuple[StratumData, ...]:
    """All candidate labels: nearest points of hulls of subsets of the
    distinct shifted weights, deduplicated up to the Weyl action, plus the
    zero label. Sorted by descending level, then ascending label."""
    distinct: list[QVec] = []
    seen: set[QVec] = set()
    for w in act.weights:
        p = w - act.shift
        if p not in seen:
            seen.add(p)
            distinct.append(p)
    count = 2 ** len(distinct) - 1
    if count > cap_subsets:
        raise CapExceeded(
            f"candidate enumeration needs {count} subsets, cap is {cap_subsets}"
        )
    binv = dual_gram(act.norm)
    labels: set[QVec] = {QVec.zero(act.group.rank)}
    n = len(distinct)
    for mask in range(1, 2**n):
        subset = tuple(
            sorted(
                (distinct[i] for i in range(n) if mask >> i & 1),
                key=lambda p: p.entries,
            )
        )
        beta = _cached_min_norm(subset, binv)
        labels.add(_canonical_orbit_rep(act.group, beta, cap))
    strata = [_stratum_from_label(act, lab, cap) for lab in labels]
    strata.sort(key=lambda s: s.label.entries)
    strata.sort(key=lambda s: s.level, reverse=True)
    return tuple(strata)


def stratify_supports(
    act: LinearizedAction,
    cap_patterns: int = DEFAULT_PATTERN_CAP,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> dict[frozenset[int], StratumData]:
    """Classify every nonempty support pattern.

    Verifies the partition is closure-monotone: removing an index from a
    pattern can only raise (or keep) the instability level, because the hull
    shrinks. A violation would falsify the nearest-point computation, so it
    is raised as InvariantBroken rather than returned.
    """
    _require_torus(act)
    n = len(act.weights)
    count = 2**n - 1
    if count > cap_patterns:
        raise CapExceeded(
            f"stratification needs {count} patterns, cap is {cap_patterns}"
        )
    out: dict[frozenset[int], StratumData] = {}
    for mask in range(1, 2**n):
        s = frozenset(i for i in range(n) if mask >> i & 1)
        out[s] = _instability_cached(act, s, cap)
    for s, stratum in out.items():
        if len(s) < 2:
            continue
        for i in sorted(s):
            sub = out[s - {i}]
            if sub.level < stratum.level:
                raise InvariantBroken(
                    "closure monotonicity failed: a sub-pattern has lower level"
                )
    return out


def verify_recursion(
    act: LinearizedAction,
    stratum: StratumData,
    cap_patterns: int = DEFAULT_PATTERN_CAP,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> bool:
    """Re-derive stratum membership through the shifted centre linearization.

    Builds the centre action (weights restricted to the centre indices,
    shift moved by the label, component group cut down to the stabilizer of
    the cocharacter, same norm) and checks: a nonempty pattern inside the
    centre is semistable there iff its ambient instability label is exactly
    this stratum's label.
    """
    _require_torus(act)
    centre = stratum.centre_indices
    if not centre:
        return True
    if 2 ** len(centre) - 1 > cap_patterns:
        raise CapExceeded("centre pattern enumeration exceeds the cap")
    centre_group, _ = levi_subgroup_data(act.group, stratum.cochar, cap)
    centre_weights = [act.weights[i] for i in centre]
    centre_act = make_action(
        centre_group, centre_weights, stratum.shifted_shift, act.norm, cap
    )
    pos = {amb: k for k, amb in enumerate(centre)}
    m = len(centre)
    for mask in range(1, 2**m):
        ambient = frozenset(centre[i] for i in range(m) if mask >> i & 1)
        local = frozenset(pos[i] for i in ambient)
        centre_ss = is_semistable(centre_act, local)
        ambient_label = _instability_cached(act, ambient, cap).label
        if centre_ss != (ambient_label == stratum.label):
            return False
    return True
