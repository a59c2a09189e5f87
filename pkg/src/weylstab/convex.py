"""Exact convex geometry over the rationals.

Hull membership, relative-interior tests, and the nearest point to the
origin under a positive definite bilinear form. Two independent nearest-point
routes are kept deliberately: an exhaustive face-enumeration oracle and an
exact active-set descent (Wolfe's algorithm run on Fractions). The membership
and interior tests go through Caratheodory enumeration and do not depend on
either nearest-point route.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionMismatch, NotPositiveDefinite, ValidationError
from .linalg import QMat, QSubspace, QVec, solve_linear

__all__ = [
    "check_positive_definite",
    "q_dot",
    "q_normsq",
    "unique_points",
    "affine_dim",
    "origin_in_hull",
    "origin_in_relative_interior",
    "origin_in_interior",
    "min_norm_point",
    "min_norm_point_exhaustive",
    "min_norm_point_active_set",
    "is_nearest_point",
]

BRUTEFORCE_LIMIT = 12


def check_positive_definite(gram: QMat) -> None:
    """Sylvester's criterion on a symmetric matrix; exact, no eigenvalues."""
    if not gram.is_square():
        raise NotPositiveDefinite("form matrix is not square")
    if not gram.is_symmetric():
        raise NotPositiveDefinite("form matrix is not symmetric")
    for k in range(1, gram.rows + 1):
        minor = QMat(
            k, k, tuple(gram.at(i, j) for i in range(k) for j in range(k))
        )
        if minor.det() <= 0:
            raise NotPositiveDefinite(
                f"leading principal minor of order {k} is not positive"
            )


def q_dot(u: QVec, v: QVec, gram: QMat) -> Fraction:
    return (gram @ v).dot(u)


def q_normsq(v: QVec, gram: QMat) -> Fraction:
    return q_dot(v, v, gram)


def unique_points(points: Sequence[QVec]) -> list[QVec]:
    seen: set[QVec] = set()
    out: list[QVec] = []
    for p in points:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def _check_points(points: Sequence[QVec]) -> int:
    if not points:
        raise ValidationError("need at least one point")
    dim = points[0].dim
    if any(p.dim != dim for p in points):
        raise DimensionMismatch("points have unequal dimensions")
    return dim


def affine_dim(points: Sequence[QVec]) -> int:
    """Dimension of the affine hull of the points."""
    dim = _check_points(points)
    base = points[0]
    return QSubspace.span([p - base for p in points[1:]], dim).dim


def _barycentric_solve(
    points: Sequence[QVec], idxs: Sequence[int]
) -> Optional[tuple[list[Fraction], bool]]:
    """Solve sum t_i p_i = 0, sum t_i = 1 over the chosen points.

    Returns (t, unique) or None when the affine hull of the subset misses
    the origin. unique is False exactly when the subset is affinely
    dependent, in which case t is just one representation of the solution.
    """
    dim = points[0].dim
    rows = [[points[i][r] for i in idxs] for r in range(dim)]
    rows.append([Fraction(1)] * len(idxs))
    rhs = QVec((Fraction(0),) * dim + (Fraction(1),))
    sol = solve_linear(QMat.from_rows(rows, cols=len(idxs)), rhs)
    if sol is None:
        return None
    particular, ker = sol
    return list(particular.entries), ker.dim == 0


def _positive_cover(points: list[QVec]) -> Optional[set[int]]:
    """Union of positive supports over all nonnegative barycentric
    representations of the origin, or None when the origin is not in the hull.

    Caratheodory: every nonnegative representation reduces to one supported
    on an affinely independent subset, and the reduction can always be made
    to keep any chosen positive coefficient positive. So enumerating affinely
    independent subsets of size at most dim+1 sees the whole union.
    """
    dim = points[0].dim
    cover: set[int] = set()
    found = False
    max_size = min(len(points), dim + 1)
    for size in range(1, max_size + 1):
        for idxs in itertools.combinations(range(len(points)), size):
            sol = _barycentric_solve(points, idxs)
            if sol is None:
                continue
            t, uniq = sol
            if not uniq:
                continue  # dependent subset: covered by a smaller one
            if any(c < 0 for c in t):
                continue
            found = True
            cover.update(i for i, c in zip(idxs, t) if c > 0)
    return cover if found else None


def origin_in_hull(points: Sequence[QVec]) -> bool:
    _check_points(points)
    return _positive_cover(unique_points(points)) is not None


def origin_in_relative_interior(points: Sequence[QVec]) -> bool:
    """0 lies in the relative interior of conv(points) iff some barycentric
    representation of 0 puts positive weight on every distinct point."""
    _check_points(points)
    uniq = unique_points(points)
    cover = _positive_cover(uniq)
    return cover is not None and len(cover) == len(uniq)


def origin_in_interior(points: Sequence[QVec]) -> bool:
    dim = _check_points(points)
    return affine_dim(points) == dim and origin_in_relative_interior(points)


def is_nearest_point(points: Sequence[QVec], dual_gram: QMat, x: QVec) -> bool:
    """Exact variational certificate: <x, p - x> >= 0 for every p."""
    xnorm = q_normsq(x, dual_gram)
    return all(q_dot(x, p, dual_gram) >= xnorm for p in points)


def min_norm_point_exhaustive(points: Sequence[QVec], dual_gram: QMat) -> QVec:
    """Nearest point of conv(points) to the origin by face enumeration.

    The minimizer lies in the relative interior of its minimal face, hence
    equals the affine minimizer of some affinely independent subset with
    nonnegative barycentric coordinates; enumerate them all.
    """
    dim = _check_points(points)
    check_positive_definite(dual_gram)
    pts = unique_points(points)
    best: Optional[QVec] = None
    best_val: Optional[Fraction] = None
    max_size = min(len(pts), dim + 1)
    for size in range(1, max_size + 1):
        for idxs in itertools.combinations(range(len(pts)), size):
            sol = _affine_minimizer(pts, idxs, dual_gram)
            if sol is None:
                continue
            t, uniq = sol
            if not uniq or any(c < 0 for c in t):
                continue
            x = _combine(pts, idxs, t)
            val = q_normsq(x, dual_gram)
            if best_val is None or val < best_val:
                best, best_val = x, val
    assert best is not None  # singletons always qualify
    assert is_nearest_point(pts, dual_gram, best)
    return best


def _combine(points: Sequence[QVec], idxs: Sequence[int], t: Sequence[Fraction]) -> QVec:
    acc = QVec.zero(points[0].dim)
    for i, c in zip(idxs, t):
        if c != 0:
            acc = acc + c * points[i]
    return acc


def _affine_minimizer(
    points: Sequence[QVec], idxs: Sequence[int], gram: QMat
) -> Optional[tuple[list[Fraction], bool]]:
    """Minimize |sum t_i p_i|^2 subject to sum t_i = 1.

    Stationarity gives the bordered system G t = mu 1, 1' t = 1 with G the
    Gram matrix of the chosen points; it is always consistent, and singular
    exactly when the points are affinely dependent.
    """
    k = len(idxs)
    gmat = [
        [q_dot(points[a], points[b], gram) for b in idxs] for a in idxs
    ]
    rows = [gmat[i] + [Fraction(-1)] for i in range(k)]
    rows.append([Fraction(1)] * k + [Fraction(0)])
    rhs = QVec((Fraction(0),) * k + (Fraction(1),))
    sol = solve_linear(QMat.from_rows(rows, cols=k + 1), rhs)
    if sol is None:
        return None  # cannot happen for a genuine Gram matrix; defensive
    particular, ker = sol
    return list(particular.entries[:k]), ker.dim == 0


def min_norm_point_active_set(points: Sequence[QVec], dual_gram: QMat) -> QVec:
    """Wolfe's nearest-point algorithm in exact arithmetic.

    Major cycles add the most violating point to the corral; minor cycles
    step toward the affine minimizer of the corral, dropping points whose
    coefficient would turn negative. With Fractions every test is exact, so
    the classical finite-termination argument applies verbatim.
    """
    _check_points(points)
    check_positive_definite(dual_gram)
    pts = unique_points(points)

    norms = [q_normsq(p, dual_gram) for p in pts]
    start = min(range(len(pts)), key=lambda i: (norms[i], i))
    corral = [start]
    coeff = [Fraction(1)]
    x = pts[start]

    while True:
        xnorm = q_normsq(x, dual_gram)
        products = [q_dot(x, p, dual_gram) for p in pts]
        entering = min(range(len(pts)), key=lambda i: (products[i], i))
        if products[entering] >= xnorm:
            break
        # a strictly violating point cannot lie in aff(corral): every point
        # of that affine hull pairs with x to exactly |x|^2
        assert entering not in corral
        corral.append(entering)
        coeff.append(Fraction(0))
        while True:
            sol = _affine_minimizer(pts, corral, dual_gram)
            assert sol is not None
            t, uniq = sol
            assert uniq  # corral stays affinely independent
            if all(c >= 0 for c in t):
                coeff = t
                break
            theta = min(
                coeff[i] / (coeff[i] - t[i])
                for i in range(len(corral))
                if t[i] < 0
            )
            coeff = [
                (1 - theta) * c + theta * ti for c, ti in zip(coeff, t)
            ]
            keep = [i for i in range(len(corral)) if coeff[i] > 0 or t[i] >= 0]
            # at least one coefficient hits zero and leaves
            assert len(keep) < len(corral)
            corral = [corral[i] for i in keep]
            coeff = [coeff[i] for i in keep]
        x = _combine(pts, corral, coeff)

    assert is_nearest_point(pts, dual_gram, x)
    return x


def min_norm_point(
    points: Sequence[QVec],
    dual_gram: QMat,
    bruteforce_limit: int = BRUTEFORCE_LIMIT,
) -> QVec:
    """Nearest point of conv(points) to the origin in the dual_gram norm.

    Small instances go through the exhaustive oracle, larger ones through
    the active-set descent; both certify optimality exactly before returning.
    """
    _check_points(points)
    pts = unique_points(points)
    if len(pts) <= bruteforce_limit:
        return min_norm_point_exhaustive(pts, dual_gram)
    return min_norm_point_active_set(pts, dual_gram)
