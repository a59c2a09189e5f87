import itertools
import random
from fractions import Fraction

import pytest

from weylstab import NotPositiveDefinite, QMat, ValidationError, qmat, qvec
from weylstab.convex import (
    affine_dim,
    check_positive_definite,
    is_nearest_point,
    min_norm_point,
    min_norm_point_active_set,
    min_norm_point_exhaustive,
    origin_in_hull,
    origin_in_interior,
    origin_in_relative_interior,
    q_normsq,
)
from weylstab.linalg import solve_linear

from corpus import rand_pd_gram


def _in_cone(target, generators):
    """Is target a nonnegative combination of the generators?

    Conic Caratheodory: a representable target is representable over some
    linearly independent subset, so checking subsets up to the ambient
    dimension is exhaustive. Used as an oracle independent of the hull code.
    """
    dim = target.dim
    for size in range(0, min(len(generators), dim) + 1):
        for idxs in itertools.combinations(range(len(generators)), size):
            cols = QMat.from_rows(
                [[generators[i][r] for i in idxs] for r in range(dim)],
                cols=size,
            )
            sol = solve_linear(cols, target)
            if sol is None or sol[1].dim != 0:
                continue
            if all(c >= 0 for c in sol[0]):
                return True
    return False


def _relint_oracle(points):
    """0 in relint(conv(points)) iff every -p_i is a nonnegative combination
    of the points: summing the per-point witnesses gives a strictly positive
    barycentric representation of the origin, and conversely."""
    return all(_in_cone(-p, points) for p in points)


def test_check_positive_definite():
    check_positive_definite(qmat([[2, -1], [-1, 2]]))
    with pytest.raises(NotPositiveDefinite):
        check_positive_definite(qmat([[1, 0], [0, -1]]))
    with pytest.raises(NotPositiveDefinite):
        check_positive_definite(qmat([[0, 0], [0, 1]]))
    with pytest.raises(NotPositiveDefinite):
        check_positive_definite(qmat([[1, 2], [0, 1]]))  # not symmetric
    with pytest.raises(NotPositiveDefinite):
        check_positive_definite(QMat.from_rows([[1, 0]]))


def test_affine_dim():
    assert affine_dim([qvec([1, 1])]) == 0
    assert affine_dim([qvec([0, 0]), qvec([1, 1]), qvec([2, 2])]) == 1
    assert affine_dim([qvec([0, 0]), qvec([1, 0]), qvec([0, 1])]) == 2


def test_hull_membership_hand_cases():
    assert origin_in_hull([qvec([1]), qvec([-1])])
    assert not origin_in_hull([qvec([1]), qvec([2])])
    assert origin_in_hull([qvec([0, 0])])
    assert origin_in_hull([qvec([1, 0]), qvec([-1, 1]), qvec([-1, -1])])
    assert not origin_in_hull([qvec([1, 0]), qvec([1, 1]), qvec([2, -1])])
    with pytest.raises(ValidationError):
        origin_in_hull([])


def test_interior_flavours():
    segment = [qvec([1, 0]), qvec([-1, 0])]
    assert origin_in_hull(segment)
    assert origin_in_relative_interior(segment)
    assert not origin_in_interior(segment)  # hull is a segment in the plane

    triangle = [qvec([1, 0]), qvec([-1, 1]), qvec([-1, -1])]
    assert origin_in_interior(triangle)

    # origin on the boundary: in the hull but not the relative interior
    boundary = [qvec([0, 0]), qvec([1, 0]), qvec([0, 1])]
    assert origin_in_hull(boundary)
    assert not origin_in_relative_interior(boundary)

    point = [qvec([0, 0])]
    assert origin_in_relative_interior(point)
    assert not origin_in_interior(point)

    # duplicates must not change any verdict
    assert origin_in_relative_interior(segment + segment)


def test_relint_against_cone_oracle():
    rng = random.Random(7)
    for _ in range(150):
        dim = rng.randint(1, 3)
        pts = [
            qvec([rng.randint(-2, 2) for _ in range(dim)])
            for _ in range(rng.randint(1, 5))
        ]
        assert origin_in_relative_interior(pts) == _relint_oracle(pts)
        # hull membership agrees with the nearest point vanishing
        gram = QMat.identity(dim)
        assert origin_in_hull(pts) == min_norm_point(pts, gram).is_zero()


def test_min_norm_hand_cases():
    gram = QMat.identity(2)
    # nearest point of a segment is its closer endpoint here
    seg = [qvec([1, 1]), qvec([3, -1])]
    assert min_norm_point_exhaustive(seg, gram) == qvec([1, 1])
    assert min_norm_point_active_set(seg, gram) == qvec([1, 1])
    # and an interior projection when the segment straddles the axis
    seg2 = [qvec([1, 1]), qvec([1, -1])]
    assert min_norm_point_exhaustive(seg2, gram) == qvec([1, 0])
    assert min_norm_point_active_set(seg2, gram) == qvec([1, 0])
    # non-identity form changes the answer
    g2 = qmat([[1, 0], [0, 4]])
    pts = [qvec([2, 0]), qvec([0, 1])]
    x = min_norm_point_exhaustive(pts, g2)
    assert x == min_norm_point_active_set(pts, g2)
    assert is_nearest_point(pts, g2, x)
    assert q_normsq(x, g2) == Fraction(2)  # t*(2,0)+(1-t)*(0,1) at t=1/2


def test_min_norm_routes_agree_random():
    rng = random.Random(11)
    for _ in range(80):
        dim = rng.randint(1, 4)
        pts = [
            qvec([Fraction(rng.randint(-4, 4), rng.randint(1, 2)) for _ in range(dim)])
            for _ in range(rng.randint(1, 7))
        ]
        gram = rand_pd_gram(rng, dim)
        a = min_norm_point_exhaustive(pts, gram)
        b = min_norm_point_active_set(pts, gram)
        assert a == b
        assert is_nearest_point(pts, gram, a)
        # minimality against every vertex
        va = q_normsq(a, gram)
        assert all(va <= q_normsq(p, gram) for p in pts)


def test_min_norm_dispatcher_switches():
    gram = QMat.identity(1)
    pts = [qvec([k]) for k in range(1, 15)]  # above the bruteforce limit
    assert min_norm_point(pts, gram) == qvec([1])
    assert min_norm_point(pts[:3], gram) == qvec([1])
