"""Shared group data used across the test modules.

Coordinates are the usual ones: GL_n roots are e_i - e_j with coroots the
same vectors, SL_2 has alpha = (2) against coroot (1), SL_3 and Sp_4 are
written in the basis of fundamental weights resp. the standard basis. The
disconnected examples extend tori and products by explicit permutation or
negation matrices.
"""
from fractions import Fraction

from weylstab import (
    ComponentAction,
    GroupData,
    InvariantNorm,
    QMat,
    QVec,
    invariant_norm,
    make_group,
    make_root_datum,
    qmat,
    qvec,
)


def gl(n: int) -> GroupData:
    roots = []
    for i in range(n):
        for j in range(n):
            if i != j:
                v = [0] * n
                v[i], v[j] = 1, -1
                roots.append(v)
    return make_group(make_root_datum(n, roots, roots))


def sl2() -> GroupData:
    return make_group(make_root_datum(1, [[2], [-2]], [[1], [-1]]))


def sl3() -> GroupData:
    roots = [[2, -1], [-1, 2], [1, 1], [-2, 1], [1, -2], [-1, -1]]
    coroots = [[1, 0], [0, 1], [1, 1], [-1, 0], [0, -1], [-1, -1]]
    return make_group(make_root_datum(2, roots, coroots))


def sp4() -> GroupData:
    roots = [[2, 0], [0, 2], [1, 1], [1, -1], [-2, 0], [0, -2], [-1, -1], [-1, 1]]
    coroots = [[1, 0], [0, 1], [1, 1], [1, -1], [-1, 0], [0, -1], [-1, -1], [-1, 1]]
    return make_group(make_root_datum(2, roots, coroots))


def torus(rank: int) -> GroupData:
    return make_group(make_root_datum(rank, [], []))


def swap_torus() -> GroupData:
    """Rank-2 torus extended by the coordinate swap."""
    comp = ComponentAction(
        ("1", "s"),
        ((0, 1), (1, 0)),
        (QMat.identity(2), qmat([[0, 1], [1, 0]])),
    )
    return make_group(make_root_datum(2, [], []), comp)


def negated_torus() -> GroupData:
    """Rank-1 torus extended by inversion."""
    comp = ComponentAction(
        ("1", "w"),
        ((0, 1), (1, 0)),
        (QMat.identity(1), qmat([[-1]])),
    )
    return make_group(make_root_datum(1, [], []), comp)


def wreath_gl2() -> GroupData:
    """GL_2 x GL_2 extended by the block swap."""
    roots = [
        [1, -1, 0, 0], [-1, 1, 0, 0],
        [0, 0, 1, -1], [0, 0, -1, 1],
    ]
    perm = qmat([
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [1, 0, 0, 0],
        [0, 1, 0, 0],
    ])
    comp = ComponentAction(("1", "c"), ((0, 1), (1, 0)), (QMat.identity(4), perm))
    return make_group(make_root_datum(4, roots, roots), comp)


def identity_norm(g: GroupData) -> InvariantNorm:
    return invariant_norm(g, QMat.identity(g.rank))


def connected_corpus() -> list[GroupData]:
    return [gl(1), gl(2), gl(3), gl(4), sl2(), sl3(), sp4()]


def full_corpus() -> list[GroupData]:
    return connected_corpus() + [swap_torus(), wreath_gl2(), negated_torus()]


def rand_vec(rng, dim: int, lo: int = -4, hi: int = 4) -> QVec:
    return qvec([rng.randint(lo, hi) for _ in range(dim)])


def rand_rational_vec(rng, dim: int) -> QVec:
    return qvec([Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(dim)])


def rand_pd_gram(rng, dim: int) -> QMat:
    """M^T M plus a positive diagonal bump is positive definite."""
    m = qmat([[rng.randint(-2, 2) for _ in range(dim)] for _ in range(dim)])
    bump = QMat(
        dim,
        dim,
        tuple(
            Fraction(rng.randint(1, 3)) if i == j else Fraction(0)
            for i in range(dim)
            for j in range(dim)
        ),
    )
    return m.transpose() @ m + bump
