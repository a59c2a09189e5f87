import random

import pytest

from weylstab import (
    GroupMismatch,
    InvariantBroken,
    NotASubgroup,
    QMat,
    ValidationError,
    compose_hom,
    degrees_equivalent,
    destabilizing_witness,
    is_adapted,
    make_degree,
    make_hom,
    push_degree,
    qmat,
    qvec,
    weyl_of_subgroup,
)

from corpus import gl, swap_torus, torus, wreath_gl2


def block_embedding():
    """GL_2 x GL_3 as the block subgroup of GL_5, torus part the identity."""
    roots = []
    for block in ((0, 1), (2, 3, 4)):
        for i in block:
            for j in block:
                if i != j:
                    v = [0] * 5
                    v[i], v[j] = 1, -1
                    roots.append(v)
    from weylstab import make_group, make_root_datum
    src = make_group(make_root_datum(5, roots, roots))
    return make_hom(src, gl(5), QMat.identity(5))


def slope_degree(a, b):
    """Degree of total degree a on the GL_2 block and b on the GL_3 block."""
    f = block_embedding()
    d = [f"{a}/2", f"{a}/2", f"{b}/3", f"{b}/3", f"{b}/3"]
    return f, make_degree(f.source, ["1"], d)


def test_make_hom_validation():
    g2 = gl(2)
    with pytest.raises(ValidationError):
        make_hom(g2, g2, qmat([[1, 0]]))  # wrong shape
    with pytest.raises(ValidationError):
        make_hom(g2, g2, qmat([["1/2", 0], [0, 1]]))  # not integral
    st = swap_torus()
    with pytest.raises(ValidationError):
        make_hom(st, gl(2), QMat.identity(2))  # phi0 required
    with pytest.raises(ValidationError):
        make_hom(st, st, QMat.identity(2), {"1": "1", "s": "bogus"})
    with pytest.raises(ValidationError):  # swap then swap is not swap
        make_hom(st, st, QMat.identity(2), {"1": "s", "s": "s"})
    # intertwining failure: the swap cannot land in a trivial component group
    with pytest.raises(ValidationError):
        make_hom(st, torus(2), QMat.identity(2), {"1": "1", "s": "1"})


def test_hom_into_connected_group_uses_inner_slack():
    # the swap action maps to the identity component of GL_2, where the
    # nontrivial Weyl element supplies the intertwiner
    f = make_hom(swap_torus(), gl(2), QMat.identity(2), {"1": "1", "s": "1"})
    assert f.phi0 == (0, 0)


def test_weyl_of_subgroup():
    st = swap_torus()
    assert weyl_of_subgroup(st, (0,)).order == 1
    assert weyl_of_subgroup(st, (0, 1)).order == 2
    with pytest.raises(NotASubgroup):
        weyl_of_subgroup(st, (1,))
    w = wreath_gl2()
    assert weyl_of_subgroup(w, (0,)).order == 4
    assert weyl_of_subgroup(w, (0, 1)).order == 8


def test_make_degree():
    st = swap_torus()
    d = make_degree(st, ["1", "s"], [2, 2])
    assert d.subgroup == (0, 1)
    with pytest.raises(ValidationError):
        make_degree(st, ["1", "s"], [2, 5])  # not swap-invariant
    make_degree(st, ["1"], [2, 5])  # fine for the trivial subgroup
    with pytest.raises(NotASubgroup):
        make_degree(st, ["s"], [2, 2])
    with pytest.raises(ValidationError):
        make_degree(st, ["1"], [2, 5, 1])
    g = gl(2)
    with pytest.raises(ValidationError):
        make_degree(g, ["1"], [1, 0])  # must kill the root
    make_degree(g, ["1"], [3, 3])
    with pytest.raises(ValidationError):
        make_degree(g, ["nope"], [3, 3])
    with pytest.raises(ValidationError):
        make_degree(g, [None], [3, 3])


def test_degrees_equivalent():
    st = swap_torus()
    a = make_degree(st, ["1"], [2, 5])
    b = make_degree(st, ["1"], [5, 2])
    c = make_degree(st, ["1"], [2, 6])
    assert degrees_equivalent(a, b)
    assert degrees_equivalent(a, a)
    assert not degrees_equivalent(a, c)
    with pytest.raises(GroupMismatch):
        degrees_equivalent(a, make_degree(torus(2), ["1"], [2, 5]))


def test_push_degree():
    f, deg = slope_degree(2, 3)
    out = push_degree(f, deg)
    assert out.group == f.target
    assert out.cochar == qvec([1, 1, 1, 1, 1])
    assert out.subgroup == (0,)
    # pushing a vector the target Weyl group moves is inconsistent data
    finc = make_hom(torus(2), gl(2), QMat.identity(2))
    bad = make_degree(torus(2), ["1"], [1, 0])
    with pytest.raises(InvariantBroken):
        push_degree(finc, bad)
    with pytest.raises(GroupMismatch):
        push_degree(f, bad)


def test_adapted_iff_slopes_match():
    f = block_embedding()
    for a in range(-4, 5):
        for b in range(-4, 5):
            f2, deg = slope_degree(a, b)
            assert is_adapted(f, deg) == (3 * a == 2 * b)


def test_adapted_swap_torus_into_gl2():
    f = make_hom(swap_torus(), gl(2), QMat.identity(2), {"1": "1", "s": "1"})
    for d1 in range(-2, 3):
        for d2 in range(-2, 3):
            deg = make_degree(swap_torus(), ["1"], [d1, d2])
            assert is_adapted(f, deg) == (d1 == d2)


def test_destabilizing_witness():
    f, deg = slope_degree(1, 0)
    wit = destabilizing_witness(f, deg)
    assert wit.cochar == qvec(["1/2", "1/2", 0, 0, 0])
    assert wit.weight == 3
    # the witness is dominant for its own parabolic
    for i in wit.parabolic.parabolic_roots:
        assert wit.cochar.dot(f.target.datum.roots[i]) >= 0
    f2, good = slope_degree(2, 3)
    assert destabilizing_witness(f2, good).weight == 0


def test_compose_functoriality():
    # T^1 -> GL_2 -> GL_5 along uniform slopes
    t1 = torus(1)
    f = make_hom(t1, gl(2), qmat([[1], [1]]))
    g = make_hom(gl(2), gl(5), qmat([[1, 0], [1, 0], [0, 1], [0, 1], [0, 1]]))
    gf = compose_hom(g, f)
    assert gf.tau == qmat([[1], [1], [1], [1], [1]])
    deg = make_degree(t1, ["1"], [6])
    once = push_degree(gf, deg)
    twice = push_degree(g, push_degree(f, deg))
    assert once.cochar == twice.cochar and once.subgroup == twice.subgroup
    with pytest.raises(GroupMismatch):
        compose_hom(f, g)


def test_adapted_iff_push_succeeds():
    # for the block embedding the pushed vector is invariant under the full
    # symmetric group exactly when the slopes agree, so pushability and
    # adaptedness coincide here
    rng = random.Random(5)
    f = block_embedding()
    for _ in range(25):
        a, b = rng.randint(-6, 6), rng.randint(-6, 6)
        f2, deg = slope_degree(a, b)
        if is_adapted(f, deg):
            out = push_degree(f, deg)
            assert all(out.cochar.dot(r) == 0 for r in f.target.datum.roots)
        else:
            with pytest.raises(InvariantBroken):
                push_degree(f, deg)
