from fractions import Fraction

import pytest

from weylstab import (
    CapExceeded,
    InvariantNorm,
    NonAbelianIdentityComponent,
    StratumData,
    ValidationError,
    candidate_strata,
    contragredient,
    hilbert_mumford_weight,
    instability,
    is_polystable,
    is_semistable,
    is_stable,
    make_action,
    qmat,
    qvec,
    stratify_supports,
    verify_recursion,
    weyl_group,
)

from corpus import gl, identity_norm, negated_torus, swap_torus, torus
from test_convex import _relint_oracle


def pm1_action():
    t = torus(1)
    return make_action(t, [[1], [1], [-1]], [0], identity_norm(t))


def square_action():
    t = torus(2)
    return make_action(t, [[1, 0], [-1, 0], [0, 1], [0, -1]], [0, 0], identity_norm(t))


def skew_action():
    t = torus(2)
    return make_action(t, [[1, 2], [2, 1], [-1, -1]], [0, 0], identity_norm(t))


def shifted_action():
    t = torus(2)
    return make_action(t, [[2, 0], [0, 2]], [1, 1], identity_norm(t))


def swap_action():
    st = swap_torus()
    return make_action(st, [[1, 0], [0, 1], [1, 1]], ["1/2", "1/2"], identity_norm(st))


def negated_action():
    nt = negated_torus()
    return make_action(nt, [[1], [-1]], [0], identity_norm(nt))


def suite():
    return [
        pm1_action(),
        square_action(),
        skew_action(),
        shifted_action(),
        swap_action(),
        negated_action(),
    ]


def all_supports(act):
    n = len(act.weights)
    for mask in range(1, 2**n):
        yield frozenset(i for i in range(n) if mask >> i & 1)


def test_make_action_validation():
    t = torus(1)
    st = swap_torus()
    with pytest.raises(ValidationError):
        make_action(t, [], [0], identity_norm(t))
    with pytest.raises(ValidationError):
        make_action(t, [["1/2"]], [0], identity_norm(t))
    with pytest.raises(ValidationError):
        make_action(t, [[1, 0]], [0], identity_norm(t))
    with pytest.raises(ValidationError):
        make_action(st, [[1, 0]], [0, 0], identity_norm(st))  # swap breaks multiset
    with pytest.raises(ValidationError):
        make_action(st, [[1, 0], [0, 1]], [1, 0], identity_norm(st))  # shift moves
    bad_norm = InvariantNorm(qmat([[1, 0], [0, 2]]))  # swap moves this gram
    with pytest.raises(ValidationError):
        make_action(st, [[1, 0], [0, 1]], [0, 0], bad_norm)


def test_support_validation():
    act = pm1_action()
    for bad in ([], [3], [-1], [True], ["0"]):
        with pytest.raises(ValidationError):
            is_semistable(act, bad)
    with pytest.raises(ValidationError):
        hilbert_mumford_weight(act, [0], qvec([1, 0]))


def test_torus_required():
    g = gl(2)
    act = make_action(g, [[1, 0], [0, 1]], [0, 0], identity_norm(g))
    with pytest.raises(NonAbelianIdentityComponent):
        is_semistable(act, [0])
    with pytest.raises(NonAbelianIdentityComponent):
        instability(act, [0])
    with pytest.raises(NonAbelianIdentityComponent):
        stratify_supports(act)


def test_hilbert_mumford_hand_values():
    act = pm1_action()
    one = qvec([1])
    assert hilbert_mumford_weight(act, [0, 1], one) == 1
    assert hilbert_mumford_weight(act, [2], one) == -1
    assert hilbert_mumford_weight(act, [0, 2], one) == -1
    sh = shifted_action()
    assert hilbert_mumford_weight(sh, [0, 1], qvec([1, 0])) == -1


def test_hilbert_mumford_homogeneous():
    act = skew_action()
    lam = qvec([3, -2])
    base = hilbert_mumford_weight(act, [0, 2], lam)
    for c in (2, 5, Fraction(7, 2)):
        assert hilbert_mumford_weight(act, [0, 2], c * lam) == c * base


def test_hilbert_mumford_conjugation():
    act = swap_action()
    lam = qvec([2, -1])
    for m in act.group.components.matrices:
        u = contragredient(m)
        perm = []
        for w in act.weights:
            img = u @ w
            perm.append(next(j for j, c in enumerate(act.weights) if c == img))
        for s in ([0], [0, 1], [0, 2], [0, 1, 2]):
            moved = [perm[i] for i in s]
            assert hilbert_mumford_weight(act, moved, lam) == hilbert_mumford_weight(
                act, s, m.inverse() @ lam
            )


def test_pm1_full_classification():
    act = pm1_action()
    expected = {
        frozenset({0}): 1,
        frozenset({1}): 1,
        frozenset({2}): -1,
        frozenset({0, 1}): 1,
        frozenset({0, 2}): 0,
        frozenset({1, 2}): 0,
        frozenset({0, 1, 2}): 0,
    }
    strata = stratify_supports(act)
    assert set(strata) == set(expected)
    for s, lab in expected.items():
        st = strata[s]
        assert st.label == qvec([lab])
        assert st.level == lab * lab
        assert is_semistable(act, s) == (lab == 0)
    up = strata[frozenset({0})]
    assert up.centre_indices == (0, 1)
    assert up.attractor_indices == (0, 1)
    assert up.shifted_shift == qvec([1])
    down = strata[frozenset({0, 2})]
    assert down.centre_indices == (0, 1, 2)


def test_pm1_candidates_ordered():
    act = pm1_action()
    cands = candidate_strata(act)
    assert [c.label for c in cands] == [qvec([-1]), qvec([1]), qvec([0])]
    assert [c.level for c in cands] == [1, 1, 0]


def test_stability_flavours():
    sq = square_action()
    assert is_semistable(sq, [0, 1, 2, 3])
    assert is_stable(sq, [0, 1, 2, 3])
    assert is_polystable(sq, [0, 1, 2, 3])
    # a segment through the origin: polystable but not stable in rank 2
    assert is_semistable(sq, [0, 1])
    assert not is_stable(sq, [0, 1])
    assert is_polystable(sq, [0, 1])
    # hull misses the origin entirely
    assert not is_semistable(sq, [0, 2])
    assert not is_polystable(sq, [0, 2])
    # origin on the boundary: semistable, not polystable
    act = make_action(torus(1), [[0], [1]], [0], identity_norm(torus(1)))
    assert is_semistable(act, [0, 1])
    assert not is_polystable(act, [0, 1])
    assert not is_stable(act, [0, 1])


def test_semistable_iff_zero_label():
    for act in suite():
        for s in all_supports(act):
            assert is_semistable(act, s) == (instability(act, s).level == 0)


def test_polystable_matches_relint_oracle():
    for act in suite():
        for s in all_supports(act):
            pts = [act.weights[i] - act.shift for i in sorted(s)]
            assert is_polystable(act, s) == _relint_oracle(pts)


def test_negated_torus_orbit_fold():
    act = negated_action()
    strata = stratify_supports(act)
    # the component flip identifies the two unstable rays
    assert strata[frozenset({0})].label == qvec([1])
    assert strata[frozenset({1})].label == qvec([1])
    assert strata[frozenset({0, 1})].label == qvec([0])
    assert strata[frozenset({0})].centre_indices == (0,)


def test_caps():
    act = pm1_action()
    with pytest.raises(CapExceeded):
        candidate_strata(act, cap_subsets=2)
    with pytest.raises(CapExceeded):
        stratify_supports(act, cap_patterns=3)


def test_realized_labels_are_candidates():
    for act in suite():
        cand = {c.label for c in candidate_strata(act)}
        realized = {st.label for st in stratify_supports(act).values()}
        assert realized <= cand


def test_dual_cochar_roundtrip():
    # the label lives in character space, the cocharacter is its norm dual;
    # applying the gram to the cocharacter must give back the label exactly
    for act in suite():
        for st in candidate_strata(act):
            assert act.norm.gram @ st.cochar == st.label
            assert st.level == st.label.dot(st.cochar)


def test_label_canonical_in_orbit():
    for act in (swap_action(), negated_action()):
        for st in stratify_supports(act).values():
            for m in weyl_group(act.group):
                assert (contragredient(m) @ st.label).entries <= st.label.entries


def test_verify_recursion_suite():
    for act in suite():
        for st in candidate_strata(act):
            assert verify_recursion(act, st)


def test_verify_recursion_rejects_wrong_label():
    act = pm1_action()
    strata = stratify_supports(act)
    good = strata[frozenset({0})]
    forged = StratumData(
        qvec([2]),
        qvec([2]),
        good.level,
        good.centre_indices,
        good.attractor_indices,
        good.parabolic,
        good.shifted_shift,
    )
    assert not verify_recursion(act, forged)
