from hypothesis import given, settings, strategies as st

from macpiece.qt_field import ONE, M, Q, T
from macpiece.shapes import (b_sum, cell_stats, conjugate, corner_weights, corners, d_poly,
                             delta, general_arm_leg, lw_frame, partitions, partitions_in_box,
                             remove_corners, staircase, t_weight, tilde)

import pytest


def test_corners_examples():
    assert corners((2, 1)) == [((2, 1), 1 / T), ((1, 2), 1 / Q)]
    assert corners((1,)) == [((1, 1), ONE)]
    assert [c[0] for c, _ in corners(delta(4, 3))] == [6, 5, 4, 3]
    assert corners(()) == []


def test_remove_corners():
    assert remove_corners((2, 1), [1]) == (2,)
    assert remove_corners((2, 1), [2]) == (1, 1)
    assert remove_corners(delta(4, 3), [2, 3]) == (4, 4, 4, 2, 1, 1)
    with pytest.raises(ValueError):
        remove_corners((2, 1), [3])


def test_cell_statistics():
    assert t_weight((2, 1)) == Q * T
    assert b_sum((1,)) == ONE
    assert d_poly((1,)) == M - 1
    assert cell_stats((2, 1), (1, 2)) == {"arm": 0, "coarm": 1, "leg": 0, "coleg": 0}
    with pytest.raises(ValueError):
        cell_stats((2, 1), (2, 2))


def test_general_arm_leg():
    assert general_arm_leg((2, 2), (1, 1)) == {"arm": 1, "leg": 1}
    assert general_arm_leg((1,), (1, 1)) == {"arm": 0, "leg": 0}
    with pytest.raises(ValueError):
        general_arm_leg((1,), (2, 1))


def test_tilde_examples():
    assert tilde((3, 1), 6, 3) == (2, 2, 1)
    assert tilde((2, 2), 4, 2) == ()
    assert tilde((), 2, 1) == (1,)
    with pytest.raises(ValueError):
        tilde((3,), 4, 2)


def test_lw_frame_examples():
    f = lw_frame((3, 2), 5, 2)
    assert (f.s, f.adj, f.v, f.bo, f.piv) == (2, 2, (2, 2, 3, 4, 4), (1, 2, 2, 2, 3), (1, 4))
    assert f.dlam == ((1, 2), (2,), (2,), (2,), ())
    e = lw_frame((), 2, 1)
    assert (e.s, e.adj, e.piv) == (0, 0, ())
    one = lw_frame((1,), 2, 1)
    assert (one.s, one.adj, one.v, one.bo, one.piv) == (1, 0, (1, 1), (1, 2), (1,))


def test_staircases():
    assert delta(4, 3) == (4, 4, 4, 3, 2, 1)
    assert staircase(3) == (2, 1)
    for n in range(2, 6):
        assert len(corners(delta(n, 2))) == n


def box_cases():
    return [(lam, n, k) for n in range(2, 7) for k in range(1, n) for lam in partitions_in_box(k, n - k)]


def test_staircase_rearrangement():
    for lam, n, k in box_cases():
        lt = tilde(lam, n, k)
        first = [x + k - 1 - i for i, x in enumerate(list(lam) + [0] * (k - len(lam)))]
        second = [x + n - k - 1 - i for i, x in enumerate(list(lt) + [0] * (n - k - len(lt)))]
        assert sorted(first + second) == list(range(n))


def test_tilde_involution():
    for lam, n, k in box_cases():
        assert tilde(tilde(lam, n, k), n, n - k) == lam
        assert sum(lam) + sum(tilde(lam, n, k)) == k * (n - k)


partition_st = st.integers(1, 9).flatmap(lambda n: st.sampled_from(partitions(n)))


@settings(max_examples=80, deadline=None)
@given(partition_st)
def test_conjugate_involution(mu):
    assert conjugate(conjugate(mu)) == mu


@settings(max_examples=60, deadline=None)
@given(partition_st, st.data())
def test_t_weight_corner_relation(mu, data):
    n = len(corners(mu))
    S = data.draw(st.sets(st.integers(1, n)))
    zs = corner_weights(mu)
    lhs = t_weight(remove_corners(mu, range(1, n + 1)))
    rhs = t_weight(remove_corners(mu, S))
    for j in range(1, n + 1):
        if j not in S:
            rhs = rhs * zs[j - 1]
    assert lhs == rhs


def test_corner_weight_is_t_ratio():
    for mu in partitions(6):
        for i, z in enumerate(corner_weights(mu), 1):
            assert z == t_weight(remove_corners(mu, [i])) / t_weight(mu)
