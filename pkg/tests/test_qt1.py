from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from macpiece import qt1
from macpiece.macdonald import nabla_schur
from macpiece.shapes import corners, partitions, partitions_in_box, staircase
from macpiece.qt_field import QTRat, zvar
from macpiece.symfunc import SymF, schur_finite
from macpiece.verify import WORKED_EXAMPLE, WORKED_EXAMPLE_TEX


def test_d_coeff_examples():
    assert qt1.d_coeff((), (), 0) == 1
    assert qt1.d_coeff((2, 1), (2, 1), 2) == 1
    assert qt1.d_coeff((2,), (1,), 1) == 2
    with pytest.raises(ValueError):
        qt1.d_coeff((1, 1, 1), (), 2)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_d_coeff_unitriangular(k):
    for lam in partitions_in_box(k, 3):
        assert qt1.d_coeff(lam, lam, k) == 1


def test_d_coeff_one_row_is_binomial():
    for a in range(6):
        for b in range(a + 1):
            assert qt1.d_coeff((a,), (b,), 1) == comb(a, b)


def test_d_coeff_is_the_shift_by_one():
    # s_lam(1+z1, 1+z2) = sum_nu d_{lam,nu} s_nu(z1, z2), checked by bialternants
    k = 2
    zs = [zvar(1), zvar(2)]
    shifted = [z + 1 for z in zs]
    for lam in partitions_in_box(k, 3):
        rhs = sum((schur_finite(nu, zs) * qt1.d_coeff(lam, nu, k)
                   for nu in partitions_in_box(k, 3)), QTRat(0))
        assert schur_finite(lam, shifted) == rhs


def test_w_table_examples():
    assert qt1.w_table((1,)) == {(1,): 1}
    assert qt1.w_table(()) == {(): 1}
    # regression value; the restriction cross-check below is the oracle
    assert qt1.w_table((2, 1)) == {(1, 1, 1): -3, (2, 1): 4, (3,): -1}


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (2, 1), (2, 2)])
def test_w_table_restrictions_agree(lam):
    assert qt1.w_cross_check(lam)


def test_w_table_matches_h_specialization():
    for lam in partitions(3):
        assert qt1.w_table(lam) == qt1.h_at_one(nabla_schur(lam))


def test_piece_small_examples():
    assert qt1.piece_qt1((2, 1), (), 1) == {(2,): 1}
    assert qt1.piece_qt1((2, 1), (1,), 1) == {(1, 1): 1, (2,): -1}


def test_worked_example():
    mu, lam, k = WORKED_EXAMPLE
    assert qt1.render_h_tex(qt1.piece_qt1(mu, lam, k)) == WORKED_EXAMPLE_TEX


def test_worked_example_has_ten_terms():
    mu, lam, k = WORKED_EXAMPLE
    exp = qt1.piece_qt1(mu, lam, k)
    assert len(exp) == 10
    assert all(sum(t) == 8 for t in exp)


@pytest.mark.parametrize("mu,k", [((3, 1), 1), ((3, 2, 1), 1), ((3, 2, 1), 2), ((2, 2, 1), 1)])
def test_two_paths(mu, k):
    n = len(corners(mu))
    for lam in partitions_in_box(k, n - k):
        assert qt1.piece_qt1(mu, lam, k, check=False) == qt1.theorem_rhs(mu, lam, k)


def test_add_ones_elementwise():
    assert qt1._add_ones((2, 1), 3) == (3, 2, 1)
    assert qt1._add_ones((), 2) == (1, 1)
    with pytest.raises(ValueError):
        qt1._add_ones((1, 1, 1), 2)


@pytest.mark.parametrize("lam", [lam for n in range(1, 5) for lam in partitions(n)])
def test_rd_table_values(lam):
    assert qt1.rd(lam) == qt1.RD_TABLE[lam]


def test_rd_direct_matches_closed_form():
    for lam, mu in [((1,), (2, 1)), ((2,), (3, 2, 1)), ((1, 1), (3, 2, 1))]:
        assert qt1.rd_direct(lam, mu) == qt1.rd(lam)


def test_rd_frame_independence():
    for lam in [(1,), (2,), (1, 1)]:
        n, k, _ = qt1.rd_frame(lam)
        assert qt1.rd(lam, n + 1, k) == qt1.rd(lam)


def test_observations_through_four():
    rows = qt1.observations_suite(4)
    assert rows and all(ok for _, _, ok, _ in rows)
    assert {name for name, *_ in rows} == {"pieri", "one-column", "staircase", "hooks"}


def test_staircase_reading():
    assert qt1.rd(staircase(2)) == Fraction(1, 2)
    assert qt1.rd(staircase(3)) == Fraction(1, 4)


def test_render_orders():
    exp = {(2,): -1, (1, 1): 1}
    assert qt1.render_h(exp) == qt1.render_h(dict(reversed(list(exp.items()))))


@settings(max_examples=30, deadline=None)
@given(st.dictionaries(st.sampled_from([(3,), (2, 1), (1, 1, 1)]), st.integers(-5, 5)))
def test_pairings_agree_on_h_expansions(exp):
    # the e-pairing from the h-side equals the one from the Schur side
    f = SymF("h", 3, exp)
    s_side = {lam: c.evaluate(1, 1) for lam, c in f.convert("s").coeffs.items()}
    assert qt1.e_pairing_h(exp) == qt1.e_pairing_s(s_side)
