from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from macpiece import piece
from macpiece.macdonald import htilde, nabla_schur
from macpiece.qt_field import ONE, ZERO, Q, T, zvar
from macpiece.shapes import corner_weights, corners, partitions, partitions_in_box, remove_corners
from macpiece.symfunc import SymF, e_perp


def s(*lam):
    return SymF.basis_element("s", lam)


def test_two_corner_examples():
    # oracle: the two-term sum written out by hand
    H2, H11 = htilde((2,)), htilde((1, 1))
    by_hand = (H2.scale(T) - H11.scale(Q)).scale(1 / (T - Q))
    assert by_hand == s(2)
    assert piece.piece_poly((2, 1), (), 1) == s(2)
    z1, z2 = 1 / T, 1 / Q
    by_hand = (H2 - H11).scale(-z1 * z2 / (z2 - z1))
    assert by_hand == s(1, 1)
    assert piece.piece_poly((2, 1), (1,), 1) == s(1, 1)


def test_input_validation():
    with pytest.raises(ValueError):
        piece.piece_poly((2, 1), (), 2)
    with pytest.raises(ValueError):
        piece.piece_poly((2, 1), (2,), 1)


def test_degree_and_laurent_coefficients():
    for n in range(2, 8):
        for mu in partitions(n):
            nc = len(corners(mu))
            for k in range(1, nc):
                for lam in partitions_in_box(k, nc - k):
                    I = piece.piece_poly(mu, lam, k)
                    assert I.is_zero() or I.degree == n - k
                    assert all(c.is_laurent() for c in I.coeffs.values())


def test_vanishing_examples():
    ok, report = piece.verify_vanishing((2, 1), (1,), 1)
    assert ok and report == []
    ok, report = piece.verify_vanishing((2, 2, 1), (), 1)
    assert ok and [N for N, _ in report] == [4]
    ok, report = piece.verify_vanishing((3, 2, 1), (), 2)
    assert ok and report


def test_nabla_examples():
    assert piece.nabla_via_piece((2, 1), (), 1) == s(1) == nabla_schur((1,))
    assert piece.nabla_via_piece((2, 1), (1,), 1) == SymF.one()
    assert piece.nabla_via_piece((2, 1), (), 1) == piece.nabla_via_piece((3, 1), (), 1)


def test_s_lambda_set():
    assert piece.s_lambda_set((1, 2), (), 4, 2) == [(1, 2)]
    assert piece.s_lambda_set((1, 3), (2, 2), 4, 2) == piece.subsets(4, 2)
    assert piece.s_lambda_set((1, 2), (2, 1), 4, 2) == [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]


def test_pi_examples():
    z1, z2 = zvar(1), zvar(2)
    assert piece.pi_op(1, 2, z1) == ZERO
    assert piece.pi_op(1, 2, ONE) == ONE
    assert piece.pi_op(1, 2, z2) == z1 + z2
    with pytest.raises(ValueError):
        piece.pi_op(1, 1, z1)


def test_pi_fixes_symmetric_inputs():
    z1, z2, z3 = zvar(1), zvar(2), zvar(3)
    f = (z1 * z2 + z3) / (z1 + z2 + 1)
    assert piece.pi_op(1, 2, f) == f


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 1)),
                min_size=1, max_size=4), st.sampled_from([(1, 2), (2, 3), (1, 3)]))
def test_pi_idempotent(terms, pair):
    f = ZERO
    for c, a, b, d in terms:
        f = f + c * zvar(1) ** a * zvar(2) ** b * zvar(3) ** d
    i, j = pair
    once = piece.pi_op(i, j, f)
    assert piece.pi_op(i, j, once) == once


def test_h_lambda_empty_and_full():
    for S in ((1,), (2,)):
        assert piece.h_lambda_mu_s((2, 1), S, ()) == htilde(remove_corners((2, 1), S))
    full = [piece.h_lambda_mu_s((2, 1), S, (1,)) for S in ((1,), (2,))]
    assert full[0] == full[1]


def test_h_lambda_full_box_is_intersection_polynomial():
    mu = (3, 1)
    zs = corner_weights(mu)
    total = SymF("s", 3)
    for i in (1, 2):
        c = ONE
        for j in (1, 2):
            if j != i:
                c = c * zs[j - 1] / (zs[j - 1] - zs[i - 1])
        total = total + htilde(remove_corners(mu, [i])).scale(c)
    assert piece.h_lambda_mu_s(mu, (1,), (1,)) == total


def test_reconstruction_lemma():
    assert piece.reconstruct_h((2, 1), (1,)) and piece.reconstruct_h((2, 1), (2,))
    assert piece.reconstruct_h((3, 1), (1,))
    for S in combinations((1, 2, 3), 2):
        assert piece.reconstruct_h((3, 2, 1), S)


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)])
def test_change_of_basis_matrices_are_inverse(n, k):
    assert piece.check_lemma_matrices(n, k)


def test_main_theorem_small():
    for mu in [(2, 1), (3, 1), (2, 2, 1), (3, 2), (3, 2, 1), (4, 2, 1)]:
        n = len(corners(mu))
        for k in range(1, n):
            for lam in partitions_in_box(k, n - k):
                assert piece.verify_vanishing(mu, lam, k)[0]
                assert piece.check_nabla_via_piece(mu, lam, k)


def test_e_perp_above_range_is_zero():
    I = piece.piece_poly((3, 2, 1), (1,), 1)
    assert e_perp(I.degree + 1, I).is_zero()


def test_dashboard():
    rows = piece.positivity_dashboard((2, 1), 1)
    assert [status for label, status in rows if label.startswith("H^")] == ["+"]
    for mu in [(3, 1), (2, 2, 1)]:
        rows = piece.positivity_dashboard(mu, 1)
        assert rows and all(status in ("+", "0") for _, status in rows)


def test_default_chain():
    assert piece.default_chain(4, 2) == [(), (1,), (2,), (2, 1), (2, 2)]
