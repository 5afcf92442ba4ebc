from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from macpiece.qt_field import ONE, ZERO, M, Q, T, QTRat, zvar
from macpiece.shapes import partitions
from macpiece.symfunc import (EPS, X, SymF, alphabet_of, e_perp, from_x_polynomial, hall, mul,
                              omega, plethysm, schur_finite, schur_jt, schur_orthogonality_check,
                              star_inner)


def s(*lam):
    return SymF.basis_element("s", lam)


def basis(b, *lam):
    return SymF.basis_element(b, lam)


def test_conversions():
    assert basis("h", 2).convert("s") == s(2)
    assert basis("p", 2) == s(2) - s(1, 1)
    assert basis("e", 2).convert("m").coeffs == {(1, 1): ONE}


def test_products_and_sums():
    assert mul(s(1), s(1)) == s(2) + s(1, 1)
    assert mul(basis("p", 2), basis("p", 1)).convert("p").coeffs == {(2, 1): ONE}
    f = s(2, 1).scale(Q + T)
    assert (f + f.scale(-1)).is_zero()
    with pytest.raises(ValueError):
        s(2) + s(1)


def test_hall():
    assert hall(s(2, 1), s(2, 1)) == 1
    assert hall(basis("p", 2), basis("p", 2)) == 2
    for lam in partitions(4):
        for mu in partitions(4):
            assert hall(basis("h", *lam), basis("m", *mu)) == (1 if lam == mu else 0)


def test_star_inner():
    assert star_inner(basis("p", 1), basis("p", 1)) == M
    assert star_inner(basis("p", 2), basis("p", 2)) == -2 * (1 - Q ** 2) * (1 - T ** 2)
    assert star_inner(basis("p", 2), basis("p", 1, 1)) == ZERO


def test_omega():
    for n in range(1, 5):
        assert omega(basis("h", n)) == basis("e", n)
    assert omega(s(2, 1)) == s(2, 1)
    assert omega(basis("p", 2)) == -basis("p", 2)


def test_plethysm_examples():
    g = plethysm(basis("p", 2), X - EPS)
    assert g[2] == basis("p", 2) and g[0].coeffs == {(): QTRat(-1)}
    D1 = alphabet_of([M - 1])
    for k in range(1, 4):
        assert plethysm(basis("p", k), D1) == (1 - Q ** k) * (1 - T ** k) - 1
    z = zvar(1)
    assert plethysm(basis("e", 1), alphabet_of([M * z])) == M * z


def test_e_perp_examples():
    assert e_perp(1, s(2, 1)) == s(2) + s(1, 1)
    assert e_perp(2, s(1, 1)) == SymF.one()
    assert e_perp(2, s(2)).is_zero()
    assert e_perp(3, s(2)).is_zero()


def test_schur_finite():
    z1, z2 = zvar(1), zvar(2)
    assert schur_finite((1,), [z1, z2]) == z1 + z2
    assert schur_finite((1, 1), [z1]) == ZERO
    assert schur_finite((2,), [z1, z2]) == z1 ** 2 + z1 * z2 + z2 ** 2


def test_bialternant_matches_plethysm_and_jacobi_trudi():
    vals = [Q, T, Q * T]
    for lam in partitions(4):
        direct = schur_finite(lam, vals)
        assert direct == schur_jt(lam, vals)
        assert direct == plethysm(s(*lam), alphabet_of(vals))


def test_from_x_polynomial():
    assert from_x_polynomial({(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}, 1, 3).coeffs == {(1,): ONE}
    assert from_x_polynomial({(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1}, 2, 3).coeffs == {(1, 1): ONE}
    assert from_x_polynomial({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1}, 2, 3).coeffs == {(2,): ONE}
    with pytest.raises(ValueError):
        from_x_polynomial({(2, 0, 0): 1, (0, 2, 0): 1}, 2, 3)


def test_lemma_orthogonality_examples():
    assert schur_orthogonality_check((), (1,), 2, 1)
    assert schur_orthogonality_check((1,), (), 2, 1)
    assert schur_orthogonality_check((), (1,), 3, 1)
    with pytest.raises(ValueError):
        schur_orthogonality_check((1,), (1,), 2, 1)


def test_roundtrip_conversions():
    for n in range(1, 9):
        for lam in partitions(n):
            for b in ("m", "h", "e", "p"):
                f = s(*lam).convert(b)
                assert f.convert("s").coeffs == {lam: ONE}


# ---------------------------------------------------------------- properties

coeff_st = st.tuples(st.integers(-3, 3), st.integers(0, 2), st.integers(0, 2)).map(
    lambda t: QTRat(t[0]) + Q ** t[1] * T ** t[2])


@st.composite
def symf(draw, degree):
    lams = partitions(degree)
    terms = draw(st.dictionaries(st.sampled_from(lams), coeff_st, max_size=3))
    return SymF(draw(st.sampled_from(["s", "h", "p"])), degree, terms)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(lambda d: st.tuples(st.just(d), st.integers(1, d), st.data())))
def test_e_perp_adjoint(args):
    d, N, data = args
    f = data.draw(symf(d))
    g = data.draw(symf(d - N))
    assert hall(e_perp(N, f), g) == hall(f, mul(basis("e", N), g))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5).flatmap(lambda m: st.tuples(st.just(m), symf(m), symf(m))))
def test_rev_star_compatibility(args):
    m, f, g = args
    assert star_inner(f.rev(), g.rev()) == (Q * T) ** m * star_inner(f, g).rev()


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3).flatmap(lambda a: st.tuples(symf(a), st.integers(1, 3).flatmap(symf))))
def test_plethysm_identity_and_multiplicative(args):
    f, g = args
    assert plethysm(f, X) == f
    A = alphabet_of([Q, T ** 2]) + X
    lhs = plethysm(mul(f, g), A)
    fa, ga = _graded(plethysm(f, A), f.degree), _graded(plethysm(g, A), g.degree)
    prod = {}
    for d1, a in fa.items():
        for d2, b in ga.items():
            prod[d1 + d2] = prod[d1 + d2] + mul(a, b) if d1 + d2 in prod else mul(a, b)
    lhs = _graded(lhs, f.degree + g.degree)
    prod = {d: v for d, v in prod.items() if not v.is_zero()}
    assert prod.keys() == lhs.keys()
    for d in lhs:
        assert lhs[d] == prod[d]


def _graded(value, degree):
    value = value if isinstance(value, dict) else {degree: value}
    return {d: v for d, v in value.items() if not v.is_zero()}


@settings(max_examples=20, deadline=None)
@given(st.integers(5, 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1))), st.integers(0, 10 ** 6))
def test_lemma_orthogonality_random_specialization(nk, seed):
    import random
    from macpiece.shapes import partitions_in_box
    n, k = nk
    rng = random.Random(seed)
    lam = rng.choice(partitions_in_box(k, n - k))
    mus = [mu for mu in partitions_in_box(n - k, k) if sum(mu) <= k * (n - k) - sum(lam)]
    assert schur_orthogonality_check(lam, rng.choice(mus), n, k, seed=seed)


def test_lemma_orthogonality_symbolic_small():
    from macpiece.shapes import partitions_in_box
    count = 0
    for n in range(2, 5):
        for k in range(1, n):
            for lam in partitions_in_box(k, n - k):
                for mu in partitions_in_box(n - k, k):
                    if sum(mu) <= k * (n - k) - sum(lam):
                        assert schur_orthogonality_check(lam, mu, n, k)
                        count += 1
    assert count > 50


def test_fraction_path_matches_symbolic():
    from macpiece.symfunc import orthogonality_sum
    vals = [Fraction(2), Fraction(-3, 5), Fraction(7, 2)]
    sym = orthogonality_sum((1,), (1,), 3, 1)
    num = orthogonality_sum((1,), (1,), 3, 1, vals)
    assert sym.evaluate(0, 0, vals) == num
