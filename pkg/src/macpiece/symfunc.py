"""Homogeneous symmetric functions with QTRat coefficients.

Transition data between the classical bases is routed through the Schur
basis: characters (Murnaghan-Nakayama) connect s and p, Kostka numbers
connect s with h, e and m.  Products and plethysm are done in the p basis.
"""
import itertools
import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

import flint

from .qt_field import ONE, ZERO, QTRat, as_rat, zvar, PoleError
from .shapes import conjugate, partitions, part, tilde, in_box

BASES = ("s", "m", "h", "e", "p")


# ---------------------------------------------------------------- tables

@lru_cache(maxsize=None)
def z_coeff(rho):
    out = 1
    for k in set(rho):
        mk = rho.count(k)
        out *= k ** mk * factorial(mk)
    return out


@lru_cache(maxsize=None)
def character(lam, rho):
    """chi^lam(rho) by removing border strips of length rho[0] recursively."""
    if not rho:
        return 1 if not lam else 0
    r, rest = rho[0], rho[1:]
    L = len(lam)
    beta = [lam[i] + L - 1 - i for i in range(L)]
    bset = set(beta)
    total = 0
    for x in beta:
        y = x - r
        if y < 0 or y in bset:
            continue
        sign = (-1) ** sum(1 for b in beta if y < b < x)
        nb = sorted((bset - {x}) | {y}, reverse=True)
        new = part(b - (L - 1 - i) for i, b in enumerate(nb))
        total += sign * character(new, rest)
    return total


@lru_cache(maxsize=None)
def kostka_number(lam, mu):
    """Number of SSYT of shape lam and content mu (horizontal strip recursion)."""
    if sum(lam) != sum(mu):
        return 0
    if not mu:
        return 1
    last, rest = mu[-1], mu[:-1]
    total = 0
    for nu in _remove_horizontal_strip(lam, last):
        total += kostka_number(nu, rest)
    return total


def _remove_horizontal_strip(lam, r):
    L = len(lam)
    out = []

    def rec(i, left, acc):
        if i == L:
            if left == 0:
                out.append(part(acc))
            return
        lo = lam[i + 1] if i + 1 < L else 0
        for nv in range(lam[i], lo - 1, -1):
            d = lam[i] - nv
            if d > left:
                break
            rec(i + 1, left - d, acc + [nv])

    rec(0, r, [])
    return out


def _invert(mat, n):
    """Exact inverse of a transition matrix given as dict row -> {col: value}."""
    ps = partitions(n)
    idx = {p: i for i, p in enumerate(ps)}
    A = flint.fmpq_mat(len(ps), len(ps))
    for r, row in mat.items():
        for c, v in row.items():
            v = Fraction(v)
            A[idx[r], idx[c]] = flint.fmpq(v.numerator, v.denominator)
    B = A.inv()
    out = {}
    for i, r in enumerate(ps):
        row = {}
        for j, c in enumerate(ps):
            v = B[i, j]
            if v != 0:
                row[c] = Fraction(int(v.p), int(v.q))
        out[r] = row
    return out


@lru_cache(maxsize=None)
def to_s_matrix(basis, n):
    """Rows: index in `basis`; values: Schur coefficients."""
    ps = partitions(n)
    if basis == "s":
        return {p: {p: Fraction(1)} for p in ps}
    if basis == "p":
        return {r: {l: Fraction(character(l, r)) for l in ps if character(l, r)} for r in ps}
    if basis == "h":
        return {m: {l: Fraction(kostka_number(l, m)) for l in ps if kostka_number(l, m)} for m in ps}
    if basis == "e":
        return {m: {l: Fraction(kostka_number(conjugate(l), m)) for l in ps
                    if kostka_number(conjugate(l), m)} for m in ps}
    if basis == "m":
        return _invert(from_s_matrix("m", n), n)
    raise ValueError(f"unknown basis {basis!r}")


@lru_cache(maxsize=None)
def from_s_matrix(basis, n):
    ps = partitions(n)
    if basis == "s":
        return to_s_matrix("s", n)
    if basis == "p":
        return {l: {r: Fraction(character(l, r), z_coeff(r)) for r in ps if character(l, r)}
                for l in ps}
    if basis == "m":
        return {l: {m: Fraction(kostka_number(l, m)) for m in ps if kostka_number(l, m)} for l in ps}
    if basis in ("h", "e"):
        return _invert(to_s_matrix(basis, n), n)
    raise ValueError(f"unknown basis {basis!r}")


_RAT_CACHE = {}


def _rat(fr):
    r = _RAT_CACHE.get(fr)
    if r is None:
        r = _RAT_CACHE[fr] = QTRat(fr)
    return r


def _apply(coeffs, mat):
    out = defaultdict(lambda: ZERO)
    for idx, c in coeffs.items():
        for j, w in mat[idx].items():
            if w.denominator == 1:
                out[j] = out[j] + c * int(w)
            else:
                out[j] = out[j] + c * _rat(w)
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------- SymF

class SymF:
    """Homogeneous symmetric function: basis tag, degree, partition -> QTRat."""

    __slots__ = ("basis", "degree", "coeffs")

    def __init__(self, basis, degree, coeffs=None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        self.degree = degree
        clean = {}
        for k, v in (coeffs or {}).items():
            k = part(k)
            if sum(k) != degree:
                raise ValueError(f"index {k} has size != degree {degree}")
            v = as_rat(v)
            if v:
                clean[k] = clean.get(k, ZERO) + v
        self.coeffs = {k: v for k, v in clean.items() if v}

    @classmethod
    def basis_element(cls, basis, lam, coeff=ONE):
        lam = part(lam)
        return cls(basis, sum(lam), {lam: coeff})

    @classmethod
    def one(cls):
        return cls("s", 0, {(): ONE})

    def is_zero(self):
        return not self.coeffs

    def convert(self, basis):
        if basis == self.basis:
            return self
        if basis not in BASES:
            raise ValueError(f"cannot convert to basis {basis!r} here")
        s = self.coeffs if self.basis == "s" else _apply(self.coeffs, to_s_matrix(self.basis, self.degree))
        out = s if basis == "s" else _apply(s, from_s_matrix(basis, self.degree))
        return SymF(basis, self.degree, out)

    def _same(self, other):
        if not isinstance(other, SymF):
            raise TypeError("expected SymF")
        if self.degree != other.degree:
            if self.is_zero() or other.is_zero():
                return other.convert(self.basis) if not other.is_zero() else SymF(self.basis, self.degree)
            raise ValueError(f"degree mismatch {self.degree} vs {other.degree}")
        return other.convert(self.basis)

    def __add__(self, other):
        if isinstance(other, SymF) and self.is_zero():
            return other
        o = self._same(other)
        out = dict(self.coeffs)
        for k, v in o.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return SymF(self.basis, self.degree if not o.coeffs else o.degree, out)

    def __neg__(self):
        return SymF(self.basis, self.degree, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_rat(c)
        return SymF(self.basis, self.degree, {k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, SymF):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, SymF):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if self.degree != other.degree:
            return False
        a = self.convert("s").coeffs
        b = other.convert("s").coeffs
        return a == b

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.convert("s").coeffs.items()))))

    def map_coeffs(self, fn):
        return SymF(self.basis, self.degree, {k: fn(v) for k, v in self.coeffs.items()})

    def rev(self):
        return self.map_coeffs(lambda c: c.rev())

    def coeff(self, lam):
        return self.coeffs.get(part(lam), ZERO)

    def terms(self):
        """(partition, coefficient) pairs in decreasing lexicographic order."""
        return sorted(self.coeffs.items(), key=lambda kv: kv[0], reverse=True)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"SymF({self})"

    def to_json(self):
        return {"basis": self.basis, "degree": self.degree,
                "terms": [{"index": list(k), "coeff": v.to_json()} for k, v in self.terms()]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["basis"], obj["degree"],
                   {tuple(t["index"]): QTRat.from_json(t["coeff"]) for t in obj["terms"]})


def render(f):
    if f.is_zero():
        return "0"
    out = []
    for i, (lam, c) in enumerate(f.terms()):
        name = f"{f.basis}[{','.join(map(str, lam))}]"
        neg = False
        if c.is_monomial():
            cc = -c if int(c.num.leading_coefficient()) < 0 else c
            neg = cc is not c
            body = name if cc == ONE else f"{cc}*{name}"
        else:
            body = f"{name}*({c})"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def mul(f, g):
    a, b = f.convert("p"), g.convert("p")
    out = defaultdict(lambda: ZERO)
    for r1, c1 in a.coeffs.items():
        for r2, c2 in b.coeffs.items():
            key = tuple(sorted(r1 + r2, reverse=True))
            out[key] = out[key] + c1 * c2
    res = SymF("p", f.degree + g.degree, out)
    return res if f.basis == "p" else res.convert(f.basis)


def hall(f, g):
    if f.degree != g.degree:
        raise ValueError("degree mismatch")
    a, b = f.convert("s").coeffs, g.convert("s").coeffs
    total = ZERO
    for k, v in a.items():
        if k in b:
            total = total + v * b[k]
    return total


@lru_cache(maxsize=None)
def star_weight(rho):
    """<p_rho, p_rho>_* = (-1)^(|rho|-l(rho)) z_rho prod (1-q^r)(1-t^r)."""
    from .qt_field import Q, T
    w = QTRat((-1) ** (sum(rho) - len(rho)) * z_coeff(rho))
    for r in rho:
        w = w * (1 - Q ** r) * (1 - T ** r)
    return w


def star_inner(f, g):
    if f.degree != g.degree:
        raise ValueError("degree mismatch")
    a, b = f.convert("p").coeffs, g.convert("p").coeffs
    total = ZERO
    for k, v in a.items():
        if k in b:
            total = total + v * b[k] * star_weight(k)
    return total


def omega(f):
    if f.basis == "s":
        return SymF("s", f.degree, {conjugate(k): v for k, v in f.coeffs.items()})
    p = f.convert("p")
    out = SymF("p", f.degree, {k: v * (-1) ** (sum(k) - len(k)) for k, v in p.coeffs.items()})
    return out.convert(f.basis)


def e_perp(N, f):
    """Adjoint of multiplication by e_N: removes vertical N-strips in the s basis."""
    if N > f.degree:
        return SymF("s", 0)
    s = f.convert("s")
    out = defaultdict(lambda: ZERO)
    for lam, c in s.coeffs.items():
        for nu in _remove_vertical_strip(lam, N):
            out[nu] = out[nu] + c
    return SymF("s", f.degree - N, out)


def _remove_vertical_strip(lam, N):
    lc = conjugate(lam)
    return [conjugate(nu) for nu in _remove_horizontal_strip(lc, N)]


# ---------------------------------------------------------------- plethysm

@dataclass
class AlphabetExpr:
    """x*X + x_eps*(eps X) + eps*eps + scalar, all coefficients QTRat.

    p_k maps to (x(k) + (-1)^k x_eps(k)) p_k + (-1)^k eps(k) + scalar(k), where
    c(k) substitutes every variable by its k-th power.
    """
    x: QTRat = field(default_factory=lambda: ZERO)
    x_eps: QTRat = field(default_factory=lambda: ZERO)
    eps: QTRat = field(default_factory=lambda: ZERO)
    scalar: QTRat = field(default_factory=lambda: ZERO)

    def _parts(self):
        return (self.x, self.x_eps, self.eps, self.scalar)

    def __add__(self, other):
        other = _alpha(other)
        return AlphabetExpr(*[a + b for a, b in zip(self._parts(), other._parts())])

    __radd__ = __add__

    def __neg__(self):
        return AlphabetExpr(*[-a for a in self._parts()])

    def __sub__(self, other):
        return self + (-_alpha(other))

    def __rsub__(self, other):
        return _alpha(other) - self

    def scaled(self, c):
        c = as_rat(c)
        return AlphabetExpr(*[a * c for a in self._parts()])

    def __rmul__(self, c):
        return self.scaled(c)

    def has_x(self):
        return bool(self.x) or bool(self.x_eps)

    def power_image(self, k):
        """(coefficient of p_k, scalar part) of p_k[A]."""
        sign = -1 if k % 2 else 1
        coef = self.x.frobenius(k) + self.x_eps.frobenius(k) * sign
        const = self.eps.frobenius(k) * sign + self.scalar.frobenius(k)
        return coef, const


def _alpha(x):
    if isinstance(x, AlphabetExpr):
        return x
    return AlphabetExpr(scalar=as_rat(x))


X = AlphabetExpr(x=ONE)
EPS = AlphabetExpr(eps=ONE)


def alphabet_of(values):
    """The alphabet whose letters are the given QTRat values."""
    total = ZERO
    for v in values:
        total = total + as_rat(v)
    return AlphabetExpr(scalar=total)


def plethysm(f, A):
    """f[A].  Scalar if A has no X part, SymF if homogeneous, else {degree: SymF}."""
    A = _alpha(A)
    p = f.convert("p")
    images = {}
    graded = defaultdict(lambda: defaultdict(lambda: ZERO))
    for rho, c in p.coeffs.items():
        acc = {(): c}
        for r in rho:
            if r not in images:
                images[r] = A.power_image(r)
            coef, const = images[r]
            nxt = defaultdict(lambda: ZERO)
            for key, v in acc.items():
                if coef:
                    k2 = tuple(sorted(key + (r,), reverse=True))
                    nxt[k2] = nxt[k2] + v * coef
                if const:
                    nxt[key] = nxt[key] + v * const
            acc = nxt
        for key, v in acc.items():
            if v:
                graded[sum(key)][key] = graded[sum(key)][key] + v
    graded = {d: SymF("p", d, terms) for d, terms in graded.items()}
    graded = {d: g for d, g in graded.items() if not g.is_zero()}
    if not A.has_x():
        return graded[0].coeffs.get((), ZERO) if 0 in graded else ZERO
    if not graded:
        return SymF("p", f.degree)
    if len(graded) == 1 and f.degree in graded:
        return graded[f.degree]
    return graded


def scalar_plethysm(f, A):
    out = plethysm(f, A)
    if not isinstance(out, QTRat):
        raise ValueError("alphabet contains X")
    return out


# ---------------------------------------------------------------- finite variables

def _elementary_h(vals, top):
    """h_0..h_top of the given values by the one-variable-at-a-time recursion."""
    h = [ONE] + [ZERO] * top
    for v in vals:
        for d in range(1, top + 1):
            h[d] = h[d] + v * h[d - 1]
    return h


def _det(mat):
    n = len(mat)
    if n == 0:
        return ONE
    total = ZERO
    for perm in itertools.permutations(range(n)):
        term = ONE
        for i, j in enumerate(perm):
            term = term * mat[i][j]
            if not term:
                break
        if term:
            total = total + term * _perm_sign(perm)
    return total


def _perm_sign(perm):
    sign, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, L = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            L += 1
        if L % 2 == 0:
            sign = -sign
    return sign


def schur_finite(lam, vars):
    """Bialternant a_{lam+delta}/a_delta in the given values."""
    lam = part(lam)
    m = len(vars)
    if len(lam) > m:
        return ZERO
    vars = [as_rat(v) for v in vars]
    lp = list(lam) + [0] * (m - len(lam))
    num = _det([[v ** (lp[i] + m - 1 - i) for v in vars] for i in range(m)])
    den = ONE
    for i in range(m):
        for j in range(i + 1, m):
            den = den * (vars[i] - vars[j])
    if not den:
        raise PoleError("repeated values in bialternant")
    return num / den


def schur_jt(lam, vars):
    """Jacobi-Trudi det(h_{lam_i - i + j}) evaluated at the given values."""
    lam = part(lam)
    if len(lam) > len(vars):
        return ZERO
    if not lam:
        return ONE
    vars = [as_rat(v) for v in vars]
    top = lam[0] + len(lam)
    h = _elementary_h(vars, top)
    L = len(lam)

    def hh(d):
        return h[d] if 0 <= d <= top else ZERO
    return _det([[hh(lam[i] - i + j) for j in range(L)] for i in range(L)])


def schur_eval_fraction(lam, vals):
    """Jacobi-Trudi with plain Fraction values (fast path for random checks)."""
    lam = part(lam)
    if len(lam) > len(vals):
        return Fraction(0)
    if not lam:
        return Fraction(1)
    top = lam[0] + len(lam)
    h = [Fraction(1)] + [Fraction(0)] * top
    for v in vals:
        for d in range(1, top + 1):
            h[d] += v * h[d - 1]
    L = len(lam)
    mat = [[h[lam[i] - i + j] if 0 <= lam[i] - i + j <= top else Fraction(0)
            for j in range(L)] for i in range(L)]
    total = Fraction(0)
    for perm in itertools.permutations(range(L)):
        term = Fraction(_perm_sign(perm))
        for i, j in enumerate(perm):
            term *= mat[i][j]
        total += term
    return total


def from_x_polynomial(P, d, m):
    """Monomial-basis SymF from a polynomial in x_1..x_m given as exponent tuple -> coeff.

    Every orbit of exponent vectors under permutation must be fully present
    with a single common coefficient, otherwise ValueError is raised.
    """
    if m < d:
        raise ValueError("need at least as many variables as the degree")
    orbits = defaultdict(dict)
    for e, c in P.items():
        c = as_rat(c)
        if not c:
            continue
        e = tuple(e) + (0,) * (m - len(e))
        if sum(e) != d:
            raise ValueError(f"monomial {e} has degree != {d}")
        orbits[tuple(sorted(e, reverse=True))][e] = c
    out = {}
    for key, members in orbits.items():
        expected = _orbit_size(key)
        vals = set(members.values())
        if len(members) != expected or len(vals) != 1:
            raise ValueError(f"input is not symmetric at exponent orbit {key}")
        out[part(key)] = vals.pop()
    return SymF("m", d, out)


def _orbit_size(e):
    n = factorial(len(e))
    for v in set(e):
        n //= factorial(e.count(v))
    return n


# ---------------------------------------------------------------- Lemma: Schur orthogonality in a box

def orthogonality_sum(lam, mu, n, k, values=None):
    """Sum over k-subsets S of s_lam[z_S] s_mu[z_Sc] / prod_{i in S, j in Sc} (z_j - z_i).

    With values=None the z are the symbolic variables z_1..z_n; otherwise
    `values` is a list of n Fractions.
    """
    total = ZERO if values is None else Fraction(0)
    zs = [zvar(i) for i in range(1, n + 1)] if values is None else list(values)
    for S in itertools.combinations(range(n), k):
        Sc = [j for j in range(n) if j not in S]
        if values is None:
            num = schur_jt(lam, [zs[i] for i in S]) * schur_jt(mu, [zs[j] for j in Sc])
            den = ONE
        else:
            num = schur_eval_fraction(lam, [zs[i] for i in S]) * schur_eval_fraction(mu, [zs[j] for j in Sc])
            den = Fraction(1)
        for i in S:
            for j in Sc:
                den = den * (zs[j] - zs[i])
        total = total + num / den
    return total


def schur_orthogonality_check(lam, mu, n, k, seed=None):
    """Compare the box orthogonality sum with (-1)^|lam| delta(tilde lam, mu)."""
    lam, mu = part(lam), part(mu)
    if not in_box(lam, n, k) or sum(mu) > k * (n - k) - sum(lam):
        raise ValueError("size precondition violated")
    expected = (-1) ** sum(lam) if tilde(lam, n, k) == mu else 0
    if seed is None:
        return orthogonality_sum(lam, mu, n, k) == expected
    rng = random.Random(seed)
    vals = []
    while len(vals) < n:
        v = Fraction(rng.randint(-60, 60), rng.randint(1, 30))
        if v not in vals:
            vals.append(v)
    return orthogonality_sum(lam, mu, n, k, vals) == expected
