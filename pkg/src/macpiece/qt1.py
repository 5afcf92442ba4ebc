"""Specializations at q = t = 1: binomial determinants, h-expansions of nabla
s_lam, the two-path check of the piece-polynomial h-expansion and the
relative dimensions RD(lam) with their observed regularities."""
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from flint import fmpz_mat

from .macdonald import nabla_schur
from .piece import h_lambda_coefficients, h_lambda_mu_s, piece_poly
from .qt_field import PoleError
from .shapes import (conjugate, contains, corners, part, partitions, partitions_in_box,
                     staircase, tilde)

# RD values printed in the source table for |lam| <= 6 (treated as constants).
RD_TABLE = {
    (1,): Fraction(1, 2),
    (2,): Fraction(1, 3), (1, 1): Fraction(5, 12),
    (3,): Fraction(1, 4), (2, 1): Fraction(1, 4), (1, 1, 1): Fraction(3, 8),
    (4,): Fraction(1, 5), (3, 1): Fraction(7, 40), (2, 2): Fraction(17, 72),
    (2, 1, 1): Fraction(77, 360), (1, 1, 1, 1): Fraction(251, 720),
    (5,): Fraction(1, 6), (4, 1): Fraction(2, 15), (3, 2): Fraction(19, 120),
    (3, 1, 1): Fraction(7, 48), (2, 2, 1): Fraction(47, 240), (2, 1, 1, 1): Fraction(139, 720),
    (1, 1, 1, 1, 1): Fraction(95, 288),
    (6,): Fraction(1, 7), (5, 1): Fraction(3, 28), (4, 2): Fraction(7, 60),
    (4, 1, 1): Fraction(23, 210), (3, 3): Fraction(37, 240), (3, 2, 1): Fraction(1, 8),
    (3, 1, 1, 1): Fraction(437, 3360), (2, 2, 2): Fraction(413, 2160),
    (2, 2, 1, 1): Fraction(749, 4320), (2, 1, 1, 1, 1): Fraction(5419, 30240),
    (1, 1, 1, 1, 1, 1): Fraction(19087, 60480),
}

# Norlund / Hirzebruch ratios for the one-column shapes (1^(n-1)), n = 2..7.
ONE_COLUMN = {2: Fraction(1, 2), 3: Fraction(5, 12), 4: Fraction(3, 8),
              5: Fraction(251, 720), 6: Fraction(95, 288), 7: Fraction(19087, 60480)}


def d_coeff(lam, nu, k):
    """det( C(lam_i + k - i, nu_j + k - j) ) for 1 <= i, j <= k."""
    lam, nu = part(lam), part(nu)
    if len(lam) > k or len(nu) > k:
        raise ValueError(f"partitions longer than k={k}")
    if k == 0:
        return 1
    lp = list(lam) + [0] * (k - len(lam))
    np_ = list(nu) + [0] * (k - len(nu))
    rows = [[comb(lp[i] + k - 1 - i, np_[j] + k - 1 - j) for j in range(k)] for i in range(k)]
    return int(fmpz_mat(rows).det())


# ------------------------------------------------------------ h-expansions at q=t=1

def at_one(c, t_power=1, what=""):
    try:
        return c.at_one(t_power)
    except PoleError as exc:
        raise PoleError(f"surviving pole at q=t=1 {what}: {exc}") from exc


def h_at_one(f, t_power=1):
    """h-basis coefficients of f at q=t=1, as partition -> Fraction."""
    h = f.convert("h")
    out = {}
    for lam, c in h.coeffs.items():
        v = at_one(c, t_power, f"in the h{lam} coefficient")
        if v:
            out[lam] = v
    return out


def s_at_one(f, t_power=1):
    out = {}
    for lam, c in f.convert("s").coeffs.items():
        v = at_one(c, t_power, f"in the s{lam} coefficient")
        if v:
            out[lam] = v
    return out


def sorted_terms(exp, order="lex"):
    """Terms of an h-expansion; 'lex' is decreasing lexicographic, 'length' puts
    longer partitions first and breaks ties by increasing lexicographic order."""
    if order == "length":
        return sorted(exp.items(), key=lambda kv: (-len(kv[0]), kv[0]))
    return sorted(exp.items(), key=lambda kv: kv[0], reverse=True)


def _num(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_h(exp, order="lex"):
    """e.g. 'h[2,1] - 3*h[1,1,1]'."""
    if not exp:
        return "0"
    out = []
    for i, (lam, c) in enumerate(sorted_terms(exp, order)):
        name = f"h[{','.join(map(str, lam))}]"
        mag = abs(c)
        body = name if mag == 1 else f"{_num(mag)}*{name}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def render_h_tex(exp, order="length"):
    """TeX-style rendering: h_{(2,1,1)}+3h_{(2,2)}-h_{(3,1)}."""
    out = []
    for i, (lam, c) in enumerate(sorted_terms(exp, order)):
        name = "h_{(" + ",".join(map(str, lam)) + ")}"
        mag = abs(c)
        body = name if mag == 1 else f"{_num(mag)}{name}"
        out.append(("-" if c < 0 else ("+" if i else "")) + body)
    return "".join(out) or "0"


@lru_cache(maxsize=None)
def _w_table(lam, t_power):
    return tuple(sorted(h_at_one(nabla_schur(lam), t_power).items()))


def w_table(lam, t_power=1):
    """W_{lam, tau} = [h_tau] nabla s_lam at q=t=1, via the restriction t = q**t_power."""
    return dict(_w_table(part(lam), t_power))


def w_cross_check(lam):
    """The t=q and t=q^2 restrictions give the same limit."""
    return w_table(lam, 1) == w_table(lam, 2)


def _add_ones(tau, m):
    """Element-wise tau + (1^m), tau padded with zeros to length m."""
    if len(tau) > m:
        raise ValueError(f"{tau} has more than {m} parts")
    return part(tuple(x + 1 for x in tuple(tau) + (0,) * (m - len(tau))))


def theorem_rhs(mu, lam, k):
    """sum_{nu in lam} (-1)^{|lam|-|nu|} d_{lam,nu} sum_tau W_{tilde nu, tau} h_{tau + 1^...}."""
    mu, lam = part(mu), part(lam)
    n = len(corners(mu))
    N = sum(mu) - k
    out = {}
    for nu in partitions_in_box(k, n - k):
        if not contains(lam, nu):
            continue
        d = d_coeff(lam, nu, k)
        if not d:
            continue
        sign = (-1) ** (sum(lam) - sum(nu))
        nt = tilde(nu, n, k)
        for tau, w in w_table(nt).items():
            key = _add_ones(tau, N - sum(nt))
            out[key] = out.get(key, 0) + sign * d * w
    return {k_: v for k_, v in out.items() if v}


def piece_qt1(mu, lam, k, check=True):
    """h-expansion of I_{mu,lam,k} at q=t=1; path A specializes the exact piece
    polynomial, path B assembles the closed form from d_coeff and w_table."""
    a = h_at_one(piece_poly(part(mu), part(lam), k))
    if check:
        b = theorem_rhs(mu, lam, k)
        if a != b:
            raise AssertionError(f"q=t=1 paths differ for I{mu},{lam},{k}: {render_h(a)} vs {render_h(b)}")
    return a


# ------------------------------------------------------------ relative dimension

def e_pairing_h(exp):
    """<f, e_{1^N}> / N! for f given by its h-expansion: each h_alpha gives 1/prod alpha_i!."""
    total = Fraction(0)
    for alpha, c in exp.items():
        w = 1
        for a in alpha:
            w *= factorial(a)
        total += Fraction(c) / w
    return total


def syt_count(lam):
    lam = part(lam)
    lc = conjugate(lam)
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= (row - j - 1) + (lc[j] - i - 1) + 1
    return factorial(sum(lam)) // hooks


def e_pairing_s(exp):
    N = None
    total = Fraction(0)
    for lam, c in exp.items():
        N = sum(lam)
        total += Fraction(c) * syt_count(lam)
    return total / factorial(N) if N is not None else total


@lru_cache(maxsize=None)
def nabla_weight(kappa):
    """Pairing weight of sum_tau W_{kappa,tau} h_{tau + 1^m}: each term gives
    1/prod (tau_i + 1)!, whatever the padding length m."""
    total = Fraction(0)
    for tau, w in w_table(kappa).items():
        d = 1
        for x in tau:
            d *= factorial(x + 1)
        total += Fraction(w) / d
    return total


def piece_weight(nu, n, k):
    """<I_{mu,nu,k}[X;1,1], e_{1^N}> / N!, independent of mu by the closed form."""
    total = Fraction(0)
    for nup in partitions_in_box(k, n - k):
        if not contains(nu, nup):
            continue
        d = d_coeff(nu, nup, k)
        if d:
            total += (-1) ** (sum(nu) - sum(nup)) * d * nabla_weight(tilde(nup, n, k))
    return total


def rd_frame(lam):
    """Smallest frame: k = l(lam), n = k + lam_1, S = {1..k}."""
    lam = part(lam)
    k = max(len(lam), 1)
    n = k + (lam[0] if lam else 1)
    return n, k, tuple(range(1, k + 1))


def rd(lam, n=None, k=None, S=None):
    """RD(lam) from the pi-coefficients at z=1 and the closed-form pairings."""
    lam = part(lam)
    fn, fk, fS = rd_frame(lam)
    n = n or fn
    k = k or fk
    S = tuple(S) if S else tuple(range(1, k + 1))
    total = Fraction(0)
    for nu, c in h_lambda_coefficients(S, lam, n, k).items():
        if not c:
            continue
        try:
            cz = c.evaluate(1, 1, [1] * n)
        except PoleError as exc:
            raise PoleError(f"pi-coefficient for nu={nu} has a pole at z=1") from exc
        if cz:
            total += cz * piece_weight(nu, n, k)
    return total


def rd_direct(lam, mu, S=None):
    """RD(lam) from the full H~^lam_{mu^S} at q=t=1 (small mu only)."""
    mu, lam = part(mu), part(lam)
    k = max(len(lam), 1)
    S = tuple(S) if S else tuple(range(1, k + 1))
    H = h_lambda_mu_s(mu, S, lam)
    return e_pairing_s(s_at_one(H))


def rd_table(max_size):
    return {lam: rd(lam) for size in range(1, max_size + 1) for lam in partitions(size)}


def hooks(n):
    return [part((n - i,) + (1,) * i) for i in range(n)]


def observations_suite(max_size, values=None):
    """Check the four observed regularities on computed RD values.

    Returns a list of (name, case, ok, detail)."""
    vals = dict(values) if values is not None else rd_table(max_size)
    vals[()] = Fraction(1)
    rows = []
    for size in range(0, max_size):
        for lam in partitions(size):
            plus = _add_cell(lam)
            if not all(m in vals for m in plus):
                continue
            lhs = (len(plus) - Fraction(1, 2)) * vals[lam]
            rhs = sum((vals[m] for m in plus), Fraction(0))
            rows.append(("pieri", lam, lhs == rhs, f"{lhs} vs {rhs}"))
    for n in range(2, max_size + 2):
        lam = (1,) * (n - 1)
        if lam in vals and n in ONE_COLUMN:
            rows.append(("one-column", lam, vals[lam] == ONE_COLUMN[n], f"{vals[lam]} vs {ONE_COLUMN[n]}"))
    n = 2
    while sum(staircase(n)) <= max_size:
        lam = staircase(n)
        target = Fraction(1, 2 ** (n - 1))
        rows.append(("staircase", lam, vals[lam] == target, f"{vals[lam]} vs {target}"))
        n += 1
    for n in range(1, max_size + 1):
        total = sum((vals[h] for h in hooks(n)), Fraction(0))
        target = 1 - Fraction(1, 2 ** n)
        rows.append(("hooks", n, total == target, f"{total} vs {target}"))
    return rows


def _add_cell(lam):
    lam = list(lam)
    out = []
    for i in range(len(lam) + 1):
        new = lam + [0]
        new[i] += 1
        if i == 0 or new[i] <= new[i - 1]:
            out.append(part(new))
    return out
