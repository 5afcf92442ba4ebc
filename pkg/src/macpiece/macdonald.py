"""Modified Macdonald polynomials from the HHL statistic on filled diagrams,
the cycling and column-exchange moves, *-orthogonal expansion and nabla."""
from collections import defaultdict
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from . import cache
from .qt_field import NVARS, ONE, ZERO, Q, T, QTRat, qt_mono, zvar
from .shapes import (conjugate, d_poly, delta, general_arm_leg,
                     hook_products, part, partitions, remove_corners, t_weight)
from .symfunc import (EPS, X, SymF, alphabet_of, e_perp, from_x_polynomial,
                      plethysm, star_inner)

MAX_SIZE = 10
FULL_ENUM_MAX = 5


class FilledDiagram:
    """Columns of row indices plus a QTRat value on each non-bottom cell."""

    def __init__(self, columns, filling):
        self.columns = tuple(tuple(sorted(set(c))) for c in columns)
        cellset = self.cellset()
        self.filling = {u: v for u, v in filling.items() if u in cellset}
        for u in cellset:
            if not self.is_bottom(u) and u not in self.filling:
                raise ValueError(f"filling missing at non-bottom cell {u}")

    def cellset(self):
        return {(r, c) for c, col in enumerate(self.columns, 1) for r in col}

    def cells(self):
        """Cells in reading order: top row first, left to right."""
        return sorted(self.cellset(), key=lambda u: (-u[0], u[1]))

    def size(self):
        return sum(len(c) for c in self.columns)

    def is_bottom(self, u):
        r, c = u
        return (r - 1) not in self.columns[c - 1]

    def value(self, u):
        return self.filling.get(u, ONE)

    def restricted_filling(self):
        return {u: v for u, v in self.filling.items() if not self.is_bottom(u)}

    def __eq__(self, other):
        return (isinstance(other, FilledDiagram) and self.columns == other.columns
                and self.restricted_filling() == other.restricted_filling())

    def __repr__(self):
        return f"FilledDiagram({self.columns}, {len(self.filling)} values)"


def column_diagram(heights):
    return [tuple(range(1, h + 1)) for h in heights]


def standard_filling(beta):
    """Standard filling q^-arm t^(leg+1) on bottom-justified columns of heights beta."""
    beta = list(beta)
    filling = {}
    for i, h in enumerate(beta, 1):
        for j in range(2, h + 1):
            al = general_arm_leg(beta, (j, i))
            filling[(j, i)] = qt_mono(-al["arm"], al["leg"] + 1)
    return FilledDiagram(column_diagram(beta), filling)


def stat(fd, word):
    """q^#inversions times the product of filling values over descents."""
    cells = fd.cells()
    if len(word) != len(cells):
        raise ValueError("word length does not match diagram size")
    val = dict(zip(cells, word))
    inv = 0
    for (i, j) in cells:
        for (i2, j2) in cells:
            if ((i == i2 and j < j2) or (i == i2 + 1 and j > j2)) and val[(i, j)] > val[(i2, j2)]:
                inv += 1
    out = Q ** inv
    for (i, j) in cells:
        below = (i - 1, j)
        if below in val and val[(i, j)] > val[below]:
            out = out * fd.value((i, j))
    return out


# ------------------------------------------------------------ vectorized HHL

def _structure(fd):
    cells = fd.cells()
    idx = {u: a for a, u in enumerate(cells)}
    au, av = [], []
    for a, (i, j) in enumerate(cells):
        for b, (i2, j2) in enumerate(cells):
            if (i == i2 and j < j2) or (i == i2 + 1 and j > j2):
                au.append(a)
                av.append(b)
    du, dv, weights = [], [], []
    for (i, j) in cells:
        if (i - 1, j) in idx:
            du.append(idx[(i, j)])
            dv.append(idx[(i - 1, j)])
            weights.append(fd.value((i, j)))
    return (np.array(au, dtype=np.intp), np.array(av, dtype=np.intp),
            np.array(du, dtype=np.intp), np.array(dv, dtype=np.intp), weights)


def content_words(counts):
    """All words with counts[i] copies of letter i+1, as an int8 array."""
    n = sum(counts)
    words = np.zeros((1, n), dtype=np.int8)
    free = n
    for letter, c in enumerate(counts, 1):
        if c == 0:
            continue
        choice = np.array(list(combinations(range(free), c)), dtype=np.intp)
        free_pos = np.nonzero(words == 0)[1].reshape(len(words), free)
        new = np.repeat(words, len(choice), axis=0)
        pos = free_pos[:, choice].reshape(len(new), c)
        rows = np.repeat(np.arange(len(new)), c)
        new[rows, pos.ravel()] = letter
        words = new
        free -= c
    return words


def _grouped_stats(words, struct):
    au, av, du, dv, _ = struct
    inv = (words[:, au] > words[:, av]).sum(axis=1).astype(np.int64)
    nd = len(du)
    if nd:
        bits = (words[:, du] > words[:, dv]).astype(np.int64)
        mask = bits @ (np.int64(1) << np.arange(nd, dtype=np.int64))
    else:
        mask = np.zeros(len(words), dtype=np.int64)
    key = (inv << nd) | mask
    keys, counts = np.unique(key, return_counts=True)
    return keys >> nd, keys & ((1 << nd) - 1), counts


def _weight_sum(inv, mask, counts, weights):
    """Sum of count * q^inv * prod(weights over mask bits) as a QTRat."""
    nd = len(weights)
    if all(w.is_monomial() for w in weights):
        exps = np.zeros((nd, NVARS), dtype=np.int64)
        coef = 1
        for r, w in enumerate(weights):
            (e, c), = w.laurent_terms().items()
            if c != 1:
                coef = None
                break
            exps[r] = e
        if coef is not None:
            bits = ((mask[:, None] >> np.arange(nd, dtype=np.int64)) & 1) if nd else np.zeros((len(mask), 0), np.int64)
            tot = bits @ exps
            tot[:, 0] += inv
            uniq, inverse = np.unique(tot, axis=0, return_inverse=True)
            acc = np.zeros(len(uniq), dtype=np.int64)
            np.add.at(acc, inverse.ravel(), counts.astype(np.int64))
            return QTRat.from_laurent({tuple(int(x) for x in e): int(c) for e, c in zip(uniq, acc)})
    total = ZERO
    for i, m, c in zip(inv, mask, counts):
        term = Q ** int(i) * int(c)
        for r in range(nd):
            if (int(m) >> r) & 1:
                term = term * weights[r]
        total = total + term
    return total


def _content_coefficient(fd, struct, counts):
    words = content_words(counts)
    inv, mask, cnt = _grouped_stats(words, struct)
    return _weight_sum(inv, mask, cnt, struct[4])


def _all_words(d):
    return np.array(list(product(range(1, d + 1), repeat=d)), dtype=np.int8).reshape(-1, d)


def htilde_filled(fd, method="auto"):
    """H~ of a filled diagram, returned in the Schur basis.

    method 'full' enumerates all d^d words and checks symmetry of the whole
    x-polynomial; 'content' enumerates words of each partition content and
    spot-checks symmetry on the reversed contents.
    """
    d = fd.size()
    if d == 0:
        return SymF.one()
    if method == "auto":
        method = "full" if d <= FULL_ENUM_MAX else "content"
    struct = _structure(fd)
    if method == "full":
        words = _all_words(d)
        contents = np.stack([(words == a).sum(axis=1) for a in range(1, d + 1)], axis=1)
        ckey = contents @ (np.int64(d + 1) ** np.arange(d, dtype=np.int64))
        poly = {}
        for ck in np.unique(ckey):
            sel = words[ckey == ck]
            inv, mask, cnt = _grouped_stats(sel, struct)
            e = tuple(int(x) for x in contents[np.argmax(ckey == ck)])
            poly[e] = _weight_sum(inv, mask, cnt, struct[4])
        return from_x_polynomial(poly, d, d).convert("s")
    coeffs = {}
    for alpha in partitions(d):
        c = _content_coefficient(fd, struct, alpha)
        if len(set(alpha)) > 1:
            back = _content_coefficient(fd, struct, tuple(reversed(alpha)))
            if back != c:
                raise ValueError(f"statistic is not symmetric at content {alpha}")
        if c:
            coeffs[alpha] = c
    return SymF("m", d, coeffs).convert("s")


def htilde_bruteforce(fd):
    """Reference: sum stat over every word with the scalar stat function."""
    d = fd.size()
    poly = defaultdict(lambda: ZERO)
    for w in product(range(1, d + 1), repeat=d):
        e = tuple(w.count(a) for a in range(1, d + 1))
        poly[e] = poly[e] + stat(fd, w)
    return from_x_polynomial(dict(poly), d, d).convert("s")


# ------------------------------------------------------------ H~_mu

def _check_schur_positive(f, mu):
    for lam, c in f.coeffs.items():
        if not c.is_poly() or any(int(v) < 0 for v in c.num.coeffs()):
            raise ArithmeticError(f"H~{mu}: Schur coefficient at {lam} is not a positive polynomial: {c}")


@lru_cache(maxsize=None)
def htilde(mu):
    mu = part(mu)
    if sum(mu) > MAX_SIZE:
        raise ValueError(f"|mu| = {sum(mu)} exceeds the supported bound {MAX_SIZE}; "
                         "raise macdonald.MAX_SIZE if you accept the cost")
    if not mu:
        return SymF.one()
    stored = cache.load(mu)
    if stored is not None:
        return SymF.from_json(stored)
    f = htilde_filled(standard_filling(conjugate(mu)))
    _check_schur_positive(f, mu)
    cache.store(mu, f.to_json())
    return f


@lru_cache(maxsize=None)
def htilde_p(mu):
    return htilde(mu).convert("p")


def kostka(lam, mu):
    return htilde(mu).coeff(lam)


@lru_cache(maxsize=None)
def _norm(mu):
    a, b = hook_products(mu)
    return a * b


def mac_expand(f, check=True):
    """Coefficients c_mu with f = sum c_mu H~_mu, by *-orthogonality."""
    if f.degree == 0:
        return {(): f.convert("s").coeff(())}
    out = {}
    for mu in partitions(f.degree):
        c = star_inner(f, htilde_p(mu))
        if c:
            out[mu] = c / _norm(mu)
    if check and mac_assemble(out, f.degree) != f:
        raise ArithmeticError("Macdonald expansion does not reconstruct its input")
    return out


def mac_assemble(coeffs, degree):
    total = SymF("s", degree)
    for mu, c in coeffs.items():
        total = total + htilde(mu).scale(c)
    return total


def nabla(f, power=1):
    if f.degree == 0:
        return f.convert("s")
    exp = mac_expand(f, check=False)
    return mac_assemble({mu: c * t_weight(mu) ** power for mu, c in exp.items()}, f.degree)


def nabla_schur(lam):
    lam = part(lam)
    return _nabla_schur(lam)


@lru_cache(maxsize=None)
def _nabla_schur(lam):
    return nabla(SymF.basis_element("s", lam))


# ------------------------------------------------------------ Lemma: e-perp of H~

def pi_prime(f):
    """Pi'_f = nabla^{-1} f[X - eps], graded as {degree: SymF}."""
    g = plethysm(f, X - EPS)
    if isinstance(g, SymF):
        g = {g.degree: g}
    return {d: nabla(part_, power=-1) for d, part_ in g.items()}


def skew_macdonald_rhs(mu, m):
    mu = part(mu)
    D = alphabet_of([d_poly(mu)])
    total = SymF("s", m)
    for lam in partitions(m):
        val = ZERO
        for comp in pi_prime(htilde(lam)).values():
            val = val + plethysm(comp, D)
        coeff = val.rev() * t_weight(lam) / _norm(lam)
        total = total + htilde(lam).scale(coeff)
    return total.scale((Q * T) ** m * t_weight(mu))


def skew_macdonald_check(mu, m):
    mu = part(mu)
    lhs = e_perp(sum(mu) - m, htilde(mu))
    return lhs == skew_macdonald_rhs(mu, m)


# ------------------------------------------------------------ diagram moves

def cycle(fd):
    """Move the leftmost column to the end, shifted up one row."""
    cols = list(fd.columns)
    first = cols[0]
    new_cols = cols[1:] + [tuple(r + 1 for r in first)]
    L = len(cols)
    filling = {}
    for (r, c), v in fd.filling.items():
        if c == 1:
            filling[(r + 1, L)] = v
        else:
            filling[(r, c - 1)] = v
    return FilledDiagram(new_cols, filling)


def _interval(col):
    return bool(col) and col[0] == 1 and list(col) == list(range(1, len(col) + 1))


def col_exchange(fd, j):
    """Column exchange S_j: swap columns j, j+1 when the ratio conditions hold."""
    cols = fd.columns
    if not 1 <= j < len(cols):
        raise ValueError(f"column index {j} out of range")
    A, B = cols[j - 1], cols[j]
    if not (_interval(A) and _interval(B)):
        raise ValueError("columns j, j+1 must both be intervals starting at row 1")
    n, m = len(A), len(B)
    if n < m:
        raise ValueError(f"column {j} (height {n}) is shorter than column {j + 1} (height {m})")
    f = fd.value
    ratios = [f((r, j)) / f((r, j + 1)) for r in range(2, m + 1)]
    if n > m:
        target = f((m + 1, j)) / Q
        for r, ratio in zip(range(2, m + 1), ratios):
            if ratio != target:
                raise ValueError(f"ratio f({r},{j})/f({r},{j + 1}) = {ratio} differs from q^-1 f({m + 1},{j}) = {target}")
    else:
        for r, ratio in zip(range(3, m + 1), ratios[1:]):
            if ratio != ratios[0]:
                raise ValueError(f"ratio f({r},{j})/f({r},{j + 1}) = {ratio} differs from {ratios[0]}")
    new_cols = list(cols)
    new_cols[j - 1], new_cols[j] = B, A
    filling = {u: v for u, v in fd.filling.items() if u[1] not in (j, j + 1)}
    for r in B:
        if (r, j + 1) in fd.filling:
            filling[(r, j)] = fd.filling[(r, j + 1)]
    for r in A:
        if (r, j) in fd.filling:
            v = fd.filling[(r, j)]
            filling[(r, j + 1)] = v / Q if (r == m + 1 and n > m) else v
    return FilledDiagram(new_cols, filling)


def col_exchange_inverse(fd, j):
    """Inverse of S_j: column j is the short one, column j+1 the tall one."""
    cols = fd.columns
    B, A = cols[j - 1], cols[j]
    n, m = len(A), len(B)
    if n < m:
        raise ValueError("inverse exchange needs the taller column on the right")
    new_cols = list(cols)
    new_cols[j - 1], new_cols[j] = A, B
    filling = {u: v for u, v in fd.filling.items() if u[1] not in (j, j + 1)}
    for r in A:
        if (r, j + 1) in fd.filling:
            v = fd.filling[(r, j + 1)]
            filling[(r, j)] = v * Q if (r == m + 1 and n > m) else v
    for r in B:
        if (r, j) in fd.filling:
            filling[(r, j + 1)] = fd.filling[(r, j)]
    out = FilledDiagram(new_cols, filling)
    if col_exchange(out, j) != fd:
        raise ValueError("input is not in the image of the column exchange")
    return out


def truncate_rows(fd, m):
    """Keep rows >= m and shift them down so row m becomes row 1."""
    cols = [tuple(r - m + 1 for r in c if r >= m) for c in fd.columns]
    filling = {(r - m + 1, c): v for (r, c), v in fd.filling.items() if r >= m}
    return FilledDiagram(cols, filling)


# ------------------------------------------------------------ augmented staircase

def delta_z_values(n, N):
    """Specialization z_j = q^(1-j) t^(j+1-N-n) (j <= n), q^-n t^(j+1-N-n) (j > n)."""
    out = {}
    for j in range(1, N + n + 1):
        out[j] = qt_mono(1 - j, j + 1 - N - n) if j <= n else qt_mono(-n, j + 1 - N - n)
    return out


def build_delta_filled(n, N, S):
    """((delta_S, f_S), (delta_S, f^z_S)) for the augmented staircase delta_{n,N}."""
    S = sorted(S)
    k = len(S)
    if N + n > 8 + 1:
        raise ValueError("z indices would exceed the supported arity")
    dS = remove_corners(delta(n, N), S)
    heights = list(conjugate(dS))
    heights += [0] * (n - len(heights))  # a column can vanish when N = 1
    order = S + [c for c in range(1, n + 1) if c not in S]
    beta = [heights[c - 1] for c in order]
    fd = standard_filling(beta)
    for _ in range(k):
        fd = cycle(fd)
    Sc = [c for c in range(1, n + 1) if c not in S]
    fz = {}
    for (a, b) in fd.cellset():
        if fd.is_bottom((a, b)):
            continue
        top = N + n + 1 - a
        if b <= n - k:
            fz[(a, b)] = Q * zvar(top) / zvar(Sc[b - 1])
        else:
            i_b = S[b - (n - k) - 1]
            val = zvar(top) / zvar(i_b)
            fz[(a, b)] = val if top in Sc else Q * val
    return fd, FilledDiagram(fd.columns, fz)


def specialize_filling(fd, values):
    return FilledDiagram(fd.columns, {u: v.substitute(values) for u, v in fd.filling.items()})
