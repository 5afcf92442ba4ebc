"""Partitions, cells, column diagrams and the frame data of the LW formula.

Cells are ``(row, col)`` pairs, 1-based, in French convention: row 1 is the
bottom row.  Partitions are plain tuples of positive integers.
"""
from dataclasses import dataclass
from functools import lru_cache

from .qt_field import ONE, M, qt_mono, QTRat


def part(seq):
    """Normalize a sequence to a partition tuple (drops zeros, checks order)."""
    p = tuple(int(x) for x in seq if int(x) != 0)
    if any(x < 0 for x in p) or any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"not a partition: {tuple(seq)}")
    return p


@lru_cache(maxsize=None)
def partitions(n, max_part=None):
    """All partitions of n in decreasing lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_in_box(rows, cols):
    """Partitions fitting in a rows x cols rectangle, by size then decreasing lex."""
    out = []
    for n in range(rows * cols + 1):
        out.extend(p for p in partitions(n) if len(p) <= rows and (not p or p[0] <= cols))
    return out


def conjugate(p):
    if not p:
        return ()
    return tuple(sum(1 for x in p if x > j) for j in range(p[0]))


def cells(mu):
    return [(i + 1, j + 1) for i, r in enumerate(mu) for j in range(r)]


def contains(big, small):
    return len(small) <= len(big) and all(s <= b for s, b in zip(small, big))


def cell_stats(mu, u):
    """arm, leg, coarm, coleg of cell u=(row, col) of mu."""
    i, j = u
    if not (1 <= i <= len(mu) and 1 <= j <= mu[i - 1]):
        raise ValueError(f"cell {u} not in {mu}")
    mc = conjugate(mu)
    return {"arm": mu[i - 1] - j, "leg": mc[j - 1] - i, "coarm": j - 1, "coleg": i - 1}


def corners(mu):
    """Removable corners, top row first, each with weight q^-coarm t^-coleg."""
    out = []
    for i in range(len(mu), 0, -1):
        if i == len(mu) or mu[i] < mu[i - 1]:
            c = (i, mu[i - 1])
            out.append((c, qt_mono(-(c[1] - 1), -(c[0] - 1))))
    return out


def corner_weights(mu):
    return [w for _, w in corners(mu)]


def remove_corners(mu, S):
    """Delete the corners with the given 1-based indices."""
    cs = corners(mu)
    rows = list(mu)
    for s in S:
        if not 1 <= s <= len(cs):
            raise ValueError(f"corner index {s} out of range for {mu}")
        rows[cs[s - 1][0][0] - 1] -= 1
    return part(rows)


def t_weight(mu):
    """T_mu = prod over cells of t^(row-1) q^(col-1)."""
    a = sum(j - 1 for _, j in cells(mu))
    b = sum(i - 1 for i, _ in cells(mu))
    return qt_mono(a, b)


def b_sum(mu):
    total = QTRat(0)
    for i, j in cells(mu):
        total = total + qt_mono(j - 1, i - 1)
    return total


def d_poly(mu):
    return M * b_sum(mu) - 1


def hook_products(mu):
    """(prod (q^arm - t^(leg+1)), prod (t^leg - q^(arm+1)))."""
    h1, h2 = ONE, ONE
    for u in cells(mu):
        st = cell_stats(mu, u)
        h1 = h1 * (qt_mono(st["arm"], 0) - qt_mono(0, st["leg"] + 1))
        h2 = h2 * (qt_mono(0, st["leg"]) - qt_mono(st["arm"] + 1, 0))
    return h1, h2


def general_arm_leg(beta, u):
    """Arm and leg of u=(row j, col i) in the bottom-justified column diagram beta.

    leg counts the cells strictly above u.  arm counts cells of row j strictly
    to the right in columns no taller than column i, plus cells of row j-1
    strictly to the left in columns strictly shorter than column i.
    """
    j, i = u
    if not (1 <= i <= len(beta) and 1 <= j <= beta[i - 1]):
        raise ValueError(f"cell {u} not in column diagram {tuple(beta)}")
    h = beta[i - 1]
    left = sum(1 for b in beta[:i - 1] if j - 1 <= b < h)
    right = sum(1 for b in beta[i:] if j <= b <= h)
    return {"arm": left + right, "leg": h - j}


def in_box(lam, n, k):
    return len(lam) <= k and (not lam or lam[0] <= n - k)


def tilde(lam, n, k):
    """Conjugate of the complement (n-k-lam_k, ..., n-k-lam_1) in the k x (n-k) box."""
    lam = part(lam)
    if not in_box(lam, n, k):
        raise ValueError(f"{lam} does not fit in {k} x {n - k}")
    padded = list(lam) + [0] * (k - len(lam))
    comp = part(sorted((n - k - x for x in padded), reverse=True))
    return conjugate(comp)


def staircase(k):
    """st_k = (k-1, ..., 1)."""
    return tuple(range(k - 1, 0, -1))


def delta(n, N):
    """Augmented staircase (n^N, n-1, ..., 1); it has exactly n corners."""
    return (n,) * N + tuple(range(n - 1, 0, -1))


def durfee(lam):
    s = 0
    while s < len(lam) and lam[s] >= s + 1:
        s += 1
    return s


@dataclass(frozen=True)
class LWFrame:
    lam: tuple
    n: int
    k: int
    s: int
    adj: int
    v: tuple
    bo: tuple
    piv: tuple
    dlam: tuple  # columns as tuples of row indices (possibly empty)

    @property
    def size(self):
        return sum(self.lam)


def lw_frame(lam, n, k):
    lam = part(lam)
    if not in_box(lam, n, k):
        raise ValueError(f"{lam} does not fit in {k} x {n - k}")
    s = durfee(lam)
    adj = sum(lam[i] - (i + 1) for i in range(s))
    padded = list(lam) + [0] * (k - len(lam))
    shifted = [padded[i] + k - (i + 1) for i in range(k)]
    v = tuple(sorted(shifted + list(range(k, n))))
    bo = tuple(s + j + 1 - v[j] for j in range(n))
    piv = []
    for i in range(1, s + 1):
        target = padded[s - i] + k - (s + 1 - i)
        a = next(j for j in range(n - 1) if v[j] == v[j + 1] == target)
        piv.append(a + 1)
    dlam = tuple(tuple(range(b, s + 1)) for b in bo)
    return LWFrame(lam, n, k, s, adj, v, bo, tuple(piv), dlam)
