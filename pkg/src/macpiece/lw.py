"""The Loehr-Warrington formula: direct enumeration of fillings of D(lam) and
the Jacobi-Trudi style determinant of chain operators acting on y-monomials.

Frozen conventions (fixed by requiring agreement with the nabla oracle):
  * an operator prepends its chain, so matrix column j builds tuple slot j;
  * pivot columns get bottom first coordinate 0 (bar), other columns right
    of k-s get bottom first coordinate > 0 (hat);
  * plain and hat operators of subscript 0 are the identity, bar of
    subscript 0 is zero, every negative subscript is zero.
"""
from collections import Counter
from functools import lru_cache
from itertools import combinations, permutations
from typing import NamedTuple

from flint import fmpz_poly

from .qt_field import QTRat
from .shapes import lw_frame, LWFrame
from .symfunc import SymF, from_x_polynomial

KINDS = ("plain", "bar", "hat")


class PCell(NamedTuple):
    a: int
    b: int


def prec_p(u, v):
    """u strictly below v in the unit-interval order on Z>=0 x Z>=1."""
    return u[0] + 1 < v[0] or (u[0] + 1 == v[0] and u[1] >= v[1])


def lex(u, v):
    """Lexicographic order with the second coordinate reversed."""
    return u[0] < v[0] or (u[0] == v[0] and u[1] > v[1])


def dinv_pair(x, y):
    """Contribution of x in an earlier slot against y in a later slot."""
    return int((x[0] == y[0] and x[1] > y[1]) or (x[0] + 1 == y[0] and x[1] < y[1]))


def dinv(L):
    total = 0
    for i, j in combinations(range(len(L)), 2):
        for x in L[i]:
            for y in L[j]:
                total += dinv_pair(x, y)
    return total


def is_chain(seq):
    return all(prec_p(u, v) for u, v in zip(seq, seq[1:]))


def as_chain(cells):
    """Sort a P-chain given in any order; raise if the cells are not a chain."""
    seq = sorted((PCell(*c) for c in cells), key=lambda c: (c.a, -c.b))
    if not is_chain(seq):
        raise ValueError(f"not a P-chain: {seq}")
    return tuple(seq)


@lru_cache(maxsize=None)
def chains(m, kind, a_cap, labels):
    """All P-chains of length m with a <= a_cap and b <= labels, bottom first."""
    if kind not in KINDS:
        raise ValueError(f"unknown operator kind {kind!r}")
    if m < 0:
        return ()
    if m == 0:
        return () if kind == "bar" else ((),)
    firsts = [PCell(a, b) for a in range(a_cap + 1) for b in range(1, labels + 1)]
    if kind == "bar":
        firsts = [c for c in firsts if c.a == 0]
    elif kind == "hat":
        firsts = [c for c in firsts if c.a > 0]
    out = []

    def grow(seq):
        if len(seq) == m:
            out.append(tuple(seq))
            return
        last = seq[-1]
        for a in range(last.a + 1, a_cap + 1):
            for b in range(1, labels + 1):
                c = PCell(a, b)
                if prec_p(last, c):
                    seq.append(c)
                    grow(seq)
                    seq.pop()

    for c in firsts:
        grow([c])
    return tuple(out)


# ------------------------------------------------------------ y-polynomials

_QPOW = {}


def _qpow(d):
    if d not in _QPOW:
        _QPOW[d] = fmpz_poly([0] * d + [1])
    return _QPOW[d]


class YPoly:
    """Truncated polynomial in y_{a,b}: sorted PCell multiset -> fmpz_poly in q.

    Only monomials with every a <= a_cap and b <= labels are kept.  Because
    operators only ever append cells, this projection commutes with them.
    """

    __slots__ = ("terms", "a_cap", "labels")

    def __init__(self, a_cap, labels, terms=None):
        self.a_cap, self.labels = a_cap, labels
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def one(cls, a_cap, labels):
        return cls(a_cap, labels, {(): fmpz_poly([1])})

    def _like(self, terms):
        return YPoly(self.a_cap, self.labels, terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return self._like(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return self._like({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, YPoly) and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def specialize(self):
        """y_{a,b} -> t^a x_b; returns x-exponent tuple -> QTRat."""
        acc = {}
        for key, coeff in self.terms.items():
            x = [0] * self.labels
            tdeg = 0
            for a, b in key:
                x[b - 1] += 1
                tdeg += a
            bucket = acc.setdefault(tuple(x), {})
            for qd, c in enumerate(coeff.coeffs()):
                if c:
                    bucket[(qd, tdeg)] = bucket.get((qd, tdeg), 0) + int(c)
        return {x: QTRat.from_laurent(v) for x, v in acc.items()}


def _dinv_profile(key):
    """For each cell x, the dinv of {x} placed before the multiset key."""
    count = Counter(key)
    prof = {}

    def get(x):
        if x not in prof:
            prof[x] = sum(mult * dinv_pair(x, y) for y, mult in count.items())
        return prof[x]

    return get


def apply_op(kind, m, p, degree=None):
    """h_m (kind plain/bar/hat) applied to p; the new chain takes the earliest slot.

    With ``degree`` set, products with more than that many cells are dropped.
    """
    out = {}
    ch = chains(m, kind, p.a_cap, p.labels)
    if not ch:
        return p._like({})
    for key, coeff in p.terms.items():
        if degree is not None and len(key) + m > degree:
            continue
        get = _dinv_profile(key)
        for L in ch:
            new = tuple(sorted(key + L))
            d = sum(get(x) for x in L)
            out[new] = out[new] + coeff * _qpow(d) if new in out else coeff * _qpow(d)
    return p._like(out)


# ------------------------------------------------------------ operator matrices

def op(kind, m, coeff=1):
    """A single operator entry; entries are normalized sums of (kind, m) terms."""
    return normalize({(kind, m): coeff})


def normalize(entry):
    """Drop zero operators, rewrite hat_0 as plain_0 and bar_m + hat_m as plain_m."""
    acc = {}
    for (kind, m), c in dict(entry).items():
        if kind not in KINDS:
            raise ValueError(f"unknown operator kind {kind!r}")
        if m < 0 or (kind == "bar" and m == 0) or not c:
            continue
        if kind == "hat" and m == 0:
            kind = "plain"
        acc[(kind, m)] = acc.get((kind, m), 0) + c
    for (kind, m) in list(acc):
        if kind == "bar" and acc.get(("hat", m)) == acc[(kind, m)]:
            acc[("plain", m)] = acc.get(("plain", m), 0) + acc.pop(("hat", m))
            del acc[(kind, m)]
    return tuple(sorted((k, c) for k, c in acc.items() if c))


def entry_str(entry):
    if not entry:
        return "0"
    parts = []
    for (kind, m), c in entry:
        name = {"plain": "h", "bar": "hbar", "hat": "hhat"}[kind] + str(m)
        parts.append(name if c == 1 else f"{c}*{name}")
    return " + ".join(parts)


class OpMatrix:
    """Square matrix of operator entries, rows[i][j] 0-based."""

    def __init__(self, rows):
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("operator matrix must be square")
        self.rows = [[normalize(e) for e in r] for r in rows]

    @property
    def n(self):
        return len(self.rows)

    def column(self, j):
        return [r[j] for r in self.rows]

    def __eq__(self, other):
        return isinstance(other, OpMatrix) and self.rows == other.rows

    def first_row(self):
        return [entry_str(e) for e in self.rows[0]]

    def __str__(self):
        return "\n".join(" | ".join(entry_str(e) for e in r) for r in self.rows)


def apply_entry(entry, p, degree=None):
    out = p._like({})
    for (kind, m), c in entry:
        term = apply_op(kind, m, p, degree)
        out = out + (term if c == 1 else term.scale(c))
    return out


def graded_degree(M):
    """Common y-degree of every nonzero permutation term, or None if they differ."""
    degrees = set()
    for perm in permutations(range(M.n)):
        total = 0
        for j, i in enumerate(perm):
            subs = {m for (_, m), _ in M.rows[i][j]}
            if not subs:
                break
            if len(subs) > 1:
                return None
            total += subs.pop()
        else:
            degrees.add(total)
    return degrees.pop() if len(degrees) == 1 else None


def det_apply(M, a_cap, labels, degree="auto"):
    """det(M) . 1 = sum_sigma sgn(sigma) M[sigma(1),1] ... M[sigma(n),n] . 1.

    The rightmost factor acts first, so columns are consumed from the last
    one down; partial results are memoized on the set of rows used.  When
    every permutation term has the same y-degree (detected by default),
    partial products that are already too long are discarded.
    """
    n = M.n
    if n == 0:
        return YPoly.one(a_cap, labels)
    if degree == "auto":
        degree = graded_degree(M)
    layer = {frozenset(): YPoly.one(a_cap, labels)}
    for j in range(n - 1, -1, -1):
        nxt = {}
        for used, p in layer.items():
            if p.is_zero():
                continue
            for r in range(n):
                if r in used or not M.rows[r][j]:
                    continue
                sign = -1 if sum(1 for u in used if u < r) % 2 else 1
                term = apply_entry(M.rows[r][j], p, degree)
                if sign < 0:
                    term = term.scale(-1)
                key = used | {r}
                nxt[key] = nxt[key] + term if key in nxt else term
        layer = nxt
    return layer.get(frozenset(range(n)), YPoly(a_cap, labels))


def column_kind(frame, j):
    """Operator kind of column j (1-based) of W(lam)."""
    if j <= frame.k - frame.s:
        return "plain"
    return "bar" if j in frame.piv else "hat"


def w_matrix(frame):
    n = frame.n
    return OpMatrix([[op(column_kind(frame, j), frame.v[j - 1] - i + 1) for j in range(1, n + 1)]
                     for i in range(1, n + 1)])


def w_s_matrix(frame):
    n, k = frame.n, frame.k
    lam = list(frame.lam) + [0] * (k - len(frame.lam))
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if j <= k:
                row.append(op("plain", lam[k - j] + j - i))
            else:
                row.append(op("hat", j - i))
        rows.append(row)
    return OpMatrix(rows)


def t_move(M, a, b):
    """Move column b to position a (1-based, a <= b), shifting a..b-1 right."""
    n = M.n
    if not (1 <= a <= b <= n):
        raise ValueError(f"bad column move ({a}, {b}) for a {n}x{n} matrix")
    order = list(range(n))
    col = order.pop(b - 1)
    order.insert(a - 1, col)
    return OpMatrix([[r[c] for c in order] for r in M.rows])


def add_column(M, src, dst):
    """Add column src to column dst (1-based)."""
    rows = []
    for r in M.rows:
        r = list(r)
        merged = dict(r[dst - 1])
        for key, c in r[src - 1]:
            merged[key] = merged.get(key, 0) + c
        r[dst - 1] = normalize(merged)
        rows.append(r)
    return OpMatrix(rows)


def w_recursion(frame):
    """[W^(0), W^(1), ..., W^(s)]; step i+1 moves column piv_{i+1} to k-s+i+1 and
    then adds column piv_{i+1}+1 to it."""
    Ws = [w_matrix(frame)]
    for i in range(frame.s):
        a = frame.k - frame.s + i + 1
        b = frame.piv[i]
        moved = t_move(Ws[-1], a, b)
        Ws.append(add_column(moved, b + 1, a))
    if Ws[-1] != w_s_matrix(frame):
        raise AssertionError(f"column recursion for {frame.lam} does not reach the closed form")
    return Ws


def check_w_recursion(frame, a_cap=None, labels=None):
    """(-q)^adj det W(lam) . 1 == det W^(s) . 1 on truncated y-polynomials."""
    a_cap = frame.n if a_cap is None else a_cap
    labels = labels or max(frame.size, 1)
    Ws = w_recursion(frame)
    lhs = det_apply(Ws[0], a_cap, labels).scale(fmpz_poly([0, -1]) ** frame.adj)
    return lhs == det_apply(Ws[-1], a_cap, labels)


# ------------------------------------------------------------ LW assembly

def _assemble(xpoly, degree, labels, adj_q):
    if degree == 0:
        c = xpoly.get((), None)
        if c is None:
            c = sum(xpoly.values(), QTRat(0))
        return SymF("s", 0, {(): c * QTRat.monomial((adj_q, 0))})
    shift = QTRat.monomial((adj_q, 0))
    return from_x_polynomial({x: c * shift for x, c in xpoly.items()}, degree, labels).convert("s")


def _stable(compute, a_cap, what):
    low, high = compute(a_cap), compute(a_cap + 1)
    if low != high:
        diff = high - low
        raise ArithmeticError(f"{what}: output changed between a_cap={a_cap} and {a_cap + 1}: "
                              f"difference {diff}")
    return low


def _frame(frame, n=None, k=None):
    if isinstance(frame, LWFrame):
        return frame
    return lw_frame(frame, n, k)


def lw_via_det(frame, a_cap=None, labels=None):
    """LW_lam = (-1)^adj det(W^(s)) . 1 with y_{a,b} -> t^a x_b."""
    frame = _frame(frame)
    a_cap = frame.n if a_cap is None else a_cap
    labels = labels or frame.size
    W = w_s_matrix(frame)
    sign = -1 if frame.adj % 2 else 1

    def compute(cap):
        y = det_apply(W, cap, max(labels, 1))
        return _assemble({x[:labels]: c * sign for x, c in y.specialize().items()},
                         frame.size, labels, 0)

    return _stable(compute, a_cap, f"det path for {frame.lam}")


def column_rows(frame, j):
    """Rows of column j (1-based) of D(lam), bottom first."""
    return frame.dlam[j - 1]


def enum_tableaux(frame, a_cap=None, labels=None):
    """Yield (filling, dinv, area, label multiset) for T(lam) truncated at a_cap.

    A filling is a tuple of columns, each a bottom-first tuple of PCells.
    """
    frame = _frame(frame)
    a_cap = frame.n if a_cap is None else a_cap
    labels = labels or max(frame.size, 1)
    n = frame.n
    options = [chains(len(column_rows(frame, j)), column_kind(frame, j), a_cap, labels)
               for j in range(1, n + 1)]

    def row_ok(prev_rows, prev, rows, col):
        pos = {r: c for r, c in zip(prev_rows, prev)}
        return all(not (r in pos and prec_p(c, pos[r])) for r, c in zip(rows, col))

    def rec(j, filled, seen, dv):
        if j > n:
            cells = [c for col in filled for c in col]
            yield (tuple(filled), dv, sum(c.a for c in cells),
                   tuple(sorted(c.b for c in cells)))
            return
        rows = column_rows(frame, j)
        for col in options[j - 1]:
            if j > 1 and not row_ok(column_rows(frame, j - 1), filled[-1], rows, col):
                continue
            extra = sum(mult * dinv_pair(x, y) for x, mult in seen.items() for y in col)
            filled.append(col)
            yield from rec(j + 1, filled, seen + Counter(col), dv + extra)
            filled.pop()

    yield from rec(1, [], Counter(), 0)


def lw_direct(frame, a_cap=None, labels=None):
    """q^adj sum_T q^dinv t^area x^T over T(lam)."""
    frame = _frame(frame)
    a_cap = frame.n if a_cap is None else a_cap
    labels = labels or frame.size

    def compute(cap):
        acc = {}
        for T, dv, area, labs in enum_tableaux(frame, cap, max(labels, 1)):
            x = [0] * labels
            for b in labs:
                x[b - 1] += 1
            bucket = acc.setdefault(tuple(x), {})
            bucket[(dv, area)] = bucket.get((dv, area), 0) + 1
        xpoly = {x: QTRat.from_laurent(v) for x, v in acc.items()}
        return _assemble(xpoly, frame.size, labels, frame.adj)

    return _stable(compute, a_cap, f"direct path for {frame.lam}")


def statistics_histograms(frame, a_cap=None, labels=None):
    """(dinv histogram, area histogram) over T(lam), as sorted (value, count) lists."""
    dh, ah = Counter(), Counter()
    for _, dv, area, _ in enum_tableaux(frame, a_cap, labels):
        dh[dv] += 1
        ah[area] += 1
    return sorted(dh.items()), sorted(ah.items())


# ------------------------------------------------------------ SW involution

def sw_involution(L1, L2):
    """Swap the odd components of the dinv graph between the two chains.

    Vertices are the cells of L1 and L2, with an edge x -> y when x <lex y and
    x is not P-below y.  Components are alternating paths.  Odd paths change
    sides, which swaps the chain lengths; even paths stay, which keeps dinv.
    """
    L1, L2 = as_chain(L1), as_chain(L2)
    verts = [(c, 0) for c in L1] + [(c, 1) for c in L2]
    nv = len(verts)
    adj = [[] for _ in range(nv)]
    for i in range(nv):
        for j in range(nv):
            x, y = verts[i][0], verts[j][0]
            if i != j and lex(x, y) and not prec_p(x, y):
                if verts[i][1] == verts[j][1]:
                    raise AssertionError("edge inside a single chain")
                adj[i].append(j)
                adj[j].append(i)
    side = [s for _, s in verts]
    seen = [False] * nv
    for i in range(nv):
        if seen[i]:
            continue
        comp, stack = [], [i]
        seen[i] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        if len(comp) % 2 == 1:
            for u in comp:
                side[u] = 1 - side[u]
    out1 = [verts[i][0] for i in range(nv) if side[i] == 0]
    out2 = [verts[i][0] for i in range(nv) if side[i] == 1]
    return as_chain(out1), as_chain(out2)


# ------------------------------------------------------------ lemma instances

def lemma_q_mult_matrices(v):
    """V with hat_{v_i+j-1} (j < n) and bar_{v_i+n-1} in the last column, and T_{1,n}(V)."""
    n = len(v)
    V = OpMatrix([[op("hat", v[i] + j - 1) if j < n else op("bar", v[i] + n - 1)
                   for j in range(1, n + 1)] for i in range(n)])
    return V, t_move(V, 1, n)


def check_lemma_q_mult(v, a_cap, labels):
    """(-q)^(n-1) det V . 1 == det T_{1,n}(V) . 1."""
    V, TV = lemma_q_mult_matrices(v)
    lhs = det_apply(V, a_cap, labels).scale(fmpz_poly([0, -1]) ** (len(v) - 1))
    return lhs == det_apply(TV, a_cap, labels)


def lemma_q_middle_matrices(v):
    n = len(v)

    def build(first, second):
        rows = []
        for i in range(n):
            row = [op(*first(v[i])), op(*second(v[i]))]
            row += [op("plain", v[i] + j - 2) for j in range(3, n + 1)]
            rows.append(row)
        return OpMatrix(rows)

    V = build(lambda x: ("hat", x), lambda x: ("bar", x + n - 1))
    Vp = build(lambda x: ("bar", x + n - 1), lambda x: ("hat", x))
    return V, Vp


def check_lemma_q_middle(v, a_cap, labels):
    """q det V . 1 + det V' . 1 == 0."""
    V, Vp = lemma_q_middle_matrices(v)
    total = det_apply(V, a_cap, labels).scale(fmpz_poly([0, 1])) + det_apply(Vp, a_cap, labels)
    return total.is_zero()


def commutes(kind, m1, m2, a_cap, labels):
    one = YPoly.one(a_cap, labels)
    return apply_op(kind, m1, apply_op(kind, m2, one)) == apply_op(kind, m2, apply_op(kind, m1, one))


def frames_for(lam, max_n):
    """All (n, k) with lam inside the k x (n-k) box and n <= max_n."""
    lam = tuple(lam)
    out = []
    for n in range(2, max_n + 1):
        for k in range(1, n):
            if len(lam) <= k and (not lam or lam[0] <= n - k):
                out.append((n, k))
    return out
