"""Macdonald piece polynomials I_{mu,lam,k}, the pi-operator calculus and the
vanishing / nabla checks built on them."""
from functools import lru_cache
from itertools import combinations

from .macdonald import htilde, nabla_schur
from .qt_field import ONE, ZERO, PoleError, zvar
from .shapes import (corner_weights, corners, in_box, part, partitions_in_box,
                     remove_corners, t_weight, tilde)
from .symfunc import SymF, e_perp, schur_jt


def _check_input(mu, lam, k, allow_full=False):
    mu, lam = part(mu), part(lam)
    n = len(corners(mu))
    hi = n if allow_full else n - 1
    if not 1 <= k <= hi:
        raise ValueError(f"k={k} must satisfy 1 <= k <= {hi} for a partition with {n} corners")
    if not in_box(lam, n, k):
        raise ValueError(f"{lam} does not fit in the {k} x {n - k} box")
    return mu, lam, n


def subsets(n, k):
    """k-subsets of 1..n as sorted tuples, lexicographic."""
    return [tuple(c) for c in combinations(range(1, n + 1), k)]


def piece_coefficient(lam, S, zs):
    """(-1)^|lam| s_lam[z_S] prod_{Sc} z_j / prod_{i in S, j in Sc} (z_j - z_i)."""
    n = len(zs)
    Sc = [j for j in range(1, n + 1) if j not in S]
    num = schur_jt(lam, [zs[i - 1] for i in S])
    for j in Sc:
        num = num * zs[j - 1]
    den = ONE
    for i in S:
        for j in Sc:
            den = den * (zs[j - 1] - zs[i - 1])
    if not den:
        raise PoleError("coincident corner weights")
    return num / den * (-1) ** sum(lam)


@lru_cache(maxsize=None)
def piece_poly(mu, lam, k):
    """I_{mu,lam,k} in the Schur basis."""
    mu, lam, n = _check_input(mu, lam, k)
    zs = corner_weights(mu)
    total = SymF("s", sum(mu) - k)
    for S in subsets(n, k):
        c = piece_coefficient(lam, S, zs)
        total = total + htilde(remove_corners(mu, S)).scale(c)
    for nu, c in total.coeffs.items():
        if not c.is_laurent():
            raise ArithmeticError(f"I{mu},{lam},{k}: denominator survives at s{nu}: {c}")
    return total


def vanishing_range(mu, lam, k):
    mu, lam, n = _check_input(mu, lam, k)
    lo = sum(mu) - sum(tilde(lam, n, k)) - k
    return list(range(lo + 1, sum(mu) - k + 1))


def verify_vanishing(mu, lam, k):
    """Check e_N-perp I = 0 above the predicted threshold; returns (ok, per-N report)."""
    I = piece_poly(mu, lam, k)
    report = []
    for N in vanishing_range(mu, lam, k):
        report.append((N, e_perp(N, I).is_zero()))
    return all(ok for _, ok in report), report


def nabla_via_piece(mu, lam, k):
    """(1/T_{mu with all corners removed}) e-perp_{|mu|-|tilde lam|-k} I."""
    mu, lam, n = _check_input(mu, lam, k)
    N = sum(mu) - sum(tilde(lam, n, k)) - k
    core = remove_corners(mu, range(1, n + 1))
    return e_perp(N, piece_poly(mu, lam, k)).scale(t_weight(core).inverse())


def check_nabla_via_piece(mu, lam, k):
    mu, lam, n = _check_input(mu, lam, k)
    return nabla_via_piece(mu, lam, k) == nabla_schur(tilde(lam, n, k))


# ------------------------------------------------------------ S(lam)

def s_lambda_set(S, lam, n, k):
    """All k-subsets S' with b_s <= lam_{a_s} in the pairing of S minus S' with S' within Sc."""
    S = tuple(sorted(S))
    lam = part(lam)
    lp = list(lam) + [0] * (k - len(lam))
    Sc = [j for j in range(1, n + 1) if j not in S]
    out = []
    for Sp in subsets(n, k):
        gone = [S.index(i) + 1 for i in S if i not in Sp]           # a_1 < a_2 < ...
        came = sorted((Sc.index(j) + 1 for j in Sp if j in Sc), reverse=True)  # b_1 > b_2 > ...
        if all(b <= lp[a - 1] for a, b in zip(gone, came)):
            out.append(Sp)
    return out


# ------------------------------------------------------------ pi operators

def pi_op(i, j, f):
    """(z_j f - z_i f|swap) / (z_j - z_i)."""
    if i == j:
        raise ValueError("pi needs distinct indices")
    zi, zj = zvar(i), zvar(j)
    return (zj * f - zi * f.swap_z(i, j)) / (zj - zi)


def pi_pairs(lam, S, n):
    """Index pairs (i_r, j_s) for the cells (r, s) of lam, in row reading order."""
    S = sorted(S)
    Sc = [j for j in range(1, n + 1) if j not in S]
    if not in_box(part(lam), n, len(S)):
        raise ValueError(f"{tuple(lam)} does not fit in the {len(S)} x {n - len(S)} box")
    return [(S[r], Sc[s]) for r, row in enumerate(part(lam)) for s in range(row)]


def pi_seq(lam, S, n, f):
    """Apply the product of pi_{i_r, j_s} over cells of lam.  The operators do
    not commute; the one for the first cell in row reading order acts first."""
    for i, j in pi_pairs(lam, S, n):
        f = pi_op(i, j, f)
    return f


def lemma_coefficients(S, n, k):
    """nu -> s_{tilde nu}[z_Sc] / prod_{j in Sc} z_j, with symbolic z."""
    Sc = [j for j in range(1, n + 1) if j not in S]
    zsc = [zvar(j) for j in Sc]
    prod = ONE
    for z in zsc:
        prod = prod * z
    return {nu: schur_jt(tilde(nu, n, k), zsc) / prod for nu in partitions_in_box(k, n - k)}


def specialize(coeff, zs):
    return coeff.substitute({i: z for i, z in enumerate(zs, 1)})


def h_lambda_coefficients(S, lam, n, k):
    """nu -> pi_{lam,S}(coefficient of I_nu), still symbolic in z."""
    return {nu: pi_seq(lam, S, n, c) for nu, c in lemma_coefficients(S, n, k).items()}


def h_lambda_mu_s(mu, S, lam):
    """H~^lam_{mu^S} = Phi(pi_{lam,S} H~_{mu^S}[X; q, t, z])."""
    mu = part(mu)
    S = tuple(sorted(S))
    n = len(corners(mu))
    k = len(S)
    zs = corner_weights(mu)
    total = SymF("s", sum(mu) - k)
    for nu, c in h_lambda_coefficients(S, lam, n, k).items():
        if not c:
            continue
        try:
            val = specialize(c, zs)
        except PoleError as exc:
            raise PoleError(f"pole under the corner specialization for nu={nu}: {exc}") from exc
        if k == n:
            continue
        total = total + piece_poly(mu, nu, k).scale(val)
    return total


def reconstruct_h(mu, S):
    """Lemma: H~_{mu^S} = sum_nu s_{tilde nu}[z_Sc] / prod z_Sc * I_{mu,nu,k}."""
    mu = part(mu)
    S = tuple(sorted(S))
    n = len(corners(mu))
    k = len(S)
    zs = corner_weights(mu)
    Sc = [j for j in range(1, n + 1) if j not in S]
    prod = ONE
    for j in Sc:
        prod = prod * zs[j - 1]
    total = SymF("s", sum(mu) - k)
    for nu in partitions_in_box(k, n - k):
        c = schur_jt(tilde(nu, n, k), [zs[j - 1] for j in Sc]) / prod
        total = total + piece_poly(mu, nu, k).scale(c)
    return total == htilde(remove_corners(mu, S))


def lemma_matrices(n, k):
    """Symbolic change-of-basis matrices (M, M') between {H~_{mu^S}} and {I_nu}."""
    lams = partitions_in_box(k, n - k)
    Ss = subsets(n, k)
    zs = [zvar(i) for i in range(1, n + 1)]
    Mm = [[piece_coefficient(lam, S, zs) for S in Ss] for lam in lams]
    Mp = []
    for S in Ss:
        Sc = [j for j in range(1, n + 1) if j not in S]
        prod = ONE
        for j in Sc:
            prod = prod * zs[j - 1]
        Mp.append([schur_jt(tilde(lam, n, k), [zs[j - 1] for j in Sc]) / prod for lam in lams])
    return Mm, Mp


def _matmul(A, B):
    return [[sum((A[i][l] * B[l][j] for l in range(len(B))), ZERO) for j in range(len(B[0]))]
            for i in range(len(A))]


def check_lemma_matrices(n, k):
    Mm, Mp = lemma_matrices(n, k)
    size = len(Mm)
    ident = [[ONE if i == j else ZERO for j in range(size)] for i in range(size)]
    return _matmul(Mm, Mp) == ident and _matmul(Mp, Mm) == ident


# ------------------------------------------------------------ positivity dashboard

def adj_of(lam):
    from .shapes import durfee
    s = durfee(lam)
    return sum(lam[i] - (i + 1) for i in range(s))


def schur_sign_status(f):
    """'+' if all Schur coefficients are polynomials with nonnegative coefficients,
    '-' if all are nonpositive, '0' for zero, else 'mixed'."""
    if f.is_zero():
        return "0"
    signs = set()
    for c in f.coeffs.values():
        if not c.is_laurent():
            return "mixed"
        for v in c.laurent_terms().values():
            signs.add(v > 0)
    if signs == {True}:
        return "+"
    if signs == {False}:
        return "-"
    return "mixed"


def default_chain(n, k):
    """A saturated chain from the empty partition to the full k x (n-k) box, row by row."""
    chain = [()]
    cur = [0] * k
    for r in range(k):
        for _ in range(n - k):
            cur[r] += 1
            chain.append(part(cur))
    return chain


def positivity_dashboard(mu, k, chain=None, S=None):
    """Report rows (label, status) for the conjectural positivity statements."""
    mu = part(mu)
    n = len(corners(mu))
    chain = chain or default_chain(n, k)
    S = tuple(sorted(S)) if S else tuple(range(1, k + 1))
    rows = []
    for lam in partitions_in_box(k, n - k):
        I = piece_poly(mu, lam, k)
        sign = (-1) ** adj_of(tilde(lam, n, k))
        rows.append((f"I{mu},{lam},{k} * (-1)^adj", schur_sign_status(I.scale(sign))))
    hs = [h_lambda_mu_s(mu, S, lam) for lam in chain]
    for a, b, la, lb in zip(hs, hs[1:], chain, chain[1:]):
        rows.append((f"H^{la} - H^{lb} at S={S}", schur_sign_status(a - b)))
    return rows
