"""Verification suites run by `macpiece verify`.

Each suite yields cases (description, status, expected, actual, elapsed).
Status is "pass" or "fail" for hard checks and "report" for the
non-blocking positivity dashboard.
"""
import random
import time
from dataclasses import dataclass, field

from . import lw, macdonald, piece, qt1
from .macdonald import (col_exchange, col_exchange_inverse, cycle, htilde, htilde_filled,
                        htilde_p, skew_macdonald_check, standard_filling)
from .qt_field import QTRat, Q, T
from .shapes import conjugate, corners, lw_frame, partitions, partitions_in_box, t_weight
from .symfunc import SymF, e_perp, hall, mul, omega, schur_orthogonality_check, star_inner

SUITES = ("orthogonality", "main-theorem", "lw", "recursion", "lemma32", "lemma31",
          "qt1", "rd", "properties", "dashboard")


@dataclass
class Case:
    description: str
    status: str
    expected: str
    actual: str
    elapsed: float = 0.0

    def to_json(self, timings=False):
        out = {"case": self.description, "status": self.status,
               "expected": self.expected, "actual": self.actual}
        if timings:
            out["elapsed"] = round(self.elapsed, 4)
        return out


@dataclass
class VerifyReport:
    suite: str
    cases: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.status != "fail" for c in self.cases)

    def failures(self):
        return [c for c in self.cases if c.status == "fail"]

    def to_json(self, timings=False):
        return {"suite": self.suite, "ok": self.ok, "count": len(self.cases),
                "failures": len(self.failures()),
                "cases": [c.to_json(timings) for c in self.cases]}

    def summary(self):
        return f"{self.suite}: {len(self.cases) - len(self.failures())}/{len(self.cases)} pass"


def check(description, fn, expected="True"):
    """Run fn() and compare str(result) with expected; exceptions count as failures."""
    start = time.perf_counter()
    try:
        actual = fn()
        actual = str(actual)
        status = "pass" if actual == expected else "fail"
    except Exception as exc:  # a crash is a failed case, not an aborted suite
        actual, status = f"{type(exc).__name__}: {exc}", "fail"
    return Case(description, status, expected, actual, time.perf_counter() - start)


def _mu_with_corners(max_cells):
    return [mu for size in range(1, max_cells + 1) for mu in partitions(size)
            if len(corners(mu)) >= 2]


# ------------------------------------------------------------ suites

def suite_orthogonality(max_size=6, **_):
    for n in range(1, max_size + 1):
        for mu in partitions(n):
            for nu in partitions(n):
                expect = macdonald._norm(mu) if mu == nu else QTRat(0)
                yield check(f"<H{mu}, H{nu}>_*",
                            lambda mu=mu, nu=nu, e=expect: star_inner(htilde_p(mu), htilde_p(nu)) == e)


def suite_main_theorem(max_cells=7, **_):
    classes = {}
    for mu in _mu_with_corners(max_cells):
        n = len(corners(mu))
        for k in range(1, n):
            for lam in partitions_in_box(k, n - k):
                yield check(f"vanishing mu={mu} lam={lam} k={k}",
                            lambda mu=mu, lam=lam, k=k: piece.verify_vanishing(mu, lam, k)[0])
                yield check(f"nabla mu={mu} lam={lam} k={k}",
                            lambda mu=mu, lam=lam, k=k: piece.check_nabla_via_piece(mu, lam, k))
                classes.setdefault((n, k, lam), []).append(mu)
    for (n, k, lam), mus in sorted(classes.items()):
        if len(mus) < 2:
            continue

        def same(mus=mus, lam=lam, k=k):
            vals = [piece.nabla_via_piece(mu, lam, k) for mu in mus]
            return all(v == vals[0] for v in vals[1:])
        yield check(f"mu-independence n={n} k={k} lam={lam} over {len(mus)} shapes", same)


def suite_lw(max_size=4, max_n=5, **_):
    for size in range(0, max_size + 1):
        for lam in partitions(size):
            for n, k in lw.frames_for(lam, max_n):
                frame = lw_frame(lam, n, k)

                def run(frame=frame):
                    direct = lw.lw_direct(frame)
                    det = lw.lw_via_det(frame)
                    oracle = macdonald.nabla_schur(frame.lam).scale((-1) ** frame.adj)
                    return direct == det == oracle
                yield check(f"lw lam={lam} n={n} k={k}", run)


RECURSION_CASES = ((1,), (2,), (1, 1), (2, 1), (3, 2))
DISPLAYED_FIRST_ROWS = (
    ["hbar2", "hhat2", "hhat3", "hbar4", "hhat4"],
    ["h2", "hhat2", "hhat3", "hbar4", "hhat4"],
    ["h2", "h4", "hhat2", "hhat3", "hhat4"],
)


def minimal_frame(lam):
    k = len(lam)
    return lw_frame(lam, k + lam[0], k)


def letter_move():
    """Move column 5 of a matrix with distinct column labels to position 2."""
    M = lw.OpMatrix([[lw.op("plain", j) for j in range(1, 6)] for _ in range(5)])
    return [e[0][0][1] for e in lw.t_move(M, 2, 5).rows[0]]


def suite_recursion(**_):
    for lam in RECURSION_CASES:
        yield check(f"(-q)^adj det W = det W^(s) lam={lam}",
                    lambda lam=lam: lw.check_w_recursion(minimal_frame(lam)))
    yield check("lam=(3,2) n=5 k=2 displayed first rows",
                lambda: [W.first_row() for W in lw.w_recursion(lw_frame((3, 2), 5, 2))],
                str([list(r) for r in DISPLAYED_FIRST_ROWS]))
    yield check("column move of the letter matrix", letter_move, str([1, 5, 2, 3, 4]))


def suite_lemma32(seeds=(1, 2, 3), **_):
    for n in range(2, 7):
        for k in range(1, n):
            for lam in partitions_in_box(k, n - k):
                room = k * (n - k) - sum(lam)
                for mu in partitions_in_box(n - k, k):
                    if sum(mu) > room:
                        continue
                    if n <= 4:
                        yield check(f"symbolic n={n} k={k} lam={lam} mu={mu}",
                                    lambda lam=lam, mu=mu, n=n, k=k: schur_orthogonality_check(lam, mu, n, k))
                    else:
                        for seed in seeds:
                            yield check(f"seed={seed} n={n} k={k} lam={lam} mu={mu}",
                                        lambda lam=lam, mu=mu, n=n, k=k, seed=seed:
                                        schur_orthogonality_check(lam, mu, n, k, seed=seed))


def suite_lemma31(max_size=6, max_m=2, **_):
    for size in range(1, max_size + 1):
        for mu in partitions(size):
            for m in range(0, min(max_m, size) + 1):
                yield check(f"e-perp H{mu} m={m}", lambda mu=mu, m=m: skew_macdonald_check(mu, m))


WORKED_EXAMPLE = ((4, 3, 2, 1), (2, 1), 2)
# The printed expansion with its size-9 term h_(4,1,1,1,1,1) read as h_(4,1,1,1,1).
WORKED_EXAMPLE_TEX = ("h_{(2,1,1,1,1,1,1)}+h_{(2,2,1,1,1,1)}-2h_{(3,1,1,1,1,1)}-9h_{(2,2,2,1,1)}"
                      "+12h_{(3,2,1,1,1)}-3h_{(4,1,1,1,1)}+2h_{(2,2,2,2)}-2h_{(3,2,2,1)}"
                      "-2h_{(3,3,1,1)}+2h_{(4,2,1,1)}")


def suite_qt1(max_cells=7, **_):
    mu, lam, k = WORKED_EXAMPLE
    yield check("worked example mu=(4,3,2,1) lam=(2,1) k=2",
                lambda: qt1.render_h_tex(qt1.piece_qt1(mu, lam, k)), WORKED_EXAMPLE_TEX)
    for m in _mu_with_corners(max_cells):
        n = len(corners(m))
        for kk in range(1, n):
            for la in partitions_in_box(kk, n - kk):
                yield check(f"two paths mu={m} lam={la} k={kk}",
                            lambda m=m, la=la, kk=kk: qt1.piece_qt1(m, la, kk, check=False)
                            == qt1.theorem_rhs(m, la, kk))
    for size in range(1, 6):
        for lam in partitions(size)[:2]:
            yield check(f"t=q vs t=q^2 lam={lam}", lambda lam=lam: qt1.w_cross_check(lam))


def suite_rd(max_size=4, **_):
    computed = {}
    for size in range(1, max_size + 1):
        for lam in partitions(size):
            def run(lam=lam):
                computed[lam] = qt1.rd(lam)
                return computed[lam]
            yield check(f"RD{lam}", run, str(qt1.RD_TABLE[lam]))
    for name, case, ok, detail in qt1.observations_suite(max_size, computed):
        yield Case(f"observation {name} {case}", "pass" if ok else "fail", "equal", detail)
    for size in range(1, 4):
        for lam in partitions(size):
            n, k, _ = qt1.rd_frame(lam)
            yield check(f"RD{lam} frame ({n},{k}) vs ({n + 1},{k}) and S shift",
                        lambda lam=lam, n=n, k=k: qt1.rd(lam, n + 1, k)
                        == qt1.rd(lam, n, k, tuple(range(2, k + 2))) == qt1.rd(lam))
    for lam, mus in (((1,), [(2, 1), (3, 1)]), ((2,), [(3, 2, 1), (4, 2, 1)]),
                     ((1, 1), [(3, 2, 1), (4, 2, 1)])):
        yield check(f"RD{lam} from full H over mu={mus}",
                    lambda lam=lam, mus=mus: all(qt1.rd_direct(lam, m) == qt1.RD_TABLE[lam] for m in mus))


# ------------------------------------------------------------ properties

def random_sym(rng, degree, basis="s", terms=3):
    lams = partitions(degree)
    coeffs = {}
    for _ in range(terms):
        lam = rng.choice(lams)
        coeffs[lam] = QTRat(rng.randint(-3, 3)) + Q ** rng.randint(0, 2) * T ** rng.randint(0, 2)
    return SymF(basis, degree, coeffs)


def _cycle_invariance(beta):
    fd = standard_filling(beta)
    base = htilde_filled(fd)
    for _ in range(len(beta)):
        fd = cycle(fd)
        if htilde_filled(fd) != base:
            return False
    return True


def _exchange_invariance(beta):
    """Apply every admissible S_j to the standard filling and back."""
    fd = standard_filling(beta)
    base = htilde_filled(fd)
    for j in range(1, len(beta)):
        try:
            img = col_exchange(fd, j)
        except ValueError:
            continue
        if htilde_filled(img) != base or col_exchange_inverse(img, j) != fd:
            return False
    return True


def _perp_adjoint(rng, N, d):
    f = random_sym(rng, d)
    g = random_sym(rng, d - N)
    eN = SymF.basis_element("e", (N,))
    return hall(e_perp(N, f), g) == hall(f, mul(eN, g))


def _rev_star(rng, m):
    f, g = random_sym(rng, m), random_sym(rng, m)
    return star_inner(f.rev(), g.rev()) == (Q * T) ** m * star_inner(f, g).rev()


def _sw_random(rng, trials):
    for _ in range(trials):
        pool = {lw.PCell(rng.randint(0, 4), rng.randint(1, 4)) for _ in range(rng.randint(0, 6))}
        L1 = _random_chain(pool, rng)
        L2 = _random_chain(pool - set(L1), rng)
        A, B = lw.sw_involution(L1, L2)
        if sorted(A + B) != sorted(L1 + L2) or (len(A), len(B)) != (len(L2), len(L1)):
            return False
        if lw.dinv([L1, L2]) != lw.dinv([A, B]):
            return False
        if lw.sw_involution(A, B) != (L1, L2):
            return False
    return True


def _random_chain(cells, rng):
    """A random P-chain: scan the cells in chain order, keeping each with probability 1/2."""
    out = []
    for c in sorted(cells, key=lambda c: (c.a, -c.b)):
        if rng.random() < 0.5 and lw.is_chain(out + [c]):
            out.append(c)
    return tuple(out)


def suite_properties(seed=0, **_):
    rng = random.Random(seed)
    for size in range(1, 6):
        for mu in partitions(size):
            beta = list(conjugate(mu))
            yield check(f"cycling invariance beta={beta}", lambda b=beta: _cycle_invariance(b))
            rev_beta = list(reversed(beta))
            yield check(f"column exchange beta={rev_beta}", lambda b=rev_beta: _exchange_invariance(b))
    for kind in lw.KINDS:
        for m1 in range(0, 5):
            for m2 in range(m1 + 1, 5):
                yield check(f"{kind} {m1},{m2} commute",
                            lambda kind=kind, m1=m1, m2=m2: lw.commutes(kind, m1, m2, 3, 3))
    for v in ((0, 1), (1, 2), (2, 2), (0, 1, 2), (1, 1, 3)):
        yield check(f"multiplication by q v={v}", lambda v=v: lw.check_lemma_q_mult(v, 3, 3))
        yield check(f"q det V + det V' = 0 v={v}", lambda v=v: lw.check_lemma_q_middle(v, 3, 3))
    for m in range(0, 4):
        yield check(f"h_{m} = hbar_{m} + hhat_{m}",
                    lambda m=m: lw.apply_op("plain", m, lw.YPoly.one(3, 3))
                    == lw.apply_op("bar", m, lw.YPoly.one(3, 3)) + lw.apply_op("hat", m, lw.YPoly.one(3, 3)))
    yield check("SW involution 300 random chain pairs", lambda: _sw_random(random.Random(seed), 300))
    for d in range(1, 7):
        for N in range(1, d + 1):
            yield check(f"e_{N}-perp adjoint degree {d}", lambda N=N, d=d: _perp_adjoint(rng, N, d))
    for m in range(1, 6):
        yield check(f"rev/star compatibility m={m}", lambda m=m: _rev_star(rng, m))
    for size in range(1, 7):
        for mu in partitions(size):
            yield check(f"omega H{mu} = T rev H{mu}",
                        lambda mu=mu: omega(htilde(mu)) == htilde(mu).rev().scale(t_weight(mu)))


def suite_dashboard(max_cells=6, **_):
    for mu in _mu_with_corners(max_cells):
        n = len(corners(mu))
        for k in range(1, n):
            start = time.perf_counter()
            try:
                rows = piece.positivity_dashboard(mu, k)
            except Exception as exc:
                yield Case(f"dashboard mu={mu} k={k}", "report", "+", f"{type(exc).__name__}: {exc}")
                continue
            for label, status in rows:
                yield Case(label, "report", "+ or 0", status, time.perf_counter() - start)


RUNNERS = {
    "orthogonality": suite_orthogonality,
    "main-theorem": suite_main_theorem,
    "lw": suite_lw,
    "recursion": suite_recursion,
    "lemma32": suite_lemma32,
    "lemma31": suite_lemma31,
    "qt1": suite_qt1,
    "rd": suite_rd,
    "properties": suite_properties,
    "dashboard": suite_dashboard,
}


def run_suite(name, **options):
    if name not in RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    options = {k: v for k, v in options.items() if v is not None}
    return VerifyReport(name, list(RUNNERS[name](**options)))


def dashboard_violations(report):
    """Dashboard rows whose status is neither '+' nor '0' (sign-adjusted)."""
    return [c for c in report.cases if c.actual not in ("+", "0")]
