"""Exact rational functions in q, t and the auxiliary variables z1..z8.

All values live in one flint polynomial context with generators
``q, t, z1, ..., z8``.  A value that never mentions a z variable is an
ordinary element of Q(q,t); values that do are the z-extended rational
functions used by the pi-operator calculus.  Both are represented by the
same class, ``QTRat``; ``ZRat`` is kept as an alias for readability.
"""
from fractions import Fraction

import flint

MAX_Z = 8
NAMES = ("q", "t") + tuple(f"z{i}" for i in range(1, MAX_Z + 1))
NVARS = len(NAMES)
CTX = flint.fmpz_mpoly_ctx.get(NAMES, "lex")
GENS = CTX.gens()
_ONE_P = CTX.constant(1)
_ZERO_P = CTX.constant(0)


class PoleError(ZeroDivisionError):
    """Raised when an evaluation or substitution hits a zero denominator."""


def _poly(x):
    if isinstance(x, flint.fmpz_mpoly):
        return x
    return CTX.constant(int(x))


def _terms(p):
    """Polynomial terms as (exponent tuple of ints, int coefficient)."""
    return [(tuple(int(a) for a in e), int(c)) for e, c in p.to_dict().items()]


class QTRat:
    """Reduced fraction num/den with den's lex-leading coefficient positive."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None, _reduced=False):
        self._hash = None
        if isinstance(num, QTRat):
            self.num, self.den = num.num, num.den
            if den is not None:
                other = QTRat(den)
                res = self / other
                self.num, self.den = res.num, res.den
            return
        if isinstance(num, Fraction) and den is None:
            num, den = num.numerator, num.denominator
        num = _poly(num)
        den = _ONE_P if den is None else _poly(den)
        if _reduced:
            self.num, self.den = num, den
            return
        if den.is_zero():
            raise PoleError("zero denominator")
        self.num, self.den = _normalize(num, den)

    # construction helpers
    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    @classmethod
    def monomial(cls, exps, coeff=1):
        """coeff * prod gens**exps, negative exponents allowed."""
        exps = tuple(exps) + (0,) * (NVARS - len(exps))
        pos = tuple(max(e, 0) for e in exps)
        neg = tuple(max(-e, 0) for e in exps)
        num = CTX.from_dict({pos: coeff}) if coeff else _ZERO_P
        den = CTX.from_dict({neg: 1})
        if coeff == 0:
            return ZERO
        return cls._raw(num, den)

    @classmethod
    def from_laurent(cls, terms):
        """Build from a map exponent-vector -> integer coefficient."""
        terms = {tuple(e) + (0,) * (NVARS - len(e)): c for e, c in terms.items() if c}
        if not terms:
            return ZERO
        lo = [min(e[i] for e in terms) for i in range(NVARS)]
        shift = tuple(-min(x, 0) for x in lo)
        num = CTX.from_dict({tuple(a + s for a, s in zip(e, shift)): c for e, c in terms.items()})
        den = CTX.from_dict({shift: 1})
        return cls(num, den)

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            if self.den == 1:
                s = self.num + other.num
                return QTRat._raw(s, _ONE_P) if s else ZERO
            return QTRat(self.num + other.num, self.den)
        return QTRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return QTRat._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == 1 and d == 1:
            return QTRat._raw(a * c, _ONE_P)
        g1 = a.gcd(d)
        g2 = c.gcd(b)
        if g1 != 1:
            a, d = a / g1, d / g1
        if g2 != 1:
            c, b = c / g2, b / g2
        num, den = a * c, b * d
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return QTRat._raw(num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise PoleError("division by zero")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return QTRat._raw(num, den)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return QTRat._raw(self.num ** k, self.den ** k)

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(sorted(_terms(self.num))), tuple(sorted(_terms(self.den)))))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self):
        return self.num.is_zero()

    # structural queries
    def is_poly(self):
        return self.den == 1

    def is_laurent(self):
        """True when the denominator is a single monomial."""
        return len(self.den.to_dict()) == 1

    def is_monomial(self):
        return self.is_laurent() and len(self.num.to_dict()) == 1

    def laurent_terms(self):
        """Exponent-vector -> integer map; requires a monomial denominator."""
        dd = _terms(self.den)
        if len(dd) != 1:
            raise ValueError(f"not a Laurent polynomial: {self}")
        (shift, c0), = dd
        out = {}
        for e, c in _terms(self.num):
            c = Fraction(c, c0)
            if c.denominator != 1:
                raise ValueError(f"non-integral Laurent coefficient in {self}")
            out[tuple(a - s for a, s in zip(e, shift))] = int(c)
        return out

    def uses_z(self):
        return self.arity() > 0

    def arity(self):
        """Largest z index that occurs (0 if none)."""
        best = 0
        for p in (self.num, self.den):
            degs = p.degrees()
            for i in range(2, NVARS):
                if degs[i] > 0:
                    best = max(best, i - 1)
        return best

    # substitutions
    def compose(self, images):
        """Substitute polynomial images (flint polys) for all generators."""
        return QTRat(self.num.compose(*images), self.den.compose(*images))

    def frobenius(self, k):
        """Replace every generator x by x**k (the p_k image of a scalar)."""
        if k == 1:
            return self
        return QTRat._raw(self.num.compose(*[g ** k for g in GENS]),
                          self.den.compose(*[g ** k for g in GENS]))

    def swap_z(self, i, j):
        imgs = list(GENS)
        imgs[i + 1], imgs[j + 1] = GENS[j + 1], GENS[i + 1]
        return QTRat(self.num.compose(*imgs), self.den.compose(*imgs))

    def rev(self):
        """q -> 1/q and t -> 1/t."""
        if not self.num:
            return self
        return QTRat(*_rev_pair(self.num, self.den))

    def substitute(self, assignment):
        """Replace z_i by the QTRat assignment[i] (keys are 1-based z indices)."""
        num = _subs_poly(self.num, assignment)
        den = _subs_poly(self.den, assignment)
        if not den:
            raise PoleError(f"substitution zeroes the denominator of {self}")
        return num / den

    def evaluate(self, q0, t0, zvals=()):
        """Exact value at rational q0, t0 (and optional z values)."""
        vals = [Fraction(q0), Fraction(t0)] + [Fraction(v) for v in zvals]
        vals += [Fraction(0)] * (NVARS - len(vals))
        d = _eval_poly(self.den, vals)
        if d == 0:
            raise PoleError(f"pole of {self} at q={q0}, t={t0}")
        return _eval_poly(self.num, vals) / d

    def at_one(self, t_power=1):
        """Value at q=t=1 (z=1) via the restriction t=q**t_power, then q -> 1."""
        q0 = GENS[0]
        imgs = [q0, q0 ** t_power] + [_ONE_P] * MAX_Z
        r = QTRat(self.num.compose(*imgs), self.den.compose(*imgs))
        return r.evaluate(1, 1)

    # output
    def __str__(self):
        return _fmt_rat(self.num, self.den)

    def __repr__(self):
        return f"QTRat({self})"

    def to_json(self):
        return {"num": _poly_json(self.num), "den": _poly_json(self.den)}

    @classmethod
    def from_json(cls, obj):
        return cls(_poly_from_json(obj["num"]), _poly_from_json(obj["den"]))


ZRat = QTRat


def _normalize(num, den):
    if num.is_zero():
        return _ZERO_P, _ONE_P
    if den != 1:
        g = num.gcd(den)
        if g != 1:
            num, den = num / g, den / g
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return num, den


def _coerce(x):
    if isinstance(x, QTRat):
        return x
    if isinstance(x, int):
        return QTRat._raw(CTX.constant(x), _ONE_P) if x else ZERO
    if isinstance(x, Fraction):
        return QTRat(x)
    if isinstance(x, flint.fmpz_mpoly):
        return QTRat._raw(x, _ONE_P)
    if isinstance(x, flint.fmpq):
        return QTRat(int(x.p), int(x.q))
    return None


def _rev_pair(num, den):
    def flip(p):
        d = dict(_terms(p))
        top = [max(e[i] for e in d) for i in range(2)]
        return CTX.from_dict({(top[0] - e[0], top[1] - e[1]) + e[2:]: c for e, c in d.items()}), top
    n2, tn = flip(num)
    d2, td = flip(den)
    # num(1/q,1/t) = n2 / q^tn0 t^tn1, same for den
    n2 = n2 * GENS[0] ** td[0] * GENS[1] ** td[1]
    d2 = d2 * GENS[0] ** tn[0] * GENS[1] ** tn[1]
    return n2, d2


def _subs_poly(p, assignment):
    total = ZERO
    for e, c in _terms(p):
        term = QTRat.monomial(e[:2] + (0,) * MAX_Z, c)
        for i, k in enumerate(e[2:], start=1):
            if k:
                val = assignment[i] if i in assignment else QTRat._raw(GENS[i + 1], _ONE_P)
                term = term * val ** k
        total = total + term
    return total


def _eval_poly(p, vals):
    total = Fraction(0)
    for e, c in _terms(p):
        term = Fraction(c)
        for v, k in zip(vals, e):
            if k:
                term *= v ** k
        total += term
    return total


def _poly_json(p):
    rows = []
    for e, c in _terms(p):
        if any(e[2:]):
            rows.append(list(e) + [c])
        else:
            rows.append([e[0], e[1], c])
    rows.sort(key=lambda r: r[:-1])
    return rows


def _poly_from_json(rows):
    d = {}
    for r in rows:
        e = tuple(r[:-1]) + (0,) * (NVARS - len(r) + 1)
        d[e] = r[-1]
    return CTX.from_dict(d) if d else _ZERO_P


def _fmt_mono(e):
    parts = []
    for name, k in zip(NAMES, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def fmt_poly(p):
    """Polynomial text with terms in descending lex order, e.g. 'q + t'."""
    items = sorted(_terms(p), reverse=True)
    if not items:
        return "0"
    out = []
    for idx, (e, c) in enumerate(items):
        mono = _fmt_mono(e)
        mag = abs(c)
        body = mono if (mag == 1 and mono) else (f"{mag}*{mono}" if mono else str(mag))
        if idx == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def _fmt_rat(num, den):
    n = fmt_poly(num)
    if den == 1:
        return n
    d = fmt_poly(den)
    if len(num.to_dict()) > 1:
        n = f"({n})"
    dt = _terms(den)
    if len(dt) > 1 or dt[0][1] != 1 or "*" in d:
        d = f"({d})"
    return f"{n}/{d}"


ZERO = QTRat._raw(_ZERO_P, _ONE_P)
ONE = QTRat._raw(_ONE_P, _ONE_P)
Q = QTRat._raw(GENS[0], _ONE_P)
T = QTRat._raw(GENS[1], _ONE_P)
M = (1 - Q) * (1 - T)


def qt_mono(a, b):
    """q**a * t**b with integer (possibly negative) exponents."""
    return QTRat.monomial((a, b))


def zvar(i):
    """The auxiliary variable z_i, 1 <= i <= 8."""
    if not 1 <= i <= MAX_Z:
        raise ValueError(f"z index {i} outside 1..{MAX_Z}")
    return QTRat._raw(GENS[i + 1], _ONE_P)


def as_rat(x):
    r = _coerce(x)
    if r is None:
        raise TypeError(f"cannot convert {x!r} to QTRat")
    return r


def qt_eval(a, q0, t0):
    return as_rat(a).evaluate(q0, t0)
