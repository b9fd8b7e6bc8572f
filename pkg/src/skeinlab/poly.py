"""Exact multivariate Laurent polynomials and their fractions.

The variable universe is fixed: ``q, E, z, s, A, t`` (in that order, which is
also the lexicographic order used for canonical forms).  ``lambda`` is never a
variable of its own; it is always written as ``s**2``.

Polynomials store their terms in a dict keyed by a packed integer that holds
all six exponents, so monomial multiplication is a single integer addition and
integer comparison of keys is exactly the lexicographic monomial order.

Coefficients are Python ``int`` or :class:`fractions.Fraction`; nothing ever
leaves exact arithmetic.  Fractions are canonicalised with a multivariate gcd
(python-flint), see :class:`LaurentFraction`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from numbers import Rational

import flint

__all__ = [
    "VARIABLES",
    "DivisionByZero",
    "OddExponent",
    "PolyParseError",
    "LaurentPoly",
    "LaurentFraction",
    "monomial",
    "var",
    "as_fraction",
    "substitute",
    "rebase",
    "canonical_eq",
    "parse",
    "factor",
    "render_t",
]

VARIABLES = ("q", "E", "z", "s", "A", "t")
_NVARS = len(VARIABLES)
_INDEX = {name: i for i, name in enumerate(VARIABLES)}

_BITS = 20
_MASK = (1 << _BITS) - 1
_BIAS = 1 << (_BITS - 1)
# q is the most significant field so integer order == lex order on (q, E, ...)
_SHIFT = tuple(_BITS * (_NVARS - 1 - i) for i in range(_NVARS))
_ONE = sum(_BIAS << sh for sh in _SHIFT)


class DivisionByZero(ZeroDivisionError):
    """Division by the zero polynomial."""


class OddExponent(ValueError):
    """A variable change needed a square root of an odd power."""


class PolyParseError(ValueError):
    """Text could not be parsed as a polynomial expression."""


def _pack(exps) -> int:
    key = _ONE
    for i, e in enumerate(exps):
        if e:
            if not -_BIAS < e < _BIAS:
                raise OverflowError("exponent out of range: %d" % e)
            key += e << _SHIFT[i]
    return key


def _unpack(key: int) -> tuple:
    return tuple(((key >> sh) & _MASK) - _BIAS for sh in _SHIFT)


def _exp_of(key: int, i: int) -> int:
    return ((key >> _SHIFT[i]) & _MASK) - _BIAS


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """Immutable Laurent polynomial with rational coefficients."""

    __slots__ = ("_t", "_h")

    def __init__(self, terms=None):
        # terms: {packed key: coefficient}; zero coefficients dropped
        if terms is None:
            self._t = {}
        else:
            self._t = {k: _norm_coeff(c) for k, c in terms.items() if c}
        self._h = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._t = terms
        obj._h = None
        return obj

    # construction helpers -------------------------------------------------
    @classmethod
    def const(cls, c) -> "LaurentPoly":
        c = _norm_coeff(Fraction(c) if not isinstance(c, int) else c)
        return cls._raw({_ONE: c} if c else {})

    @classmethod
    def from_exponents(cls, mapping) -> "LaurentPoly":
        """Build from ``{exponent tuple or {var: exp} dict: coeff}``."""
        out = {}
        for m, c in mapping.items():
            if isinstance(m, dict):
                m = _tuple_from_dict(m)
            k = _pack(m)
            out[k] = out.get(k, 0) + c
        return cls(out)

    # inspection -------------------------------------------------------------
    def terms(self) -> list:
        """List of ``(exponent tuple, coeff)`` in descending canonical order."""
        return [(_unpack(k), self._t[k]) for k in sorted(self._t, reverse=True)]

    def monomials(self) -> list:
        """Like :meth:`terms` but with exponent dicts that omit zeros."""
        return [({VARIABLES[i]: e for i, e in enumerate(m) if e}, c) for m, c in self.terms()]

    def is_zero(self) -> bool:
        return not self._t

    def is_one(self) -> bool:
        return len(self._t) == 1 and self._t.get(_ONE) == 1

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and _ONE in self._t)

    def constant_value(self):
        return self._t.get(_ONE, 0)

    def variables(self) -> set:
        found = set()
        for k in self._t:
            for i in range(_NVARS):
                if _exp_of(k, i):
                    found.add(VARIABLES[i])
        return found

    def degree_range(self, name: str) -> tuple:
        """(min, max) exponent of ``name``; (0, 0) for the zero polynomial."""
        i = _INDEX[name]
        exps = [_exp_of(k, i) for k in self._t]
        return (min(exps), max(exps)) if exps else (0, 0)

    def leading(self):
        """Lexicographically greatest ``(key, coeff)``."""
        k = max(self._t)
        return k, self._t[k]

    def min_exponents(self) -> tuple:
        ms = [_unpack(k) for k in self._t]
        return tuple(min(m[i] for m in ms) for i in range(_NVARS))

    # arithmetic -------------------------------------------------------------
    def __bool__(self):
        return bool(self._t)

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self._t.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other._t) > len(self._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        out = dict(a)
        for k, c in b.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _norm_coeff(v)
            else:
                del out[k]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, LaurentFraction):
            return NotImplemented
        if isinstance(other, (int, Rational)):
            if not other:
                return LaurentPoly()
            return LaurentPoly._raw({k: _norm_coeff(c * other) for k, c in self._t.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (kb, cb), = b.items()
            off = kb - _ONE
            return LaurentPoly._raw({k + off: _norm_coeff(c * cb) for k, c in a.items()})
        out = {}
        get = out.get
        one = _ONE
        for kb, cb in b.items():
            off = kb - one
            for ka, ca in a.items():
                k = ka + off
                out[k] = get(k, 0) + ca * cb
        return LaurentPoly._raw({k: _norm_coeff(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self._t) != 1:
                raise ValueError("negative power of a non-monomial; use LaurentFraction")
            (key, c), = self._t.items()
            return LaurentPoly._raw({_ONE - (key - _ONE): _norm_coeff(Fraction(1) / c)}) ** (-k)
        result = LaurentPoly._raw({_ONE: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        return LaurentFraction(self) / other

    def __rtruediv__(self, other):
        return as_fraction(other) / LaurentFraction(self)

    def shift(self, exps) -> "LaurentPoly":
        """Multiply by the unit monomial with the given exponent tuple."""
        off = _pack(exps) - _ONE
        return LaurentPoly._raw({k + off: c for k, c in self._t.items()})

    def scale(self, c) -> "LaurentPoly":
        return self * c

    # comparison -------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._t == other._t
        if isinstance(other, LaurentFraction):
            return other == self
        if isinstance(other, (int, Rational)):
            return self._t == ({_ONE: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    # text -------------------------------------------------------------------
    def __str__(self):
        return _render_poly(self)

    def __repr__(self):
        return "LaurentPoly(%r)" % str(self)

    # evaluation -------------------------------------------------------------
    def evaluate(self, values: dict):
        """Evaluate at exact numbers for every variable present."""
        total = Fraction(0)
        for m, c in self.terms():
            term = Fraction(c)
            for i, e in enumerate(m):
                if e:
                    term *= Fraction(values[VARIABLES[i]]) ** e
            total += term
        return _norm_coeff(total)


def _tuple_from_dict(d: dict) -> tuple:
    exps = [0] * _NVARS
    for name, e in d.items():
        if name not in _INDEX:
            raise KeyError("unknown variable %r" % name)
        exps[_INDEX[name]] += e
    return tuple(exps)


def _coerce_poly(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Rational)):
        return LaurentPoly.const(x)
    return NotImplemented


def monomial(coeff=1, **exps) -> LaurentPoly:
    """``monomial(3, q=2, E=-1)`` is ``3*q^2*E^-1``."""
    return LaurentPoly.from_exponents({_tuple_from_dict(exps): coeff})


def var(name: str, power: int = 1) -> LaurentPoly:
    return monomial(1, **{name: power})


# ---------------------------------------------------------------------------
# gcd via python-flint

_CTX = flint.fmpz_mpoly_ctx.get(VARIABLES, "lex")


def _to_flint(p: LaurentPoly, shift_key: int):
    """Integer polynomial ``(p * x^-shift) * d`` and the scalar ``d``."""
    dens = [c.denominator for c in p._t.values() if isinstance(c, Fraction)]
    d = lcm(*dens) if dens else 1
    data = {}
    for k, c in p._t.items():
        data[_unpack(k - shift_key + _ONE)] = int(c * d)
    return _CTX.from_dict(data), d


def _from_flint(f, shift_key: int) -> LaurentPoly:
    off = shift_key - _ONE
    return LaurentPoly._raw({_pack(tuple(map(int, m))) + off: int(c) for m, c in f.to_dict().items()})


class LaurentFraction:
    """Canonical quotient ``num / den`` of Laurent polynomials.

    Canonical form: ``den`` carries no monomial factor and no polynomial factor
    shared with ``num``, and the lexicographically greatest monomial of ``den``
    has coefficient 1.  A Laurent polynomial is exactly a fraction with
    ``den == 1``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _canonical=False):
        num = _coerce_poly(num) if not isinstance(num, LaurentPoly) else num
        if num is NotImplemented:
            raise TypeError("cannot build a fraction from %r" % (num,))
        if den is None:
            self.num, self.den = num, _UNIT
            return
        den = _coerce_poly(den) if not isinstance(den, LaurentPoly) else den
        if _canonical:
            self.num, self.den = num, den
            return
        self.num, self.den = _canonicalize(num, den)

    # predicates -------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        """True when the value is a Laurent polynomial (no denominator)."""
        return self.den.is_one()

    def as_poly(self) -> LaurentPoly:
        if not self.den.is_one():
            raise ValueError("not a Laurent polynomial: %s" % self)
        return self.num

    def variables(self) -> set:
        return self.num.variables() | self.den.variables()

    # arithmetic -------------------------------------------------------------
    def __neg__(self):
        return LaurentFraction(-self.num, self.den, _canonical=True)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = as_fraction(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return LaurentFraction(self.num + other.num)
        if self.den == other.den:
            return LaurentFraction(self.num + other.num, self.den)
        return LaurentFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_fraction(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_fraction(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_fraction(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return LaurentFraction(self.num * other.num)
        return LaurentFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_fraction(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise DivisionByZero("division by zero")
        return LaurentFraction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = as_fraction(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def inverse(self) -> "LaurentFraction":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        return LaurentFraction(self.den, self.num)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        # canonical stays canonical under powers (coprime parts stay coprime)
        num, den = self.num ** k, self.den ** k
        if den.is_one():
            return LaurentFraction(num)
        return LaurentFraction(num, den)

    # comparison -------------------------------------------------------------
    def __eq__(self, other):
        other = as_fraction(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    def __repr__(self):
        return "LaurentFraction(%r)" % str(self)

    def evaluate(self, values: dict):
        d = self.den.evaluate(values)
        if not d:
            raise DivisionByZero("denominator vanishes at %r" % (values,))
        return _norm_coeff(Fraction(self.num.evaluate(values)) / d)


_UNIT = LaurentPoly._raw({_ONE: 1})


def _canonicalize(num: LaurentPoly, den: LaurentPoly):
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    if num.is_zero():
        return num, _UNIT
    if len(den._t) == 1:
        (k, c), = den._t.items()
        off = _ONE - k
        inv = Fraction(1) / c if not isinstance(c, Fraction) else 1 / c
        return LaurentPoly._raw({kk + off: _norm_coeff(cc * inv) for kk, cc in num._t.items()}), _UNIT
    # strip the monomial part of den into num
    dmin = _pack(den.min_exponents())
    nmin = _pack(num.min_exponents())
    fn, cn = _to_flint(num, nmin)
    fd, cd = _to_flint(den, dmin)
    g = fn.gcd(fd)
    if not g.is_one():
        fn = fn / g
        fd = fd / g
    # value = (fn * x^nmin / cn) / (fd * x^dmin / cd)
    n = _from_flint(fn, nmin - dmin + _ONE)
    d = _from_flint(fd, _ONE)
    scale = Fraction(cd, cn)
    if len(d._t) == 1:
        (k, c), = d._t.items()
        off = _ONE - k
        scale /= c
        return LaurentPoly._raw({kk + off: _norm_coeff(cc * scale) for kk, cc in n._t.items()}), _UNIT
    _, lc = d.leading()
    if lc != 1:
        d = d * Fraction(1, lc)
        scale /= lc
    return n * scale, d


def as_fraction(x, strict: bool = True):
    """Coerce ints, rationals, polynomials and strings to a fraction."""
    if isinstance(x, LaurentFraction):
        return x
    if isinstance(x, LaurentPoly):
        return LaurentFraction(x)
    if isinstance(x, (int, Rational)):
        return LaurentFraction(LaurentPoly.const(x))
    if isinstance(x, str):
        return parse(x)
    if strict:
        raise TypeError("cannot convert %r to LaurentFraction" % (x,))
    return NotImplemented


# ---------------------------------------------------------------------------
# substitution and variable conventions


def _subst_poly(p: LaurentPoly, i: int, value: LaurentFraction):
    """Return (numerator, denominator) of p with variable i replaced."""
    groups = {}
    sh = _SHIFT[i]
    for k, c in p._t.items():
        e = _exp_of(k, i)
        groups.setdefault(e, {})[k - (e << sh)] = c
    if not groups:
        return LaurentPoly(), _UNIT
    if value.den.is_one() and value.num.is_monomial():
        total = LaurentPoly()
        for e, terms in groups.items():
            total = total + LaurentPoly._raw(terms) * (value.num ** e)
        return total, _UNIT
    emin, emax = min(groups), max(groups)
    N, D = value.num, value.den
    if emin < 0 and N.is_zero():
        raise DivisionByZero("substituting zero into a negative power")
    total = LaurentPoly()
    npow = {0: _UNIT}
    dpow = {0: _UNIT}
    for e, terms in groups.items():
        a, b = e - emin, emax - e
        if a not in npow:
            npow[a] = N ** a
        if b not in dpow:
            dpow[b] = D ** b
        total = total + LaurentPoly._raw(terms) * npow[a] * dpow[b]
    # total * N^emin / D^emax
    num, den = total, _UNIT
    if emin > 0:
        num = num * N ** emin
    elif emin < 0:
        den = den * N ** (-emin)
    if emax > 0:
        den = den * D ** emax
    else:
        num = num * D ** (-emax)
    return num, den


def substitute(p, name: str, value) -> LaurentFraction:
    """Replace every occurrence of variable ``name`` by ``value``."""
    p = as_fraction(p)
    value = as_fraction(value)
    i = _INDEX[name]
    n1, d1 = _subst_poly(p.num, i, value)
    if p.den.is_one():
        return LaurentFraction(n1, d1)
    n2, d2 = _subst_poly(p.den, i, value)
    if n2.is_zero():
        raise DivisionByZero("denominator vanishes after substitution")
    return LaurentFraction(n1 * d2, d1 * n2)


_REBASE = {
    # rule: (source index, target index, numerator, denominator) meaning
    # source^e -> target^(e * numerator / denominator)
    "A->q": (_INDEX["A"], _INDEX["q"], -1, 2),
    "q->t": (_INDEX["q"], _INDEX["t"], 1, 2),
    "t->q": (_INDEX["t"], _INDEX["q"], 2, 1),
}


def rebase(p, rule: str):
    """Change variable convention: ``A->q`` (q = A^-2), ``q->t`` (t = q^2), ``t->q``.

    Polynomials come back as polynomials, fractions as fractions.
    """
    rule = rule.replace("→", "->").replace(" ", "")
    if rule not in _REBASE:
        raise ValueError("unknown rebase rule %r" % rule)
    if isinstance(p, LaurentFraction):
        return LaurentFraction(rebase(p.num, rule), rebase(p.den, rule))
    src, dst, mul, div = _REBASE[rule]
    out = {}
    for k, c in p._t.items():
        e = _exp_of(k, src)
        if (e * mul) % div:
            raise OddExponent("%s has odd exponent %d under %s" % (VARIABLES[src], e, rule))
        nk = k - (e << _SHIFT[src]) + ((e * mul // div) << _SHIFT[dst])
        out[nk] = out.get(nk, 0) + c
    return LaurentPoly(out)


def canonical_eq(a, b) -> bool:
    a, b = as_fraction(a), as_fraction(b)
    return a.num * b.den == b.num * a.den


# ---------------------------------------------------------------------------
# text


def _render_coeff(c) -> str:
    if isinstance(c, Fraction):
        return "%d/%d" % (c.numerator, c.denominator)
    return str(c)


def factor(p: LaurentPoly):
    """Factor over the integers: ``(unit, [(factor, multiplicity), ...])``.

    ``unit`` is a rational times a monomial and absorbs every monomial factor,
    so the listed factors are genuine polynomials with positive leading term.
    """
    if isinstance(p, LaurentFraction):
        p = p.as_poly()
    if p.is_zero():
        raise ValueError("cannot factor zero")
    shift = _pack(p.min_exponents())
    f, d = _to_flint(p, shift)
    c, facs = f.factor()
    unit = LaurentPoly._raw({shift: _norm_coeff(Fraction(int(c), d))})
    out = []
    for g, e in facs:
        h = _from_flint(g, _ONE)
        if h.is_monomial():
            unit = unit * h ** int(e)
        else:
            out.append((h, int(e)))
    return unit, out


def render_t(p) -> str:
    """Render a polynomial in ``q`` with ``q^k`` printed as ``t^(k/2)``."""
    if isinstance(p, LaurentFraction):
        if not p.is_laurent():
            return "(%s)/(%s)" % (render_t(p.num), render_t(p.den))
        p = p.as_poly()
    if p.is_zero():
        return "0"
    qi = _INDEX["q"]
    parts = []
    for m, c in p.terms():
        if any(e for i, e in enumerate(m) if i != qi):
            raise ValueError("render_t expects a polynomial in q only")
        k = m[qi]
        if k == 0:
            factor_s = ""
        elif k == 2:
            factor_s = "t"
        elif k % 2 == 0:
            factor_s = "t^%d" % (k // 2)
        else:
            factor_s = "t^(%d/2)" % k
        neg = c < 0
        a = -c if neg else c
        if not factor_s:
            body = _render_coeff(a)
        elif a == 1:
            body = factor_s
        else:
            body = _render_coeff(a) + "*" + factor_s
        if not parts:
            parts.append("-" + body if neg else body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def _render_poly(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for m, c in p.terms():
        factors = []
        for i, e in enumerate(m):
            if e == 1:
                factors.append(VARIABLES[i])
            elif e:
                factors.append("%s^%d" % (VARIABLES[i], e))
        neg = c < 0
        a = -c if neg else c
        if not factors:
            body = _render_coeff(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = _render_coeff(a) + "*" + "*".join(factors)
        if not parts:
            parts.append("-" + body if neg else body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.replace("−", "-").replace("⁻", "-")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolyParseError("unexpected character at %d in %r" % (pos, text))
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            if name not in _INDEX:
                raise PolyParseError("unknown variable %r" % name)
            out.append(("var", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    # expr := term (('+'|'-') term)* ; term := unary (('*'|'/')? unary)* ;
    # unary := '-' unary | power ; power := atom ('^' signed_int)?
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while True:
            kind, tok = self.peek()
            if (kind, tok) == ("op", "*"):
                self.take()
                value = value * self.unary()
            elif (kind, tok) == ("op", "/"):
                self.take()
                value = value / self.unary()
            elif kind in ("num", "var") or (kind, tok) == ("op", "("):
                value = value * self.unary()
            else:
                return value

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            while self.peek() in (("op", "-"), ("op", "+")):
                if self.take()[1] == "-":
                    sign = -sign
            kind, tok = self.take()
            if kind == "num":
                exp = tok
            elif (kind, tok) == ("op", "("):
                inner = self.expr()
                if self.take() != ("op", ")"):
                    raise PolyParseError("missing ')'")
                if not inner.is_laurent() or not inner.num.is_constant():
                    raise PolyParseError("exponent must be an integer")
                exp = inner.num.constant_value()
                if not isinstance(exp, int):
                    raise PolyParseError("exponent must be an integer")
            else:
                raise PolyParseError("bad exponent")
            return base ** (sign * exp)
        return base

    def atom(self):
        kind, tok = self.take()
        if kind == "num":
            return as_fraction(tok)
        if kind == "var":
            return LaurentFraction(var(tok))
        if (kind, tok) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise PolyParseError("missing ')'")
            return inner
        raise PolyParseError("unexpected token %r" % (tok,))


def parse(text: str) -> LaurentFraction:
    """Parse expressions such as ``-3/2*q^-3*E + (q - q^-1)^2/(1 - E)``."""
    toks = _tokenize(text)
    if not toks:
        raise PolyParseError("empty expression")
    p = _Parser(toks)
    value = p.expr()
    if p.i != len(toks):
        raise PolyParseError("trailing input in %r" % text)
    return value
