"""The algebra of braids and ties E_n(q) and its Markov trace rho.

Elements are stored on the basis ``eps_I * b_w`` with ``I`` a set partition
of the strands and ``w`` a permutation.  Ties are transported across braids
by ``b_w eps_{j,k} = eps_{w(j),w(k)} b_w`` (permutations act on strand
positions).  Multiplication by a generator is then a length comparison plus
a partition join:

    (I, w) b_i   = (I, w s_i)                                if l(w s_i) > l(w)
                 = (I, w s_i) + (q - q^-1) (I v {w(i), w(i+1)}, w)   otherwise
    (I, w) eps_i = (I v {w(i), w(i+1)}, w)

Left multiplication is the mirror image.  ``b_i^-1 = b_i - (q - q^-1) eps_i``.

Internally strands are 0-based: a partition is its restricted growth string
and a permutation is its 0-based one-line tuple.  The public
:class:`SetPartition` and :class:`Perm` present 1-based views.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .diagram import BraidWord
from .poly import LaurentFraction, LaurentPoly, factor, var
from .theta import set_partitions

__all__ = [
    "SizeCap",
    "DimensionMismatch",
    "BadIndices",
    "SetPartition",
    "Perm",
    "BTElement",
    "enumerate_basis",
    "multiply",
    "generator_b",
    "generator_b_inv",
    "generator_eps",
    "tie",
    "from_tied_braid",
    "trace_rho",
    "ptl_element",
    "ptl_ideal_check",
    "theta_trace",
    "Theta_trace",
    "MAX_STRANDS",
]

MAX_STRANDS = 6

_ONE = LaurentPoly.const(1)
_QD = var("q") - var("q", -1)
_Z = var("z")
_E = var("E")


class SizeCap(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class BadIndices(ValueError):
    pass


# ---------------------------------------------------------------------------
# partitions as restricted growth strings, permutations as tuples


def _canon(labels) -> tuple:
    seen = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


def _join(r: tuple, a: int, b: int) -> tuple:
    la, lb = r[a], r[b]
    if la == lb:
        return r
    return _canon(la if x == lb else x for x in r)


def _permute(r: tuple, w: tuple) -> tuple:
    """The partition w(I): strand w(x) sits in the block of strand x."""
    out = [0] * len(r)
    for x, lab in enumerate(r):
        out[w[x]] = lab
    return _canon(out)


def _swap(t: tuple, i: int) -> tuple:
    t = list(t)
    t[i], t[i + 1] = t[i + 1], t[i]
    return tuple(t)


def _discrete(n: int) -> tuple:
    return tuple(range(n))


@lru_cache(maxsize=None)
def _reduced_word(w: tuple) -> tuple:
    """0-based letters i_1..i_k with w = s_{i_1} ... s_{i_k}, k = l(w)."""
    u = list(w)
    letters = []
    moved = True
    while moved:
        moved = False
        for i in range(len(u) - 1):
            if u[i] > u[i + 1]:
                u[i], u[i + 1] = u[i + 1], u[i]
                letters.append(i)
                moved = True
                break
    return tuple(reversed(letters))


def _length(w: tuple) -> int:
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


class SetPartition:
    """A set partition of ``{1..n}``; blocks are sorted by their minimum."""

    __slots__ = ("_r",)

    def __init__(self, blocks, n: int | None = None):
        if isinstance(blocks, tuple) and n is None and all(isinstance(x, int) for x in blocks):
            # restricted growth string
            self._r = _canon(blocks)
            return
        blocks = [sorted(b) for b in blocks if b]
        elems = sorted(x for b in blocks for x in b)
        size = n if n is not None else len(elems)
        if elems != list(range(1, size + 1)):
            raise BadIndices("blocks must partition 1..%d" % size)
        lab = [0] * size
        for k, b in enumerate(blocks):
            for x in b:
                lab[x - 1] = k
        self._r = _canon(lab)

    @classmethod
    def _wrap(cls, r: tuple) -> "SetPartition":
        obj = cls.__new__(cls)
        obj._r = r
        return obj

    @property
    def n(self) -> int:
        return len(self._r)

    @property
    def blocks(self) -> tuple:
        out = {}
        for x, lab in enumerate(self._r):
            out.setdefault(lab, []).append(x + 1)
        return tuple(tuple(out[k]) for k in sorted(out))

    def join(self, other: "SetPartition") -> "SetPartition":
        if self.n != other.n:
            raise DimensionMismatch("partitions of different sets")
        r = self._r
        for b in other.blocks:
            for x in b[1:]:
                r = _join(r, b[0] - 1, x - 1)
        return SetPartition._wrap(r)

    def __eq__(self, other):
        return isinstance(other, SetPartition) and self._r == other._r

    def __hash__(self):
        return hash(self._r)

    def __repr__(self):
        return "SetPartition(%s)" % (self.blocks,)


class Perm:
    """A permutation in one-line notation ``(w(1), ..., w(n))``."""

    __slots__ = ("_w",)

    def __init__(self, one_line):
        w = tuple(int(x) - 1 for x in one_line)
        if sorted(w) != list(range(len(w))):
            raise BadIndices("not a permutation: %r" % (one_line,))
        self._w = w

    @classmethod
    def _wrap(cls, w: tuple) -> "Perm":
        obj = cls.__new__(cls)
        obj._w = w
        return obj

    @property
    def one_line(self) -> tuple:
        return tuple(x + 1 for x in self._w)

    @property
    def length(self) -> int:
        return _length(self._w)

    @property
    def reduced_word(self) -> tuple:
        """1-based generator indices of a reduced word."""
        return tuple(i + 1 for i in _reduced_word(self._w))

    def __eq__(self, other):
        return isinstance(other, Perm) and self._w == other._w

    def __hash__(self):
        return hash(self._w)

    def __repr__(self):
        return "Perm(%s)" % (self.one_line,)


# ---------------------------------------------------------------------------
# elements


def _add(acc: dict, key, c) -> None:
    v = acc.get(key)
    v = c if v is None else v + c
    if v.is_zero():
        acc.pop(key, None)
    else:
        acc[key] = v


class BTElement:
    """An element of E_n(q): ``{(partition, permutation): coefficient}``.

    Coefficients are Laurent polynomials in ``q`` (the structure constants
    never leave ``Z[q, q^-1]``); :meth:`coefficient` returns them as fractions.
    """

    __slots__ = ("n", "_t")

    def __init__(self, n: int, terms=None):
        self.n = n
        self._t = {}
        for key, c in (terms or {}).items():
            if isinstance(key[0], SetPartition):
                key = (key[0]._r, key[1]._w)
            if not isinstance(c, LaurentPoly):
                c = c.as_poly() if isinstance(c, LaurentFraction) else LaurentPoly.const(c)
            if not c.is_zero():
                _add(self._t, key, c)

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "BTElement":
        obj = cls.__new__(cls)
        obj.n = n
        obj._t = terms
        return obj

    @classmethod
    def identity(cls, n: int) -> "BTElement":
        return cls._raw(n, {(tuple(range(n)), _discrete(n)): _ONE})

    @classmethod
    def basis_element(cls, part: SetPartition, perm: Perm) -> "BTElement":
        if part.n != len(perm._w):
            raise DimensionMismatch("partition and permutation sizes differ")
        return cls._raw(part.n, {(part._r, perm._w): _ONE})

    @property
    def terms(self) -> dict:
        return {(SetPartition._wrap(r), Perm._wrap(w)): LaurentFraction(c) for (r, w), c in self._t.items()}

    def coefficient(self, part: SetPartition, perm: Perm) -> LaurentFraction:
        return LaurentFraction(self._t.get((part._r, perm._w), LaurentPoly()))

    def is_zero(self) -> bool:
        return not self._t

    def _check(self, other):
        if self.n != other.n:
            raise DimensionMismatch("elements of E_%d and E_%d" % (self.n, other.n))

    def __add__(self, other):
        if not isinstance(other, BTElement):
            return NotImplemented
        self._check(other)
        out = dict(self._t)
        for k, c in other._t.items():
            _add(out, k, c)
        return BTElement._raw(self.n, out)

    def __neg__(self):
        return BTElement._raw(self.n, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "BTElement":
        if isinstance(c, LaurentFraction):
            c = c.as_poly()
        if not isinstance(c, LaurentPoly):
            c = LaurentPoly.const(c)
        if c.is_zero():
            return BTElement._raw(self.n, {})
        return BTElement._raw(self.n, {k: v * c for k, v in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, BTElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        return isinstance(other, BTElement) and self.n == other.n and self._t == other._t

    def __hash__(self):
        return hash((self.n, frozenset(self._t.items())))

    def __len__(self):
        return len(self._t)

    def __repr__(self):
        if not self._t:
            return "BTElement(%d, 0)" % self.n
        parts = []
        for (r, w), c in sorted(self._t.items()):
            word = "".join("b%d" % (i + 1) for i in _reduced_word(w))
            blocks = SetPartition._wrap(r).blocks
            ties = "".join("e%s" % "".join(map(str, b)) for b in blocks if len(b) > 1)
            parts.append("(%s)*%s" % (c, (ties + word) or "1"))
        return "BTElement(%d, %s)" % (self.n, " + ".join(parts))


# generator actions on term dicts ------------------------------------------


def _right_b(terms: dict, i: int) -> dict:
    out = {}
    for (r, w), c in terms.items():
        _add(out, (r, _swap(w, i)), c)
        if w[i] > w[i + 1]:
            _add(out, (_join(r, w[i], w[i + 1]), w), c * _QD)
    return out


def _right_b_inv(terms: dict, i: int) -> dict:
    out = _right_b(terms, i)
    for k, c in _right_eps(terms, i).items():
        _add(out, k, -(c * _QD))
    return out


def _right_eps(terms: dict, i: int) -> dict:
    out = {}
    for (r, w), c in terms.items():
        _add(out, (_join(r, w[i], w[i + 1]), w), c)
    return out


def _left_b(terms: dict, i: int) -> dict:
    out = {}
    for (r, w), c in terms.items():
        r2 = _permute(r, _swap(_discrete(len(w)), i))
        inv = {v: p for p, v in enumerate(w)}
        w2 = tuple(i + 1 if v == i else i if v == i + 1 else v for v in w)
        _add(out, (r2, w2), c)
        if inv[i] > inv[i + 1]:
            _add(out, (_join(r2, i, i + 1), w), c * _QD)
    return out


def _left_eps(terms: dict, i: int) -> dict:
    out = {}
    for (r, w), c in terms.items():
        _add(out, (_join(r, i, i + 1), w), c)
    return out


def _right_ties(terms: dict, part: tuple) -> dict:
    """Right multiplication by eps_J: (I, w) -> (I v w(J), w)."""
    if len(set(part)) == len(part):
        return terms
    blocks = {}
    for x, lab in enumerate(part):
        blocks.setdefault(lab, []).append(x)
    out = {}
    for (r, w), c in terms.items():
        for b in blocks.values():
            for x in b[1:]:
                r = _join(r, w[b[0]], w[x])
        _add(out, (r, w), c)
    return out


def multiply(x: BTElement, y: BTElement) -> BTElement:
    """The product ``x * y``, expanded on the basis."""
    x._check(y)
    out = {}
    for (part, v), c in y._t.items():
        t = _right_ties(x._t, part)
        for i in _reduced_word(v):
            t = _right_b(t, i)
        for k, val in t.items():
            _add(out, k, val * c)
    return BTElement._raw(x.n, out)


def left_multiply_generator(x: BTElement, i: int, kind: str = "b") -> BTElement:
    """``g * x`` for the generator ``b_i`` (kind 'b') or ``eps_i`` (kind 'e'), 1-based ``i``."""
    _check_index(i, x.n)
    act = _left_b if kind == "b" else _left_eps
    return BTElement._raw(x.n, act(x._t, i - 1))


# ---------------------------------------------------------------------------
# constructors


def _check_size(n: int) -> None:
    if n < 1:
        raise BadIndices("need at least one strand")
    if n > MAX_STRANDS:
        raise SizeCap("%d strands exceeds the cap of %d" % (n, MAX_STRANDS))


def _check_index(i: int, n: int) -> None:
    if not 1 <= i <= n - 1:
        raise BadIndices("generator index %d out of range for %d strands" % (i, n))


def enumerate_basis(n: int) -> list:
    """All basis pairs (partition, permutation) of E_n(q); ``beta_n * n!`` of them."""
    _check_size(n)
    parts = []
    for blocks in set_partitions(n):
        parts.append(SetPartition([[x + 1 for x in b] for b in blocks], n))
    perms = [Perm._wrap(p) for p in sorted(permutations(range(n)), key=lambda p: (_length(p), p))]
    return [(I, w) for I in parts for w in perms]


def generator_b(i: int, n: int) -> BTElement:
    _check_index(i, n)
    return BTElement._raw(n, {(_discrete(n), _swap(_discrete(n), i - 1)): _ONE})


def generator_eps(i: int, n: int) -> BTElement:
    _check_index(i, n)
    return BTElement._raw(n, {(_join(_discrete(n), i - 1, i), _discrete(n)): _ONE})


def generator_b_inv(i: int, n: int) -> BTElement:
    return generator_b(i, n) - generator_eps(i, n).scale(_QD)


def tie(i: int, j: int, n: int) -> BTElement:
    """eps_{i,j} = b_i ... b_{j-2} eps_{j-1} b_{j-2}^-1 ... b_i^-1."""
    if not (1 <= i < j <= n):
        raise BadIndices("need 1 <= i < j <= n, got i=%r j=%r n=%r" % (i, j, n))
    t = generator_eps(j - 1, n)._t
    for k in range(j - 2, i - 1, -1):  # conjugate by b_k, innermost first
        t = _left_b(t, k - 1)
        t = _right_b_inv(t, k - 1)
    return BTElement._raw(n, t)


def _word_letters(w) -> tuple:
    if isinstance(w, BraidWord):
        return w.strands, tuple(w.letters)
    n, letters = w
    return n, tuple(letters)


def from_tied_braid(w) -> BTElement:
    """Image of a (tied) braid word: sigma_i -> b_i, sigma_i^-1 -> b_i^-1, eta_i -> eps_i."""
    n, letters = _word_letters(w)
    _check_size(n)
    t = BTElement.identity(n)._t
    for i, e in letters:
        _check_index(i, n)
        if e == 0:
            t = _right_eps(t, i - 1)
        elif e > 0:
            t = _right_b(t, i - 1)
        else:
            t = _right_b_inv(t, i - 1)
    return BTElement._raw(n, t)


# ---------------------------------------------------------------------------
# the Markov trace


def _drop_last(r: tuple) -> tuple:
    return _canon(r[:-1])


@lru_cache(maxsize=None)
def _rho(r: tuple, w: tuple) -> LaurentPoly:
    """rho(eps_I b_w) as a polynomial in q, z, E."""
    n = len(w)
    if n <= 1:
        return _ONE
    top = n - 1
    k = w.index(top)
    if k == top:
        # w lives in S_{n-1}; a tie on the last strand costs a factor E
        val = _rho(_drop_last(r), w[:-1])
        return val * _E if r[top] in r[:-1] else val
    # w = u * (s_{n-1} s_{n-2} ... s_k), written 1-based; here 0-based letters
    coset = tuple(range(top - 1, k - 1, -1))
    u = list(w)
    for i in reversed(coset):
        u[i], u[i + 1] = u[i + 1], u[i]
    u = tuple(u)
    # cycle the tail a' = b_{n-2} ... b_k to the front: a' eps_I = eps_{sigma(I)} a'
    sigma = _discrete(n)
    for i in coset[1:]:
        sigma = _swap(sigma, i)
    terms = {(_permute(r, sigma), sigma): _ONE}
    for i in _reduced_word(u):
        terms = _right_b(terms, i)
    total = LaurentPoly()
    for (m, v), c in terms.items():
        # rho(eps_M b_v b_{n-1}) with v in S_{n-1}
        mates = [x for x in range(top) if m[x] == m[top]]
        rest = _drop_last(m)
        if mates and v[top - 1] not in mates:
            j = mates[0]
            rest = _join(rest, v.index(j), top - 1)
        total = total + c * _Z * _rho(rest, v[:-1])
    return total


def trace_rho(x: BTElement) -> LaurentFraction:
    """The Markov trace rho(x) in ``q, z, E``."""
    total = LaurentPoly()
    for (r, w), c in x._t.items():
        total = total + c * _rho(r, w)
    return LaurentFraction(total)


def _z_degree_split(p: LaurentPoly) -> dict:
    zi = 2
    out = {}
    for m, c in p.terms():
        rest = list(m)
        j = rest[zi]
        rest[zi] = 0
        _add(out, j, LaurentPoly.from_exponents({tuple(rest): c}))
    return out


def theta_trace(w, tied: bool | None = None) -> LaurentFraction:
    """theta (or its tied version) of the closure of ``w`` via rho.

    ``(-(q^2+1)/(qE))^(n-1) * q^(2*eps) * rho(pi(w))`` at ``z = -q^-1 E/(q^2+1)``;
    ``eps`` is the exponent sum of the braiding letters.  Every power
    ``z^j`` (``j < n``) is cleared against the normalisation, so the result
    is a Laurent polynomial computed without fractions.
    """
    n, letters = _word_letters(w)
    if tied is False and any(e == 0 for _, e in letters):
        raise ValueError("tie letters present in a word declared classical")
    x = from_tied_braid((n, letters))
    rho = trace_rho(x).as_poly()
    eps = sum(e for _, e in letters)
    q2p1 = var("q", 2) + 1
    total = LaurentPoly()
    for j, c in _z_degree_split(rho).items():
        if j > n - 1:
            raise ArithmeticError("unexpected z-degree %d" % j)
        sign = -1 if (n - 1 + j) % 2 else 1
        total = total + c * q2p1 ** (n - 1 - j) * var("q", -j - (n - 1)) * var("E", j - (n - 1)) * sign
    return LaurentFraction(total * var("q", 2 * eps))


def Theta_trace(w) -> LaurentFraction:
    """Theta(q, s^2, E) of the closure via rho with ``z = (q - q^-1) E / (1 - s^2)``."""
    n, letters = _word_letters(w)
    x = from_tied_braid((n, letters))
    rho = trace_rho(x).as_poly()
    eps = sum(e for _, e in letters)
    one_m = LaurentPoly.const(1) - var("s", 2)
    total = LaurentFraction(LaurentPoly())
    for j, c in _z_degree_split(rho).items():
        # z^j * N^(n-1) = (q - q^-1)^(j-n+1) E^(j-n+1) (1 - s^2)^(n-1-j) s^-(n-1)
        num = c * one_m ** (n - 1 - j) * var("E", j - (n - 1)) * var("s", -(n - 1))
        total = total + LaurentFraction(num, _QD ** (n - 1 - j))
    return total * LaurentFraction(var("s", eps))


# ---------------------------------------------------------------------------
# the partition Temperley-Lieb quotient


def ptl_element(n: int = 3) -> BTElement:
    """b_{1,2} = eps_1 eps_2 (1 + q(b_1 + b_2) + q^2(b_1 b_2 + b_2 b_1) + q^3 b_1 b_2 b_1)."""
    if n < 3:
        raise BadIndices("b_{1,2} needs at least three strands")
    _check_size(n)
    terms = {}
    ties = _join(_join(_discrete(n), 0, 1), 1, 2)
    for p in permutations(range(3)):
        w = p + tuple(range(3, n))
        terms[(ties, w)] = var("q", _length(w))
    return BTElement._raw(n, terms)


def _z_roots(p: LaurentPoly) -> list:
    _, facs = factor(p)
    roots = []
    for f, mult in facs:
        split = _z_degree_split(f)
        if set(split) - {0, 1} or 1 not in split:
            continue
        const = split.get(0, LaurentPoly())
        roots.extend([LaurentFraction(-const, split[1])] * mult)
    return roots


def ptl_ideal_check(n: int = 3) -> dict:
    """Check that b_{1,2} spans a one-sided eigenline of the basis and factor rho(b_{1,2}).

    For every basis element ``m`` of E_3(q) with braid length ``k``, both
    ``m b_{1,2}`` and ``b_{1,2} m`` equal ``q^k b_{1,2}``.  The roots in
    ``z`` of ``rho(b_{1,2})`` are the values at which rho factors through
    the quotient by ``b_{1,2}``.
    """
    if n != 3:
        raise BadIndices("the check is defined on E_3(q)")
    b12 = ptl_element(3)
    failures = []
    for part, perm in enumerate_basis(3):
        m = BTElement.basis_element(part, perm)
        expect = b12.scale(var("q", perm.length))
        if multiply(m, b12) != expect or multiply(b12, m) != expect:
            failures.append((part, perm))
    rho = trace_rho(b12)
    roots = _z_roots(rho.as_poly())
    expected = [
        LaurentFraction(-(var("q", -1) * _E), var("q", 2) + 1),
        LaurentFraction(-(var("q", -1) * _E)),
    ]
    printed = LaurentFraction(-var("q", -1), _E)
    got = {str(r) for r in roots}
    return {
        "b12": repr(b12),
        "basis-size": len(enumerate_basis(3)),
        "eigen-failures": [(p.blocks, w.one_line) for p, w in failures],
        "rho(b12)": str(rho),
        "factored": " * ".join("(%s)" % f for f, _ in factor(rho.as_poly())[1]),
        "z-roots": sorted(got),
        "flags": {
            "eigenline": not failures,
            "roots-match-factorisation": got == {str(r) for r in expected},
            "printed-root -q^-1/E is a root": str(printed) in got,
        },
    }
