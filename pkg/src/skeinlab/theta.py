"""The invariants theta(q, E) and Theta(q, lambda, E) on link diagrams.

theta satisfies the Jones skein relation at crossings between different
components,

    q^-2 theta(L+) - q^2 theta(L-) = (q - q^-1) theta(L0),

and on a split union of knots ``K_1 .. K_r`` it takes the value

    (-(q + q^-1))^(r-1) * E^(1-r) * prod V(K_i)        ("consistent")

The literal rule ``E^(1-r) prod V(K_i)`` is available as ``"printed"`` for
comparison; it disagrees with the partition formula and the trace route.

Two routes are provided: :func:`theta_skein` descends through the skein
relation, :func:`theta_partition` sums over set partitions of the components
using linking numbers and Jones polynomials of sublinks.  ``Theta_partition``
is the three-variable analogue with Homflypt polynomials (``lambda = s^2``).
"""

from __future__ import annotations

from functools import reduce
from itertools import combinations

from .classical import DEFAULT_CAP, TooManyCrossings, _series_mul, homflypt, homflypt_mu_series, jones, mu_series_value
from .diagram import LinkDiagram, canonical_key, resolve, simplify, sublink
from .poly import LaurentFraction, LaurentPoly, canonical_eq, parse, substitute, var

__all__ = [
    "NonTermination",
    "MU_AT_Q4",
    "ComponentPartition",
    "set_partitions",
    "component_partitions",
    "ek",
    "theta_partition",
    "Theta_partition",
    "theta_skein",
    "split_value",
    "compare",
    "thistlethwaite_report",
]

NORMALIZATIONS = ("consistent", "printed")


class NonTermination(RuntimeError):
    """The skein descent failed to decrease its measure (a bug signal)."""


_LOOP = -(var("q") + var("q", -1))  # value of a distant unknot factor at lambda = q^4
MU_AT_Q4 = LaurentFraction(_LOOP)


# ---------------------------------------------------------------------------
# partitions


def set_partitions(m: int):
    """Yield partitions of ``range(m)`` as tuples of blocks, via restricted growth strings."""
    if m == 0:
        yield ()
        return
    a = [0] * m
    while True:
        k = max(a) + 1
        blocks = [[] for _ in range(k)]
        for i, b in enumerate(a):
            blocks[b].append(i)
        yield tuple(tuple(b) for b in blocks)
        # next restricted growth string
        i = m - 1
        while i > 0 and a[i] > max(a[:i]):
            i -= 1
        if i == 0:
            return
        a[i] += 1
        for j in range(i + 1, m):
            a[j] = 0


class ComponentPartition:
    """A set partition of components together with its cross-block linking sum."""

    __slots__ = ("blocks", "nu")

    def __init__(self, blocks, linking_matrix):
        self.blocks = tuple(sorted(tuple(sorted(b)) for b in blocks))
        where = {i: n for n, b in enumerate(self.blocks) for i in b}
        self.nu = sum(
            linking_matrix[i][j]
            for i, j in combinations(sorted(where), 2)
            if where[i] != where[j]
        )

    def __len__(self):
        return len(self.blocks)

    def __repr__(self):
        return "ComponentPartition(%r, nu=%d)" % (self.blocks, self.nu)


def component_partitions(L: LinkDiagram):
    lk = L.linking_matrix
    for blocks in set_partitions(L.n_components):
        yield ComponentPartition(blocks, lk)


def _ek_poly(k: int) -> LaurentPoly:
    einv = var("E", -1)
    return reduce(lambda acc, j: acc * (einv - j), range(1, k), LaurentPoly.const(1))


def ek(k: int) -> LaurentFraction:
    """Falling factorial (E^-1 - 1)(E^-1 - 2)...(E^-1 - k + 1); ek(1) = 1."""
    if k < 1:
        raise ValueError("k must be positive")
    return LaurentFraction(_ek_poly(k))


# ---------------------------------------------------------------------------
# partition route


def _jones_poly(D: LinkDiagram, cache: dict | None, cap) -> LaurentPoly:
    if cache is None:
        return jones(D, cap=cap).as_poly()
    key = canonical_key(D)
    v = cache.get(key)
    if v is None:
        v = cache[key] = jones(D, cap=cap).as_poly()
    return v


def theta_partition(L: LinkDiagram, cap: int | None = DEFAULT_CAP, cache: dict | None = None) -> LaurentFraction:
    """theta as a sum over set partitions of the components."""
    sub_v = {}
    total = LaurentPoly()
    for part in component_partitions(L):
        k = len(part)
        term = _LOOP ** (k - 1) * _ek_poly(k) * var("q", 4 * part.nu)
        for block in part.blocks:
            if block not in sub_v:
                sub_v[block] = _jones_poly(sublink(L, block), cache, cap)
            term = term * sub_v[block]
        total = total + term
    return LaurentFraction(total)


def Theta_partition(L: LinkDiagram, cap: int | None = DEFAULT_CAP, memo: dict | None = None) -> LaurentFraction:
    """Theta(q, s^2, E) as a partition sum of Homflypt values of sublinks."""
    if memo is None:
        memo = {}
    sub_p = {}
    acc = {}
    for part in component_partitions(L):
        k = len(part)
        series = {k - 1: _ek_poly(k) * var("s", 2 * part.nu)}
        for block in part.blocks:
            if block not in sub_p:
                sub_p[block] = homflypt_mu_series(sublink(L, block), memo, cap)
            series = _series_mul(series, sub_p[block])
        for d, c in series.items():
            acc[d] = acc.get(d, LaurentPoly()) + c
    return mu_series_value({d: c for d, c in acc.items() if not c.is_zero()})


# ---------------------------------------------------------------------------
# skein route


def split_value(knot_values, normalization: str = "consistent") -> LaurentPoly:
    """theta of a split union of knots with the given Jones polynomials."""
    if normalization not in NORMALIZATIONS:
        raise ValueError("normalization must be one of %s" % (NORMALIZATIONS,))
    r = len(knot_values)
    value = reduce(lambda a, b: a * b, knot_values, LaurentPoly.const(1))
    if r > 1:
        value = value * var("E", 1 - r)
        if normalization == "consistent":
            value = value * _LOOP ** (r - 1)
    return value


def _wrong_crossings(D: LinkDiagram) -> list:
    """Mixed crossings where the lower-indexed component passes under, in walk order."""
    heads = D._ends[0]
    comp = D.component_of
    seen, bad = set(), []
    for cyc in D.components:
        for lab in cyc:
            hit = heads.get(lab)
            if hit is None:
                continue
            ci, p = hit
            if p != 0 or ci in seen:
                continue
            seen.add(ci)
            x = D.crossings[ci]
            if comp[x.a] < comp[x.b]:
                bad.append(ci)
    return bad


# theta(L+) = q^4 theta(L-) + (q^3 - q) theta(L0)
# theta(L-) = q^-4 theta(L+) - (q^-1 - q^-3) theta(L0)
_POS = (var("q", 4), var("q", 3) - var("q"))
_NEG = (var("q", -4), var("q", -3) - var("q", -1))


class _SkeinState:
    def __init__(self, normalization, cap, jones_cache):
        self.normalization = normalization
        self.cap = cap
        self.memo = {}
        self.jones_cache = {} if jones_cache is None else jones_cache
        self.nodes = 0

    def value(self, D: LinkDiagram) -> LaurentPoly:
        D = simplify(D)
        key = canonical_key(D)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.nodes += 1
        bad = _wrong_crossings(D)
        if not bad:
            knots = [
                _jones_poly(sublink(D, [i]), self.jones_cache, self.cap) for i in range(D.n_components)
            ]
            if len(knots) == 1:
                knots = [_jones_poly(D, self.jones_cache, self.cap)]
            v = split_value(knots, self.normalization)
        else:
            ci = bad[0]
            sw = resolve(D, ci, "switch")
            sm = resolve(D, ci, "smooth")
            if len(_wrong_crossings(sw)) >= len(bad) or sm.n_components >= D.n_components:
                raise NonTermination("skein measure did not decrease")
            c_sw, c_sm = _POS if D.crossings[ci].sign > 0 else _NEG
            v = c_sw * self.value(sw) + c_sm * self.value(sm)
        self.memo[key] = v
        return v


def theta_skein(
    L: LinkDiagram,
    normalization: str = "consistent",
    cap: int | None = DEFAULT_CAP,
    jones_cache: dict | None = None,
) -> LaurentFraction:
    """theta by skein descent on mixed crossings, memoised on diagram keys."""
    if normalization not in NORMALIZATIONS:
        raise ValueError("normalization must be one of %s" % (NORMALIZATIONS,))
    if cap is not None and L.n_crossings > cap:
        raise TooManyCrossings("%d crossings exceeds cap %d" % (L.n_crossings, cap))
    return LaurentFraction(_SkeinState(normalization, cap, jones_cache).value(L))


# ---------------------------------------------------------------------------
# reports


def _diff_entry(a: LaurentFraction, b: LaurentFraction) -> dict:
    d = a - b
    return {"difference": str(d), "equal": d.is_zero()}


def compare(L1: LinkDiagram, L2: LinkDiagram, names=("L1", "L2"), normalization: str = "consistent") -> dict:
    """V, P and theta of two diagrams with their differences and equality flags."""

    def theta(D):
        if normalization == "consistent":
            return theta_partition(D)
        return theta_skein(D, normalization)

    values = {
        "V": (jones(L1), jones(L2)),
        "P": (homflypt(L1), homflypt(L2)),
        "theta": (theta(L1), theta(L2)),
    }
    diffs = {k: v[0] - v[1] for k, v in values.items()}
    return {
        "links": list(names),
        "invariants": {k: [str(v[0]), str(v[1])] for k, v in values.items()},
        "differences": {k: str(d) for k, d in diffs.items()},
        "flags": {"%s-equal" % k: d.is_zero() for k, d in diffs.items()},
        "normalization": normalization,
    }


def thistlethwaite_report(table=None) -> dict:
    """Values around the Thistlethwaite link and the checks that tie them together."""
    from .data import MissingData, load_table

    table = load_table() if table is None else table
    need = ["thistlethwaite", "3_1", "4_1", "unlink2"]
    missing = [n for n in need if n not in table]
    if missing:
        raise MissingData("bundled table lacks %s" % ", ".join(missing))
    T = table["thistlethwaite"].diagram()
    U = table["unlink2"].diagram()
    v_t = jones(T)
    v_u = jones(U)
    v31 = jones(table["3_1"].diagram())
    v41 = jones(table["4_1"].diagram())
    th_part = theta_partition(T)
    th_skein = theta_skein(T)
    th_u = theta_partition(U)
    closed = (1 - var("E", -1)) * (var("q") + var("q", -1)) * v31.as_poly() * v41.as_poly() + v_t.as_poly()
    closed = LaurentFraction(closed)
    at_one = substitute(th_part, "E", 1)
    comps = [jones(sublink(T, [i])) for i in range(T.n_components)]
    checks = {
        "jones-is-unlink": v_t == parse("-q^-1 - q") and v_t == v_u,
        "components-are-3_1-and-4_1": sorted(map(str, comps)) == sorted(map(str, (v31, v41))),
        "linking-number-zero": T.n_components == 2 and T.linking_matrix[0][1] == 0,
        "routes-agree": canonical_eq(th_part, th_skein),
        "closed-expression": canonical_eq(th_part, closed),
        "collapses-at-E=1": canonical_eq(at_one, v_t),
        "differs-from-unlink": not canonical_eq(th_part, th_u),
    }
    return {
        "links": ["thistlethwaite", "unlink2"],
        "invariants": {
            "V(TLink)": str(v_t),
            "V(unlink2)": str(v_u),
            "V(3_1)": str(v31),
            "V(4_1)": str(v41),
            "theta(TLink) partition": str(th_part),
            "theta(TLink) skein": str(th_skein),
            "theta(unlink2)": str(th_u),
        },
        "differences": {"theta(TLink) - theta(unlink2)": str(th_part - th_u)},
        "flags": checks,
        "normalization": "consistent",
    }

