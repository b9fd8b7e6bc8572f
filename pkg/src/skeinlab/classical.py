"""Kauffman bracket, Jones polynomial and Homflypt polynomial.

Conventions
-----------
* Bracket: ``<O> = 1``, ``delta = -A^2 - A^-2``; at ``X(a,b,c,d)`` the
  A-smoothing joins ``a-b`` and ``c-d``, the B-smoothing joins ``a-d`` and
  ``b-c``.
* Jones: ``V = (-A^3)^(-w) <L>`` rewritten with ``q = A^-2`` (so ``t = q^2``).
* Homflypt: ``s^-1 P(L+) - s P(L-) = (q - q^-1) P(L0)``, ``P(unknot) = 1``.

The bracket is evaluated by a sequential state-merging sweep over the
crossings (states are matchings of the dangling edges), which is exact and
equal to the plain ``2^n`` state sum; :func:`kauffman_bracket_naive` keeps the
latter as a reference implementation.
"""

from __future__ import annotations

from itertools import product

from .diagram import LinkDiagram, canonical_key, resolve, simplify, split
from .poly import LaurentFraction, LaurentPoly, rebase, var

__all__ = [
    "TooManyCrossings",
    "DEFAULT_CAP",
    "kauffman_bracket",
    "kauffman_bracket_naive",
    "jones",
    "homflypt",
    "homflypt_mu_series",
    "mu_series_value",
    "MU",
]

DEFAULT_CAP = 24


class TooManyCrossings(ValueError):
    pass


def _check_cap(L: LinkDiagram, cap):
    if cap is not None and L.n_crossings > cap:
        raise TooManyCrossings("%d crossings exceeds cap %d" % (L.n_crossings, cap))


# ---------------------------------------------------------------------------
# bracket: univariate polys in A as {exponent: int}


def _times_delta(p: dict) -> dict:
    out = {}
    for e, c in p.items():
        out[e + 2] = out.get(e + 2, 0) - c
        out[e - 2] = out.get(e - 2, 0) - c
    return {e: c for e, c in out.items() if c}


def _div_delta(p: dict) -> dict:
    """Exact division by delta = -A^-2 (1 + A^4)."""
    rem = dict(p)
    floor = min(p, default=0)
    quot = {}
    while rem:
        top = max(rem)
        if top - 4 < floor:
            raise ArithmeticError("state sum not divisible by delta")
        c = rem.pop(top)
        quot[top - 4] = c
        rem[top - 4] = rem.get(top - 4, 0) - c
        if not rem[top - 4]:
            del rem[top - 4]
    return {e + 2: -c for e, c in quot.items()}


def _crossing_order(L: LinkDiagram) -> list:
    n = L.n_crossings
    done = [False] * n
    open_count = {}
    order = []
    for _ in range(n):
        best, score = None, -1
        for i in range(n):
            if done[i]:
                continue
            s = sum(1 for lab in L.crossings[i].edges if open_count.get(lab, 0) == 1)
            if s > score:
                best, score = i, s
        done[best] = True
        order.append(best)
        for lab in L.crossings[best].edges:
            open_count[lab] = open_count.get(lab, 0) + 1
    return order


def _connect(match: dict, u, v) -> int:
    """Link the ends of edges u and v met at the current crossing.

    ``match`` maps each half-seen edge to the edge at the other end of its
    chain.  Returns the number of loops closed (0 or 1).
    """
    if u == v:
        return 1
    ou = match.pop(u, None)  # far end of u's chain, if u was open
    ov = match.pop(v, None)
    if ou is None and ov is None:
        match[u] = v
        match[v] = u
        return 0
    if ou is not None and ov is not None:
        if ou == v:  # u and v were the two ends of one chain
            return 1
        match[ou] = ov
        match[ov] = ou
        return 0
    if ou is not None:
        # u closes, its chain now ends at v (fresh)
        if ou == v:
            return 1
        match[ou] = v
        match[v] = ou
        return 0
    if ov == u:
        return 1
    match[ov] = u
    match[u] = ov
    return 0


def _bracket_dict(L: LinkDiagram) -> dict:
    states = {(): {0: 1}}
    for i in _crossing_order(L):
        x = L.crossings[i]
        pairings = (((x.a, x.b), (x.c, x.d)), ((x.a, x.d), (x.b, x.c)))
        new_states = {}
        for key, poly in states.items():
            for sgn, pairing in zip((1, -1), pairings):
                match = dict(key)
                loops = 0
                for u, v in pairing:
                    loops += _connect(match, u, v)
                p = {e + sgn: c for e, c in poly.items()}
                for _ in range(loops):
                    p = _times_delta(p)
                nk = tuple(sorted(match.items()))
                tgt = new_states.get(nk)
                if tgt is None:
                    new_states[nk] = p
                else:
                    for e, c in p.items():
                        v = tgt.get(e, 0) + c
                        if v:
                            tgt[e] = v
                        else:
                            tgt.pop(e, None)
        states = new_states
    total = {}
    for key, poly in states.items():
        if key:
            raise ValueError("diagram is not closed")
        for e, c in poly.items():
            total[e] = total.get(e, 0) + c
    total = {e: c for e, c in total.items() if c}
    for _ in L.loops:
        total = _times_delta(total)
    return _div_delta(total)


def _to_A(d: dict) -> LaurentPoly:
    return LaurentPoly.from_exponents({(0, 0, 0, 0, e, 0): c for e, c in d.items()})


def kauffman_bracket(L: LinkDiagram, cap: int | None = DEFAULT_CAP) -> LaurentPoly:
    """<L> as a Laurent polynomial in A, normalised by <unknot> = 1."""
    _check_cap(L, cap)
    return _to_A(_bracket_dict(L))


def kauffman_bracket_naive(L: LinkDiagram, cap: int | None = 16) -> LaurentPoly:
    """Plain sum over all 2^n states, loops counted with union-find."""
    _check_cap(L, cap)
    n = L.n_crossings
    total = {}
    for state in product((0, 1), repeat=n):
        parent = {}

        def find(x):
            while parent.get(x, x) != x:
                x = parent[x]
            return x

        for bit, x in zip(state, L.crossings):
            pairs = ((x.a, x.b), (x.c, x.d)) if bit == 0 else ((x.a, x.d), (x.b, x.c))
            for u, v in pairs:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
        labels = {lab for x in L.crossings for lab in x.edges}
        loops = len({find(lab) for lab in labels}) + len(L.loops)
        p = {n - 2 * sum(state): 1}
        for _ in range(loops):
            p = _times_delta(p)
        for e, c in p.items():
            total[e] = total.get(e, 0) + c
    total = {e: c for e, c in total.items() if c}
    return _to_A(_div_delta(total))


def jones(L: LinkDiagram, convention: str = "q", cap: int | None = DEFAULT_CAP) -> LaurentFraction:
    """Jones polynomial from the bracket, in ``q`` (default) or ``t = q^2``.

    With ``convention='t'`` the q-exponents must all be even, otherwise
    :class:`~skeinlab.poly.OddExponent` is raised; use
    :func:`skeinlab.poly.render_t` to print half-integer powers of ``t``.
    """
    _check_cap(L, cap)
    b = _bracket_dict(L)
    w = L.writhe
    sign = -1 if w % 2 else 1
    f = {e - 3 * w: sign * c for e, c in b.items()}
    v = rebase(_to_A(f), "A->q")
    if convention == "t":
        v = rebase(v, "q->t")
    elif convention != "q":
        raise ValueError("convention must be 'q' or 't'")
    return LaurentFraction(v)


# ---------------------------------------------------------------------------
# Homflypt by descending diagrams

Q_DIFF = var("q") - var("q", -1)
MU = LaurentFraction(var("s", -1) - var("s"), Q_DIFF)

_S2 = var("s", 2)
_SZ = var("s") * Q_DIFF
_S_2 = var("s", -2)
_S_Z = -(var("s", -1) * Q_DIFF)


def _series_mul(a: dict, b: dict) -> dict:
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, LaurentPoly()) + x * y
    return {k: v for k, v in out.items() if not v.is_zero()}


def _series_axpy(acc: dict, c: LaurentPoly, b: dict) -> None:
    for k, v in b.items():
        acc[k] = acc.get(k, LaurentPoly()) + c * v


def _first_bad_crossing(D: LinkDiagram):
    """First crossing met from below when walking components from their base points."""
    heads = D._ends[0]
    seen = set()
    for cyc in D.components:
        for lab in cyc:
            if lab not in heads:
                continue
            ci, p = heads[lab]
            if ci in seen:
                continue
            seen.add(ci)
            if p == 0:
                return ci
    return None


def homflypt_mu_series(L: LinkDiagram, memo: dict | None = None, cap: int | None = DEFAULT_CAP) -> dict:
    """P(L) as ``{k: c_k}`` meaning ``sum c_k * mu^k`` with ``c_k`` in (q, s)."""
    _check_cap(L, cap)
    if memo is None:
        memo = {}
    return _homfly(L, memo)


def _homfly(L: LinkDiagram, memo: dict) -> dict:
    D = simplify(L)
    pieces = split(D)
    if len(pieces) > 1:
        acc = {len(pieces) - 1: LaurentPoly.const(1)}
        for piece in pieces:
            acc = _series_mul(acc, _homfly_connected(piece, memo))
        return acc
    return _homfly_connected(D, memo)


def _homfly_connected(D: LinkDiagram, memo: dict) -> dict:
    if not D.crossings:
        return {0: LaurentPoly.const(1)}
    key = canonical_key(D)
    hit = memo.get(key)
    if hit is not None:
        return hit
    ci = _first_bad_crossing(D)
    if ci is None:
        value = {D.n_components - 1: LaurentPoly.const(1)}
    else:
        sw = _homfly(resolve(D, ci, "switch"), memo)
        sm = _homfly(resolve(D, ci, "smooth"), memo)
        value = {}
        if D.crossings[ci].sign > 0:
            _series_axpy(value, _S2, sw)
            _series_axpy(value, _SZ, sm)
        else:
            _series_axpy(value, _S_2, sw)
            _series_axpy(value, _S_Z, sm)
        value = {k: v for k, v in value.items() if not v.is_zero()}
    memo[key] = value
    return value


def mu_series_value(series: dict, mu: LaurentFraction = MU) -> LaurentFraction:
    """Evaluate ``sum c_k mu^k`` as a single canonical fraction."""
    if not series:
        return LaurentFraction(LaurentPoly())
    if mu is MU:
        top = max(series)
        num = LaurentPoly()
        a = var("s", -1) - var("s")
        for k, c in series.items():
            num = num + c * a ** k * Q_DIFF ** (top - k)
        return LaurentFraction(num, Q_DIFF ** top)
    total = LaurentFraction(LaurentPoly())
    for k, c in series.items():
        total = total + LaurentFraction(c) * mu ** k
    return total


def homflypt(L: LinkDiagram, cap: int | None = DEFAULT_CAP, memo: dict | None = None) -> LaurentFraction:
    """Homflypt polynomial in (q, s), normalised by P(unknot) = 1."""
    return mu_series_value(homflypt_mu_series(L, memo, cap))

