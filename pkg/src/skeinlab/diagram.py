"""Oriented link diagrams in PD form.

A crossing ``X(a, b, c, d)`` lists its four edges counterclockwise, starting
from the incoming under-edge, so the under-strand runs ``a -> c``.  The
crossing is positive when the over-strand runs ``d -> b`` and negative when it
runs ``b -> d``.  Orientation is inferred once at parse time and afterwards
carried by the crossing tuples themselves (the head of every edge is fixed by
the slot it occupies and the sign), so derived diagrams never guess again.

Crossing-free circles are kept as explicit ``loops`` (one edge label each).
Component indices are 0-based and ordered by the smallest edge label.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

__all__ = [
    "DiagramError",
    "MalformedRecord",
    "InconsistentEdgeCount",
    "OrientationConflict",
    "TieLettersPresent",
    "EmptySubset",
    "UnknownCrossing",
    "Crossing",
    "LinkDiagram",
    "BraidWord",
    "parse_pd",
    "parse_braid",
    "braid_closure",
    "analyze",
    "sublink",
    "resolve",
    "split",
    "disjoint_union",
    "canonical_key",
    "simplify",
    "renumber",
    "mirror",
]


class DiagramError(ValueError):
    pass


class MalformedRecord(DiagramError):
    pass


class InconsistentEdgeCount(DiagramError):
    pass


class OrientationConflict(DiagramError):
    pass


class TieLettersPresent(DiagramError):
    pass


class EmptySubset(DiagramError):
    pass


class UnknownCrossing(DiagramError, IndexError):
    pass


class Crossing(NamedTuple):
    a: int
    b: int
    c: int
    d: int
    sign: int

    @property
    def edges(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def over_in(self) -> int:
        return self.d if self.sign > 0 else self.b

    def over_out(self) -> int:
        return self.b if self.sign > 0 else self.d


# slot of the incoming edge for the under (0) and over strand, by sign
_OVER_IN_SLOT = {1: 3, -1: 1}


class LinkDiagram:
    """Immutable oriented diagram: crossings plus crossing-free loops."""

    def __init__(self, crossings: Iterable = (), loops: Iterable = ()):
        self.crossings = tuple(c if isinstance(c, Crossing) else Crossing(*c) for c in crossings)
        self.loops = tuple(sorted(loops))

    # derived structure ----------------------------------------------------
    @cached_property
    def _ends(self):
        """(heads, tails): edge -> (crossing index, slot) where it ends / starts."""
        heads, tails = {}, {}
        for ci, x in enumerate(self.crossings):
            e = x.edges
            o = _OVER_IN_SLOT[x.sign]
            for p_in in (0, o):
                lab_in, lab_out = e[p_in], e[(p_in + 2) % 4]
                if lab_in in heads or lab_out in tails:
                    raise InconsistentEdgeCount("edge used more than twice")
                heads[lab_in] = (ci, p_in)
                tails[lab_out] = (ci, (p_in + 2) % 4)
        if set(heads) != set(tails):
            raise InconsistentEdgeCount("edges without both ends: %s" % sorted(set(heads) ^ set(tails)))
        for lab in self.loops:
            if lab in heads:
                raise InconsistentEdgeCount("loop label %r also used by a crossing" % (lab,))
        return heads, tails

    @cached_property
    def successor(self) -> dict:
        """Next edge along the orientation; loops map to themselves."""
        heads, _ = self._ends
        succ = {}
        for lab, (ci, p) in heads.items():
            succ[lab] = self.crossings[ci][(p + 2) % 4]
        for lab in self.loops:
            succ[lab] = lab
        return succ

    @cached_property
    def components(self) -> tuple:
        """Edge cycles in orientation order, each starting at its smallest label."""
        succ = self.successor
        seen, comps = set(), []
        for start in sorted(succ):
            if start in seen:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = succ[x]
            comps.append(tuple(cyc))
        return tuple(comps)

    @cached_property
    def component_of(self) -> dict:
        return {lab: i for i, cyc in enumerate(self.components) for lab in cyc}

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def writhe(self) -> int:
        return sum(x.sign for x in self.crossings)

    def edges(self) -> list:
        return sorted(self.successor)

    def crossing_components(self, i: int) -> tuple:
        """(under component, over component) of crossing ``i``."""
        x = self.crossings[i]
        comp = self.component_of
        return comp[x.a], comp[x.b]

    def is_mixed(self, i: int) -> bool:
        u, o = self.crossing_components(i)
        return u != o

    @cached_property
    def linking_matrix(self) -> tuple:
        m = self.n_components
        twice = [[0] * m for _ in range(m)]
        for i, x in enumerate(self.crossings):
            u, o = self.crossing_components(i)
            if u != o:
                twice[u][o] += x.sign
                twice[o][u] += x.sign
        return tuple(tuple(v // 2 for v in row) for row in twice)

    def linking_number(self, i: int, j: int) -> int:
        return self.linking_matrix[i][j]

    def validate(self) -> "LinkDiagram":
        self._ends  # raises on inconsistency
        counts = {}
        for x in self.crossings:
            if x.sign not in (1, -1):
                raise MalformedRecord("crossing sign must be +1 or -1")
            for lab in x.edges:
                counts[lab] = counts.get(lab, 0) + 1
        bad = [lab for lab, n in counts.items() if n != 2]
        if bad:
            raise InconsistentEdgeCount("edges not used exactly twice: %s" % sorted(bad))
        return self

    def to_pd(self) -> str:
        parts = ["X(%d,%d,%d,%d)" % x.edges for x in self.crossings]
        parts += ["O(%d)" % lab for lab in self.loops]
        return " ".join(parts)

    def relabel(self, mapping: dict) -> "LinkDiagram":
        f = mapping.__getitem__
        return LinkDiagram(
            [Crossing(f(x.a), f(x.b), f(x.c), f(x.d), x.sign) for x in self.crossings],
            [f(lab) for lab in self.loops],
        )

    def __eq__(self, other):
        if not isinstance(other, LinkDiagram):
            return NotImplemented
        return self.crossings == other.crossings and self.loops == other.loops

    def __hash__(self):
        return hash((self.crossings, self.loops))

    def __repr__(self):
        return "LinkDiagram(%r)" % self.to_pd()


# ---------------------------------------------------------------------------
# PD parsing

_RECORD = re.compile(r"([XO])\s*[\(\[]\s*([^\)\]]*)[\)\]]")


def parse_pd(text: str) -> LinkDiagram:
    """Parse ``X(a,b,c,d)`` records (``O(n)`` adds a crossing-free circle).

    Orientation comes from the under-strands (each runs ``a -> c``).  A
    component that never passes under is oriented so that its edge labels
    mostly increase along it.
    """
    if text is None:
        raise MalformedRecord("no PD text")
    body = text.strip()
    if body.startswith("PD"):
        body = body[2:].strip()
        if body[:1] in "[(" and body[-1:] in "])":
            body = body[1:-1]
    records, loops, pos = [], [], 0
    for m in _RECORD.finditer(body):
        gap = body[pos:m.start()]
        if gap.strip(" \t\r\n,;"):
            raise MalformedRecord("unexpected text %r" % gap.strip())
        pos = m.end()
        fields = [f.strip() for f in m.group(2).split(",")]
        try:
            vals = [int(f) for f in fields]
        except ValueError:
            raise MalformedRecord("non-integer edge label in %r" % m.group(0)) from None
        if m.group(1) == "X":
            if len(vals) != 4:
                raise MalformedRecord("crossing needs four edges: %r" % m.group(0))
            records.append(tuple(vals))
        else:
            if len(vals) != 1:
                raise MalformedRecord("loop record takes one label: %r" % m.group(0))
            loops.append(vals[0])
    if body[pos:].strip(" \t\r\n,;"):
        raise MalformedRecord("unexpected text %r" % body[pos:].strip())
    if not records and not loops:
        raise MalformedRecord("empty PD code")

    slots = {}
    for ci, rec in enumerate(records):
        for p, lab in enumerate(rec):
            slots.setdefault(lab, []).append((ci, p))
    bad = sorted(lab for lab, occ in slots.items() if len(occ) != 2)
    if bad:
        raise InconsistentEdgeCount("edges not used exactly twice: %s" % bad)
    if len(set(loops)) != len(loops) or set(loops) & set(slots):
        raise InconsistentEdgeCount("loop labels must be unused elsewhere")

    def other(lab, slot):
        s1, s2 = slots[lab]
        return s2 if s1 == slot else s1

    signs = [0] * len(records)
    visited = set()
    for lab0 in sorted(slots):
        if lab0 in visited:
            continue
        # walk the strand, entering crossings; passage = (ci, p_in)
        passages, labels = [], []
        ci, p = slots[lab0][0]
        start = (ci, p)
        while True:
            passages.append((ci, p))
            out = (p + 2) % 4
            lab = records[ci][out]
            labels.append(lab)
            ci, p = other(lab, (ci, out))
            if (ci, p) == start:
                break
        fwd = sum(1 for c, p in passages if p == 0)
        back = sum(1 for c, p in passages if p == 2)
        if fwd and back:
            raise OrientationConflict("under-strands disagree on component through edge %d" % lab0)
        if back or (not fwd and not _numbering_forward(labels)):
            # reverse: enter through the opposite slot of each passage
            passages = [(c, (p + 2) % 4) for c, p in passages]
        for c, p in passages:
            if p in (1, 3):
                signs[c] = 1 if p == 3 else -1
            visited.add(records[c][p])
            visited.add(records[c][(p + 2) % 4])
    crossings = [Crossing(*rec, signs[ci]) for ci, rec in enumerate(records)]
    return LinkDiagram(crossings, loops).validate()


def _numbering_forward(labels: list) -> bool:
    """Does this cyclic label sequence run mostly upward?"""
    up = down = 0
    n = len(labels)
    for i in range(n):
        a, b = labels[i], labels[(i + 1) % n]
        if b == a + 1:
            up += 1
        elif b == a - 1:
            down += 1
    if up != down:
        return up > down
    # wraparound step: ascending sequences jump from the max back to the min
    i = labels.index(max(labels))
    return labels[(i + 1) % n] == min(labels)


# ---------------------------------------------------------------------------
# braids


@dataclass(frozen=True)
class BraidWord:
    """Braid word on ``strands`` strands.

    Letters are ``(i, e)`` with ``e = +1`` for sigma_i, ``-1`` for its inverse
    and ``0`` for the tie eta_i.
    """

    strands: int
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple((int(i), int(e)) for i, e in self.letters))
        if self.strands < 1:
            raise DiagramError("a braid needs at least one strand")
        for i, e in self.letters:
            if not 1 <= i < self.strands or e not in (-1, 0, 1):
                raise DiagramError("bad letter (%d, %d) on %d strands" % (i, e, self.strands))

    @property
    def exponent_sum(self) -> int:
        return sum(e for _, e in self.letters)

    @property
    def has_ties(self) -> bool:
        return any(e == 0 for _, e in self.letters)

    def __str__(self):
        names = {1: "s%d", -1: "s%d^-1", 0: "e%d"}
        return " ".join(names[e] % i for i, e in self.letters)


_LETTER = re.compile(r"^(?:([sSeEtT])(-?\d+)(?:\^(-?1))?|(-?\d+))$")


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse ``"s1 s2^-1 S1 e2"`` or ``"1 -2 -1"``.

    ``S`` or ``^-1`` (or a negative index) marks an inverse; ``e``/``t`` is a tie.
    """
    letters = []
    for tok in text.replace(",", " ").split():
        m = _LETTER.match(tok)
        if not m:
            raise MalformedRecord("bad braid letter %r" % tok)
        kind, idx, power, bare = m.groups()
        if bare is not None:
            n = int(bare)
            if n == 0:
                raise MalformedRecord("generator index 0 in %r" % tok)
            letters.append((abs(n), 1 if n > 0 else -1))
            continue
        n = int(idx)
        if kind in "eEtT":
            if power is not None:
                raise MalformedRecord("ties have no inverse: %r" % tok)
            letters.append((abs(n), 0))
            continue
        e = 1 if kind == "s" else -1
        if n < 0:
            e, n = -e, -n
        if power == "-1":
            e = -e
        letters.append((n, e))
    need = max((i for i, _ in letters), default=0) + 1
    if strands is None:
        strands = max(need, 1)
    if strands < need:
        raise MalformedRecord("word needs %d strands" % need)
    return BraidWord(strands, tuple(letters))


def braid_closure(w: BraidWord) -> LinkDiagram:
    """Trace closure; positive letters give positive crossings."""
    if w.has_ties:
        raise TieLettersPresent("closure of tied braids is not a link diagram")
    n = w.strands
    cur = list(range(1, n + 1))  # edge label at each position (0-based list)
    nxt = n + 1
    crossings = []
    for i, e in w.letters:
        x, y = cur[i - 1], cur[i]
        x2, y2 = nxt, nxt + 1  # x2 continues x (now on the right), y2 continues y
        nxt += 2
        if e > 0:
            crossings.append(Crossing(y, x2, y2, x, 1))
        else:
            crossings.append(Crossing(x, y, x2, y2, -1))
        cur[i - 1], cur[i] = y2, x2
    close = {lab: lab for lab in range(1, nxt)}
    loops = []
    for p, lab in enumerate(cur, start=1):
        if lab == p:
            loops.append(p)
        else:
            close[lab] = p
    d = LinkDiagram(
        [Crossing(close[x.a], close[x.b], close[x.c], close[x.d], x.sign) for x in crossings],
        loops,
    )
    return renumber(d)


# ---------------------------------------------------------------------------
# analysis and surgery


def analyze(L: LinkDiagram) -> tuple:
    return L.components, L.writhe, L.linking_matrix


class _UF:
    def __init__(self):
        self.p = {}

    def find(self, x):
        p = self.p
        root = x
        while p.get(root, root) != root:
            root = p[root]
        while p.get(x, x) != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.p[rb] = ra


def _excise(L: LinkDiagram, drop: set, joins: list) -> LinkDiagram:
    """Remove crossings ``drop``; ``joins`` are edge pairs that become one edge."""
    uf = _UF()
    for u, v in joins:
        uf.union(u, v)
    kept = [x for i, x in enumerate(L.crossings) if i not in drop]
    f = uf.find
    new = [Crossing(f(x.a), f(x.b), f(x.c), f(x.d), x.sign) for x in kept]
    used = {lab for x in new for lab in x.edges}
    loops = set(L.loops)
    for i in drop:
        for lab in L.crossings[i].edges:
            r = f(lab)
            if r not in used:
                loops.add(r)
    return LinkDiagram(new, loops)


def sublink(L: LinkDiagram, S: Iterable[int]) -> LinkDiagram:
    """Keep only the components in ``S`` (0-based indices)."""
    S = set(S)
    if not S:
        raise EmptySubset("sublink needs at least one component")
    if not S <= set(range(L.n_components)):
        raise DiagramError("component index out of range: %s" % sorted(S))
    comp = L.component_of
    drop, joins = set(), []
    for i, x in enumerate(L.crossings):
        cu, co = comp[x.a], comp[x.b]
        if cu in S and co in S:
            continue
        drop.add(i)
        if cu in S:
            joins.append((x.a, x.c))
        if co in S:
            joins.append((x.b, x.d))
    # drop whole unwanted components, keep wanted loops
    removed = {lab for lab, c in comp.items() if c not in S}
    sub = _excise(L, drop, joins)
    return LinkDiagram(
        sub.crossings, [lab for lab in sub.loops if lab not in removed]
    )


def resolve(L: LinkDiagram, i: int, mode: str) -> LinkDiagram:
    """``mode='switch'`` exchanges over and under, ``'smooth'`` takes L0."""
    if not 0 <= i < L.n_crossings:
        raise UnknownCrossing("no crossing %r" % (i,))
    x = L.crossings[i]
    if mode == "switch":
        if x.sign > 0:
            new = Crossing(x.d, x.a, x.b, x.c, -1)
        else:
            new = Crossing(x.b, x.c, x.d, x.a, 1)
        cr = list(L.crossings)
        cr[i] = new
        return LinkDiagram(cr, L.loops)
    if mode == "smooth":
        if x.sign > 0:
            joins = [(x.a, x.b), (x.d, x.c)]
        else:
            joins = [(x.a, x.d), (x.b, x.c)]
        return _excise(L, {i}, joins)
    raise ValueError("mode must be 'switch' or 'smooth'")


def split(L: LinkDiagram) -> list:
    """Connected pieces of the diagram (a single-element list if connected)."""
    if not L.crossings:
        if len(L.loops) <= 1:
            return [L]
        return [LinkDiagram((), [lab]) for lab in L.loops]
    uf = _UF()
    for i, x in enumerate(L.crossings):
        for lab in x.edges:
            uf.union(("c", i), ("e", lab))
    groups = {}
    for i, x in enumerate(L.crossings):
        groups.setdefault(uf.find(("c", i)), []).append(x)
    pieces = [LinkDiagram(g) for g in groups.values()]
    pieces += [LinkDiagram((), [lab]) for lab in L.loops]
    if len(pieces) == 1:
        return [L]
    pieces.sort(key=lambda d: min(d.successor))
    return pieces


def disjoint_union(*diagrams: LinkDiagram) -> LinkDiagram:
    """Distant union; labels of later diagrams are shifted to stay distinct."""
    crossings, loops, offset = [], [], 0
    for D in diagrams:
        labs = D.edges()
        lo = min(labs) if labs else 0
        shift = offset - lo + 1
        crossings += [Crossing(x.a + shift, x.b + shift, x.c + shift, x.d + shift, x.sign) for x in D.crossings]
        loops += [lab + shift for lab in D.loops]
        if labs:
            offset = max(labs) + shift
    return LinkDiagram(crossings, loops)


def renumber(L: LinkDiagram) -> LinkDiagram:
    """Relabel edges 1, 2, ... consecutively along each oriented component."""
    mapping, n = {}, 0
    for cyc in L.components:
        for lab in cyc:
            n += 1
            mapping[lab] = n
    return L.relabel(mapping)


def mirror(L: LinkDiagram) -> LinkDiagram:
    """Switch every crossing."""
    D = L
    for i in range(L.n_crossings):
        D = resolve(D, i, "switch")
    return D


def simplify(L: LinkDiagram) -> LinkDiagram:
    """Remove first-Reidemeister kinks until none are left."""
    D = L
    while True:
        for i, x in enumerate(D.crossings):
            e = x.edges
            for p in range(4):
                if e[p] == e[(p + 1) % 4]:
                    u, v = e[(p + 2) % 4], e[(p + 3) % 4]
                    D = _excise(D, {i}, [(u, v), (e[p], u)])
                    break
            else:
                continue
            break
        else:
            return D


# ---------------------------------------------------------------------------
# canonical keys


def _piece_code(crossings: tuple) -> tuple:
    heads, tails = {}, {}
    for ci, x in enumerate(crossings):
        e = x.edges
        o = _OVER_IN_SLOT[x.sign]
        heads[e[0]] = ci
        heads[e[o]] = ci
        tails[e[2]] = e[0]
        tails[e[(o + 2) % 4]] = e[o]
    succ = {lab_in: lab_out for lab_out, lab_in in tails.items()}
    best = None
    for start in heads:
        new = {}
        queue = deque((start,))
        n = 0
        while queue:
            x = queue.popleft()
            if x in new:
                continue
            while x not in new:
                new[x] = n
                n += 1
                queue.extend(crossings[heads[x]][:4])
                x = succ[x]
        code = tuple(sorted((new[c.a], new[c.b], new[c.c], new[c.d], c.sign) for c in crossings))
        if best is None or code < best:
            best = code
    return best


def canonical_key(L: LinkDiagram) -> bytes:
    """Relabeling-invariant byte key of an oriented diagram."""
    codes = []
    for piece in split(L):
        if piece.crossings:
            codes.append(_piece_code(piece.crossings))
        else:
            codes.append(())
    codes.sort()
    return repr(codes).encode()
