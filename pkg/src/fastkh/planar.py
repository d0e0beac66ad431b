"""Planar diagram (PD) codes: parsing, orientation, scan orders and gluing.

Convention: ``X[a,b,c,d]`` lists the four edges counterclockwise starting
from the incoming under-strand, so the under-strand runs ``a -> c`` and the
over-strand joins ``b`` and ``d``.  The crossing is positive when the
over-strand runs ``d -> b``.  Closed components without crossings are written
``Loop[k]``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import permutations
from typing import Sequence

from .cobcat import GluingSpec, _block_start, _cyclic_block

__all__ = [
    "PDSyntaxError",
    "DiagramError",
    "PlanarityError",
    "Crossing",
    "Diagram",
    "ScanOrder",
    "Gluing",
    "parse_pd",
    "serialize",
    "order_crossings",
    "glue_data",
    "braid_closure",
    "torus_knot",
    "mirror",
]


class PDSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class DiagramError(ValueError):
    pass


class PlanarityError(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    edges: tuple[int, int, int, int]
    sign: int = 0

    @property
    def over_in(self) -> int:
        """Slot of the incoming over-strand edge."""
        return 3 if self.sign > 0 else 1


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[Crossing, ...]
    loops: tuple[int, ...] = ()
    components: int = 0

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def edge_count(self) -> int:
        return len({e for x in self.crossings for e in x.edges}) + len(self.loops)

    @property
    def n_plus(self) -> int:
        return sum(1 for x in self.crossings if x.sign > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for x in self.crossings if x.sign < 0)

    @property
    def signs(self) -> list[int]:
        return [x.sign for x in self.crossings]

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def __str__(self):
        return serialize(self)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z]+)|(?P<num>-?\d+)|(?P<sym>[\[\],]))")


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise PDSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def _parse_text(text: str) -> tuple[list[tuple[int, ...]], list[int]]:
    toks = _tokens(text)
    i = 0

    def expect(kind, value=None):
        nonlocal i
        k, v, p = toks[i]
        if k != kind or (value is not None and v != value):
            want = value or kind
            raise PDSyntaxError(f"expected {want!r}, found {v or k!r}", p)
        i += 1
        return v, p

    expect("name", "PD")
    expect("sym", "[")
    crossings, loops = [], []
    if toks[i][1] != "]":
        while True:
            name, p = expect("name")
            expect("sym", "[")
            args = []
            while True:
                v, q = expect("num")
                if int(v) <= 0:
                    raise PDSyntaxError("edge labels must be positive", q)
                args.append(int(v))
                if toks[i][1] == ",":
                    i += 1
                    continue
                break
            expect("sym", "]")
            if name == "X":
                if len(args) != 4:
                    raise PDSyntaxError(f"X needs 4 edges, got {len(args)}", p)
                crossings.append(tuple(args))
            elif name == "Loop":
                if len(args) != 1:
                    raise PDSyntaxError("Loop takes one label", p)
                loops.append(args[0])
            else:
                raise PDSyntaxError(f"unknown constructor {name!r}", p)
            if toks[i][1] == ",":
                i += 1
                continue
            break
    expect("sym", "]")
    expect("end")
    return crossings, loops


def _parse_json(text: str) -> tuple[list[tuple[int, ...]], list[int]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PDSyntaxError(exc.msg, exc.pos) from None
    if not isinstance(data, dict) or "crossings" not in data:
        raise PDSyntaxError('JSON input needs a "crossings" field', 0)
    crossings = []
    for k, x in enumerate(data["crossings"]):
        if len(x) != 4 or not all(isinstance(e, int) and e > 0 for e in x):
            raise PDSyntaxError(f"crossing {k} must be four positive integers", 0)
        crossings.append(tuple(x))
    loops = [int(e) for e in data.get("loops", [])]
    return crossings, loops


def parse_pd(text: str) -> Diagram:
    """Parse ``PD[X[..], ...]`` or ``{"crossings": [[..], ...]}`` into a Diagram."""
    stripped = text.strip()
    if stripped.startswith("{"):
        crossings, loops = _parse_json(stripped)
    else:
        crossings, loops = _parse_text(text)
    return build_diagram(crossings, loops)


def build_diagram(crossings: Sequence[Sequence[int]], loops: Sequence[int] = ()) -> Diagram:
    """Validate edge multiplicities, orient every component and sign crossings."""
    crossings = [tuple(x) for x in crossings]
    slots: dict[int, list[tuple[int, int]]] = {}
    for k, x in enumerate(crossings):
        for s, e in enumerate(x):
            slots.setdefault(e, []).append((k, s))
    for e in loops:
        if e in slots:
            raise DiagramError(f"loop label {e} is also a crossing edge")
    if len(set(loops)) != len(loops):
        raise DiagramError("repeated loop label")
    for e, where in slots.items():
        if len(where) != 2:
            raise DiagramError(f"edge {e} appears {len(where)} times (expected 2)")

    return _orient(crossings, slots, loops)


def _orient(crossings, slots, loops) -> Diagram:
    n = len(crossings)

    def other_end(k, s):
        a, b = slots[crossings[k][s]]
        return b if a == (k, s) else a

    # A component is a cyclic sequence of strand passages; each passage is
    # (crossing, strand in {0: under a-c, 1: over b-d}, forward?) where
    # forward means entering through slot strand and leaving through strand+2.
    visited: dict[tuple[int, int], tuple[int, bool]] = {}
    comps: list[list[tuple[int, int, bool]]] = []
    for k in range(n):
        for strand in (0, 1):
            if (k, strand) in visited:
                continue
            cid = len(comps)
            passages = []
            cur = (k, strand, True)
            while (cur[0], cur[1]) not in visited:
                visited[cur[0], cur[1]] = (cid, cur[2])
                passages.append(cur)
                ck, cs, fwd = cur
                exit_slot = cs + 2 if fwd else cs
                nk, ns = other_end(ck, exit_slot)
                cur = (nk, ns % 2, ns < 2)
            comps.append(passages)

    # orientation per component: under-passages must run a -> c
    flip = []
    for cid, passages in enumerate(comps):
        votes = {fwd for ck, cs, fwd in passages if cs == 0}
        if len(votes) > 1:
            raise DiagramError(f"inconsistent orientation on component {cid}")
        if votes:
            flip.append(not votes.pop())
        else:
            # over-only component: follow consecutive edge labels
            ck, cs, fwd = passages[0]
            b, d = crossings[ck][1], crossings[ck][3]
            d_to_b = b - d == 1 or d - b > 1
            flip.append(fwd != (not d_to_b))
    signs = []
    for k, x in enumerate(crossings):
        cid, fwd = visited[k, 1]
        forward = fwd != flip[cid]
        # forward over passage enters at b (slot 1), i.e. runs b -> d: negative
        signs.append(-1 if forward else 1)
    out = tuple(Crossing(tuple(x), s) for x, s in zip(crossings, signs))
    return Diagram(out, tuple(loops), len(comps) + len(loops))


def serialize(d: Diagram) -> str:
    parts = ["X[" + ",".join(str(e) for e in x.edges) + "]" for x in d.crossings]
    parts += [f"Loop[{e}]" for e in d.loops]
    return "PD[" + ", ".join(parts) + "]"


def to_json(d: Diagram) -> str:
    data = {"crossings": [list(x.edges) for x in d.crossings]}
    if d.loops:
        data["loops"] = list(d.loops)
    return json.dumps(data)


def mirror(d: Diagram) -> Diagram:
    """Switch every crossing: rotate each tuple so the old over-strand is under."""
    flipped = []
    for x in d.crossings:
        a, b, c, e = x.edges
        # the new under-strand is the old over-strand, entering at its incoming end
        flipped.append((e, a, b, c) if x.sign > 0 else (b, c, e, a))
    return build_diagram(flipped, d.loops)


# ---------------------------------------------------------------------------
# gluing one crossing onto a partial tangle


@dataclass(frozen=True)
class Gluing:
    """Attaching one crossing to a partial tangle with ordered boundary edges.

    ``spec`` numbers the old boundary ``0..b-1`` and the crossing slots
    ``b..b+3``; ``boundary`` lists the edge ids of the new boundary in order.
    """

    spec: GluingSpec
    boundary: tuple[int, ...]
    planar: bool


def glue_data(boundary: Sequence[int], crossing: Crossing | Sequence[int], strict: bool = True) -> Gluing:
    """Describe how ``crossing`` attaches to a tangle with ordered ``boundary``.

    Crossing slots whose edge is an open boundary edge are joined to it; two
    slots sharing an edge that is not open (a kink) are joined to each other.
    The free slots replace the joined boundary block, in counterclockwise
    order starting after the last joined slot.  With ``strict`` a gluing that
    cannot be drawn in the plane with this boundary order raises
    :class:`PlanarityError`.
    """
    edges = crossing.edges if isinstance(crossing, Crossing) else tuple(crossing)
    b = len(boundary)
    pos = {e: i for i, e in enumerate(boundary)}
    if len(pos) != b:
        raise DiagramError("repeated edge on the boundary")
    joins = []
    joined = set()
    for s, e in enumerate(edges):
        if e in pos:
            joins.append((pos[e], b + s))
            joined.add(s)
    for s in range(4):
        for t in range(s + 1, 4):
            if edges[s] == edges[t] and edges[s] not in pos:
                joins.append((b + s, b + t))
                joined.update((s, t))
    free = [s for s in range(4) if s not in joined]
    start = 0
    for s in sorted(joined):
        if (s + 1) % 4 not in joined:
            start = (s + 1) % 4
            break
    free.sort(key=lambda s: (s - start) % 4)

    outer = [(p, q) for p, q in joins if p < b]
    kinks = [(p, q) for p, q in joins if p >= b]
    planar = GluingSpec(b, 4, tuple(outer)).is_planar()
    planar = planar and all((q - p) % 4 in (1, 3) for p, q in kinks)
    old = sorted(p for p, _ in outer)
    if old and _cyclic_block(old, b):
        first = _block_start(old, b)
        last = (first + len(old) - 1) % b
        kept = [(last + 1 + k) % b for k in range(b - len(old))]
        new_boundary = kept + [b + s for s in free]
    else:
        planar = planar and not old
        new_boundary = [p for p in range(b) if p not in set(old)] + [b + s for s in free]
    if strict and not planar:
        raise PlanarityError(
            f"crossing {edges} cannot be glued planarly to boundary {tuple(boundary)}"
        )
    spec = GluingSpec(b, 4, tuple(joins), tuple(new_boundary))
    ids = [boundary[p] if p < b else edges[p - b] for p in new_boundary]
    return Gluing(spec, tuple(ids), planar)


# ---------------------------------------------------------------------------
# scan orders


@dataclass(frozen=True)
class ScanOrder:
    permutation: tuple[int, ...]
    width_profile: tuple[int, ...] = field(default=())

    @property
    def max_width(self) -> int:
        return max(self.width_profile, default=0)


def _widths(d: Diagram, perm: Sequence[int]) -> list[int]:
    open_edges: set[int] = set()
    out = []
    for k in perm:
        for e in d.crossings[k].edges:
            if e in open_edges:
                open_edges.remove(e)
            else:
                open_edges.add(e)
        out.append(len(open_edges))
    return out


def order_crossings(d: Diagram, strategy: str = "given") -> ScanOrder:
    """Choose the order in which crossings are scanned.

    ``given`` keeps the input order.  ``greedy`` repeatedly adds the crossing
    that leaves the fewest open edges, lowest index first on ties.  ``best``
    tries every order (small diagrams only).
    """
    n = d.n
    if strategy == "given":
        perm = list(range(n))
    elif strategy == "greedy":
        perm = []
        open_edges: set[int] = set()
        remaining = list(range(n))
        while remaining:
            k = min(
                remaining,
                key=lambda k: (len(open_edges ^ _edge_multiset(d.crossings[k])), k),
            )
            perm.append(k)
            remaining.remove(k)
            open_edges ^= _edge_multiset(d.crossings[k])
    elif strategy == "best":
        best_perm = None
        for perm in permutations(range(n)):
            w = max(_widths(d, perm), default=0)
            if best_perm is None or w < best_perm[0]:
                best_perm = (w, perm)
        perm = list(best_perm[1]) if best_perm else []
    else:
        raise ValueError(f"unknown ordering strategy {strategy!r}")
    return ScanOrder(tuple(perm), tuple(_widths(d, perm)))


def _edge_multiset(x: Crossing) -> set[int]:
    """Edges of a crossing left open by it alone (kink edges close up)."""
    out: set[int] = set()
    for e in x.edges:
        out ^= {e}
    return out


def scan_order(d: Diagram, permutation: Sequence[int]) -> ScanOrder:
    perm = tuple(permutation)
    if sorted(perm) != list(range(d.n)):
        raise ValueError("scan order must be a permutation of the crossings")
    return ScanOrder(perm, tuple(_widths(d, perm)))


# ---------------------------------------------------------------------------
# generators


def braid_tangle(word: Sequence[int], strands: int, first_label: int = 1):
    """Crossings of an open braid, strands oriented upward.

    Returns ``(crossings, bottom, top)`` where ``bottom``/``top`` list the
    edge labels at the ends of each strand, left to right.
    """
    label = first_label
    bottom = list(range(label, label + strands))
    label += strands
    current = list(bottom)
    crossings = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise ValueError(f"generator {g} out of range for {strands} strands")
        sw, se = current[i], current[i + 1]
        nw, ne = label, label + 1
        label += 2
        if g > 0:
            crossings.append((se, ne, nw, sw))
        else:
            crossings.append((sw, se, ne, nw))
        current[i], current[i + 1] = nw, ne
    return crossings, bottom, current


def braid_closure(word: Sequence[int], strands: int) -> Diagram:
    """Diagram of the closure of a braid word (``k`` for sigma_k, ``-k`` for its inverse)."""
    crossings, bottom, top = braid_tangle(word, strands)
    rename = {t: b for t, b in zip(top, bottom) if t != b}
    crossings = [tuple(rename.get(e, e) for e in x) for x in crossings]
    used = {e for x in crossings for e in x}
    loops = [b for b in bottom if b not in used]
    # relabel edges 1..n in order of first appearance for readability
    order: dict[int, int] = {}
    for x in crossings:
        for e in x:
            order.setdefault(e, len(order) + 1)
    for e in loops:
        order.setdefault(e, len(order) + 1)
    crossings = [tuple(order[e] for e in x) for x in crossings]
    return build_diagram(crossings, [order[e] for e in loops])


def torus_knot(p: int, q: int) -> Diagram:
    """Positive torus knot/link as the closure of ``(s_1 ... s_{m-1})^M``.

    ``m = min(p, q)`` strands and ``M = max(p, q)`` repetitions, giving
    ``(m - 1) M`` crossings (48 for T(8,7)).
    """
    m, big = sorted((p, q))
    return braid_closure(list(range(1, m)) * big, m)
