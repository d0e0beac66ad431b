"""Formal complexes over the dotted cobordism category and their simplification.

A :class:`FormalComplex` is a list of columns of shifted smoothings with sparse
morphism matrices between consecutive columns.  The heavy lifting (delooping
and Gaussian elimination) happens on a :class:`WorkComplex`, a mutable copy
indexed by object ids with adjacency maps in both directions, so that an
elimination only touches the rows and columns it changes.

Grading convention: a morphism ``C: S{a} -> T{b}`` has total degree
``deg(C) + b - a``; every differential entry has total degree 0.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .cobcat import (
    MATCHINGS,
    GluingSpec,
    Morphism,
    Smoothing,
    _arc_cycles,
    cap,
    compose,
    cup,
    degree,
    disjoint_spec,
    horizontal_compose,
    identity,
    intern_matching,
    is_unit,
    vertical_glue_ids,
)
from .laurent import LaurentPolynomial
from .rings import ZZ, Ring

__all__ = [
    "FormalComplex",
    "EntryAddress",
    "ValidationReport",
    "WorkComplex",
    "deloop",
    "gaussian_eliminate",
    "simplify",
    "tensor",
    "validate",
    "euler_characteristic",
    "relabel_boundary",
]


@dataclass(frozen=True)
class EntryAddress:
    """Differential entry from ``objects[height][column]`` to ``objects[height+1][row]``."""

    height: int
    row: int
    column: int


@dataclass
class FormalComplex:
    """Columns of shifted smoothings at consecutive heights ``start, start+1, ...``.

    ``differentials[k]`` maps column ``k`` to column ``k+1`` and is a sparse
    dict ``(row, column) -> Morphism`` (row indexes the target column).
    """

    start: int = 0
    columns: list[list[Smoothing]] = field(default_factory=list)
    differentials: list[dict[tuple[int, int], Morphism]] = field(default_factory=list)
    ring: Ring = ZZ

    def __post_init__(self):
        self.columns = [list(col) for col in self.columns]
        while len(self.differentials) < max(len(self.columns) - 1, 0):
            self.differentials.append({})

    @property
    def heights(self) -> range:
        return range(self.start, self.start + len(self.columns))

    def objects(self, r: int) -> list[Smoothing]:
        k = r - self.start
        return self.columns[k] if 0 <= k < len(self.columns) else []

    def differential(self, r: int) -> dict[tuple[int, int], Morphism]:
        k = r - self.start
        return self.differentials[k] if 0 <= k < len(self.differentials) else {}

    def entry(self, at: EntryAddress) -> Morphism:
        src = self.objects(at.height)[at.column]
        tgt = self.objects(at.height + 1)[at.row]
        return self.differential(at.height).get((at.row, at.column), Morphism(src, tgt))

    @property
    def object_count(self) -> int:
        return sum(len(col) for col in self.columns)

    @property
    def loop_count(self) -> int:
        return sum(s.loops for col in self.columns for s in col)

    def all_objects(self) -> list[tuple[int, Smoothing]]:
        return [(r, s) for r in self.heights for s in self.objects(r)]

    def object_multiset(self) -> list[tuple[int, Smoothing]]:
        return sorted(self.all_objects())

    def is_zero_differential(self) -> bool:
        return not any(self.differentials)

    def to_json(self) -> str:
        """Stable text dump used for debugging and golden files."""
        data = {
            "ring": self.ring.name,
            "start": self.start,
            "columns": [
                [
                    {"pairs": s.pairs, "loops": s.loops, "q": s.qshift}
                    for s in col
                ]
                for col in self.columns
            ],
            "differentials": [
                [
                    {"row": r, "col": c, "terms": [[m, str(v)] for m, v in mor.terms.items()]}
                    for (r, c), mor in sorted(d.items())
                ]
                for d in self.differentials
            ],
        }
        return json.dumps(data, sort_keys=True)

    def __str__(self):
        lines = []
        for r in self.heights:
            objs = ", ".join(str(s) for s in self.objects(r)) or "0"
            lines.append(f"[{r}] {objs}")
            for (row, col), m in sorted(self.differential(r).items()):
                lines.append(f"    d[{r}]({row},{col}) = {m}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# the mutable engine


class WorkComplex:
    """Mutable complex: objects by id, adjacency ``out[i][j]`` / ``inn[j][i]``.

    Entries are plain dicts ``dots -> coefficient`` shared between ``out`` and
    ``inn``.  Smoothings are stored as interned matching ids plus loop counts.
    """

    def __init__(self, ring: Ring = ZZ):
        self.ring = ring
        self.height: dict[int, int] = {}
        self.mid: dict[int, int] = {}
        self.loops: dict[int, int] = {}
        self.q: dict[int, int] = {}
        self.out: dict[int, dict[int, dict]] = {}
        self.inn: dict[int, dict[int, dict]] = {}
        self.next_id = 0
        self.eliminations = 0
        self.on_step: Callable[["WorkComplex", str], None] | None = None

    def __len__(self):
        return len(self.height)

    def add_object(self, height: int, mid: int, loops: int, q: int) -> int:
        oid = self.next_id
        self.next_id += 1
        self.height[oid] = height
        self.mid[oid] = mid
        self.loops[oid] = loops
        self.q[oid] = q
        self.out[oid] = {}
        self.inn[oid] = {}
        return oid

    def add_to_entry(self, src: int, tgt: int, terms: dict) -> None:
        row = self.out[src]
        acc = row.get(tgt)
        if acc is None:
            acc = {}
            row[tgt] = acc
            self.inn[tgt][src] = acc
        coerce = None if self.ring is ZZ else self.ring.coerce
        for m, c in terms.items():
            v = acc.get(m, 0) + c
            if coerce is not None:
                v = coerce(v)
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
        if not acc:
            del row[tgt]
            del self.inn[tgt][src]

    def remove_object(self, oid: int) -> None:
        for tgt in self.out.pop(oid):
            del self.inn[tgt][oid]
        for src in self.inn.pop(oid):
            del self.out[src][oid]
        del self.height[oid], self.mid[oid], self.loops[oid], self.q[oid]

    def smoothing(self, oid: int) -> Smoothing:
        return Smoothing(MATCHINGS[self.mid[oid]], self.loops[oid], self.q[oid])

    # -- conversion ----------------------------------------------------------

    @classmethod
    def from_formal(cls, c: FormalComplex) -> tuple["WorkComplex", dict]:
        work = cls(c.ring)
        ids = {}
        for r in c.heights:
            for k, s in enumerate(c.objects(r)):
                ids[r, k] = work.add_object(r, intern_matching(s.matching), s.loops, s.qshift)
        for r in c.heights:
            for (row, col), m in c.differential(r).items():
                if m.terms:
                    work.add_to_entry(ids[r, col], ids[r + 1, row], m.terms)
        return work, ids

    def to_formal(self) -> FormalComplex:
        order = sorted(self.height, key=lambda o: (self.height[o], o))
        if not order:
            return FormalComplex(0, [], [], self.ring)
        lo = self.height[order[0]]
        hi = self.height[order[-1]]
        columns: list[list[Smoothing]] = [[] for _ in range(hi - lo + 1)]
        index = {}
        for o in order:
            col = columns[self.height[o] - lo]
            index[o] = len(col)
            col.append(self.smoothing(o))
        diffs: list[dict] = [{} for _ in range(hi - lo)]
        for o in order:
            src = self.smoothing(o)
            for t, terms in self.out[o].items():
                diffs[self.height[o] - lo][index[t], index[o]] = Morphism(
                    src, self.smoothing(t), terms
                )
        return FormalComplex(lo, columns, diffs, self.ring)

    # -- delooping -------------------------------------------------------------

    def deloop_object(self, oid: int) -> tuple[int, int]:
        """Replace the last loop of ``oid`` by two loop-free-er copies.

        Entries are composed with the delooping isomorphisms by filtering on
        the dot of the loop's disk: into ``S{+1}`` via the dotted cap (loop
        must be plain), into ``S{-1}`` via the plain cap (loop must be dotted),
        out of ``S{+1}`` via the plain cup (loop must be dotted) and out of
        ``S{-1}`` via the dotted cup (loop must be plain).
        """
        L = self.loops[oid]
        if L < 1:
            raise ValueError(f"object {oid} has no loop")
        h, mid, q = self.height[oid], self.mid[oid], self.q[oid]
        plus = self.add_object(h, mid, L - 1, q + 1)
        minus = self.add_object(h, mid, L - 1, q - 1)
        me = MATCHINGS[mid]
        for src, terms in list(self.inn[oid].items()):
            ms = MATCHINGS[self.mid[src]]
            # cycles of (src, S): arcs, src loops, S loops; ours is the last one
            bit = len(_arc_cycles(ms, me)[0]) + self.loops[src] + L - 1
            low = (1 << bit) - 1
            to_plus = {m: c for m, c in terms.items() if not m >> bit & 1}
            to_minus = {m & low: c for m, c in terms.items() if m >> bit & 1}
            if to_plus:
                self.add_to_entry(src, plus, to_plus)
            if to_minus:
                self.add_to_entry(src, minus, to_minus)
        for tgt, terms in list(self.out[oid].items()):
            mt = MATCHINGS[self.mid[tgt]]
            bit = len(_arc_cycles(me, mt)[0]) + L - 1
            low = (1 << bit) - 1
            from_plus = {}
            from_minus = {}
            for m, c in terms.items():
                squeezed = (m & low) | (m >> (bit + 1) << bit)
                if m >> bit & 1:
                    from_plus[squeezed] = c
                else:
                    from_minus[squeezed] = c
            if from_plus:
                self.add_to_entry(plus, tgt, from_plus)
            if from_minus:
                self.add_to_entry(minus, tgt, from_minus)
        self.remove_object(oid)
        return plus, minus

    def deloop_all(self) -> int:
        count = 0
        pending = sorted(o for o, L in self.loops.items() if L)
        while pending:
            nxt = []
            for o in pending:
                for new in self.deloop_object(o):
                    count += 1
                    if self.loops[new]:
                        nxt.append(new)
                if self.on_step:
                    self.on_step(self, "deloop")
            pending = nxt
        return count

    # -- Gaussian elimination --------------------------------------------------

    def unit_target(self, oid: int):
        """First target ``t`` whose entry ``oid -> t`` is a unit times identity."""
        mid = self.mid[oid]
        if self.loops[oid]:
            return None
        is_unit_c = self.ring.is_unit
        for t, terms in self.out[oid].items():
            if len(terms) == 1 and self.mid[t] == mid and not self.loops[t]:
                c = terms.get(0)
                if c is not None and is_unit_c(c):
                    return t
        return None

    def eliminate(self, b1: int, b2: int) -> list[int]:
        """Cancel the unit entry ``b1 -> b2``; returns the sources whose rows changed."""
        out, inn, mids, loops = self.out, self.inn, self.mid, self.loops
        phi = out[b1][b2]
        if len(phi) != 1 or 0 not in phi or mids[b1] != mids[b2] or loops[b1] or loops[b2]:
            raise ValueError("entry is not a multiple of the identity")
        ring = self.ring
        if not ring.is_unit(phi[0]):
            raise ValueError(f"entry coefficient {phi[0]} is not a unit")
        factor = -ring.inverse(phi[0])
        gammas = [(e, g) for e, g in out[b1].items() if e != b2]
        deltas = [(d, g) for d, g in inn[b2].items() if d != b1]
        mb = mids[b1]
        self.remove_object(b1)
        self.remove_object(b2)
        coerce = None if ring is ZZ else ring.coerce
        touched = []
        for d, delta in deltas:
            md, ld = mids[d], loops[d]
            row = out[d]
            touched.append(d)
            for e, gamma in gammas:
                glue, shift = vertical_glue_ids(md, ld, mb, 0, mids[e], loops[e])
                acc = row.get(e)
                fresh = acc is None
                if fresh:
                    acc = {}
                evaluate = glue.evaluate
                for fm, fc in delta.items():
                    for gm, gc in gamma.items():
                        k = fc * gc * factor
                        for m, c in evaluate(fm | gm << shift).items():
                            acc[m] = acc.get(m, 0) + c * k
                if coerce is not None:
                    for m in list(acc):
                        acc[m] = coerce(acc[m])
                for m in [m for m, c in acc.items() if not c]:
                    del acc[m]
                if acc:
                    if fresh:
                        row[e] = acc
                        inn[e][d] = acc
                elif not fresh:
                    del row[e]
                    del inn[e][d]
        self.eliminations += 1
        if self.on_step:
            self.on_step(self, "eliminate")
        return touched

    def eliminate_units(self) -> int:
        """Cancel unit entries until none is left.

        Candidates are visited lowest height first, then by object id; a
        source whose row changed is revisited.
        """
        heap = [(h, o) for o, h in self.height.items()]
        heapq.heapify(heap)
        done = 0
        height = self.height
        while heap:
            h, o = heapq.heappop(heap)
            if o not in height:
                continue
            t = self.unit_target(o)
            if t is None:
                continue
            for d in self.eliminate(o, t):
                heapq.heappush(heap, (height[d], d))
            done += 1
        return done

    def simplify(self) -> None:
        while True:
            self.deloop_all()
            self.eliminate_units()
            if not any(self.loops.values()):
                return

    # -- invariants ------------------------------------------------------------

    def euler_characteristic(self) -> LaurentPolynomial:
        total = LaurentPolynomial()
        for o, h in self.height.items():
            term = LaurentPolynomial.monomial(self.q[o], -1 if h % 2 else 1)
            if self.loops[o]:
                term = term * LaurentPolynomial.q_plus_q_inverse(self.loops[o])
            total = total + term
        return total


# ---------------------------------------------------------------------------
# public operations on FormalComplex


def _locate(c: FormalComplex, height: int, index: int) -> Smoothing:
    objs = c.objects(height)
    if not 0 <= index < len(objs):
        raise IndexError(f"no object {index} at height {height}")
    return objs[index]


def deloop(c: FormalComplex, height: int, index: int) -> FormalComplex:
    """Deloop one loop of the object ``objects[height][index]``.

    The object ``S = S' ⊔ O`` becomes ``S'{+1} ⊕ S'{-1}`` (in that order, in
    place), and incident entries are composed with the explicit maps
    ``id ⊔ dotted cap``, ``id ⊔ cap`` (out of ``S``) and ``id ⊔ cup``,
    ``id ⊔ dotted cup`` (into ``S``).
    """
    s = _locate(c, height, index)
    if s.loops < 1:
        raise ValueError(f"object {s} at height {height} has no loop")
    ring = c.ring
    rest = Smoothing(s.matching, s.loops - 1)
    spec = disjoint_spec(s.boundary_size, 0)
    ident = identity(rest)
    proj_plus = horizontal_compose(spec, ident, cap(dotted=True), ring)
    proj_minus = horizontal_compose(spec, ident, cap(dotted=False), ring)
    inc_plus = horizontal_compose(spec, ident, cup(dotted=False), ring)
    inc_minus = horizontal_compose(spec, ident, cup(dotted=True), ring)

    columns = [list(col) for col in c.columns]
    k = height - c.start
    columns[k][index : index + 1] = [rest.shifted(s.qshift + 1), rest.shifted(s.qshift - 1)]

    def move(i):  # index in the old column -> indices in the new one
        return i if i < index else i + 1

    diffs = []
    for r in c.heights[:-1]:
        new = {}
        for (row, col), m in c.differential(r).items():
            if r == height and col == index:
                for j, inc in ((index, inc_plus), (index + 1, inc_minus)):
                    e = compose(m, inc, ring)
                    if e:
                        new[row, j] = e
            elif r + 1 == height and row == index:
                for j, proj in ((index, proj_plus), (index + 1, proj_minus)):
                    e = compose(proj, m, ring)
                    if e:
                        new[j, col] = e
            else:
                rr = move(row) if r + 1 == height else row
                cc = move(col) if r == height else col
                new[rr, cc] = m
        diffs.append(new)
    return FormalComplex(c.start, columns, diffs, ring)


def gaussian_eliminate(c: FormalComplex, at: EntryAddress) -> FormalComplex:
    """Cancel the unit entry at ``at`` (Gaussian elimination)."""
    if is_unit(c.entry(at), c.ring) is None:
        raise ValueError(f"entry at {at} is not a detected unit: {c.entry(at)}")
    work, ids = WorkComplex.from_formal(c)
    work.eliminate(ids[at.height, at.column], ids[at.height + 1, at.row])
    return _compact(work.to_formal(), c.start)


def _compact(c: FormalComplex, start: int) -> FormalComplex:
    """Keep the original height range when columns empty out at the ends."""
    if not c.columns:
        return c
    lead = c.start - start
    if lead > 0:
        c.columns[:0] = [[] for _ in range(lead)]
        c.differentials[:0] = [{} for _ in range(lead)]
        c.start = start
    return c


def simplify(c: FormalComplex, on_step=None) -> FormalComplex:
    """Deloop every loop and cancel unit entries until neither applies."""
    work, _ = WorkComplex.from_formal(c)
    work.on_step = on_step
    work.simplify()
    return work.to_formal()


def _double_complex_objects(spec, a: FormalComplex, b: FormalComplex):
    cells = {}
    for ra in a.heights:
        for i, sa in enumerate(a.objects(ra)):
            for rb in b.heights:
                for j, sb in enumerate(b.objects(rb)):
                    cells[ra, i, rb, j] = horizontal_compose(spec, sa, sb)
    return cells


def tensor(spec: GluingSpec, a: FormalComplex, b: FormalComplex) -> FormalComplex:
    """Planar tensor product of two complexes, flattened along anti-diagonals.

    The differential of ``b`` acting from bidegree ``(i, j)`` carries the sign
    ``(-1)^i``.  No delooping is performed.
    """
    if a.ring != b.ring:
        raise ValueError("complexes over different rings")
    ring = a.ring
    cells = _double_complex_objects(spec, a, b)
    if not cells:
        return FormalComplex(0, [], [], ring)
    keys = sorted(cells)
    lo = min(ra + rb for ra, _, rb, _ in keys)
    hi = max(ra + rb for ra, _, rb, _ in keys)
    columns = [[] for _ in range(hi - lo + 1)]
    where = {}
    for key in keys:
        ra, _, rb, _ = key
        col = columns[ra + rb - lo]
        where[key] = len(col)
        col.append(cells[key])
    diffs = [{} for _ in range(hi - lo)]

    def put(src_key, tgt_key, m):
        if not m:
            return
        r = src_key[0] + src_key[2] - lo
        slot = (where[tgt_key], where[src_key])
        d = diffs[r]
        d[slot] = d[slot].add(m, ring) if slot in d else m

    ids_b = {}
    for rb in b.heights:
        for j, sb in enumerate(b.objects(rb)):
            ids_b[rb, j] = identity(sb.shape)
    ids_a = {}
    for ra in a.heights:
        for i, sa in enumerate(a.objects(ra)):
            ids_a[ra, i] = identity(sa.shape)
    for ra in a.heights:
        for (row, col), m in a.differential(ra).items():
            for rb in b.heights:
                for j in range(len(b.objects(rb))):
                    e = horizontal_compose(spec, m, ids_b[rb, j], ring)
                    put((ra, col, rb, j), (ra + 1, row, rb, j), e)
    for rb in b.heights:
        for (row, col), m in b.differential(rb).items():
            for ra in a.heights:
                sign = -1 if ra % 2 else 1
                for i in range(len(a.objects(ra))):
                    e = horizontal_compose(spec, ids_a[ra, i], m, ring).scale(sign, ring)
                    put((ra, i, rb, col), (ra, i, rb + 1, row), e)
    for d in diffs:
        for slot in [s for s, m in d.items() if not m]:
            del d[slot]
    return FormalComplex(lo, columns, diffs, ring)


@dataclass
class ValidationReport:
    ok: bool
    message: str = "ok"

    def __bool__(self):
        return self.ok


def validate(c: FormalComplex) -> ValidationReport:
    """Check matrix conformity, degree homogeneity and ``d o d = 0``."""
    ring = c.ring
    for r in c.heights[:-1]:
        src_col, tgt_col = c.objects(r), c.objects(r + 1)
        for (row, col), m in c.differential(r).items():
            if not (0 <= row < len(tgt_col) and 0 <= col < len(src_col)):
                return ValidationReport(False, f"entry ({row},{col}) at height {r} out of range")
            s, t = src_col[col], tgt_col[row]
            if m.source != s.shape or m.target != t.shape:
                return ValidationReport(False, f"entry ({row},{col}) at height {r} has wrong source/target")
            for cob, _ in m.cobordisms():
                total = degree(cob) + t.qshift - s.qshift
                if total:
                    return ValidationReport(
                        False,
                        f"entry ({row},{col}) at height {r} has degree {total}: {cob}",
                    )
    for r in c.heights[:-2]:
        d1, d2 = c.differential(r), c.differential(r + 1)
        by_src: dict[int, list] = {}
        for (row, mid), m2 in d2.items():
            by_src.setdefault(mid, []).append((row, m2))
        acc: dict[tuple[int, int], Morphism] = {}
        for (mid, col), m1 in d1.items():
            for row, m2 in by_src.get(mid, ()):
                prod = compose(m2, m1, ring)
                key = (row, col)
                acc[key] = acc[key].add(prod, ring) if key in acc else prod
        for (row, col), m in sorted(acc.items()):
            if m:
                return ValidationReport(
                    False, f"d∘d != 0 at height {r}, entry ({row},{col}): {m}"
                )
    return ValidationReport(True)


def euler_characteristic(c: FormalComplex) -> LaurentPolynomial:
    """Graded Euler characteristic from object shifts and loop counts."""
    total = LaurentPolynomial()
    for r in c.heights:
        for s in c.objects(r):
            term = LaurentPolynomial.monomial(s.qshift, -1 if r % 2 else 1)
            if s.loops:
                term = term * LaurentPolynomial.q_plus_q_inverse(s.loops)
            total = total + term
    return total


def relabel_boundary(c: FormalComplex, perm: Iterable[int]) -> FormalComplex:
    """Renumber boundary points: old point ``p`` becomes ``perm[p]``."""
    perm = list(perm)

    def move(s: Smoothing) -> Smoothing:
        new = [0] * len(perm)
        for p, q in enumerate(s.matching):
            new[perm[p]] = perm[q]
        return Smoothing(tuple(new), s.loops, s.qshift)

    def move_morphism(m: Morphism) -> Morphism:
        old_cycles, _ = _arc_cycles(m.source.matching, m.target.matching)
        src, tgt = move(m.source), move(m.target)
        new_cycles, owner = _arc_cycles(src.matching, tgt.matching)
        n = len(old_cycles)
        where = [owner[perm[cyc[0]]] for cyc in old_cycles]
        terms = {}
        for mask, coeff in m.terms.items():
            new_mask = mask >> n << n
            for i in range(n):
                if mask >> i & 1:
                    new_mask |= 1 << where[i]
            terms[new_mask] = coeff
        return Morphism(src, tgt, terms)

    columns = [[move(s) for s in col] for col in c.columns]
    diffs = [{k: move_morphism(m) for k, m in d.items()} for d in c.differentials]
    return FormalComplex(c.start, columns, diffs, c.ring)
