"""Dotted cobordisms between tangle smoothings, modulo the local relations.

Boundary points of a tangle are numbered ``0 .. b-1``.  A smoothing is a
crossingless matching of those points plus a number of closed loops.  Loops
are anonymous as far as the object is concerned, but morphisms refer to them
positionally (loop ``i`` of the source, loop ``j`` of the target).

Normal form
-----------
For smoothings ``s`` and ``t`` the *cycles* of the pair are the closed curves
made of ``s``-arcs, ``t``-arcs and the vertical lines ``I x {p}`` (one cycle per
orbit of ``t.matching o s.matching``), followed by one degenerate cycle per loop
of ``s`` and then per loop of ``t``.  Neck cutting makes the dotted disks
bounded by these cycles span ``Hom(s, t)``, and they are linearly independent,
so a morphism is stored as a map ``dots -> coefficient`` where ``dots`` is a
bitmask over the cycles (bit ``i`` set means the disk on cycle ``i`` carries a
dot).

Composition glues the disks of two normal forms into surfaces, computes the
genus of every connected component from its Euler characteristic, and expands
each component through the Frobenius algebra ``Z[X]/(X^2)``: a component of
genus ``g`` carrying ``d`` dots is ``2^g X^(d+g)`` pushed through the iterated
coproduct, which is zero for ``d + g >= 2``, ``2^g`` times the all-dotted
pattern for ``d + g == 1``, and the sum of the patterns with exactly one
undotted cycle for ``d + g == 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .rings import ZZ, Ring

__all__ = [
    "Smoothing",
    "CanonicalCobordism",
    "Morphism",
    "RawComponent",
    "GluingSpec",
    "cycles_of",
    "reduce",
    "compose",
    "degree",
    "is_unit",
    "horizontal_compose",
    "identity",
    "cap",
    "cup",
    "saddle",
    "is_planar_matching",
]


def _check_matching(matching: Sequence[int]) -> None:
    n = len(matching)
    for i, j in enumerate(matching):
        if not 0 <= j < n or j == i or matching[j] != i:
            raise ValueError(f"not a fixed-point-free involution: {tuple(matching)}")


def matching_from_pairs(pairs: Iterable[tuple[int, int]], size: int) -> tuple[int, ...]:
    m = [-1] * size
    for i, j in pairs:
        m[i] = j
        m[j] = i
    if -1 in m:
        raise ValueError(f"pairs {list(pairs)} do not cover {size} points")
    return tuple(m)


def is_planar_matching(matching: Sequence[int]) -> bool:
    """True when no two arcs interleave in the cyclic order of the points."""
    for i, j in enumerate(matching):
        if i < j:
            for k in range(i + 1, j):
                if not i < matching[k] < j:
                    return False
    return True


@dataclass(frozen=True, order=True)
class Smoothing:
    """A crossingless tangle: a matching, closed loops and a formal q-shift."""

    matching: tuple[int, ...] = ()
    loops: int = 0
    qshift: int = 0

    def __post_init__(self):
        object.__setattr__(self, "matching", tuple(self.matching))
        _check_matching(self.matching)
        if self.loops < 0:
            raise ValueError("negative loop count")

    @classmethod
    def from_pairs(cls, pairs, size=None, loops=0, qshift=0) -> "Smoothing":
        pairs = list(pairs)
        size = 2 * len(pairs) if size is None else size
        return cls(matching_from_pairs(pairs, size), loops, qshift)

    @property
    def boundary_size(self) -> int:
        return len(self.matching)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.matching) if i < j]

    @property
    def shape(self) -> "Smoothing":
        return self if self.qshift == 0 else Smoothing(self.matching, self.loops)

    def shifted(self, q: int) -> "Smoothing":
        return Smoothing(self.matching, self.loops, self.qshift + q)

    def is_planar(self) -> bool:
        return is_planar_matching(self.matching)

    def __str__(self):
        arcs = "".join(f"({i} {j})" for i, j in self.pairs) or "()"
        loops = f"+O{self.loops}" if self.loops else ""
        shift = f"{{{self.qshift}}}" if self.qshift else ""
        return f"{arcs}{loops}{shift}"


EMPTY = Smoothing()


# ---------------------------------------------------------------------------
# cycles


def _arc_cycles(s: tuple[int, ...], t: tuple[int, ...]) -> tuple[list[tuple[int, ...]], list[int]]:
    """Orbits of ``t o s`` on boundary points, ordered by their least point.

    Returns the cycles (sorted point tuples) and the cycle index of each point.
    """
    n = len(s)
    owner = [-1] * n
    cycles = []
    for start in range(n):
        if owner[start] >= 0:
            continue
        k = len(cycles)
        pts = []
        p = start
        while owner[p] < 0:
            owner[p] = k
            q = s[p]
            owner[q] = k
            pts.append(p)
            pts.append(q)
            p = t[q]
        cycles.append(tuple(sorted(pts)))
    return cycles, owner


def cycles_of(s: Smoothing, t: Smoothing) -> list[tuple[int, ...]]:
    """Boundary cycles of cobordisms ``s -> t``; loops give empty tuples."""
    if s.boundary_size != t.boundary_size:
        raise ValueError(
            f"boundary mismatch: {s.boundary_size} vs {t.boundary_size}"
        )
    cycles, _ = _arc_cycles(s.matching, t.matching)
    return cycles + [()] * (s.loops + t.loops)


@lru_cache(maxsize=None)
def _cycle_count(s: tuple[int, ...], t: tuple[int, ...]) -> int:
    return len(_arc_cycles(s, t)[0])


# ---------------------------------------------------------------------------
# surface evaluation


class _Glue:
    """Connected components of a glued collection of dotted disks.

    ``comps`` holds, per component, ``(node_mask, genus, new_bits)`` where
    ``node_mask`` selects the input disks and ``new_bits`` lists the bits of
    the output cycles bounding the component.
    """

    __slots__ = ("comps", "_memo")

    def __init__(self, comps):
        self.comps = comps
        self._memo = {}

    def evaluate(self, mask: int) -> dict[int, int]:
        """Normal form of the glued surface whose disks carry dots ``mask``."""
        hit = self._memo.get(mask)
        if hit is not None:
            return hit
        fixed = 0
        coeff = 1
        choices = []
        zero = False
        for node_mask, genus, bits in self.comps:
            d = (mask & node_mask).bit_count() + genus
            if d >= 2:
                zero = True
                break
            if d == 1:
                coeff <<= genus
                for b in bits:
                    fixed |= b
            else:
                if not bits:
                    zero = True
                    break
                if len(bits) == 1:
                    continue
                full = 0
                for b in bits:
                    full |= b
                choices.append([full ^ b for b in bits])
        if zero:
            out = {}
        elif not choices:
            out = {fixed: coeff}
        else:
            out = {}
            for combo in product(*choices):
                m = fixed
                for c in combo:
                    m |= c
                out[m] = out.get(m, 0) + coeff
        self._memo[mask] = out
        return out


class _UF:
    __slots__ = ("parent",)

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _components(n_nodes, uf, edge_reps, new_reps):
    """Group nodes by ``uf`` and compute (node_mask, genus, new_bits) per group.

    ``edge_reps`` lists one node per gluing interval (Euler characteristic -1
    each); circle gluings contribute 0 and are passed only through ``uf``.
    ``new_reps`` gives, for each output cycle, a node of its component.
    """
    roots = {}
    order = []
    for v in range(n_nodes):
        r = uf.find(v)
        if r not in roots:
            roots[r] = [0, 0, 0, []]
            order.append(r)
        rec = roots[r]
        rec[0] |= 1 << v
        rec[1] += 1
    for v in edge_reps:
        roots[uf.find(v)][2] += 1
    for i, v in enumerate(new_reps):
        roots[uf.find(v)][3].append(1 << i)
    comps = []
    for r in order:
        node_mask, n_v, n_e, bits = roots[r]
        twice_genus = 2 - (n_v - n_e) - len(bits)
        if twice_genus < 0 or twice_genus % 2:
            raise AssertionError("inconsistent surface gluing")
        comps.append((node_mask, twice_genus // 2, tuple(bits)))
    return comps


@lru_cache(maxsize=200_000)
def _vertical_glue(s, s_loops, t, t_loops, u, u_loops) -> _Glue:
    """Gluing data for composing ``f: s -> t`` with ``g: t -> u``.

    Nodes are the cycles of ``(s, t)`` followed by those of ``(t, u)``.
    """
    f_arcs, f_owner = _arc_cycles(s, t)
    g_arcs, g_owner = _arc_cycles(t, u)
    n_fa, n_ga = len(f_arcs), len(g_arcs)
    n_f = n_fa + s_loops + t_loops
    n_g = n_ga + t_loops + u_loops
    uf = _UF(n_f + n_g)
    edge_reps = []
    for p in range(len(t)):
        if p < t[p]:
            uf.union(f_owner[p], n_f + g_owner[p])
            edge_reps.append(f_owner[p])
    for j in range(t_loops):
        uf.union(n_fa + s_loops + j, n_f + n_ga + j)
    new_arcs, _ = _arc_cycles(s, u)
    new_reps = [f_owner[c[0]] for c in new_arcs]
    new_reps += [n_fa + i for i in range(s_loops)]
    new_reps += [n_f + n_ga + t_loops + j for j in range(u_loops)]
    return _Glue(_components(n_f + n_g, uf, edge_reps, new_reps))


# ---------------------------------------------------------------------------
# canonical cobordisms and morphisms


@dataclass(frozen=True, order=True)
class CanonicalCobordism:
    """A normal-form cobordism: one dotted or plain disk per boundary cycle."""

    source: Smoothing
    target: Smoothing
    dots: int = 0

    @property
    def cycles(self) -> list[tuple[int, ...]]:
        return cycles_of(self.source, self.target)

    @property
    def partition(self) -> list[list[int]]:
        # Fully neck-cut: every component is a disk on a single cycle.
        return [[i] for i in range(len(self.cycles))]

    @property
    def degree(self) -> int:
        return degree(self)

    def __str__(self):
        marks = "".join(
            "*" if self.dots >> i & 1 else "-" for i in range(len(self.cycles))
        )
        return f"<{self.source.shape} -> {self.target.shape} | {marks}>"


def _n_cycles(s: Smoothing, t: Smoothing) -> int:
    return _cycle_count(s.matching, t.matching) + s.loops + t.loops


def degree(c: CanonicalCobordism) -> int:
    """q-degree: Euler characteristic minus twice the dots minus half the boundary."""
    return (
        _n_cycles(c.source, c.target)
        - 2 * c.dots.bit_count()
        - c.source.boundary_size // 2
    )


class Morphism:
    """An integer (or ring) linear combination of canonical cobordisms ``s -> t``."""

    __slots__ = ("source", "target", "terms")

    def __init__(self, source: Smoothing, target: Smoothing, terms=None):
        if source.boundary_size != target.boundary_size:
            raise ValueError("source and target have different boundaries")
        self.source = source.shape
        self.target = target.shape
        terms = {m: c for m, c in (terms or {}).items() if c}
        self.terms = dict(sorted(terms.items()))

    @classmethod
    def zero(cls, source, target) -> "Morphism":
        return cls(source, target)

    @classmethod
    def basis(cls, source, target, dots=0, coeff=1) -> "Morphism":
        return cls(source, target, {dots: coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.source, self.target, tuple(self.terms.items())))

    def __repr__(self):
        return f"Morphism({self.source}, {self.target}, {self.terms})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms.items():
            parts.append(f"{c}*{CanonicalCobordism(self.source, self.target, m)}")
        return " + ".join(parts)

    def cobordisms(self) -> list[tuple[CanonicalCobordism, int]]:
        return [
            (CanonicalCobordism(self.source, self.target, m), c)
            for m, c in self.terms.items()
        ]

    def degrees(self) -> set[int]:
        return {degree(c) for c, _ in self.cobordisms()}

    def scale(self, k, ring: Ring = ZZ) -> "Morphism":
        return Morphism(
            self.source,
            self.target,
            {m: ring.coerce(c * k) for m, c in self.terms.items()},
        )

    def add(self, other: "Morphism", ring: Ring = ZZ) -> "Morphism":
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("adding morphisms with different source/target")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = ring.coerce(terms.get(m, 0) + c)
        return Morphism(self.source, self.target, terms)

    def __add__(self, other):
        return self.add(other)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self.add(other.scale(-1))


@dataclass(frozen=True)
class RawComponent:
    """A connected surface before reduction: its boundary cycles, genus and dots."""

    cycles: tuple[int, ...]
    genus: int = 0
    dots: int = 0


def reduce(
    source: Smoothing,
    target: Smoothing,
    components: Sequence[RawComponent],
    scalar=1,
    ring: Ring = ZZ,
) -> Morphism:
    """Bring a surface given by its components into normal form.

    ``components`` must partition the cycle indices of ``cycles_of(source,
    target)``; a component with no cycles is closed and evaluates to a scalar.
    """
    n = len(cycles_of(source, target))
    seen = sorted(i for comp in components for i in comp.cycles)
    if seen != list(range(n)):
        raise ValueError("components do not partition the cycles")
    comps = []
    for k, comp in enumerate(components):
        bits = tuple(1 << i for i in comp.cycles)
        comps.append((1 << k, comp.genus, bits))
    mask = 0
    for k, comp in enumerate(components):
        if comp.dots >= 2:
            return Morphism(source, target)
        mask |= comp.dots << k
    # A component with d dots is modelled as d dotted unit disks of one node;
    # dots beyond the first are zero anyway, so a single bit suffices.
    terms = _Glue(comps).evaluate(mask)
    return Morphism(
        source, target, {m: ring.coerce(c * scalar) for m, c in terms.items()}
    )


def compose(g: Morphism, f: Morphism, ring: Ring = ZZ) -> Morphism:
    """The composite ``g o f`` (first ``f``, then ``g``)."""
    if f.target != g.source:
        raise ValueError(f"cannot compose: {f.target} != {g.source}")
    s, t, u = f.source, f.target, g.target
    glue = _vertical_glue(s.matching, s.loops, t.matching, t.loops, u.matching, u.loops)
    shift = _n_cycles(s, t)
    out: dict[int, int] = {}
    for fm, fc in f.terms.items():
        for gm, gc in g.terms.items():
            for m, c in glue.evaluate(fm | gm << shift).items():
                out[m] = out.get(m, 0) + c * fc * gc
    return Morphism(s, u, {m: ring.coerce(c) for m, c in out.items()})


def identity(s: Smoothing) -> Morphism:
    """Identity of ``s``; every loop contributes a neck-cut cylinder."""
    n_arcs = _cycle_count(s.matching, s.matching)
    terms = {0: 1}
    for i in range(s.loops):
        src_bit = 1 << (n_arcs + i)
        tgt_bit = 1 << (n_arcs + s.loops + i)
        terms = {
            m | b: c for m, c in terms.items() for b in (src_bit, tgt_bit)
        }
    return Morphism(s, s, terms)


def cap(dotted: bool = False) -> Morphism:
    return Morphism.basis(Smoothing((), 1), EMPTY, int(dotted))


def cup(dotted: bool = False) -> Morphism:
    return Morphism.basis(EMPTY, Smoothing((), 1), int(dotted))


def saddle(source: Smoothing, target: Smoothing, coeff=1) -> Morphism:
    """The undotted connected cobordism between two matchings differing by one saddle."""
    if len(cycles_of(source, target)) != source.boundary_size // 2 - 1 + source.loops + target.loops:
        raise ValueError(f"{source} and {target} are not related by a saddle")
    return Morphism.basis(source, target, 0, coeff)


def is_unit(m: Morphism, ring: Ring = ZZ) -> Morphism | None:
    """Inverse of ``m`` when it is a unit multiple of a loop-free identity."""
    if m.source != m.target or m.source.loops or len(m.terms) != 1:
        return None
    (mask, c), = m.terms.items()
    if mask or not ring.is_unit(c):
        return None
    return Morphism.basis(m.source, m.source, 0, ring.inverse(c))


# ---------------------------------------------------------------------------
# horizontal composition


@dataclass(frozen=True)
class GluingSpec:
    """A planar arc diagram joining two tangles side by side.

    Points of the left tangle are ``0 .. left_size-1`` and points of the right
    tangle are ``left_size .. left_size+right_size-1``.  ``joins`` pairs up
    points that get connected; ``boundary`` lists the unjoined points in the
    order they take on the boundary of the result.
    """

    left_size: int
    right_size: int
    joins: tuple[tuple[int, int], ...] = ()
    boundary: tuple[int, ...] = field(default=None)

    def __post_init__(self):
        total = self.left_size + self.right_size
        joined = [p for pair in self.joins for p in pair]
        if len(set(joined)) != len(joined) or any(not 0 <= p < total for p in joined):
            raise ValueError("joins must pair distinct points")
        free = [p for p in range(total) if p not in set(joined)]
        boundary = tuple(free) if self.boundary is None else tuple(self.boundary)
        if sorted(boundary) != free:
            raise ValueError("boundary must list exactly the unjoined points")
        object.__setattr__(self, "joins", tuple(tuple(j) for j in self.joins))
        object.__setattr__(self, "boundary", boundary)

    @property
    def partner(self) -> dict[int, int]:
        out = {}
        for p, q in self.joins:
            out[p] = q
            out[q] = p
        return out

    def is_planar(self) -> bool:
        """Planarity of the arc diagram for disks with ccw-ordered boundaries.

        The joined points on each side must form a cyclic block, and the two
        blocks are identified in reverse order.
        """
        if not self.joins:
            return True
        L, R = self.left_size, self.right_size
        cross = [(p, q) if p < L else (q, p) for p, q in self.joins]
        if any(p >= L or q < L for p, q in cross):
            return False
        lefts = sorted(p for p, _ in cross)
        if not _cyclic_block(lefts, L):
            return False
        start = _block_start(lefts, L)
        order = [(start + k) % L for k in range(len(lefts))]
        mate = dict(cross)
        rights = [mate[p] - L for p in order]
        return all(
            (rights[k] - rights[k + 1]) % R == 1 for k in range(len(rights) - 1)
        )


def _cyclic_block(points: list[int], n: int) -> bool:
    pts = set(points)
    gaps = sum(1 for p in pts if (p + 1) % n not in pts)
    return gaps <= 1


def _block_start(points: list[int], n: int) -> int:
    pts = set(points)
    for p in sorted(pts):
        if (p - 1) % n not in pts:
            return p
    return min(pts)


def _trace(arcs: Sequence[int], partner: dict[int, int], boundary: Sequence[int]):
    """Follow smoothing arcs through the joins.

    ``arcs`` is a matching on all points.  Returns the new matching indexed by
    position in ``boundary`` and, for every newly closed loop, one point on it.
    """
    pos = {p: i for i, p in enumerate(boundary)}
    new = [-1] * len(boundary)
    seen = set()
    for i, p in enumerate(boundary):
        if new[i] >= 0:
            continue
        seen.add(p)
        q = arcs[p]
        while q in partner:
            seen.add(q)
            q = partner[q]
            seen.add(q)
            q = arcs[q]
        seen.add(q)
        new[i] = pos[q]
        new[pos[q]] = i
    loop_reps = []
    for p in sorted(partner):
        if p in seen:
            continue
        loop_reps.append(p)
        q = p
        while q not in seen:
            seen.add(q)
            r = arcs[q]
            seen.add(r)
            q = partner[r]
    return tuple(new), loop_reps


def glue_smoothings(spec: GluingSpec, a: Smoothing, b: Smoothing) -> Smoothing:
    if (a.boundary_size, b.boundary_size) != (spec.left_size, spec.right_size):
        raise ValueError("smoothings do not fit the gluing spec")
    L = spec.left_size
    arcs = list(a.matching) + [L + x for x in b.matching]
    matching, new_loops = _trace(arcs, spec.partner, spec.boundary)
    return Smoothing(
        matching, a.loops + b.loops + len(new_loops), a.qshift + b.qshift
    )


@lru_cache(maxsize=100_000)
def _horizontal_glue(spec: GluingSpec, a_s, a_t, b_s, b_t):
    """Gluing data for ``f ⊗ g`` with ``f: a_s -> a_t``, ``g: b_s -> b_t``.

    Each argument is a ``(matching, loops)`` pair.  Nodes are the cycles of
    ``f`` followed by the cycles of ``g``.  Returns the glued source, glued
    target and a :class:`_Glue`.
    """
    L = spec.left_size
    partner = spec.partner
    a_arcs, a_owner = _arc_cycles(a_s[0], a_t[0])
    b_arcs, b_owner = _arc_cycles(b_s[0], b_t[0])
    n_a = len(a_arcs) + a_s[1] + a_t[1]
    n_b = len(b_arcs) + b_s[1] + b_t[1]
    owner = list(a_owner) + [n_a + o for o in b_owner]
    uf = _UF(n_a + n_b)
    edge_reps = []
    for p, q in spec.joins:
        uf.union(owner[p], owner[q])
        edge_reps.append(owner[p])

    src_arcs = list(a_s[0]) + [L + x for x in b_s[0]]
    tgt_arcs = list(a_t[0]) + [L + x for x in b_t[0]]
    src, src_new = _trace(src_arcs, partner, spec.boundary)
    tgt, tgt_new = _trace(tgt_arcs, partner, spec.boundary)

    # loops of the glued source: old ones of each side, then new ones
    src_loop_nodes = [len(a_arcs) + i for i in range(a_s[1])]
    src_loop_nodes += [n_a + len(b_arcs) + i for i in range(b_s[1])]
    src_loop_nodes += [owner[p] for p in src_new]
    tgt_loop_nodes = [len(a_arcs) + a_s[1] + j for j in range(a_t[1])]
    tgt_loop_nodes += [n_a + len(b_arcs) + b_s[1] + j for j in range(b_t[1])]
    tgt_loop_nodes += [owner[p] for p in tgt_new]

    new_arcs, _ = _arc_cycles(src, tgt)
    new_reps = [owner[spec.boundary[c[0]]] for c in new_arcs]
    new_reps += src_loop_nodes + tgt_loop_nodes
    glue = _Glue(_components(n_a + n_b, uf, edge_reps, new_reps))
    return (src, len(src_loop_nodes)), (tgt, len(tgt_loop_nodes)), glue, n_a


def horizontal_compose(spec: GluingSpec, a, b, ring: Ring = ZZ):
    """Place ``a`` and ``b`` side by side and join ends as ``spec`` prescribes.

    Works on two smoothings or on two morphisms.
    """
    if isinstance(a, Smoothing) and isinstance(b, Smoothing):
        return glue_smoothings(spec, a, b)
    if not (isinstance(a, Morphism) and isinstance(b, Morphism)):
        raise TypeError("horizontal_compose needs two smoothings or two morphisms")
    if (a.source.boundary_size, b.source.boundary_size) != (
        spec.left_size,
        spec.right_size,
    ):
        raise ValueError("morphisms do not fit the gluing spec")
    (src, sl), (tgt, tl), glue, shift = _horizontal_glue(
        spec,
        (a.source.matching, a.source.loops),
        (a.target.matching, a.target.loops),
        (b.source.matching, b.source.loops),
        (b.target.matching, b.target.loops),
    )
    out: dict[int, int] = {}
    for am, ac in a.terms.items():
        for bm, bc in b.terms.items():
            for m, c in glue.evaluate(am | bm << shift).items():
                out[m] = out.get(m, 0) + c * ac * bc
    return Morphism(
        Smoothing(src, sl), Smoothing(tgt, tl), {m: ring.coerce(c) for m, c in out.items()}
    )


def disjoint_spec(left_size: int, right_size: int) -> GluingSpec:
    return GluingSpec(left_size, right_size)


# ---------------------------------------------------------------------------
# id-keyed caches for the working complexes

_MATCH_IDS: dict[tuple[int, ...], int] = {}
MATCHINGS: list[tuple[int, ...]] = []


def intern_matching(matching: tuple[int, ...]) -> int:
    mid = _MATCH_IDS.get(matching)
    if mid is None:
        mid = len(MATCHINGS)
        _MATCH_IDS[matching] = mid
        MATCHINGS.append(matching)
    return mid


_VERTICAL: dict[tuple, tuple[_Glue, int]] = {}
VERTICAL_CACHE_LIMIT = 400_000


def vertical_glue_ids(s, sl, t, tl, u, ul) -> tuple[_Glue, int]:
    """``(glue, shift)`` for composing along interned matchings ``s -> t -> u``."""
    key = (s, sl, t, tl, u, ul)
    hit = _VERTICAL.get(key)
    if hit is None:
        if len(_VERTICAL) > VERTICAL_CACHE_LIMIT:
            _VERTICAL.clear()
        ms, mt, mu = MATCHINGS[s], MATCHINGS[t], MATCHINGS[u]
        glue = _vertical_glue.__wrapped__(ms, sl, mt, tl, mu, ul)
        hit = (glue, _cycle_count(ms, mt) + sl + tl)
        _VERTICAL[key] = hit
    return hit


def horizontal_glue_uncached(spec: GluingSpec, a_s, a_t, b_s, b_t):
    return _horizontal_glue.__wrapped__(spec, a_s, a_t, b_s, b_t)
