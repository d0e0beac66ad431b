"""Homology of fully scanned complexes.

After a closed diagram is scanned every object is a shifted empty smoothing
and every entry is a scalar, so the complex splits by q-degree into ordinary
integer (or field) chain complexes.  Integral homology comes from Smith
normal form; large sparse matrices are first reduced by pivoting on unit
entries, which is where almost all of the work goes for cube complexes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .complex import FormalComplex
from .laurent import LaurentPolynomial
from .rings import ZZ, Ring

__all__ = [
    "GradedIntegerComplex",
    "HomologyTable",
    "LaurentPolynomial",
    "SNFResult",
    "NotScannedError",
    "to_graded",
    "smith_normal_form",
    "elementary_divisors",
    "homology",
    "euler_characteristic",
    "primary_decomposition",
]


class NotScannedError(ValueError):
    pass


# ---------------------------------------------------------------------------
# graded complexes


@dataclass
class GradedIntegerComplex:
    """Chain complexes of free modules, one per q-degree.

    ``dims[q][r]`` is the rank at height ``r``; ``maps[q][r]`` is the sparse
    matrix ``{(row, col): value}`` of the differential from height ``r`` to
    ``r + 1`` (rows index height ``r + 1``).
    """

    ring: Ring = ZZ
    dims: dict[int, dict[int, int]] = field(default_factory=dict)
    maps: dict[int, dict[int, dict[tuple[int, int], int]]] = field(default_factory=dict)

    @property
    def degrees(self) -> list[int]:
        return sorted(self.dims)

    def dim(self, r: int, q: int) -> int:
        return self.dims.get(q, {}).get(r, 0)

    def matrix(self, r: int, q: int) -> dict[tuple[int, int], int]:
        return self.maps.get(q, {}).get(r, {})

    def dense(self, r: int, q: int) -> list[list[int]]:
        rows, cols = self.dim(r + 1, q), self.dim(r, q)
        out = [[0] * cols for _ in range(rows)]
        for (i, j), v in self.matrix(r, q).items():
            out[i][j] = v
        return out

    def total_dim(self) -> int:
        return sum(sum(d.values()) for d in self.dims.values())

    def check_d_squared(self) -> bool:
        for q, by_r in self.maps.items():
            for r, m1 in by_r.items():
                m2 = by_r.get(r + 1)
                if not m2:
                    continue
                cols: dict[int, list] = {}
                for (i, j), v in m2.items():
                    cols.setdefault(j, []).append((i, v))
                acc: dict[tuple[int, int], int] = {}
                for (k, j), v in m1.items():
                    for i, w in cols.get(k, ()):
                        acc[i, j] = self.ring.coerce(acc.get((i, j), 0) + w * v)
                if any(acc.values()):
                    return False
        return True


def to_graded(c: FormalComplex) -> GradedIntegerComplex:
    """Split a complex of shifted empty smoothings by q-degree."""
    g = GradedIntegerComplex(c.ring)
    index: dict[tuple[int, int], int] = {}
    for r in c.heights:
        for k, s in enumerate(c.objects(r)):
            if s.boundary_size or s.loops:
                raise NotScannedError(
                    f"object {s} at height {r} is not an empty smoothing; scan or simplify first"
                )
            by_r = g.dims.setdefault(s.qshift, {})
            index[r, k] = by_r.get(r, 0)
            by_r[r] = index[r, k] + 1
    for r in c.heights:
        src = c.objects(r)
        tgt = c.objects(r + 1)
        for (row, col), m in c.differential(r).items():
            q = src[col].qshift
            if tgt[row].qshift != q:
                raise ValueError(f"entry ({row},{col}) at height {r} changes q-degree")
            v = m.terms.get(0, 0)
            if v:
                mat = g.maps.setdefault(q, {}).setdefault(r, {})
                mat[index[r + 1, row], index[r, col]] = v
    return g


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass
class SNFResult:
    D: list[list[int]]
    U: list[list[int]]
    V: list[list[int]]
    rank: int
    divisors: list[int]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]]) -> SNFResult:
    """Smith normal form ``D = U A V`` with unimodular ``U`` and ``V``.

    Diagonal entries are non-negative and form a divisibility chain.
    """
    D = [list(map(int, row)) for row in A]
    m = len(D)
    n = len(D[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row dst += k * row src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col dst += k * col src
        for row in D:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = D[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remaining entry of row/column t to the pivot
                cands = [(abs(D[i][t]), i, t) for i in range(t, m) if D[i][t]]
                cands += [(abs(D[t][j]), t, j) for j in range(t, n) if D[t][j]]
                _, i, j = min(cands)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    divisors = [D[i][i] for i in range(min(m, n)) if D[i][i]]
    return SNFResult(D, U, V, len(divisors), divisors)


def _dense_divisors(rows: list[dict[int, int]], ncols: int) -> list[int]:
    cols = sorted({j for row in rows for j in row})
    where = {j: k for k, j in enumerate(cols)}
    dense = []
    for row in rows:
        line = [0] * len(cols)
        for j, v in row.items():
            line[where[j]] = v
        dense.append(line)
    return smith_normal_form(dense).divisors if dense and cols else []


def elementary_divisors(
    entries: dict[tuple[int, int], int], ring: Ring = ZZ
) -> tuple[int, list[int]]:
    """Rank and non-unit elementary divisors of a sparse matrix.

    Over a field only the rank is meaningful and the divisor list is empty.
    Unit pivots are eliminated sparsely (smallest fill-in first); whatever
    is left over the integers goes through dense Smith normal form.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (i, j), v in entries.items():
        v = ring.coerce(v)
        if v:
            rows.setdefault(i, {})[j] = v
            cols.setdefault(j, set()).add(i)
    field_ring = ring is not ZZ
    is_unit = ring.is_unit
    rank = 0
    while True:
        pivot = None
        for i, row in rows.items():
            for j, v in row.items():
                if is_unit(v):
                    cost = (len(row) - 1) * (len(cols[j]) - 1)
                    if pivot is None or cost < pivot[0]:
                        pivot = (cost, i, j)
                        if cost == 0:
                            break
            if pivot and pivot[0] == 0:
                break
        if pivot is None:
            break
        _, i, j = pivot
        prow = rows.pop(i)
        inv = ring.inverse(prow[j])
        for k in prow:
            cols[k].discard(i)
        for r in list(cols[j]):
            row = rows[r]
            f = row[j] * inv
            for k, v in prow.items():
                nv = ring.coerce(row.get(k, 0) - f * v)
                if nv:
                    if k not in row:
                        cols[k].add(r)
                    row[k] = nv
                elif k in row:
                    del row[k]
                    cols[k].discard(r)
            if not row:
                del rows[r]
        del cols[j]
        rank += 1
    if field_ring:
        return rank, []
    rest = [row for row in rows.values() if row]
    divisors = _dense_divisors(rest, 0)
    return rank + len(divisors), [d for d in divisors if d != 1]


# ---------------------------------------------------------------------------
# homology tables


def primary_decomposition(torsion: Iterable[int]) -> list[int]:
    """Prime-power orders of a finite abelian group given by any cyclic orders."""
    from sympy import factorint

    out = []
    for d in torsion:
        for p, e in factorint(d).items():
            out.append(p**e)
    return sorted(out)


@dataclass
class HomologyTable:
    """``(r, q) -> (free rank, torsion divisors)``; zero groups are omitted."""

    entries: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = field(default_factory=dict)
    ring: Ring = ZZ

    def __post_init__(self):
        self.entries = {
            k: (f, tuple(t)) for k, (f, t) in sorted(self.entries.items()) if f or t
        }

    def __eq__(self, other):
        if not isinstance(other, HomologyTable):
            return NotImplemented
        return self.normalized() == other.normalized()

    def normalized(self) -> dict:
        return {k: (f, tuple(primary_decomposition(t))) for k, (f, t) in self.entries.items()}

    def group(self, r: int, q: int) -> tuple[int, tuple[int, ...]]:
        return self.entries.get((r, q), (0, ()))

    def table_group(self, r: int, j: int) -> tuple[int, tuple[int, ...]]:
        """Entry in the ``(r, j)`` layout where ``q = 2r + j``."""
        return self.group(r, 2 * r + j)

    def same_group(self, r: int, q: int, free: int, torsion: Iterable[int]) -> bool:
        f, t = self.group(r, q)
        return f == free and primary_decomposition(t) == primary_decomposition(torsion)

    @property
    def total_rank(self) -> int:
        return sum(f for f, _ in self.entries.values())

    def poincare(self) -> dict[tuple[int, int], int]:
        return {k: f for k, (f, _) in self.entries.items() if f}

    def rows(self) -> list[dict]:
        return [
            {"r": r, "j": q - 2 * r, "q": q, "free": f, "torsion": list(t)}
            for (r, q), (f, t) in self.entries.items()
        ]

    def to_json(self) -> str:
        return json.dumps({"ring": self.ring.name, "groups": self.rows()}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "HomologyTable":
        from .rings import ring_from_name

        data = json.loads(text)
        ring = ring_from_name(data.get("ring", "z"))
        return cls(
            {(row["r"], row["q"]): (row["free"], tuple(row["torsion"])) for row in data["groups"]},
            ring,
        )

    def to_tsv(self) -> str:
        lines = ["r\tj\tq\tfree\ttorsion"]
        for row in self.rows():
            tors = ",".join(str(t) for t in row["torsion"])
            lines.append(f"{row['r']}\t{row['j']}\t{row['q']}\t{row['free']}\t{tors}")
        return "\n".join(lines)

    @staticmethod
    def _cell(free: int, torsion: tuple[int, ...]) -> str:
        parts = []
        if free:
            parts.append("Z" if free == 1 else f"Z^{free}")
        parts += [f"Z{t}" for t in torsion]
        return "+".join(parts)

    def to_text(self, layout: str = "q") -> str:
        """Aligned table with heights as rows.

        ``layout="q"`` uses the q-degree as columns; ``layout="j"`` uses
        ``j = q - 2r`` so that torus knots fit in a narrow band.
        """
        if not self.entries:
            return "(zero)"
        col_of = (lambda r, q: q) if layout == "q" else (lambda r, q: q - 2 * r)
        cells = {(r, col_of(r, q)): self._cell(f, t) for (r, q), (f, t) in self.entries.items()}
        rs = sorted({r for r, _ in cells})
        cs = sorted({c for _, c in cells})
        width = max(max(len(v) for v in cells.values()), max(len(str(c)) for c in cs))
        label = max(len(f"r={r}") for r in rs)
        head = f"{layout:>{label}} |" + "".join(f" {c:>{width}}" for c in cs)
        lines = [head, "-" * len(head)]
        for r in rs:
            line = f"{'r=' + str(r):<{label}} |"
            line += "".join(f" {cells.get((r, c), '.'):>{width}}" for c in cs)
            lines.append(line)
        return "\n".join(lines)

    def __str__(self):
        return self.to_text()


def homology(g: GradedIntegerComplex | FormalComplex) -> HomologyTable:
    """Homology per ``(r, q)``: free rank and torsion over the complex's ring."""
    if isinstance(g, FormalComplex):
        g = to_graded(g)
    ring = g.ring
    out = {}
    for q in g.degrees:
        by_r = g.dims[q]
        ranks = {}
        divisors = {}
        for r in by_r:
            mat = g.matrix(r, q)
            ranks[r], divisors[r] = elementary_divisors(mat, ring) if mat else (0, [])
        for r, n in by_r.items():
            free = n - ranks.get(r, 0) - ranks.get(r - 1, 0)
            torsion = tuple(sorted(divisors.get(r - 1, [])))
            if free < 0:
                raise AssertionError("negative rank: d o d != 0?")
            if free or torsion:
                out[r, q] = (free, torsion)
    return HomologyTable(out, ring)


def euler_characteristic(x: HomologyTable | FormalComplex | GradedIntegerComplex) -> LaurentPolynomial:
    """Graded Euler characteristic ``sum (-1)^r rank q^j``; torsion is ignored."""
    if isinstance(x, FormalComplex):
        from .complex import euler_characteristic as complex_euler

        return complex_euler(x)
    total = LaurentPolynomial()
    if isinstance(x, HomologyTable):
        for (r, q), (f, _) in x.entries.items():
            total = total + LaurentPolynomial.monomial(q, -f if r % 2 else f)
        return total
    for q, by_r in x.dims.items():
        for r, n in by_r.items():
            total = total + LaurentPolynomial.monomial(q, -n if r % 2 else n)
    return total
