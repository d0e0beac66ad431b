"""Brute-force ground truth: the full cube of resolutions and the bracket.

This module shares nothing with the cobordism engine except the diagram and
output types.  Each vertex of the cube is a total smoothing with ``k`` loops
and carries ``V^{⊗k}``; edges apply the product ``m`` or the coproduct
``Δ``.  With ``V = span(v-, v+)`` the basis order is ``(v-, v+)``, so index
0 is ``v-`` and a tensor ``x ⊗ y`` has index ``2x + y``.
"""

from __future__ import annotations

from .homology import GradedIntegerComplex
from .laurent import LaurentPolynomial
from .planar import Diagram
from .rings import ZZ, Ring

__all__ = ["M", "DELTA", "SizeLimitExceeded", "CubeVertex", "cube_complex", "kauffman_bracket"]

# product V⊗V -> V and coproduct V -> V⊗V in the (v-, v+) basis
M = ((0, 1, 1, 0), (0, 0, 0, 1))
DELTA = ((1, 0), (0, 1), (0, 1), (0, 0))

DEFAULT_LIMIT = 14


class SizeLimitExceeded(ValueError):
    pass


class CubeVertex:
    """A vertex of the cube: resolution bits, loop count and edge-to-loop map."""

    __slots__ = ("bits", "loops", "loop_of")

    def __init__(self, bits: int, loops: int, loop_of: dict[int, int]):
        self.bits = bits
        self.loops = loops
        self.loop_of = loop_of


def _resolve(d: Diagram, bits: int) -> CubeVertex:
    parent: dict[int, int] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def join(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for k, x in enumerate(d.crossings):
        a, b, c, e = x.edges
        if bits >> k & 1:
            join(a, e)
            join(b, c)
        else:
            join(a, b)
            join(c, e)
    for e in d.loops:
        find(e)
    roots = sorted({find(e) for e in parent})
    index = {r: i for i, r in enumerate(roots)}
    return CubeVertex(bits, len(roots), {e: index[find(e)] for e in parent})


def _check_size(d: Diagram, limit: int) -> None:
    if d.n > limit:
        raise SizeLimitExceeded(f"{d.n} crossings exceed the oracle limit of {limit}")


def _product_table():
    out = {}
    for x in range(2):
        for y in range(2):
            out[x, y] = [v for v in range(2) if M[v][2 * x + y]]
    return out


def _coproduct_table():
    out = {}
    for x in range(2):
        out[x] = [(t >> 1, t & 1) for t in range(4) if DELTA[t][x]]
    return out


def cube_complex(d: Diagram, ring: Ring = ZZ, limit: int = DEFAULT_LIMIT) -> GradedIntegerComplex:
    """The Khovanov cube of ``d`` split by q-degree.

    A generator at vertex ``v`` (``r`` one-resolutions, loops labelled by
    ``x``) sits at height ``r - n-`` and q-degree
    ``#v+ - #v- + r + n+ - 2 n-``.  The edge flipping crossing ``k`` carries
    the sign ``(-1)^(number of 1s in v before bit k)``.
    """
    _check_size(d, limit)
    n, n_plus, n_minus = d.n, d.n_plus, d.n_minus
    vertices = [_resolve(d, v) for v in range(1 << n)]
    g = GradedIntegerComplex(ring)
    position: dict[tuple[int, int], int] = {}
    for vert in vertices:
        r = vert.bits.bit_count()
        h = r - n_minus
        for x in range(1 << vert.loops):
            q = 2 * x.bit_count() - vert.loops + r + n_plus - 2 * n_minus
            by_r = g.dims.setdefault(q, {})
            position[vert.bits, x] = by_r.get(h, 0)
            by_r[h] = position[vert.bits, x] + 1

    product = _product_table()
    coproduct = _coproduct_table()
    for vert in vertices:
        v = vert.bits
        r = v.bit_count()
        h = r - n_minus
        for k in range(n):
            if v >> k & 1:
                continue
            w = vertices[v | 1 << k]
            sign = -1 if (v & ((1 << k) - 1)).bit_count() % 2 else 1
            a, b, _, _ = d.crossings[k].edges
            # loops of v other than the ones touching crossing k keep their identity
            moved = {}
            for e, i in vert.loop_of.items():
                moved.setdefault(i, w.loop_of[e])
            la, lc = vert.loop_of[a], vert.loop_of[d.crossings[k].edges[2]]
            for x in range(1 << vert.loops):
                base = 0
                for i in range(vert.loops):
                    if i not in (la, lc) and x >> i & 1:
                        base |= 1 << moved[i]
                images = []
                if la != lc:
                    target = w.loop_of[a]
                    for val in product[x >> la & 1, x >> lc & 1]:
                        images.append(base | val << target)
                else:
                    l1, l2 = w.loop_of[a], w.loop_of[b]
                    for v1, v2 in coproduct[x >> la & 1]:
                        images.append(base | v1 << l1 | v2 << l2)
                q = 2 * x.bit_count() - vert.loops + r + n_plus - 2 * n_minus
                col = position[v, x]
                mat = g.maps.setdefault(q, {}).setdefault(h, {})
                for y in images:
                    key = (position[w.bits, y], col)
                    val = ring.coerce(mat.get(key, 0) + sign)
                    if val:
                        mat[key] = val
                    else:
                        mat.pop(key, None)
    return g


def kauffman_bracket(d: Diagram, limit: int = 20) -> LaurentPolynomial:
    """Unnormalised Jones polynomial as a state sum.

    ``sum over states (-1)^(r - n-) q^(r + n+ - 2 n-) (q + 1/q)^loops``, the
    graded Euler characteristic of Khovanov homology.
    """
    _check_size(d, limit)
    n_plus, n_minus = d.n_plus, d.n_minus
    total = LaurentPolynomial()
    circle = {}
    for v in range(1 << d.n):
        vert = _resolve(d, v)
        r = v.bit_count()
        k = vert.loops
        if k not in circle:
            circle[k] = LaurentPolynomial.q_plus_q_inverse(k)
        sign = -1 if (r - n_minus) % 2 else 1
        total = total + circle[k] * LaurentPolynomial.monomial(r + n_plus - 2 * n_minus, sign)
    return total
