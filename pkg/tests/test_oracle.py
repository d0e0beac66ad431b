import pytest

from fastkh.homology import euler_characteristic, homology
from fastkh.laurent import LaurentPolynomial
from fastkh.oracle import DELTA, M, SizeLimitExceeded, _resolve, cube_complex, kauffman_bracket
from fastkh.planar import mirror, parse_pd
from fastkh.rings import ZZ, PrimeField
from fastkh.scan import scan

from .conftest import FIGURE_EIGHT, TREFOIL


def mat(rows):
    return [list(r) for r in rows]


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def rank(A):
    from sympy import Matrix

    return Matrix(A).rank()


def test_frobenius_maps():
    m, delta = mat(M), mat(DELTA)
    # Δ∘m on V⊗V has rank 2; m∘Δ is multiplication by 2X
    assert rank(matmul(delta, m)) == 2
    assert matmul(m, delta) == [[0, 2], [0, 0]]


def test_product_is_commutative_and_unital():
    swap = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    assert matmul(mat(M), swap) == mat(M)
    assert matmul(swap, mat(DELTA)) == mat(DELTA)
    # v+ is the unit: m(v+ ⊗ x) = x
    assert [M[0][2], M[1][2]] == [1, 0] and [M[0][3], M[1][3]] == [0, 1]


def test_cube_is_a_complex(corpus):
    for e in corpus[:30]:
        g = cube_complex(e.diagram)
        assert g.check_d_squared()
        assert g.total_dim() == sum(
            2 ** _resolve(e.diagram, v).loops
            for v in range(1 << e.diagram.n)
        )


def test_size_limit():
    from fastkh.planar import torus_knot

    with pytest.raises(SizeLimitExceeded):
        cube_complex(torus_knot(3, 7), limit=10)
    with pytest.raises(SizeLimitExceeded):
        kauffman_bracket(torus_knot(3, 11))


def test_bracket_of_unknot_and_trefoil():
    assert kauffman_bracket(parse_pd("PD[Loop[1]]")) == LaurentPolynomial.q_plus_q_inverse(1)
    jones = kauffman_bracket(parse_pd(TREFOIL))
    assert jones.coeffs == {-1: 1, -3: 1, -5: 1, -9: -1}


def test_bracket_equals_scan_euler(corpus):
    for e in corpus:
        assert kauffman_bracket(e.diagram) == euler_characteristic(scan(e.diagram)), e.name


def test_oracle_trefoil_and_figure_eight():
    assert homology(cube_complex(parse_pd(TREFOIL))) == homology(scan(parse_pd(TREFOIL)))
    f8 = parse_pd(FIGURE_EIGHT)
    assert homology(cube_complex(f8, PrimeField(2))) == homology(scan(f8, ring=PrimeField(2)))


def test_mirror_reflects_free_part(corpus):
    for e in corpus:
        d = e.diagram
        if d.components > 1 or d.n > 7:
            continue
        a = homology(scan(d)).poincare()
        b = homology(scan(mirror(d))).poincare()
        assert b == {(-r, -q): f for (r, q), f in a.items()}, e.name


def test_reidemeister_variants_share_invariants(corpus):
    groups = {}
    for e in corpus:
        if e.kind == "reidemeister":
            groups.setdefault(e.knot, []).append(e.diagram)
    assert len(groups) == 4
    for diagrams in groups.values():
        first = diagrams[0]
        for d in diagrams[1:]:
            assert kauffman_bracket(d) == kauffman_bracket(first)
            assert homology(scan(d)) == homology(scan(first))
