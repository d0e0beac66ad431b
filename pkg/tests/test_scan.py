import pytest

from fastkh.complex import validate
from fastkh.homology import homology
from fastkh.planar import Crossing, parse_pd, torus_knot
from fastkh.rings import QQ, ZZ, PrimeField
from fastkh.oracle import cube_complex
from fastkh.scan import (
    crossing_complex,
    divide_and_conquer,
    divide_and_conquer_result,
    scan,
    scan_state,
    scan_tangle,
)

from .conftest import FIGURE_EIGHT, TREFOIL


def groups(table):
    return dict(table.entries)


def test_unknot_is_two_shifted_empties():
    c = scan(parse_pd("PD[Loop[1]]"))
    assert sorted((r, s.qshift) for r, s in c.all_objects()) == [(0, -1), (0, 1)]
    assert groups(homology(c)) == {(0, -1): (1, ()), (0, 1): (1, ())}


@pytest.mark.parametrize("pd", ["PD[X[1,1,2,2]]", "PD[X[1,2,2,1]]", "PD[X[2,1,1,2]]", "PD[X[2,2,1,1]]"])
def test_one_crossing_unknots(pd):
    table = homology(scan(parse_pd(pd)))
    assert groups(table) == {(0, -1): (1, ()), (0, 1): (1, ())}


def test_kink_tangle_is_a_strand():
    state = scan_tangle([Crossing((2, 2, 3, 1), 1)], check=True)
    (r, s), = state.current.all_objects()
    assert r == 0 and s.qshift == 0 and s.boundary_size == 2 and not s.loops


def test_trefoil_integral():
    table = homology(scan(parse_pd(TREFOIL)))
    assert groups(table) == {
        (-3, -9): (1, ()),
        (-2, -7): (0, (2,)),
        (-2, -5): (1, ()),
        (0, -3): (1, ()),
        (0, -1): (1, ()),
    }


def test_figure_eight_integral_torsion():
    table = homology(scan(parse_pd(FIGURE_EIGHT)))
    assert table.group(-1, -3) == (0, (2,))
    assert table.group(2, 3) == (0, (2,))
    assert table.total_rank == 6


def test_scanned_complexes_are_valid(corpus):
    for e in corpus[:40]:
        c = scan(e.diagram)
        assert all(not s.boundary_size and not s.loops for _, s in c.all_objects())
        assert validate(c)


def test_check_mode_agrees(corpus):
    for e in corpus[:10]:
        d = e.diagram
        assert homology(scan(d, check=True)) == homology(scan(d))


def test_progress_callback_and_profiles(figure_eight):
    seen = []
    state = scan_state(figure_eight, "greedy", on_progress=lambda s: seen.append(len(s.work)))
    assert len(seen) == 4
    assert state.profile == seen
    assert state.crossings_done == 4
    assert state.peak_objects <= 16
    assert state.peak_delooped >= max(state.profile)


def test_peak_objects_below_cube(corpus):
    for e in corpus:
        d = e.diagram
        peak = scan_state(d, "greedy").peak_objects
        if d.n >= 4:
            assert peak <= 2**d.n
        if d.n >= 6:
            assert peak < 2**d.n


def test_strict_scan_and_abstract_composition():
    from fastkh.planar import PlanarityError

    d = parse_pd("PD[X[5,1,6,10], X[7,3,8,2], X[9,5,10,4], X[1,7,2,6], X[3,9,4,8]]")
    with pytest.raises(PlanarityError):
        scan(d, strict=True)
    # the engine composes abstractly, so the same order still gives the right answer
    assert homology(scan(d)) == homology(cube_complex(d))
    assert homology(scan(d, "greedy", strict=True)) == homology(scan(d))


def test_rings_agree_with_universal_coefficients(corpus):
    for e in corpus[:30]:
        d = e.diagram
        z = homology(scan(d))
        q = homology(scan(d, ring=QQ))
        assert {k: f for k, (f, _) in z.entries.items() if f} == {
            k: f for k, (f, _) in q.entries.items()
        }
        f2 = homology(scan(d, ring=PrimeField(2)))
        # dim over F2 = free + #even torsion here + #even torsion one height up
        for (r, qd), (f, _) in f2.entries.items():
            even = lambda rr: sum(1 for t in z.group(rr, qd)[1] if t % 2 == 0)
            assert f == z.group(r, qd)[0] + even(r) + even(r + 1)


def test_divide_and_conquer_figure_eight(figure_eight):
    res = divide_and_conquer_result(figure_eight, ([0, 1], [2, 3]))
    assert res.tensor_objects == 9
    assert res.naive_objects == 16
    assert homology(res.complex) == homology(scan(figure_eight))


def test_divide_and_conquer_matches_scan(corpus):
    for e in corpus:
        d = e.diagram
        if d.loops or d.n < 2:
            continue
        half = d.n // 2
        cut = (range(half), range(half, d.n))
        assert homology(divide_and_conquer(d, cut)) == homology(scan(d)), e.name


def test_divide_and_conquer_rejects_bad_cut(figure_eight):
    with pytest.raises(ValueError):
        divide_and_conquer(figure_eight, ([0, 1], [1, 2]))


def test_torus_3_4():
    d = torus_knot(3, 4)
    table = homology(scan(d, ring=QQ))
    assert sorted(table.entries) == [
        (0, 5), (0, 7), (2, 9), (3, 13), (4, 11), (4, 13), (5, 15), (5, 17)
    ]
    assert homology(scan(d)) == homology(cube_complex(d))


def test_crossing_complex_rings():
    for ring in (ZZ, QQ, PrimeField(3)):
        c = crossing_complex(1, ring)
        assert c.ring == ring and validate(c)
