import pytest

from fastkh.cobcat import Morphism, Smoothing, disjoint_spec, identity, saddle
from fastkh.complex import (
    EntryAddress,
    FormalComplex,
    WorkComplex,
    deloop,
    euler_characteristic,
    gaussian_eliminate,
    relabel_boundary,
    simplify,
    tensor,
    validate,
)
from fastkh.laurent import LaurentPolynomial
from fastkh.planar import Crossing, braid_tangle, glue_data
from fastkh.rings import QQ, ZZ
from fastkh.scan import crossing_complex

ZERO = Smoothing((1, 0, 3, 2))
ONE = Smoothing((3, 2, 1, 0))


def two_crossing_tensor(signs=(1, -1)):
    """Tensor of two crossing complexes glued along two points (an R2 tangle)."""
    crossings, _, _ = braid_tangle(list(signs), 2)
    a, b = (Crossing(x, s) for x, s in zip(crossings, signs))
    first = glue_data((), a)
    second = glue_data(first.boundary, b)
    return tensor(second.spec, crossing_complex(a.sign), crossing_complex(b.sign))


def test_crossing_complex_shape():
    for sign in (1, -1):
        c = crossing_complex(sign)
        assert c.object_count == 2
        assert validate(c)
        assert c.start == (0 if sign > 0 else -1)


def test_crossing_complex_mirror_symmetry():
    pos, neg = crossing_complex(1), crossing_complex(-1)
    # the mirror swaps the smoothings, negates heights and q-shifts
    p = {(r, s.qshift) for r, s in pos.all_objects()}
    n = {(-r, -s.qshift) for r, s in neg.all_objects()}
    assert p == n
    assert euler_characteristic(pos).coeffs == {
        -e: c for e, c in euler_characteristic(neg).coeffs.items()
    }


def test_validate_catches_bad_degree():
    c = FormalComplex(0, [[ZERO], [ONE.shifted(1)]], [{(0, 0): saddle(ZERO, ONE)}])
    assert validate(c)
    bad = FormalComplex(0, [[ZERO], [ONE]], [{(0, 0): saddle(ZERO, ONE)}])
    report = validate(bad)
    assert not report and "degree" in report.message


def test_validate_catches_nonzero_square():
    a, b = ZERO, ONE.shifted(1)
    d1 = {(0, 0): saddle(ZERO, ONE)}
    d2 = {(0, 0): saddle(ONE, ZERO)}
    bad = FormalComplex(0, [[a], [b], [ZERO.shifted(2)]], [d1, d2])
    report = validate(bad)
    assert not report and "d∘d" in report.message


def test_tensor_is_a_complex():
    t = two_crossing_tensor()
    assert t.object_count == 4
    assert validate(t)
    assert t.loop_count == 1


def test_deloop_replaces_loop_by_two_objects():
    t = two_crossing_tensor()
    where = [(r, i) for r in t.heights for i, s in enumerate(t.objects(r)) if s.loops]
    (r, i), = where
    before = t.objects(r)[i]
    out = deloop(t, r, i)
    assert out.object_count == t.object_count + 1
    new = out.objects(r)[i : i + 2]
    assert [s.qshift for s in new] == [before.qshift + 1, before.qshift - 1]
    assert all(s.loops == before.loops - 1 for s in new)
    assert validate(out)
    assert euler_characteristic(out) == euler_characteristic(t)


def test_deloop_requires_a_loop():
    with pytest.raises(ValueError):
        deloop(crossing_complex(1), 0, 0)


def test_gaussian_elimination_removes_two_objects():
    t = two_crossing_tensor()
    (r, i), = [(r, i) for r in t.heights for i, s in enumerate(t.objects(r)) if s.loops]
    c = deloop(t, r, i)
    steps = 0
    while True:
        units = [
            (r, row, col)
            for r in c.heights[:-1]
            for (row, col), m in c.differential(r).items()
            if m.source == m.target and not m.source.loops and len(m.terms) == 1
            and abs(next(iter(m.terms.values()))) == 1 and 0 in m.terms
        ]
        if not units:
            break
        r, row, col = units[0]
        before = c.object_count
        c = gaussian_eliminate(c, EntryAddress(r, row, col))
        assert c.object_count == before - 2
        assert validate(c)
        steps += 1
    assert steps == 2
    assert c.object_count == 1


def test_gaussian_elimination_requires_unit():
    c = crossing_complex(1)
    with pytest.raises(ValueError):
        gaussian_eliminate(c, EntryAddress(0, 0, 0))


def test_simplify_r2_and_callbacks():
    seen = []
    out = simplify(two_crossing_tensor(), on_step=lambda work, what: seen.append(what))
    assert out.object_count == 1
    assert seen.count("deloop") == 1 and seen.count("eliminate") == 2
    (r, s), = out.all_objects()
    assert r == 0 and s.qshift == 0 and s.loops == 0


def test_simplify_over_q():
    t = two_crossing_tensor()
    t.ring = QQ
    assert simplify(t).object_count == 1


def test_tensor_with_empty_complex_is_identity():
    c = crossing_complex(-1)
    unit = FormalComplex(0, [[Smoothing()]], [])
    t = tensor(disjoint_spec(4, 0), c, unit)
    assert [(r, s) for r, s in t.all_objects()] == [(r, s) for r, s in c.all_objects()]
    assert validate(t)


def test_relabel_boundary_round_trip():
    c = crossing_complex(1)
    perm = [2, 3, 0, 1]
    back = relabel_boundary(relabel_boundary(c, perm), perm)
    assert back.all_objects() == c.all_objects()
    assert back.differential(0) == c.differential(0)
    assert validate(relabel_boundary(c, [1, 2, 3, 0]))


def test_work_complex_round_trip():
    t = two_crossing_tensor()
    work, ids = WorkComplex.from_formal(t)
    assert len(work) == t.object_count
    back = work.to_formal()
    assert sorted(back.object_multiset()) == sorted(t.object_multiset())
    assert validate(back)
    assert work.euler_characteristic() == euler_characteristic(t)


def test_euler_characteristic_of_loops():
    c = FormalComplex(0, [[Smoothing((), 2, 1)]], [])
    q = LaurentPolynomial.monomial
    assert euler_characteristic(c) == q(3) + q(1, 2) + q(-1)
    assert euler_characteristic(c).coeffs == {3: 1, 1: 2, -1: 1}


def test_identity_entries_are_degree_zero():
    for s in (ZERO, ONE):
        c = FormalComplex(0, [[s], [s]], [{(0, 0): identity(s)}])
        assert validate(c)
        assert Morphism.basis(s, s).degrees() == {0}
