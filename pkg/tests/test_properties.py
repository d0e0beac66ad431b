"""Randomised checks of the scanning engine against the cube oracle."""

from hypothesis import given, settings
from hypothesis import strategies as st

from fastkh.complex import euler_characteristic, validate
from fastkh.homology import homology
from fastkh.oracle import cube_complex, kauffman_bracket
from fastkh.planar import braid_closure, mirror, order_crossings
from fastkh.rings import QQ, ZZ, PrimeField
from fastkh.scan import scan, scan_state


@st.composite
def braids(draw, max_len=7):
    strands = draw(st.integers(2, 4))
    gens = st.integers(1, strands - 1).flatmap(lambda g: st.sampled_from([g, -g]))
    word = draw(st.lists(gens, min_size=1, max_size=max_len))
    return braid_closure(word, strands)


@settings(max_examples=60, deadline=None)
@given(braids(), st.randoms(use_true_random=False), st.sampled_from([ZZ, QQ, PrimeField(2), PrimeField(3)]))
def test_random_order_matches_oracle(d, rnd, ring):
    perm = list(range(d.n))
    rnd.shuffle(perm)
    assert homology(scan(d, perm, ring=ring)) == homology(cube_complex(d, ring))


@settings(max_examples=30, deadline=None)
@given(braids(max_len=6))
def test_check_mode_invariants(d):
    c = scan(d, check=True)
    assert validate(c)
    assert euler_characteristic(c) == kauffman_bracket(d)


@settings(max_examples=40, deadline=None)
@given(braids())
def test_width_profile_properties(d):
    for strategy in ("given", "greedy"):
        order = order_crossings(d, strategy)
        assert all(w % 2 == 0 for w in order.width_profile)
        assert order.width_profile[-1] == 0
    state = scan_state(d, "greedy")
    assert state.crossings_done == d.n
    assert len(state.profile) == d.n


@settings(max_examples=30, deadline=None)
@given(braids())
def test_mirror_on_braids(d):
    a = homology(scan(d, ring=QQ)).poincare()
    b = homology(scan(mirror(d), ring=QQ)).poincare()
    if d.components == 1:
        assert b == {(-r, -q): f for (r, q), f in a.items()}
