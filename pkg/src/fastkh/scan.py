"""Scanning a diagram one crossing at a time.

The running complex lives on the open boundary of the crossings scanned so
far.  Each step tensors it with the two-object complex of the next crossing,
deloops the circles that close up and cancels every invertible entry, so the
running complex stays small (roughly exponential in the width of the cut
rather than in the number of crossings).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .cobcat import (
    MATCHINGS,
    GluingSpec,
    Smoothing,
    _cycle_count,
    glue_smoothings,
    horizontal_glue_uncached,
    intern_matching,
    saddle,
)
from .complex import FormalComplex, WorkComplex, simplify, tensor
from .laurent import LaurentPolynomial
from .planar import Crossing, Diagram, ScanOrder, glue_data, order_crossings, scan_order
from .rings import ZZ, Ring

__all__ = [
    "ZERO_SMOOTHING",
    "ONE_SMOOTHING",
    "ScanState",
    "DivideResult",
    "crossing_complex",
    "scan",
    "scan_state",
    "scan_tangle",
    "divide_and_conquer",
    "divide_and_conquer_result",
]

# 0-smoothing joins slots (0,1) and (2,3); the 1-smoothing joins (0,3) and (1,2)
ZERO_SMOOTHING = (1, 0, 3, 2)
ONE_SMOOTHING = (3, 2, 1, 0)


def _crossing_shape(sign: int):
    """``[(height, matching, qshift)]`` of the 0- and 1-smoothing of a crossing."""
    if sign > 0:
        return [(0, ZERO_SMOOTHING, 1), (1, ONE_SMOOTHING, 2)]
    if sign < 0:
        return [(-1, ZERO_SMOOTHING, -2), (0, ONE_SMOOTHING, -1)]
    raise ValueError("crossing sign must be +1 or -1")


def crossing_complex(sign: int, ring: Ring = ZZ) -> FormalComplex:
    """Complex of one crossing: 0-smoothing --saddle--> 1-smoothing."""
    (h0, m0, q0), (_, m1, q1) = _crossing_shape(sign)
    s0, s1 = Smoothing(m0, 0, q0), Smoothing(m1, 0, q1)
    d = {(0, 0): saddle(s0.shape, s1.shape)}
    return FormalComplex(h0, [[s0], [s1]], [d], ring)


@dataclass
class ScanState:
    """Progress of a scan: the running work complex and its open boundary."""

    work: WorkComplex
    open_boundary: tuple[int, ...] = ()
    crossings_done: int = 0
    peak_objects: int = 0
    peak_delooped: int = 0
    eliminations: int = 0
    delooped: int = 0
    profile: list[int] = field(default_factory=list)
    raw_profile: list[int] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def current(self) -> FormalComplex:
        return self.work.to_formal()


# ---------------------------------------------------------------------------
# one step


def _graded_euler(work: WorkComplex) -> dict:
    """Euler characteristic split by boundary matching, loops expanded."""
    out: dict[int, LaurentPolynomial] = {}
    for o, h in work.height.items():
        term = LaurentPolynomial.monomial(work.q[o], -1 if h % 2 else 1)
        if work.loops[o]:
            term = term * LaurentPolynomial.q_plus_q_inverse(work.loops[o])
        key = work.mid[o]
        out[key] = out.get(key, LaurentPolynomial()) + term
    return {k: v for k, v in out.items() if v != LaurentPolynomial()}


def attach_crossing(
    work: WorkComplex, spec: GluingSpec, sign: int, deloop: bool = True
) -> WorkComplex:
    """Tensor ``work`` with a crossing along ``spec``; returns a new WorkComplex.

    With ``deloop`` every circle closed by the gluing is delooped on the fly:
    an object with ``k`` new circles becomes ``2^k`` loop-free copies, and each
    term of a glued entry lands in exactly one pair of copies according to the
    dots on those circles.  Objects of ``work`` must be loop-free.
    """
    ring = work.ring
    shape = _crossing_shape(sign)
    new = WorkComplex(ring)
    new.on_step = work.on_step

    glued: dict[tuple[int, int], tuple[int, int]] = {}
    copies: dict[tuple[int, int], list[int]] = {}
    for o in sorted(work.height):
        if work.loops[o]:
            raise ValueError("attach_crossing needs a loop-free complex")
        h, mid, q = work.height[o], work.mid[o], work.q[o]
        for ci, (hc, mc, qc) in enumerate(shape):
            key = (mid, ci)
            hit = glued.get(key)
            if hit is None:
                s = glue_smoothings(spec, Smoothing(MATCHINGS[mid]), Smoothing(mc))
                hit = (intern_matching(s.matching), s.loops)
                glued[key] = hit
            nm, nl = hit
            if deloop:
                copies[o, ci] = [
                    new.add_object(h + hc, nm, 0, q + qc + 2 * a.bit_count() - nl)
                    for a in range(1 << nl)
                ]
            else:
                copies[o, ci] = [new.add_object(h + hc, nm, nl, q + qc)]

    glues: dict[tuple, tuple] = {}

    def glue_for(ma, mb, ci, cj):
        key = (ma, mb, ci, cj)
        hit = glues.get(key)
        if hit is None:
            (src, sl), (tgt, tl), g, _ = horizontal_glue_uncached(
                spec, (MATCHINGS[ma], 0), (MATCHINGS[mb], 0), (shape[ci][1], 0), (shape[cj][1], 0)
            )
            hit = (g.evaluate, _cycle_count(src, tgt), sl, tl)
            glues[key] = hit
        return hit

    def put(src_key, tgt_key, ev, masks_coeffs):
        evaluate, na, sl, tl = ev
        srcs, tgts = copies[src_key], copies[tgt_key]
        if not deloop:
            acc: dict[int, int] = {}
            for m, c in masks_coeffs:
                for m2, c2 in evaluate(m).items():
                    acc[m2] = acc.get(m2, 0) + c * c2
            new.add_to_entry(srcs[0], tgts[0], acc)
            return
        low = (1 << na) - 1
        smask = (1 << sl) - 1
        full = (1 << tl) - 1
        tshift = na + sl
        buckets: dict[tuple[int, int], dict[int, int]] = {}
        for m, c in masks_coeffs:
            for m2, c2 in evaluate(m).items():
                a = (m2 >> na) & smask
                b = (m2 >> tshift) ^ full
                acc = buckets.get((a, b))
                if acc is None:
                    acc = buckets[a, b] = {}
                arcs = m2 & low
                acc[arcs] = acc.get(arcs, 0) + c * c2
        for (a, b), acc in buckets.items():
            new.add_to_entry(srcs[a], tgts[b], acc)

    # old differential tensored with the identity of each smoothing
    for o in sorted(work.height):
        mo = work.mid[o]
        for t, terms in work.out[o].items():
            mt = work.mid[t]
            items = list(terms.items())
            for ci in range(2):
                put((o, ci), (t, ci), glue_for(mo, mt, ci, ci), items)
    # identity tensored with the saddle, signed by the height of the old factor
    for o in sorted(work.height):
        sign_o = -1 if work.height[o] % 2 else 1
        put((o, 0), (o, 1), glue_for(work.mid[o], work.mid[o], 0, 1), [(0, sign_o)])
    return new


# ---------------------------------------------------------------------------
# scanning


def _initial(ring: Ring, free_loops: int) -> WorkComplex:
    work = WorkComplex(ring)
    work.add_object(0, intern_matching(()), free_loops, 0)
    return work


def scan_tangle(
    crossings: Sequence[Crossing],
    order: Iterable[int] | None = None,
    ring: Ring = ZZ,
    free_loops: int = 0,
    on_progress: Callable[[ScanState], None] | None = None,
    check: bool = False,
    strict: bool = False,
) -> ScanState:
    """Scan a (possibly open) tangle given by signed crossings.

    Edges that appear once are open ends; they stay on ``open_boundary`` in
    the order the scan maintains.  With ``check`` every deloop and elimination
    is followed by an Euler-characteristic comparison (slow; for tests).
    With ``strict`` a crossing that cannot be glued planarly raises.
    """
    start = time.perf_counter()
    order = list(range(len(crossings))) if order is None else list(order)
    if sorted(order) != list(range(len(crossings))):
        raise ValueError("scan order must be a permutation of the crossings")
    work = _initial(ring, free_loops)
    state = ScanState(work)
    if check:
        _install_checker(state)
    work.simplify()
    state.peak_objects = state.peak_delooped = len(work)
    boundary: tuple[int, ...] = ()
    for k in order:
        x = crossings[k]
        g = glue_data(boundary, x, strict=strict)
        # the tensor with the crossing has two smoothings per object, each
        # possibly with circles, as in the naive cube
        state.peak_objects = max(state.peak_objects, 2 * len(state.work))
        fresh = attach_crossing(state.work, g.spec, x.sign, deloop=not check)
        fresh.on_step = state.work.on_step
        state.peak_delooped = max(state.peak_delooped, len(fresh))
        state.raw_profile.append(len(fresh))
        if check:
            _recheck(state, fresh)
            state.delooped += fresh.deloop_all()
            state.peak_delooped = max(state.peak_delooped, len(fresh))
        state.eliminations += fresh.eliminate_units()
        if check and any(fresh.loops.values()):
            raise AssertionError("loops left after delooping")
        state.work = fresh
        boundary = g.boundary
        state.open_boundary = boundary
        state.crossings_done += 1
        state.profile.append(len(fresh))
        if on_progress:
            on_progress(state)
    state.seconds = time.perf_counter() - start
    return state


def _install_checker(state: ScanState) -> None:
    def hook(work, what):
        now = _graded_euler(work)
        if now != state._euler:
            raise AssertionError(f"Euler characteristic changed by {what}")
        if not validate_work(work):
            raise AssertionError(f"complex invalid after {what}")

    state.work.on_step = hook
    state._euler = _graded_euler(state.work)


def _recheck(state: ScanState, fresh: WorkComplex) -> None:
    state._euler = _graded_euler(fresh)


def validate_work(work: WorkComplex) -> bool:
    from .complex import validate

    return bool(validate(work.to_formal()))


def scan_state(
    d: Diagram,
    order: ScanOrder | Sequence[int] | str | None = None,
    ring: Ring = ZZ,
    on_progress: Callable[[ScanState], None] | None = None,
    check: bool = False,
    strict: bool = False,
) -> ScanState:
    if order is None:
        perm = list(range(d.n))
    elif isinstance(order, str):
        perm = list(order_crossings(d, order).permutation)
    elif isinstance(order, ScanOrder):
        perm = list(order.permutation)
    else:
        perm = list(scan_order(d, order).permutation)
    return scan_tangle(d.crossings, perm, ring, len(d.loops), on_progress, check, strict)


def scan(
    d: Diagram,
    order: ScanOrder | Sequence[int] | str | None = None,
    ring: Ring = ZZ,
    on_progress: Callable[[ScanState], None] | None = None,
    check: bool = False,
    strict: bool = False,
) -> FormalComplex:
    """Simplified complex of a closed diagram: only shifted empty smoothings."""
    return scan_state(d, order, ring, on_progress, check, strict).current


# ---------------------------------------------------------------------------
# divide and conquer


@dataclass
class DivideResult:
    complex: FormalComplex
    left: FormalComplex
    right: FormalComplex
    tensor_objects: int
    naive_objects: int


def divide_and_conquer_result(
    d: Diagram, cut: tuple[Iterable[int], Iterable[int]], ring: Ring = ZZ
) -> DivideResult:
    """Simplify the two halves of ``cut`` separately, then tensor and simplify."""
    left, right = (sorted(set(p)) for p in cut)
    if sorted(left + right) != list(range(d.n)):
        raise ValueError("cut must partition the crossings")
    if not left or not right:
        whole = scan(d, left + right, ring)
        empty = FormalComplex(0, [[Smoothing()]], [], ring)
        return DivideResult(whole, whole if left else empty, whole if right else empty,
                            whole.object_count, 1 << d.n)
    a = scan_tangle([d.crossings[k] for k in left], None, ring)
    b = scan_tangle([d.crossings[k] for k in right], None, ring)
    ea, eb = a.open_boundary, b.open_boundary
    pos_b = {e: i for i, e in enumerate(eb)}
    joins = [(i, len(ea) + pos_b[e]) for i, e in enumerate(ea) if e in pos_b]
    joined = {p for pair in joins for p in pair}
    free = [p for p in range(len(ea) + len(eb)) if p not in joined]
    spec = GluingSpec(len(ea), len(eb), tuple(joins), tuple(free))
    ca, cb = a.current, b.current
    t = tensor(spec, ca, cb)
    if d.loops:
        raise ValueError("divide_and_conquer expects a diagram without free loops")
    return DivideResult(simplify(t), ca, cb, t.object_count, 1 << d.n)


def divide_and_conquer(
    d: Diagram, cut: tuple[Iterable[int], Iterable[int]], ring: Ring = ZZ
) -> FormalComplex:
    return divide_and_conquer_result(d, cut, ring).complex
