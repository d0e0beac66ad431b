"""Mechanical Reidemeister checks on tangle complexes.

Each check builds the complex of the "hard" side of a move, simplifies it
and compares it with the "easy" side, keeping all height and degree shifts.
Tangle boundaries are put in a canonical counterclockwise order first:
bottom ends left to right, then top ends right to left.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from itertools import product

from .cobcat import GluingSpec, Smoothing
from .complex import FormalComplex, relabel_boundary, simplify, tensor
from .homology import homology
from .planar import Crossing, braid_tangle, glue_data
from .rings import ZZ, Ring
from .scan import crossing_complex, scan_tangle

__all__ = ["CheckReport", "check_r1", "check_r2", "check_r3", "run_all", "report_json"]


@dataclass
class CheckReport:
    name: str
    ok: bool
    details: dict = field(default_factory=dict)


def _canonical(c: FormalComplex, boundary, order) -> FormalComplex:
    """Relabel boundary points so that edge ``order[k]`` becomes point ``k``."""
    where = {e: k for k, e in enumerate(order)}
    return relabel_boundary(c, [where[e] for e in boundary])


def _single(c: FormalComplex):
    objs = c.all_objects()
    return objs[0] if len(objs) == 1 else None


def _shape(c: FormalComplex) -> list:
    return [(r, s.matching, s.loops, s.qshift) for r, s in c.object_multiset()]


# ---------------------------------------------------------------------------
# R1


# kinks with open ends 1 (in) and 3 (out); the closed-up versions are the
# one-crossing unknot diagrams X[1,1,2,2] (positive) and X[1,2,2,1] (negative)
_KINKS = {
    "positive, loop on the 0-smoothing": Crossing((2, 2, 3, 1), 1),
    "negative, loop on the 1-smoothing": Crossing((1, 2, 2, 3), -1),
    "positive, loop on the 1-smoothing": Crossing((3, 1, 2, 2), 1),
    "negative, loop on the 0-smoothing": Crossing((2, 3, 1, 2), -1),
}


def check_r1(ring: Ring = ZZ) -> CheckReport:
    """Every kink simplifies to the single strand at height 0, degree 0."""
    cases = {}
    ok = True
    for name, x in _KINKS.items():
        state = scan_tangle([x], ring=ring, check=True)
        final = _canonical(state.current, state.open_boundary, (1, 3))
        good = _single(final) == (0, Smoothing((1, 0)))
        ok &= good
        cases[name] = {
            "objects_before": state.raw_profile[0],
            "deloops": state.delooped // 2,
            "eliminations": state.eliminations,
            "objects_after": final.object_count,
            "result": [[r, str(s)] for r, s in final.all_objects()],
            "ok": good,
        }
    return CheckReport("R1", ok, cases)


# ---------------------------------------------------------------------------
# R2


def _two_crossing_tensor(word, ring):
    """Flattened tensor of the two crossing complexes of a 2-strand braid."""
    crossings, bottom, top = braid_tangle(word, 2)
    xs = [Crossing(x, 1 if g > 0 else -1) for x, g in zip(crossings, word)]
    first = glue_data((), xs[0])
    second = glue_data(first.boundary, xs[1])
    t = tensor(second.spec, crossing_complex(xs[0].sign, ring), crossing_complex(xs[1].sign, ring))
    return t, second.boundary, bottom, top


def check_r2(ring: Ring = ZZ) -> CheckReport:
    """Both orders of a crossing and its inverse reduce to two parallel strands."""
    cases = {}
    ok = True
    for word in ((1, -1), (-1, 1)):
        t, boundary, bottom, top = _two_crossing_tensor(word, ring)
        steps = {"deloop": 0, "eliminate": 0}

        def count(_, what):
            steps[what] += 1

        s = simplify(t, on_step=count)
        order = tuple(bottom) + tuple(reversed(top))
        final = _canonical(s, boundary, order)
        easy = Smoothing((3, 2, 1, 0))  # bottom i joined to top i
        good = _single(final) == (0, easy)
        ok &= good
        cases[f"word {list(word)}"] = {
            "objects_before": t.object_count,
            "deloops": steps["deloop"],
            "eliminations": steps["eliminate"],
            "objects_after": final.object_count,
            "result": [[r, str(x)] for r, x in final.all_objects()],
            "ok": good,
        }
    return CheckReport("R2", ok, cases)


# ---------------------------------------------------------------------------
# R3


def _braid_side(word, ring, first_label=1):
    crossings, bottom, top = braid_tangle(word, 3, first_label)
    xs = [Crossing(x, 1 if g > 0 else -1) for x, g in zip(crossings, word)]
    state = scan_tangle(xs, ring=ring)
    return state, bottom, top


def planar_matchings(n: int) -> list[tuple[int, ...]]:
    """All crossingless perfect matchings of ``n`` points on a circle."""
    if n == 0:
        return [()]
    out = []
    for j in range(1, n, 2):
        for inner in planar_matchings(j - 1):
            for outer in planar_matchings(n - j - 1):
                m = [0] * n
                m[0], m[j] = j, 0
                for a, b in enumerate(inner):
                    m[1 + a] = 1 + b
                for a, b in enumerate(outer):
                    m[j + 1 + a] = j + 1 + b
                out.append(tuple(m))
    return out


def _close(side: FormalComplex, closing: FormalComplex, n: int):
    """Glue point ``k`` of ``side`` to point ``k`` of ``closing``."""
    spec = GluingSpec(n, n, tuple((k, n + k) for k in range(n)), ())
    return homology(simplify(tensor(spec, side, closing)))


def check_r3(ring: Ring = ZZ, words=((1, 2, 1), (2, 1, 2))) -> CheckReport:
    """Both sides of the braid relation: equal objects and equal closures.

    The closures are the five crossingless matchings of the six ends and
    the 64 braid closures by ``s1^± s2^± s1^± s2^± s1^± s2^±``.
    """
    sides = []
    for word in words:
        state, bottom, top = _braid_side(word, ring)
        order = tuple(bottom) + tuple(reversed(top))
        sides.append(_canonical(state.current, state.open_boundary, order))
    a, b = sides
    same_objects = _shape(a) == _shape(b)

    mismatches = []
    closures = 0
    for m in planar_matchings(6):
        cap = FormalComplex(0, [[Smoothing(m)]], [], ring)
        closures += 1
        if _close(a, cap, 6) != _close(b, cap, 6):
            mismatches.append(f"matching {m}")
    for signs in product((1, -1), repeat=6):
        w = [s * g for s, g in zip(signs, (1, 2, 1, 2, 1, 2))]
        state, bottom, top = _braid_side(w, ring, first_label=100)
        # the closing braid sits on top: its bottom meets the side's top
        # (points 5, 4, 3) and its top meets the side's bottom (0, 1, 2)
        target = {bottom[i]: 5 - i for i in range(3)} | {top[i]: i for i in range(3)}
        perm = [target[e] for e in state.open_boundary]
        closing = relabel_boundary(state.current, perm)
        closures += 1
        if _close(a, closing, 6) != _close(b, closing, 6):
            mismatches.append(f"braid {w}")
    ok = same_objects and not mismatches
    return CheckReport(
        "R3",
        ok,
        {
            "objects": [a.object_count, b.object_count],
            "same_objects": same_objects,
            "closures": closures,
            "mismatches": mismatches,
        },
    )


def run_all(ring: Ring = ZZ) -> list[CheckReport]:
    return [check_r1(ring), check_r2(ring), check_r3(ring)]


def report_json(reports: list[CheckReport]) -> str:
    return json.dumps(
        {"ok": all(r.ok for r in reports), "checks": [asdict(r) for r in reports]},
        sort_keys=True,
        indent=2,
    )
