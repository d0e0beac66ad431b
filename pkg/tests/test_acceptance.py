"""Acceptance criteria AC1 to AC7.

Each test records one ``ACn PASS`` or ``ACn FAIL`` line, printed in the
terminal summary by ``conftest.py``, and then asserts.  The file can also be
run directly:

    python3 tests/test_acceptance.py
"""

from __future__ import annotations

import itertools
import json
import random
import sys
import time
from pathlib import Path

if __name__ == "__main__":
    sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from sympy import Matrix

from fastkh.cli import main as cli_main
from fastkh.cobcat import Smoothing
from fastkh.complex import FormalComplex, euler_characteristic, simplify, tensor, validate
from fastkh.corpus import load_corpus
from fastkh.homology import elementary_divisors, homology, smith_normal_form, to_graded
from fastkh.homology import euler_characteristic as table_euler
from fastkh.laurent import LaurentPolynomial
from fastkh.oracle import cube_complex, kauffman_bracket
from fastkh.planar import glue_data, parse_pd, torus_knot
from fastkh.rings import QQ, ZZ, PrimeField
from fastkh.scan import crossing_complex, divide_and_conquer_result, scan, scan_state, scan_tangle

FIGURE_EIGHT = "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]"


RESULTS: dict[str, str] = {}


def report(name: str, ok: bool, detail: str) -> None:
    """Record the verdict line (printed in the terminal summary) and assert."""
    RESULTS[name] = f"{name} {'PASS' if ok else 'FAIL'}: {detail}"
    assert ok, f"{name}: {detail}"


# ---------------------------------------------------------------------------


def test_ac1_figure_eight_rational():
    start = time.perf_counter()
    table = homology(scan(parse_pd(FIGURE_EIGHT), ring=QQ))
    seconds = time.perf_counter() - start
    expected = {(-2, -5), (-1, -1), (0, -1), (0, 1), (1, 1), (2, 5)}
    got = {k for k, (f, _) in table.entries.items() for _ in range(f)}
    ok = table.total_rank == 6 and got == expected and all(
        f == 1 for f, _ in table.entries.values()
    )
    ok = ok and seconds < 1.0
    report("AC1", ok, f"dim {table.total_rank} at {sorted(table.entries)} in {seconds:.3f}s")


def test_ac2_divide_and_conquer():
    d = parse_pd(FIGURE_EIGHT)
    # the cut separates the two positive crossings from the two negative ones
    left = [k for k, s in enumerate(d.signs) if s > 0]
    right = [k for k, s in enumerate(d.signs) if s < 0]
    res = divide_and_conquer_result(d, (left, right))
    same = homology(res.complex) == homology(scan(d))
    ok = res.tensor_objects == 9 and res.naive_objects == 16 and same
    report(
        "AC2",
        ok,
        f"cut {left}|{right}: halves {res.left.object_count}+{res.right.object_count} objects, "
        f"tensor {res.tensor_objects} objects vs {res.naive_objects} in the cube",
    )


def test_ac3_oracle_equivalence():
    corpus = load_corpus()
    primes = sum(e.kind == "prime" for e in corpus)
    randoms = sum(e.kind == "random" for e in corpus)
    start = time.perf_counter()
    mismatches = []
    for e in corpus:
        for ring in (ZZ, QQ, PrimeField(2)):
            if homology(scan(e.diagram, ring=ring)) != homology(cube_complex(e.diagram, ring)):
                mismatches.append(f"{e.name}/{ring.name}")
    seconds = time.perf_counter() - start
    ok = not mismatches and seconds < 300 and primes == 35 and randoms == 50
    report(
        "AC3",
        ok,
        f"{len(corpus)} diagrams ({primes} prime, {randoms} random) x Z,Q,F2: "
        f"{len(mismatches)} mismatches {mismatches[:5]} in {seconds:.1f}s",
    )


def test_ac4_euler_conservation():
    corpus = load_corpus()
    start = time.perf_counter()
    bad = []
    for e in corpus:
        # check mode asserts Euler characteristic and validity after every step
        try:
            c = scan(e.diagram, check=True)
        except AssertionError as exc:
            bad.append(f"{e.name}: {exc}")
            continue
        if euler_characteristic(c) != kauffman_bracket(e.diagram):
            bad.append(f"{e.name}: differs from the bracket")
    seconds = time.perf_counter() - start
    report("AC4", not bad, f"{len(corpus)} diagrams, {len(bad)} failures {bad[:3]} in {seconds:.1f}s")


def test_ac5_reidemeister(capsys):
    start = time.perf_counter()
    code = cli_main(["verify", "--json"])
    seconds = time.perf_counter() - start
    out = capsys.readouterr().out
    data = json.loads(out)
    summary = {c["name"]: c["ok"] for c in data["checks"]}
    ok = code == 0 and data["ok"] and seconds < 10
    report("AC5", ok, f"exit {code}, {summary} in {seconds:.2f}s")


# ---------------------------------------------------------------------------
# AC6


T87_CELLS = {
    # (r, j): (free rank, torsion orders) with q = 2r + j
    (0, 41): (1, ()),
    (0, 43): (1, ()),
    (3, 41): (0, (2,)),
    (3, 43): (1, ()),
    (12, 37): (0, (2, 5)),
    (22, 29): (0, (2, 4, 5, 7)),
    (26, 27): (0, (2, 3)),
}


def torus_jones(p: int, q: int) -> LaurentPolynomial:
    """Unnormalised Jones polynomial of the positive torus knot, in ``q`` with ``t = q^2``."""
    from sympy import Poly, div, symbols

    t = symbols("t")
    num = Poly(1 - t ** (p + 1) - t ** (q + 1) + t ** (p + q), t)
    quo, rem = div(num, Poly(1 - t**2, t))
    assert rem.is_zero
    shift = (p - 1) * (q - 1) // 2
    jones = LaurentPolynomial({2 * (e + shift): int(c) for (e,), c in quo.terms()})
    return jones * LaurentPolynomial.q_plus_q_inverse(1)


def _torus_run(p, q, limit):
    from fastkh.cli import LimitExceeded, time_limit

    start = time.perf_counter()
    try:
        with time_limit(limit):
            state = scan_state(torus_knot(p, q), "greedy")
            table = homology(state.current)
    except LimitExceeded:
        return None, None, time.perf_counter() - start
    return state, table, time.perf_counter() - start


def test_ac6_torus_8_7():
    state, table, seconds = _torus_run(8, 7, 3600)
    if table is not None:
        cells = {}
        for (r, j), (free, torsion) in T87_CELLS.items():
            cells[r, j] = table.same_group(r, 2 * r + j, free, torsion)
        euler_ok = table_euler(table) == torus_jones(8, 7)
        ok = all(cells.values()) and euler_ok and seconds < 3600
        wrong = [k for k, v in cells.items() if not v]
        report(
            "AC6",
            ok,
            f"T(8,7) {torus_knot(8, 7).n} crossings in {seconds:.0f}s, peak {state.peak_objects} "
            f"objects; {len(cells) - len(wrong)}/{len(cells)} reference cells match {wrong}, "
            f"Euler characteristic = Jones: {euler_ok}",
        )
        return
    # fallback: T(7,6) within 30 minutes, checked through its Jones polynomial
    state, table, seconds = _torus_run(7, 6, 1800)
    ok = table is not None and table_euler(table) == torus_jones(7, 6)
    report("AC6", False if table is None else ok, f"T(8,7) over 1h; fallback T(7,6) in {seconds:.0f}s")


# ---------------------------------------------------------------------------
# AC7


def _stepwise_checks(d):
    """Attach crossings one at a time through the generic tensor, checking each step.

    Returns (steps checked, eliminations seen, failure messages).
    """
    stages = []
    scan_tangle(
        d.crossings,
        ring=ZZ,
        free_loops=len(d.loops),
        on_progress=lambda s: stages.append((s.current, s.open_boundary)),
    )
    problems = []
    steps = 0
    elims = 0
    prev = simplify(FormalComplex(0, [[Smoothing((), len(d.loops))]], [], ZZ))
    boundary = ()
    for k, x in enumerate(d.crossings):
        g = glue_data(boundary, x, strict=False)
        t = tensor(g.spec, prev, crossing_complex(x.sign, ZZ))
        if not validate(t):
            problems.append(f"tensor at crossing {k}")
        count = [t.object_count]

        def hook(work, what, count=count):
            nonlocal steps, elims
            steps += 1
            now = len(work)
            if what == "eliminate":
                elims += 1
                if now != count[0] - 2:
                    problems.append(f"elimination went {count[0]} -> {now}")
            elif now != count[0] + 1:
                problems.append(f"deloop went {count[0]} -> {now}")
            count[0] = now
            check = validate(work.to_formal())
            if not check:
                problems.append(f"after {what}: {check.message}")

        prev = simplify(t, on_step=hook)
        boundary = g.boundary
    if d.n and homology(prev) != homology(stages[-1][0]):
        problems.append("stepwise result differs from the scan")
    return steps, elims, problems


def test_ac7_property_suite():
    corpus = load_corpus()
    small = [e for e in corpus if e.diagram.n <= 6]
    start = time.perf_counter()
    failures = []

    # d∘d = 0 and degree homogeneity after every transformation; every
    # elimination removes exactly two objects
    steps = elims = 0
    for e in small:
        s, el, problems = _stepwise_checks(e.diagram)
        steps += s
        elims += el
        failures += [f"{e.name}: {p}" for p in problems]

    # Smith normal form on random matrices and on every matrix of the corpus
    rng = random.Random(7)
    snf_checked = 0
    mats = []
    for _ in range(300):
        m, n = rng.randint(1, 7), rng.randint(1, 7)
        mats.append([[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)])
    for e in corpus:
        g = cube_complex(e.diagram) if e.diagram.n <= 5 else to_graded(scan(e.diagram))
        for q in g.degrees:
            for r in g.dims[q]:
                if g.matrix(r, q):
                    mats.append(g.dense(r, q))
    for A in mats:
        res = smith_normal_form(A)
        UA = [[sum(a * b for a, b in zip(row, col)) for col in zip(*A)] for row in res.U]
        UAV = [[sum(a * b for a, b in zip(row, col)) for col in zip(*res.V)] for row in UA]
        unimodular = abs(Matrix(res.U).det()) == 1 and abs(Matrix(res.V).det()) == 1
        chain = all(b % a == 0 for a, b in zip(res.divisors, res.divisors[1:]))
        entries = {(i, j): v for i, row in enumerate(A) for j, v in enumerate(row) if v}
        sparse = elementary_divisors(entries, ZZ) == (
            res.rank,
            [x for x in res.divisors if x != 1],
        )
        if UAV != res.D or not unimodular or not chain or not sparse:
            failures.append(f"SNF of {A}")
        snf_checked += 1

    # homology does not depend on the crossing order
    orders = 0
    for e in small:
        d = e.diagram
        ref = homology(scan(d))
        for perm in itertools.permutations(range(d.n)):
            orders += 1
            if homology(scan(d, perm)) != ref:
                failures.append(f"{e.name} order {perm}")
                break
    seconds = time.perf_counter() - start
    report(
        "AC7",
        not failures,
        f"{steps} checked steps ({elims} eliminations) on {len(small)} diagrams, "
        f"{snf_checked} SNF re-multiplications, {orders} crossing orders; "
        f"{len(failures)} failures {failures[:3]} in {seconds:.1f}s",
    )


if __name__ == "__main__":
    import pytest

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider", *sys.argv[1:]]))
