"""Build src/fastkh/data/corpus.json.

Prime knots up to 8 crossings are given by Dowker-Thistlethwaite codes and
turned into PD codes through a planar embedding of the knot projection (each
crossing is wrapped in a 4-cycle so that the embedding is forced to be
transversal).  Every diagram is checked against its known determinant.
Random diagrams are braid closures and crossing flips drawn from a seeded
generator.  Run from the repository root:

    python3 scripts/build_corpus.py
"""

from __future__ import annotations

import json
import random
from pathlib import Path

import networkx as nx

from fastkh.oracle import kauffman_bracket
from fastkh.planar import braid_closure, build_diagram, mirror, to_json

DT = {
    "3_1": ([4, 6, 2], 3),
    "4_1": ([4, 6, 8, 2], 5),
    "5_1": ([6, 8, 10, 2, 4], 5),
    "5_2": ([4, 8, 10, 2, 6], 7),
    "6_1": ([4, 8, 12, 10, 2, 6], 9),
    "6_2": ([4, 8, 10, 12, 2, 6], 11),
    "6_3": ([4, 8, 10, 2, 12, 6], 13),
    "7_1": ([8, 10, 12, 14, 2, 4, 6], 7),
    "7_2": ([4, 10, 14, 12, 2, 8, 6], 11),
    "7_3": ([6, 10, 12, 14, 2, 4, 8], 13),
    "7_4": ([6, 10, 12, 14, 4, 2, 8], 15),
    "7_5": ([4, 10, 12, 14, 2, 8, 6], 17),
    "7_6": ([4, 8, 12, 2, 14, 6, 10], 19),
    "7_7": ([4, 8, 10, 12, 2, 14, 6], 21),
    "8_1": ([4, 10, 16, 14, 12, 2, 8, 6], 13),
    "8_2": ([4, 10, 12, 14, 16, 2, 6, 8], 17),
    "8_3": ([6, 12, 10, 16, 14, 4, 2, 8], 17),
    "8_4": ([6, 10, 12, 16, 14, 4, 2, 8], 19),
    "8_5": ([6, 8, 12, 2, 14, 16, 4, 10], 21),
    "8_6": ([4, 10, 14, 16, 12, 2, 8, 6], 23),
    "8_7": ([4, 10, 12, 14, 2, 16, 6, 8], 23),
    "8_8": ([4, 8, 12, 2, 16, 14, 6, 10], 25),
    "8_9": ([6, 10, 12, 14, 16, 4, 2, 8], 25),
    "8_10": ([4, 8, 12, 2, 14, 16, 6, 10], 27),
    "8_11": ([4, 10, 12, 14, 16, 2, 8, 6], 27),
    "8_12": ([4, 8, 14, 10, 2, 16, 6, 12], 29),
    "8_13": ([4, 10, 12, 14, 2, 16, 8, 6], 29),
    "8_14": ([4, 8, 10, 14, 2, 16, 6, 12], 31),
    "8_15": ([4, 8, 12, 2, 14, 6, 16, 10], 33),
    "8_16": ([6, 8, 14, 12, 4, 16, 2, 10], 35),
    "8_17": ([6, 8, 12, 14, 4, 16, 2, 10], 37),
    "8_18": ([6, 8, 10, 12, 14, 16, 2, 4], 45),
    "8_19": ([4, 8, -12, 2, -14, -16, -6, -10], 3),
    "8_20": ([4, 8, -12, 2, -14, -6, -16, -10], 9),
    "8_21": ([4, 8, -12, 2, 14, -6, 16, 10], 15),
}


def dt_to_pd(code: list[int]) -> list[tuple[int, int, int, int]]:
    """PD code of the knot with DT code ``code`` (up to mirror image)."""
    n = len(code)
    m = 2 * n
    under = {}
    for k, even in enumerate(code):
        odd = 2 * k + 1
        # a positive even entry means the strand passes under at the even visit
        under[k] = abs(even) if even > 0 else odd
    def edge_in(i):  # edge arriving at visit i; edge j runs from visit j to j+1
        return m if i == 1 else i - 1

    g = nx.Graph()
    for k, even in enumerate(code):
        odd, ev = 2 * k + 1, abs(even)
        arms = [("in", odd), ("in", ev), ("out", odd), ("out", ev)]
        for a in arms:
            g.add_edge(("x", k), a)
        for a, b in zip(arms, arms[1:] + arms[:1]):
            g.add_edge(a, b)
    for i in range(1, m + 1):
        j = 1 if i == m else i + 1
        g.add_edge(("out", i), ("mid", i))
        g.add_edge(("mid", i), ("in", j))
    planar, emb = nx.check_planarity(g)
    if not planar:
        raise ValueError(f"DT code {code} is not realisable")

    pd = []
    for k in range(n):
        ccw = list(emb.neighbors_cw_order(("x", k)))[::-1]
        u = under[k]
        start = ccw.index(("in", u))
        ccw = ccw[start:] + ccw[:start]
        pd.append(tuple(edge_in(i) if kind == "in" else i for kind, i in ccw))
    return pd


def determinant(d) -> int:
    """|J(-1)| from the unnormalised Jones polynomial: half |d/dq| at q = i."""
    jones = kauffman_bracket(d)
    deriv = sum(c * e * (1j) ** (e - 1) for e, c in jones.coeffs.items())
    return round(abs(deriv) / 2)


def flip(crossings, signs, k):
    a, b, c, e = crossings[k]
    out = list(crossings)
    out[k] = (e, a, b, c) if signs[k] > 0 else (b, c, e, a)
    return out


def main() -> None:
    rng = random.Random(20240607)
    entries = []
    for name, (code, det) in DT.items():
        d = build_diagram(dt_to_pd(code))
        got = determinant(d)
        if got != det:
            raise SystemExit(f"{name}: determinant {got}, expected {det}")
        entries.append({"name": name, "kind": "prime", "knot": name, "pd": json.loads(to_json(d))})

    count = 0
    while count < 50:
        if count % 2 == 0:
            strands = rng.choice([2, 3, 4])
            length = rng.randint(max(2, strands), 8)
            word = [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(length)]
            d = braid_closure(word, strands)
            label = f"braid {word} on {strands} strands"
        else:
            base = entries[rng.randrange(len(DT))]
            d0 = build_diagram(base["pd"]["crossings"])
            picks = rng.sample(range(d0.n), rng.randint(1, max(1, d0.n // 2)))
            crossings = [x.edges for x in d0.crossings]
            signs = d0.signs
            for k in picks:
                crossings = flip(crossings, signs, k)
            d = build_diagram(crossings)
            label = f"{base['name']} with crossings {sorted(picks)} flipped"
        if d.n == 0 or d.n > 8:
            continue
        entries.append(
            {"name": f"random_{count:02d}", "kind": "random", "knot": label, "pd": json.loads(to_json(d))}
        )
        count += 1

    # diagrams of one knot related by Reidemeister moves
    groups = {
        "trefoil": [([1, 1, 1], 2), ([1, 1, 1, 2], 3), ([1, 1, 1, -2], 3), ([1, 1, 1, 2, -3], 4)],
        "figure eight": [([1, -2, 1, -2], 3), ([1, -2, 1, -2, 3], 4), ([-2, 1, -2, 1], 3)],
        "5_1": [([1] * 5, 2), ([1] * 5 + [2], 3), ([1] * 5 + [-2], 3)],
        "hopf": [([1, 1], 2), ([1, 1, 2], 3), ([1, 1, -2], 3)],
    }
    for group, words in groups.items():
        for k, (word, strands) in enumerate(words):
            d = braid_closure(word, strands)
            entries.append(
                {
                    "name": f"{group.replace(' ', '_')}_variant_{k}",
                    "kind": "reidemeister",
                    "knot": group,
                    "pd": json.loads(to_json(d)),
                }
            )
    entries.append({"name": "unknot", "kind": "trivial", "knot": "unknot", "pd": {"crossings": [], "loops": [1]}})
    entries.append(
        {"name": "3_1_mirror", "kind": "mirror", "knot": "3_1 mirror",
         "pd": json.loads(to_json(mirror(build_diagram(entries[0]["pd"]["crossings"]))))}
    )
    out = Path(__file__).resolve().parents[1] / "src" / "fastkh" / "data" / "corpus.json"
    out.write_text(json.dumps({"diagrams": entries}, indent=1) + "\n")
    print(f"wrote {len(entries)} diagrams to {out}")


if __name__ == "__main__":
    main()
