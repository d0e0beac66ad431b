import json

from fastkh.rings import QQ, ZZ
from fastkh.verify import check_r1, check_r2, check_r3, planar_matchings, report_json, run_all


def test_planar_matchings_are_catalan():
    assert [len(planar_matchings(n)) for n in (0, 2, 4, 6, 8)] == [1, 1, 2, 5, 14]


def test_r1():
    report = check_r1()
    assert report.ok
    assert len(report.details) == 4
    for case in report.details.values():
        assert case["objects_before"] == 2
        assert case["deloops"] == 1
        assert case["eliminations"] == 1
        assert case["objects_after"] == 1


def test_r2():
    report = check_r2()
    assert report.ok
    for case in report.details.values():
        assert case["objects_before"] == 4
        assert case["deloops"] == 1
        assert case["eliminations"] == 2
        assert case["result"] == [[0, "(0 3)(1 2)"]]


def test_r3():
    report = check_r3()
    assert report.ok
    assert report.details["closures"] == 69
    assert report.details["same_objects"]
    a, b = report.details["objects"]
    assert a == b


def test_r3_negative_control():
    # the two sides of a non-relation must be told apart
    report = check_r3(words=((1, 2, 1), (1, 2, -1)))
    assert not report.ok
    assert report.details["mismatches"] or not report.details["same_objects"]


def test_run_all_over_q():
    reports = run_all(QQ)
    assert all(r.ok for r in reports)
    data = json.loads(report_json(reports))
    assert data["ok"] and [c["name"] for c in data["checks"]] == ["R1", "R2", "R3"]
