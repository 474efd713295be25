"""Smoke tests for the Python bindings: build, solve, verify, round-trip."""

import json

import csched


def test_version():
    assert csched.__version__


def test_instance_roundtrip():
    text = json.dumps({"n": 3, "edges": [[0, 1], [1, 2]]})
    inst = csched.Instance.from_json(text)
    assert inst.n == 3
    back = json.loads(inst.to_json())
    assert back["n"] == 3
    assert [list(e) for e in back["edges"]] == [[0, 1], [1, 2]]


def test_solve_path_total_completion():
    inst = csched.Instance.from_json(json.dumps({"n": 3, "edges": [[0, 1], [1, 2]]}))
    res = csched.solve(inst, objective="sum_c")
    assert res["status"] == "optimal"
    assert res["value"] == 4
    # endpoints run together at time 1, the middle job afterwards
    assert res["schedule"] == [1, 2, 1]
    feas = csched.check_feasible(inst, res["schedule"])
    assert feas["feasible"]
    assert csched.evaluate(inst, res["schedule"], "sum_c") == 4


def test_solver_matches_oracle():
    inst = csched.Instance.from_json(
        json.dumps(
            {
                "n": 4,
                "edges": [[0, 1], [1, 2], [2, 3], [0, 3]],
                "jobs": [
                    {"id": 0, "p": 2},
                    {"id": 1, "p": 1, "r": 1},
                    {"id": 2, "p": 3},
                    {"id": 3, "p": 1, "d": 2},
                ],
            }
        )
    )
    for objective in ["cmax", "sum_c", "lmax", "sum_wt"]:
        got = csched.solve(inst, objective=objective)
        ref = csched.brute_force(inst, objective=objective)
        assert got["status"] == "optimal"
        assert ref["feasible"]
        assert got["value"] == ref["value"]


def test_decompose_and_horizon():
    inst = csched.Instance.from_json(
        json.dumps({"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]})
    )
    td = csched.decompose(inst)
    assert td.width == 1
    hb = csched.horizon(inst, td.width)
    assert hb["value"] >= 1


def test_reduction_verify_agrees():
    pce = csched.PrecoloringInstance.from_json(
        json.dumps({"n": 2, "edges": [[0, 1]], "k": 2, "precoloring": {}})
    )
    rep = csched.verify_reduction(pce, gadget="cmax")
    assert rep["decided"]
    assert rep["extension_yes"]
    assert rep["schedule_yes"]
    assert rep["agree"]
    assert rep["witness_checked"]
    assert rep["witness_maps_back"]


def test_reduction_no_case():
    # a triangle cannot be 2-colored
    pce = csched.PrecoloringInstance.from_json(
        json.dumps({"n": 3, "edges": [[0, 1], [1, 2], [0, 2]], "k": 2, "precoloring": {}})
    )
    rep = csched.verify_reduction(pce, gadget="cmax")
    assert rep["decided"]
    assert not rep["extension_yes"]
    assert not rep["schedule_yes"]
    assert rep["agree"]


def test_input_error_maps_to_value_error():
    try:
        csched.Instance.from_json("{\"n\": -1}")
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")
