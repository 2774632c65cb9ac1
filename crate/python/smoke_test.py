"""Smoke test for the pyhypercx extension.

    pip install --no-build-isolation ./crates/python
    python python/smoke_test.py
"""

import json
import pathlib

import pyhypercx

ROOT = pathlib.Path(__file__).resolve().parent.parent


def main():
    third = pyhypercx.Instance.family("gt", [("t", "1/3")])
    assert third.dimension == 8 and third.is_integrable()
    assert third.cohomology_dims("dolbeault")[2] == 4
    assert third.cohomology_dims("bott-chern")[2] == 5
    assert not third.hkt()

    half = pyhypercx.Instance.family("gt", [("t", "1/2")])
    assert half.hkt() and half.cohomology_dims("dolbeault")[2] == 6

    nil = pyhypercx.Instance.family("nilpotent8", [("t1", 1)])
    assert nil.is_nilpotent() and nil.sl() and not nil.hkt()

    report = json.loads(third.analyze())
    assert report["instance"]["label"] == "gt(t=1/3)"
    golden = (ROOT / "crates/core/tests/fixtures/gt_t13.report.json").read_text()
    assert third.analyze() == golden

    doc = (ROOT / "crates/core/tests/fixtures/heisenberg4.alg").read_text()
    heis = pyhypercx.Instance.from_json(doc)
    assert heis.dimension == 4

    try:
        pyhypercx.Instance.from_json((ROOT / "crates/core/tests/fixtures/broken.alg").read_text())
    except ValueError as e:
        assert "JACOBI_VIOLATION" in str(e)
    else:
        raise AssertionError("broken document accepted")

    try:
        pyhypercx.Instance.family("gt", [("t", "0.5")])
    except ValueError:
        pass
    else:
        raise AssertionError("float parameter accepted")

    sweep = json.loads(pyhypercx.sweep_grid("gt", [("t", ["1/4", "1/3", "1/2"])]))
    assert sweep["points"] == 3 and sweep["errors"] == 0

    print("ok:", third, half, nil, heis)


if __name__ == "__main__":
    main()
