import math

import pytest

import isoflow

SQUARE = {"type": "polygon", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}
COS2 = {"type": "fourier", "a0": 1, "cos": [0, 0.1], "sin": [0, 0]}


def test_square_summary_and_offset():
    s = isoflow.summary(SQUARE)
    assert s["area"] == pytest.approx(1.0, abs=1e-15)
    assert s["ratio"] == pytest.approx(4 / math.pi, abs=1e-15)
    o = isoflow.offset_summary(SQUARE, 1.0)
    assert o["area"] == pytest.approx(math.pi + 5, abs=1e-12)
    assert o["perimeter"] == pytest.approx(2 * math.pi + 4, abs=1e-12)
    assert o["deficit"] == pytest.approx(s["deficit"], abs=1e-12)


def test_json_text_is_accepted():
    assert isoflow.summary('{"type":"fourier","a0":1}')["ratio"] == pytest.approx(1.0, abs=1e-15)


def test_flow_closed_forms():
    assert isoflow.ratio_of_neighborhood(1, 4, 1) == pytest.approx(1.03356094518124606, abs=1e-15)
    assert isoflow.flow_ratio(1, 4, 0) == 1.0
    assert isoflow.flow_ratio_derivative(1, 4, 1) == pytest.approx(0.0423889321250531389, abs=1e-15)
    assert isoflow.flow_ratio_second_derivative(1, 4, 0) == pytest.approx(0.173949696771120828, abs=1e-15)
    report = isoflow.flow_report(SQUARE, 5.0, 20)
    assert report["max_residual"] <= 1e-6


def test_variation_and_recovery():
    v = isoflow.variation(COS2)
    assert abs(v["I1"]) <= 1e-10
    assert v["I2"] == pytest.approx(0.03, abs=1e-4)
    rejected = isoflow.recover(COS2)
    assert rejected["rejected"] is True
    disk = {"type": "fourier", "a0": 2, "cos": [0.3], "sin": [0.4]}
    found = isoflow.recover(disk)
    assert found["center"] == pytest.approx([0.3, 0.4], abs=1e-9)
    assert found["radius"] == pytest.approx(2.0, abs=1e-12)
    rounded = isoflow.variation(SQUARE, round=0.05)
    assert rounded["I2"] == pytest.approx((16 - 4 * math.pi) / (2 * math.pi**2), abs=1e-3)


def test_wirtinger():
    pure = isoflow.wirtinger({"type": "fourier", "a0": 0, "cos": [0.7], "sin": [-0.2]})
    assert pure["equality_certificate"] == pytest.approx([0.7, -0.2], abs=1e-12)
    second = isoflow.wirtinger({"type": "fourier", "a0": 0, "cos": [0, 1]})
    assert second["slack"] == pytest.approx(3 * math.pi, abs=1e-12)
    assert second["equality_certificate"] is None


def test_errors_map_to_python_exceptions():
    with pytest.raises(isoflow.InvalidBody):
        isoflow.summary({"type": "polygon", "vertices": [[0, 0], [2, 0], [1, 0.2], [1, 2]]})
    with pytest.raises(isoflow.ParseError):
        isoflow.summary('{"type": "polygon", "vertices": [[0, 0],]}')
    with pytest.raises(isoflow.InvalidArgument):
        isoflow.variation(SQUARE)
    with pytest.raises(isoflow.DomainError):
        isoflow.flow_ratio(1, 4, -1.5)
    assert issubclass(isoflow.InvalidBody, isoflow.Error)


def test_verify_is_deterministic_and_replayable():
    a = isoflow.verify(count=40, seed=42, text=True)
    assert a == isoflow.verify(count=40, seed=42, text=True)
    assert a.rstrip().endswith("result: PASS (23/23 properties)")
    forced = isoflow.verify(count=3, tolerance_scale=0.0)
    assert forced["passed"] is False
    case = next(f for p in forced["properties"] for f in p["failures"])
    assert isoflow.replay(case, 0.0)["passed"] is False
    assert isoflow.replay(case)["passed"] is True
