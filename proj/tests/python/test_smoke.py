import json
import math
import os
from pathlib import Path

import pytest

import flatpunct as fp

DATA = Path(os.environ.get("FLATPUNCT_TEST_DATA", Path(__file__).resolve().parents[1] / "data"))


def canonical(*lengths):
    return fp.Metric(["-2/3"] * 3, list(lengths))


def test_metric_basics():
    m = fp.Metric(["-1/3", "-1/3", "-2/3", "-2/3"], [1, 1, 1, 1])
    assert len(m) == 4
    assert m.exact_total_pi == "-2"
    assert fp.total_curvature(m) == pytest.approx(-2 * math.pi)
    assert fp.puncture_curvature(m) == pytest.approx(4 * math.pi)
    assert fp.validate(m)["valid"]
    assert fp.canonical_count(-2 * math.pi) == 3
    assert fp.canonical_count(0.0) == "cylinder"


def test_json_round_trip():
    doc = json.loads((DATA / "quad.json").read_text())
    m = fp.Metric.from_json(doc)
    again = fp.Metric.from_json(m.to_json())
    assert again.lengths == m.lengths


def test_canonicalize_merges_to_three():
    m = fp.Metric(["-1/3", "-1/3", "-2/3", "-2/3"], [1, 1, 1, 1])
    c = fp.canonicalize(m)
    assert c["n"] == 3
    assert sorted(c["lengths"]) == pytest.approx([1, 2, 2])
    replayed = fp.apply_plan(m, c["plan"])
    assert sorted(replayed.lengths) == pytest.approx([1, 2, 2])


def test_tri_cut():
    m = fp.Metric(["-1/3", "-1/3", "-2/3", "-2/3"], [1, 1, 1, 1])
    out = fp.apply_tri_cut(m, 0, 1 / 3, 1 / 3)
    assert len(out) == 3
    assert all(k == pytest.approx(-2 * math.pi / 3) for k in out.kappas)


def test_equivalence_and_classification():
    yes = fp.equivalent(canonical(1, 2, 3), canonical(2, 3, 4))
    assert yes["equivalent"] and yes["certificate"] is not None
    assert not fp.equivalent(canonical(1, 2, 3), canonical(1, 2, 4))["equivalent"]
    r = fp.classify(canonical(1, 2, 3))
    assert r["regular"] is False
    assert r["puncture_curvature_pi_exact"] == "4"
    assert fp.classify(canonical(1, 1, 1))["regular"] is True


def test_invariant_and_cone():
    inv = fp.invariant(canonical(1, 2, 3))
    assert inv["kind"] == "torsion_class"
    assert inv["representative"] == pytest.approx((1, 2))
    cone = fp.cone_completion(fp.Metric([-0.5], [4]))
    assert cone["n"] == 1
    assert cone["pieces"][0]["angles"][0] == pytest.approx(math.pi / 2)


def test_circulant():
    s = fp.principal_singularity(-2, 3)
    assert s["singular"] and s["vanishing"] == [1, 2]
    assert fp.circulant_determinant([1, math.sqrt(2), 1, 0]) == pytest.approx(4)


def test_svg_matches_golden():
    m = fp.Metric.from_json(json.loads((DATA / "right_iso.json").read_text()))
    assert fp.render_svg(m) == (DATA / "golden" / "right_iso.svg").read_text()


def test_errors_raise():
    with pytest.raises(fp.FlatpunctError):
        fp.canonicalize(fp.Metric([-1, -1], [1, 0]))


def test_cli_in_process():
    code, out, _ = fp.run_cli(["classify", str(DATA / "c123.json"), "--exact"])
    assert code == 0
    assert json.loads(out)["regular"] is False
