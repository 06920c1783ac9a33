from fractions import Fraction

import pytest

import sext

PATH = sext.space([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
PAIR = sext.space([[0, 1], [1, 0]])


def test_extend_path_verifies():
    ext = sext.extend(PATH)
    report = sext.verify(ext)
    assert report["ok"] and report["full_partials"]
    assert report["points"] >= 4
    assert sext.is_homogeneous(sext.minimalize(ext)["space"])


@pytest.mark.parametrize("route", ["quotient", "action"])
def test_routes(route):
    assert sext.verify(sext.extend(PATH, route=route))["ok"]


def test_oracle_finds_four_cycle():
    r = sext.oracle(PATH, max_size=4)
    assert r["found"]
    assert len(r["extension"]["space"]["points"]) == 4


def test_coherent_pair_in_path():
    e1 = sext.extend(PAIR)
    r = sext.coherent(e1, PATH, {"x0": "x0", "x1": "x1"})
    assert r["coherent"]
    assert sext.verify(r)["ok"]


def test_ultra_extend_keeps_distances():
    x = sext.space([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    ext = sext.ultra_extend(x)
    assert sext.verify(ext)["ok"]
    values = {Fraction(v) for row in ext["space"]["dist"] for v in row} - {0}
    assert values == {1, 2}
    assert sext.is_homogeneous(ext["space"])


def test_fractions_accepted():
    x = sext.space([[0, Fraction(1, 2)], [Fraction(1, 2), 0]])
    assert x["dist"][0][1] == "1/2"
    assert sext.verify(sext.extend(x))["ok"]


def test_errors_raise():
    with pytest.raises(sext.Error, match="TriangleViolation"):
        sext.extend(sext.space([[0, 1, 3], [1, 0, 1], [3, 1, 0]]))
    with pytest.raises(sext.Error, match="InvalidInput"):
        sext.verify({"base": {}})
