import json

import pytest

import pfspectra as pf


def test_gleason_examples():
    t = pf.gleason(2, 4)
    assert t["G"][2] == [0, 1, 1, 2, 1]
    assert t["H"][3] == [1, 0, 2, 3, 3, 3, 1]


def test_poonen_pairs_are_units():
    pairs = pf.poonen(2, 5)
    assert len(pairs) == 10
    assert all(abs(r) == 1 for _, _, r in pairs)


def test_centers_count():
    for d, m in [(2, 5), (3, 4)]:
        assert len(pf.centers(d, m)) == pf.center_count(d, m)


def test_survey_gap():
    s = pf.survey(2, 6)
    assert s["passed"]
    flat = [abs(x) for ev in s["eigenvalues"] for x in ev]
    assert len(flat) == 27 * 4
    assert all(0.125 < r < 1 for r in flat)


def test_cycles_of_z_squared():
    mults = [c["multiplier"] for c in pf.cycles(2, 0j, 3) if not c["postcritical"]]
    assert [round(abs(x), 9) for x in mults] == [2, 4, 8, 8]


def test_unit_certificate():
    cert = pf.certify_units(2, 3)
    assert cert["passed"]
    assert cert["upsilon"] == [1, 3, 2, 1]


def test_errors_are_raised():
    with pytest.raises(pf.PfsError):
        pf.centers(1, 3)
    with pytest.raises(pf.PfsError):
        pf.certify_units(2, 12)


def test_cli_round_trip():
    code, out, err = pf.run_cli(["cycles", "--param", "0", "--max-period", "2"])
    assert code == 0
    assert json.loads(out)["critical_period"] == 1
    code, _, err = pf.run_cli(["survey", "--degree", "1", "--period", "3"])
    assert code == 2
    assert json.loads(err)["kind"] == "usage"
