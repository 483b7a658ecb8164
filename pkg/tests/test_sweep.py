import json
from fractions import Fraction

import pytest

import cliffcert.sweep as sw
from cliffcert.errors import CeilingExceeded, ParameterError
from cliffcert.sweep import SweepConfig, SweepReport, load_config, parse_config, run_sweep


def fo_small(**kw):
    base = dict(family_kind="farkas_ortega", p_range=(3, 4), a_range=(0, 2),
                a_mode="offset_from_p", n_range=(2, 3), validate_with_oracle=True)
    base.update(kw)
    return SweepConfig(**base)


def test_farkas_ortega_small_grid():
    report = run_sweep(fo_small())
    # 2 values of p x 3 of a x 2 of n
    assert report.summary["total"] == 12
    assert report.summary["oracle_mismatches"] == 0
    keys = [(r.p, r.a, r.n) for r in report.rows]
    assert keys == sorted(keys)
    assert keys[0] == (3, 9, 2) and keys[-1] == (4, 13, 3)
    row = next(r for r in report.rows if (r.p, r.a, r.n) == (3, 11, 2))
    assert (row.verdict, row.margin, row.gonality) == ("certified_counterexample", 3, 30)


def test_generic_grid_all_certified():
    report = run_sweep(SweepConfig(family_kind="generic", g_range=(9, 12), n_range=(2, 2)))
    assert report.summary["total"] == 4
    assert report.summary["certified"] == 4
    assert all(r.oracle_match for r in report.rows)


def test_n1_rows_have_no_closed_form():
    report = run_sweep(fo_small(n_range=(1, 1)))
    assert all(r.closed_form is None and r.verdict is None and r.oracle_match is None
               for r in report.rows)
    assert [r.reported_cliff for r in report.rows] == [r.a for r in report.rows]


def test_row_count_is_product():
    cfg = SweepConfig(family_kind="farkas_ortega", p_range=(3, 5), a_range=(20, 23), n_range=(1, 4))
    assert len(run_sweep(cfg).rows) == cfg.count() == 3 * 4 * 4


def test_validation_off():
    report = run_sweep(fo_small(validate_with_oracle=False))
    assert all(r.reported_cliff is None and r.oracle_match is None for r in report.rows)


@pytest.mark.parametrize(
    "kw",
    [dict(n_range=(3, 2)), dict(p_range=None), dict(family_kind="other"), dict(a_mode="relative"),
     dict(output_format="xml"), dict(n_range=(0, 2))],
)
def test_invalid_configs(kw):
    with pytest.raises(ParameterError):
        fo_small(**kw)


def test_ceiling(monkeypatch):
    monkeypatch.setenv("CLIFFCERT_MAX_TUPLES", "5")
    with pytest.raises(CeilingExceeded):
        run_sweep(fo_small())


def test_parallel_matches_serial():
    serial = run_sweep(fo_small())
    parallel = run_sweep(fo_small(workers=2))
    assert serial.to_csv() == parallel.to_csv()


def test_csv_header_and_margin_columns():
    csv_text = run_sweep(fo_small()).to_csv()
    lines = csv_text.splitlines()
    assert lines[0] == ",".join(sw.CSV_COLUMNS)
    assert lines[2] == "3,9,,3,31,31,true,hypotheses_not_met,-5,2,33"


def test_json_round_trip():
    report = run_sweep(fo_small())
    blob = json.loads(json.dumps(report.to_json()))
    assert SweepReport.from_json(blob) == report
    assert blob["rows"][1]["margin"] == {"num": -5, "den": 2}


def test_load_config_formats(tmp_path):
    kv = tmp_path / "grid.cfg"
    kv.write_text("# small grid\nfamily = farkas_ortega\np = 3..4\na = 0..2\na_mode = offset_from_p\n"
                  "n = 2..3\nvalidate = yes\n")
    js = tmp_path / "grid.json"
    js.write_text(json.dumps({"family": "farkas_ortega", "p": [3, 4], "a": [0, 2],
                              "a_mode": "offset_from_p", "n": [2, 3], "validate": True}))
    assert load_config(kv) == load_config(js) == fo_small()


def test_load_config_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParameterError):
        load_config(bad)
    bad = tmp_path / "bad.cfg"
    bad.write_text("family farkas_ortega\n")
    with pytest.raises(ParameterError):
        load_config(bad)
    with pytest.raises(ParameterError, match="unknown config key"):
        parse_config({"family": "generic", "g": 9, "n": 2, "colour": "red"})
    with pytest.raises(ParameterError):
        parse_config({"family": "generic", "g": 9})


def test_margins_are_exact():
    report = run_sweep(fo_small(n_range=(3, 3)))
    assert all(isinstance(r.margin, Fraction) and r.margin.denominator in (1, 2) for r in report.rows)
