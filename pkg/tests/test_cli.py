import csv
import json
import os

import pytest

from weylab.cli import (CSV_HEADER, bundled_scenarios, list_registry, main,
                        parse_scenarios)
from weylab.core import ScenarioError


def _read_csv(path):
    with open(path) as fh:
        return list(csv.reader(fh))


def test_parse_scenarios_minimal():
    scs = parse_scenarios(
        "[scenario:alpha]\n"
        "operation = estimate\n"
        "system = odometer\n"
        "pair = int:0 | int:5\n"
        "max_exponent = 3\n"
        "kinds = weyl, hat\n")
    assert len(scs) == 1
    sc = scs[0]
    assert sc.name == "alpha" and sc.operation == "estimate"
    assert sc.pairs == (("int:0", "int:5"),)
    assert sc.kinds == ("weyl", "hat")
    assert sc.seed is None and sc.lo_exponent is None


def test_parse_scenarios_rejects_unknowns():
    with pytest.raises(ScenarioError):
        parse_scenarios("[scenario:x]\noperation = transmogrify\n")
    with pytest.raises(ScenarioError):
        parse_scenarios("[scenario:x]\noperation = estimate\nwobble = 3\n")
    with pytest.raises(ScenarioError):
        parse_scenarios("[other:x]\noperation = estimate\n")
    with pytest.raises(ScenarioError):
        parse_scenarios("[scenario:x]\noperation = estimate\n"
                        "pair = int:0 | int:1\npairs = int:0 | int:1\n")
    with pytest.raises(ScenarioError):
        parse_scenarios("[scenario:x]\noperation = estimate\n"
                        "pair = int:0\n")


def test_parse_tolerances_key():
    scs = parse_scenarios(
        "[scenario:t]\noperation = estimate\nsystem = odometer\n"
        "pair = int:0 | int:1\nmax_exponent = 2\n"
        "tolerances = zero=0.02 sep=0.2 ratio=0.5\n")
    tol = scs[0].tolerances
    assert (tol.zero_tol, tol.sep_tol, tol.delta_ratio) == (0.02, 0.2, 0.5)
    with pytest.raises(ScenarioError):
        parse_scenarios("[scenario:t]\noperation = estimate\n"
                        "tolerances = fuzz=1\n")


def test_list_command_contents():
    text = list_registry()
    assert "thuemorse" in text
    assert "tm.pi" in text
    assert main(["list"]) == 0


def test_registry_listing_is_sorted():
    text = list_registry()
    lines = text.splitlines()
    sys_block = lines[lines.index("systems:") + 1:lines.index("factor maps:")]
    ids = [ln.split()[0] for ln in sys_block]
    assert ids == sorted(ids)
    fac_block = lines[lines.index("factor maps:") + 1:
                      lines.index("bundled scenarios:")]
    fids = [ln.split()[0] for ln in fac_block]
    assert fids == sorted(fids)
    assert list(bundled_scenarios()) == sorted(bundled_scenarios())


def test_run_bundled_tm_fibre(tmp_path):
    out = tmp_path / "a"
    assert main(["run", "tm-fibre-D", "--out", str(out)]) == 0
    rows = _read_csv(out / "results.csv")
    assert rows[0] == list(CSV_HEADER)
    weyl_rows = [r for r in rows[1:] if r[4] == "weyl"]
    assert weyl_rows[-1][5] == "1.0"  # final weyl value
    assert all(r[5] == "1.0" for r in weyl_rows)
    verdicts = json.loads((out / "verdicts.json").read_text())
    assert verdicts["tm-fibre-D"]["pairs"]["p000"]["weyl"] == 1.0


def test_run_is_bit_identical_across_runs(tmp_path):
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    assert main(["run", "tm-fibre-D", "--out", str(out1)]) == 0
    assert main(["run", "tm-fibre-D", "--out", str(out2), "--threads",
                 "3"]) == 0
    assert (out1 / "results.csv").read_bytes() \
        == (out2 / "results.csv").read_bytes()
    assert (out1 / "verdicts.json").read_bytes() \
        == (out2 / "verdicts.json").read_bytes()


def test_run_bundled_interval_weyl(tmp_path):
    out = tmp_path / "b"
    assert main(["run", "ex61-weyl", "--out", str(out)]) == 0
    rows = _read_csv(out / "results.csv")
    final = [r for r in rows[1:] if r[4] == "weyl"][-1]
    assert abs(float(final[5]) - 2 / 3) <= 0.05 * (2 / 3)


def test_empty_scenario_file_is_a_clean_noop(tmp_path):
    path = tmp_path / "empty.ini"
    path.write_text("# no scenarios here\n")
    out = tmp_path / "never"
    assert main(["run", str(path), "--out", str(out)]) == 0
    assert not out.exists()


def test_usage_errors_exit_one(tmp_path, capsys):
    assert main(["run", str(tmp_path / "missing.ini")]) == 1
    assert main(["frobnicate"]) == 1
    bad = tmp_path / "bad.ini"
    bad.write_text("[scenario:x]\noperation = estimate\nbogus = 1\n")
    assert main(["run", str(bad)]) == 1
    unparseable = tmp_path / "broken.ini"
    unparseable.write_text("not an ini file at all\n")
    assert main(["run", str(unparseable)]) == 1
    capsys.readouterr()


def test_seed_is_mandatory_for_sampled_operations(tmp_path, capsys):
    path = tmp_path / "s.ini"
    path.write_text("[scenario:x]\noperation = classify\nfactor = tm.psi\n"
                    "max_exponent = 6\n")
    assert main(["run", str(path)]) == 1
    err = capsys.readouterr().err
    assert "seed is mandatory" in err
    # --seed on the command line satisfies the requirement
    out = tmp_path / "o"
    assert main(["run", str(path), "--seed", "4", "--out", str(out)]) == 0


def test_verdict_failure_exits_two(tmp_path):
    path = tmp_path / "fail.ini"
    path.write_text(
        "[scenario:gamma-plain]\n"
        "operation = language-check\n"
        "system = toeplitz\n"
        "point = addr=int:0 flag=plain\n"
        "radius = 64\n"
        "max_word_length = 2\n"
        "substitution = period-doubling\n"
        "exchanged = no\n")
    out = tmp_path / "o"
    assert main(["run", str(path), "--out", str(out)]) == 2
    verdicts = json.loads((out / "verdicts.json").read_text())
    assert verdicts["gamma-plain"]["passed"] is False
    assert verdicts["gamma-plain"]["fractions"]["2"] < 1.0


def test_language_check_passes_with_exchange(tmp_path):
    path = tmp_path / "ok.ini"
    path.write_text(
        "[scenario:gamma-exchanged]\n"
        "operation = language-check\n"
        "system = toeplitz\n"
        "point = addr=int:0 flag=plain\n"
        "radius = 4096\n"
        "max_word_length = 6\n"
        "substitution = period-doubling\n"
        "exchanged = yes\n"
        "out = gamma.csv\n")
    out = tmp_path / "o"
    assert main(["run", str(path), "--out", str(out)]) == 0
    own = _read_csv(out / "gamma.csv")
    assert own[0] == list(CSV_HEADER)
    assert len(own) == 7  # header + one row per word length
    assert all(r[5] == "1.0" for r in own[1:])


def test_stdout_mode_prints_csv_then_json(tmp_path, capsys):
    path = tmp_path / "tiny.ini"
    path.write_text("[scenario:tiny]\noperation = estimate\n"
                    "system = odometer\npair = int:0 | int:1\n"
                    "max_exponent = 2\nkinds = besicovitch\n")
    assert main(["run", str(path)]) == 0
    outtext = capsys.readouterr().out
    assert outtext.startswith(",".join(CSV_HEADER))
    assert '"tiny"' in outtext
