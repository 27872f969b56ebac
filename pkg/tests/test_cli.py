"""CLI behavior: notation, sweep grammar, output metadata and determinism."""

from fractions import Fraction

import pytest

from nbrdisc.cli import main, parse_delta, parse_protocols, parse_sweep
from nbrdisc.protocols import NotationError


def test_parse_delta_forms():
    assert parse_delta("0.05") == Fraction(1, 20)
    assert parse_delta("1/20") == Fraction(1, 20)
    assert parse_delta("5%") == Fraction(1, 20)
    with pytest.raises(NotationError):
        parse_delta("lots")


def test_parse_sweep_grammar():
    assert parse_sweep("reciprocal:4") == [
        Fraction(1),
        Fraction(1, 2),
        Fraction(1, 3),
        Fraction(1, 4),
    ]
    assert parse_sweep("percent:1..3") == [
        Fraction(1, 100),
        Fraction(2, 100),
        Fraction(3, 100),
    ]
    # 0% has no defined relative error and is silently excluded
    assert parse_sweep("percent:0..2")[0] == Fraction(1, 100)
    assert parse_sweep("list:0.2,1/4") == [Fraction(1, 5), Fraction(1, 4)]
    with pytest.raises(NotationError):
        parse_sweep("linear:4")
    with pytest.raises(NotationError):
        parse_sweep("reciprocal")


def test_parse_protocols():
    assert parse_protocols("all") == [
        "disco",
        "uconnect",
        "searchlight",
        "hedis",
        "todis",
    ]
    assert parse_protocols("hedis,todis") == ["hedis", "todis"]
    with pytest.raises(NotationError):
        parse_protocols("hedis,frisbee")


def test_cmd_schedule_todis_listing(capsys):
    assert main(["schedule", "todis:n=15", "--limit", "71"]) == 0
    out = capsys.readouterr().out
    assert "# command: nbrdisc schedule todis:n=15 --limit 71" in out
    assert "# seed: 0" in out
    assert "# version:" in out
    assert "period=3315" in out
    assert "duty_cycle=209/1105" in out
    assert "active=0,13,15,17,26,30,34,39,45,51,52,60,65,68" in out


def test_cmd_schedule_hedis(capsys):
    assert main(["schedule", "hedis:n=4"]) == 0
    out = capsys.readouterr().out
    assert "period=12" in out
    assert "duty_cycle=1/2 (50%)" in out
    assert "active=0,1,4,6,8,11" in out


def test_cmd_schedule_disco_limit(capsys):
    assert main(["schedule", "disco:p1=2,p2=3", "--limit", "6"]) == 0
    assert "active=0,2,3,4" in capsys.readouterr().out


def test_cmd_schedule_bad_spec_names_token(capsys):
    assert main(["schedule", "frisbee:n=4"]) == 2
    assert "frisbee" in capsys.readouterr().err


def test_cmd_params(capsys):
    assert main(["params", "--protocols", "hedis,todis", "--delta", "5%"]) == 0
    out = capsys.readouterr().out
    assert '"hedis:n=40"' in out
    assert '"todis:n=59"' in out


def test_cmd_granularity_row_count(tmp_path):
    out = tmp_path / "g.csv"
    assert (
        main(
            [
                "granularity",
                "--protocols",
                "all",
                "--sweep",
                "reciprocal:6",
                "--out",
                str(out),
            ]
        )
        == 0
    )
    lines = out.read_text().splitlines()
    header = [l for l in lines if not l.startswith("#")]
    assert header[0].endswith(",todis_bound")
    assert len(header) == 1 + 5 * 6


def test_cmd_granularity_bound_column(tmp_path):
    out = tmp_path / "g.csv"
    assert (
        main(
            ["granularity", "--protocols", "todis", "--sweep", "list:0.2", "--out", str(out)]
        )
        == 0
    )
    row = out.read_text().splitlines()[-1]
    bound = float(row.rsplit(",", 1)[1])
    assert abs(bound - 0.0671) < 0.0005


def test_cmd_granularity_error_rows_set_exit_status(tmp_path, capsys):
    out = tmp_path / "g.csv"
    code = main(
        [
            "granularity",
            "--protocols",
            "todis",
            "--sweep",
            "list:0.00001,0.1",
            "--out",
            str(out),
        ]
    )
    assert code == 1
    rows = [l for l in out.read_text().splitlines() if not l.startswith("#")]
    assert len(rows) == 3
    assert "error:" in rows[1]


def test_cmd_verify(capsys):
    assert main(["verify", "hedis:n=4", "hedis:n=6"]) == 0
    out = capsys.readouterr().out
    assert "all_discover=true" in out
    assert "exhaustive=true" in out


def test_cmd_simulate_writes_files_and_summary(tmp_path, capsys):
    out_dir = tmp_path / "sim"
    code = main(
        [
            "simulate",
            "--protocols",
            "hedis,disco",
            "--delta-a",
            "5%",
            "--delta-b",
            "5%",
            "--trials",
            "20",
            "--seed",
            "9",
            "--out",
            str(out_dir),
        ]
    )
    assert code == 0
    summary = capsys.readouterr().out
    assert "hedis: node_a=hedis:n=40" in summary
    assert "undiscovered=0" in summary
    for name in ("hedis_trials.csv", "hedis_cdf.csv", "disco_trials.csv", "disco_cdf.csv"):
        text = (out_dir / name).read_text()
        assert text.startswith("# command: nbrdisc simulate")
        assert "# seed: 9" in text
    trials = (out_dir / "hedis_trials.csv").read_text().splitlines()
    assert "trial,drift,latency,discovered" in trials
    assert len([l for l in trials if not l.startswith("#")]) == 1 + 20


def test_cmd_simulate_rerun_identical(tmp_path):
    args = [
        "simulate",
        "--protocols",
        "searchlight",
        "--delta-a",
        "5%",
        "--delta-b",
        "10%",
        "--trials",
        "15",
        "--seed",
        "4",
        "--out",
        str(tmp_path / "sim"),
    ]
    names = ("searchlight_trials.csv", "searchlight_cdf.csv")
    assert main(args) == 0
    first = {n: (tmp_path / "sim" / n).read_bytes() for n in names}
    assert main(args) == 0
    second = {n: (tmp_path / "sim" / n).read_bytes() for n in names}
    assert first == second
