import json
import subprocess
import sys
from pathlib import Path

import pytest

from msk.cli import darboux_scenario, main
from msk.scenario import dump_scenario, parse_scenario, run

CORPUS = Path(__file__).resolve().parent.parent / "scenarios"


def msk(*args, stdin=None):
    return subprocess.run([sys.executable, "-m", "msk.cli", *map(str, args)],
                          capture_output=True, text=True, input=stdin)


def test_run_passing_scenario(capsys):
    assert main(["run", str(CORPUS / "orthogonality_volume.json")]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema"] == "msk-report/1"
    assert doc["summary"]["pass"] == len(doc["entries"])


def test_run_failing_scenario_exits_one(capsys):
    assert main(["run", str(CORPUS / "failing" / "deliberate_failure.json")]) == 1


def test_missing_file_is_a_usage_error(tmp_path, capsys):
    assert main(["run", str(tmp_path / "absent.json")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_parse_error_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"chart": ')
    assert main(["run", str(bad)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_bad_arguments_exit_two(capsys):
    assert main(["run"]) == 2
    assert main(["run", "x.json", "--seed", "-1"]) == 2
    assert main(["bogus"]) == 2


def test_task_filter_and_text_format(capsys):
    path = CORPUS / "symplectic_plane.json"
    assert main(["run", str(path), "--task", "homogeneity", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "homogeneity" in out and "probe" not in out


def test_timings_flag_adds_seconds(capsys):
    main(["run", str(CORPUS / "orthogonality_volume.json"), "--timings"])
    doc = json.loads(capsys.readouterr().out)
    assert all("seconds" in e for e in doc["entries"])


def test_output_file(tmp_path):
    out = tmp_path / "report.json"
    assert main(["run", str(CORPUS / "orthogonality_volume.json"), "-o", str(out)]) == 0
    assert json.loads(out.read_text())["scenario"] == "orthogonality-volume-r3"


@pytest.mark.parametrize("argv", [
    ["--base-dim", "1", "--degree", "1"],
    ["--base-dim", "3", "--degree", "2"],
    ["--base-dim", "3", "--degree", "2", "--fiber-coords", "x3", "--horizontal", "2"],
])
def test_darboux_emits_runnable_scenario(argv, capsys):
    assert main(["darboux", *argv]) == 0
    scn = parse_scenario(capsys.readouterr().out)
    report = run(scn)
    assert report.exit_code == 0


def test_darboux_usage_errors(capsys):
    assert main(["darboux", "--base-dim", "1", "--degree", "2"]) == 2
    assert main(["darboux", "--base-dim", "2", "--degree", "1", "--horizontal", "1"]) == 2
    assert main(["darboux", "--base-dim", "2", "--degree", "1", "--fiber-coords", "q",
                 "--horizontal", "1"]) == 2


def test_darboux_scenario_round_trips():
    scn = darboux_scenario(2, 2)
    assert parse_scenario(dump_scenario(scn)) == parse_scenario(dump_scenario(parse_scenario(dump_scenario(scn))))


def test_subprocess_is_byte_identical():
    path = CORPUS / "symplectic_plane.json"
    a, b = msk("run", path), msk("run", path)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_stdin_input():
    res = msk("run", "-", stdin=(CORPUS / "orthogonality_volume.json").read_text())
    assert res.returncode == 0 and json.loads(res.stdout)["entries"]
