import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize("name, args, code", [
    ("invariance_sweep.py", ["--max-base", "2", "--max-degree", "1", "--json"], 0),
    ("model_survey.py", ["--max-base", "3", "--max-degree", "2"], 0),
    ("run_corpus.py", ["--include-failing"], 1),
])
def test_script_runs(tmp_path, name, args, code):
    if name == "run_corpus.py":
        args = [*args, "--out", str(tmp_path)]
    res = subprocess.run([sys.executable, str(SCRIPTS / name), *args], capture_output=True, text=True)
    assert res.returncode == code, res.stderr
    assert res.stdout
