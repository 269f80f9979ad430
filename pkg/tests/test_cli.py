import json
import subprocess
import sys

import pytest

from coauthnet.cli import main

FAST = ["--trees", "10", "--folds", "3", "--d-max", "2"]


def test_run_fixture(fixture_dir, tmp_path):
    assert main(["run", "--input", str(fixture_dir), "--output", str(tmp_path), "--scheme", "3class", *FAST]) == 0
    doc = json.loads((tmp_path / "analyses" / "rf.json").read_text())
    assert doc["classes"] == ["A", "B", "C"]
    assert (tmp_path / "manifest.json").exists()


def test_missing_roster_exit_3(tmp_path):
    (tmp_path / "in" / "resumes").mkdir(parents=True)
    assert main(["run", "--input", str(tmp_path / "in"), "--output", str(tmp_path / "out")]) == 3
    assert not (tmp_path / "out" / "manifest.json").exists()


def test_malformed_resume_exit_3(fixture_dir, tmp_path):
    import shutil

    src = tmp_path / "in"
    shutil.copytree(fixture_dir, src)
    (src / "resumes" / "broken.xml").write_text("<curriculum")
    assert main(["graphs", "--input", str(src), "--output", str(tmp_path / "out")]) == 3
    assert not (tmp_path / "out" / "manifest.json").exists()


@pytest.mark.parametrize(
    "extra",
    [["--analyses", "nope"], ["--trees", "0"], ["--rich-club-k", "0"], ["--periods", "/nonexistent/periods.json"]],
)
def test_config_errors_exit_2(fixture_dir, tmp_path, extra):
    assert main(["run", "--input", str(fixture_dir), "--output", str(tmp_path), *extra]) == 2
    assert not (tmp_path / "manifest.json").exists()


def test_periods_flag(fixture_dir, tmp_path):
    periods = tmp_path / "p.json"
    periods.write_text(json.dumps([{"label": "2010-2012", "start_year": 2010, "end_year": 2012}]))
    assert main(["graphs", "--input", str(fixture_dir), "--output", str(tmp_path / "o"), "--periods", str(periods)]) == 0
    graphs = sorted(p.name for p in (tmp_path / "o" / "graphs").iterdir())
    assert len(graphs) == 5 and all("2010-2012" in g for g in graphs)


def test_synth_verb(tmp_path):
    assert main(["synth", "--output", str(tmp_path), "--seed", "3", "--programs", "2", "--grade-counts", "3:2,7:2"]) == 0
    assert (tmp_path / "roster.csv").exists() and any((tmp_path / "resumes").iterdir())
    assert main(["synth", "--output", str(tmp_path), "--grade-counts", "x"]) == 2
    assert main(["synth", "--output", str(tmp_path), "--grade-counts", "9:3"]) == 2


def test_module_entry_point(fixture_dir, tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "coauthnet", "ingest", "--input", str(fixture_dir), "--output", str(tmp_path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "ingest_summary.json").exists()
