import subprocess
import sys

import pytest


def _kiosksim(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "kiosksim", *args], capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def artifacts(tmp_path_factory):
    """Default-configuration CSV artifacts, produced through the kiosksim CLI.

    The figure package consumes the simulator only through these files.
    """
    base = tmp_path_factory.mktemp("artifacts")
    run = base / "run"
    report = base / "report"
    be = base / "be"
    _kiosksim("sweep", "--out", str(run))
    _kiosksim("report", "--in", str(run / "sweep.csv"), "--out", str(report))
    _kiosksim("breakeven", "--out", str(be), "--margins", "0.3", "0.4", "0.5")
    return {
        "sweep": run / "sweep.csv",
        "report_dir": report,
        "breakeven": be / "breakeven.csv",
        "base": base,
    }
