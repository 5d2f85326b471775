import pytest

from kiosksim.cli import main as cli_main


@pytest.fixture(scope="session")
def default_sweep_runs(tmp_path_factory):
    """Two full default sweeps with identical config at different parallelism.

    Shared by the acceptance tests for grid fidelity, determinism, summary
    extrema and the runtime target.  Expensive (two ~90M-customer sweeps),
    hence session-scoped.
    """
    base = tmp_path_factory.mktemp("fullsweep")
    out_serial = base / "serial"
    out_parallel = base / "parallel"
    assert cli_main(["sweep", "--out", str(out_serial), "--parallelism", "1"]) == 0
    assert cli_main(["sweep", "--out", str(out_parallel), "--parallelism", "2"]) == 0
    return out_serial, out_parallel
