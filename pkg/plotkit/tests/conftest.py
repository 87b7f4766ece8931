"""Shared fixtures: real input CSVs produced by the simulator's own CLI.

plotkit never imports the simulator; everything it consumes arrives as
files. The fixtures here shell out to the installed `irssim` executable
once per session and hand the resulting directory to the tests.
"""

import shutil
import subprocess

import pytest

IRSSIM = shutil.which("irssim")


def run_irssim(*args: str) -> None:
    assert IRSSIM is not None, "the irssim CLI must be installed to generate test inputs"
    subprocess.run([IRSSIM, *args], check=True, capture_output=True, text=True)


@pytest.fixture(scope="session")
def datadir(tmp_path_factory):
    """One directory with every kind of CSV the figure kinds consume."""
    out = tmp_path_factory.mktemp("csv")
    base = ["--scenario", "1", "--nx", "8", "--ny", "8", "--grid-step", "2",
            "--out", str(out)]
    # compare writes a sweep and a cdf file per scheme: heatmap + cdf inputs
    run_irssim("compare", "--all-schemes", *base)
    run_irssim("phase-profile", "--column", "4", *base)
    run_irssim("phase-hist", "--column", "4", "--bins", "8", *base)
    run_irssim("random-avg", "--n-ue", "10", "--seed", "0", *base)
    return out


@pytest.fixture(scope="session")
def sweep_csvs(datadir):
    paths = sorted(datadir.glob("sweep_scenario1_*.csv"))
    assert len(paths) == 4
    return paths


@pytest.fixture(scope="session")
def cdf_csvs(datadir):
    paths = sorted(datadir.glob("cdf_scenario1_*.csv"))
    assert len(paths) == 4
    return paths


@pytest.fixture(scope="session")
def profile_csv(datadir):
    return datadir / "phase_profile_scenario1_col4.csv"


@pytest.fixture(scope="session")
def hist_csv(datadir):
    return datadir / "phase_hist_scenario1_col4.csv"


@pytest.fixture(scope="session")
def avg_csv(datadir):
    return datadir / "random_avg_scenario1.csv"
