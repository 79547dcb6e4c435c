"""Shared fixture: generate reduced-resolution preset CSVs once per session
through the blockade CLI (the only interface this package consumes)."""

import subprocess
import sys

import pytest

# id -> extra CLI flags; grids are reduced so the whole set stays fast while
# fig5 keeps a fine enough detuning step (0.5) to place its maxima
GENERATION_FLAGS = {
    "fig3a": ["--steps1", "25"],
    "fig3b": ["--steps1", "25"],
    "fig4": ["--steps1", "13", "--steps2", "7"],
    "fig5": ["--steps1", "241"],
    "fig6": ["--steps1", "7", "--steps2", "7"],
    "fig7L": ["--steps1", "13", "--steps2", "7"],
    "fig7R": ["--steps1", "13", "--steps2", "7"],
    "fig8L": ["--steps1", "13", "--steps2", "7"],
    "fig8R": ["--steps1", "13", "--steps2", "7"],
    "fig9": ["--steps1", "31"],
    "fig10": ["--steps1", "31"],
}


@pytest.fixture(scope="session")
def csv_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("csv")
    for fig_id, flags in GENERATION_FLAGS.items():
        cmd = [
            sys.executable, "-m", "blockade.cli", "figure", fig_id,
            "--out", str(out),
        ] + flags
        if fig_id not in ("fig9", "fig10"):
            cmd += ["--fockCutoff", "2"]
        proc = subprocess.run(cmd, capture_output=True, text=True)
        assert proc.returncode == 0, (
            f"CSV generation failed for {fig_id}:\n{proc.stderr}"
        )
    return out
