"""Session fixtures: generate every input by driving the main toolkit's CLI,
so these tests consume it purely through its file interfaces."""

import json
import subprocess
import sys

import pytest


def run_lab(*args):
    res = subprocess.run(
        [sys.executable, "-m", "midpointlab.cli", *args],
        capture_output=True, text=True,
    )
    assert res.returncode == 0, f"midpointlab {' '.join(args)}\n{res.stdout}{res.stderr}"
    return res


@pytest.fixture(scope="session")
def exports(tmp_path_factory):
    root = tmp_path_factory.mktemp("lab-exports")
    out2 = root / "n0_2"
    run_lab("build", "--n0", "2", "--level", "4", "--out", str(out2), "--format", "dot")
    run_lab("delta", "--n0", "2", "--level", "4", "--out", str(out2))
    run_lab("separated", "--n0", "2", "--level", "5", "--power", "6",
            "--mode", "exact", "--out", str(out2))
    run_lab("power", "--n0", "2", "--level", "6", "--k", "4", "--out", str(out2))

    out3 = root / "n0_3"
    run_lab("build", "--n0", "3", "--level", "3", "--out", str(out3), "--format", "dot")
    run_lab("delta", "--n0", "3", "--level", "3", "--out", str(out3))

    manifest2 = json.loads((out2 / "manifest.json").read_text())
    counts2 = {row["n"]: (row["vcount"], row["ecount"]) for row in manifest2["levels"]}
    return {"n0_2": out2, "n0_3": out3, "counts2": counts2}
