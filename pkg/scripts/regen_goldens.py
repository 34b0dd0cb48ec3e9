#!/usr/bin/env python3
"""Regenerate the golden report files under tests/goldens/.

Run after any deliberate change to default curves, profiles, the demo
manifest, or report serialization; review the diff before committing.
"""

import shutil
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gpindex.cli import main  # noqa: E402

GOLDEN_DIR = Path(__file__).resolve().parent.parent / "tests" / "goldens"
GOLDEN_FILES = ("report_competitive.json", "report_casual.json", "plot_data.csv")


def regen():
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "demo"
        status = main(["demo", "--out", str(out)])
        if status != 0:
            raise SystemExit(f"demo failed with status {status}")
        for name in GOLDEN_FILES:
            target = GOLDEN_DIR / f"demo_{name}"
            shutil.copyfile(out / name, target)
            print(f"wrote {target}")


if __name__ == "__main__":
    regen()
