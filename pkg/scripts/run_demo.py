#!/usr/bin/env python3
"""Run the 9-device demo end to end and print both ranking tables.

Writes the generated corpus plus reports to ./demo_out (override with a
path argument) and summarizes the competitive vs casual rankings that
the plot_data.csv visualizes.
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gpindex.cli import main  # noqa: E402


def run(out_dir: str) -> int:
    status = main(["demo", "--out", out_dir])
    if status != 0:
        return status
    for profile in ("competitive", "casual"):
        doc = json.loads((Path(out_dir) / f"report_{profile}.json").read_text())
        print(f"\n{profile} ranking:")
        for row in doc["rows"]:
            flags = f"  [{len(row['flags'])} flag(s)]" if row["flags"] else ""
            print(
                f"  #{row['rank']:<2} {row['device_id']:<10} "
                f"score {row['overall_display']:>3} (exact {row['overall_exact']:.4f}){flags}"
            )
    print(f"\nfull reports and plot data in {out_dir}/")
    return 0


if __name__ == "__main__":
    sys.exit(run(sys.argv[1] if len(sys.argv) > 1 else "demo_out"))
