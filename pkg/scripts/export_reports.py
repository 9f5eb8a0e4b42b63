"""Write deterministic JSON reports for the discrete data to a directory.

    python3 scripts/export_reports.py out/
"""
import io
import sys
from pathlib import Path

from cremona_involutions.cli import cli_dispatch
from cremona_involutions.sarkisov import TABLE_RULES, enumerate_irreducible_types

RUNS = {
    "enumerate_delpezzo": ["graph", "enumerate", "--max-sl", "5", "--kind", "delpezzo"],
    "enumerate_fibering": ["graph", "enumerate", "--max-sl", "5", "--kind", "fibering"],
    "pieces": ["pieces", "validate"],
    "counts_example": ["graph", "counts", "--word", "P2 -2,1-> D8 -3,1-> D6", "--q", "2"],
}


def main(out_dir: str) -> int:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    runs = dict(RUNS)
    words = sorted(TABLE_RULES) + [str(w) for w in enumerate_irreducible_types(5, "fibering")]
    for i, w in enumerate(words):
        runs[f"reduce_{i:02d}"] = ["reduce", "--word", w]
    runs["reduce_case_iv_f2"] = ["reduce", "--word", "P2 -2,1-> D8 -3,1-> D6 -3,3-> D6 -1,3-> D8 -1,2-> P2",
                                 "--field", "f2"]
    worst = 0
    for name, argv in runs.items():
        code, _ = cli_dispatch(argv + ["--out", str(out / f"{name}.json")], stdout=io.StringIO())
        print(f"{name}: exit {code}")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main(sys.argv[1] if len(sys.argv) > 1 else "reports"))
