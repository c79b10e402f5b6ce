"""Run every bundled sweep config and print one verdict line per config.

    python scripts/run_sweeps.py [--out-root out] [--threads 4]
"""

import argparse
import json
import sys
from pathlib import Path

from winding_obstruction.cli import main as cli_main

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--configs", default=str(ROOT / "configs"))
    parser.add_argument("--out-root", default="out")
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    status = 0
    lines = []
    for cfg in sorted(Path(args.configs).glob("*.toml")):
        out = Path(args.out_root) / cfg.stem
        code = cli_main(["sweep", str(cfg), "--out-dir", str(out), "--threads", str(args.threads)])
        if code:
            lines.append(f"{cfg.stem:<16} exit {code}")
            status = max(status, code)
            continue
        verdict = json.loads((out / "verdict.json").read_text())
        flag = "obstruction" if verdict["obstruction_present"] else "none"
        lines.append(f"{cfg.stem:<16} {flag:<12} windings={verdict['windings']}  {verdict['reason']}")
    print()
    print("\n".join(lines))
    return status


if __name__ == "__main__":
    sys.exit(main())
