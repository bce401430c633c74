#!/usr/bin/env python3
"""Download the two CSV benchmark sources into the data directory.

The library itself never touches the network; run this once, then point
the CLI (or the DIRECTCORR_DATA environment variable) at the directory.
The Berkeley admissions table ships embedded in the package and needs no
download.

Usage:
    python scripts/fetch_data.py [--dest data]
"""

import argparse
import sys
import urllib.request
from pathlib import Path

SOURCES = {
    "titanic.csv": "https://raw.githubusercontent.com/datasciencedojo/datasets/master/titanic.csv",
    "adult.data": "https://archive.ics.uci.edu/ml/machine-learning-databases/adult/adult.data",
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dest", default="data", help="target directory (default: ./data)")
    args = parser.parse_args()
    dest = Path(args.dest)
    dest.mkdir(parents=True, exist_ok=True)
    failures = 0
    for name, url in SOURCES.items():
        target = dest / name
        if target.exists():
            print(f"{target} already present, skipping")
            continue
        print(f"fetching {url}")
        try:
            with urllib.request.urlopen(url, timeout=60) as resp:
                target.write_bytes(resp.read())
            print(f"wrote {target} ({target.stat().st_size} bytes)")
        except OSError as exc:
            print(f"failed to fetch {name}: {exc}", file=sys.stderr)
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
