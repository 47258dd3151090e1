#!/usr/bin/env python3
"""Build tests/data/darfur.csv from the darfur survey data shipped with the
sensemakr package (R: sensemakr; Python: PySensemakr).

The upstream table stores village fixed effects as a single categorical
column. The analysis tools in this repository ingest purely numeric CSVs,
so this script expands the village column into 0/1 indicator columns
(first village in alphabetical order dropped as the baseline) and keeps
only the columns used by the peacefactor model. Cell text for the numeric
source columns is passed through verbatim so the fixture is byte-stable.

Usage: python3 tools/prepare_darfur.py <path-to-upstream-darfur.csv> <out.csv>
"""

import csv
import re
import sys

KEEP = [
    "peacefactor",
    "directlyharmed",
    "age",
    "farmer_dar",
    "herder_dar",
    "pastvoted",
    "hhsize_darfur",
    "female",
]


def sanitize(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", name).strip("_")


def main() -> None:
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    src, dst = sys.argv[1], sys.argv[2]

    with open(src, newline="") as fh:
        rows = list(csv.DictReader(fh))

    villages = sorted({r["village"] for r in rows})
    dummies = villages[1:]  # drop first level; the model carries an intercept
    dummy_names = ["village_" + sanitize(v) for v in dummies]
    if len(set(dummy_names)) != len(dummy_names):
        sys.exit("village names collide after sanitization")

    with open(dst, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(KEEP + dummy_names)
        for r in rows:
            w.writerow([r[c] for c in KEEP] + ["1" if r["village"] == v else "0" for v in dummies])


if __name__ == "__main__":
    main()
