#!/usr/bin/env python3
"""Builds the CSV datasets under data/ from redistributed UCI/KEEL copies.

Sources (fetched with `pip download`, nothing is installed):
  keel-ds          -- KEEL repository files: iris, wine, wdbc, pima, bupa.
  common-datasets  -- multiclass glass (UCI glass.data), KEEL newthyroid, KEEL zoo.

Every output is a headered CSV whose last column is `class`.
"""

import argparse
import csv
import glob
import os
import subprocess
import sys
import tempfile
import zipfile
from collections import Counter


def fetch_wheel(package, dest, wheel_dir=None):
    name = package.split("==")[0].replace("-", "_")
    wheels = glob.glob(os.path.join(wheel_dir, f"{name}-*.whl")) if wheel_dir else []
    if not wheels:
        subprocess.run(
            [sys.executable, "-m", "pip", "download", package, "--no-deps",
             "--only-binary=:all:", "--timeout", "120", "-d", dest],
            check=True, stdout=subprocess.DEVNULL)
        wheels = glob.glob(os.path.join(dest, "*.whl"))
    if not wheels:
        sys.exit(f"no wheel downloaded for {package}")
    out = os.path.join(dest, "x")
    with zipfile.ZipFile(wheels[0]) as zf:
        zf.extractall(out)
    return out


def read_keel(path):
    """Returns (attribute names, rows) from a KEEL .dat file."""
    names, rows = [], []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("%"):
                continue
            if line.lower().startswith("@attribute"):
                names.append(line.split()[1])
                continue
            if line.startswith("@"):
                continue
            rows.append([c.strip() for c in line.split(",")])
    return names, rows


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    labels = Counter(r[-1] for r in rows)
    print(f"{os.path.basename(path)}: {len(rows)} rows, {len(header) - 1} "
          f"attributes, {len(labels)} classes {dict(sorted(labels.items()))}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=os.path.join(
        os.path.dirname(os.path.abspath(__file__)), "..", "data"))
    ap.add_argument("--wheel-dir", help="directory holding already "
                    "downloaded keel_ds / common_datasets wheels")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    with tempfile.TemporaryDirectory() as tmp:
        keel = os.path.join(
            fetch_wheel("keel-ds==0.2.5", os.path.join(tmp, "keel"),
                        args.wheel_dir),
            "keel_ds", "data", "balanced", "raw")
        common = os.path.join(
            fetch_wheel("common-datasets==0.3.10", os.path.join(tmp, "cd"),
                        args.wheel_dir),
            "common_datasets", "data", "classification")

        keel_files = {
            "iris": (os.path.join(keel, "iris.dat"), "iris"),
            "wine": (os.path.join(keel, "wine.dat"), "wine"),
            "pima": (os.path.join(keel, "pima.dat"), "diabetes"),
            "bupa": (os.path.join(keel, "bupa.dat"), "liver"),
            "wdbc": (os.path.join(keel, "wdbc.dat"), "breastcancer_wisconsin"),
            "newthyroid": (os.path.join(common, "newthyroid", "newthyroid.dat"),
                           "thyroid"),
            "zoo": (os.path.join(common, "zoo", "zoo.dat"), "zoo"),
        }
        for path, out_name in keel_files.values():
            names, rows = read_keel(path)
            header = names[:-1] if len(names) == len(rows[0]) else [
                f"f{i + 1}" for i in range(len(rows[0]) - 1)]
            write_csv(os.path.join(args.out, f"{out_name}.csv"),
                      [h.lower() for h in header] + ["class"], rows)

        # UCI glass.data: leading Id column, no header.
        with open(os.path.join(common, "glass", "glass.data.txt")) as fh:
            rows = [l.strip().split(",")[1:] for l in fh if l.strip()]
        write_csv(os.path.join(args.out, "glass.csv"),
                  ["ri", "na", "mg", "al", "si", "k", "ca", "ba", "fe",
                   "class"], rows)


if __name__ == "__main__":
    main()
