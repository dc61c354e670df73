#!/usr/bin/env python3
"""Builds the data/ directory the benchmark CLI reads.

Two jobs:

  bundled             export the snapshots that ship inside scikit-learn
                      (wdbc.csv, optdigits_subset.csv); no network needed
  fetch / convert     download the UCI originals (or convert copies you
                      already have) into the loader's layout: numeric
                      features, label in the last column, no header row

data/README.md lists the upstream locations and the expected shapes.
"""

import argparse
import sys
import urllib.error
import urllib.request
from pathlib import Path

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"

VEHICLE_PARTS = [f"xa{c}.dat" for c in "abcdefghi"]

# dataset -> raw files it is built from
RAW_FILES = {
    "pima": ["pima-indians-diabetes.data"],
    "liver": ["bupa.data"],
    "wdbc": ["wdbc.data"],
    "optdigits": ["optdigits.tra", "optdigits.tes"],
    "blood": ["transfusion.data"],
    "segmentation": ["segmentation.data", "segmentation.test"],
    "vehicle": VEHICLE_PARTS,
}

URLS = {
    "pima-indians-diabetes.data": f"{UCI}/pima-indians-diabetes/pima-indians-diabetes.data",
    "bupa.data": f"{UCI}/liver-disorders/bupa.data",
    "wdbc.data": f"{UCI}/breast-cancer-wisconsin/wdbc.data",
    "optdigits.tra": f"{UCI}/optdigits/optdigits.tra",
    "optdigits.tes": f"{UCI}/optdigits/optdigits.tes",
    "transfusion.data": f"{UCI}/blood-transfusion/transfusion.data",
    "segmentation.data": f"{UCI}/image/segmentation.data",
    "segmentation.test": f"{UCI}/image/segmentation.test",
    **{part: f"{UCI}/statlog/vehicle/{part}" for part in VEHICLE_PARTS},
}

# produced file -> (rows, columns including the label)
EXPECTED_SHAPES = {
    "pima.csv": (768, 9),
    "liver.csv": (345, 7),
    "wdbc.csv": (569, 31),
    "optdigits_train.csv": (3823, 65),
    "optdigits_test.csv": (1797, 65),
    "blood.csv": (748, 5),
    "segmentation_train.csv": (210, 20),
    "segmentation_test.csv": (2100, 20),
    "vehicle.csv": (846, 19),
    "optdigits_subset.csv": (1797, 65),
}


def data_lines(path):
    return [ln.strip() for ln in path.read_text().splitlines() if ln.strip()]


def write_rows(path, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(",".join(r) + "\n" for r in rows))
    rows_n, cols = len(rows), len(rows[0])
    expect = EXPECTED_SHAPES.get(path.name)
    tag = "ok" if expect == (rows_n, cols) else f"warning: expected {expect[0]}x{expect[1]}"
    print(f"  {path}  {rows_n}x{cols}  {tag}")


def passthrough(path, n_fields, skip=0):
    rows = [ln.split(",") for ln in data_lines(path)[skip:]]
    bad = [r for r in rows if len(r) != n_fields]
    if bad:
        sys.exit(f"{path}: expected {n_fields} comma fields per row, got {len(bad[0])}")
    return rows


def convert_pima(raw, out):
    write_rows(out / "pima.csv", passthrough(raw / "pima-indians-diabetes.data", 9))


def convert_liver(raw, out):
    # bupa.data: six measurements then the selector field, which is the
    # class label in the ensemble-selection literature
    write_rows(out / "liver.csv", passthrough(raw / "bupa.data", 7))


def convert_wdbc(raw, out):
    rows = [r[2:] + [r[1]] for r in passthrough(raw / "wdbc.data", 32)]
    write_rows(out / "wdbc.csv", rows)


def convert_optdigits(raw, out):
    write_rows(out / "optdigits_train.csv", passthrough(raw / "optdigits.tra", 65))
    write_rows(out / "optdigits_test.csv", passthrough(raw / "optdigits.tes", 65))


def convert_blood(raw, out):
    write_rows(out / "blood.csv", passthrough(raw / "transfusion.data", 5, skip=1))


def segmentation_rows(path):
    # both files open with a short header block; data rows are the class
    # name followed by 19 numbers
    rows = []
    for ln in data_lines(path):
        fields = ln.split(",")
        if len(fields) == 20 and fields[0][0].isalpha():
            rows.append(fields[1:] + [fields[0]])
    return rows


def convert_segmentation(raw, out):
    write_rows(out / "segmentation_train.csv", segmentation_rows(raw / "segmentation.data"))
    write_rows(out / "segmentation_test.csv", segmentation_rows(raw / "segmentation.test"))


def convert_vehicle(raw, out):
    rows = []
    for part in VEHICLE_PARTS:
        for ln in data_lines(raw / part):
            fields = ln.split()
            if len(fields) != 19:
                sys.exit(f"{raw / part}: expected 19 whitespace fields per row")
            rows.append(fields)
    write_rows(out / "vehicle.csv", rows)


CONVERTERS = {
    "pima": convert_pima,
    "liver": convert_liver,
    "wdbc": convert_wdbc,
    "optdigits": convert_optdigits,
    "blood": convert_blood,
    "segmentation": convert_segmentation,
    "vehicle": convert_vehicle,
}


def export_bundled(out):
    from sklearn.datasets import load_breast_cancer, load_digits

    cancer = load_breast_cancer()
    rows = [
        [str(float(v)) for v in x] + ["M" if y == 0 else "B"]
        for x, y in zip(cancer.data, cancer.target)
    ]
    write_rows(out / "wdbc.csv", rows)

    digits = load_digits()
    rows = [
        [str(int(v)) for v in x] + [str(int(y))]
        for x, y in zip(digits.data, digits.target)
    ]
    write_rows(out / "optdigits_subset.csv", rows)


def fetch(raw_dir, names):
    raw_dir.mkdir(parents=True, exist_ok=True)
    failed = []
    for name in names:
        for fname in RAW_FILES[name]:
            dest = raw_dir / fname
            if dest.exists():
                print(f"  {dest}  already present")
                continue
            url = URLS[fname]
            try:
                urllib.request.urlretrieve(url, dest)
                print(f"  {dest}  fetched")
            except (urllib.error.URLError, OSError) as e:
                failed.append((fname, url, e))
    for fname, url, e in failed:
        print(f"  {fname}: download failed ({e}); fetch it manually from {url}")
    return not failed


def convert(raw_dir, out_dir, names):
    missing = []
    for name in names:
        absent = [f for f in RAW_FILES[name] if not (raw_dir / f).exists()]
        if absent:
            missing.append((name, absent))
            continue
        CONVERTERS[name](raw_dir, out_dir)
    for name, absent in missing:
        print(f"  {name}: skipped, missing {', '.join(absent)} in {raw_dir}")
    return not missing


def main():
    parser = argparse.ArgumentParser(description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bundled", help="export the scikit-learn snapshots")
    p.add_argument("--out-dir", type=Path, default=Path("data"))

    for cmd, blurb in [("fetch", "download UCI originals, then convert"),
                       ("convert", "convert already-downloaded UCI originals")]:
        p = sub.add_parser(cmd, help=blurb)
        p.add_argument("datasets", nargs="*", metavar="dataset",
                       help=f"default: all of {', '.join(sorted(RAW_FILES))}")
        p.add_argument("--raw-dir", type=Path, default=Path("data/raw"))
        p.add_argument("--out-dir", type=Path, default=Path("data"))

    args = parser.parse_args()
    if args.command == "bundled":
        export_bundled(args.out_dir)
        return

    for name in args.datasets:
        if name not in RAW_FILES:
            parser.error(f"unknown dataset '{name}' (known: {', '.join(sorted(RAW_FILES))})")
    names = args.datasets or sorted(RAW_FILES)
    ok = True
    if args.command == "fetch":
        ok = fetch(args.raw_dir, names)
    if not convert(args.raw_dir, args.out_dir, names):
        ok = False
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
