import csv
import sys


def write_csv(columns, rows, path=None):
    fh = open(path, "w", newline="") if path else sys.stdout
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([repr(float(v)) if isinstance(v, float) else v for v in r])
    if path:
        fh.close()
