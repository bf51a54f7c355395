"""Time the analytic pipeline against exhaustive enumeration, single-threaded."""

import argparse
import time

import numpy as np

from _common import write_csv
from ffbias.characters import characters
from ffbias.charsums import analytic_tables, pi_k_enumerate
from ffbias.field import parse_poly

p = argparse.ArgumentParser()
p.add_argument("--n-max", type=int, default=12)
p.add_argument("--out")
args = p.parse_args()

rows = []
for text in ("t^2+1", "t^2+2"):
    for chi in characters(parse_poly(text, 3)):
        t0 = time.perf_counter()
        tabs = analytic_tables(chi, args.n_max)
        t1 = time.perf_counter()
        dev = 0.0
        for n in range(1, args.n_max + 1):
            dev = max(dev, float(np.max(np.abs(tabs[n].values - pi_k_enumerate(chi, n, threads=1).values))))
        rows.append((text, chi.index, dev, t1 - t0, time.perf_counter() - t1))
write_csv(["modulus", "index", "max_dev", "analytic_s", "enumerate_s"], rows, args.out)
