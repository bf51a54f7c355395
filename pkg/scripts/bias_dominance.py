"""Per even n: exact sign of (-1)^k pi_k, predicted bias term and |sum h_j|, k = round(1.4 log n)."""

import argparse

from _common import write_csv
from ffbias.checks import THM4_CASE, THM4_GRID, crossover, thm4_rows

p = argparse.ArgumentParser()
p.add_argument("--modulus", default=THM4_CASE[1])
p.add_argument("--char-index", type=int, default=THM4_CASE[2])
p.add_argument("--out")
args = p.parse_args()

rows = thm4_rows((3, args.modulus, args.char_index), THM4_GRID)
write_csv(["n", "k", "bias", "abs_sum_h", "sign"], [(r["n"], r["k"], r["bias"], r["osc"], r["sign"]) for r in rows], args.out)
print(f"# crossover: {crossover(rows)}")
