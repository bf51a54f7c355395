"""Implied constants of the saddle-point extraction formulas with f(z) = e^z.

Prints the worst (relative error)/(allowed factor) per part for several
(a, b).  Part (a) carries a leading error of exactly (a/b^2) k^2/log n.
"""

import argparse

from _common import write_csv
from ffbias.checks import lemma_ratios

p = argparse.ArgumentParser()
p.add_argument("--out")
args = p.parse_args()

rows = []
for a, b in [(0.5, 0.5), (0.5, 1.0), (1.0, 1.0), (0.25, 1.0), (1.0, 0.5)]:
    w = lemma_ratios(a, b, a2=a)
    rows.append((a, b, w["linear"], w["quad_a"], w["quad_b"], w["quad_c"], a / b**2))
write_csv(["a", "b", "linear", "quad_a", "quad_b", "quad_c", "a_over_b2"], rows, args.out)
