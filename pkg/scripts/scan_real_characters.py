"""Real characters at q = 3 satisfying the large-k hypotheses, with their bias data.

For each: number of non-real zeros, deg L, the last even n <= n_max with
sign((-1)^k pi_k) != +1 (k = round(1.4 log n)), and at n_max the predicted
bias term and |sum h_j|.
"""

import argparse
import math

import numpy as np

from _common import write_csv
from ffbias.asymptotics import check_thm4_hypotheses, thm4_eval
from ffbias.characters import characters
from ffbias.charsums import analytic_tables
from ffbias.field import format_poly, iter_monic
from ffbias.lfunc import l_function

p = argparse.ArgumentParser()
p.add_argument("--degrees", type=int, nargs="+", default=[2, 3])
p.add_argument("--n-max", type=int, default=300)
p.add_argument("--out")
args = p.parse_args()

rows = []
for deg in args.degrees:
    for d in iter_monic(deg, 3):
        for chi in characters(d):
            if chi.is_principal or not chi.is_real:
                continue
            L = l_function(chi)
            try:
                check_thm4_hypotheses(L)
            except ValueError:
                continue
            tabs = analytic_tables(chi, args.n_max)
            last_bad = 0
            for n in range(20, args.n_max + 1, 2):
                k = round(1.4 * math.log(n))
                if np.sign(((-1) ** k * tabs[n][k]).real) != 1:
                    last_bad = n
            rep, ev = thm4_eval(tabs[args.n_max], round(1.4 * math.log(args.n_max)), L, 30)
            osc = abs(sum(h for _, h in ev.h_j))
            rows.append((format_poly(d), chi.index, len(L.nonreal), L.degree, last_bad, rep.bias.real, osc))
write_csv(["modulus", "index", "nonreal_zeros", "deg_L", "last_wrong_sign", "bias", "abs_sum_h"], rows, args.out)
