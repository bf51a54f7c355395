"""pi~_k minus the oscillating terms for a real character, split by parity of n."""

import argparse
import math

from _common import write_csv
from ffbias.asymptotics import thm3_main
from ffbias.characters import characters
from ffbias.charsums import analytic_tables
from ffbias.field import parse_poly
from ffbias.lfunc import l_function

p = argparse.ArgumentParser()
p.add_argument("--modulus", default="t^3+2*t+1")
p.add_argument("--char-index", type=int, default=13)
p.add_argument("--n-max", type=int, default=300)
p.add_argument("--variant", choices=("first", "second"), default="first")
p.add_argument("--out")
args = p.parse_args()

chi = characters(parse_poly(args.modulus, 3))[args.char_index]
L = l_function(chi)
tabs = analytic_tables(chi, args.n_max)
rows = []
for n in range(3, args.n_max + 1):
    k = int(math.log(n) ** 0.45)
    rep = thm3_main(tabs[n], k, L, args.variant)
    rows.append((n, n % 2, k, (rep.exact - rep.oscillating).real, rep.bias.real, rep.error_scale))
write_csv(["n", "parity", "k", "exact_minus_osc", "predicted_bias", "error_scale"], rows, args.out)
