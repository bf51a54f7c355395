"""Bias coefficient h_+: direct coefficient extraction against the two closed forms.

At fixed alpha = (k-1)/log n the z^k coefficient of the +q^(-1/2) term of the
explicit formula is extracted on a circle and normalised like pi~_k.  The
ratio to the 'derived' form tends to 1; the 'stated' form is off by 1/r.
"""

import argparse
import math

import numpy as np

from _common import write_csv
from ffbias.asymptotics import circle_coeff, h_coefficients, real_zero_term, saddle_r
from ffbias.characters import characters
from ffbias.field import parse_poly
from ffbias.lfunc import l_function

p = argparse.ArgumentParser()
p.add_argument("--modulus", default="t^3+t^2+2")
p.add_argument("--char-index", type=int, default=13)
p.add_argument("--alpha", type=float, default=1.2)
p.add_argument("--out")
args = p.parse_args()

L = l_function(characters(parse_poly(args.modulus, 3))[args.char_index])
derived = h_coefficients(args.alpha, L, 20, "derived")
stated = h_coefficients(args.alpha, L, 20, "stated")
rows = []
for k in (10, 20, 40, 80, 160):
    logn = (k - 1) / args.alpha
    g = lambda zs: np.array([real_zero_term(z, logn, L, 1, 20) for z in zs])
    c = circle_coeff(g, k, saddle_r(args.alpha), points=512)
    tilde = (c * (-1) ** k * math.exp(logn + math.lgamma(k) - (k - 1) * math.log(logn))).real
    h = tilde / math.exp(derived.b * logn)
    rows.append((k, logn, h, derived.h_plus.real, stated.h_plus.real, h / derived.h_plus.real, h / stated.h_plus.real))
write_csv(["k", "log_n", "h_extracted", "h_derived", "h_stated", "ratio_derived", "ratio_stated"], rows, args.out)
