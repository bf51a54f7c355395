"""Error of the truncated Hankel integral against 1/Gamma(-z) as n grows.

For z = -1 the two rays cancel exactly and the circle integral is 1, so the
error sits at the quadrature roundoff floor instead of decaying like 1/n.
"""

import argparse

from scipy.special import rgamma

from _common import write_csv
from ffbias.asymptotics import hankel_closed_form, hankel_integral

p = argparse.ArgumentParser()
p.add_argument("--z", type=float, nargs="+", default=[-1.0, -0.5, 0.3, -1.5, 0.7])
p.add_argument("--out")
args = p.parse_args()

rows = []
for z in args.z:
    ref = float(rgamma(-z))
    for n in (10**2, 10**3, 10**4, 10**5):
        v = hankel_integral(z, n)
        rows.append((z, n, abs(v - ref), abs(v - hankel_closed_form(z, n))))
write_csv(["z", "n", "err_vs_rgamma", "err_vs_closed_form"], rows, args.out)
