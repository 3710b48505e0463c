"""
Special means of two positive numbers
=====================================

The six means used throughout the package, and how the generalised
logarithmic mean L_p sweeps between them as p varies.
"""

import numpy as np

from hhineq.means import Interval, gen_log, mean_set

iv = Interval(1.0, 2.0)
m = mean_set(iv, p=2)
for name, value in m.as_dict().items():
    print(f"{name:>3} = {value}")

# harmonic < geometric < logarithmic < identric < arithmetic
chain = [m.H, m.G, m.L, m.I, m.A]
print("ordered:", all(x < y for x, y in zip(chain, chain[1:])))

# L_p is increasing in p; p = -2, -1, 0, 1 give G, L, I, A
ps = np.linspace(-4, 4, 17)
values = [gen_log(iv, p, extend=True) for p in ps]
for p, v in zip(ps, values):
    print(f"p = {p:+.1f}  L_p = {v:.12f}")
print("monotone in p:", bool(np.all(np.diff(values) > 0)))

# near the removable points the value is continuous
for eps in (1e-3, 1e-6, 1e-9):
    print(f"L_{eps:g} - I = {gen_log(iv, eps) - m.I:+.3e}   "
          f"L_{-1 + eps:g} - L = {gen_log(iv, -1 + eps) - m.L:+.3e}")
