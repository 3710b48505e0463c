"""
Upper bounds on the deviation
=============================

Three bounds in terms of the endpoint slopes, next to four classical bounds
on the trapezoid error. Each carries the shape check of its hypothesis;
a failed check marks the bound as not applicable rather than hiding it.
"""

from hhineq.exprdsl import parse
from hhineq.hhcore import bound_report

def show(text, a, b, qs=(1, 2, 3)):
    rep = bound_report(parse(text), (a, b), qs=qs, classical=True)
    print(f"\nf(x) = {rep.f} on [{a}, {b}]")
    print(f"  D = {rep.deviation.value:.12g}   trapezoid deviation = {rep.trapezoid.value:.12g}")
    for c in rep.checks:
        q = "" if c.bound.q is None else f"q={c.bound.q:g}"
        print(f"  {c.bound.label:<6}{q:<7}{c.bound.value:>16.10g}  |lhs| {c.lhs:>14.10g}  {c.status}")
    h = rep.hadamard
    print(f"  Hadamard ({h.shape}, {h.direction}): {h.midpoint:.10g} / {h.mean.value:.10g} / {h.endpoints:.10g}")

show("1/x", 1, 2)

# a linear function makes the first bound an equality
show("x", 1, 3, qs=(1,))

# |f'| = ln x + 1 is concave: the convex-gated bounds drop out,
# the midpoint-slope bound takes over
show("x*ln(x)", 1, 2)

# concave f: the double inequality flips
show("ln(x)", 1, 2, qs=())
