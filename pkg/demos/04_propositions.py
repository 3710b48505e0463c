"""
Closed forms in special means
=============================

Instantiating the bounds with 1/x, x^n and -ln x turns them into statements
about A, G, H, L, I and L_p. Each printed closed form is compared with a
direct substitution into the generic bound; mismatches are flagged.
"""

from hhineq.props import PropParams, prop_sweep, proposition

for k in range(1, 10):
    r = proposition(PropParams(k, (1.0, 2.0), n=2, q=2.0 if k > 3 else None))
    flags = [name for name, on in (("lhs", r.lhs_discrepancy), ("rhs", r.rhs_discrepancy)) if on]
    print(f"k={k} f={r.function:<7} |D|={r.lhs_true.value:.6f} printed lhs={r.lhs_paper:.6f} "
          f"rhs printed={r.rhs_paper:.6f} generic={r.rhs_generic:.6f} "
          f"{'flags: ' + ','.join(flags) if flags else ''}")

# across a grid the generic bounds never fail; the flags are about the
# printed forms only. At n = 2 the two middle terms differ by
# ab((a+b)/4 - 1/2), so (0.5, 1.5) is the one interval where they agree.
sweep = prop_sweep([(0.5, 1.5), (1, 2), (2, 7)], n_list=(2, 3, 4), q_list=(1.0, 1.5, 2.0, 4.0))
for k, c in sweep.discrepancy_counts().items():
    print(k, c)
