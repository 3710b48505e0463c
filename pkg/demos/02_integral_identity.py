"""
The deviation functional and its integral form
==============================================

D(f) combines the mean value of f, a weighted endpoint term and the
midpoint value. The same number comes out of two weighted integrals of
f', which is what every bound in the package is built on.
"""

from hhineq.exprdsl import differentiate, parse
from hhineq.hhcore import deviation, lemma_integrands, lemma_rhs, slack

iv = (1.0, 2.0)

for text in ["1/x", "x^2", "-ln(x)", "exp(x)", "x*ln(x)"]:
    f = parse(text)
    d = deviation(f, iv)
    r = lemma_rhs(f, iv)
    ok = abs(d.value - r.value) <= slack(d.err + r.err)
    print(f"{text:>8}  D = {d.value:+.15f}  integral form = {r.value:+.15f}  agree: {ok}")

# the integrands themselves: (w0 + w1 t) f'(c0 + c1 t) on t in [0, 1]
first, second = lemma_integrands(parse("exp(x)"), iv)
print(first)
print(second)
print("derivative used:", differentiate(parse("exp(x)")).text)
print("substitutions stay in [a, b]:", first.maps_into(*iv) and second.maps_into(*iv))
