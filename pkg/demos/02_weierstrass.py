"""Weierstrass division and preparation with certified residuals.

A series g is pivot-distinguished of order s when its s-th coefficient is
a multiplicative unit carrying the whole Gauss norm, with strictly smaller
weighted rows above.  Division by such a g terminates with a contraction
loop whose per-round defect shrinks by a fixed factor; preparation factors
g into (unit) * (monic of degree s).
"""

from padicgeom import (NormValue, Series, Space, VarSpec, certify_unit,
                       distinguished_order, invert_unit, weierstrass_divide,
                       weierstrass_prepare)

p = 2
line = Space(p, (VarSpec("T", NormValue.one()),))
T = Series.variable(line, "T")


def S(text_coeffs):
    return Series(line, text_coeffs)


print("== multiplicative units ==")
u = Series.one(line) + T.scale(2)  # 1 + 2T, ||2T|| = 1/2 < 1
cert = certify_unit(u)
print(f"  1 + 2T certifies with ||u|| = {cert.norm().text(p)}")
v = invert_unit(cert, NormValue.power(-3))
print(f"  inverse to within 2^-3: {v.text()}  (tail <= {v.tail.text(p)})")

print("\n== distinguished order ==")
g = S({(1,): 1, (2,): 2})  # T + 2T^2
dcert = distinguished_order(g, "T")
print(f"  T + 2T^2 is T-distinguished of order {dcert.order} "
      f"(witness {dcert.norm_witness.text(p)})")

print("\n== division ==")
f = S({(2,): 1, (1,): 2, (0,): 4})
out = weierstrass_divide(f, Series.variable(line, "T"),
                         distinguished_order(T, "T"), NormValue.zero())
print(f"  T^2 + 2T + 4 = T * ({out.quotient.text()}) + {out.remainder.text()}"
      f"   residual {out.residual.text(p)}")

out2 = weierstrass_divide(T, g, dcert, NormValue.power(-4))
print(f"  T = (T + 2T^2) q + R with q = {out2.quotient.text()}, "
      f"R = {out2.remainder.text()}")
print(f"  residual = {out2.residual.text(p)}, defects per round:",
      [h.text(p) for h in out2.iterations])

print("\n== preparation ==")
prep = weierstrass_prepare(g, dcert, NormValue.power(-8))
print(f"  T + 2T^2 = ({prep.unit.text()}) * ({prep.monic.text()}), "
      f"residual {prep.residual.text(p)}")

g2 = S({(0,): 2, (1,): 1})  # 2 + T: already a degree-1 polynomial
prep2 = weierstrass_prepare(g2, distinguished_order(g2, "T"),
                            NormValue.zero())
print(f"  2 + T = ({prep2.unit.text()}) * ({prep2.monic.text()})  exactly")
