"""Blow-up charts of the bidisc at the origin.

The blow-up glues two charts, (x, t) -> (x, t x) and (y, t) -> (t y, y).
Functions pull back exactly; polynomials in the chart variable push back
down after clearing an x-power; and once two germs are monomialized in
local parameters, divisibility is a componentwise exponent test.
"""

from fractions import Fraction

from padicgeom import (Chart, MonomialUnitForm, NormValue, RigidPoint,
                       Series, Space, VarSpec, certify_unit, chart_transition,
                       factor_x_power, local_divisibility, pullback_chart,
                       pushdown_poly)

p = 2
plane = Space(p, (VarSpec("x", NormValue.one()), VarSpec("y", NormValue.one())))
ch1, ch2 = Chart(1, plane), Chart(2, plane)

print("== pullback ==")
h = Series(plane, {(0, 1): 1, (2, 0): -1})  # y - x^2
up = pullback_chart(h, ch1)
print(f"  (y - x^2) on chart 1: {up.text()}")
print(f"  x on chart 2: {pullback_chart(Series.variable(plane, 'x'), ch2).text()}")

q = RigidPoint(ch1.space(), (2, 3))
print(f"  evaluation commutes at (x, t) = (2, 3): "
      f"{up.eval_exact(q.coords)} = {h.eval_exact(ch1.to_base(q).coords)}")

print("\n== factoring out the exceptional coordinate ==")
chart_sp = ch1.space()
w = Series(chart_sp, {(2, 1): 1, (3, 2): 1})  # x^2 t + x^3 t^2
b, rest = factor_x_power(w, "x")
print(f"  x^2*t + x^3*t^2 = x^{b} * ({rest.text()})")

print("\n== pushing a chart polynomial down ==")
P = Series(chart_sp, {(0, 1): 1, (1, 0): -1})  # t - x
m, down = pushdown_poly(P, ch1)
print(f"  x^{m} * (t - x) is the pullback of {down.text()}")

print("\n== the chart transition ==")
out = chart_transition(q, ch1, ch2)
print(f"  chart 1 point (2, 3) is chart 2 point "
      f"({out.coords[0]}, {out.coords[1]}); base images "
      f"{ch1.to_base(q).coords} = {ch2.to_base(out).coords}")

print("\n== local divisibility of monomialized germs ==")
u = certify_unit(Series.one(plane))
f_form = MonomialUnitForm(u, 2, 0)   # xi1^2
g_form = MonomialUnitForm(u, 3, 1)   # xi1^3 xi2
print(f"  xi1^2 vs xi1^3*xi2: {local_divisibility(f_form, g_form)}")
print(f"  xi1 vs xi2: "
      f"{local_divisibility(MonomialUnitForm(u, 1, 0), MonomialUnitForm(u, 0, 1))}")
