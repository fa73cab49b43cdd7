"""Exact scalars, Gauss norms, and the two kinds of points.

Everything in padicgeom is exact: scalars are rationals, norms live in the
value group p^Q u {0} stored as rational exponents.  This walk-through
builds a few series, reads off their Gauss norms, and evaluates seminorms
at rigid points and at monomial (Gauss-type) points.
"""

from fractions import Fraction

from padicgeom import (MonomialPoint, NormValue, RigidPoint, Series, Space,
                       VarSpec, gauss_point, valuation)

p = 2

print("== valuations and norms ==")
for a in [4, Fraction(6, 5), Fraction(1, 2), 7]:
    print(f"  v_2({a}) = {valuation(a, p)},  |{a}| = "
          f"{NormValue.of_scalar(a, p).text(p)}")

# A one-variable unit disc.
line = Space(p, (VarSpec("T", NormValue.one()),))
T = Series.variable(line, "T")

f = T * T - Series.constant(line, 4)          # T^2 - 4
print("\n== Gauss norms ==")
print(f"  f = {f.text()},  ||f|| = {f.gauss_norm().value.text(p)}")

# Radii may be any rational power of p.  On the polydisc with radii
# (2^(1/2), 2^(1/4)) the monomial T1*T2 has norm 2^(3/4).
s = Fraction(1, 4)
plane = Space(p, (VarSpec("T1", NormValue.power(2 * s)),
                  VarSpec("T2", NormValue.power(s))))
m = Series.monomial(plane, (1, 1))
print(f"  ||T1*T2|| on the (2^1/2, 2^1/4)-polydisc = "
      f"{m.gauss_norm().value.text(p)}")

print("\n== seminorms at points ==")
x = RigidPoint(line, (2,))
print(f"  |T^2 - 4| at the rigid point T = 2: "
      f"{f.eval_seminorm(x).value.text(p)}  (a root)")

g = T * (T - Series.constant(line, 2))
x4 = RigidPoint(line, (4,))
print(f"  |T(T-2)| at T = 4: {g.eval_seminorm(x4).value.text(p)}")

# The Gauss point of the disc: center 0, radius 1.  Its seminorm of any
# series is the full Gauss norm.
eta = gauss_point(line)
print(f"  |T(T-2)| at the Gauss point: {g.eval_seminorm(eta).value.text(p)}")

# A monomial point strictly between the rigid points: center 0, radius
# 2^(-1/2).  No rational point has this norm.
eta_half = MonomialPoint(line, (0,), (NormValue.power(Fraction(-1, 2)),))
print(f"  |T| at the monomial point of radius 2^-1/2: "
      f"{T.eval_seminorm(eta_half).value.text(p)}")

# Series may carry a certified tail: a bound on whatever remainder the
# stored polynomial stands for.  Comparisons become three-valued.
print("\n== certified tails ==")
h = (T + Series.constant(line, 2)).with_tail(NormValue.power(-5))
est = h.eval_seminorm(RigidPoint(line, (0,)))
print(f"  value = {est.value.text(p)}, uncertainty <= "
      f"{est.uncertainty.text(p)}, exact: {est.is_exact}")
