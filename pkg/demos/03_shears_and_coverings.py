"""Turning any polynomial into a distinguished one with a shear.

The shear T_i -> T_i + pivot^(d_i) with exponents d, d^2, ... grades every
monomial by the base-d encoding of its exponent vector, so on a polydisc
with radii slightly above 1 the lexicographically greatest norm-maximal
monomial takes over as the distinguished order.  The carrier
decomposition and the unit-ideal covering put general coefficients into
the shape the transform wants.
"""

from fractions import Fraction

from padicgeom import (NormValue, Series, Space, VarSpec, apply_shear,
                       carrier_decompose, distinguished_order,
                       make_distinguished, membership, ConstructibleSet,
                       RigidPoint, unit_coefficient_covering)

p = 2
plane = Space(p, (VarSpec("T1", NormValue.power(1)),
                  VarSpec("T2", NormValue.power(1))))

print("== the distinguishing shear ==")
f = Series.monomial(plane, (1, 1))  # T1*T2: not T2-distinguished as is
res = make_distinguished([f], "T2")
print(f"  digit bound d = {res.base}, pivot radius s = {res.s.text(p)}")
print(f"  sheared series: {res.transformed[0].text()}")
print(f"  distinguished order = {res.orders[0]} "
      f"(the base-{res.base} encoding of (1, 1))")

back = apply_shear(res.transformed[0], res.shear.inverted())
print(f"  inverse shear restores: {back.text()}")

print("\n== carrier decomposition ==")
line = Space(p, (VarSpec("T", NormValue.one()),))
g = Series(line, {(1,): 3, (2,): 6})  # 3T + 6T^2
members, phis = carrier_decompose(g, NormValue.one())
print(f"  3T + 6T^2 = 3 (T + {phis[(1,)].text()})  with J = {sorted(members)}")
members2, _ = carrier_decompose(g, NormValue.power(-2))
print(f"  at eps = 2^-2 nothing folds: J = {sorted(members2)}")

print("\n== covering on which a family factors ==")
# base B^1 with coordinate a, fiber variable T; f = a T + a^2 T^2
sp = Space(p, (VarSpec("a", NormValue.one()), VarSpec("T", NormValue.one())))
fam = Series(sp, {(1, 1): 1, (2, 2): 1})
pieces = unit_coefficient_covering(
    fam, ["T"], [(1,), (2,)],
    {(1,): Series.zero(sp), (2,): Series.zero(sp)})
for piece in pieces:
    if piece.index is None:
        print("  residual piece: the locus where every coefficient vanishes")
        continue
    print(f"  piece nu = {piece.index}: complexity "
          f"{piece.chain.complexity}, pullback cofactor "
          f"{piece.cofactor.text()}")

base = Space(p, (VarSpec("a", NormValue.one()),))
chain = next(pc.chain for pc in pieces if pc.index == (1,))
one_piece = ConstructibleSet(base, (chain,))
for a in (2, 0):
    print(f"  piece nu=(1,) contains a = {a}: "
          f"{membership(one_piece, RigidPoint(base, (a,)))}")
