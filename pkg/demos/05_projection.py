"""One-variable quantifier elimination over the closed unit disc.

Ultrametric sublevel sets {|P(t)| <= c} of split polynomials are finite
unions of discs around the roots; comparing two such polynomials is
decided exactly by scanning the disc-tree cells cut out by root distances
and crossing radii.  Conjunctions of prepared atoms are decided with a
verified witness: rigid when a rational point works, monomial when only a
Gauss-type point does.
"""

from fractions import Fraction

from padicgeom import (Atom, Disc, NormValue, RigidPoint, Series, Space,
                       SplitAtom, SplitPoly, SwissPiece, VarSpec,
                       decide_exists, lemniscate_region, project_pointwise,
                       qe_prepare, split_series)

p = 2
ONE = NormValue.one()
CONST1 = SplitPoly(Fraction(1), ())

print("== lemniscates ==")
P = SplitPoly(Fraction(1), ((Fraction(0), 1), (Fraction(2), 1)))  # T(T-2)
for piece in lemniscate_region(P, "<=", NormValue.power(-3), p):
    d = piece.outer
    print(f"  |T(T-2)| <= 2^-3 contains the disc around {d.center} "
          f"of radius {d.radius.text(p)}")

print("\n== existential decisions ==")
atom = SplitAtom(ONE, P, "<=", NormValue.power(-3), CONST1)
d = decide_exists([atom], p)
print(f"  exists t in B with |t(t-2)| <= 2^-3:  {d.status}, "
      f"witness {d.witness.text()}")

pinned = (SwissPiece(Disc(Fraction(1), NormValue.power(-10), True)),)
d2 = decide_exists([atom], p, pinned)
print(f"  same, but t must be within 2^-10 of 1:  {d2.status}")

band = [SplitAtom(ONE, SplitPoly(Fraction(1), ((Fraction(0), 1),)), "<=",
                  NormValue.power("-1/2"), CONST1),
        SplitAtom(NormValue.power("-1/2"), CONST1, "<=", ONE,
                  SplitPoly(Fraction(1), ((Fraction(0), 1),)))]
d3 = decide_exists(band, p)
print(f"  the circle |t| = 2^-1/2:  {d3.status}, witness {d3.witness.text()} "
      f"(no rigid point qualifies)")

print("\n== preparing atoms first ==")
wide = Space(p, (VarSpec("T", NormValue.power(1)),))
f = Series(wide, {(1,): 1, (2,): 2})  # T + 2T^2 = (1 + 2T) T on the disc
atom_w = Atom(ONE, f, "<=", NormValue.power(-1), Series.one(wide))
prep = qe_prepare([atom_w], "T")
pa = prep.atoms[0]
print(f"  |T + 2T^2| <= 2^-1 becomes "
      f"{pa.scale_left.text(p)}*|{pa.left.text()}| {pa.op} "
      f"{pa.scale_right.text(p)}*|{pa.right.text()}|")

print("\n== pointwise projection over a base ==")
base = Space(p, (VarSpec("x", ONE),))
total = Space(p, (VarSpec("x", ONE), VarSpec("t", ONE)))
graph = Atom(ONE, Series(total, {(1, 1): 1, (2, 0): -1}), "<=",
             NormValue.zero(), Series.one(total))  # t x = x^2
for a in (2, 4):
    val = project_pointwise([graph], RigidPoint(base, (a,)), "t")
    print(f"  exists t in B with t*{a} = {a}^2:  {val}")

print("\n== splitting helper ==")
g = Series(Space(p, (VarSpec("t", ONE),)), {(2,): 1, (1,): -4, (0,): 4})
print(f"  t^2 - 4t + 4 splits as {split_series(g).roots}")
