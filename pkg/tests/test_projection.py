from fractions import Fraction

import pytest

from padicgeom import (Atom, Disc, MonomialPoint, NormValue, RigidPoint,
                       Series, Space, SplitAtom, SplitPoly, SwissPiece,
                       VarSpec, decide_exists, lemniscate_region,
                       project_decision, project_pointwise, qe_prepare,
                       region_contains, split_series)
from conftest import ONE, ZERO, nv, poly, rand_rigid, space


def unit_line(p=2):
    return space(p, ("T", 0))


CONST1 = SplitPoly(Fraction(1), ())


def test_split_series_basics():
    sp = unit_line()
    f = poly(sp, {(2,): 1, (1,): -2})  # T(T-2)
    sf = split_series(f)
    assert sf.lead == 1 and sf.roots == ((Fraction(0), 1), (Fraction(2), 1))
    sq = split_series(poly(sp, {(2,): 1, (1,): -4, (0,): 4}))  # (T-2)^2
    assert sq.roots == ((Fraction(2), 2),)
    assert split_series(poly(sp, {(2,): 1, (0,): 1})) is None  # T^2 + 1 (p=2)
    assert split_series(poly(sp, {(2,): 3, (0,): -3}),
                        hints=[Fraction(1)]) is not None


def test_lemniscate_examples():
    P = SplitPoly(Fraction(1), ((Fraction(0), 1), (Fraction(2), 1)))
    region = lemniscate_region(P, "<=", nv(-3), 2)
    discs = sorted((pc.outer.center, pc.outer.radius, pc.outer.closed)
                   for pc in region)
    assert discs == [(Fraction(0), nv(-2), True), (Fraction(2), nv(-2), True)]

    T = SplitPoly(Fraction(1), ((Fraction(0), 1),))
    whole = lemniscate_region(T, "<=", ONE, 2)
    assert len(whole) == 1 and whole[0].outer.radius == ONE

    roots_only = lemniscate_region(T, "<=", ZERO, 2)
    assert len(roots_only) == 1 and roots_only[0].outer.radius == ZERO


def test_lemniscate_matches_direct_evaluation(rng):
    for _ in range(200):
        p = rng.choice([2, 3])
        n_roots = rng.randint(1, 3)
        roots = {}
        deg = 0
        for _ in range(n_roots):
            a = Fraction(rng.choice([0, 1, -1, p, 2 * p, p * p]))
            m = rng.randint(1, 2)
            if deg + m > 5:
                break
            roots[a] = roots.get(a, 0) + m
            deg += m
        if not roots:
            roots = {Fraction(0): 1}
        lead = Fraction(rng.choice([1, 2, 3])) * Fraction(p) ** rng.randint(-1, 1)
        P = SplitPoly(lead, tuple(sorted(roots.items())))
        cmp = rng.choice(["<=", "<"])
        c = NormValue.power(Fraction(rng.randint(-8, 4), rng.choice([1, 2])))
        region = lemniscate_region(P, cmp, c, p)
        sp = unit_line(p)
        for _ in range(100):
            if rng.random() < 0.5:
                t = Fraction(rng.randint(-8, 8))
                if NormValue.of_scalar(t, p) > ONE:
                    continue
                point = RigidPoint(sp, (t,))
                val = P.value_at_rigid(t, p)
            else:
                center = Fraction(rng.choice([0, 1, p]))
                rho = NormValue.power(Fraction(rng.randint(-6, 0),
                                               rng.choice([1, 2])))
                point = MonomialPoint(sp, (center,), (rho,))
                val = P.value_at_disc(center, rho, p)
            want = val <= c if cmp == "<=" else val < c
            assert region_contains(region, point) == want


def test_decide_exists_examples():
    P = SplitPoly(Fraction(1), ((Fraction(0), 1), (Fraction(2), 1)))
    atom = SplitAtom(ONE, P, "<=", nv(-3), CONST1)
    d = decide_exists([atom], 2)
    assert d.status == "SAT"
    pin = (SwissPiece(Disc(Fraction(1), nv(-10), True)),)
    assert decide_exists([atom], 2, pin).status == "UNSAT"

    t_only = SplitAtom(ONE, SplitPoly(Fraction(1), ((Fraction(0), 1),)),
                       "<=", ONE, CONST1)
    d3 = decide_exists([t_only], 2)
    assert d3.status == "SAT"
    assert isinstance(d3.witness, RigidPoint)


def test_decide_exists_witnesses_verify(rng):
    for _ in range(40):
        p = rng.choice([2, 3])
        atoms = []
        for _ in range(rng.randint(1, 3)):
            roots = {}
            for _ in range(rng.randint(1, 2)):
                a = Fraction(rng.choice([0, 1, p]))
                roots[a] = roots.get(a, 0) + 1
            P = SplitPoly(Fraction(rng.choice([1, 2, 3])),
                          tuple(sorted(roots.items())))
            c = NormValue.power(rng.randint(-5, 2))
            op = rng.choice(["<=", "<"])
            if rng.random() < 0.5:
                atoms.append(SplitAtom(ONE, P, op, c, CONST1))
            else:
                atoms.append(SplitAtom(c, CONST1, op, ONE, P))
        d = decide_exists(atoms, p)
        if d.status == "SAT":
            w = d.witness
            if isinstance(w, RigidPoint):
                assert all(a.holds_at_rigid(w.coords[0], p) for a in atoms)
            else:
                assert all(a.holds_at_disc(w.center[0], w.rho[0], p)
                           for a in atoms)


def test_decide_exists_threshold_monotone(rng):
    for _ in range(30):
        p = 2
        roots = {Fraction(rng.choice([0, 1, 2])): rng.randint(1, 2)}
        P = SplitPoly(Fraction(1), tuple(sorted(roots.items())))
        e = rng.randint(-6, 0)
        a1 = SplitAtom(ONE, P, "<=", NormValue.power(e), CONST1)
        a2 = SplitAtom(ONE, P, "<=", NormValue.power(e + 1), CONST1)
        d1 = decide_exists([a1], p)
        d2 = decide_exists([a2], p)
        if d1.status == "SAT":
            assert d2.status == "SAT"


def test_rigid_witness_preferred_on_value_group_radii():
    # the sphere |T| = 2^-1 contains rational points; the witness search
    # must surface one rather than fall back to a monomial point
    T = SplitPoly(Fraction(1), ((Fraction(0), 1),))
    sphere = [SplitAtom(ONE, T, "<=", nv(-1), CONST1),
              SplitAtom(nv(-1), CONST1, "<=", ONE, T)]
    d = decide_exists(sphere, 2)
    assert d.status == "SAT"
    assert isinstance(d.witness, RigidPoint)
    assert NormValue.of_scalar(d.witness.coords[0], 2) == nv(-1)


def test_gauss_circle_needs_monomial_witness():
    # |T| = 2^(-1/2) has no rigid points; the witness must be monomial
    band = [
        SplitAtom(ONE, SplitPoly(Fraction(1), ((Fraction(0), 1),)), "<=",
                  nv("-1/2"), CONST1),
        SplitAtom(nv("-1/2"), CONST1, "<=", ONE,
                  SplitPoly(Fraction(1), ((Fraction(0), 1),))),
    ]
    d = decide_exists(band, 2)
    assert d.status == "SAT"
    assert isinstance(d.witness, MonomialPoint)
    assert d.witness.rho[0] == nv("-1/2")


def test_qe_prepare_worked_example():
    sp = space(2, ("T", 1))
    f = poly(sp, {(1,): 1, (2,): 2})
    atom = Atom(ONE, f, "<=", nv(-1), Series.one(sp))
    prep = qe_prepare([atom], "T")
    a = prep.atoms[0]
    assert a.scale_left == ONE
    assert a.left.coeffs == {(1,): Fraction(1)}
    assert a.scale_right == nv(-1)

    monic = poly(sp, {(3,): 1})
    atom2 = Atom(ONE, monic, "<=", ONE, Series.one(sp))
    prep2 = qe_prepare([atom2], "T")
    assert prep2.atoms[0].left.coeffs == {(3,): Fraction(1)}
    assert prep2.atoms[0].scale_left == ONE


def test_qe_prepare_pointwise_equivalence(rng):
    sp = space(2, ("T", 1))
    unit_space = unit_line()
    f = poly(sp, {(1,): 1, (2,): 2})
    g = poly(sp, {(0,): 4, (1,): 2})
    atoms = [Atom(ONE, f, "<=", nv(-1), Series.one(sp)),
             Atom(nv(1), g, "<", ONE, f)]
    prep = qe_prepare(atoms, "T")
    for _ in range(60):
        t = rand_rigid(rng, unit_space).coords[0]
        orig_pt = RigidPoint(sp, (t,))
        for atom, patom in zip(atoms, prep.atoms):
            lhs = atom.f.eval_seminorm(orig_pt).value * atom.alpha
            rhs = atom.g.eval_seminorm(orig_pt).value * atom.beta
            want = lhs <= rhs if atom.op == "<=" else lhs < rhs
            pl = patom.left.substitute(
                {"T": Series.variable(unit_space, "T")}) \
                .eval_seminorm(RigidPoint(unit_space, (t,))).value
            pr = patom.right.substitute(
                {"T": Series.variable(unit_space, "T")}) \
                .eval_seminorm(RigidPoint(unit_space, (t,))).value
            got_l, got_r = patom.scale_left * pl, patom.scale_right * pr
            got = got_l <= got_r if patom.op == "<=" else got_l < got_r
            assert got == want


def test_qe_prepare_rejects_unit_radii():
    sp = unit_line()
    atom = Atom(ONE, Series.variable(sp, "T"), "<=", ONE, Series.one(sp))
    with pytest.raises(ValueError, match="radii > 1"):
        qe_prepare([atom], "T")


def test_project_pointwise_examples():
    base = space(2, ("x", 0))
    sp = space(2, ("x", 0), ("t", 0))
    graph = Atom(ONE, poly(sp, {(1, 1): 1, (2, 0): -1}), "<=",
                 ZERO, Series.one(sp))  # t x - x^2 = 0
    at2 = RigidPoint(base, (2,))
    assert project_pointwise([graph], at2, "t") is True

    bound = Atom(ONE, Series.constant(sp, 2), "<", ONE,
                 poly(sp, {(1, 0): 1}))  # |2| < |x| fails on the unit disc
    assert project_pointwise([graph, bound], at2, "t") is False

    status, witness = project_decision([], at2, "t")
    assert status == "SAT" and witness.coords == (Fraction(0),)


def test_project_pointwise_unsplittable_returns_unknown():
    base = space(2, ("x", 0))
    sp = space(2, ("x", 0), ("t", 0))
    # t^2 + 1 = 0 has no 2-adic rational roots and never vanishes on B
    irr = Atom(ONE, poly(sp, {(0, 2): 1, (0, 0): 1}), "<=",
               ZERO, Series.one(sp))
    out = project_pointwise([irr], RigidPoint(base, (0,)), "t")
    assert out is None
