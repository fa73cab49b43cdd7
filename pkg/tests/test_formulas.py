from fractions import Fraction

import pytest

from padicgeom import (And, Atom, MonomialPoint, Not, NormValue, Or,
                       RigidPoint, Series, eval_formula, formula_text, negate,
                       parse_formula, to_dnf)
from padicgeom.formulas import (FormulaSyntaxError, dnf_to_formula,
                                eval_conjunct, parse_poly)
from conftest import ONE, ZERO, nv, poly, rand_nonzero_series, rand_rigid, space


def XY(p=2):
    return space(p, ("x", 0), ("y", 0))


def test_parse_atom_with_scales():
    sp = XY()
    phi = parse_formula("|x^2 - 2*y| <= 2^-1 * |y|", sp)
    assert isinstance(phi, Atom)
    assert phi.alpha == ONE and phi.beta == nv(-1)
    assert phi.f == poly(sp, {(2, 0): 1, (0, 1): -2})
    assert phi.g == Series.variable(sp, "y")
    assert phi.op == "<="


def test_parse_connectives_and_equality_encoding():
    sp = XY()
    phi = parse_formula("!(|x| < |y|) & |y| <= |1|", sp)
    assert isinstance(phi, And) and isinstance(phi.args[0], Not)
    zero_atom = parse_formula("|x| <= 0 * |1|", sp)
    assert zero_atom.beta == ZERO
    x0 = RigidPoint(sp, (0, 2))
    x1 = RigidPoint(sp, (1, 2))
    assert eval_formula(zero_atom, x0) is True
    assert eval_formula(zero_atom, x1) is False


def test_parse_errors():
    sp = XY()
    with pytest.raises(FormulaSyntaxError):
        parse_formula("|x| <=", sp)
    with pytest.raises(FormulaSyntaxError):
        parse_formula("|z| <= |1|", sp)


def test_negate_examples():
    sp = XY()
    a = parse_formula("|x| <= |y|", sp)
    na = negate(a)
    assert isinstance(na, Atom) and na.op == "<" and na.f == a.g and na.g == a.f
    eq = parse_formula("|x| <= 0*|1|", sp)
    neq = negate(eq)
    assert neq.op == "<" and neq.alpha == ZERO
    assert negate(Not(a)) == a


def test_dnf_distribution():
    sp = XY()
    phi = parse_formula("(|x| <= |1| | |y| <= |1|) & |x - y| < |1|", sp)
    conjuncts = to_dnf(phi)
    assert len(conjuncts) == 2
    assert all(len(c.atoms) == 2 for c in conjuncts)
    single = to_dnf(parse_formula("|x| < |y|", sp))
    assert len(single) == 1 and len(single[0].atoms) == 1


def test_dnf_of_contradiction_evaluates_false(rng):
    sp = XY()
    a = parse_formula("|x| <= 2^-1*|1|", sp)
    phi = And((a, Not(a)))
    conjuncts = to_dnf(phi)
    for _ in range(30):
        x = rand_rigid(rng, sp)
        assert eval_formula(dnf_to_formula(conjuncts), x) is False


def test_eval_examples():
    sp = space(2, ("T", 0))
    phi = parse_formula("|T| <= 2^-1*|1|", sp)
    assert eval_formula(phi, RigidPoint(sp, (2,))) is True
    eta = MonomialPoint(sp, (0,), (nv("-1/2"),))
    assert eval_formula(phi, eta) is False
    circle = parse_formula("|T| <= 2^-1/2*|1| & !(|T| < 2^-1/2*|1|)", sp)
    assert eval_formula(circle, eta) is True
    for c in (0, 1, 2, 3, Fraction(1, 3), 6):
        assert eval_formula(circle, RigidPoint(sp, (c,))) is False


def test_negation_is_kleene_involution(rng):
    sp = XY()
    for _ in range(50):
        atoms = []
        for _ in range(rng.randint(1, 3)):
            atoms.append(Atom(ONE, rand_nonzero_series(rng, sp, vmin=-1),
                              rng.choice(["<=", "<"]), ONE,
                              rand_nonzero_series(rng, sp, vmin=-1)))
        phi = And(tuple(atoms)) if len(atoms) > 1 else atoms[0]
        x = rand_rigid(rng, sp)
        v, nv_ = eval_formula(phi, x), eval_formula(negate(phi), x)
        assert nv_ is (None if v is None else (not v))


def test_dnf_pointwise_equivalent(rng):
    sp = XY()
    for _ in range(40):
        def atom():
            return Atom(ONE, rand_nonzero_series(rng, sp, max_deg=2, vmin=-1),
                        rng.choice(["<=", "<"]), ONE,
                        rand_nonzero_series(rng, sp, max_deg=2, vmin=-1))
        phi = Or((And((atom(), Not(atom()))), atom()))
        conjuncts = to_dnf(phi)
        for _ in range(10):
            x = rand_rigid(rng, sp)
            want = eval_formula(phi, x)
            got = False
            for c in conjuncts:
                v = eval_conjunct(c, x)
                if v is True:
                    got = True
                    break
            else:
                got = False
            assert got == want


def test_print_parse_round_trip(rng):
    sp = XY()
    texts = [
        "|x| <= 2^-1*|1|",
        "!(|x| < |y|) & |y| <= |1|",
        "|x| <= 0*|1| | |y^2 - x| < 2^3*|x|",
        "2^-1/2*|x*y| < |x + y - 1|",
    ]
    for t in texts:
        phi = parse_formula(t, sp)
        assert parse_formula(formula_text(phi), sp) == phi


def test_poly_parser_implicit_multiplication():
    sp = space(2, ("T", 0))
    assert parse_poly("T^2+2T+4", sp) == poly(sp, {(2,): 1, (1,): 2, (0,): 4})
    assert parse_poly("3/4*T", sp) == poly(sp, {(1,): "3/4"})
    assert parse_poly("-(T - 1)^2", sp) == poly(sp, {(2,): -1, (1,): 2, (0,): -1})
