"""Shared builders and seeded random generators for the test suite."""

import math
import random
from fractions import Fraction

import pytest

from padicgeom import (NormValue, RigidPoint, Series, Space, VarSpec,
                       distinguished_order)


def space(p, *specs):
    """space(2, ('x', 0), ('y', 1)) -> polydisc with radii p^0, p^1."""
    return Space(p, tuple(VarSpec(n, NormValue.power(Fraction(str(e))))
                          for n, e in specs))


def poly(sp, terms):
    """poly(sp, {(1, 0): '3/4', ...}) -> exact series."""
    return Series(sp, {e: Fraction(str(c)) for e, c in terms.items()})


def nv(e):
    return NormValue.power(Fraction(str(e)))


ZERO = NormValue.zero()
ONE = NormValue.one()


def ceil_frac(x) -> int:
    return math.ceil(Fraction(x))


def rand_unit_scalar(rng, p, size=6):
    """A rational with zero valuation: unit numerator and denominator."""
    while True:
        a = rng.randint(-size, size)
        if a != 0 and a % p != 0:
            break
    while True:
        b = rng.randint(1, size)
        if b % p != 0:
            break
    return Fraction(a, b)


def rand_scalar(rng, p, vmin=-2, vmax=4):
    """A nonzero rational with valuation in [vmin, vmax]."""
    v = rng.randint(vmin, vmax)
    return rand_unit_scalar(rng, p) * Fraction(p) ** v


def rand_series(rng, sp, max_terms=4, max_deg=3, vmin=-2, vmax=4):
    """A random exact series; terms may collide, so it can have fewer."""
    n = len(sp.vars)
    coeffs = {}
    for _ in range(rng.randint(1, max_terms)):
        expo = tuple(rng.randint(0, max_deg) for _ in range(n))
        coeffs[expo] = rand_scalar(rng, sp.prime, vmin, vmax)
    return Series(sp, coeffs)


def rand_nonzero_series(rng, sp, **kw):
    while True:
        f = rand_series(rng, sp, **kw)
        if f.coeffs:
            return f


def rand_point_coord(rng, p, radius_exp, depth=4):
    """A rational with |x| <= p^radius_exp."""
    if rng.random() < 0.1:
        return Fraction(0)
    vmin = ceil_frac(-radius_exp)  # v >= -e makes |x| = p^-v <= p^e
    v = rng.randint(vmin, vmin + depth)
    return rand_unit_scalar(rng, p) * Fraction(p) ** v


def rand_rigid(rng, sp):
    coords = [rand_point_coord(rng, sp.prime, v.radius.exp)
              for v in sp.vars]
    return RigidPoint(sp, coords)


def rand_distinguished(rng, sp, pivot, max_order=4, series_unit=False,
                       above_slack=(1, 3)):
    """A series certified pivot-distinguished, by construction and checked.

    Row norms |c_n| r^n tie or trail the witness below the order and trail
    it strictly above (by a margin drawn from ``above_slack``, which also
    sets the division contraction rate); with ``series_unit`` the order
    coefficient becomes scalar * (1 + small) in another variable.
    """
    p = sp.prime
    r_exp = sp.radius(pivot).exp
    s = rng.randint(0, max_order)
    deg = s + rng.randint(0, 3)
    pivot_idx = sp.index(pivot)
    rest = [v for v in sp.vars if v.name != pivot]

    lead = rand_scalar(rng, p, -2, 2)
    v_lead = -NormValue.of_scalar(lead, p).exp

    coeffs = {}

    def expo_of(n, other=None, k=0):
        e = [0] * len(sp.vars)
        e[pivot_idx] = n
        if other is not None:
            e[sp.index(other.name)] = k
        return tuple(e)

    coeffs[expo_of(s)] = lead
    if rest and series_unit:
        var = rng.choice(rest)
        k = rng.randint(1, 2)
        # |small| r_var^k < |lead|
        v_small = ceil_frac(v_lead + k * var.radius.exp) + rng.randint(1, 2)
        coeffs[expo_of(s, var, k)] = \
            rand_unit_scalar(rng, p) * Fraction(p) ** v_small

    for n in range(0, deg + 1):
        if n == s or rng.random() < 0.35:
            continue
        k = 0
        var = None
        if rest and rng.random() < 0.4:
            var = rng.choice(rest)
            k = rng.randint(1, 2)
        extra = k * var.radius.exp if var is not None else 0
        bound = v_lead + (n - s) * r_exp + extra
        slack = rng.randint(*above_slack) if n > s else rng.randint(0, 2)
        v_n = ceil_frac(bound) + slack
        coeffs[expo_of(n, var, k)] = \
            rand_unit_scalar(rng, p) * Fraction(p) ** v_n

    g = Series(sp, coeffs)
    cert = distinguished_order(g, pivot)
    assert cert is not None and cert.order == s, "generator invariant"
    return g, cert


@pytest.fixture
def rng():
    return random.Random(20260810)
