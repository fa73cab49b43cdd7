"""Constructible data: chart extensions t = f/g with norm constraints.

An elementary datum adjoins one chart variable t with |t| <= r and the
relation f = t g; its distinguished subset asks g != 0, |f| <= s |g| for a
threshold s < r, plus a semianalytic region over the extended space.  Datum
chains stack such extensions; a constructible set is a finite union of
chains over one base polydisc.  Membership at a rigid point is decided by
walking the chain outermost-in: each chart value t = f(x)/g(x) is uniquely
determined, so the walk is deterministic and exact on tail-free data.

The calculus implemented here: complement (by structural recursion on the
chain), intersection (fibered product = chain concatenation), union, the
divisibility rewrite that trades a datum for a Weierstrass or Laurent
domain, affinoid-neighbourhood data, and the covering attached to a
coefficient decomposition whose members generate the unit ideal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .scalars import NormValue
from .series import NormEstimate, RigidPoint, Series, Space, VarSpec, compare_le
from .formulas import (And, Atom, Formula, LE, LT, Not, dnf_to_formula,
                       eval_formula, lift_formula, negate,
                       rename_formula_var, tautology, to_dnf)


@dataclass(frozen=True)
class ElementaryDatum:
    """One chart extension over its domain space (f, g live there)."""

    t_name: str
    f: Series
    g: Series
    r: NormValue
    s: NormValue
    region: Formula  # over domain + {t_name: r}

    def __post_init__(self):
        if self.f.space != self.g.space:
            raise ValueError("datum functions live on different spaces")
        if self.s.is_zero or not self.s < self.r:
            raise ValueError("datum needs 0 < s < r")

    @property
    def domain(self) -> Space:
        return self.f.space

    @property
    def extended(self) -> Space:
        return self.domain.extend(VarSpec(self.t_name, self.r))


@dataclass(frozen=True)
class DatumChain:
    """A composite of elementary data over a base space.

    ``complexity`` is the stored number of links; it is part of the data
    and not recoverable from the composite map alone.
    """

    base: Space
    base_region: Formula
    links: Tuple[ElementaryDatum, ...]

    def __post_init__(self):
        space = self.base
        for link in self.links:
            if link.domain != space:
                raise ValueError(
                    f"link over {link.domain.names} does not match the "
                    f"expected domain {space.names}")
            space = link.extended

    @property
    def complexity(self) -> int:
        return len(self.links)

    def chart_names(self) -> List[str]:
        return [l.t_name for l in self.links]


@dataclass(frozen=True)
class ConstructibleSet:
    space: Space
    chains: Tuple[DatumChain, ...]

    def __post_init__(self):
        for ch in self.chains:
            if ch.base != self.space:
                raise ValueError("chain base does not match the set's space")

    @property
    def complexity(self) -> int:
        return max((ch.complexity for ch in self.chains), default=0)


def formula_set(space: Space, phi: Formula) -> ConstructibleSet:
    """The semianalytic set of phi as a complexity-0 constructible set."""
    return ConstructibleSet(space, (DatumChain(space, phi, ()),))


def _const_atom_truth(atom: Atom) -> Optional[bool]:
    """Truth of an atom whose sides are exact constants, else None."""
    cf, cg = atom.f.as_scalar(), atom.g.as_scalar()
    if cf is None or cg is None:
        return None
    p = atom.space.prime
    lhs = atom.alpha * NormValue.of_scalar(cf, p)
    rhs = atom.beta * NormValue.of_scalar(cg, p)
    return lhs <= rhs if atom.op == LE else lhs < rhs


def _region_always_false(phi: Formula) -> bool:
    """Conservative syntactic emptiness: only constant atoms decide."""
    if isinstance(phi, Atom):
        return _const_atom_truth(phi) is False
    if isinstance(phi, Not):
        return _region_always_true(phi.arg)
    if isinstance(phi, And):
        return any(_region_always_false(a) for a in phi.args)
    return all(_region_always_false(a) for a in phi.args)


def _region_always_true(phi: Formula) -> bool:
    if isinstance(phi, Atom):
        return _const_atom_truth(phi) is True
    if isinstance(phi, Not):
        return _region_always_false(phi.arg)
    if isinstance(phi, And):
        return all(_region_always_true(a) for a in phi.args)
    return any(_region_always_true(a) for a in phi.args)


def _chain_obviously_empty(chain: DatumChain) -> bool:
    if _region_always_false(chain.base_region):
        return True
    return any(_region_always_false(link.region) for link in chain.links)


def _pruned(space: Space, chains) -> ConstructibleSet:
    kept = tuple(ch for ch in chains if not _chain_obviously_empty(ch))
    return ConstructibleSet(space, kept)


def full_set(space: Space) -> ConstructibleSet:
    return formula_set(space, tautology(space))


# -- membership -----------------------------------------------------------------


def _kleene_and(a: Optional[bool], b: Optional[bool]) -> Optional[bool]:
    if a is False or b is False:
        return False
    if a is None or b is None:
        return None
    return True


def _chain_membership(chain: DatumChain, x: RigidPoint) -> Optional[bool]:
    out = eval_formula(chain.base_region, x)
    if out is False:
        return False
    pt = x
    for link in chain.links:
        f, g = link.f, link.g
        val_f = f.eval_exact(pt.coords)
        val_g = g.eval_exact(pt.coords)
        p = link.domain.prime
        lhs = NormEstimate(NormValue.of_scalar(val_f, p), f.tail)
        rhs = NormEstimate(NormValue.of_scalar(val_g, p), g.tail)
        exact = f.tail.is_zero and g.tail.is_zero
        if g.tail.is_zero and val_g == 0:
            return False
        nonzero = True if (g.tail.is_zero or g.tail < rhs.value) else None
        bounded = compare_le(lhs, rhs.scaled(link.s))
        if bounded is False:
            return False
        if nonzero is None or bounded is None or not exact:
            # the chart value is uncertain: nothing deeper is decidable
            return None
        t_val = val_f / val_g
        pt = pt.extend(VarSpec(link.t_name, link.r), t_val)
        rv = eval_formula(link.region, pt)
        if rv is False:
            return False
        out = _kleene_and(out, rv)
    return out


def membership(cs: ConstructibleSet, x: RigidPoint) -> Optional[bool]:
    """Kleene membership of a rigid point: OR over the chains.

    Unknown arises only from tail uncertainty; tail-free data evaluate
    two-valued.  Non-rigid points are out of scope: chart values live in
    the residue field of the point and are not materialized.
    """
    if not isinstance(x, RigidPoint):
        raise ValueError("constructible membership is defined at rigid "
                         "points only")
    x.check_in(cs.space)
    out: Optional[bool] = False
    for chain in cs.chains:
        v = _chain_membership(chain, x)
        if v is True:
            return True
        if v is None:
            out = None
    return out


# -- boolean calculus --------------------------------------------------------------


def union(a: ConstructibleSet, b: ConstructibleSet) -> ConstructibleSet:
    if a.space != b.space:
        raise ValueError("union needs a common base space")
    return ConstructibleSet(a.space, a.chains + b.chains)


def _fresh_name(used: Set[str], stem: str) -> str:
    if stem not in used:
        return stem
    k = 2
    while f"{stem}_{k}" in used:
        k += 1
    return f"{stem}_{k}"


def _chain_intersect(c1: DatumChain, c2: DatumChain) -> DatumChain:
    base = c1.base
    used = set(base.names) | set(c1.chart_names())
    region = And((c1.base_region, c2.base_region))
    links = list(c1.links)
    space = base
    for link in c1.links:
        space = link.extended
    renames: Dict[str, str] = {}
    for link in c2.links:
        f, g, reg = link.f, link.g, link.region
        for old, new in renames.items():
            if old in f.space.names:
                f = f.rename_var(old, new)
                g = g.rename_var(old, new)
            reg = rename_formula_var(reg, old, new)
        t_new = _fresh_name(used, link.t_name)
        if t_new != link.t_name:
            reg = rename_formula_var(reg, link.t_name, t_new)
        used.add(t_new)
        renames[link.t_name] = t_new
        f = f.lift_to(space)
        g = g.lift_to(space)
        ext = space.extend(VarSpec(t_new, link.r))
        reg = lift_formula(reg, ext)
        links.append(ElementaryDatum(t_new, f, g, link.r, link.s, reg))
        space = ext
    return DatumChain(base, region, tuple(links))


def intersect(a: ConstructibleSet, b: ConstructibleSet) -> ConstructibleSet:
    """Fibered product: pairwise chain concatenation; membership is the
    pointwise conjunction."""
    if a.space != b.space:
        raise ValueError("intersection needs a common base space")
    chains = [_chain_intersect(c1, c2) for c1 in a.chains for c2 in b.chains]
    return _pruned(a.space, chains)


def _formula_chains(space: Space, phi: Formula) -> List[DatumChain]:
    return [DatumChain(space, dnf_to_formula([conj]), ())
            for conj in to_dnf(phi)]


def _chain_complement(chain: DatumChain) -> ConstructibleSet:
    """Structural recursion on the complexity of the chain."""
    base = chain.base
    pieces: List[DatumChain] = []
    # the base region can fail outright
    pieces.extend(_formula_chains(base, negate(chain.base_region)))
    if not chain.links:
        return ConstructibleSet(base, tuple(pieces))
    head, rest = chain.links[0], chain.links[1:]
    f, g, s = head.f, head.g, head.s
    # |f| > s|g|  and  g = 0, both over the base
    pieces.append(DatumChain(base, Atom(s, g, LT, NormValue.one(), f), ()))
    pieces.append(DatumChain(
        base, Atom(NormValue.one(), g, LE, NormValue.zero(),
                   Series.one(base)), ()))
    # the chart satisfied but the region failed
    pieces.append(DatumChain(base, tautology(base), (
        ElementaryDatum(head.t_name, f, g, head.r, head.s,
                        negate(head.region)),)))
    if rest:
        # region held but the deeper part of the chain missed
        ext = head.extended
        sub = DatumChain(ext, tautology(ext), rest)
        sub_c = complement(ConstructibleSet(ext, (sub,)))
        for ch in sub_c.chains:
            pieces.append(DatumChain(base, tautology(base), (
                ElementaryDatum(head.t_name, f, g, head.r, head.s,
                                And((head.region, ch.base_region))),)
                + ch.links))
    return _pruned(base, pieces)


def complement(cs: ConstructibleSet) -> ConstructibleSet:
    """Pointwise complement within the base polydisc."""
    if not cs.chains:
        return full_set(cs.space)
    out: Optional[ConstructibleSet] = None
    for chain in cs.chains:
        piece = _chain_complement(chain)
        out = piece if out is None else intersect(out, piece)
    return out


# -- divisibility simplification ------------------------------------------------------


def simplify_divisible(d: ElementaryDatum, h: Series, case: str
                       ) -> Tuple[str, ElementaryDatum]:
    """Rewrite a datum whose chart functions divide each other.

    ``g_divides_f`` (f = g h): the chart collapses onto the Weierstrass
    domain |h| <= r, with region |h| <= s and g != 0.  ``f_divides_g``
    (g = f h): onto the Laurent domain |h| >= 1/r with |h| >= 1/s and
    g != 0.  The chart value is unchanged (t = h, resp. t = 1/h), so the
    region transfers verbatim, and the rewritten image set is
    membership-equal to the original.  The image sits in the s-sublevel of
    the r-chart, which is the separation a wide covering needs.
    """
    domain = d.domain
    if h.space != domain:
        raise ValueError("h must live on the datum's domain")
    if not (d.f.tail.is_zero and d.g.tail.is_zero and h.tail.is_zero):
        raise ValueError("divisibility rewriting needs exact series")
    # g != 0 encoded as 0*|1| < |g|
    g_nonzero = Atom(NormValue.zero(), Series.one(domain), LT,
                     NormValue.one(), d.g)
    if case == "g_divides_f":
        if d.g * h != d.f:
            raise ValueError("the identity f = g h does not hold")
        new = ElementaryDatum(
            d.t_name, h, Series.one(domain), d.r, d.s,
            And((d.region, lift_formula(g_nonzero, d.extended))))
        return "weierstrass", new
    if case == "f_divides_g":
        if d.f * h != d.g:
            raise ValueError("the identity g = f h does not hold")
        new = ElementaryDatum(
            d.t_name, Series.one(domain), h, d.r, d.s,
            And((d.region, lift_formula(g_nonzero, d.extended))))
        return "laurent", new
    raise ValueError(f"unknown case {case!r}")


# -- affinoid neighbourhood data ---------------------------------------------------


def neighborhood_datum(space: Space, fs: Sequence[Series], g: Series,
                       rs: Sequence[NormValue], ss: Sequence[NormValue]
                       ) -> DatumChain:
    """The fibered product of the elementary data t_i = f_i/g with
    |f_i| <= s_i |g| != 0, realizing the s-rational domain inside the
    r-rational one.  Requires r_i/2 < s_i < r_i (s_i in the value group)."""
    if len(fs) != len(rs) or len(fs) != len(ss):
        raise ValueError("fs, rs, ss must align")
    p = space.prime
    links = []
    domain = space
    for k, (f, r, s) in enumerate(zip(fs, rs, ss)):
        if s.is_zero or not s < r:
            raise ValueError("need 0 < s_i < r_i")
        if (s / r).compare_fraction(Fraction(1, 2), p) <= 0:
            raise ValueError("need r_i/2 < s_i")
        fl = f.lift_to(domain)
        gl = g.lift_to(domain)
        ext = domain.extend(VarSpec(f"t{k + 1}", r))
        links.append(ElementaryDatum(f"t{k + 1}", fl, gl, r, s,
                                     tautology(ext)))
        domain = ext
    return DatumChain(space, tautology(space), tuple(links))


# -- coverings from coefficient decompositions ----------------------------------------


@dataclass(frozen=True)
class CoveringPiece:
    chain: DatumChain
    index: Optional[Tuple[int, ...]]  # None for the residual vanishing piece
    cofactor: Optional[Series]        # pullback factor with unit coefficient


def unit_coefficient_covering(f: Series, fiber: Sequence[str],
                              members: Sequence[Tuple[int, ...]],
                              phis: Dict[Tuple[int, ...], Series],
                              chart_radius: Optional[NormValue] = None
                              ) -> List[CoveringPiece]:
    """Covering of the base on whose pieces f pulls back to f_nu * g_nu
    with g_nu carrying coefficient 1 at nu.

    The caller supplies the carrier decomposition f = sum over members of
    f_nu (T^nu + phi_nu); on each piece the other coefficients become chart
    multiples t_mu f_nu, yielding the factorization, which is verified here
    as an exact series identity.  A residual piece where every f_nu
    vanishes completes the covering (omitted when some f_nu is a nonzero
    scalar, in which case its piece already covers everything).
    """
    space = f.space
    p = space.prime
    if chart_radius is None:
        chart_radius = NormValue.power(1)
    members = [tuple(nu) for nu in members]
    base = space
    for name in fiber:
        base = base.drop(name)
    rows = dict(f.coeff_view_multi(list(fiber)))
    coeffs = {nu: rows.get(nu, Series.zero(base)).drop_tail() for nu in members}

    # consistency: f = sum f_nu (T^nu + phi_nu) exactly
    fiber_expo = {}
    for nu in members:
        expo = [0] * len(space.vars)
        for name, e in zip(fiber, nu):
            expo[space.index(name)] = e
        fiber_expo[nu] = tuple(expo)
    total = Series.zero(space)
    for nu in members:
        term = Series.monomial(space, fiber_expo[nu]) + phis[nu]
        total = total + term * coeffs[nu].lift_to(space)
    if total != f.drop_tail():
        raise ValueError("decomposition is inconsistent with f")

    def nonzero_region(series: Series, sp: Space) -> Formula:
        return Atom(NormValue.zero(), Series.one(sp), LT,
                    NormValue.one(), series)

    pieces: List[CoveringPiece] = []
    degenerate = False
    for nu in sorted(members):
        f_nu = coeffs[nu]
        others = [mu for mu in sorted(members) if mu != nu]
        links = []
        domain = base
        t_names = {}
        for mu in others:
            t_name = "t" + "_".join(str(e) for e in mu)
            t_names[mu] = t_name
            ext = domain.extend(VarSpec(t_name, chart_radius))
            links.append(ElementaryDatum(
                t_name, coeffs[mu].lift_to(domain), f_nu.lift_to(domain),
                chart_radius, NormValue.one(), tautology(ext)))
            domain = ext
        chain = DatumChain(base, nonzero_region(f_nu, base), tuple(links))
        # cofactor over the full space extended by the chart variables
        ext_space = space
        for mu in others:
            ext_space = ext_space.extend(VarSpec(t_names[mu], chart_radius))
        g_nu = (Series.monomial(ext_space, fiber_expo[nu] + (0,) * len(others))
                + phis[nu].lift_to(ext_space))
        for mu in others:
            t_var = Series.variable(ext_space, t_names[mu])
            g_nu = g_nu + t_var * (Series.monomial(
                ext_space, fiber_expo[mu] + (0,) * len(others))
                + phis[mu].lift_to(ext_space))
        # exact identity: f_nu g_nu = f + sum (t_mu f_nu - f_mu)(T^mu + phi_mu)
        lhs = coeffs[nu].lift_to(ext_space) * g_nu
        rhs = f.drop_tail().lift_to(ext_space)
        for mu in others:
            t_var = Series.variable(ext_space, t_names[mu])
            diff = (t_var * coeffs[nu].lift_to(ext_space)
                    - coeffs[mu].lift_to(ext_space))
            rhs = rhs + diff * (Series.monomial(
                ext_space, fiber_expo[mu] + (0,) * len(others))
                + phis[mu].lift_to(ext_space))
        if lhs != rhs:
            raise ValueError("pullback factorization failed to verify")
        unit_expo = fiber_expo[nu] + (0,) * len(others)
        if g_nu.coeffs.get(unit_expo) != Fraction(1):
            raise ValueError("cofactor does not carry coefficient 1 at nu")
        sc = f_nu.as_scalar()
        if sc is not None and sc != 0:
            degenerate = True
        pieces.append(CoveringPiece(chain, nu, g_nu))

    if not degenerate:
        if members:
            zero_atoms = tuple(
                Atom(NormValue.one(), coeffs[nu], LE, NormValue.zero(),
                     Series.one(base))
                for nu in sorted(members))
            region = zero_atoms[0] if len(zero_atoms) == 1 else And(zero_atoms)
        else:
            region = tautology(base)
        pieces.append(CoveringPiece(DatumChain(base, region, ()), None, None))
    return pieces
