"""Restricted power series with exact Gauss norms and certified tails.

A ``Series`` is a finite polynomial over Q together with a certified bound
(``tail``) on the sup norm of whatever remainder it stands for: the object
represents the class of all analytic functions f on the polydisc with
``|f - stored| <= tail``.  All arithmetic is exact on the stored part and
propagates tails pessimistically, so every norm equality or inequality the
package reports is a sound certificate.

Points of the polydisc come in two kinds: ``RigidPoint`` (exact rational
coordinates) and ``MonomialPoint`` (a center plus per-variable radii; the
multiplicative seminorm of f there is the Gauss norm of f recentered at the
center).  The point with center 0 and radii equal to the polydisc radii is
the Gauss point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .scalars import NormValue, Rational, _as_fraction, nv_max, scalar_text

Exponents = Tuple[int, ...]


@dataclass(frozen=True)
class VarSpec:
    """A named coordinate with its polydisc radius (> 0)."""

    name: str
    radius: NormValue

    def __post_init__(self):
        if self.radius.is_zero:
            raise ValueError(f"variable {self.name!r} needs a positive radius")


@dataclass(frozen=True)
class Space:
    """A polydisc: the prime of the ground field plus ordered coordinates."""

    prime: int
    vars: Tuple[VarSpec, ...]

    def __post_init__(self):
        if self.prime < 2:
            raise ValueError("prime must be >= 2")
        names = [v.name for v in self.vars]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(v.name for v in self.vars)

    @property
    def radii(self) -> Tuple[NormValue, ...]:
        return tuple(v.radius for v in self.vars)

    def index(self, name: str) -> int:
        for i, v in enumerate(self.vars):
            if v.name == name:
                return i
        raise KeyError(f"no variable {name!r} in space {self.names}")

    def radius(self, name: str) -> NormValue:
        return self.vars[self.index(name)].radius

    def extend(self, *extra: VarSpec) -> "Space":
        return Space(self.prime, self.vars + tuple(extra))

    def drop(self, name: str) -> "Space":
        i = self.index(name)
        return Space(self.prime, self.vars[:i] + self.vars[i + 1:])

    def with_radii(self, radii: Sequence[NormValue]) -> "Space":
        if len(radii) != len(self.vars):
            raise ValueError("radius count mismatch")
        return Space(self.prime, tuple(VarSpec(v.name, r) for v, r in zip(self.vars, radii)))

    def monomial_weight(self, expo: Exponents) -> NormValue:
        """r^nu, the Gauss weight of the monomial with exponent vector nu."""
        w = NormValue.one()
        for e, v in zip(expo, self.vars):
            if e:
                w = w * (v.radius ** e)
        return w


@dataclass(frozen=True)
class NormEstimate:
    """A certified seminorm: exact value of the stored part plus slack.

    The true seminorm equals ``value`` whenever ``uncertainty`` is zero or
    strictly below ``value``; otherwise all that is known is that it lies
    in [0, max(value, uncertainty)].
    """

    value: NormValue
    uncertainty: NormValue

    @property
    def is_exact(self) -> bool:
        return self.uncertainty.is_zero or self.uncertainty < self.value

    def lower(self) -> NormValue:
        return self.value if self.is_exact else NormValue.zero()

    def upper(self) -> NormValue:
        return nv_max(self.value, self.uncertainty)

    def scaled(self, a: NormValue) -> "NormEstimate":
        return NormEstimate(self.value * a, self.uncertainty * a)


def compare_le(a: NormEstimate, b: NormEstimate) -> Optional[bool]:
    """Three-valued `a <= b` on certified seminorms (None = unknown)."""
    if a.is_exact and b.is_exact:
        return a.value <= b.value
    if a.upper() <= b.lower():
        return True
    if b.upper() < a.lower():
        return False
    return None


def compare_lt(a: NormEstimate, b: NormEstimate) -> Optional[bool]:
    """Three-valued `a < b` on certified seminorms (None = unknown)."""
    if a.is_exact and b.is_exact:
        return a.value < b.value
    if a.upper() < b.lower():
        return True
    if b.upper() <= a.lower():
        return False
    return None


class Series:
    """A finite-support series over a ``Space`` plus a certified tail bound.

    Immutable by convention: no method mutates; all operations return new
    instances, which makes values safe to share across threads.
    """

    __slots__ = ("space", "coeffs", "tail")

    def __init__(self, space: Space, coeffs: Mapping[Exponents, Rational],
                 tail: NormValue = NormValue.zero()):
        clean: Dict[Exponents, Fraction] = {}
        n = len(space.vars)
        for expo, c in coeffs.items():
            expo = tuple(int(e) for e in expo)
            if len(expo) != n:
                raise ValueError(f"exponent vector {expo} has wrong length for {space.names}")
            if any(e < 0 for e in expo):
                raise ValueError(f"negative exponent in {expo}")
            c = _as_fraction(c)
            if c != 0:
                clean[expo] = c
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "tail", tail)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Series is immutable")

    @staticmethod
    def _raw(space: Space, coeffs: Dict[Exponents, Fraction],
             tail: NormValue) -> "Series":
        """Internal fast path: coeffs must already be clean (exact
        Fractions, correct arity, no zeros)."""
        out = object.__new__(Series)
        object.__setattr__(out, "space", space)
        object.__setattr__(out, "coeffs", coeffs)
        object.__setattr__(out, "tail", tail)
        return out

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(space: Space) -> "Series":
        return Series(space, {})

    @staticmethod
    def constant(space: Space, c: Rational) -> "Series":
        return Series(space, {(0,) * len(space.vars): c})

    @staticmethod
    def one(space: Space) -> "Series":
        return Series.constant(space, 1)

    @staticmethod
    def variable(space: Space, name: str) -> "Series":
        i = space.index(name)
        expo = tuple(1 if j == i else 0 for j in range(len(space.vars)))
        return Series(space, {expo: 1})

    @staticmethod
    def monomial(space: Space, expo: Exponents, c: Rational = 1) -> "Series":
        return Series(space, {tuple(expo): c})

    # -- basic structure ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs and self.tail.is_zero

    @property
    def is_exact(self) -> bool:
        return self.tail.is_zero

    def constant_term(self) -> Fraction:
        return self.coeffs.get((0,) * len(self.space.vars), Fraction(0))

    def as_scalar(self) -> Optional[Fraction]:
        """The value of an exact constant series, else None."""
        if not self.tail.is_zero:
            return None
        if not self.coeffs:
            return Fraction(0)
        if len(self.coeffs) == 1:
            (expo, c), = self.coeffs.items()
            if all(e == 0 for e in expo):
                return c
        return None

    def degree_in(self, name: str) -> int:
        """Largest stored exponent of the named variable (-1 for no terms)."""
        i = self.space.index(name)
        return max((expo[i] for expo in self.coeffs), default=-1)

    def support(self) -> List[Exponents]:
        return sorted(self.coeffs)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Series) and self.space == other.space
                and self.coeffs == other.coeffs and self.tail == other.tail)

    def __hash__(self):
        return hash((self.space, frozenset(self.coeffs.items()), self.tail))

    # -- ring operations with tail propagation ------------------------------

    def _check_same_space(self, other: "Series"):
        if self.space != other.space:
            raise ValueError(f"space mismatch: {self.space.names} vs {other.space.names}")

    def __add__(self, other: "Series") -> "Series":
        self._check_same_space(other)
        out = dict(self.coeffs)
        for expo, c in other.coeffs.items():
            acc = out.get(expo)
            if acc is None:
                out[expo] = c
            else:
                acc = acc + c
                if acc:
                    out[expo] = acc
                else:
                    del out[expo]
        return Series._raw(self.space, out, nv_max(self.tail, other.tail))

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __neg__(self) -> "Series":
        return Series._raw(self.space,
                           {e: -c for e, c in self.coeffs.items()}, self.tail)

    def scale(self, a: Rational) -> "Series":
        a = _as_fraction(a)
        if a == 0:
            return Series.zero(self.space)
        return Series._raw(self.space,
                           {e: c * a for e, c in self.coeffs.items()},
                           self.tail * NormValue.of_scalar(a, self.space.prime))

    def __mul__(self, other: "Series") -> "Series":
        self._check_same_space(other)
        out: Dict[Exponents, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(map(sum, zip(e1, e2)))
                acc = out.get(e)
                out[e] = c1 * c2 if acc is None else acc + c1 * c2
        out = {e: c for e, c in out.items() if c}
        if self.tail.is_zero and other.tail.is_zero:
            tail = NormValue.zero()
        else:
            tail = nv_max(self.tail * other.main_norm(),
                          other.tail * self.main_norm(),
                          self.tail * other.tail)
        return Series._raw(self.space, out, tail)

    def pow(self, k: int) -> "Series":
        if k < 0:
            raise ValueError("negative power of a series")
        out = Series.one(self.space)
        for _ in range(k):
            out = out * self
        return out

    def drop_tail(self) -> "Series":
        return Series(self.space, self.coeffs, NormValue.zero())

    def with_tail(self, tail: NormValue) -> "Series":
        return Series(self.space, self.coeffs, tail)

    # -- norms ---------------------------------------------------------------

    def main_norm(self) -> NormValue:
        """Exact Gauss norm of the stored polynomial: max |c_nu| r^nu."""
        p = self.space.prime
        out = NormValue.zero()
        for expo, c in self.coeffs.items():
            w = NormValue.of_scalar(c, p) * self.space.monomial_weight(expo)
            if out < w:
                out = w
        return out

    def gauss_norm(self) -> NormEstimate:
        return NormEstimate(self.main_norm(), self.tail)

    # -- space plumbing ------------------------------------------------------

    def rename_var(self, old: str, new: str) -> "Series":
        i = self.space.index(old)
        vars2 = list(self.space.vars)
        vars2[i] = VarSpec(new, vars2[i].radius)
        return Series(Space(self.space.prime, tuple(vars2)), self.coeffs, self.tail)

    def lift_to(self, space: Space) -> "Series":
        """Reinterpret over a superset space (matching names keep radii)."""
        pos = {}
        for i, v in enumerate(self.space.vars):
            j = space.index(v.name)
            if space.vars[j].radius != v.radius:
                raise ValueError(f"radius mismatch lifting {v.name}")
            pos[i] = j
        n = len(space.vars)
        out = {}
        for expo, c in self.coeffs.items():
            e2 = [0] * n
            for i, e in enumerate(expo):
                e2[pos[i]] = e
            out[tuple(e2)] = c
        return Series(space, out, self.tail)

    def with_radii(self, radii: Sequence[NormValue]) -> "Series":
        """Move to the same coordinates with new radii.

        Shrinking every radius keeps the tail bound valid (the sup norm only
        drops on a smaller polydisc); any enlargement requires an exact
        series, since a tail bound does not transfer outward.
        """
        target = self.space.with_radii(radii)
        if not self.tail.is_zero:
            for old, new in zip(self.space.radii, radii):
                if old < new:
                    raise ValueError("cannot enlarge the polydisc of an inexact series")
        return Series(target, self.coeffs, self.tail)

    # -- coefficient view along one variable ----------------------------------

    def coeff_view(self, pivot: str) -> List[Tuple[int, "Series"]]:
        """Present f as sum_n c_n * pivot^n with c_n over the remaining vars.

        The tail is attached to every coefficient as a shared bound.
        """
        i = self.space.index(pivot)
        rest = self.space.drop(pivot)
        buckets: Dict[int, Dict[Exponents, Fraction]] = {}
        for expo, c in self.coeffs.items():
            n = expo[i]
            e2 = expo[:i] + expo[i + 1:]
            buckets.setdefault(n, {})[e2] = c
        return [(n, Series(rest, buckets[n], self.tail)) for n in sorted(buckets)]

    def coeff_view_multi(self, fiber: Sequence[str]) -> List[Tuple[Exponents, "Series"]]:
        """Like coeff_view but along several variables at once."""
        idx = [self.space.index(v) for v in fiber]
        rest = self.space
        for v in fiber:
            rest = rest.drop(v)
        keep = [j for j in range(len(self.space.vars)) if j not in idx]
        buckets: Dict[Exponents, Dict[Exponents, Fraction]] = {}
        for expo, c in self.coeffs.items():
            nu = tuple(expo[j] for j in idx)
            e2 = tuple(expo[j] for j in keep)
            buckets.setdefault(nu, {})[e2] = c
        return [(nu, Series(rest, buckets[nu], self.tail)) for nu in sorted(buckets)]

    # -- substitution ----------------------------------------------------------

    def substitute(self, assignment: Mapping[str, "Series"]) -> "Series":
        """Compose f with a full assignment var -> series over one target space.

        Requires the norm budget |image| <= radius(var) for each variable, so
        the composite converges on the target polydisc.  The stored parts
        compose exactly; the tail of f passes through unchanged (composition
        is a sup-norm contraction) and the tails of the images enter through
        the exact first-order ultrametric bound
        max_nu |c_nu| * max_i tail_i * r^nu / r_i.
        """
        if set(assignment) != set(self.space.names):
            missing = set(self.space.names) - set(assignment)
            extra = set(assignment) - set(self.space.names)
            raise ValueError(f"assignment must cover the variables exactly "
                             f"(missing {sorted(missing)}, extra {sorted(extra)})")
        images = [assignment[v.name] for v in self.space.vars]
        target = images[0].space if images else None
        if target is None:
            raise ValueError("substitution needs at least one variable")
        for g in images:
            if g.space != target:
                raise ValueError("all substituted series must share one space")
        for v, g in zip(self.space.vars, images):
            if g.gauss_norm().upper() > v.radius:
                raise ValueError(
                    f"norm budget violated: |image of {v.name}| exceeds radius "
                    f"{v.radius.text(self.space.prime)}")

        p = self.space.prime
        # cache powers of each image
        max_exp = [0] * len(images)
        for expo in self.coeffs:
            for i, e in enumerate(expo):
                max_exp[i] = max(max_exp[i], e)
        powers: List[List[Series]] = []
        for g, m in zip(images, max_exp):
            row = [Series.one(target)]
            for _ in range(m):
                row.append(row[-1] * g)
            powers.append(row)

        out = Series.zero(target)
        first_order = NormValue.zero()
        for expo, c in self.coeffs.items():
            term = Series.constant(target, c)
            for i, e in enumerate(expo):
                if e:
                    term = term * powers[i][e]
            out = out + term
            # first-order contribution of the image tails to this monomial
            cn = NormValue.of_scalar(c, p)
            for i, e in enumerate(expo):
                t = images[i].tail
                if e and not t.is_zero:
                    w = cn * t
                    for j, ej in enumerate(expo):
                        k = ej - 1 if j == i else ej
                        if k:
                            w = w * (self.space.vars[j].radius ** k)
                    first_order = nv_max(first_order, w)
        tail = nv_max(out.tail, self.tail, first_order)
        return Series(target, out.coeffs, tail)

    def identity_assignment(self) -> Dict[str, "Series"]:
        return {v.name: Series.variable(self.space, v.name) for v in self.space.vars}

    # -- evaluation --------------------------------------------------------------

    def eval_exact(self, coords: Sequence[Rational]) -> Fraction:
        """Exact value of the stored polynomial at rational coordinates."""
        coords = [_as_fraction(c) for c in coords]
        if len(coords) != len(self.space.vars):
            raise ValueError("coordinate count mismatch")
        total = Fraction(0)
        for expo, c in self.coeffs.items():
            v = c
            for x, e in zip(coords, expo):
                if e:
                    v *= x ** e
            total += v
        return total

    def eval_seminorm(self, point: "Point") -> NormEstimate:
        """Certified |f(x)| at a rigid or monomial point of the polydisc."""
        point.check_in(self.space)
        p = self.space.prime
        if isinstance(point, RigidPoint):
            val = self.eval_exact(point.coords)
            return NormEstimate(NormValue.of_scalar(val, p), self.tail)
        # monomial: recenter at the center with the point's radii
        target = Space(p, tuple(VarSpec(v.name, rho)
                                for v, rho in zip(self.space.vars, point.rho)))
        assignment = {}
        for v, a in zip(self.space.vars, point.center):
            assignment[v.name] = (Series.variable(target, v.name)
                                  + Series.constant(target, a))
        recentered = self.substitute(assignment)
        return recentered.gauss_norm()

    # -- printing -------------------------------------------------------------

    def text(self) -> str:
        """Canonical polynomial form, highest monomial first (lex).

        An inexact series renders only its stored part; the tail is reported
        separately by callers that need it.
        """
        if not self.coeffs:
            return "0"
        parts = []
        for expo in sorted(self.coeffs, reverse=True):
            c = self.coeffs[expo]
            factors = []
            for v, e in zip(self.space.vars, expo):
                if e == 1:
                    factors.append(v.name)
                elif e > 1:
                    factors.append(f"{v.name}^{e}")
            if not factors:
                body = scalar_text(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = scalar_text(abs(c)) + "*" + "*".join(factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        t = "" if self.tail.is_zero else f" + O({self.tail.text(self.space.prime)})"
        return f"<Series {self.text()}{t} on {self.space.names}>"


# -- points -----------------------------------------------------------------


@dataclass(frozen=True)
class RigidPoint:
    """A point with exact rational coordinates."""

    space: Space
    coords: Tuple[Fraction, ...]

    def __init__(self, space: Space, coords: Sequence[Rational]):
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "coords", tuple(_as_fraction(c) for c in coords))

    def check_in(self, space: Space):
        if space != self.space:
            raise ValueError("point/space mismatch")
        p = space.prime
        for a, v in zip(self.coords, space.vars):
            if NormValue.of_scalar(a, p) > v.radius:
                raise ValueError(f"coordinate {scalar_text(a)} outside |{v.name}| <= "
                                 f"{v.radius.text(p)}")

    def coord(self, name: str) -> Fraction:
        return self.coords[self.space.index(name)]

    def extend(self, var: VarSpec, value: Rational) -> "RigidPoint":
        return RigidPoint(self.space.extend(var), self.coords + (_as_fraction(value),))

    def text(self) -> str:
        return "(" + ", ".join(scalar_text(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class MonomialPoint:
    """A monomial (Gauss-type) point: center a, radii rho, 0 < rho <= radius.

    The seminorm of f is the Gauss norm of f recentered at a with polyradius
    rho.  With center 0 and rho equal to the ambient radii this is the Gauss
    point of the polydisc.
    """

    space: Space
    center: Tuple[Fraction, ...]
    rho: Tuple[NormValue, ...]

    def __init__(self, space: Space, center: Sequence[Rational], rho: Sequence[NormValue]):
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "center", tuple(_as_fraction(c) for c in center))
        object.__setattr__(self, "rho", tuple(rho))

    def check_in(self, space: Space):
        if space != self.space:
            raise ValueError("point/space mismatch")
        p = space.prime
        for a, r, v in zip(self.center, self.rho, space.vars):
            if NormValue.of_scalar(a, p) > v.radius:
                raise ValueError(f"center coordinate outside the polydisc at {v.name}")
            if r.is_zero or r > v.radius:
                raise ValueError(f"monomial radius at {v.name} must satisfy 0 < rho <= radius")

    def text(self) -> str:
        p = self.space.prime
        c = ", ".join(scalar_text(a) for a in self.center)
        r = ", ".join(x.text(p) for x in self.rho)
        return f"gauss({c}; {r})"


Point = Union[RigidPoint, MonomialPoint]


def gauss_point(space: Space) -> MonomialPoint:
    return MonomialPoint(space, (0,) * len(space.vars), space.radii)


def pushforward_eval(h: Series, phi: Sequence[Series], x: Point) -> NormEstimate:
    """Certified seminorm of h at the image of x under the map phi.

    phi lists one series per variable of h's space, all over x's space; the
    value is eval_seminorm(h o phi, x).
    """
    if len(phi) != len(h.space.vars):
        raise ValueError("phi must supply one series per variable")
    assignment = {v.name: g for v, g in zip(h.space.vars, phi)}
    return h.substitute(assignment).eval_seminorm(x)
