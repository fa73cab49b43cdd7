"""Semianalytic formulas: norm-inequality atoms, boolean algebra, DNF,
three-valued evaluation, and the surface-syntax parser.

An atom states alpha*|f(x)| <= beta*|g(x)| (or <) with exact scale factors
from the value group; equalities f = 0 are encoded as |f| <= 0*|1|.  Scales
on both sides keep the class closed under negation with no special cases.
Evaluation is Kleene three-valued: `None` stands for unknown and can only
arise from tail uncertainty of inexact series.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .scalars import NormValue, parse_norm
from .series import (Point, Series, Space, compare_le, compare_lt)

LE = "<="
LT = "<"


@dataclass(frozen=True)
class Atom:
    alpha: NormValue
    f: Series
    op: str  # LE or LT
    beta: NormValue
    g: Series

    def __post_init__(self):
        if self.op not in (LE, LT):
            raise ValueError(f"bad comparison {self.op!r}")
        if self.alpha.is_zero and self.beta.is_zero:
            raise ValueError("at least one scale must be nonzero")
        if self.f.space != self.g.space:
            raise ValueError("atom sides live on different spaces")

    @property
    def space(self) -> Space:
        return self.f.space


@dataclass(frozen=True)
class And:
    args: Tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    args: Tuple["Formula", ...]


@dataclass(frozen=True)
class Not:
    arg: "Formula"


Formula = Union[Atom, And, Or, Not]


@dataclass(frozen=True)
class BasicConjunct:
    """A negation-free conjunction of atoms."""

    atoms: Tuple[Atom, ...]


def tautology(space: Space) -> Atom:
    return Atom(NormValue.one(), Series.zero(space), LE,
                NormValue.one(), Series.one(space))


def contradiction(space: Space) -> Atom:
    return Atom(NormValue.one(), Series.one(space), LE,
                NormValue.zero(), Series.one(space))


def formula_space(phi: Formula) -> Space:
    if isinstance(phi, Atom):
        return phi.space
    if isinstance(phi, Not):
        return formula_space(phi.arg)
    return formula_space(phi.args[0])


def formula_atoms(phi: Formula) -> List[Atom]:
    if isinstance(phi, Atom):
        return [phi]
    if isinstance(phi, Not):
        return formula_atoms(phi.arg)
    out = []
    for a in phi.args:
        out.extend(formula_atoms(a))
    return out


def lift_formula(phi: Formula, space: Space) -> Formula:
    """Reinterpret every atom over a superset space."""
    if isinstance(phi, Atom):
        return Atom(phi.alpha, phi.f.lift_to(space), phi.op,
                    phi.beta, phi.g.lift_to(space))
    if isinstance(phi, Not):
        return Not(lift_formula(phi.arg, space))
    cls = type(phi)
    return cls(tuple(lift_formula(a, space) for a in phi.args))


def rename_formula_var(phi: Formula, old: str, new: str) -> Formula:
    if isinstance(phi, Atom):
        return Atom(phi.alpha, phi.f.rename_var(old, new), phi.op,
                    phi.beta, phi.g.rename_var(old, new))
    if isinstance(phi, Not):
        return Not(rename_formula_var(phi.arg, old, new))
    cls = type(phi)
    return cls(tuple(rename_formula_var(a, old, new) for a in phi.args))


# -- boolean algebra -----------------------------------------------------------


def negate(phi: Formula) -> Formula:
    """Negation-free complement: atoms flip their comparison and sides,
    connectives go through De Morgan."""
    if isinstance(phi, Atom):
        flipped = LT if phi.op == LE else LE
        return Atom(phi.beta, phi.g, flipped, phi.alpha, phi.f)
    if isinstance(phi, Not):
        return nnf(phi.arg)
    if isinstance(phi, And):
        return Or(tuple(negate(a) for a in phi.args))
    return And(tuple(negate(a) for a in phi.args))


def nnf(phi: Formula) -> Formula:
    """Push negations to the atoms and absorb them there."""
    if isinstance(phi, Atom):
        return phi
    if isinstance(phi, Not):
        return negate(phi.arg)
    cls = type(phi)
    return cls(tuple(nnf(a) for a in phi.args))


def to_dnf(phi: Formula) -> List[BasicConjunct]:
    """Disjunction of negation-free conjuncts, pointwise equivalent to phi.

    Pure distribution; no semantic pruning, so the size can be exponential
    in the number of alternations.
    """
    phi = nnf(phi)

    def walk(node) -> List[Tuple[Atom, ...]]:
        if isinstance(node, Atom):
            return [(node,)]
        if isinstance(node, Or):
            out = []
            for a in node.args:
                out.extend(walk(a))
            return out
        # And: distribute
        combos: List[Tuple[Atom, ...]] = [()]
        for a in node.args:
            branches = walk(a)
            combos = [c + b for c in combos for b in branches]
        return combos

    return [BasicConjunct(c) for c in walk(phi)]


def dnf_to_formula(conjuncts: Sequence[BasicConjunct]) -> Formula:
    parts = []
    for c in conjuncts:
        if len(c.atoms) == 1:
            parts.append(c.atoms[0])
        else:
            parts.append(And(c.atoms))
    if not parts:
        raise ValueError("empty disjunction has no formula form")
    if len(parts) == 1:
        return parts[0]
    return Or(tuple(parts))


# -- evaluation -----------------------------------------------------------------


def eval_atom(atom: Atom, x: Point) -> Optional[bool]:
    lhs = atom.f.eval_seminorm(x).scaled(atom.alpha)
    rhs = atom.g.eval_seminorm(x).scaled(atom.beta)
    if atom.op == LE:
        return compare_le(lhs, rhs)
    return compare_lt(lhs, rhs)


def eval_formula(phi: Formula, x: Point) -> Optional[bool]:
    """Kleene three-valued truth of phi at a rigid or monomial point.

    Exact (never None) whenever every atom series has a zero tail.
    """
    if isinstance(phi, Atom):
        return eval_atom(phi, x)
    if isinstance(phi, Not):
        v = eval_formula(phi.arg, x)
        return None if v is None else (not v)
    if isinstance(phi, And):
        out: Optional[bool] = True
        for a in phi.args:
            v = eval_formula(a, x)
            if v is False:
                return False
            if v is None:
                out = None
        return out
    out = False
    for a in phi.args:
        v = eval_formula(a, x)
        if v is True:
            return True
        if v is None:
            out = None
    return out


def eval_conjunct(conj: BasicConjunct, x: Point) -> Optional[bool]:
    out: Optional[bool] = True
    for a in conj.atoms:
        v = eval_atom(a, x)
        if v is False:
            return False
        if v is None:
            out = None
    return out


# -- printing --------------------------------------------------------------------


def _scale_text(nv: NormValue, p: int) -> str:
    if nv == NormValue.one():
        return ""
    return nv.text(p) + "*"


def atom_text(atom: Atom) -> str:
    p = atom.space.prime
    return (f"{_scale_text(atom.alpha, p)}|{atom.f.text()}| {atom.op} "
            f"{_scale_text(atom.beta, p)}|{atom.g.text()}|")


def formula_text(phi: Formula) -> str:
    if isinstance(phi, Atom):
        return atom_text(phi)
    if isinstance(phi, Not):
        inner = formula_text(phi.arg)
        if isinstance(phi.arg, Atom):
            return f"!({inner})"
        return f"!({inner})"
    if isinstance(phi, And):
        parts = []
        for a in phi.args:
            t = formula_text(a)
            parts.append(f"({t})" if isinstance(a, Or) else t)
        return " & ".join(parts)
    return " | ".join(formula_text(a) for a in phi.args)


# -- parser -----------------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<le><=) | (?P<lt><) | (?P<amp>&) | (?P<bang>!) | (?P<bar>\|)
  | (?P<lpar>\() | (?P<rpar>\)) | (?P<star>\*) | (?P<plus>\+)
  | (?P<minus>-) | (?P<caret>\^) | (?P<slash>/)
  | (?P<num>\d+) | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<ws>\s+)
""", re.VERBOSE)


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive descent for the formula DSL.

    A '|' read where a literal is expected opens a norm bar; a '|' read
    after a complete conjunction is the OR connective, so the grammar
    disambiguates the two uses by position.
    """

    def __init__(self, text: str, space: Space):
        self.tokens = _tokenize(text)
        self.i = 0
        self.space = space

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise FormulaSyntaxError(f"expected {kind}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Formula:
        phi = self.disjunction()
        tok = self.peek()
        if tok[0] != "end":
            raise FormulaSyntaxError(f"trailing input {tok[1]!r}", tok[2])
        return phi

    def disjunction(self) -> Formula:
        parts = [self.conjunction()]
        while self.peek()[0] == "bar" and self._bar_is_or():
            self.take("bar")
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def _bar_is_or(self) -> bool:
        # in well-formed input, a bar after a finished conjunction is OR
        return True

    def conjunction(self) -> Formula:
        parts = [self.literal()]
        while self.peek()[0] == "amp":
            self.take("amp")
            parts.append(self.literal())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def literal(self) -> Formula:
        tok = self.peek()
        if tok[0] == "bang":
            self.take("bang")
            return Not(self.literal())
        if tok[0] == "lpar":
            self.take("lpar")
            phi = self.disjunction()
            self.take("rpar")
            return phi
        return self.atom()

    def atom(self) -> Atom:
        alpha = self.scale()
        self.take("bar")
        f = self.poly()
        self.take("bar")
        tok = self.take()
        if tok[0] == "le":
            op = LE
        elif tok[0] == "lt":
            op = LT
        else:
            raise FormulaSyntaxError(f"expected comparison, found {tok[1]!r}", tok[2])
        beta = self.scale()
        self.take("bar")
        g = self.poly()
        self.take("bar")
        return Atom(alpha, f, op, beta, g)

    def scale(self) -> NormValue:
        """Optional norm literal followed by '*': `p^q *`, `0 *`, `1 *`."""
        if self.peek()[0] != "num":
            return NormValue.one()
        start = self.i
        base_tok = self.take("num")
        if self.peek()[0] == "caret":
            self.take("caret")
            sign = 1
            if self.peek()[0] == "minus":
                self.take("minus")
                sign = -1
            num = int(self.take("num")[1])
            den = 1
            if self.peek()[0] == "slash":
                self.take("slash")
                den = int(self.take("num")[1])
            nv = parse_norm(f"{base_tok[1]}^{sign * num}"
                            + (f"/{den}" if den != 1 else ""),
                            self.space.prime)
        elif base_tok[1] == "0":
            nv = NormValue.zero()
        elif base_tok[1] == "1":
            nv = NormValue.one()
        else:
            # a bare number that is not a scale: backtrack, let poly fail
            self.i = start
            raise FormulaSyntaxError(
                f"expected a scale or a norm bar, found {base_tok[1]!r}",
                base_tok[2])
        self.take("star")
        return nv

    # polynomial expressions inside norm bars

    def poly(self) -> Series:
        return self.poly_sum()

    def poly_sum(self) -> Series:
        if self.peek()[0] == "minus":
            self.take("minus")
            total = -self.poly_term()
        else:
            total = self.poly_term()
        while self.peek()[0] in ("plus", "minus"):
            if self.take()[0] == "plus":
                total = total + self.poly_term()
            else:
                total = total - self.poly_term()
        return total

    def poly_term(self) -> Series:
        total = self.poly_factor()
        while True:
            tok = self.peek()
            if tok[0] == "star":
                self.take("star")
                total = total * self.poly_factor()
            elif tok[0] in ("ident", "lpar"):
                # implicit multiplication: 2T, 3(x+1)
                total = total * self.poly_factor()
            else:
                return total

    def poly_factor(self) -> Series:
        base = self.poly_primary()
        if self.peek()[0] == "caret":
            self.take("caret")
            tok = self.take("num")
            return base.pow(int(tok[1]))
        return base

    def poly_primary(self) -> Series:
        tok = self.take()
        if tok[0] == "num":
            num = int(tok[1])
            if self.peek()[0] == "slash":
                self.take("slash")
                den = int(self.take("num")[1])
                return Series.constant(self.space, Fraction(num, den))
            return Series.constant(self.space, num)
        if tok[0] == "ident":
            try:
                return Series.variable(self.space, tok[1])
            except KeyError:
                raise FormulaSyntaxError(f"undeclared variable {tok[1]!r}", tok[2])
        if tok[0] == "lpar":
            inner = self.poly_sum()
            self.take("rpar")
            return inner
        raise FormulaSyntaxError(f"unexpected token {tok[1]!r} in polynomial",
                                 tok[2])


def parse_formula(text: str, space: Space) -> Formula:
    """Parse the DSL over declared variables.  Precedence: ! > & > |."""
    return _Parser(text, space).parse()


def parse_poly(text: str, space: Space) -> Series:
    """Parse a bare polynomial expression over the space."""
    parser = _Parser(text, space)
    out = parser.poly()
    tok = parser.peek()
    if tok[0] != "end":
        raise FormulaSyntaxError(f"trailing input {tok[1]!r}", tok[2])
    return out
