"""Polynomial semirings at desk scale.

Three representations, one per job:
  IdemPoly  sparse coefficient maps over an idempotent semifield of values;
  BoolPoly  bare supports (all coefficients 1), union/Minkowski arithmetic,
            with a bitmask fast path for one variable;
  RatPoly   exact rational univariate polynomials for the subring of
            polynomials whose degree-one coefficient vanishes.

Supports are never functionally normalized: two supports that induce the
same tropical function stay distinct elements.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple, Union

from ._backend import core
from .errors import FormatError, PreconditionError
from .kernel import INF, NEG_INF, ValueSemiring

Expt = Tuple[int, ...]


def _add_expt(e: Expt, f: Expt) -> Expt:
    return tuple(x + y for x, y in zip(e, f))


# ---------------------------------------------------------------------------
# IdemPoly


@dataclass(frozen=True)
class IdemPoly:
    """Polynomial over an idempotent semifield of values; coeffs holds only
    nonzero coefficients, keyed by exponent vector."""

    field: ValueSemiring
    nvars: int
    coeffs: Tuple[Tuple[Expt, object], ...]

    def __post_init__(self):
        if not self.field.idempotent:
            raise PreconditionError("coefficient semifield must be idempotent")
        for e, c in self.coeffs:
            if len(e) != self.nvars or any(k < 0 for k in e):
                raise FormatError(f"bad exponent vector {e}")
            if self.field.eq(c, self.field.zero):
                raise FormatError("stored zero coefficient")

    def coeff(self, e: Expt) -> object:
        for ee, c in self.coeffs:
            if ee == e:
                return c
        return self.field.zero

    def support(self) -> FrozenSet[Expt]:
        return frozenset(e for e, _ in self.coeffs)


def idem_poly(field: ValueSemiring, nvars: int, items: Iterable[Tuple[Expt, object]]) -> IdemPoly:
    acc: Dict[Expt, object] = {}
    for e, c in items:
        e = tuple(e)
        acc[e] = field.add(acc[e], c) if e in acc else c
    kept = tuple(
        (e, acc[e]) for e in sorted(acc) if not field.eq(acc[e], field.zero)
    )
    return IdemPoly(field, nvars, kept)


def idem_poly_add(f: IdemPoly, g: IdemPoly) -> IdemPoly:
    if f.field is not g.field or f.nvars != g.nvars:
        raise PreconditionError("mismatched polynomial semirings")
    return idem_poly(f.field, f.nvars, list(f.coeffs) + list(g.coeffs))


def idem_poly_mul(f: IdemPoly, g: IdemPoly) -> IdemPoly:
    if f.field is not g.field or f.nvars != g.nvars:
        raise PreconditionError("mismatched polynomial semirings")
    items = [
        (_add_expt(e1, e2), f.field.mul(c1, c2))
        for e1, c1 in f.coeffs
        for e2, c2 in g.coeffs
    ]
    return idem_poly(f.field, f.nvars, items)


def idem_poly_eval_at_zero(f: IdemPoly) -> object:
    """Constant coefficient (zero if absent)."""
    return f.coeff((0,) * f.nvars)


def poly_semi_invertible(f: IdemPoly) -> bool:
    """Over an idempotent semifield of values: nonzero constant coefficient."""
    return not f.field.eq(idem_poly_eval_at_zero(f), f.field.zero)


# ---------------------------------------------------------------------------
# BoolPoly


@dataclass(frozen=True)
class BoolPoly:
    nvars: int
    support: FrozenSet[Expt]

    def __post_init__(self):
        for e in self.support:
            if len(e) != self.nvars or any(k < 0 for k in e):
                raise FormatError(f"bad exponent vector {e}")


def bool_poly(nvars: int, support: Iterable[Expt]) -> BoolPoly:
    return BoolPoly(nvars, frozenset(tuple(e) for e in support))


def bool_poly_add(f: BoolPoly, g: BoolPoly) -> BoolPoly:
    if f.nvars != g.nvars:
        raise PreconditionError("mismatched variable counts")
    return BoolPoly(f.nvars, f.support | g.support)


def bool_poly_mul(f: BoolPoly, g: BoolPoly) -> BoolPoly:
    if f.nvars != g.nvars:
        raise PreconditionError("mismatched variable counts")
    return BoolPoly(
        f.nvars, frozenset(_add_expt(e1, e2) for e1 in f.support for e2 in g.support)
    )


def bool_eval(f: BoolPoly, point: Sequence[bool]) -> bool:
    """Evaluation at a tuple of booleans (or over and over)."""
    if len(point) != f.nvars:
        raise PreconditionError("point arity mismatch")
    for e in f.support:
        if all(point[i] for i in range(f.nvars) if e[i] > 0):
            return True
    return False


def bool_poly_to_mask(f: BoolPoly) -> int:
    if f.nvars != 1:
        raise PreconditionError("mask form is univariate only")
    m = 0
    for (k,) in f.support:
        m |= 1 << k
    return m


def bool_poly_from_mask(mask: int) -> BoolPoly:
    if mask < 0:
        raise FormatError("negative mask")
    return BoolPoly(1, frozenset((k,) for k in range(mask.bit_length()) if (mask >> k) & 1))


MaskOrPoly = Union[int, BoolPoly]


def _as_mask(f: MaskOrPoly) -> int:
    return f if isinstance(f, int) else bool_poly_to_mask(f)


def bool_poly_ord_deg(f: MaskOrPoly) -> Tuple:
    """(order at 0, degree) of a univariate boolean polynomial; the zero
    polynomial maps to the distinguished point (inf, -inf)."""
    m = _as_mask(f)
    if m == 0:
        return (INF, NEG_INF)
    return ((m & -m).bit_length() - 1, m.bit_length() - 1)


def bool_poly_ord(f: MaskOrPoly):
    return bool_poly_ord_deg(f)[0]


def bool_poly_deg(f: MaskOrPoly):
    return bool_poly_ord_deg(f)[1]


def bx_mul(a: int, b: int) -> int:
    return core.bx_mul(a, b)


def squarefree_universe(nvars: int) -> List[BoolPoly]:
    """All boolean polynomials supported on squarefree monomials, in a
    deterministic order. 2^(2^nvars) polynomials."""
    if nvars > 4:
        raise PreconditionError("universe too large")
    monomials = sorted(
        tuple(1 if i in s else 0 for i in range(nvars))
        for r in range(nvars + 1)
        for s in combinations(range(nvars), r)
    )
    out = []
    for pick in range(1 << len(monomials)):
        out.append(
            BoolPoly(
                nvars,
                frozenset(m for i, m in enumerate(monomials) if (pick >> i) & 1),
            )
        )
    return out


def vanishing_set(universe: Sequence[BoolPoly], point: Sequence[bool]) -> FrozenSet[int]:
    """Indices of universe members evaluating to 0 at the point: the kernel
    of the evaluation map, restricted to the universe."""
    return frozenset(i for i, f in enumerate(universe) if not bool_eval(f, point))


def monomial_kernel_set(universe: Sequence[BoolPoly], zeros: Sequence[int]) -> FrozenSet[int]:
    """Indices of universe members all of whose monomials mention some
    variable from `zeros`: the monomial ideal generated by those variables,
    restricted to the universe."""
    zs = set(zeros)
    out = set()
    for i, f in enumerate(universe):
        if all(any(e[j] > 0 for j in zs) for e in f.support):
            out.add(i)
    return frozenset(out)


# ---------------------------------------------------------------------------
# RatPoly


@dataclass(frozen=True)
class RatPoly:
    """Univariate polynomial with exact rational coefficients, stored as
    sorted (degree, coefficient) pairs with no zero coefficients."""

    coeffs: Tuple[Tuple[int, Fraction], ...]

    def __post_init__(self):
        degs = [d for d, _ in self.coeffs]
        if degs != sorted(set(degs)) or any(d < 0 for d in degs):
            raise FormatError("coefficients must be sorted by distinct degree")
        if any(c == 0 for _, c in self.coeffs):
            raise FormatError("stored zero coefficient")

    def coeff(self, d: int) -> Fraction:
        for dd, c in self.coeffs:
            if dd == d:
                return c
        return Fraction(0)

    def degree(self) -> int:
        if not self.coeffs:
            return -1
        return self.coeffs[-1][0]

    def is_zero(self) -> bool:
        return not self.coeffs


def rat_poly(items: Iterable[Tuple[int, Fraction]]) -> RatPoly:
    acc: Dict[int, Fraction] = {}
    for d, c in items:
        acc[d] = acc.get(d, Fraction(0)) + Fraction(c)
    return RatPoly(tuple((d, acc[d]) for d in sorted(acc) if acc[d] != 0))


def rat_add(f: RatPoly, g: RatPoly) -> RatPoly:
    return rat_poly(list(f.coeffs) + list(g.coeffs))


def rat_neg(f: RatPoly) -> RatPoly:
    return RatPoly(tuple((d, -c) for d, c in f.coeffs))


def rat_sub(f: RatPoly, g: RatPoly) -> RatPoly:
    return rat_add(f, rat_neg(g))


def rat_mul(f: RatPoly, g: RatPoly) -> RatPoly:
    return rat_poly(
        (d1 + d2, c1 * c2) for d1, c1 in f.coeffs for d2, c2 in g.coeffs
    )


def rat_divmod(f: RatPoly, g: RatPoly) -> Tuple[RatPoly, RatPoly]:
    """Exact euclidean division in Q[t]."""
    if g.is_zero():
        raise PreconditionError("division by the zero polynomial")
    q = rat_poly([])
    r = f
    gd, gl = g.degree(), g.coeffs[-1][1]
    while not r.is_zero() and r.degree() >= gd:
        d = r.degree() - gd
        c = r.coeffs[-1][1] / gl
        term = RatPoly(((d, c),))
        q = rat_add(q, term)
        r = rat_sub(r, rat_mul(term, g))
    return q, r


def rat_divides(g: RatPoly, f: RatPoly) -> bool:
    _, r = rat_divmod(f, g)
    return r.is_zero()


def ktt_member(f: RatPoly) -> bool:
    """Membership in the subring of polynomials with vanishing degree-one
    coefficient."""
    return f.coeff(1) == 0


# ---------------------------------------------------------------------------
# parsers

_TERM_RE = re.compile(r"^\s*(?:(?P<coeff>-?\d+(?:/\d+)?)\s*[*⊙]?\s*)?(?P<mono>[a-zA-Z(].*)?$")
_FACTOR_RE = re.compile(r"^(?P<var>[a-zA-Z]\w*)(?:\^(?P<exp>\d+))?$")


def _split_terms(text: str) -> List[str]:
    # split on + and on binary - (keeping the sign with the term)
    out: List[str] = []
    cur = ""
    for ch in text:
        if ch == "+":
            if cur.strip():
                out.append(cur)
            cur = ""
        elif ch == "-" and cur.strip():
            out.append(cur)
            cur = "-"
        else:
            cur += ch
    if cur.strip():
        out.append(cur)
    return out


def _parse_monomial(text: str, names: Sequence[str]) -> Expt:
    text = text.strip()
    e = [0] * len(names)
    if text in ("", "1"):
        return tuple(e)
    for factor in text.split("*"):
        factor = factor.strip()
        if factor == "1":
            continue
        m = _FACTOR_RE.match(factor)
        if not m or m.group("var") not in names:
            raise FormatError(f"cannot parse monomial factor {factor!r}")
        e[names.index(m.group("var"))] += int(m.group("exp") or 1)
    return tuple(e)


def parse_bool_poly(text: str, names: Sequence[str]) -> BoolPoly:
    """Parse sums of monomials like "1+x^2*y" with implicit coefficient 1."""
    support = []
    for term in _split_terms(text):
        term = term.strip()
        if term == "0":
            continue
        support.append(_parse_monomial(term, names))
    return bool_poly(len(names), support)


def parse_idem_poly(
    text: str, field: ValueSemiring, names: Sequence[str]
) -> IdemPoly:
    """Parse sums of "c⊙x^k" terms (also accepts "c*x^k"); a bare monomial
    means coefficient one."""
    items = []
    for term in _split_terms(text):
        term = term.strip()
        if term == "0":
            continue
        if "⊙" in term:
            ctext, _, mono = term.partition("⊙")
            coeff = field.parse(ctext.strip())
        else:
            m = _TERM_RE.match(term)
            if m is None:
                raise FormatError(f"cannot parse term {term!r}")
            ctext, mono = m.group("coeff"), m.group("mono") or ""
            coeff = field.parse(ctext) if ctext is not None else field.one
        items.append((_parse_monomial(mono or "", names), coeff))
    return idem_poly(field, len(names), items)


def parse_rat_poly(text: str, var: str = "t") -> RatPoly:
    """Parse sums of "c*t^k" terms with integer or a/b rational c."""
    items = []
    for term in _split_terms(text):
        term = term.strip()
        if term in ("0", "-0"):
            continue
        sign = Fraction(1)
        if term.startswith("-"):
            sign = Fraction(-1)
            term = term[1:].strip()
        m = _TERM_RE.match(term)
        if m is None:
            raise FormatError(f"cannot parse term {term!r}")
        ctext, mono = m.group("coeff"), (m.group("mono") or "").strip()
        coeff = sign * (Fraction(ctext) if ctext else Fraction(1))
        if not mono or mono == "1":
            deg = 0
        else:
            fm = _FACTOR_RE.match(mono)
            if not fm or fm.group("var") != var:
                raise FormatError(f"cannot parse term {term!r}")
            deg = int(fm.group("exp") or 1)
        items.append((deg, coeff))
    return rat_poly(items)


def fmt_rat_poly(f: RatPoly, var: str = "t") -> str:
    if f.is_zero():
        return "0"
    parts = []
    for d, c in reversed(f.coeffs):
        if d == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else ("-" if c == -1 else f"{c}*")
            parts.append(f"{head}{var}" + (f"^{d}" if d > 1 else ""))
    return " + ".join(parts).replace("+ -", "- ")
