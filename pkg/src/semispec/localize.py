"""Localization of finite semirings, saturation, hardening, and the
hardening of boolean polynomials in one variable.

Fraction equality a/s = b/t means a*t*u = b*s*u for some u in S. For finite
tables this is canonicalized with the cofactor trick: let P be the product
of all of S and c_s * s = P; then a/s = b/t iff a*c_s*P^3 = b*c_t*P^3 in A.
The witness-scan definition is kept and asserted against the canonical form
on every instance below a size cap.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from ._backend import core
from .errors import InternalCheckError, PreconditionError
from .kernel import (
    INF,
    NEG_INF,
    FiniteSemiring,
    Homomorphism,
    assert_valid,
    bits,
    is_idempotent,
    leq,
    mask_of,
    units,
)
from . import poly

_SCAN_CAP = 600  # |A| * |S| above which the witness-scan cross-check is skipped


def is_mult_submonoid(A: FiniteSemiring, s_mask: int) -> bool:
    if not (s_mask >> A.one) & 1:
        return False
    ss = list(bits(s_mask))
    return all((s_mask >> A.mul[s][t]) & 1 for s in ss for t in ss)


def is_saturated(A: FiniteSemiring, s_mask: int) -> bool:
    """ab in S implies a,b in S."""
    for a in A.elements:
        for b in A.elements:
            if (s_mask >> A.mul[a][b]) & 1:
                if not ((s_mask >> a) & 1 and (s_mask >> b) & 1):
                    return False
    return True


@dataclass(frozen=True)
class LocalizedSemiring:
    base: FiniteSemiring
    s_mask: int
    table: FiniteSemiring
    phi: Homomorphism  # base -> table
    _psi_class: Tuple[Tuple[int, ...], ...]  # [a][s_pos] -> class index
    s_list: Tuple[int, ...]
    reps: Tuple[Tuple[int, int], ...]  # class -> canonical (a, s)

    def class_of_pair(self, a: int, s: int) -> int:
        return self._psi_class[a][self.s_list.index(s)]

    def frac_name(self, c: int) -> str:
        a, s = self.reps[c]
        A = self.base
        if s == A.one:
            return A.name_of(a)
        return f"{A.name_of(a)}/{A.name_of(s)}"


def _psi_values(A: FiniteSemiring, s_list: Sequence[int]) -> Tuple[List[List[int]], int]:
    """psi(a, s) = a*c_s*P^3 for every pair; returns value grid and P."""
    k = len(s_list)
    pref = [A.one] * (k + 1)
    for i, s in enumerate(s_list):
        pref[i + 1] = A.mul[pref[i]][s]
    suf = [A.one] * (k + 1)
    for i in range(k - 1, -1, -1):
        suf[i] = A.mul[suf[i + 1]][s_list[i]]
    P = pref[k]
    P3 = A.mul[A.mul[P][P]][P]
    grid = []
    for a in A.elements:
        row = []
        for i in range(k):
            cof = A.mul[pref[i]][suf[i + 1]]
            row.append(A.mul[A.mul[a][cof]][P3])
        grid.append(row)
    return grid, P


def localize(A: FiniteSemiring, s_mask: int, label: str = "") -> LocalizedSemiring:
    """S^-1 A as a finite table with the canonical map.

    Verifies on construction: S is a multiplicative submonoid; the table
    satisfies the axioms; (S^sat)^-1 A is isomorphic over A; and (below the
    size cap) canonical equality agrees with the direct witness scan.
    """
    if not is_mult_submonoid(A, s_mask):
        raise PreconditionError(f"{A.label}: not a multiplicative submonoid")
    s_list = tuple(bits(s_mask))
    grid, _P = _psi_values(A, s_list)
    values = sorted({v for row in grid for v in row})
    v_index = {v: i for i, v in enumerate(values)}
    n = len(values)
    cls_grid = tuple(tuple(v_index[v] for v in row) for row in grid)
    reps: List[Tuple[int, int]] = [(-1, -1)] * n
    for si in range(len(s_list)):
        for a in A.elements:
            c = cls_grid[a][si]
            if reps[c][0] < 0:
                reps[c] = (a, s_list[si])
    pos_one = s_list.index(A.one)

    def cls(a: int, s_pos: int) -> int:
        return cls_grid[a][s_pos]

    s_pos = {s: i for i, s in enumerate(s_list)}
    add_t = []
    mul_t = []
    for i in range(n):
        a, s = reps[i]
        row_a, row_m = [], []
        for j in range(n):
            b, t = reps[j]
            num = A.add[A.mul[a][t]][A.mul[b][s]]
            den = A.mul[s][t]
            row_a.append(cls(num, s_pos[den]))
            row_m.append(cls(A.mul[a][b], s_pos[den]))
        add_t.append(tuple(row_a))
        mul_t.append(tuple(row_m))
    names = []
    for i in range(n):
        a, s = reps[i]
        nm = A.name_of(a) if s == A.one else f"{A.name_of(a)}/{A.name_of(s)}"
        names.append(nm)
    if len(set(names)) != n:  # name clashes possible after collapsing
        names = [f"{nm}#{i}" if names.count(nm) > 1 else nm for i, nm in enumerate(names)]
    table = assert_valid(
        FiniteSemiring(
            size=n,
            zero=cls(A.zero, pos_one),
            one=cls(A.one, pos_one),
            add=tuple(add_t),
            mul=tuple(mul_t),
            label=label or f"{A.label}[S^-1]",
            names=tuple(names),
        )
    )
    phi = Homomorphism(A, table, tuple(cls(a, pos_one) for a in A.elements))
    if phi.violation() is not None:
        raise InternalCheckError("localization map is not a hom")
    loc = LocalizedSemiring(A, s_mask, table, phi, cls_grid, s_list, tuple(reps))
    _assert_scan_agreement(A, loc)
    _assert_saturation_iso(A, loc)
    return loc


def _witness_equal(A: FiniteSemiring, s_list, a, s, b, t) -> bool:
    return any(
        A.mul[A.mul[a][t]][u] == A.mul[A.mul[b][s]][u] for u in s_list
    )


def _assert_scan_agreement(A: FiniteSemiring, loc: LocalizedSemiring) -> None:
    if A.size * len(loc.s_list) > _SCAN_CAP:
        return
    sl = loc.s_list
    pairs = [(a, si) for a in A.elements for si in range(len(sl))]
    for (a, si) in pairs:
        for (b, ti) in pairs:
            scan = _witness_equal(A, sl, a, sl[si], b, sl[ti])
            canon = loc._psi_class[a][si] == loc._psi_class[b][ti]
            if scan != canon:
                raise InternalCheckError(
                    f"{A.label}: canonical fraction equality disagrees with scan"
                )


def saturate(A: FiniteSemiring, s_mask: int) -> int:
    """S^sat = {b : bc in S for some c}; asserted equal to the set of
    elements mapping to units of S^-1 A."""
    if not is_mult_submonoid(A, s_mask):
        raise PreconditionError(f"{A.label}: not a multiplicative submonoid")
    out = 0
    for b in A.elements:
        if any((s_mask >> A.mul[b][c]) & 1 for c in A.elements):
            out |= 1 << b
    loc = _localize_raw(A, s_mask)
    um = units(loc.table)
    via_units = mask_of(b for b in A.elements if (um >> loc.phi(b)) & 1)
    if via_units != out:
        raise InternalCheckError(f"{A.label}: saturation characterizations disagree")
    if not is_mult_submonoid(A, out) or not is_saturated(A, out):
        raise InternalCheckError(f"{A.label}: saturation is not saturated")
    return out


def _localize_raw(A: FiniteSemiring, s_mask: int) -> LocalizedSemiring:
    """localize() without the saturation-iso assertion (used to break the
    recursion between localize and saturate)."""
    if not is_mult_submonoid(A, s_mask):
        raise PreconditionError(f"{A.label}: not a multiplicative submonoid")
    s_list = tuple(bits(s_mask))
    grid, _P = _psi_values(A, s_list)
    values = sorted({v for row in grid for v in row})
    v_index = {v: i for i, v in enumerate(values)}
    n = len(values)
    cls_grid = tuple(tuple(v_index[v] for v in row) for row in grid)
    reps: List[Tuple[int, int]] = [(-1, -1)] * n
    for si in range(len(s_list)):
        for a in A.elements:
            c = cls_grid[a][si]
            if reps[c][0] < 0:
                reps[c] = (a, s_list[si])
    pos_one = s_list.index(A.one)
    s_pos = {s: i for i, s in enumerate(s_list)}
    add_t, mul_t = [], []
    for i in range(n):
        a, s = reps[i]
        row_a, row_m = [], []
        for j in range(n):
            b, t = reps[j]
            num = A.add[A.mul[a][t]][A.mul[b][s]]
            den = A.mul[s][t]
            row_a.append(cls_grid[num][s_pos[den]])
            row_m.append(cls_grid[A.mul[a][b]][s_pos[den]])
        add_t.append(tuple(row_a))
        mul_t.append(tuple(row_m))
    table = assert_valid(
        FiniteSemiring(
            size=n,
            zero=cls_grid[A.zero][pos_one],
            one=cls_grid[A.one][pos_one],
            add=tuple(add_t),
            mul=tuple(mul_t),
            label=f"{A.label}[S^-1]",
        )
    )
    phi = Homomorphism(A, table, tuple(cls_grid[a][pos_one] for a in A.elements))
    return LocalizedSemiring(A, s_mask, table, phi, cls_grid, s_list, tuple(reps))


def _assert_saturation_iso(A: FiniteSemiring, loc: LocalizedSemiring) -> None:
    sat = 0
    for b in A.elements:
        if any((loc.s_mask >> A.mul[b][c]) & 1 for c in A.elements):
            sat |= 1 << b
    if sat == loc.s_mask:
        return
    satloc = _localize_raw(A, sat)
    # natural map: class of (a,s) in S^-1A -> class of (a,s) in (S^sat)^-1A
    fwd = [-1] * loc.table.size
    for a in A.elements:
        for si, s in enumerate(loc.s_list):
            c = loc._psi_class[a][si]
            d = satloc.class_of_pair(a, s)
            if fwd[c] >= 0 and fwd[c] != d:
                raise InternalCheckError("saturation comparison map ill-defined")
            fwd[c] = d
    if -1 in fwd or len(set(fwd)) != satloc.table.size:
        raise InternalCheckError("S^-1A and (S^sat)^-1A are not isomorphic")
    h = Homomorphism(loc.table, satloc.table, tuple(fwd))
    if h.violation() is not None:
        raise InternalCheckError("saturation comparison map is not a hom")


# ---------------------------------------------------------------------------
# semi-invertibility and hardening


def semi_invertible(A: FiniteSemiring, a: int) -> bool:
    """1 + a*b = a*c for some b,c; equivalently 1 lies in the subtractive
    closure of aA. Idempotent ambients cross-check 1 <= a*b."""
    w = core.semi_invertible_witness(A.size, A.add, A.mul, A.one, a)
    if is_idempotent(A):
        shortcut = any(leq(A, A.one, A.mul[a][b]) for b in A.elements)
        if shortcut != (w is not None):
            raise InternalCheckError(f"{A.label}: semi-invertibility criteria disagree")
    return w is not None


def semi_invertibles_mask(A: FiniteSemiring) -> int:
    return mask_of(a for a in A.elements if semi_invertible(A, a))


def is_hard(A: FiniteSemiring) -> bool:
    """Invertible coincides with semi-invertible."""
    return units(A) == semi_invertibles_mask(A)


def harden(A: FiniteSemiring) -> LocalizedSemiring:
    """A-diamond: localization at the semi-invertible elements; always hard."""
    s = semi_invertibles_mask(A)
    if not is_mult_submonoid(A, s):
        raise InternalCheckError(f"{A.label}: semi-invertibles not a submonoid")
    if not is_saturated(A, s):
        raise InternalCheckError(f"{A.label}: semi-invertibles not saturated")
    loc = localize(A, s, label=f"{A.label}^")
    if not is_hard(loc.table):
        raise InternalCheckError(f"{A.label}: hardening is not hard")
    return loc


# ---------------------------------------------------------------------------
# N[1/N]: exact localization of the naturals at one positive integer


@dataclass(frozen=True)
class NatFraction:
    """num / N^k with k minimal."""

    num: int
    k: int

    def as_fraction(self, N: int) -> Fraction:
        return Fraction(self.num, N**self.k)


class NatLocalization:
    """N[1/N] with canonical forms; exact arithmetic throughout."""

    def __init__(self, N: int):
        if N < 1:
            raise PreconditionError("N must be >= 1")
        self.N = N

    def member(self, q: Fraction) -> bool:
        if q < 0:
            return False
        d = q.denominator
        g = gcd(d, self.N)
        while d > 1 and g > 1:
            while d % g == 0:
                d //= g
            g = gcd(d, self.N)
        return d == 1

    def canonical(self, q: Fraction) -> NatFraction:
        if not self.member(q):
            raise PreconditionError(f"{q} is not in N[1/{self.N}]")
        k = 0
        scaled = q
        while scaled.denominator != 1:
            scaled *= self.N
            k += 1
        return NatFraction(int(scaled), k)

    def add(self, x: NatFraction, y: NatFraction) -> NatFraction:
        return self.canonical(x.as_fraction(self.N) + y.as_fraction(self.N))

    def mul(self, x: NatFraction, y: NatFraction) -> NatFraction:
        return self.canonical(x.as_fraction(self.N) * y.as_fraction(self.N))

    def from_nat(self, n: int) -> NatFraction:
        return self.canonical(Fraction(n))

    def fmt(self, x: NatFraction) -> str:
        return str(x.num) if x.k == 0 else f"{x.num}/{self.N}^{x.k}"


# ---------------------------------------------------------------------------
# hardening of B[x]


@dataclass(frozen=True)
class BxFraction:
    """f/g with f,g boolean polynomials in one variable (bitmask encoding),
    g semi-invertible (constant term 1)."""

    num: int
    den: int

    def __post_init__(self):
        if self.den & 1 == 0:
            raise PreconditionError("denominator must have constant term 1")


def bx_frac_add(u: BxFraction, v: BxFraction) -> BxFraction:
    return BxFraction(
        core.bx_mul(u.num, v.den) | core.bx_mul(v.num, u.den),
        core.bx_mul(u.den, v.den),
    )


def bx_frac_mul(u: BxFraction, v: BxFraction) -> BxFraction:
    return BxFraction(core.bx_mul(u.num, v.num), core.bx_mul(u.den, v.den))


def bx_hardening_iso(frac: BxFraction) -> Tuple:
    """The MinMaxPair value (ord_0 f, deg f - deg g); zero maps to the
    distinguished absorbing point (inf, -inf)."""
    if frac.num == 0:
        return (INF, NEG_INF)
    o, d = poly.bool_poly_ord_deg(frac.num)
    _, dg = poly.bool_poly_ord_deg(frac.den)
    return (o, d - dg)


def _exhaustive_cap() -> int:
    default = 22 if core.BACKEND_NAME == "cython" else 14
    try:
        return int(os.environ.get("SEMISPEC_BX_EXHAUSTIVE_CAP", default))
    except ValueError:
        return default


def bx_witness_equal(u: BxFraction, v: BxFraction, bound: Optional[int] = None) -> bool:
    """Equality of fractions by bounded witness search.

    Scans the complete separating family x^i*(1+x+...+x^k) for i,k <= bound
    (complete: any witness with unit constant term forces equal (ord, deg),
    and then the canonical family member is itself a witness). Whenever the
    bound is below the exhaustiveness cap, a fully exhaustive scan over all
    witnesses with unit constant term confirms the answer.
    """
    a = core.bx_mul(u.num, v.den)
    b = core.bx_mul(v.num, u.den)
    if bound is None:
        bound = 2 * max(
            poly.bool_poly_deg(u.num),
            poly.bool_poly_deg(u.den),
            poly.bool_poly_deg(v.num),
            poly.bool_poly_deg(v.den),
            1,
        )
    found = False
    for k in range(bound + 1):
        ek = (1 << (k + 1)) - 1
        for i in range(bound - k + 1):
            w = ek << i
            if w & 1 == 0:
                continue
            if core.bx_mul(a, w) == core.bx_mul(b, w):
                found = True
                break
        if found:
            break
    if bound <= _exhaustive_cap():
        exh = core.bx_witness_exhaustive(a, b, bound) != -1
        if exh != found:
            raise InternalCheckError("bx witness family missed an exhaustive witness")
    return found
