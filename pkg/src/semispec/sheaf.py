"""Structure sheaves on finite spectra, plus the two classical failure
witnesses (the ring-side presheaf failure and the naturals model sections).

Sections are computed two independent ways and compared:
  equalizer route    compatible fraction families over a principal cover,
                     the equalizer of the product of overlap restrictions;
  alexandrov route   limits of the presheaf over minimal opens (finite
                     spectra are Alexandrov), which is the sheafified value
                     on any open.
On the all-primes spectrum the canonical comparison from the target
localization is asserted to be an isomorphism; on the subtractive-primes
spectrum it is computed and reported, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ._backend import core
from .errors import InternalCheckError, PreconditionError, ResourceError
from .kernel import (
    FiniteSemiring,
    Homomorphism,
    assert_valid,
    bits,
    mask_of,
    units,
)
from .localize import (
    LocalizedSemiring,
    NatLocalization,
    localize,
    saturate,
    semi_invertibles_mask,
    is_mult_submonoid,
    is_saturated,
)
from .spectra import cover_check, enumerate_space
from . import poly


# ---------------------------------------------------------------------------
# monoids of opens and the presheaf cache


class SheafContext:
    """Caches the spectrum, the monoid of each open, localizations and
    restriction maps for one (semiring, kind) pair."""

    def __init__(self, A: FiniteSemiring, kind: str):
        self.A = A
        self.kind = kind
        self.space = enumerate_space(A, kind)
        self._monoids: Dict[int, int] = {}
        self._locs: Dict[int, LocalizedSemiring] = {}
        self._restr: Dict[Tuple[int, int], Homomorphism] = {}

    # -- opens ---------------------------------------------------------------
    def is_open(self, point_set: int) -> bool:
        cov = 0
        for a in self.A.elements:
            b = self.space.basis[a]
            if b & ~point_set == 0:
                cov |= b
        return cov == point_set

    def monoid_of(self, point_set: int) -> int:
        """S_U = {b : D(b) contains U}; saturated multiplicative submonoid."""
        if point_set in self._monoids:
            return self._monoids[point_set]
        A = self.A
        m = mask_of(
            b for b in A.elements if self.space.basis[b] & point_set == point_set
        )
        if not is_mult_submonoid(A, m) or not is_saturated(A, m):
            raise InternalCheckError(f"{A.label}: S_U is not a saturated submonoid")
        if point_set == self.space.full:
            expected = units(A) if self.kind == "spec" else semi_invertibles_mask(A)
            if m != expected:
                raise InternalCheckError(f"{A.label}: S of the whole space is wrong")
        self._monoids[point_set] = m
        return m

    def principal_monoid(self, a: int) -> int:
        """Monoid of D(a); on the all-primes spectrum this equals the
        saturation of the powers of a, and that identity is asserted."""
        m = self.monoid_of(self.space.basis[a])
        if self.kind == "spec":
            powers = 1 << self.A.one
            x = self.A.one
            while True:
                x = self.A.mul[x][a]
                if (powers >> x) & 1:
                    break
                powers |= 1 << x
            if m != saturate(self.A, powers):
                raise InternalCheckError(
                    f"{self.A.label}: S_D(a) is not the saturation of the powers"
                )
        return m

    # -- presheaf ------------------------------------------------------------
    def local(self, s_mask: int) -> LocalizedSemiring:
        if s_mask not in self._locs:
            self._locs[s_mask] = localize(self.A, s_mask)
        return self._locs[s_mask]

    def presheaf_at(self, point_set: int) -> LocalizedSemiring:
        return self.local(self.monoid_of(point_set))

    def restriction(self, big: int, small: int) -> Homomorphism:
        """Presheaf restriction between the localizations of two nested
        opens (big contains small)."""
        if small & ~big:
            raise PreconditionError("restriction target is not contained")
        key = (big, small)
        if key in self._restr:
            return self._restr[key]
        lu, lv = self.presheaf_at(big), self.presheaf_at(small)
        images = []
        for c in lu.table.elements:
            a, s = lu.reps[c]
            images.append(lv.class_of_pair(a, s))
        h = Homomorphism(lu.table, lv.table, tuple(images))
        if h.violation() is not None:
            raise InternalCheckError(f"{self.A.label}: restriction is not a hom")
        self._restr[key] = h
        return h


def s_of_open(A: FiniteSemiring, point_set: Optional[int] = None) -> int:
    """Monoid of an open of the all-primes spectrum (whole space if omitted)."""
    ctx = SheafContext(A, "spec")
    return ctx.monoid_of(ctx.space.full if point_set is None else point_set)


def s_tilde_of_open(A: FiniteSemiring, point_set: Optional[int] = None) -> int:
    """Monoid of an open of the subtractive-primes spectrum."""
    ctx = SheafContext(A, "sp")
    return ctx.monoid_of(ctx.space.full if point_set is None else point_set)


# ---------------------------------------------------------------------------
# equalizer sections


@dataclass
class SectionSemiring:
    ctx: SheafContext
    cover: Tuple[int, ...]
    target: Optional[int]  # element whose principal open is covered; None = whole
    locs: List[LocalizedSemiring]
    tuples: List[Tuple[int, ...]]
    table: FiniteSemiring
    from_base: Homomorphism  # A -> sections
    compare: Optional[Homomorphism]  # L(target) -> sections
    compare_is_iso: bool

    @property
    def base_injective(self) -> bool:
        return len(set(self.from_base.images)) == self.ctx.A.size

    def index_of(self, tup: Tuple[int, ...]) -> int:
        try:
            return self.tuples.index(tup)
        except ValueError:
            raise PreconditionError("tuple is not a compatible family")


def equalizer_sections(
    ctx: SheafContext, cover: Sequence[int], target: Optional[int] = None
) -> SectionSemiring:
    """Sections over the open covered by the principal opens of `cover`,
    computed as the equalizer of pairwise overlap restrictions."""
    A, space = ctx.A, ctx.space
    cover = tuple(cover)
    if not cover:
        raise PreconditionError("empty cover")
    want = space.full if target is None else space.basis[target]
    for c in cover:
        if space.basis[c] & ~want:
            raise PreconditionError("cover member is not inside the target open")
    if not cover_check(space, cover, target):
        raise PreconditionError("family does not cover the target open")

    locs = [ctx.local(ctx.principal_monoid(c)) for c in cover]
    k = len(cover)
    compat: Dict[Tuple[int, int], List[int]] = {}
    for i in range(k):
        for j in range(i + 1, k):
            overlap = space.basis[cover[i]] & space.basis[cover[j]]
            ri = ctx.restriction(space.basis[cover[i]], overlap)
            rj = ctx.restriction(space.basis[cover[j]], overlap)
            rows = []
            for u in locs[i].table.elements:
                m = 0
                for v in locs[j].table.elements:
                    if ri.images[u] == rj.images[v]:
                        m |= 1 << v
                rows.append(m)
            compat[(i, j)] = rows
    tuples = core.equalizer_scan([l.table.size for l in locs], compat)
    index = {t: i for i, t in enumerate(tuples)}

    def op(table_of, t1, t2):
        return tuple(
            table_of(locs[i].table)[t1[i]][t2[i]] for i in range(k)
        )

    n = len(tuples)
    add, mul = [], []
    for t1 in tuples:
        ra, rm = [], []
        for t2 in tuples:
            sa = op(lambda tb: tb.add, t1, t2)
            sm = op(lambda tb: tb.mul, t1, t2)
            if sa not in index or sm not in index:
                raise InternalCheckError("equalizer not closed under operations")
            ra.append(index[sa])
            rm.append(index[sm])
        add.append(tuple(ra))
        mul.append(tuple(rm))
    zero = index[tuple(l.table.zero for l in locs)]
    one = index[tuple(l.table.one for l in locs)]
    names = tuple(
        "(" + ",".join(locs[i].table.name_of(t[i]) for i in range(k)) + ")"
        for t in tuples
    )
    table = assert_valid(
        FiniteSemiring(
            size=n,
            zero=zero,
            one=one,
            add=tuple(add),
            mul=tuple(mul),
            label=f"{A.label}-sections",
            names=names,
        )
    )
    base_images = []
    for a in A.elements:
        t = tuple(l.phi(a) for l in locs)
        if t not in index:
            raise InternalCheckError("image of the base is not a compatible family")
        base_images.append(index[t])
    from_base = Homomorphism(A, table, tuple(base_images))
    if from_base.violation() is not None:
        raise InternalCheckError("base-to-sections map is not a hom")

    ltgt = ctx.presheaf_at(want)
    cmp_images = []
    ok = True
    for c in ltgt.table.elements:
        x, s = ltgt.reps[c]
        t = tuple(l.class_of_pair(x, s) for l in locs)
        if t not in index:
            ok = False
            break
        cmp_images.append(index[t])
    compare = None
    compare_is_iso = False
    if ok:
        compare = Homomorphism(ltgt.table, table, tuple(cmp_images))
        if compare.violation() is not None:
            raise InternalCheckError("comparison map is not a hom")
        compare_is_iso = compare.is_bijective()
    if ctx.kind == "spec" and not compare_is_iso:
        raise InternalCheckError(
            f"{A.label}: localization-to-equalizer comparison is not an isomorphism"
        )
    return SectionSemiring(
        ctx, cover, target, locs, tuples, table, from_base, compare, compare_is_iso
    )


# ---------------------------------------------------------------------------
# the common-denominator sublemma and explicit gluing


def common_denominator_form(
    secs: SectionSemiring, tup: Tuple[int, ...]
) -> Tuple[List[Tuple[int, int]], int]:
    """Rewrite a compatible family as x_i'/a_i^E with the cross relations
    x_i'*s_j' = x_j'*s_i' holding exactly. All-primes spectra only."""
    ctx = secs.ctx
    if ctx.kind != "spec":
        raise PreconditionError("common denominators require the all-primes sheaf")
    A = ctx.A
    cover, locs = secs.cover, secs.locs
    k = len(cover)
    if tup not in secs.tuples:
        raise PreconditionError("tuple is not a compatible family")

    def divide_power(s: int, a: int) -> Tuple[int, int]:
        # minimal n with s*v = a^n for some v
        seen = set()
        n = 0
        x = A.one
        while x not in seen:
            seen.add(x)
            for v in A.elements:
                if A.mul[s][v] == x:
                    return v, n
            x = A.mul[x][a]
            n += 1
        raise InternalCheckError("cover denominator divides no power")

    xs = [locs[i].reps[tup[i]][0] for i in range(k)]
    ss = [locs[i].reps[tup[i]][1] for i in range(k)]
    vn = [divide_power(ss[i], cover[i]) for i in range(k)]
    ys = [A.mul[xs[i]][vn[i][0]] for i in range(k)]
    ns = [vn[i][1] for i in range(k)]
    big_m = 0
    for i in range(k):
        for j in range(i + 1, k):
            sij = ctx.monoid_of(ctx.space.basis[cover[i]] & ctx.space.basis[cover[j]])
            lhs0 = A.mul[ys[i]][A.power(cover[j], ns[j])]
            rhs0 = A.mul[ys[j]][A.power(cover[i], ns[i])]
            w = next(
                (w for w in bits(sij) if A.mul[lhs0][w] == A.mul[rhs0][w]), None
            )
            if w is None:
                raise InternalCheckError("compatible family without overlap witness")
            aij = A.mul[cover[i]][cover[j]]
            _t, m = divide_power(w, aij)
            big_m = max(big_m, m)
    e = big_m + max(ns, default=0)
    xs2 = [A.mul[ys[i]][A.power(cover[i], e - ns[i])] for i in range(k)]
    ss2 = [A.power(cover[i], e) for i in range(k)]
    for i in range(k):
        if locs[i].class_of_pair(xs2[i], ss2[i]) != tup[i]:
            raise InternalCheckError("normalized local differs from the original")
    for i in range(k):
        for j in range(k):
            if A.mul[xs2[i]][ss2[j]] != A.mul[xs2[j]][ss2[i]]:
                raise InternalCheckError("cross relations fail after normalization")
    return list(zip(xs2, ss2)), e


def glue_section(secs: SectionSemiring, tup: Tuple[int, ...]) -> int:
    """Reconstruct the global fraction of a compatible family: solve
    sum(b_j*s_j') = a^N over the cover denominators, return the class of
    sum(b_j*x_j') / a^N in the target localization."""
    ctx = secs.ctx
    A = ctx.A
    pairs, _e = common_denominator_form(secs, tup)
    target = A.one if secs.target is None else secs.target
    want = ctx.space.full if secs.target is None else ctx.space.basis[secs.target]
    ltgt = ctx.presheaf_at(want)

    # certificate-tracking closure of the ideal generated by the s_j'
    combos: Dict[int, List[Tuple[int, int]]] = {A.zero: []}
    frontier = [A.zero]
    while frontier:
        nxt = []
        for e in frontier:
            for j, (_xj, sj) in enumerate(pairs):
                for c in A.elements:
                    r = A.add[e][A.mul[c][sj]]
                    if r not in combos:
                        combos[r] = combos[e] + [(j, c)]
                        nxt.append(r)
        frontier = nxt
    n = 0
    x = A.one
    seen = set()
    while x not in combos:
        seen.add(x)
        x = A.mul[x][target]
        n += 1
        if x in seen:
            raise InternalCheckError("no power of the target is a combination")
    combo = combos[x]
    num = A.zero
    for j, c in combo:
        num = A.add[num][A.mul[c][pairs[j][0]]]
    # replay the certificate: the same combination over the denominators
    den = A.zero
    for j, c in combo:
        den = A.add[den][A.mul[c][pairs[j][1]]]
    if den != x:
        raise InternalCheckError("combination certificate does not replay")
    result = ltgt.class_of_pair(num, x)
    for i, c in enumerate(secs.cover):
        rho = ctx.restriction(want, ctx.space.basis[c])
        if rho.images[result] != tup[i]:
            raise InternalCheckError("glued section does not restrict correctly")
    return result


# ---------------------------------------------------------------------------
# alexandrov sections


@dataclass
class AlexandrovSections:
    ctx: SheafContext
    open_set: int
    points: List[int]  # point indices inside the open
    locs: List[LocalizedSemiring]  # presheaf values at minimal opens
    tuples: List[Tuple[int, ...]]
    table: FiniteSemiring
    from_base: Homomorphism

    def stalk(self, point_index: int) -> LocalizedSemiring:
        return self.locs[self.points.index(point_index)]


def alexandrov_sections(ctx: SheafContext, open_set: int) -> AlexandrovSections:
    """Sections over an arbitrary open as the limit of presheaf values at
    minimal opens, compatible along specialization. This is the sheafified
    value; on covered opens it must agree with the equalizer route."""
    A, space = ctx.A, ctx.space
    if not ctx.is_open(open_set):
        raise PreconditionError("not an open set of this spectrum")
    pts = list(bits(open_set))
    minimal = [space.minimal_open(i) for i in pts]
    for m in minimal:
        if m & ~open_set:
            raise InternalCheckError("minimal open escapes the ambient open")
    locs = []
    for pos, i in enumerate(pts):
        s = ctx.monoid_of(minimal[pos])
        if ctx.kind == "spec" and s != A.full_mask ^ space.point_masks[i]:
            raise InternalCheckError(
                f"{A.label}: stalk monoid is not the prime complement"
            )
        locs.append(ctx.local(s))
    compat: Dict[Tuple[int, int], List[int]] = {}
    for fi in range(len(pts)):
        for fj in range(fi + 1, len(pts)):
            pi, pj = pts[fi], pts[fj]
            rows: Optional[List[int]] = None
            if space.point_masks[pj] | space.point_masks[pi] == space.point_masks[pi]:
                # pj contained in pi: value at pj determined by value at pi
                rho = ctx.restriction(minimal[fi], minimal[fj])
                rows = [1 << rho.images[u] for u in locs[fi].table.elements]
            elif space.point_masks[pi] | space.point_masks[pj] == space.point_masks[pj]:
                rho = ctx.restriction(minimal[fj], minimal[fi])
                rows = []
                for u in locs[fi].table.elements:
                    rows.append(
                        mask_of(
                            v
                            for v in locs[fj].table.elements
                            if rho.images[v] == u
                        )
                    )
            if rows is not None:
                compat[(fi, fj)] = rows
    tuples = core.equalizer_scan([l.table.size for l in locs], compat)
    index = {t: i for i, t in enumerate(tuples)}
    n = len(tuples)
    add, mul = [], []
    for t1 in tuples:
        ra, rm = [], []
        for t2 in tuples:
            sa = tuple(locs[i].table.add[t1[i]][t2[i]] for i in range(len(pts)))
            sm = tuple(locs[i].table.mul[t1[i]][t2[i]] for i in range(len(pts)))
            if sa not in index or sm not in index:
                raise InternalCheckError("section families not closed under operations")
            ra.append(index[sa])
            rm.append(index[sm])
        add.append(tuple(ra))
        mul.append(tuple(rm))
    table = assert_valid(
        FiniteSemiring(
            size=n,
            zero=index[tuple(l.table.zero for l in locs)],
            one=index[tuple(l.table.one for l in locs)],
            add=tuple(add),
            mul=tuple(mul),
            label=f"{A.label}-limit-sections",
            names=tuple(
                "(" + ",".join(locs[i].table.name_of(t[i]) for i in range(len(pts))) + ")"
                for t in tuples
            ),
        )
    )
    base_images = []
    for a in A.elements:
        t = tuple(l.phi(a) for l in locs)
        if t not in index:
            raise InternalCheckError("base image is not a compatible family")
        base_images.append(index[t])
    from_base = Homomorphism(A, table, tuple(base_images))
    if from_base.violation() is not None:
        raise InternalCheckError("base-to-sections map is not a hom")
    return AlexandrovSections(ctx, open_set, pts, locs, tuples, table, from_base)


# ---------------------------------------------------------------------------
# global sections, globality, globalization


def gamma(A: FiniteSemiring) -> AlexandrovSections:
    """Global sections of the sheaf on the subtractive-primes spectrum."""
    ctx = SheafContext(A, "sp")
    return alexandrov_sections(ctx, ctx.space.full)


def is_global(A: FiniteSemiring) -> bool:
    return gamma(A).from_base.is_bijective()


@dataclass
class GlobalizeResult:
    table: FiniteSemiring
    steps: int
    sizes: List[int]


def globalize(A: FiniteSemiring, max_iter: int = 5) -> GlobalizeResult:
    """Iterate global sections until the structure map becomes an
    isomorphism."""
    cur = A
    sizes = [A.size]
    for step in range(max_iter + 1):
        g = gamma(cur)
        if g.from_base.is_bijective():
            return GlobalizeResult(cur, step, sizes)
        cur = g.table
        sizes.append(cur.size)
    raise ResourceError(f"{A.label}: no stabilization within {max_iter} steps")


# ---------------------------------------------------------------------------
# sections over the naturals model


@dataclass
class NatSectionReport:
    shape: Tuple
    description: str
    semiring: object


def spec_nat_sections(shape: Tuple) -> NatSectionReport:
    """Sections of the structure sheaf on the naturals model for the two
    supported open shapes: a principal open, or everything-but-the-maximal
    point. Anything else is refused.
    """
    if not shape:
        raise PreconditionError("empty open shape")
    if shape[0] == "D":
        n = shape[1]
        if not isinstance(n, int) or n < 1:
            raise PreconditionError("principal open wants a positive integer")
        return NatSectionReport(
            shape, f"naturals with 1/{n} adjoined", NatLocalization(n)
        )
    if shape[0] == "comax":
        return NatSectionReport(shape, "plain naturals", ComaxDecision())
    raise PreconditionError(f"unsupported open shape {shape!r}")


class ComaxDecision:
    """Sections over the complement of the maximal point: a compatible pair
    (x/2^a over D(2), y/3^b over D(3)) pins down one natural number."""

    def decide(self, x: int, a: int, y: int, b: int) -> int:
        lhs = Fraction(x, 2**a)
        rhs = Fraction(y, 3**b)
        if lhs != rhs:
            raise PreconditionError("pair does not agree on the overlap")
        if lhs.denominator != 1:
            raise InternalCheckError("compatible pair is not a natural number")
        return int(lhs)

    def roundtrip(self, n: int, a: int, b: int) -> bool:
        loc2, loc3 = NatLocalization(2), NatLocalization(3)
        ok = loc2.member(Fraction(n)) and loc3.member(Fraction(n))
        return ok and self.decide(n * 2**a, a, n * 3**b, b) == n


def stalk_at_zero_member(q: Fraction) -> bool:
    """The stalk of the naturals model at the zero prime: the nonnegative
    rationals, realized as the union of all principal-open sections."""
    if q < 0:
        return False
    return NatLocalization(max(1, q.denominator)).member(q)


# ---------------------------------------------------------------------------
# the ring-side failure witness


def ktt_counterexample_verify() -> dict:
    """Exact verification that the localization presheaf of the subring
    {f : degree-one coefficient 0} fails the sheaf equalizer condition on
    the cover by the two hyperbola opens."""
    p = poly.parse_rat_poly
    f1 = p("t^3+t^2")
    f2 = p("t^4+t^3+t^2")
    g1 = p("t^2-1")
    g2 = p("t^3-1")
    witnesses = []
    members_ok = all(poly.ktt_member(f) for f in (f1, f2, g1, g2))
    witnesses.append({"check": "numerators and denominators in the subring",
                      "ok": members_ok})
    cross = poly.rat_mul(f1, g2) == poly.rat_mul(f2, g1)
    witnesses.append({"check": "equalizer condition f1*g2 = f2*g1", "ok": cross})
    q, r = poly.rat_divmod(f1, g1)
    no_poly_preimage = not r.is_zero()
    witnesses.append(
        {"check": "t^3+t^2 not divisible by t^2-1 in Q[t]", "ok": no_poly_preimage}
    )
    # the would-be section in lowest terms: t^2 over t-1, not a polynomial
    t2 = p("t^2")
    tm1 = p("t-1")
    tp1 = p("t+1")
    lowest = (
        poly.rat_mul(t2, tp1) == f1
        and poly.rat_mul(tm1, tp1) == g1
        and not poly.rat_divmod(t2, tm1)[1].is_zero()
    )
    witnesses.append({"check": "lowest terms t^2/(t-1) is not polynomial", "ok": lowest})
    spot = not poly.ktt_member(poly.rat_mul(tm1, tm1))
    witnesses.append({"check": "(t-1)^2 leaves the subring", "ok": spot})
    ok = members_ok and cross and no_poly_preimage and lowest and spot
    return {
        "claim": "localization presheaf on the vanishing-linear-term subring "
        "violates the sheaf condition",
        "status": "pass" if ok else "fail",
        "witnesses": witnesses,
    }
