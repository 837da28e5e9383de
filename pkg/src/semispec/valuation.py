"""Order-subadditive multiplicative valuations into idempotent semirings,
their exhaustive correspondence with prime ideals over the two-element
target, and the lattice of scalar-stable submodules with its universal
valuation.

The lattice construction enumerates every submodule outright (finite base,
so finitely generated is no restriction), checks the semiring axioms on the
resulting tables, and certifies that its natural order is set inclusion.
The universal map a -> cyclic module of a is verified to be initial among
integral valuations by explicit factoring plus exhaustive uniqueness scans.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from ._backend import core
from .errors import InternalCheckError, PreconditionError, ResourceError
from .kernel import (
    FiniteSemiring,
    Homomorphism,
    assert_valid,
    bits,
    enumerate_homs,
    is_idempotent,
    mask_of,
)
from .localize import localize
from .spectra import sp_enumerate, spec_enumerate
from . import corpus


# ---------------------------------------------------------------------------
# valuations


@dataclass(frozen=True)
class GValuation:
    source: FiniteSemiring
    target: FiniteSemiring
    images: Tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.images[a]


def g_valuation_violation(v: GValuation) -> Optional[str]:
    """None if the map preserves 0 and 1, is multiplicative, and is
    subadditive for the target's natural order."""
    A, B, f = v.source, v.target, v.images
    if not is_idempotent(B):
        raise PreconditionError(f"{B.label}: valuation target must be idempotent")
    if len(f) != A.size:
        raise PreconditionError("image list does not match the source")
    if f[A.zero] != B.zero:
        return "zero"
    if f[A.one] != B.one:
        return "one"
    for a in A.elements:
        for b in A.elements:
            if f[A.mul[a][b]] != B.mul[f[a]][f[b]]:
                return f"mul@({a},{b})"
            lhs = f[A.add[a][b]]
            bound = B.add[f[a]][f[b]]
            if B.add[lhs][bound] != bound:  # lhs below bound in the order
                return f"subadd@({a},{b})"
    return None


def is_g_valuation(v: GValuation) -> bool:
    return g_valuation_violation(v) is None


def chi_of_prime(A: FiniteSemiring, prime_mask: int) -> GValuation:
    """Characteristic map of the complement of a prime ideal, into the
    two-element semiring."""
    b2 = corpus.get("bool2")
    images = tuple(
        b2.zero if (prime_mask >> a) & 1 else b2.one for a in A.elements
    )
    return GValuation(A, b2, images)


def bool_valuations(A: FiniteSemiring) -> List[GValuation]:
    """Every valuation into the two-element semiring, by exhaustive scan
    over all maps."""
    if A.size > 20:
        raise ResourceError(f"{A.label}: 2^{A.size} maps is over the scan limit")
    b2 = corpus.get("bool2")
    out = []
    for code in range(1 << A.size):
        images = tuple((code >> a) & 1 for a in A.elements)
        v = GValuation(A, b2, images)
        if g_valuation_violation(v) is None:
            out.append(v)
    return out


def val_spec_bijection(A: FiniteSemiring) -> List[Tuple[GValuation, int]]:
    """Pair every two-element-valued valuation with its kernel and certify
    that kernel-of and characteristic-of are mutually inverse maps onto the
    prime ideals."""
    vals = bool_valuations(A)
    space = spec_enumerate(A)
    pairs = []
    seen = set()
    for v in vals:
        ker = mask_of(a for a in A.elements if v.images[a] == v.target.zero)
        if ker not in space.point_masks:
            raise InternalCheckError(f"{A.label}: valuation kernel is not prime")
        if ker in seen:
            raise InternalCheckError(f"{A.label}: two valuations share a kernel")
        seen.add(ker)
        back = chi_of_prime(A, ker)
        if back.images != v.images:
            raise InternalCheckError(f"{A.label}: characteristic map is not inverse")
        pairs.append((v, ker))
    if seen != set(space.point_masks):
        raise InternalCheckError(f"{A.label}: valuations miss some prime")
    return pairs


def integral_part(v: GValuation) -> int:
    """Elements whose value is below the target's 1; certified to be a
    subsemiring of the source."""
    A, B = v.source, v.target
    m = mask_of(
        a for a in A.elements if B.add[v.images[a]][B.one] == B.one
    )
    if not ((m >> A.zero) & 1 and (m >> A.one) & 1):
        raise InternalCheckError("integral part misses 0 or 1")
    for a in bits(m):
        for b in bits(m):
            if not (m >> A.add[a][b]) & 1 or not (m >> A.mul[a][b]) & 1:
                raise InternalCheckError("integral part is not a subsemiring")
    return m


# ---------------------------------------------------------------------------
# the submodule lattice


@dataclass(frozen=True)
class SubmoduleLattice:
    base: FiniteSemiring
    scalars: FiniteSemiring
    iota: Homomorphism  # scalars -> base
    table: FiniteSemiring  # lattice as a semiring
    modules: Tuple[int, ...]  # lattice element -> subset mask of the base
    cyclic: Tuple[int, ...]  # base element -> lattice index of its module

    def index_of(self, module_mask: int) -> int:
        try:
            return self.modules.index(module_mask)
        except ValueError:
            raise PreconditionError("subset is not a scalar-stable module")

    def module_of(self, seed_mask: int) -> int:
        """Lattice index of the module generated by a subset of the base."""
        A = self.base
        scal = mask_of(self.iota.images)
        m = core.closure_mask(
            A.size, A.add, A.mul, seed_mask | (1 << A.zero), scal
        )
        return self.index_of(m)


def _default_scalars(
    A: FiniteSemiring,
    scalars: Optional[FiniteSemiring],
    iota: Optional[Homomorphism],
) -> Tuple[FiniteSemiring, Homomorphism]:
    if scalars is None:
        scalars = corpus.get("bool2")
    if iota is None:
        if scalars.size != 2:
            raise PreconditionError("scalar hom required for non-boolean scalars")
        images = [0] * scalars.size
        images[scalars.zero] = A.zero
        images[scalars.one] = A.one
        iota = Homomorphism(scalars, A, tuple(images))
    if iota.violation() is not None:
        raise PreconditionError("scalar map is not a homomorphism")
    return scalars, iota


def build_mra(
    A: FiniteSemiring,
    scalars: Optional[FiniteSemiring] = None,
    iota: Optional[Homomorphism] = None,
    limit: int = 4096,
) -> SubmoduleLattice:
    """The idempotent semiring of all scalar-stable submodules of A, with
    elementwise sum as addition and generated-product as multiplication."""
    scalars, iota = _default_scalars(A, scalars, iota)
    if A.size > 16:
        raise ResourceError(f"{A.label}: subset scan over size limit")
    scal = mask_of(iota.images)
    zero_bit = 1 << A.zero
    modules: List[int] = []
    for m in range(1 << A.size):
        if not m & zero_bit:
            continue
        if core.closure_mask(A.size, A.add, A.mul, m, scal) == m:
            modules.append(m)
    if len(modules) > limit:
        raise ResourceError(
            f"{A.label}: {len(modules)} modules over the limit {limit}"
        )
    index = {m: i for i, m in enumerate(modules)}
    n = len(modules)

    def elementwise_sum(m1: int, m2: int) -> int:
        out = 0
        for a in bits(m1):
            ra = A.add[a]
            for b in bits(m2):
                out |= 1 << ra[b]
        return out

    def product_module(m1: int, m2: int) -> int:
        seed = zero_bit
        for a in bits(m1):
            ra = A.mul[a]
            for b in bits(m2):
                seed |= 1 << ra[b]
        return core.closure_mask(A.size, A.add, A.mul, seed, scal)

    add, mul = [], []
    for m1 in modules:
        ra, rm = [], []
        for m2 in modules:
            s = elementwise_sum(m1, m2)
            if s not in index:
                raise InternalCheckError("module sum escaped the lattice")
            ra.append(index[s])
            p = product_module(m1, m2)
            if p not in index:
                raise InternalCheckError("module product escaped the lattice")
            rm.append(index[p])
        add.append(tuple(ra))
        mul.append(tuple(rm))
    one_mask = core.closure_mask(A.size, A.add, A.mul, zero_bit | (1 << A.one), scal)
    names = tuple(
        "{" + ",".join(A.name_of(a) for a in bits(m)) + "}" for m in modules
    )
    table = assert_valid(
        FiniteSemiring(
            size=n,
            zero=index[zero_bit],
            one=index[one_mask],
            add=tuple(add),
            mul=tuple(mul),
            label=f"M[{A.label}]",
            names=names,
        )
    )
    if not is_idempotent(table):
        raise InternalCheckError("module lattice is not idempotent")
    for i, m1 in enumerate(modules):
        for j, m2 in enumerate(modules):
            below = table.add[i][j] == j
            if below != (m1 | m2 == m2):
                raise InternalCheckError("lattice order differs from inclusion")
    cyclic = tuple(
        index[
            core.closure_mask(A.size, A.add, A.mul, zero_bit | (1 << a), scal)
        ]
        for a in A.elements
    )
    return SubmoduleLattice(A, scalars, iota, table, tuple(modules), cyclic)


def universal_valuation(
    A: FiniteSemiring,
    scalars: Optional[FiniteSemiring] = None,
    iota: Optional[Homomorphism] = None,
) -> Tuple[SubmoduleLattice, GValuation]:
    """a -> module generated by a; checked to be a valuation whose integral
    part contains the scalar image."""
    lat = build_mra(A, scalars, iota)
    v = GValuation(A, lat.table, lat.cyclic)
    bad = g_valuation_violation(v)
    if bad is not None:
        raise InternalCheckError(f"{A.label}: universal map fails {bad}")
    ipart = integral_part(v)
    for r in lat.iota.images:
        if not (ipart >> r) & 1:
            raise InternalCheckError(f"{A.label}: scalar image is not integral")
    return lat, v


def factor_through_universal(
    lat: SubmoduleLattice, v: GValuation
) -> Homomorphism:
    """The unique semiring map f on the lattice with v = f after the
    universal valuation; f(M) = sum of the values of M's elements.
    Uniqueness is certified by exhausting all homs to the target."""
    A = lat.base
    if v.source is not A and v.source != A:
        raise PreconditionError("valuation source differs from the lattice base")
    bad = g_valuation_violation(v)
    if bad is not None:
        raise PreconditionError(f"not a valuation ({bad})")
    ipart = integral_part(v)
    for r in lat.iota.images:
        if not (ipart >> r) & 1:
            raise PreconditionError("scalar image is not integral for this valuation")
    S = v.target
    images = tuple(
        S.sum_of(v.images[a] for a in bits(m)) for m in lat.modules
    )
    f = Homomorphism(lat.table, S, images)
    if f.violation() is not None:
        raise InternalCheckError("element-sum factoring is not a hom")
    for a in A.elements:
        if f.images[lat.cyclic[a]] != v.images[a]:
            raise InternalCheckError("factoring does not reproduce the valuation")
    matches = [
        h
        for h in enumerate_homs(lat.table, S)
        if all(h.images[lat.cyclic[a]] == v.images[a] for a in A.elements)
    ]
    if len(matches) != 1 or matches[0].images != images:
        raise InternalCheckError(
            f"{A.label}: factoring is not unique ({len(matches)} matches)"
        )
    return f


def generator_sum_invariance(
    lat: SubmoduleLattice, v: GValuation, module_index: int
) -> bool:
    """Sum of values is the same over every generating subset of a module."""
    A = lat.base
    S = v.target
    m = lat.modules[module_index]
    elems = list(bits(m))
    if len(elems) > 12:
        raise ResourceError("too many elements for the subset scan")
    want = S.sum_of(v.images[a] for a in elems)
    scal = mask_of(lat.iota.images)
    zero_bit = 1 << A.zero
    for code in range(1 << len(elems)):
        seed = zero_bit | mask_of(elems[i] for i in range(len(elems)) if (code >> i) & 1)
        if core.closure_mask(A.size, A.add, A.mul, seed, scal) != m:
            continue
        got = S.sum_of(v.images[a] for a in bits(seed))
        if got != want:
            return False
    return True


# ---------------------------------------------------------------------------
# the pullback and the homeomorphism


def valuation_pullback_check(v: GValuation) -> bool:
    """The kernel pullback sends prime kernels of the target to prime
    ideals of the source, and the preimage of a basic open is the basic
    open of the value."""
    A, S = v.source, v.target
    sp_s = sp_enumerate(S)
    spec_a = spec_enumerate(A)
    pulled = []
    for p in sp_s.point_masks:
        q = mask_of(a for a in A.elements if (p >> v.images[a]) & 1)
        if q not in spec_a.point_masks:
            return False
        pulled.append(q)
    for a in A.elements:
        lhs = mask_of(
            i for i, q in enumerate(pulled) if not (q >> a) & 1
        )
        if lhs != sp_s.basis[v.images[a]]:
            return False
    return True


@dataclass
class HomeoReport:
    bijective: bool
    openness: bool
    basis: bool
    points: int

    @property
    def ok(self) -> bool:
        return self.bijective and self.openness and self.basis


def vstar_homeo_check(
    A: FiniteSemiring,
    scalars: Optional[FiniteSemiring] = None,
    iota: Optional[Homomorphism] = None,
) -> HomeoReport:
    """Certify that pulling back along the universal valuation is a
    homeomorphism from the subtractive-prime space of the lattice onto the
    prime space of the base."""
    lat, v = universal_valuation(A, scalars, iota)
    sp_m = sp_enumerate(lat.table)
    spec_a = spec_enumerate(A)
    fwd: List[int] = []  # sp_m point index -> spec_a point index
    bijective = True
    for p in sp_m.point_masks:
        q = mask_of(a for a in A.elements if (p >> v.images[a]) & 1)
        if q not in spec_a.point_masks:
            bijective = False
            break
        fwd.append(spec_a.point_masks.index(q))
    if bijective:
        bijective = len(set(fwd)) == len(spec_a.point_masks) == len(sp_m.point_masks)
    if bijective:
        for qi, q in enumerate(spec_a.point_masks):
            back = mask_of(
                i for i, m in enumerate(lat.modules) if m & ~q == 0
            )
            if back not in sp_m.point_masks or fwd[
                sp_m.point_masks.index(back)
            ] != qi:
                bijective = False
                break
    openness = True
    if bijective:
        for a in A.elements:
            img = mask_of(fwd[i] for i in bits(sp_m.basis[v.images[a]]))
            if img != spec_a.basis[a]:
                openness = False
                break
    else:
        openness = False
    basis = True
    for mi, m in enumerate(lat.modules):
        union = 0
        for a in bits(m):
            union |= sp_m.basis[lat.cyclic[a]]
        if union != sp_m.basis[mi]:
            basis = False
            break
    return HomeoReport(bijective, openness, basis, len(spec_a.point_masks))


# ---------------------------------------------------------------------------
# localization of the lattice


def _powers_mask(T: FiniteSemiring, x: int) -> int:
    m = 1 << T.one
    cur = T.one
    while True:
        cur = T.mul[cur][x]
        if (m >> cur) & 1:
            return m
        m |= 1 << cur


def _power_exponent(T: FiniteSemiring, x: int, s: int) -> int:
    """Minimal k with x^k = s; s must be a power of x."""
    cur = T.one
    k = 0
    seen = set()
    while cur not in seen:
        if cur == s:
            return k
        seen.add(cur)
        cur = T.mul[cur][x]
        k += 1
    raise PreconditionError("element is not a power")


def mra_localization_iso_check(
    A: FiniteSemiring,
    a: int,
    scalars: Optional[FiniteSemiring] = None,
    iota: Optional[Homomorphism] = None,
) -> bool:
    """Lattice of the localization vs localization of the lattice at the
    cyclic module of a: build both and check the two canonical maps are
    mutually inverse homomorphisms."""
    lat, v = universal_valuation(A, scalars, iota)
    la = localize(A, _powers_mask(A, a))
    iota2 = la.phi.compose(lat.iota)
    lat2 = build_mra(la.table, lat.scalars, iota2)
    vmod = v.images[a]
    loc_m = localize(lat.table, _powers_mask(lat.table, vmod))
    scal2 = mask_of(iota2.images)
    zero_bit2 = 1 << la.table.zero

    def alpha_of_pair(mi: int, s: int) -> int:
        k = _power_exponent(lat.table, vmod, s)
        ak = A.power(a, k)
        seed = zero_bit2
        for m_el in bits(lat.modules[mi]):
            seed |= 1 << la.class_of_pair(m_el, ak)
        mask2 = core.closure_mask(
            la.table.size, la.table.add, la.table.mul, seed, scal2
        )
        return lat2.index_of(mask2)

    # well-definedness across every pair in each class, then the map itself
    alpha = [None] * loc_m.table.size
    for mi in lat.table.elements:
        for s in loc_m.s_list:
            c = loc_m.class_of_pair(mi, s)
            val = alpha_of_pair(mi, s)
            if alpha[c] is None:
                alpha[c] = val
            elif alpha[c] != val:
                return False
    if any(x is None for x in alpha):
        raise InternalCheckError("localized lattice class without a pair")
    h = Homomorphism(loc_m.table, lat2.table, tuple(alpha))
    if h.violation() is not None:
        return False

    def beta_of_module(mask2: int) -> int:
        ks = {}
        for c in bits(mask2):
            x, s = la.reps[c]
            ks[c] = (x, _power_exponent(A, a, s))
        big = max((k for _x, k in ks.values()), default=0)
        seed = 1 << A.zero
        for x, k in ks.values():
            seed |= 1 << A.mul[x][A.power(a, big - k)]
        scal = mask_of(lat.iota.images)
        m = core.closure_mask(A.size, A.add, A.mul, seed, scal)
        return loc_m.class_of_pair(lat.index_of(m), lat.table.power(vmod, big))

    for c in loc_m.table.elements:
        if beta_of_module(lat2.modules[alpha[c]]) != c:
            return False
    for ni in lat2.table.elements:
        if alpha[beta_of_module(lat2.modules[ni])] != ni:
            return False
    return True


def mra_presheaf_gap_probe(A: FiniteSemiring, a: int) -> dict:
    """Compare inverting the cyclic module of a directly against localizing
    the lattice at the sheaf monoid of its basic open; records whether the
    two localizations agree on this instance."""
    from .kernel import find_iso
    from .sheaf import SheafContext

    lat, v = universal_valuation(A)
    vmod = v.images[a]
    left = localize(lat.table, _powers_mask(lat.table, vmod))
    ctx = SheafContext(lat.table, "sp")
    monoid = ctx.monoid_of(ctx.space.basis[vmod])
    right = ctx.local(monoid)
    iso = find_iso(left.table, right.table) is not None
    return {
        "base": A.label,
        "element": A.name_of(a),
        "power_localization_size": left.table.size,
        "sheaf_localization_size": right.table.size,
        "isomorphic": iso,
    }
