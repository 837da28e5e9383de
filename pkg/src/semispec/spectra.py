"""Prime spectra of finite semirings and the symbolic model for the
naturals.

A spectrum is a finite list of prime ideal masks with the topology
generated by principal opens D(a) = {p : a not in p}. The kind selects
which primes count as points: every prime ideal (spec) or only the
subtractive ones (sp). Dimension is computed from irreducible closed sets
directly, then cross-checked against longest specialization chains; the
two must agree on finite spaces.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import InternalCheckError, PreconditionError, ResourceError
from . import corpus
from .ideals import (
    IdealHandle,
    all_ideals,
    ideal_closure,
    is_prime,
    is_subtractive,
    nat_pair_tail_check,
    nat_prime_residue_check,
    nat_prime_subtractive_check,
    radical_mask,
    subtractive_closure,
)
from .kernel import (
    FiniteSemiring,
    Homomorphism,
    bits,
    enumerate_homs,
    is_idempotent,
    mask_of,
    popcount,
)


def _spectrum_limit() -> int:
    try:
        return int(os.environ.get("SEMISPEC_SPECTRUM_LIMIT", 16))
    except ValueError:
        return 16


_HOM_ROUTE_LIMIT = 64


@dataclass(frozen=True)
class SpectrumSpace:
    base: FiniteSemiring
    kind: str  # "spec" | "sp"
    point_masks: Tuple[int, ...]  # prime ideal masks, sorted (popcount, mask)
    basis: Tuple[int, ...]  # element a -> bitmask over point indices

    @property
    def npoints(self) -> int:
        return len(self.point_masks)

    @property
    def full(self) -> int:
        return (1 << self.npoints) - 1

    def d_open(self, a: int) -> int:
        return self.basis[a]

    def v_closed(self, elems: Iterable[int]) -> int:
        out = self.full
        for a in elems:
            out &= self.full ^ self.basis[a]
        return out

    def point_index(self, ideal_mask: int) -> int:
        try:
            return self.point_masks.index(ideal_mask)
        except ValueError:
            raise PreconditionError("not a point of this spectrum")

    def specializes(self, i: int, j: int) -> bool:
        """Point j lies in the closure of point i (bigger prime)."""
        return self.point_masks[i] | self.point_masks[j] == self.point_masks[j]

    def opens(self) -> List[int]:
        """All open point sets: unions of basis opens."""
        out: Set[int] = {0}
        frontier = sorted(set(self.basis))
        changed = True
        while changed:
            changed = False
            for b in frontier:
                for o in list(out):
                    u = o | b
                    if u not in out:
                        out.add(u)
                        changed = True
        return sorted(out)

    def minimal_open(self, i: int) -> int:
        """Smallest open containing point i (finite spaces are Alexandrov)."""
        out = self.full
        for a in self.base.elements:
            if (self.basis[a] >> i) & 1:
                out &= self.basis[a]
        return out


def _build_space(A: FiniteSemiring, kind: str, masks: Sequence[int]) -> SpectrumSpace:
    masks = tuple(sorted(masks, key=lambda m: (popcount(m), m)))
    basis = []
    for a in A.elements:
        basis.append(mask_of(i for i, p in enumerate(masks) if not (p >> a) & 1))
    space = SpectrumSpace(A, kind, masks, tuple(basis))
    for a in A.elements:
        for b in A.elements:
            if space.basis[A.mul[a][b]] != space.basis[a] & space.basis[b]:
                raise InternalCheckError(f"{A.label}: D(ab) != D(a) & D(b)")
    return space


def _sp_masks_via_homs(A: FiniteSemiring) -> List[int]:
    B2 = corpus.get("bool2")
    return sorted({h.kernel_mask() for h in enumerate_homs(A, B2)})


def spec_enumerate(A: FiniteSemiring) -> SpectrumSpace:
    """All prime ideals, found by filtering the ideal lattice."""
    if A.size > _spectrum_limit():
        raise ResourceError(f"{A.label}: size {A.size} over spectrum limit")
    pts = [I.mask for I in all_ideals(A) if is_prime(I)]
    return _build_space(A, "spec", pts)


def sp_enumerate(A: FiniteSemiring) -> SpectrumSpace:
    """All subtractive prime ideals (prime kernels).

    Below the spectrum size limit the ideal lattice is filtered directly,
    and for idempotent semirings the result is cross-checked against the
    kernels of all boolean-valued homomorphisms. Idempotent semirings up to
    64 elements use the kernel route alone, with every kernel re-verified
    pointwise as a subtractive prime.
    """
    if A.size <= _spectrum_limit():
        pts = [
            I.mask for I in all_ideals(A) if is_prime(I) and is_subtractive(I)
        ]
        if is_idempotent(A):
            via_homs = _sp_masks_via_homs(A)
            if via_homs != sorted(pts):
                raise InternalCheckError(
                    f"{A.label}: hom kernels disagree with subtractive primes"
                )
        return _build_space(A, "sp", pts)
    if not is_idempotent(A) or A.size > _HOM_ROUTE_LIMIT:
        raise ResourceError(f"{A.label}: size {A.size} over spectrum limit")
    pts = _sp_masks_via_homs(A)
    for m in pts:
        h = IdealHandle(A, m)
        if not h.is_proper() or not is_prime(h) or not is_subtractive(h):
            raise InternalCheckError(f"{A.label}: hom kernel fails the point check")
    return _build_space(A, "sp", pts)


def enumerate_space(A: FiniteSemiring, kind: str) -> SpectrumSpace:
    if kind == "spec":
        return spec_enumerate(A)
    if kind == "sp":
        return sp_enumerate(A)
    raise PreconditionError(f"unknown spectrum kind {kind!r}")


# ---------------------------------------------------------------------------
# covers


def cover_check(
    space: SpectrumSpace, elems: Sequence[int], target: Optional[int] = None
) -> bool:
    """Does the union of the principal opens of `elems` cover the target
    (another principal open, or the whole space when omitted)?

    Verified topologically and by the matching ideal criterion; the two
    must agree.
    """
    A = space.base
    union = 0
    for a in elems:
        union |= space.basis[a]
    want = space.full if target is None else space.basis[target]
    topological = want & ~union == 0
    gen = ideal_closure(A, elems)
    if target is None:
        if space.kind == "spec":
            algebraic = gen.mask == A.full_mask
        else:
            algebraic = subtractive_closure(gen).mask == A.full_mask
        # a cover of the whole space is exactly a generating family
        if algebraic != topological:
            raise InternalCheckError(f"{A.label}: cover criteria disagree")
        return topological
    if space.kind == "spec":
        algebraic = (radical_mask(gen) >> target) & 1 == 1
        if algebraic != topological:
            raise InternalCheckError(f"{A.label}: principal cover criteria disagree")
        return topological
    # sp: the radical criterion is sufficient but not definitional
    if (radical_mask(gen) >> target) & 1 and not topological:
        raise InternalCheckError(f"{A.label}: radical cover missed by topology")
    return topological


# ---------------------------------------------------------------------------
# induced maps


@dataclass(frozen=True)
class InducedMap:
    """Point map of Spec(f)/Sp(f): q |-> f^-1(q), with its continuity
    certificate (preimage of D(a) is D(f(a)))."""

    hom: Homomorphism
    kind: str
    source: SpectrumSpace  # spectrum of the codomain
    target: SpectrumSpace  # spectrum of the domain
    point_map: Tuple[int, ...]

    def apply(self, i: int) -> int:
        return self.point_map[i]

    def preimage_set(self, target_set: int) -> int:
        return mask_of(
            i for i in range(self.source.npoints) if (target_set >> self.point_map[i]) & 1
        )


def induced_map(f: Homomorphism, kind: str) -> InducedMap:
    src = enumerate_space(f.cod, kind)
    tgt = enumerate_space(f.dom, kind)
    pm = []
    for q in src.point_masks:
        pre = mask_of(a for a in f.dom.elements if (q >> f(a)) & 1)
        handle = IdealHandle(f.dom, pre)
        if not handle.is_proper() or not is_prime(handle):
            raise InternalCheckError("preimage of a prime is not prime")
        if kind == "sp" and not is_subtractive(handle):
            raise InternalCheckError("preimage of a kernel is not subtractive")
        pm.append(tgt.point_index(pre))
    out = InducedMap(f, kind, src, tgt, tuple(pm))
    for a in f.dom.elements:  # continuity: certificate a -> f(a)
        if out.preimage_set(tgt.basis[a]) != src.basis[f(a)]:
            raise InternalCheckError("preimage of a basis open is not the certified open")
    return out


def localization_point_report(A: FiniteSemiring, s_mask: int, kind: str) -> dict:
    """The spectrum map of the canonical hom to S^-1 A: injective, open,
    image exactly the primes missing S."""
    from .localize import localize  # deferred: localize depends on kernel only

    loc = localize(A, s_mask)
    m = induced_map(loc.phi, kind)
    image = mask_of(sorted(set(m.point_map)))
    injective = len(set(m.point_map)) == m.source.npoints
    expected = mask_of(
        i
        for i, p in enumerate(m.target.point_masks)
        if p & s_mask == 0
    )
    image_ok = image == expected
    # openness with certificates: the image of every basis open of the
    # localized spectrum is a basis open of the base spectrum
    open_ok = True
    for c in loc.table.elements:
        img = mask_of(m.point_map[i] for i in bits(m.source.basis[c]))
        a, s = loc.reps[c]
        P = A.prod_of(bits(s_mask))
        if img != m.target.basis[A.mul[a][P]]:
            open_ok = False
    ok = injective and image_ok and open_ok
    return {
        "kind": kind,
        "injective": injective,
        "image_matches": image_ok,
        "open_map": open_ok,
        "pass": ok,
    }


def localization_homeo_check(A: FiniteSemiring, s_mask: int) -> bool:
    return all(
        localization_point_report(A, s_mask, kind)["pass"] for kind in ("spec", "sp")
    )


def hardening_sp_homeo_check(A: FiniteSemiring) -> bool:
    """Sp of the hardening map is a homeomorphism onto all of Sp A."""
    from .localize import harden, semi_invertibles_mask

    s = semi_invertibles_mask(A)
    rep = localization_point_report(A, s, "sp")
    if not rep["pass"]:
        return False
    m = induced_map(harden(A).phi, "sp")
    onto = len(set(m.point_map)) == m.target.npoints
    return onto and m.source.npoints == m.target.npoints


# ---------------------------------------------------------------------------
# dimension


def dimension_of_opens(npoints: int, opens: Sequence[int]) -> int:
    """Length of the longest strict chain of irreducible closed sets, the
    irreducibles enumerated exhaustively; cross-checked against longest
    chains of point closures."""
    full = (1 << npoints) - 1
    closeds = sorted({full ^ o for o in opens}, key=popcount)
    cset = set(closeds)
    irr: List[int] = []
    for C in closeds:
        if C == 0:
            continue
        proper = [F for F in closeds if F and F | C == C and F != C]
        reducible = any(
            F1 | F2 == C for i, F1 in enumerate(proper) for F2 in proper[i:]
        )
        if not reducible:
            irr.append(C)
    # longest chain in the containment order on irreducibles
    irr.sort(key=popcount)
    best: Dict[int, int] = {}
    for i, C in enumerate(irr):
        best[C] = 0
        for D in irr[:i]:
            if D != C and D | C == C and best[D] + 1 > best[C]:
                best[C] = best[D] + 1
    dim = max(best.values(), default=0)
    # cross-check: point closures are irreducible and, on finite spaces,
    # exhaust the irreducibles
    closures = []
    for i in range(npoints):
        cl = full
        for F in closeds:
            if (F >> i) & 1:
                cl &= F
        if cl not in cset:
            raise InternalCheckError("point closure is not closed")
        closures.append(cl)
    uniq = sorted(set(closures), key=popcount)
    chain: Dict[int, int] = {}
    for i, C in enumerate(uniq):
        chain[C] = 0
        for D in uniq[:i]:
            if D != C and D | C == C and chain[D] + 1 > chain[C]:
                chain[C] = chain[D] + 1
    dim_chain = max(chain.values(), default=0)
    if dim != dim_chain:
        raise InternalCheckError("irreducible-closed dimension disagrees with chains")
    return dim


def dimension(space: SpectrumSpace) -> int:
    return dimension_of_opens(space.npoints, space.opens())


# ---------------------------------------------------------------------------
# symbolic model for the naturals


def _primes_upto(bound: int) -> List[int]:
    sieve = [True] * (bound + 1)
    out = []
    for n in range(2, bound + 1):
        if sieve[n]:
            out.append(n)
            for k in range(n * n, bound + 1, n):
                sieve[k] = False
    return out


class NatSpectrumModel:
    """Finite stand-in for the spectrum of the naturals: the zero prime,
    one point per explicit prime up to the bound, and (spec kind only) the
    maximal point of everything-but-one. Principal opens follow divisibility."""

    def __init__(self, prime_bound: int, kind: str):
        if prime_bound < 7:
            raise PreconditionError("prime bound must be at least 7")
        if kind not in ("spec", "sp"):
            raise PreconditionError(f"unknown spectrum kind {kind!r}")
        self.kind = kind
        self.prime_bound = prime_bound
        self.primes = _primes_upto(prime_bound)
        self.labels = ["zero"] + [f"prime{p}" for p in self.primes]
        if kind == "spec":
            self.labels.append("max")
        self.npoints = len(self.labels)
        self._max_index = self.npoints - 1 if kind == "spec" else None

    def d_open(self, n: int) -> int:
        if n < 0:
            raise PreconditionError("negative element")
        if n == 0:
            return 0
        out = 1  # the zero prime misses every n >= 1
        for i, p in enumerate(self.primes):
            if n % p != 0:
                out |= 1 << (i + 1)
        if n == 1 and self._max_index is not None:
            out |= 1 << self._max_index
        return out

    def opens(self) -> List[int]:
        out = {0, (1 << self.npoints) - 1}
        for n in range(2, self.prime_bound + 1):
            out.add(self.d_open(n))
        # unions of principal opens collapse along gcd, so one more sweep
        # over pairwise unions reaches the fixpoint
        changed = True
        while changed:
            changed = False
            items = sorted(out)
            for x in items:
                for y in items:
                    if (x | y) not in out:
                        out.add(x | y)
                        changed = True
        return sorted(out)

    def dimension(self) -> int:
        return dimension_of_opens(self.npoints, self.opens())

    def basis_invariants_ok(self) -> bool:
        full = (1 << self.npoints) - 1
        if self.d_open(0) != 0 or self.d_open(1) != full:
            return False
        for n in range(2, self.prime_bound + 1):
            o = self.d_open(n)
            if not o & 1:
                return False
            if self._max_index is not None and (o >> self._max_index) & 1:
                return False
            for i, p in enumerate(self.primes):
                if bool((o >> (i + 1)) & 1) != (n % p != 0):
                    return False
        return True


def nat_model_verify(bound: int = 200) -> dict:
    """The three classification checks behind the model, at the given bound."""
    if bound < 7:
        raise PreconditionError("bound must be at least 7")
    primes = _primes_upto(bound)
    tail_ok = all(
        nat_pair_tail_check(p, q)
        for i, p in enumerate(primes)
        for q in primes[i + 1 :]
    )
    prime_ok = all(nat_prime_residue_check(p, bound) for p in primes)
    subtractive_ok = all(nat_prime_subtractive_check(p, bound) for p in primes)
    # everything-but-one: multiplicative complement, yet 1+2=3 escapes
    max_prime_ok = 1 * 1 == 1
    max_not_subtractive = (1 + 2 == 3) and (2 != 1) and (3 != 1)
    report = {
        "bound": bound,
        "tail_property": tail_ok,
        "explicit_primes_prime": prime_ok,
        "explicit_primes_subtractive": subtractive_ok,
        "max_point_prime": max_prime_ok,
        "max_point_not_subtractive": max_not_subtractive,
    }
    report["pass"] = all(v for k, v in report.items() if k != "bound")
    return report


# ---------------------------------------------------------------------------
# export


def space_to_json(space: SpectrumSpace) -> str:
    points = []
    for m in space.point_masks:
        points.append(
            {
                "subset": [space.base.name_of(a) for a in bits(m)],
                "subtractive": is_subtractive(IdealHandle(space.base, m)),
            }
        )
    basis = {
        space.base.name_of(a): sorted(bits(space.basis[a]))
        for a in space.base.elements
    }
    return json.dumps(
        {"kind": space.kind, "points": points, "basis": basis},
        indent=2,
        sort_keys=True,
    )


def space_to_dot(space: SpectrumSpace) -> str:
    """Specialization edges from more-generic to more-special points."""
    lines = ["digraph spectrum {"]
    for i, m in enumerate(space.point_masks):
        label = "{" + ",".join(space.base.name_of(a) for a in bits(m)) + "}"
        lines.append(f'  p{i} [label="{label}"];')
    for i in range(space.npoints):
        for j in range(space.npoints):
            if i == j or not space.specializes(i, j):
                continue
            # Hasse edge: no point strictly between
            between = any(
                k not in (i, j)
                and space.specializes(i, k)
                and space.specializes(k, j)
                for k in range(space.npoints)
            )
            if not between:
                lines.append(f"  p{i} -> p{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
