"""Ideals of finite semirings and of N: closure, primality, subtractivity,
radicals, Bourne quotients, and numerical-semigroup membership.

Finite-semiring ideals are bitmasks over element indices. N-ideals are
handled through generator lists with Apery-set certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from ._backend import core
from .errors import InternalCheckError, PreconditionError, ResourceError
from .kernel import (
    FiniteSemiring,
    Homomorphism,
    assert_valid,
    bits,
    is_idempotent,
    leq,
    mask_of,
    popcount,
)


@dataclass(frozen=True)
class IdealHandle:
    ambient: FiniteSemiring
    mask: int

    def members(self) -> List[int]:
        return list(bits(self.mask))

    def is_proper(self) -> bool:
        return self.mask != self.ambient.full_mask

    def __contains__(self, a: int) -> bool:
        return bool((self.mask >> a) & 1)


def ideal_closure(A: FiniteSemiring, gens: Iterable[int]) -> IdealHandle:
    """Smallest ideal containing gens: fixed point under + and scaling."""
    seed = mask_of(gens)
    return IdealHandle(A, core.ideal_closure_mask(A.size, A.add, A.mul, seed, A.zero))


def is_ideal(A: FiniteSemiring, mask: int) -> bool:
    if not (mask >> A.zero) & 1:
        return False
    return core.ideal_closure_mask(A.size, A.add, A.mul, mask, A.zero) == mask


def all_ideals(A: FiniteSemiring, cap: int = 200000) -> List[IdealHandle]:
    """Every ideal, by closing upward from {0} one generator at a time.

    Each ideal is the closure of its own elements, so adding single elements
    and re-closing reaches all of them.
    """
    zero_ideal = core.ideal_closure_mask(A.size, A.add, A.mul, 0, A.zero)
    seen = {zero_ideal}
    frontier = [zero_ideal]
    while frontier:
        nxt = []
        for m in frontier:
            for a in A.elements:
                if (m >> a) & 1:
                    continue
                j = core.ideal_closure_mask(A.size, A.add, A.mul, m | (1 << a), A.zero)
                if j not in seen:
                    seen.add(j)
                    nxt.append(j)
                    if len(seen) > cap:
                        raise ResourceError(
                            f"{A.label}: ideal lattice exceeds cap {cap}"
                        )
        frontier = nxt
    masks = sorted(seen, key=lambda m: (popcount(m), m))
    return [IdealHandle(A, m) for m in masks]


def is_prime(I: IdealHandle) -> bool:
    """Proper, and ab in I implies a in I or b in I.

    Cross-checked against the complement-is-multiplicative criterion.
    """
    A = I.ambient
    if not I.is_proper():
        return False
    direct = core.prime_violation(A.size, A.mul, I.mask) is None
    comp = [a for a in A.elements if a not in I]
    closed = all((I.mask >> A.mul[a][b]) & 1 == 0 for a in comp for b in comp)
    nonempty = bool(comp)
    if direct != (closed and nonempty):
        raise InternalCheckError(f"{A.label}: prime criteria disagree on {I.mask:b}")
    return direct


def is_subtractive(I: IdealHandle) -> bool:
    """a+b=c with b,c in I forces a in I; on idempotent ambients this is
    cross-checked against down-closedness in the natural order."""
    A = I.ambient
    direct = core.subtractive_violation(A.size, A.add, I.mask) is None
    if is_idempotent(A):
        down = all(
            (I.mask >> a) & 1
            for b in I.members()
            for a in A.elements
            if leq(A, a, b)
        )
        if down != direct:
            raise InternalCheckError(
                f"{A.label}: subtractivity disagrees with down-closedness"
            )
    return direct


def subtractive_closure(I: IdealHandle) -> IdealHandle:
    """Smallest subtractive ideal containing I: {a : a+b=c for some b,c in I}.

    One pass suffices by theory; the fixed-point iteration plus a
    stability assertion guards the implementation.
    """
    A = I.ambient
    m1 = core.subtractive_close_mask(A.size, A.add, I.mask)
    one_pass = I.mask
    for a in A.elements:
        if (one_pass >> a) & 1:
            continue
        for b in I.members():
            if (I.mask >> A.add[a][b]) & 1:
                one_pass |= 1 << a
                break
    if one_pass != m1:
        raise InternalCheckError(f"{A.label}: subtractive closure not one-pass stable")
    out = IdealHandle(A, m1)
    if not is_ideal(A, m1) or not is_subtractive(out):
        raise InternalCheckError(f"{A.label}: subtractive closure is not a kernel")
    return out


def radical_member(I: IdealHandle, a: int) -> bool:
    """Some power a^n (n>=0) lies in I; the power sequence is cycle-finite."""
    A = I.ambient
    seen = set()
    x = A.one
    while x not in seen:
        if (I.mask >> x) & 1:
            return True
        seen.add(x)
        x = A.mul[x][a]
    return False


def radical_mask(I: IdealHandle) -> int:
    return mask_of(a for a in I.ambient.elements if radical_member(I, a))


def primes_containing(A: FiniteSemiring, mask: int, primes: Sequence[IdealHandle]) -> List[IdealHandle]:
    return [p for p in primes if p.mask & mask == mask]


def radical_equals_prime_intersection(
    I: IdealHandle, primes: Sequence[IdealHandle]
) -> bool:
    """rad(I) == intersection of primes containing I (empty intersection = A)."""
    A = I.ambient
    inter = A.full_mask
    for p in primes_containing(A, I.mask, primes):
        inter &= p.mask
    return radical_mask(I) == inter


# ---------------------------------------------------------------------------
# Bourne quotient A / ~_I


def quotient_by_ideal(
    A: FiniteSemiring, I: IdealHandle
) -> Tuple[FiniteSemiring, Homomorphism]:
    """Quotient by a ~ b iff a+i = b+j for some i,j in I, with projection.

    The relation is asserted to be transitive and a congruence; its kernel
    equals the subtractive closure of I.
    """
    n = A.size
    reach = []  # reach[a] = bitmask {a+i : i in I}
    for a in A.elements:
        reach.append(mask_of(A.add[a][i] for i in I.members()))
    related = [[bool(reach[a] & reach[b]) for b in A.elements] for a in A.elements]
    for a in A.elements:
        if not related[a][a]:
            raise InternalCheckError("Bourne relation not reflexive")
        for b in A.elements:
            if related[a][b] != related[b][a]:
                raise InternalCheckError("Bourne relation not symmetric")
            for c in A.elements:
                if related[a][b] and related[b][c] and not related[a][c]:
                    raise InternalCheckError("Bourne relation not transitive")
    # congruence check
    for a in A.elements:
        for b in A.elements:
            if not related[a][b]:
                continue
            for c in A.elements:
                if not related[A.add[a][c]][A.add[b][c]]:
                    raise InternalCheckError("Bourne relation not +-compatible")
                if not related[A.mul[a][c]][A.mul[b][c]]:
                    raise InternalCheckError("Bourne relation not *-compatible")
    cls: List[int] = [-1] * n
    reps: List[int] = []
    for a in A.elements:
        for r_i, r in enumerate(reps):
            if related[a][r]:
                cls[a] = r_i
                break
        else:
            cls[a] = len(reps)
            reps.append(a)
    k = len(reps)
    add = tuple(
        tuple(cls[A.add[reps[i]][reps[j]]] for j in range(k)) for i in range(k)
    )
    mul = tuple(
        tuple(cls[A.mul[reps[i]][reps[j]]] for j in range(k)) for i in range(k)
    )
    names = tuple("[" + A.name_of(r) + "]" for r in reps)
    Q = assert_valid(
        FiniteSemiring(
            size=k,
            zero=cls[A.zero],
            one=cls[A.one],
            add=add,
            mul=mul,
            label=f"{A.label}/~",
            names=names,
        )
    )
    pi = Homomorphism(A, Q, tuple(cls))
    if pi.violation() is not None:
        raise InternalCheckError("quotient projection is not a hom")
    if pi.kernel_mask() != subtractive_closure(I).mask:
        raise InternalCheckError("quotient kernel differs from subtractive closure")
    return Q, pi


# ---------------------------------------------------------------------------
# ideals of N: numerical semigroup membership with certificates


@dataclass(frozen=True)
class NatMembership:
    member: bool
    coeffs: Optional[Tuple[int, ...]]  # certificate: sum coeffs[i]*gens[i] = n


def nat_ideal_member(gens: Sequence[int], n: int) -> NatMembership:
    """Membership of n in the N-ideal generated by gens (all gens > 0 unless
    the ideal is {0}), via the Apery set of the smallest generator.

    The certificate is replayed before returning.
    """
    if n < 0:
        raise PreconditionError("negative input")
    gens = sorted(set(g for g in gens if g > 0))
    if n == 0:
        return NatMembership(True, tuple(0 for _ in gens))
    if not gens:
        return NatMembership(False, None)
    m = gens[0]
    # Dijkstra-style relaxation over residues mod m: apery[r] = least element
    # of the ideal congruent to r, tracking generator multiplicities.
    INFTY = None
    apery: List[Optional[int]] = [INFTY] * m
    combo: List[Optional[Tuple[int, ...]]] = [None] * m
    apery[0] = 0
    combo[0] = tuple(0 for _ in gens)
    import heapq

    heap: List[Tuple[int, int]] = [(0, 0)]
    while heap:
        val, r = heapq.heappop(heap)
        if apery[r] is not None and val > apery[r]:
            continue
        for gi, g in enumerate(gens):
            nv = val + g
            nr = nv % m
            if apery[nr] is None or nv < apery[nr]:
                apery[nr] = nv
                base = list(combo[r])
                base[gi] += 1
                combo[nr] = tuple(base)
                heapq.heappush(heap, (nv, nr))
    r = n % m
    if apery[r] is None or n < apery[r]:
        return NatMembership(False, None)
    # lift the Apery witness by multiples of m
    coeffs = list(combo[r])
    coeffs[0] += (n - apery[r]) // m
    total = sum(c * g for c, g in zip(coeffs, gens))
    if total != n:
        raise InternalCheckError("nat membership certificate failed replay")
    return NatMembership(True, tuple(coeffs))


def nat_pair_tail_start(p: int, q: int) -> int:
    """The classification tail threshold for the ideal <p, q>."""
    return (p - 1) * q


def nat_pair_tail_check(p: int, q: int) -> bool:
    """<p,q> contains every n >= (p-1)q.

    Checking a full window of p consecutive integers suffices: membership is
    stable under adding p, so the window propagates to the whole tail.
    """
    start = nat_pair_tail_start(p, q)
    return all(nat_ideal_member([p, q], n).member for n in range(start, start + p))


def nat_prime_residue_check(p: int, bound: int) -> bool:
    """pN is prime on [0,bound]^2: p | ab implies p | a or p | b."""
    for a in range(bound + 1):
        for b in range(a, bound + 1):
            if (a * b) % p == 0 and a % p != 0 and b % p != 0:
                return False
    return True


def nat_prime_subtractive_check(p: int, bound: int) -> bool:
    """pN is subtractive on [0,bound]: a+b=c with p|b, p|c forces p|a."""
    for a in range(bound + 1):
        for b in range(0, bound + 1 - a, p):
            if (a + b) % p == 0 and a % p != 0:
                return False
    return True
