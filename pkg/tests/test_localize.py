"""Localization: fraction classes, saturation, semi-invertibility, hardening."""

from fractions import Fraction

import pytest

from semispec import corpus
from semispec.errors import PreconditionError
from semispec.kernel import find_iso, units
from semispec.localize import (
    BxFraction,
    NatLocalization,
    bx_frac_add,
    bx_frac_mul,
    bx_hardening_iso,
    bx_witness_equal,
    harden,
    is_hard,
    is_mult_submonoid,
    is_saturated,
    localize,
    saturate,
    semi_invertible,
    semi_invertibles_mask,
)
from semispec.poly import bx_mul


def submonoids(A):
    out = []
    for m in range(1 << A.size):
        if (m >> A.one) & 1 and is_mult_submonoid(A, m):
            out.append(m)
    return out


def test_is_mult_submonoid_oracle(small_tables):
    for name, A in small_tables.items():
        for m in range(1 << A.size):
            want = (m >> A.one) & 1 == 1 and all(
                (m >> A.mul[a][b]) & 1
                for a in A.elements if (m >> a) & 1
                for b in A.elements if (m >> b) & 1
            )
            assert is_mult_submonoid(A, m) == want, name


def test_saturate_properties(small_tables):
    for name, A in small_tables.items():
        for m in submonoids(A):
            sat = saturate(A, m)
            assert sat & m == m, name
            assert is_saturated(A, sat), name
            assert saturate(A, sat) == sat, name


def test_localize_at_one_is_identity(small_tables):
    for name, A in small_tables.items():
        L = localize(A, 1 << A.one)
        assert L.phi.is_bijective(), name


def test_localize_at_units_is_identity(small_tables):
    for name, A in small_tables.items():
        L = localize(A, units(A))
        assert L.phi.is_bijective(), name


def test_localize_with_zero_collapses(small_tables):
    for name, A in small_tables.items():
        full = (1 << A.size) - 1
        L = localize(A, full)
        assert L.table.size == 1, name


def test_localized_denominators_become_units(small_tables):
    for name, A in small_tables.items():
        for m in submonoids(A):
            L = localize(A, m)
            u = units(L.table)
            for s in A.elements:
                if (m >> s) & 1:
                    assert (u >> L.phi.images[s]) & 1, name


def test_fraction_equality_witness(small_tables):
    """Two pairs collapse to one class exactly when a monoid member
    equalizes the cross products: the defining relation, rechecked."""
    for name, A in small_tables.items():
        if A.size > 4:
            continue
        for m in submonoids(A):
            L = localize(A, m)
            ss = [s for s in A.elements if (m >> s) & 1]
            for a in A.elements:
                for s in ss:
                    for b in A.elements:
                        for t in ss:
                            same = L.class_of_pair(a, s) == L.class_of_pair(b, t)
                            wit = any(
                                A.mul[u][A.mul[a][t]] == A.mul[u][A.mul[b][s]]
                                for u in ss
                            )
                            assert same == wit, name


def test_localize_rejects_non_submonoid():
    A = corpus.get("boolx")
    with pytest.raises(PreconditionError):
        localize(A, 0b100)  # x alone, no 1


FROZEN_BOOLX_LOCS = [
    # (inverted element, resulting size)
    (2, 2),   # inverting x forces x = 1
    (3, 3),   # inverting 1+x keeps a middle level
]


@pytest.mark.parametrize("elem,size", FROZEN_BOOLX_LOCS)
def test_boolx_principal_localizations(elem, size):
    A = corpus.get("boolx")
    m = saturate(A, (1 << A.one) | (1 << elem))
    L = localize(A, m)
    assert L.table.size == size


def test_semi_invertible_oracle(small_tables):
    for name, A in small_tables.items():
        for a in A.elements:
            want = any(
                A.add[A.one][A.mul[a][b]] == A.mul[a][c]
                for b in A.elements
                for c in A.elements
            )
            assert semi_invertible(A, a) == want, name


FROZEN_SEMI_MASKS = {
    "bool2": 2, "boolnil": 10, "boolpair": 8, "boolx": 10, "boolxy": 47330,
    "chain3": 4, "chain3xbool": 32, "chain4": 8, "f2": 2, "satnat4": 14,
    "satnat8": 254, "trivial1": 1, "trop5": 2, "z4": 10,
}

FROZEN_HARD = {
    "bool2": True, "boolnil": False, "boolpair": True, "boolx": False,
    "boolxy": False, "chain3": True, "chain3xbool": True, "chain4": True,
    "f2": True, "satnat4": False, "satnat8": False, "trivial1": True,
    "trop5": True, "z4": True,
}


def test_semi_invertibles_frozen(corpus_tables):
    for name, want in FROZEN_SEMI_MASKS.items():
        assert semi_invertibles_mask(corpus_tables[name]) == want, name


def test_is_hard_frozen(corpus_tables):
    for name, want in FROZEN_HARD.items():
        assert is_hard(corpus_tables[name]) == want, name


def test_harden_frozen_targets(corpus_tables):
    H = harden(corpus_tables["boolx"])
    assert H.table.size == 3
    assert find_iso(H.table, corpus_tables["chain3"]) is not None
    H = harden(corpus_tables["satnat4"])
    assert H.table.size == 2
    assert find_iso(H.table, corpus_tables["bool2"]) is not None
    H = harden(corpus_tables["satnat8"])
    assert find_iso(H.table, corpus_tables["bool2"]) is not None
    # the nilpotent variant also lands on three elements but with x^2 = 0,
    # which no chain realizes
    H = harden(corpus_tables["boolnil"])
    assert H.table.size == 3
    assert find_iso(H.table, corpus_tables["chain3"]) is None


def test_harden_fixes_hard_tables(corpus_tables):
    for name, A in corpus_tables.items():
        if FROZEN_HARD[name]:
            assert harden(A).phi.is_bijective(), name


def test_hardening_is_hard(corpus_tables):
    for name, A in corpus_tables.items():
        if A.size <= 8:
            assert is_hard(harden(A).table), name


def test_nat_localization():
    L = NatLocalization(2)
    assert L.member(Fraction(3, 4))
    assert not L.member(Fraction(1, 3))
    assert L.member(Fraction(5))
    c = L.canonical(Fraction(6, 8))
    assert L.fmt(c) == "3/2^2"
    a = L.canonical(Fraction(1, 2))
    b = L.canonical(Fraction(3, 2))
    s = L.add(a, b)
    assert s.as_fraction(2) == Fraction(2)
    p = L.mul(a, b)
    assert p.as_fraction(2) == Fraction(3, 4)
    assert L.from_nat(7).as_fraction(2) == Fraction(7)


def test_nat_localization_rejects_outsiders():
    L = NatLocalization(6)
    assert L.member(Fraction(5, 36))
    assert not L.member(Fraction(1, 5))
    with pytest.raises(PreconditionError):
        L.canonical(Fraction(1, 5))


# one-variable boolean fractions: masks encode coefficient supports
X, ONE, ONEX = 0b10, 0b1, 0b11


def test_bx_frac_ops_match_cross_multiplication():
    u = BxFraction(X, ONEX)
    v = BxFraction(ONE, ONE)
    s = bx_frac_add(u, v)
    # u+v = (x + (1+x))/(1+x) = (1+x)/(1+x)
    assert (s.num, s.den) == (bx_mul(X, ONE) | bx_mul(ONE, ONEX), bx_mul(ONEX, ONE))
    p = bx_frac_mul(u, v)
    assert (p.num, p.den) == (bx_mul(X, ONE), bx_mul(ONEX, ONE))


FROZEN_BX_ISO = [
    (BxFraction(X, ONE), (1, 1)),
    (BxFraction(ONE, ONE), (0, 0)),
    (BxFraction(ONEX, ONE), (0, 1)),
    (BxFraction(0b110, ONEX), (1, 1)),  # (x+x^2)/(1+x) reduces to x
]


@pytest.mark.parametrize("frac,pair", FROZEN_BX_ISO)
def test_bx_hardening_iso_frozen(frac, pair):
    assert bx_hardening_iso(frac) == pair


def test_bx_hardening_iso_zero():
    n, d = bx_hardening_iso(BxFraction(0, ONE))
    assert d < 0 or str(d) == "-inf"


def test_bx_hardening_iso_is_multiplicative():
    from semispec.kernel import MINMAX_PAIR
    fracs = [BxFraction(X, ONE), BxFraction(ONEX, ONE), BxFraction(ONE, ONEX),
             BxFraction(0b110, ONEX), BxFraction(0b101, ONE)]
    for u in fracs:
        for v in fracs:
            lhs = bx_hardening_iso(bx_frac_mul(u, v))
            rhs = MINMAX_PAIR.mul(bx_hardening_iso(u), bx_hardening_iso(v))
            assert lhs == rhs
            lhs = bx_hardening_iso(bx_frac_add(u, v))
            rhs = MINMAX_PAIR.add(bx_hardening_iso(u), bx_hardening_iso(v))
            assert lhs == rhs


def test_bx_witness_equal_frozen():
    assert bx_witness_equal(BxFraction(0b110, ONEX), BxFraction(X, ONE))
    assert not bx_witness_equal(BxFraction(X, ONE), BxFraction(0b100, ONE))
    assert bx_witness_equal(BxFraction(ONE, ONE), BxFraction(ONE, ONE))
