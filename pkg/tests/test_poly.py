"""Polynomial layers: boolean, idempotent-coefficient, and exact rational."""

from fractions import Fraction

import pytest

from semispec.errors import FormatError, PreconditionError
from semispec.kernel import BOOL, TROPICAL_RAT
from semispec.poly import (
    bool_eval,
    bool_poly,
    bool_poly_add,
    rat_add,
    bool_poly_deg,
    bool_poly_from_mask,
    bool_poly_mul,
    bool_poly_ord,
    bool_poly_ord_deg,
    bool_poly_to_mask,
    bx_mul,
    fmt_rat_poly,
    idem_poly,
    idem_poly_add,
    idem_poly_eval_at_zero,
    idem_poly_mul,
    ktt_member,
    monomial_kernel_set,
    parse_bool_poly,
    parse_rat_poly,
    poly_semi_invertible,
    rat_divides,
    rat_divmod,
    rat_mul,
    rat_poly,
    rat_sub,
    squarefree_universe,
    vanishing_set,
)


def all_points(n):
    return [tuple(bool((v >> i) & 1) for i in range(n)) for v in range(1 << n)]


def test_bool_ops_match_pointwise_semantics():
    """Evaluation is a homomorphism: the defining property of the tables."""
    n = 3
    polys = [
        bool_poly(n, [(0, 0, 0)]),
        bool_poly(n, [(1, 0, 0), (0, 1, 1)]),
        bool_poly(n, [(2, 1, 0)]),
        bool_poly(n, []),
        bool_poly(n, [(1, 1, 1), (0, 0, 0), (3, 0, 2)]),
    ]
    for f in polys:
        for g in polys:
            s, p = bool_poly_add(f, g), bool_poly_mul(f, g)
            for pt in all_points(n):
                assert bool_eval(s, pt) == (bool_eval(f, pt) or bool_eval(g, pt))
                assert bool_eval(p, pt) == (bool_eval(f, pt) and bool_eval(g, pt))


def test_mask_roundtrip_one_var():
    for mask in range(64):
        f = bool_poly_from_mask(mask)
        assert bool_poly_to_mask(f) == mask


def test_bx_mul_known_products():
    x, onex = 0b10, 0b11
    assert bx_mul(onex, onex) == 0b111  # (1+x)^2 = 1+x+x^2
    assert bx_mul(x, x) == 0b100
    assert bx_mul(0, onex) == 0
    assert bx_mul(1, onex) == onex


def test_bx_mul_matches_table_poly():
    for a in range(32):
        for b in range(32):
            fa, fb = bool_poly_from_mask(a), bool_poly_from_mask(b)
            assert bx_mul(a, b) == bool_poly_to_mask(bool_poly_mul(fa, fb))


def test_ord_deg():
    assert bool_poly_ord_deg(0b110) == (1, 2)
    assert bool_poly_ord(0b1) == 0
    assert bool_poly_deg(0b1) == 0
    ordz, degz = bool_poly_ord_deg(0)
    assert ordz > 10**6 or ordz == float("inf") or str(ordz) == "inf"
    assert bool_poly_ord_deg(0b10) == (1, 1)


def test_squarefree_universe_sizes():
    assert len(squarefree_universe(1)) == 4
    assert len(squarefree_universe(2)) == 16
    assert len(squarefree_universe(3)) == 256


@pytest.mark.parametrize("n,count", [(1, 2), (2, 4), (3, 8)])
def test_distinct_vanishing_sets(n, count):
    U = squarefree_universe(n)
    vs = {vanishing_set(U, p) for p in all_points(n)}
    assert len(vs) == count


def test_monomial_kernel_recovers_vanishing():
    # vanishing at a 0/1 point = monomial ideal of the false coordinates
    for n in (1, 2, 3):
        U = squarefree_universe(n)
        for pt in all_points(n):
            zero_vars = [j for j in range(n) if not pt[j]]
            assert vanishing_set(U, pt) == monomial_kernel_set(U, zero_vars)


def test_idem_poly_tropical():
    f = idem_poly(TROPICAL_RAT, 1, [((1,), Fraction(2)), ((0,), Fraction(0))])
    g = idem_poly(TROPICAL_RAT, 1, [((1,), Fraction(1))])
    p = idem_poly_mul(f, g)
    # (min,+): multiplying shifts exponents and adds coefficients
    assert p.coeff((2,)) == Fraction(3)
    assert p.coeff((1,)) == Fraction(1)
    s = idem_poly_add(f, g)
    assert s.coeff((1,)) == Fraction(1)  # min of 2 and 1
    assert idem_poly_eval_at_zero(f) == Fraction(0)
    assert poly_semi_invertible(f)
    assert not poly_semi_invertible(g)


def test_idem_poly_rejects_non_idempotent_field():
    from semispec.kernel import NAT
    with pytest.raises(PreconditionError):
        idem_poly(NAT, 1, [((1,), 1)])


def test_bool_idem_poly_agrees_with_masks():
    f = idem_poly(BOOL, 1, [((0,), 1), ((2,), 1)])
    g = idem_poly(BOOL, 1, [((1,), 1)])
    p = idem_poly_mul(f, g)
    assert p.support() == {(1,), (3,)}


def test_rat_poly_divmod():
    f = parse_rat_poly("t^4+t^3+t^2")
    g = parse_rat_poly("t^2-1")
    q, r = rat_divmod(f, g)
    back = rat_sub(f, rat_mul(q, g))
    assert back.coeffs == r.coeffs
    assert r.degree() < g.degree()
    assert not rat_divides(g, f)
    assert rat_divides(parse_rat_poly("t"), parse_rat_poly("t^3"))


def test_rat_poly_parse_fmt_roundtrip():
    for text in ("t^4+t^3+t^2", "t^2-1", "1", "t", "2*t^2+1/2"):
        f = parse_rat_poly(text)
        assert parse_rat_poly(fmt_rat_poly(f)).coeffs == f.coeffs


def test_rat_poly_zero_division():
    with pytest.raises(PreconditionError):
        rat_divmod(parse_rat_poly("t"), rat_poly([]))


KTT_FROZEN = [
    ("1", True),
    ("t", False),
    ("t^2", True),
    ("t^3", True),
    ("t^3+t^2", True),
    ("t^4+t^3+t^2", True),
    ("t+1", False),
    ("t^2+t", False),
    ("5", True),
]


@pytest.mark.parametrize("text,member", KTT_FROZEN)
def test_ktt_membership_frozen(text, member):
    assert ktt_member(parse_rat_poly(text)) == member


def test_ktt_closed_under_ops():
    members = [parse_rat_poly(t) for t, m in KTT_FROZEN if m]
    for f in members:
        for g in members:
            assert ktt_member(rat_add(f, g))
            assert ktt_member(rat_mul(f, g))


def test_parse_bool_poly():
    f = parse_bool_poly("x*y + x", ["x", "y"])
    assert f.support == {(1, 1), (1, 0)}
    with pytest.raises(FormatError):
        parse_bool_poly("x + q", ["x", "y"])
