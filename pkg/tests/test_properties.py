"""Law-level properties, randomized, plus pure/compiled backend agreement."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import semispec._purecore as pure
from semispec import corpus
from semispec.ideals import all_ideals, ideal_closure, radical_mask
from semispec.kernel import leq
from semispec.localize import is_saturated, localize, saturate

try:
    import semispec._fastcore as fast
except ImportError:
    fast = None

needs_fast = pytest.mark.skipif(fast is None, reason="compiled core not built")

SMALL = ["bool2", "boolnil", "boolpair", "boolx", "chain3", "chain4",
         "satnat4", "trop5", "f2", "z4"]
IDEM = ["bool2", "boolnil", "boolpair", "boolx", "chain3", "chain4", "trop5"]

table_name = st.sampled_from(SMALL)
idem_name = st.sampled_from(IDEM)


@given(table_name, st.integers(min_value=0, max_value=255))
def test_closure_is_a_closure_operator(name, seed):
    A = corpus.get(name)
    seed &= A.full_mask
    got = ideal_closure(A, [a for a in A.elements if (seed >> a) & 1]).mask
    assert got & seed == seed  # extensive
    again = ideal_closure(A, [a for a in A.elements if (got >> a) & 1]).mask
    assert again == got  # idempotent


@given(table_name, st.integers(min_value=0, max_value=255),
       st.integers(min_value=0, max_value=255))
def test_closure_monotone(name, s1, s2):
    A = corpus.get(name)
    s1 &= A.full_mask
    s2 = (s1 | s2) & A.full_mask
    c1 = ideal_closure(A, [a for a in A.elements if (s1 >> a) & 1]).mask
    c2 = ideal_closure(A, [a for a in A.elements if (s2 >> a) & 1]).mask
    assert c1 & c2 == c1


@given(table_name, st.integers(min_value=0, max_value=255))
def test_saturate_closure_operator(name, seed):
    A = corpus.get(name)
    # grow the seed into a submonoid first
    m = (seed & A.full_mask) | (1 << A.one)
    while True:
        nxt = m
        for a in A.elements:
            for b in A.elements:
                if (m >> a) & 1 and (m >> b) & 1:
                    nxt |= 1 << A.mul[a][b]
        if nxt == m:
            break
        m = nxt
    sat = saturate(A, m)
    assert sat & m == m
    assert is_saturated(A, sat)
    assert saturate(A, sat) == sat


@given(idem_name)
def test_natural_order_is_partial_order(name):
    A = corpus.get(name)
    for a in A.elements:
        assert leq(A, a, a)
        for b in A.elements:
            if leq(A, a, b) and leq(A, b, a):
                assert a == b
            for c in A.elements:
                if leq(A, a, b) and leq(A, b, c):
                    assert leq(A, a, c)


@given(idem_name)
def test_addition_is_join(name):
    A = corpus.get(name)
    for a in A.elements:
        for b in A.elements:
            s = A.add[a][b]
            assert leq(A, a, s) and leq(A, b, s)
            for c in A.elements:
                if leq(A, a, c) and leq(A, b, c):
                    assert leq(A, s, c)


@given(table_name)
def test_radical_is_idempotent_and_extensive(name):
    A = corpus.get(name)
    for I in all_ideals(A):
        rad = radical_mask(I)
        assert rad & I.mask == I.mask
        handle = ideal_closure(A, [a for a in A.elements if (rad >> a) & 1])
        assert radical_mask(handle) == rad


@given(table_name, st.integers(min_value=0, max_value=255))
def test_localization_respects_unit_fractions(name, seed):
    """a/1 equals (a*s)/s for every monoid member: the defining relation."""
    A = corpus.get(name)
    m = (seed & A.full_mask) | (1 << A.one)
    while True:
        nxt = m
        for a in A.elements:
            for b in A.elements:
                if (m >> a) & 1 and (m >> b) & 1:
                    nxt |= 1 << A.mul[a][b]
        if nxt == m:
            break
        m = nxt
    if (m >> A.zero) & 1:
        return  # collapses to the one-point semiring
    L = localize(A, m)
    for a in A.elements:
        for s in A.elements:
            if (m >> s) & 1:
                assert L.class_of_pair(a, A.one) == L.class_of_pair(
                    A.mul[a][s], s
                )


# ---------------------------------------------------------------------------
# backend agreement: the compiled core must match the pure tables bit for bit

mask64 = st.integers(min_value=0, max_value=(1 << 8) - 1)


@needs_fast
@given(table_name, mask64, mask64)
def test_backends_agree_on_closures(name, seed, scalars):
    A = corpus.get(name)
    seed &= A.full_mask
    scalars &= A.full_mask
    scalars |= 1 << A.zero
    args = (A.size, A.add, A.mul, seed | (1 << A.zero), scalars)
    assert pure.closure_mask(*args) == fast.closure_mask(*args)
    assert pure.ideal_closure_mask(A.size, A.add, A.mul, seed, A.zero) == \
        fast.ideal_closure_mask(A.size, A.add, A.mul, seed, A.zero)
    assert pure.subsemiring_closure_mask(
        A.size, A.add, A.mul, seed | (1 << A.zero) | (1 << A.one)
    ) == fast.subsemiring_closure_mask(
        A.size, A.add, A.mul, seed | (1 << A.zero) | (1 << A.one)
    )


@needs_fast
@given(table_name, mask64)
def test_backends_agree_on_predicates(name, mask):
    A = corpus.get(name)
    mask &= A.full_mask
    args = (A.size, A.add, A.mul, A.zero, A.one)
    assert pure.verify_axioms_scan(*args) == fast.verify_axioms_scan(*args)
    assert pure.prime_violation(A.size, A.mul, mask) == \
        fast.prime_violation(A.size, A.mul, mask)
    assert pure.subtractive_violation(A.size, A.add, mask) == \
        fast.subtractive_violation(A.size, A.add, mask)
    assert pure.subtractive_close_mask(A.size, A.add, mask) == \
        fast.subtractive_close_mask(A.size, A.add, mask)
    assert pure.units_mask(A.size, A.mul, A.one) == \
        fast.units_mask(A.size, A.mul, A.one)
    for a in range(A.size):
        assert pure.semi_invertible_witness(A.size, A.add, A.mul, A.one, a) == \
            fast.semi_invertible_witness(A.size, A.add, A.mul, A.one, a)


@needs_fast
@given(st.sampled_from(SMALL), st.sampled_from(SMALL))
def test_backends_agree_on_homs(src, dst):
    A, B = corpus.get(src), corpus.get(dst)
    argsa = (A.size, A.add, A.mul, A.zero, A.one)
    argsb = (B.size, B.add, B.mul, B.zero, B.one)
    assert sorted(pure.homs_to_bool(*argsa)) == sorted(fast.homs_to_bool(*argsa))
    assert sorted(pure.homs_to_bool(*argsb)) == sorted(fast.homs_to_bool(*argsb))


@needs_fast
@settings(max_examples=40)
@given(st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=3),
       st.randoms(use_true_random=False))
def test_backends_agree_on_equalizer_scan(sizes, rnd):
    compat = {}
    k = len(sizes)
    for i in range(k):
        for j in range(i + 1, k):
            rows = []
            for _ in range(sizes[i]):
                rows.append(rnd.randrange(0, 1 << sizes[j]))
            compat[(i, j)] = rows
    assert pure.equalizer_scan(sizes, compat) == fast.equalizer_scan(sizes, compat)


@needs_fast
@given(st.integers(min_value=0, max_value=1023),
       st.integers(min_value=0, max_value=1023))
def test_backends_agree_on_bx_mul(a, b):
    assert pure.bx_mul(a, b) == fast.bx_mul(a, b)


@needs_fast
@given(st.integers(min_value=0, max_value=1023),
       st.integers(min_value=0, max_value=1023),
       st.integers(min_value=1, max_value=10))
def test_backends_agree_on_bx_witness(a, b, kmax):
    assert pure.bx_witness_exhaustive(a, b, kmax) == \
        fast.bx_witness_exhaustive(a, b, kmax)


def test_backend_names():
    assert pure.BACKEND_NAME == "pure"
    if fast is not None:
        assert fast.BACKEND_NAME == "fast"
    assert pure.AXIOM_CODES == (fast.AXIOM_CODES if fast else pure.AXIOM_CODES)
