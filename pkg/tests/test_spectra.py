"""Point spaces, their topology, induced maps, and the naturals model."""

import json

import pytest

from conftest import (
    brute_prime_ideal_masks,
    brute_prime_kernel_masks,
    brute_subtractive_prime_masks,
)
from semispec import corpus
from semispec.errors import PreconditionError
from semispec.kernel import Homomorphism, identity_hom
from semispec.spectra import (
    NatSpectrumModel,
    cover_check,
    dimension,
    enumerate_space,
    hardening_sp_homeo_check,
    induced_map,
    localization_homeo_check,
    localization_point_report,
    nat_model_verify,
    sp_enumerate,
    spec_enumerate,
    space_to_dot,
    space_to_json,
)

FROZEN_SPEC = {
    "bool2": [1], "boolnil": [5, 13], "boolpair": [3, 5],
    "boolx": [1, 5, 13],
    "boolxy": [1, 269, 1049, 18205, 57149, 63389, 65389, 65405, 65469,
               65497, 65501, 65533],
    "chain3": [1, 3], "chain3xbool": [3, 15, 21], "chain4": [1, 3, 7],
    "f2": [1], "satnat4": [1, 13], "satnat8": [1, 253], "trivial1": [],
    "trop5": [1, 29], "z4": [5],
}

FROZEN_SP = {
    "bool2": [1], "boolnil": [5], "boolpair": [3, 5], "boolx": [1, 5],
    "boolxy": [1, 269, 1049, 18205], "chain3": [1, 3],
    "chain3xbool": [3, 15, 21], "chain4": [1, 3, 7], "f2": [1],
    "satnat4": [1], "satnat8": [1], "trivial1": [], "trop5": [1, 29],
    "z4": [5],
}


def test_spec_points_frozen(corpus_tables):
    for name, want in FROZEN_SPEC.items():
        got = sorted(spec_enumerate(corpus_tables[name]).point_masks)
        assert got == want, name


def test_sp_points_frozen(corpus_tables):
    for name, want in FROZEN_SP.items():
        got = sorted(sp_enumerate(corpus_tables[name]).point_masks)
        assert got == want, name


def test_spec_points_match_brute(small_tables):
    for name, A in small_tables.items():
        assert sorted(spec_enumerate(A).point_masks) == brute_prime_ideal_masks(A), name


def test_sp_points_match_brute(small_tables):
    for name, A in small_tables.items():
        want = brute_subtractive_prime_masks(A)
        assert sorted(sp_enumerate(A).point_masks) == want, name


def test_sp_points_are_hom_kernels_when_idempotent(idempotent_tables):
    for name, A in idempotent_tables.items():
        if A.size > 6:
            continue
        got = sorted(sp_enumerate(A).point_masks)
        assert got == brute_prime_kernel_masks(A), name


def test_sp_embeds_in_spec(corpus_tables):
    # prime kernels are prime ideals; the reverse can fail
    for name, A in corpus_tables.items():
        spec = set(spec_enumerate(A).point_masks)
        sp = set(sp_enumerate(A).point_masks)
        assert sp <= spec, name


def test_enumerate_space_kind_dispatch():
    A = corpus.get("chain3")
    assert enumerate_space(A, "spec").kind == "spec"
    assert enumerate_space(A, "sp").kind == "sp"
    with pytest.raises(PreconditionError):
        enumerate_space(A, "both")


def topology_closed(opens):
    s = set(opens)
    for u in s:
        for v in s:
            assert u | v in s
            assert u & v in s


def test_opens_form_topology(corpus_tables):
    for name, A in corpus_tables.items():
        if A.size > 6:
            continue
        for kind in ("spec", "sp"):
            space = enumerate_space(A, kind)
            opens = space.opens()
            assert 0 in opens and space.full in opens, name
            topology_closed(opens)


def test_d_open_and_v_closed_are_complementary(small_tables):
    for name, A in small_tables.items():
        space = spec_enumerate(A)
        for a in A.elements:
            d = space.d_open(a)
            v = space.v_closed([a])
            assert d & v == 0 and d | v == space.full, name


def test_basis_generates_opens(small_tables):
    for name, A in small_tables.items():
        space = spec_enumerate(A)
        opens = set(space.opens())
        from itertools import combinations
        unions = {0}
        for r in range(1, A.size + 1):
            for combo in combinations(space.basis, r):
                u = 0
                for b in combo:
                    u |= b
                unions.add(u)
        assert opens == unions, name


def test_minimal_open_is_intersection(small_tables):
    for name, A in small_tables.items():
        for kind in ("spec", "sp"):
            space = enumerate_space(A, kind)
            for i in range(space.npoints):
                inter = space.full
                for u in space.opens():
                    if (u >> i) & 1:
                        inter &= u
                assert space.minimal_open(i) == inter, name


def test_specializes_matches_closure(small_tables):
    # j lies in the closure of i exactly when every open around j holds i
    for name, A in small_tables.items():
        for kind in ("spec", "sp"):
            space = enumerate_space(A, kind)
            for i in range(space.npoints):
                for j in range(space.npoints):
                    want = bool((space.minimal_open(j) >> i) & 1)
                    assert space.specializes(i, j) == want, name


def test_cover_check_boolx():
    A = corpus.get("boolx")
    space = spec_enumerate(A)
    assert cover_check(space, (2, 3), 3)
    assert not cover_check(space, (2, 3), None)  # misses the closed point
    assert cover_check(space, (1,), None)  # D(1) covers everything
    assert cover_check(space, (2,), 2)


def test_induced_map_preimages():
    A, B = corpus.get("boolx"), corpus.get("bool2")
    h = Homomorphism(A, B, (0, 1, 1, 1))
    assert h.violation() is None
    f = induced_map(h, "spec")
    src, dst = spec_enumerate(B), spec_enumerate(A)
    for i in range(src.npoints):
        j = f.apply(i)
        assert 0 <= j < dst.npoints
    # preimage of an open is an open
    for u in dst.opens():
        pre = f.preimage_set(u)
        assert pre in src.opens()


def test_induced_identity_is_identity():
    A = corpus.get("chain4")
    f = induced_map(identity_hom(A), "spec")
    space = spec_enumerate(A)
    assert all(f.apply(i) == i for i in range(space.npoints))


FROZEN_DIMS = {
    "boolx": (2, 1), "chain4": (2, 2), "boolxy": (5, 2), "trop5": (1, 1),
    "chain3xbool": (1, 1), "bool2": (0, 0), "satnat4": (1, 0),
}


def test_dimension_frozen(corpus_tables):
    for name, (dspec, dsp) in FROZEN_DIMS.items():
        A = corpus_tables[name]
        assert dimension(spec_enumerate(A)) == dspec, name
        assert dimension(sp_enumerate(A)) == dsp, name


def test_dimension_of_opens_brute(small_tables):
    # longest strict specialization chain, counted in steps
    for name, A in small_tables.items():
        space = spec_enumerate(A)
        minimals = [space.minimal_open(i) for i in range(space.npoints)]
        if not space.npoints:
            assert dimension(space) == 0, name
            continue
        best = 1
        import itertools
        for perm in itertools.permutations(range(space.npoints)):
            length = 1
            for a, b in zip(perm, perm[1:]):
                if minimals[a] & minimals[b] == minimals[a] and minimals[a] != minimals[b]:
                    length += 1
                else:
                    break
            best = max(best, length)
        assert dimension(space) == best - 1, name


def test_localization_point_report():
    A = corpus.get("boolx")
    rep = localization_point_report(A, 0b1110, "spec")
    assert rep["pass"] and rep["injective"] and rep["image_matches"]
    assert rep["open_map"]


def test_localization_homeo_small(corpus_tables):
    for name in ("boolx", "chain3", "chain4", "trop5"):
        A = corpus_tables[name]
        from semispec.localize import saturate
        for a in A.elements:
            powers, p = 1 << A.one, A.one
            for _ in range(A.size + 1):
                p = A.mul[p][a]
                powers |= 1 << p
            assert localization_homeo_check(A, saturate(A, powers)), (name, a)


def test_hardening_sp_homeo_all(corpus_tables):
    for name, A in corpus_tables.items():
        if A.size <= 8:
            assert hardening_sp_homeo_check(A), name


def test_nat_model():
    spec = NatSpectrumModel(200, "spec")
    sp = NatSpectrumModel(200, "sp")
    assert spec.dimension() == 2
    assert sp.dimension() == 1
    assert spec.basis_invariants_ok() and sp.basis_invariants_ok()
    full = (1 << spec.npoints) - 1
    assert spec.d_open(1) == full
    assert spec.d_open(0) == 0
    report = nat_model_verify(bound=200)
    assert report["pass"]


def test_nat_model_rejects_small_bound():
    with pytest.raises(PreconditionError):
        NatSpectrumModel(5, "spec")


def test_space_serialization():
    A = corpus.get("chain3")
    space = spec_enumerate(A)
    data = json.loads(space_to_json(space))
    assert data["kind"] == "spec"
    assert len(data["points"]) == space.npoints
    dot = space_to_dot(space)
    assert dot.startswith("digraph") and "->" in dot
