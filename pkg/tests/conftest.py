"""Shared fixtures: the built-in table corpus at various size cuts."""

import pytest

from semispec import corpus
from semispec.kernel import FiniteSemiring


@pytest.fixture(scope="session")
def corpus_tables():
    return {name: corpus.get(name) for name in corpus.corpus_names()}


@pytest.fixture(scope="session")
def small_tables(corpus_tables):
    # everything small enough for quadratic-in-subsets brute force
    return {n: A for n, A in corpus_tables.items() if A.size <= 6}


@pytest.fixture(scope="session")
def idempotent_tables(corpus_tables):
    return {
        n: A
        for n, A in corpus_tables.items()
        if A.add[A.one][A.one] == A.one and A.size <= 8
    }


def brute_ideal_ok(A: FiniteSemiring, mask: int) -> bool:
    """Ideal test written out longhand, used as an oracle."""
    if not (mask >> A.zero) & 1:
        return False
    for a in range(A.size):
        for b in range(A.size):
            if (mask >> a) & 1 and (mask >> b) & 1:
                if not (mask >> A.add[a][b]) & 1:
                    return False
            if (mask >> a) & 1:
                if not (mask >> A.mul[a][b]) & 1:
                    return False
    return True


def brute_prime_ideal_masks(A: FiniteSemiring):
    """All proper prime ideals by direct subset scan."""
    out = []
    for mask in range(1 << A.size):
        if (mask >> A.one) & 1 or not brute_ideal_ok(A, mask):
            continue
        prime = True
        for a in range(A.size):
            for b in range(A.size):
                inside = (mask >> A.mul[a][b]) & 1
                if inside and not ((mask >> a) & 1 or (mask >> b) & 1):
                    prime = False
        if prime:
            out.append(mask)
    return sorted(out)


def brute_prime_kernel_masks(A: FiniteSemiring):
    """Kernels of maps onto {0,1} that respect both operations. Matches
    the subtractive primes only when addition is idempotent."""
    out = []
    for mask in range(1 << A.size):
        chi = [0 if (mask >> a) & 1 else 1 for a in range(A.size)]
        if chi[A.zero] != 0 or chi[A.one] != 1:
            continue
        ok = True
        for a in range(A.size):
            for b in range(A.size):
                if chi[A.add[a][b]] != (chi[a] | chi[b]):
                    ok = False
                if chi[A.mul[a][b]] != (chi[a] & chi[b]):
                    ok = False
        if ok:
            out.append(mask)
    return sorted(out)


def brute_subtractive_prime_masks(A: FiniteSemiring):
    """Proper prime ideals that are also subtractive, by direct scan."""
    out = []
    for mask in brute_prime_ideal_masks(A):
        sub = True
        for a in range(A.size):
            for b in range(A.size):
                if (mask >> b) & 1 and (mask >> A.add[a][b]) & 1:
                    if not (mask >> a) & 1:
                        sub = False
        if sub:
            out.append(mask)
    return sorted(out)
