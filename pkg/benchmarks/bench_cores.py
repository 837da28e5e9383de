"""Compare the compiled core against the pure-Python fallback.

Each workload drives one hot kernel through both implementations on the
same inputs, checks that the answers agree, then reports best-of-N wall
times and the speedup. Run from the repository root:

    python benchmarks/bench_cores.py [--repeat N] [--quick]
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Callable, List, Tuple

from semispec import corpus
from semispec import _purecore as pure

try:
    from semispec import _fastcore as fast
except ImportError:
    fast = None


def _tables(name: str):
    A = corpus.get(name)
    return A.size, A.add, A.mul, A.zero, A.one


def w_ideal_closures(core) -> object:
    n, add, mul, zero, _one = _tables("satnat8")
    return [core.ideal_closure_mask(n, add, mul, s, zero) for s in range(1 << n)]


def w_scalar_closures(core) -> object:
    n, add, mul, _zero, _one = _tables("boolxy")
    full = (1 << n) - 1
    return [core.closure_mask(n, add, mul, 1 << a, full) for a in range(n)]


def w_subsemiring_closures(core) -> object:
    n, add, mul, _zero, _one = _tables("boolxy")
    return [core.subsemiring_closure_mask(n, add, mul, 1 << a) for a in range(n)]


def w_axiom_scan(core) -> object:
    n, add, mul, zero, one = _tables("boolxy")
    out = []
    for _ in range(20):
        out = core.verify_axioms_scan(n, add, mul, zero, one)
    return out


def w_prime_scan(core) -> object:
    n, add, mul, _zero, _one = _tables("satnat8")
    hits = []
    for mask in range(1 << n):
        if core.prime_violation(n, mul, mask) is None:
            if core.subtractive_violation(n, add, mask) is None:
                hits.append(mask)
    return hits


def w_semi_invertible(core) -> object:
    n, add, mul, _zero, one = _tables("boolxy")
    out = []
    for _ in range(10):
        out = [
            core.semi_invertible_witness(n, add, mul, one, a) is not None
            for a in range(n)
        ]
    return out


def w_bool_homs(core) -> object:
    n, add, mul, zero, one = _tables("boolxy")
    out = []
    for _ in range(5):
        out = core.homs_to_bool(n, add, mul, zero, one)
    return out


def w_fraction_products(core) -> object:
    acc = 0
    for a in range(256):
        for b in range(256):
            acc ^= core.bx_mul(a, b)
    return acc


def w_fraction_witness(core) -> object:
    return [core.bx_witness_exhaustive(a, (a * 7) & 0x3FF, 6) for a in range(64)]


def w_equalizer(core) -> object:
    sizes = [5, 5, 5, 5]
    compat = {}
    for i in range(4):
        for j in range(i + 1, 4):
            compat[(i, j)] = [((x * (i + 2) + j) % 5) for x in range(5)]
    return core.equalizer_scan(sizes, compat)


WORKLOADS: List[Tuple[str, Callable]] = [
    ("ideal closures, all 256 seeds (satnat8)", w_ideal_closures),
    ("scalar-action closures (boolxy)", w_scalar_closures),
    ("subsemiring closures (boolxy)", w_subsemiring_closures),
    ("axiom scan x20 (boolxy, 16 elements)", w_axiom_scan),
    ("prime + subtractive scan, 256 masks", w_prime_scan),
    ("semi-invertibility sweep x10 (boolxy)", w_semi_invertible),
    ("bool-valued homomorphisms x5 (boolxy)", w_bool_homs),
    ("fraction products, 256x256", w_fraction_products),
    ("fraction equality witnesses, 64 pairs", w_fraction_witness),
    ("equalizer scan, 4 factors of size 5", w_equalizer),
]


def best_of(fn: Callable[[], object], repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="best-of repetitions")
    ap.add_argument("--quick", action="store_true", help="single repetition")
    args = ap.parse_args(argv)
    repeat = 1 if args.quick else args.repeat

    if fast is None:
        print("compiled core not built; timing the pure backend only")
    width = max(len(n) for n, _ in WORKLOADS)
    header = f"{'workload':<{width}}  {'pure':>9}  {'fast':>9}  {'speedup':>7}"
    print(header)
    print("-" * len(header))
    for name, work in WORKLOADS:
        ref = work(pure)
        t_pure = best_of(lambda: work(pure), repeat)
        if fast is None:
            print(f"{name:<{width}}  {t_pure * 1e3:8.2f}ms  {'-':>9}  {'-':>7}")
            continue
        got = work(fast)
        if got != ref:
            print(f"{name:<{width}}  BACKEND MISMATCH", file=sys.stderr)
            return 7
        t_fast = best_of(lambda: work(fast), repeat)
        ratio = t_pure / t_fast if t_fast > 0 else float("inf")
        print(
            f"{name:<{width}}  {t_pure * 1e3:8.2f}ms  {t_fast * 1e3:8.2f}ms  "
            f"{ratio:6.1f}x"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
