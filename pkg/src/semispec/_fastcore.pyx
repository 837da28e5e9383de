# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; signature-faithful twin of _purecore.

Element loops run over C integer tables. Bitmask routines take a machine-
word fast path when every index fits in 63 bits and otherwise delegate to
the pure implementation, so results are identical at any size.
"""

from libc.stdlib cimport free, malloc

BACKEND_NAME = "fast"

AXIOM_CODES = (
    "add-assoc",
    "add-comm",
    "add-zero",
    "mul-assoc",
    "mul-comm",
    "mul-one",
    "distrib",
    "zero-absorbs",
)

ctypedef unsigned long long u64


cdef int* _ctable(object t, int n) except NULL:
    cdef int* out = <int*> malloc(n * n * sizeof(int))
    cdef int i, j
    cdef object row
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        row = t[i]
        for j in range(n):
            out[i * n + j] = row[j]
    return out


def verify_axioms_scan(int n, object add, object mul, int zero, int one):
    """Full axiom scan; one witness per violated law."""
    cdef int* a = _ctable(add, n)
    cdef int* m = _ctable(mul, n)
    cdef int i, j, k
    out = []
    try:
        w = None
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if a[a[i * n + j] * n + k] != a[i * n + a[j * n + k]]:
                        w = (i, j, k)
                        break
                if w is not None:
                    break
            if w is not None:
                break
        if w is not None:
            out.append(("add-assoc", w))
        w = None
        for i in range(n):
            for j in range(i + 1, n):
                if a[i * n + j] != a[j * n + i]:
                    w = (i, j)
                    break
            if w is not None:
                break
        if w is not None:
            out.append(("add-comm", w))
        for i in range(n):
            if a[i * n + zero] != i:
                out.append(("add-zero", (i,)))
                break
        w = None
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if m[m[i * n + j] * n + k] != m[i * n + m[j * n + k]]:
                        w = (i, j, k)
                        break
                if w is not None:
                    break
            if w is not None:
                break
        if w is not None:
            out.append(("mul-assoc", w))
        w = None
        for i in range(n):
            for j in range(i + 1, n):
                if m[i * n + j] != m[j * n + i]:
                    w = (i, j)
                    break
            if w is not None:
                break
        if w is not None:
            out.append(("mul-comm", w))
        for i in range(n):
            if m[i * n + one] != i:
                out.append(("mul-one", (i,)))
                break
        w = None
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if m[i * n + a[j * n + k]] != a[m[i * n + j] * n + m[i * n + k]]:
                        w = (i, j, k)
                        break
                if w is not None:
                    break
            if w is not None:
                break
        if w is not None:
            out.append(("distrib", w))
        for i in range(n):
            if m[i * n + zero] != zero:
                out.append(("zero-absorbs", (i,)))
                break
        return out
    finally:
        free(a)
        free(m)


def closure_mask(int n, object add, object mul, object seed, object scalars):
    """Smallest subset containing seed, closed under + and scaling by scalars."""
    if n > 63:
        from semispec._purecore import closure_mask as pure
        return pure(n, add, mul, seed, scalars)
    cdef int* a = _ctable(add, n)
    cdef int* m = _ctable(mul, n)
    cdef u64 cur = <u64> seed
    cdef u64 scal = <u64> scalars
    cdef u64 nxt
    cdef int i, j
    try:
        while True:
            nxt = cur
            for i in range(n):
                if not (cur >> i) & 1:
                    continue
                for j in range(n):
                    if (cur >> j) & 1:
                        nxt |= (<u64> 1) << a[i * n + j]
                for j in range(n):
                    if (scal >> j) & 1:
                        nxt |= (<u64> 1) << m[j * n + i]
            if nxt == cur:
                return int(cur)
            cur = nxt
    finally:
        free(a)
        free(m)


def ideal_closure_mask(int n, object add, object mul, object seed, int zero):
    return closure_mask(n, add, mul, seed | (1 << zero), (1 << n) - 1)


def subsemiring_closure_mask(int n, object add, object mul, object seed):
    """Closure under both operations (no external scaling)."""
    if n > 63:
        from semispec._purecore import subsemiring_closure_mask as pure
        return pure(n, add, mul, seed)
    cdef int* a = _ctable(add, n)
    cdef int* m = _ctable(mul, n)
    cdef u64 cur = <u64> seed
    cdef u64 nxt
    cdef int i, j
    try:
        while True:
            nxt = cur
            for i in range(n):
                if not (cur >> i) & 1:
                    continue
                for j in range(n):
                    if (cur >> j) & 1:
                        nxt |= ((<u64> 1) << a[i * n + j]) | ((<u64> 1) << m[i * n + j])
            if nxt == cur:
                return int(cur)
            cur = nxt
    finally:
        free(a)
        free(m)


def prime_violation(int n, object mul, object mask):
    """A pair a,b outside I with ab inside, or None."""
    if n > 63:
        from semispec._purecore import prime_violation as pure
        return pure(n, mul, mask)
    cdef int* m = _ctable(mul, n)
    cdef u64 mk = <u64> mask
    cdef int i, j
    try:
        for i in range(n):
            if (mk >> i) & 1:
                continue
            for j in range(n):
                if (mk >> j) & 1:
                    continue
                if (mk >> m[i * n + j]) & 1:
                    return (i, j)
        return None
    finally:
        free(m)


def subtractive_violation(int n, object add, object mask):
    """a+b=c with b,c in I but a outside, or None."""
    if n > 63:
        from semispec._purecore import subtractive_violation as pure
        return pure(n, add, mask)
    cdef int* a = _ctable(add, n)
    cdef u64 mk = <u64> mask
    cdef int i, j, c
    try:
        for i in range(n):
            if (mk >> i) & 1:
                continue
            for j in range(n):
                if not (mk >> j) & 1:
                    continue
                c = a[i * n + j]
                if (mk >> c) & 1:
                    return (i, j, c)
        return None
    finally:
        free(a)


def subtractive_close_mask(int n, object add, object mask):
    """{a : exists b,c in I with a+b=c}, iterated to a fixed point."""
    if n > 63:
        from semispec._purecore import subtractive_close_mask as pure
        return pure(n, add, mask)
    cdef int* a = _ctable(add, n)
    cdef u64 cur = <u64> mask
    cdef u64 nxt
    cdef int i, j
    try:
        while True:
            nxt = cur
            for i in range(n):
                if (nxt >> i) & 1:
                    continue
                for j in range(n):
                    if (cur >> j) & 1 and (cur >> a[i * n + j]) & 1:
                        nxt |= (<u64> 1) << i
                        break
            if nxt == cur:
                return int(cur)
            cur = nxt
    finally:
        free(a)


def semi_invertible_witness(int n, object add, object mul, int one, int a):
    """(b,c) with 1 + a*b = a*c, or None."""
    cdef int* ad = _ctable(add, n)
    cdef int* mu = _ctable(mul, n)
    cdef int b, c, lhs
    try:
        for b in range(n):
            lhs = ad[one * n + mu[a * n + b]]
            for c in range(n):
                if lhs == mu[a * n + c]:
                    return (b, c)
        return None
    finally:
        free(ad)
        free(mu)


def units_mask(int n, object mul, int one):
    if n > 63:
        from semispec._purecore import units_mask as pure
        return pure(n, mul, one)
    cdef int* m = _ctable(mul, n)
    cdef u64 out = 0
    cdef int i, j
    try:
        for i in range(n):
            for j in range(n):
                if m[i * n + j] == one:
                    out |= (<u64> 1) << i
                    break
        return int(out)
    finally:
        free(m)


cdef bint _prop(
    int n, int* a, int* m, int* val, int* trail, int* tlen, int* queue, int qn
):
    cdef int x, y, t, vx, vy, v, vt
    while qn:
        qn -= 1
        x = queue[qn]
        vx = val[x]
        for y in range(n):
            vy = val[y]
            if vy < 0:
                continue
            t = a[x * n + y]
            v = vx | vy
            vt = val[t]
            if vt < 0:
                val[t] = v
                trail[tlen[0]] = t
                tlen[0] += 1
                queue[qn] = t
                qn += 1
            elif vt != v:
                return False
            t = m[x * n + y]
            v = vx & vy
            vt = val[t]
            if vt < 0:
                val[t] = v
                trail[tlen[0]] = t
                tlen[0] += 1
                queue[qn] = t
                qn += 1
            elif vt != v:
                return False
    return True


cdef void _homs_dfs(
    int n, int* a, int* m, int* val, int* trail, int* tlen, int* queue, list results
):
    cdef int i = -1, j, v, tstart
    for j in range(n):
        if val[j] < 0:
            i = j
            break
    if i < 0:
        results.append(sum(1 << j for j in range(n) if val[j] == 1))
        return
    for v in range(2):
        tstart = tlen[0]
        val[i] = v
        trail[tlen[0]] = i
        tlen[0] += 1
        queue[0] = i
        if _prop(n, a, m, val, trail, tlen, queue, 1):
            _homs_dfs(n, a, m, val, trail, tlen, queue, results)
        while tlen[0] > tstart:
            tlen[0] -= 1
            val[trail[tlen[0]]] = -1


def homs_to_bool(int n, object add, object mul, int zero, int one):
    """All maps A -> {0,1} with f(0)=0, f(1)=1, f(a+b)=f(a)|f(b), f(ab)=f(a)&f(b).

    Exhaustive DFS with constraint propagation; returns sorted bitmasks of
    the preimage of 1.
    """
    if n > 63:
        from semispec._purecore import homs_to_bool as pure
        return pure(n, add, mul, zero, one)
    if zero == one:
        return []
    cdef int* a = _ctable(add, n)
    cdef int* m = _ctable(mul, n)
    cdef int* val = <int*> malloc(n * sizeof(int))
    cdef int* trail = <int*> malloc((n + 2) * sizeof(int))
    cdef int* queue = <int*> malloc((n + 2) * sizeof(int))
    cdef int tlen = 0
    cdef int i
    results = []
    if val == NULL or trail == NULL or queue == NULL:
        if val != NULL:
            free(val)
        if trail != NULL:
            free(trail)
        if queue != NULL:
            free(queue)
        free(a)
        free(m)
        raise MemoryError()
    try:
        for i in range(n):
            val[i] = -1
        val[zero] = 0
        val[one] = 1
        queue[0] = zero
        queue[1] = one
        if _prop(n, a, m, val, trail, &tlen, queue, 2):
            _homs_dfs(n, a, m, val, trail, &tlen, queue, results)
        results.sort()
        return results
    finally:
        free(a)
        free(m)
        free(val)
        free(trail)
        free(queue)


cdef inline int _ctz(u64 x):
    cdef int c = 0
    while not (x >> c) & 1:
        c += 1
    return c


cdef void _eq_dfs(
    int depth, int k, u64* masks, u64** rows, int* tup, list out
):
    cdef u64 m, bit
    cdef u64* cur = masks + depth * k
    cdef u64* nxt = masks + (depth + 1) * k
    cdef u64* r
    cdef int v, j, ok, z
    if depth == k:
        out.append(tuple([tup[z] for z in range(k)]))
        return
    m = cur[depth]
    while m:
        v = _ctz(m)
        m &= m - 1
        ok = 1
        for j in range(depth + 1, k):
            r = rows[depth * k + j]
            if r != NULL:
                nxt[j] = cur[j] & r[v]
            else:
                nxt[j] = cur[j]
            if nxt[j] == 0:
                ok = 0
                break
        if ok:
            tup[depth] = v
            _eq_dfs(depth + 1, k, masks, rows, tup, out)


def equalizer_scan(object sizes, object compat):
    """All tuples (t_0..t_{k-1}), t_i < sizes[i], with t_j's bit set in
    compat[(i,j)][t_i] for every constrained pair i<j. Ascending order."""
    cdef int k = len(sizes)
    cdef int i, j, v
    for i in range(k):
        if sizes[i] > 63:
            from semispec._purecore import equalizer_scan as pure
            return pure(sizes, compat)
    if k == 0:
        return [()]
    cdef u64* masks = <u64*> malloc((k + 1) * k * sizeof(u64))
    cdef u64** rows = <u64**> malloc(k * k * sizeof(u64 * ))
    cdef int* tup = <int*> malloc(k * sizeof(int))
    cdef u64* r
    if masks == NULL or rows == NULL or tup == NULL:
        if masks != NULL:
            free(masks)
        if rows != NULL:
            free(rows)
        if tup != NULL:
            free(tup)
        raise MemoryError()
    for i in range(k * k):
        rows[i] = NULL
    out = []
    try:
        for i in range(k):
            masks[i] = ((<u64> 1) << (<int> sizes[i])) - 1
        for key, seq in compat.items():
            i = key[0]
            j = key[1]
            r = <u64*> malloc(len(seq) * sizeof(u64))
            if r == NULL:
                raise MemoryError()
            rows[i * k + j] = r
            for v in range(len(seq)):
                r[v] = <u64> seq[v]
        _eq_dfs(0, k, masks, rows, tup, out)
        return out
    finally:
        for i in range(k * k):
            if rows[i] != NULL:
                free(rows[i])
        free(rows)
        free(masks)
        free(tup)


def bx_mul(a, b):
    """Product of boolean polynomials in one variable (OR-convolution)."""
    if a == 0 or b == 0:
        return 0
    out = 0
    x = a
    while x:
        bit = x & -x
        out |= b << (bit.bit_length() - 1)
        x ^= bit
    return out


def bx_witness_exhaustive(a, b, kmax):
    """Smallest witness u (encoded as a mask, constant bit set, deg<=kmax)
    with a*u == b*u, or -1. Fully exhaustive scan."""
    if a == b:
        return 1
    for u in range(1, 1 << (kmax + 1), 2):
        if bx_mul(a, u) == bx_mul(b, u):
            return u
    return -1
