# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled enumeration kernels; mirrors ``_pykernels`` exactly."""

from libc.stdlib cimport malloc, calloc, free
from libc.stdint cimport int64_t, uint64_t


cdef int _power_lengths(long long a, long long b, int max_n, int* L):
    # fills L[1..]; returns the number of usable periods
    cdef int ell = 1
    cdef long long v
    while ell <= max_n:
        v = (a * ell + b - 1) // b
        if v > max_n:
            break
        L[ell] = <int>v
        ell += 1
    return ell - 1


cdef inline bint _suffix_is_free(const int* w, int m, const int* L, int nper) noexcept nogil:
    cdef int ell = 1, j, stop
    while ell <= nper and L[ell] <= m:
        j = m - 1 - ell
        stop = m - L[ell]
        while j >= stop and w[j] == w[j + ell]:
            j -= 1
        if j < stop:
            return False
        ell += 1
    return True


cdef inline bint _cyclic_is_free(const int* w, int n, const int* L, int nper) noexcept nogil:
    cdef int ell = 1, need, start, i, t, run, ip
    while ell <= nper and L[ell] <= n:
        need = L[ell] - ell
        start = -1
        for i in range(n):
            ip = i + ell
            if ip >= n:
                ip -= n
            if w[i] != w[ip]:
                start = i
                break
        if start < 0:
            return False
        run = 0
        i = start
        for t in range(n):
            i += 1
            if i == n:
                i = 0
            ip = i + ell
            if ip >= n:
                ip -= n
            if w[i] == w[ip]:
                run += 1
                if run >= need:
                    return False
            else:
                run = 0
        ell += 1
    return True


def suffix_is_free(w, int m, L):
    cdef int n = len(w)
    cdef int nper = len(L) - 1
    cdef int* cw = <int*>malloc((n + 1) * sizeof(int))
    cdef int* cl = <int*>malloc((nper + 1) * sizeof(int))
    cdef int i
    try:
        for i in range(n):
            cw[i] = w[i]
        for i in range(nper + 1):
            cl[i] = L[i]
        return _suffix_is_free(cw, m, cl, nper)
    finally:
        free(cw)
        free(cl)


def cyclic_is_free(w, int n, L):
    cdef int nper = len(L) - 1
    cdef int* cw = <int*>malloc((n + 1) * sizeof(int))
    cdef int* cl = <int*>malloc((nper + 1) * sizeof(int))
    cdef int i
    try:
        for i in range(n):
            cw[i] = w[i]
        for i in range(nper + 1):
            cl[i] = L[i]
        return _cyclic_is_free(cw, n, cl, nper)
    finally:
        free(cw)
        free(cl)


def power_lengths(long long a, long long b, int max_n):
    cdef int* L = <int*>calloc(max_n + 2, sizeof(int))
    cdef int nper, i
    try:
        nper = _power_lengths(a, b, max_n, L)
        return [0] + [L[i] for i in range(1, nper + 1)]
    finally:
        free(L)


def power_free_counts(int k, long long a, long long b, int max_n, bint circular,
                      prefix, long long max_nodes):
    cdef int d = len(prefix)
    linear = [0] * (max_n + 1)
    circ = [0] * (max_n + 1)
    if d > max_n:
        return linear, circ, 0

    cdef int size = max_n + 2
    cdef int* L = <int*>calloc(size, sizeof(int))
    cdef int* w = <int*>calloc(size, sizeof(int))
    cdef int* nxt = <int*>calloc(size, sizeof(int))
    cdef uint64_t* lin = <uint64_t*>calloc(size, sizeof(uint64_t))
    cdef uint64_t* cir = <uint64_t*>calloc(size, sizeof(uint64_t))
    cdef int nper, m, i
    cdef long long nodes = 1
    cdef bint over = False
    try:
        nper = _power_lengths(a, b, max_n, L)
        for i in range(d):
            w[i] = prefix[i]
        lin[d] = 1
        if circular and (d == 0 or _cyclic_is_free(w, d, L, nper)):
            cir[d] = 1
        if d < max_n:
            with nogil:
                m = d
                nxt[m] = 0
                while m >= d:
                    if nxt[m] == k:
                        m -= 1
                        continue
                    w[m] = nxt[m]
                    nxt[m] += 1
                    if not _suffix_is_free(w, m + 1, L, nper):
                        continue
                    m += 1
                    nodes += 1
                    if nodes > max_nodes:
                        over = True
                        break
                    lin[m] += 1
                    if circular and _cyclic_is_free(w, m, L, nper):
                        cir[m] += 1
                    if m < max_n:
                        nxt[m] = 0
                    else:
                        m -= 1
        if over:
            raise OverflowError(nodes)
        for i in range(max_n + 1):
            linear[i] = lin[i]
            circ[i] = cir[i]
        return linear, circ, nodes
    finally:
        free(L)
        free(w)
        free(nxt)
        free(lin)
        free(cir)


cdef inline bint _rotations_alive(const int* delta, int k, int start, int dead,
                                  const int* w, int n) noexcept nogil:
    cdef int r, j, s, idx
    for r in range(1, n):
        s = start
        idx = r
        for j in range(n):
            s = delta[s * k + w[idx]]
            if s == dead:
                return False
            idx += 1
            if idx == n:
                idx = 0
    return True


def dfa_counts(delta_flat, int k, int start, int dead, int max_n, bint circular,
               prefix, long long max_nodes):
    cdef int d = len(prefix)
    linear = [0] * (max_n + 1)
    circ = [0] * (max_n + 1)
    if d > max_n or start == dead:
        return linear, circ, 0

    cdef int nd = len(delta_flat)
    cdef int size = max_n + 2
    cdef int* delta = <int*>malloc(nd * sizeof(int))
    cdef int* w = <int*>calloc(size, sizeof(int))
    cdef int* states = <int*>calloc(size, sizeof(int))
    cdef int* nxt = <int*>calloc(size, sizeof(int))
    cdef uint64_t* lin = <uint64_t*>calloc(size, sizeof(uint64_t))
    cdef uint64_t* cir = <uint64_t*>calloc(size, sizeof(uint64_t))
    cdef int m, i, s, t, x
    cdef long long nodes = 1
    cdef bint over = False
    try:
        for i in range(nd):
            delta[i] = delta_flat[i]
        s = start
        for i in range(d):
            w[i] = prefix[i]
            s = delta[s * k + w[i]]
            if s == dead:
                return linear, circ, 0
        states[d] = s
        lin[d] = 1
        if circular and (d == 0 or _rotations_alive(delta, k, start, dead, w, d)):
            cir[d] = 1
        if d < max_n:
            with nogil:
                m = d
                nxt[m] = 0
                while m >= d:
                    if nxt[m] == k:
                        m -= 1
                        continue
                    x = nxt[m]
                    nxt[m] += 1
                    t = delta[states[m] * k + x]
                    if t == dead:
                        continue
                    w[m] = x
                    m += 1
                    states[m] = t
                    nodes += 1
                    if nodes > max_nodes:
                        over = True
                        break
                    lin[m] += 1
                    if circular and _rotations_alive(delta, k, start, dead, w, m):
                        cir[m] += 1
                    if m < max_n:
                        nxt[m] = 0
                    else:
                        m -= 1
        if over:
            raise OverflowError(nodes)
        for i in range(max_n + 1):
            linear[i] = lin[i]
            circ[i] = cir[i]
        return linear, circ, nodes
    finally:
        free(delta)
        free(w)
        free(states)
        free(nxt)
        free(lin)
        free(cir)
