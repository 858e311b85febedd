"""Pure-Python enumeration kernels.

Same signatures and results as the compiled ``_ckernels`` module; used when
the extension is unavailable or ``FACTORFREE_BACKEND=python`` is set.

Exponents are passed as ``p = a/b`` in lowest terms.  Every kernel returns
``(linear, circular, nodes)``: two count lists indexed by length and the
number of tree nodes visited.  Only words extending ``prefix`` are counted.
"""


def power_lengths(a, b, max_n):
    """``L[l] = ceil(a*l/b)`` for every period l with L[l] <= max_n."""
    out = [0]
    ell = 1
    while True:
        L = -((-a * ell) // b)
        if L > max_n:
            break
        out.append(L)
        ell += 1
    return out


def suffix_is_free(w, m, L):
    """False iff the last letter closes a p-power, given w[:m-1] is p-power-free."""
    ell = 1
    while ell < len(L) and L[ell] <= m:
        j = m - 1 - ell
        stop = m - L[ell]
        while j >= stop and w[j] == w[j + ell]:
            j -= 1
        if j < stop:
            return False
        ell += 1
    return True


def cyclic_is_free(w, n, L):
    """True iff no factor of length <= n of the circular word w[:n] is a p-power."""
    ell = 1
    while ell < len(L) and L[ell] <= n:
        need = L[ell] - ell
        # longest cyclic run of positions i with w[i] == w[i+ell mod n]
        start = -1
        for i in range(n):
            if w[i] != w[(i + ell) % n]:
                start = i
                break
        if start < 0:
            return False
        run = 0
        for t in range(1, n + 1):
            i = (start + t) % n
            if w[i] == w[(i + ell) % n]:
                run += 1
                if run >= need:
                    return False
            else:
                run = 0
        ell += 1
    return True


def power_free_counts(k, a, b, max_n, circular, prefix, max_nodes):
    L = power_lengths(a, b, max_n)
    linear = [0] * (max_n + 1)
    circ = [0] * (max_n + 1)
    d = len(prefix)
    if d > max_n:
        return linear, circ, 0
    w = [0] * max(max_n, 1)
    w[:d] = prefix
    linear[d] = 1
    if circular and (d == 0 or cyclic_is_free(w, d, L)):
        circ[d] = 1
    nodes = 1
    if d == max_n:
        return linear, circ, nodes

    # iterative DFS; nxt[m] is the next letter to try at position m
    nxt = [0] * (max_n + 1)
    m = d
    nxt[m] = 0
    while m >= d:
        if nxt[m] == k:
            m -= 1
            continue
        w[m] = nxt[m]
        nxt[m] += 1
        if not suffix_is_free(w, m + 1, L):
            continue
        m += 1
        nodes += 1
        if nodes > max_nodes:
            raise OverflowError(nodes)
        linear[m] += 1
        if circular and cyclic_is_free(w, m, L):
            circ[m] += 1
        if m < max_n:
            nxt[m] = 0
        else:
            m -= 1
    return linear, circ, nodes


def dfa_counts(delta, k, start, dead, max_n, circular, prefix, max_nodes):
    """DFS over the alive words of a flat ``delta[s*k + a]`` transition table."""
    linear = [0] * (max_n + 1)
    circ = [0] * (max_n + 1)
    d = len(prefix)
    if d > max_n:
        return linear, circ, 0
    w = [0] * max(max_n, 1)
    states = [0] * (max_n + 1)
    s = start
    if s == dead:
        return linear, circ, 0
    for i, x in enumerate(prefix):
        w[i] = x
        s = delta[s * k + x]
        if s == dead:
            return linear, circ, 0
    states[d] = s
    linear[d] = 1
    if circular and (d == 0 or _rotations_alive(delta, k, start, dead, w, d)):
        circ[d] = 1
    nodes = 1
    if d == max_n:
        return linear, circ, nodes

    nxt = [0] * (max_n + 1)
    m = d
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
            raise OverflowError(nodes)
        linear[m] += 1
        if circular and _rotations_alive(delta, k, start, dead, w, m):
            circ[m] += 1
        if m < max_n:
            nxt[m] = 0
        else:
            m -= 1
    return linear, circ, nodes


def _rotations_alive(delta, k, start, dead, w, n):
    for r in range(1, n):
        s = start
        for j in range(n):
            s = delta[s * k + w[(r + j) % n]]
            if s == dead:
                return False
    return True
