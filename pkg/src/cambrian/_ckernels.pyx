# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled bitmask kernels, mirroring ``_pykernels`` bit for bit.

Clique enumeration packs vertex sets into two 64-bit words (graphs up to
128 vertices); the lattice scan packs element sets into flat word arrays of
any width.  Results and their order must be identical to the pure versions;
``backend`` falls back to those when this module is unavailable or the
instance exceeds the 128-vertex clique limit.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.stdint cimport uint64_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil

cdef uint64_t ALL64 = <uint64_t>0xFFFFFFFFFFFFFFFF


cdef void _expand(uint64_t rlo, uint64_t rhi,
                  uint64_t plo, uint64_t phi,
                  uint64_t xlo, uint64_t xhi,
                  uint64_t* clo, uint64_t* chi, list out):
    cdef uint64_t pxlo = plo | xlo
    cdef uint64_t pxhi = phi | xhi
    cdef uint64_t m, b, cand_lo, cand_hi
    cdef int best, best_cnt, u, c, v
    if pxlo == 0 and pxhi == 0:
        out.append((<object>rlo) | ((<object>rhi) << 64))
        return
    best = -1
    best_cnt = -1
    m = pxlo
    while m:
        b = m & (0 - m)
        m ^= b
        u = __builtin_ctzll(b)
        c = __builtin_popcountll(plo & clo[u]) + __builtin_popcountll(phi & chi[u])
        if c > best_cnt:
            best = u
            best_cnt = c
    m = pxhi
    while m:
        b = m & (0 - m)
        m ^= b
        u = 64 + __builtin_ctzll(b)
        c = __builtin_popcountll(plo & clo[u]) + __builtin_popcountll(phi & chi[u])
        if c > best_cnt:
            best = u
            best_cnt = c
    cand_lo = plo & ~clo[best]
    cand_hi = phi & ~chi[best]
    while cand_lo or cand_hi:
        if cand_lo:
            b = cand_lo & (0 - cand_lo)
            cand_lo ^= b
            v = __builtin_ctzll(b)
            _expand(rlo | b, rhi, plo & clo[v], phi & chi[v],
                    xlo & clo[v], xhi & chi[v], clo, chi, out)
            plo ^= b
            xlo |= b
        else:
            b = cand_hi & (0 - cand_hi)
            cand_hi ^= b
            v = 64 + __builtin_ctzll(b)
            _expand(rlo, rhi | b, plo & clo[v], phi & chi[v],
                    xlo & clo[v], xhi & chi[v], clo, chi, out)
            phi ^= b
            xhi |= b


def maximal_cliques(compat):
    """Two-word Bron-Kerbosch; accepts at most 128 vertices."""
    cdef Py_ssize_t n = len(compat)
    if n > 128:
        raise ValueError("compiled clique kernel supports at most 128 vertices")
    cliques = []
    if n == 0:
        return cliques
    cdef uint64_t clo[128]
    cdef uint64_t chi[128]
    cdef Py_ssize_t v
    cdef object mask
    for v in range(n):
        mask = compat[v]
        clo[v] = <uint64_t>(mask & 0xFFFFFFFFFFFFFFFF)
        chi[v] = <uint64_t>((mask >> 64) & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t plo, phi
    if n >= 64:
        plo = ALL64
        phi = ALL64 if n == 128 else (<uint64_t>1 << (n - 64)) - 1
    else:
        plo = (<uint64_t>1 << n) - 1
        phi = 0
    _expand(0, 0, plo, phi, 0, 0, clo, chi, cliques)
    return cliques


def lattice_violation(upsets, downsets):
    """Packed-word join/meet scan; same contract as the pure version."""
    cdef Py_ssize_t n = len(upsets)
    if n == 0:
        return None
    cdef Py_ssize_t nw = (n + 63) >> 6
    cdef uint64_t* U = <uint64_t*>PyMem_Malloc(n * nw * sizeof(uint64_t))
    cdef uint64_t* D = <uint64_t*>PyMem_Malloc(n * nw * sizeof(uint64_t))
    cdef uint64_t* T = <uint64_t*>PyMem_Malloc(nw * sizeof(uint64_t))
    cdef Py_ssize_t a, b, w
    cdef int low, high, ok
    cdef uint64_t t
    cdef object mask
    if U == NULL or D == NULL or T == NULL:
        PyMem_Free(U)
        PyMem_Free(D)
        PyMem_Free(T)
        raise MemoryError()
    try:
        for a in range(n):
            mask = upsets[a]
            for w in range(nw):
                U[a * nw + w] = <uint64_t>((mask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF)
            mask = downsets[a]
            for w in range(nw):
                D[a * nw + w] = <uint64_t>((mask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF)
        for a in range(n):
            for b in range(a + 1, n):
                low = -1
                for w in range(nw):
                    t = U[a * nw + w] & U[b * nw + w]
                    T[w] = t
                    if t != 0 and low < 0:
                        low = 64 * w + __builtin_ctzll(t)
                if low < 0:
                    return ("join", a, b)
                ok = 1
                for w in range(nw):
                    if U[low * nw + w] != T[w]:
                        ok = 0
                        break
                if not ok:
                    return ("join", a, b)
                high = -1
                for w in range(nw - 1, -1, -1):
                    t = D[a * nw + w] & D[b * nw + w]
                    T[w] = t
                    if t != 0 and high < 0:
                        high = 64 * w + 63 - __builtin_clzll(t)
                if high < 0:
                    return ("meet", a, b)
                ok = 1
                for w in range(nw):
                    if D[high * nw + w] != T[w]:
                        ok = 0
                        break
                if not ok:
                    return ("meet", a, b)
        return None
    finally:
        PyMem_Free(U)
        PyMem_Free(D)
        PyMem_Free(T)
