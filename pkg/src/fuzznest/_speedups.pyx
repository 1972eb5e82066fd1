# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled numeric kernels; mirror of fuzznest._kernels.

Arithmetic matches the pure module operation for operation (pow(2, v)
and log2 from libm, applied in the same order), so both backends return
bit-identical results.
"""

from libc.math cimport fabs, log2, pow

from .errors import IndexCapExceededError


cdef double _level(double t, long k) noexcept nogil:
    cdef long i
    cdef double v = t
    if t == 0.0 or t == 1.0:
        return t
    if k > 0:
        for i in range(k):
            v = pow(2.0, v) - 1.0
    else:
        for i in range(-k):
            v = log2(v + 1.0)
    return v


cdef double _series(long m_star, const unsigned char* bits, Py_ssize_t n,
                    double t) noexcept nogil:
    cdef double total = 0.0
    cdef double v
    cdef Py_ssize_t i
    if t == 0.0:
        return 0.0
    if t == 1.0:
        for i in range(n):
            if bits[i]:
                total += 1.0
        return total
    v = _level(t, m_star)
    for i in range(n):
        if i:
            v = pow(2.0, v) - 1.0
        if bits[i]:
            total += v
    return total


def level_value(double t, long k):
    """u_k(t). 0 and 1 are fixed points of both maps and stay exact."""
    return _level(t, k)


def series_value(long m_star, bits, double t):
    """Sum of u_k(t) over the 1-bits; bits[i] is the bit at m_star + i."""
    cdef bytes raw = bytes(bits)
    cdef const unsigned char* p = raw
    return _series(m_star, p, len(raw), t)


def series_root(long m_star, bits, double tol_root):
    """Unique t with series_value = 1, by bisection on [0, 1]."""
    cdef bytes raw = bytes(bits)
    cdef const unsigned char* p = raw
    cdef Py_ssize_t n = len(raw)
    cdef Py_ssize_t i
    cdef long ones = 0
    cdef double lo = 0.0, hi = 1.0, mid
    for i in range(n):
        if p[i]:
            ones += 1
    if ones <= 1:
        return 1.0
    while hi - lo > tol_root:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _series(m_star, p, n, mid) < 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


cdef long _initial_index(double w, long max_index, double* out_v) except? -999999:
    # least k != 0 with u_k(w) + w - 1 <= 0; the left side decreases in k
    cdef double s0 = w - 1.0
    cdef double v = log2(w + 1.0)
    cdef double nxt
    cdef long k
    if v + s0 <= 0.0:
        k = -1
        while True:
            nxt = log2(v + 1.0)
            if nxt + s0 > 0.0:
                out_v[0] = v
                return k
            k -= 1
            v = nxt
            if -k > max_index:
                raise IndexCapExceededError(
                    f"initial index search passed -{max_index}"
                )
    k = 1
    v = pow(2.0, w) - 1.0
    while v + s0 > 0.0:
        k += 1
        v = pow(2.0, v) - 1.0
        if k > max_index:
            raise IndexCapExceededError(
                f"initial index search passed {max_index}"
            )
    out_v[0] = v
    return k


def greedy_encode(double w, double tol_residual, long max_terms, long max_index):
    """Greedy bit selection for w in (0, 1]; see fuzznest._kernels."""
    cdef double s = w - 1.0
    cdef long terms = 1
    cdef list chosen = []
    cdef bint truncated = False
    cdef long k = 0
    cdef double v = 0.0
    cdef long m_star, last, c
    while fabs(s) > tol_residual:
        if terms >= max_terms:
            truncated = True
            break
        if not chosen:
            k = _initial_index(w, max_index, &v)
        else:
            while True:
                k += 1
                if k > max_index:
                    raise IndexCapExceededError(
                        f"index search passed {max_index}"
                    )
                v = pow(2.0, v) - 1.0
                if k != 0 and s + v <= 0.0:
                    break
        chosen.append(k)
        s += v
        terms += 1
    if chosen:
        m_star = min(<long> chosen[0], 0)
        last = max(<long> chosen[len(chosen) - 1], 0)
    else:
        m_star = 0
        last = 0
    bits = [0] * (last - m_star + 1)
    bits[-m_star] = 1
    for c in chosen:
        bits[c - m_star] = 1
    return m_star, bits, truncated, s
