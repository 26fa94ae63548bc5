# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled partial-sum kernels.

Every routine mirrors a function in ``_pykernels`` operation for operation,
including the compensated summation, so both backends agree bit for bit.
"""
from libc.math cimport pow, log1p, expm1, fabs


cdef inline void _neumaier(double term, double *acc, double *comp) noexcept nogil:
    cdef double t = acc[0] + term
    if fabs(acc[0]) >= fabs(term):
        comp[0] += (acc[0] - t) + term
    else:
        comp[0] += (term - t) + acc[0]
    acc[0] = t


def paired_partial(double s, double x, double k, long start, long stop):
    """Sum of (2mk+x)^-s - (2mk+x+k)^-s over start <= m < stop."""
    cdef double acc = 0.0, comp = 0.0, a
    cdef long m
    with nogil:
        for m in range(start, stop):
            a = 2.0 * m * k + x
            _neumaier(pow(a, -s) * (-expm1(-s * log1p(k / a))), &acc, &comp)
    return acc + comp


def hurwitz_partial(double s, double x, double k, long start, long stop):
    """Sum of (mk+x)^-s over start <= m < stop."""
    cdef double acc = 0.0, comp = 0.0
    cdef long m
    with nogil:
        for m in range(start, stop):
            _neumaier(pow(m * k + x, -s), &acc, &comp)
    return acc + comp


def digamma_partial(double x, double k, long start, long stop):
    """Sum of x / (nk (nk+x)) over start <= n < stop, start >= 1."""
    cdef double acc = 0.0, comp = 0.0, nk
    cdef long n
    with nogil:
        for n in range(start, stop):
            nk = n * k
            _neumaier(x / (nk * (nk + x)), &acc, &comp)
    return acc + comp


def weierstrass_log_partial(double s, long start, long stop):
    """Sum of log1p(s/n) - s/n over start <= n < stop, start >= 1."""
    cdef double acc = 0.0, comp = 0.0, u
    cdef long n
    with nogil:
        for n in range(start, stop):
            u = s / n
            _neumaier(log1p(u) - u, &acc, &comp)
    return acc + comp
