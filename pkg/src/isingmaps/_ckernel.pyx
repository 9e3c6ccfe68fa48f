# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels backed by GMP.

Same interface as ``_pykernel``: ``prepare`` packs an integer polynomial
``{(a, b, g): int}`` into GMP integers sorted by genus, and ``convolve_sum``
accumulates weighted products into a dense buffer with ``mpz_addmul``.
Output genus slices are independent, so they are spread over threads.
"""
from cython.parallel cimport prange
from libc.stdlib cimport malloc, free

cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct *mpz_ptr
    ctypedef const __mpz_struct *mpz_srcptr
    void mpz_init(mpz_ptr) nogil
    void mpz_clear(mpz_ptr) nogil
    void mpz_set_ui(mpz_ptr, unsigned long) nogil
    void mpz_neg(mpz_ptr, mpz_srcptr) nogil
    void mpz_mul(mpz_ptr, mpz_srcptr, mpz_srcptr) nogil
    void mpz_addmul(mpz_ptr, mpz_srcptr, mpz_srcptr) nogil
    int mpz_sgn(mpz_srcptr) nogil
    size_t mpz_sizeinbase(mpz_srcptr, int) nogil
    void mpz_import(mpz_ptr, size_t, int, size_t, int, size_t, const void *) nogil
    void *mpz_export(void *, size_t *, int, size_t, int, size_t, mpz_srcptr) nogil

NAME = "compiled"


cdef void _set_int(__mpz_struct *z, object x):
    cdef bint neg = x < 0
    if neg:
        x = -x
    cdef Py_ssize_t nbytes = (x.bit_length() + 7) // 8
    if nbytes == 0:
        mpz_set_ui(z, 0)
        return
    cdef bytes raw = x.to_bytes(nbytes, "little")
    cdef const char *buf = raw
    mpz_import(z, nbytes, -1, 1, 0, 0, buf)
    if neg:
        mpz_neg(z, z)


cdef object _get_int(__mpz_struct *z):
    cdef int sgn = mpz_sgn(z)
    if sgn == 0:
        return 0
    cdef size_t nbytes = (mpz_sizeinbase(z, 2) + 7) // 8
    cdef size_t count = 0
    cdef char *buf = <char *>malloc(nbytes)
    if buf == NULL:
        raise MemoryError()
    try:
        mpz_export(buf, &count, -1, 1, 0, 0, z)
        x = int.from_bytes(buf[:count], "little")
    finally:
        free(buf)
    return -x if sgn < 0 else x


cdef struct Packed:
    Py_ssize_t n
    int gmax
    int *a
    int *b
    Py_ssize_t *goff
    __mpz_struct *c


cdef class Prepared:
    """Terms sorted by genus; ``goff[g]:goff[g+1]`` is the genus-``g`` block."""
    cdef Packed p
    cdef readonly int amax, bmax, gmax

    def __cinit__(self, dict poly):
        items = sorted(((k, v) for k, v in poly.items() if v),
                       key=lambda kv: (kv[0][2], kv[0][0], kv[0][1]))
        self.p.n = len(items)
        self.amax = self.bmax = self.gmax = 0
        for (a, b, g), _ in items:
            self.amax = max(self.amax, a)
            self.bmax = max(self.bmax, b)
            self.gmax = max(self.gmax, g)
        self.p.gmax = self.gmax
        cdef Py_ssize_t m = max(self.p.n, 1)
        self.p.a = <int *>malloc(m * sizeof(int))
        self.p.b = <int *>malloc(m * sizeof(int))
        self.p.goff = <Py_ssize_t *>malloc((self.gmax + 2) * sizeof(Py_ssize_t))
        self.p.c = <__mpz_struct *>malloc(m * sizeof(__mpz_struct))
        if not (self.p.a and self.p.b and self.p.goff and self.p.c):
            raise MemoryError()
        cdef Py_ssize_t i
        for i in range(self.p.n):
            mpz_init(&self.p.c[i])
        cdef int g_cur = 0
        self.p.goff[0] = 0
        for i, ((a, b, g), v) in enumerate(items):
            while g_cur < g:
                g_cur += 1
                self.p.goff[g_cur] = i
            self.p.a[i] = a
            self.p.b[i] = b
            _set_int(&self.p.c[i], v)
        while g_cur <= self.gmax:
            g_cur += 1
            self.p.goff[g_cur] = self.p.n

    def __dealloc__(self):
        cdef Py_ssize_t i
        if self.p.c != NULL:
            for i in range(self.p.n):
                mpz_clear(&self.p.c[i])
            free(self.p.c)
        free(self.p.a)
        free(self.p.b)
        free(self.p.goff)

    def __len__(self):
        return self.p.n


def prepare(dict poly):
    return Prepared(poly)


def convolve_sum(pairs, int gmax, int threads=1):
    """Return ``sum(w * P * Q for w, P, Q in pairs)`` with genus capped at ``gmax``."""
    pairs = [(w, P, Q) for w, P, Q in pairs if w]
    cdef Py_ssize_t npairs = len(pairs)
    if npairs == 0:
        return {}
    cdef int A = 1, B = 1
    for _, P, Q in pairs:
        A = max(A, (<Prepared>P).amax + (<Prepared>Q).amax + 1)
        B = max(B, (<Prepared>P).bmax + (<Prepared>Q).bmax + 1)
    cdef Py_ssize_t G = gmax + 1
    cdef Py_ssize_t size = G * A * B

    # left factors are pre-scaled by their weight so the inner loop is a bare addmul
    cdef Packed *lp = <Packed *>malloc(npairs * sizeof(Packed))
    cdef Packed *rp = <Packed *>malloc(npairs * sizeof(Packed))
    cdef __mpz_struct *out = <__mpz_struct *>malloc(size * sizeof(__mpz_struct))
    if not (lp and rp and out):
        free(lp); free(rp); free(out)
        raise MemoryError()
    cdef Py_ssize_t k, i, idx, ready = 0
    cdef Prepared P_, Q_
    cdef __mpz_struct wz
    mpz_init(&wz)
    for idx in range(size):
        mpz_init(&out[idx])
    try:
        for k in range(npairs):
            w, P_, Q_ = pairs[k]
            lp[k] = P_.p
            rp[k] = Q_.p
            lp[k].c = <__mpz_struct *>malloc(max(P_.p.n, 1) * sizeof(__mpz_struct))
            if lp[k].c == NULL:
                raise MemoryError()
            ready = k + 1
            _set_int(&wz, w)
            for i in range(P_.p.n):
                mpz_init(&lp[k].c[i])
                mpz_mul(&lp[k].c[i], &P_.p.c[i], &wz)
        _accumulate(lp, rp, npairs, out, G, A, B, threads)
        result = {}
        for idx in range(size):
            if mpz_sgn(&out[idx]) != 0:
                result[((idx // B) % A, idx % B, idx // (A * B))] = _get_int(&out[idx])
        return result
    finally:
        mpz_clear(&wz)
        for k in range(ready):
            for i in range(lp[k].n):
                mpz_clear(&lp[k].c[i])
            free(lp[k].c)
        for idx in range(size):
            mpz_clear(&out[idx])
        free(out); free(lp); free(rp)


cdef void _accumulate(Packed *lp, Packed *rp, Py_ssize_t npairs, __mpz_struct *out,
                      Py_ssize_t G, int A, int B, int threads) noexcept:
    cdef Py_ssize_t g
    if threads > 1:
        for g in prange(G, nogil=True, schedule="dynamic", num_threads=threads):
            _slice(lp, rp, npairs, out + g * A * B, g, B)
    else:
        with nogil:
            for g in range(G):
                _slice(lp, rp, npairs, out + g * A * B, g, B)


cdef void _slice(Packed *lp, Packed *rp, Py_ssize_t npairs, __mpz_struct *row,
                 Py_ssize_t g, int B) noexcept nogil:
    cdef Py_ssize_t k, i, j, g1, g2, base
    cdef Packed *P
    cdef Packed *Q
    for k in range(npairs):
        P = &lp[k]
        Q = &rp[k]
        for g1 in range(min(g, <Py_ssize_t>P.gmax) + 1):
            g2 = g - g1
            if g2 > Q.gmax:
                continue
            for i in range(P.goff[g1], P.goff[g1 + 1]):
                base = P.a[i] * B + P.b[i]
                for j in range(Q.goff[g2], Q.goff[g2 + 1]):
                    mpz_addmul(&row[base + Q.a[j] * B + Q.b[j]], &P.c[i], &Q.c[j])
