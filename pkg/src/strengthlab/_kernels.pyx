# cython: language_level=3, boundscheck=False, wraparound=False
"""GMP-backed fraction-free (Bareiss) rank kernels.

Same recurrences as ``_kernels_py``; entries live in a flat ``mpz_t`` array
so the inner loop never touches Python objects.
"""

from libc.stdlib cimport malloc, free


cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct* mpz_ptr
    void mpz_init(mpz_ptr)
    void mpz_clear(mpz_ptr)
    void mpz_set(mpz_ptr, mpz_ptr)
    void mpz_set_si(mpz_ptr, long)
    int mpz_set_str(mpz_ptr, const char*, int)
    void mpz_swap(mpz_ptr, mpz_ptr)
    void mpz_mul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_add(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_sub(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_submul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_addmul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_divexact(mpz_ptr, mpz_ptr, mpz_ptr)
    int mpz_sgn(mpz_ptr)


cdef int _load(mpz_ptr z, object value) except -1:
    cdef long small
    if -(1 << 62) < value < (1 << 62):
        small = value
        mpz_set_si(z, small)
    else:
        s = format(value, "x").encode()
        if mpz_set_str(z, s, 16) != 0:
            raise ValueError("bad integer")
    return 0


cdef __mpz_struct* _alloc(Py_ssize_t count):
    cdef __mpz_struct* arr = <__mpz_struct*> malloc(count * sizeof(__mpz_struct))
    cdef Py_ssize_t k
    if arr == NULL:
        raise MemoryError()
    for k in range(count):
        mpz_init(&arr[k])
    return arr


cdef void _release(__mpz_struct* arr, Py_ssize_t count):
    cdef Py_ssize_t k
    for k in range(count):
        mpz_clear(&arr[k])
    free(arr)


def bareiss_rank_int(rows):
    rows = [row_ for row_ in rows if any(row_)]
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0:
        return 0
    cdef Py_ssize_t ncols = len(rows[0])
    cdef Py_ssize_t total = nrows * ncols
    cdef __mpz_struct* m = _alloc(total)
    cdef __mpz_struct* tmp = _alloc(2)
    cdef Py_ssize_t i, j, k, c, r, piv
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                v = row[j]
                if v:
                    _load(&m[i * ncols + j], v)
        mpz_set_si(&tmp[0], 1)  # previous pivot
        r = 0
        for c in range(ncols):
            piv = -1
            for k in range(r, nrows):
                if mpz_sgn(&m[k * ncols + c]) != 0:
                    piv = k
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, ncols):
                    mpz_swap(&m[r * ncols + j], &m[piv * ncols + j])
            for k in range(r + 1, nrows):
                for j in range(c + 1, ncols):
                    # x = (p*x - a*b) / prev
                    mpz_mul(&tmp[1], &m[r * ncols + c], &m[k * ncols + j])
                    mpz_submul(&tmp[1], &m[k * ncols + c], &m[r * ncols + j])
                    mpz_divexact(&m[k * ncols + j], &tmp[1], &tmp[0])
                mpz_set_si(&m[k * ncols + c], 0)
            mpz_set(&tmp[0], &m[r * ncols + c])
            r += 1
            if r == nrows:
                break
        return r
    finally:
        _release(m, total)
        _release(tmp, 2)


def bareiss_rank_gauss(re_rows, im_rows):
    cdef Py_ssize_t nrows = len(re_rows)
    if nrows == 0:
        return 0
    cdef Py_ssize_t ncols = len(re_rows[0])
    cdef Py_ssize_t total = nrows * ncols
    cdef __mpz_struct* mr = _alloc(total)
    cdef __mpz_struct* mi = _alloc(total)
    # prev_re, prev_im, norm, nr, ni, t
    cdef __mpz_struct* t = _alloc(6)
    cdef Py_ssize_t i, j, k, c, r, piv, rc, kc, rj, kj
    try:
        for i in range(nrows):
            rre = re_rows[i]
            rim = im_rows[i]
            for j in range(ncols):
                if rre[j]:
                    _load(&mr[i * ncols + j], rre[j])
                if rim[j]:
                    _load(&mi[i * ncols + j], rim[j])
        mpz_set_si(&t[0], 1)
        mpz_set_si(&t[1], 0)
        r = 0
        for c in range(ncols):
            piv = -1
            for k in range(r, nrows):
                if mpz_sgn(&mr[k * ncols + c]) != 0 or mpz_sgn(&mi[k * ncols + c]) != 0:
                    piv = k
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, ncols):
                    mpz_swap(&mr[r * ncols + j], &mr[piv * ncols + j])
                    mpz_swap(&mi[r * ncols + j], &mi[piv * ncols + j])
            mpz_mul(&t[2], &t[0], &t[0])
            mpz_addmul(&t[2], &t[1], &t[1])
            rc = r * ncols + c
            for k in range(r + 1, nrows):
                kc = k * ncols + c
                for j in range(c + 1, ncols):
                    rj = r * ncols + j
                    kj = k * ncols + j
                    # n = q*x - a*b
                    mpz_mul(&t[3], &mr[rc], &mr[kj])
                    mpz_submul(&t[3], &mi[rc], &mi[kj])
                    mpz_submul(&t[3], &mr[kc], &mr[rj])
                    mpz_addmul(&t[3], &mi[kc], &mi[rj])
                    mpz_mul(&t[4], &mr[rc], &mi[kj])
                    mpz_addmul(&t[4], &mi[rc], &mr[kj])
                    mpz_submul(&t[4], &mr[kc], &mi[rj])
                    mpz_submul(&t[4], &mi[kc], &mr[rj])
                    # x = n * conj(prev) / |prev|^2
                    mpz_mul(&t[5], &t[3], &t[0])
                    mpz_addmul(&t[5], &t[4], &t[1])
                    mpz_divexact(&mr[kj], &t[5], &t[2])
                    mpz_mul(&t[5], &t[4], &t[0])
                    mpz_submul(&t[5], &t[3], &t[1])
                    mpz_divexact(&mi[kj], &t[5], &t[2])
                mpz_set_si(&mr[kc], 0)
                mpz_set_si(&mi[kc], 0)
            mpz_set(&t[0], &mr[rc])
            mpz_set(&t[1], &mi[rc])
            r += 1
            if r == nrows:
                break
        return r
    finally:
        _release(mr, total)
        _release(mi, total)
        _release(t, 6)
