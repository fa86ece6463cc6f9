# cython: language_level=3
"""Compiled kernels on MPFR (multiprecision) and C doubles.

Mirrors ``_kernels_py`` function by function. Complex multiprecision
numbers are stored as separate real and imaginary ``mpfr_t`` arrays.
"""

from libc.stdlib cimport malloc, free
from libc.math cimport sqrt, pow, fabs, log, M_PI

import numpy as np

BACKEND = "cython"


cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct* mpz_ptr
    void mpz_init(mpz_ptr)
    void mpz_clear(mpz_ptr)
    int mpz_set_str(mpz_ptr, const char*, int)
    char* mpz_get_str(char*, int, mpz_ptr)
    size_t mpz_sizeinbase(mpz_ptr, int)
    void mpz_neg(mpz_ptr, mpz_ptr)
    int mpz_sgn(mpz_ptr)


cdef extern from "mpfr.h":
    ctypedef long mpfr_prec_t
    ctypedef long mpfr_exp_t
    ctypedef struct __mpfr_struct:
        pass
    ctypedef __mpfr_struct* mpfr_ptr
    ctypedef enum mpfr_rnd_t:
        MPFR_RNDN
    void mpfr_init2(mpfr_ptr, mpfr_prec_t)
    void mpfr_clear(mpfr_ptr)
    int mpfr_set(mpfr_ptr, mpfr_ptr, mpfr_rnd_t)
    int mpfr_set_ui(mpfr_ptr, unsigned long, mpfr_rnd_t)
    int mpfr_set_si(mpfr_ptr, long, mpfr_rnd_t)
    int mpfr_set_z_2exp(mpfr_ptr, mpz_ptr, mpfr_exp_t, mpfr_rnd_t)
    mpfr_exp_t mpfr_get_z_2exp(mpz_ptr, mpfr_ptr)
    int mpfr_add(mpfr_ptr, mpfr_ptr, mpfr_ptr, mpfr_rnd_t)
    int mpfr_sub(mpfr_ptr, mpfr_ptr, mpfr_ptr, mpfr_rnd_t)
    int mpfr_mul(mpfr_ptr, mpfr_ptr, mpfr_ptr, mpfr_rnd_t)
    int mpfr_div(mpfr_ptr, mpfr_ptr, mpfr_ptr, mpfr_rnd_t)
    int mpfr_mul_ui(mpfr_ptr, mpfr_ptr, unsigned long, mpfr_rnd_t)
    int mpfr_mul_2si(mpfr_ptr, mpfr_ptr, long, mpfr_rnd_t)
    int mpfr_sqr(mpfr_ptr, mpfr_ptr, mpfr_rnd_t)
    int mpfr_fma(mpfr_ptr, mpfr_ptr, mpfr_ptr, mpfr_ptr, mpfr_rnd_t)
    int mpfr_fms(mpfr_ptr, mpfr_ptr, mpfr_ptr, mpfr_ptr, mpfr_rnd_t)
    int mpfr_hypot(mpfr_ptr, mpfr_ptr, mpfr_ptr, mpfr_rnd_t)
    int mpfr_abs(mpfr_ptr, mpfr_ptr, mpfr_rnd_t)
    int mpfr_neg(mpfr_ptr, mpfr_ptr, mpfr_rnd_t)
    int mpfr_cmp(mpfr_ptr, mpfr_ptr)
    int mpfr_cmp_ui(mpfr_ptr, unsigned long)
    int mpfr_zero_p(mpfr_ptr)
    int mpfr_number_p(mpfr_ptr)


cdef extern from "complex.h":
    double complex cexp(double complex) nogil
    double cabs(double complex) nogil
    double carg(double complex) nogil
    double complex csqrt(double complex) nogil
    double creal(double complex) nogil
    double cimag(double complex) nogil




cdef void set_pair(mpfr_ptr x, object pair, mpz_ptr tmp):
    cdef object man = int(pair[0])
    cdef long exp = int(pair[1])
    cdef bytes digits
    if man == 0:
        mpfr_set_ui(x, 0, MPFR_RNDN)
        return
    digits = format(abs(man), "x").encode("ascii")
    mpz_set_str(tmp, digits, 16)
    if man < 0:
        mpz_neg(tmp, tmp)
    mpfr_set_z_2exp(x, tmp, exp, MPFR_RNDN)


cdef object get_pair(mpfr_ptr x, mpz_ptr tmp):
    cdef mpfr_exp_t e
    cdef size_t n
    cdef char* buf
    cdef object man
    if mpfr_zero_p(x):
        return (0, 0)
    if not mpfr_number_p(x):
        raise ValueError("non-finite value in kernel")
    e = mpfr_get_z_2exp(tmp, x)
    n = mpz_sizeinbase(tmp, 16) + 3
    buf = <char*>malloc(n)
    if buf == NULL:
        raise MemoryError()
    try:
        mpz_get_str(buf, 16, tmp)
        man = int(buf.decode("ascii"), 16)
    finally:
        free(buf)
    # normalize trailing zero bits so pairs compare equal to mpmath's form
    if man:
        tz = (man & -man).bit_length() - 1
        man >>= tz
        e += tz
    return (man, e)


cdef mpfr_ptr alloc_vec(Py_ssize_t n, long prec) except NULL:
    cdef mpfr_ptr v = <mpfr_ptr>malloc(max(n, 1) * sizeof(__mpfr_struct))
    cdef Py_ssize_t i
    if v == NULL:
        raise MemoryError()
    for i in range(n):
        mpfr_init2(&v[i], prec)
    return v


cdef void free_vec(mpfr_ptr v, Py_ssize_t n):
    cdef Py_ssize_t i
    for i in range(n):
        mpfr_clear(&v[i])
    free(v)


def aberth(coeffs, roots, long prec, long tol_exp, long max_iters):
    """Simultaneous Aberth-Ehrlich iteration (MPFR back end).

    See ``_kernels_py.aberth`` for the contract; results agree with the
    pure-Python kernel up to rounding differences.
    """
    cdef Py_ssize_t n = len(coeffs) - 1
    cdef Py_ssize_t i, j, k
    cdef long sweeps = 0
    cdef int ndone = 0
    cdef __mpz_struct ztmp
    mpz_init(&ztmp)

    cdef mpfr_ptr c = alloc_vec(n + 1, prec)
    cdef mpfr_ptr dc = alloc_vec(n + 1, prec)
    cdef mpfr_ptr ac = alloc_vec(n + 1, prec)
    cdef mpfr_ptr zr = alloc_vec(n, prec)
    cdef mpfr_ptr zi = alloc_vec(n, prec)
    cdef mpfr_ptr nr = alloc_vec(n, prec)
    cdef mpfr_ptr ni = alloc_vec(n, prec)
    # scratch: pr pi dpr dpi t1 t2 t3 t4 sr si rr ri az bound ap eta tol dr di den one
    cdef mpfr_ptr w = alloc_vec(22, prec)
    cdef mpfr_ptr pr = &w[0]
    cdef mpfr_ptr pim = &w[1]
    cdef mpfr_ptr dpr = &w[2]
    cdef mpfr_ptr dpi = &w[3]
    cdef mpfr_ptr t1 = &w[4]
    cdef mpfr_ptr t2 = &w[5]
    cdef mpfr_ptr t3 = &w[6]
    cdef mpfr_ptr t4 = &w[7]
    cdef mpfr_ptr sr = &w[8]
    cdef mpfr_ptr si = &w[9]
    cdef mpfr_ptr rr = &w[10]
    cdef mpfr_ptr ri = &w[11]
    cdef mpfr_ptr az = &w[12]
    cdef mpfr_ptr bound = &w[13]
    cdef mpfr_ptr ap = &w[14]
    cdef mpfr_ptr eta = &w[15]
    cdef mpfr_ptr tol = &w[16]
    cdef mpfr_ptr dr = &w[17]
    cdef mpfr_ptr di = &w[18]
    cdef mpfr_ptr den = &w[19]
    cdef mpfr_ptr cr = &w[20]
    cdef mpfr_ptr ci = &w[21]

    cdef char* done = <char*>malloc(max(n, 1))
    try:
        for k in range(n + 1):
            set_pair(&c[k], coeffs[k], &ztmp)
            mpfr_abs(&ac[k], &c[k], MPFR_RNDN)
            if k:
                mpfr_mul_ui(&dc[k], &c[k], k, MPFR_RNDN)
        for i in range(n):
            set_pair(&zr[i], roots[i][0], &ztmp)
            set_pair(&zi[i], roots[i][1], &ztmp)
            mpfr_set(&nr[i], &zr[i], MPFR_RNDN)
            mpfr_set(&ni[i], &zi[i], MPFR_RNDN)
            done[i] = 0
        mpfr_set_ui(eta, 4 * (n + 1), MPFR_RNDN)
        mpfr_mul_2si(eta, eta, -prec, MPFR_RNDN)
        mpfr_set_ui(tol, 1, MPFR_RNDN)
        mpfr_mul_2si(tol, tol, tol_exp, MPFR_RNDN)

        while sweeps < max_iters and ndone < n:
            sweeps += 1
            for i in range(n):
                if done[i]:
                    continue
                # p and p' by Horner
                mpfr_set(pr, &c[n], MPFR_RNDN)
                mpfr_set_ui(pim, 0, MPFR_RNDN)
                mpfr_set_ui(dpr, 0, MPFR_RNDN)
                mpfr_set_ui(dpi, 0, MPFR_RNDN)
                for k in range(n - 1, -1, -1):
                    # dp = dp*z + p
                    mpfr_mul(t1, dpr, &zr[i], MPFR_RNDN)
                    mpfr_fms(t1, dpi, &zi[i], t1, MPFR_RNDN)      # dpi*zi - dpr*zr
                    mpfr_mul(t2, dpr, &zi[i], MPFR_RNDN)
                    mpfr_fma(t2, dpi, &zr[i], t2, MPFR_RNDN)      # dpi*zr + dpr*zi
                    mpfr_sub(dpr, pr, t1, MPFR_RNDN)
                    mpfr_add(dpi, pim, t2, MPFR_RNDN)
                    # p = p*z + c_k
                    mpfr_mul(t1, pr, &zr[i], MPFR_RNDN)
                    mpfr_mul(t3, pim, &zi[i], MPFR_RNDN)
                    mpfr_sub(t1, t1, t3, MPFR_RNDN)
                    mpfr_mul(t2, pr, &zi[i], MPFR_RNDN)
                    mpfr_fma(t2, pim, &zr[i], t2, MPFR_RNDN)
                    mpfr_add(pr, t1, &c[k], MPFR_RNDN)
                    mpfr_set(pim, t2, MPFR_RNDN)
                # rounding floor test
                mpfr_hypot(az, &zr[i], &zi[i], MPFR_RNDN)
                mpfr_set_ui(bound, 0, MPFR_RNDN)
                for k in range(n, -1, -1):
                    mpfr_fma(bound, bound, az, &ac[k], MPFR_RNDN)
                mpfr_mul(bound, bound, eta, MPFR_RNDN)
                mpfr_hypot(ap, pr, pim, MPFR_RNDN)
                if mpfr_cmp(ap, bound) <= 0:
                    done[i] = 1
                    ndone += 1
                    continue
                # r = p / p'
                mpfr_sqr(den, dpr, MPFR_RNDN)
                mpfr_fma(den, dpi, dpi, den, MPFR_RNDN)
                mpfr_mul(t1, pr, dpr, MPFR_RNDN)
                mpfr_fma(t1, pim, dpi, t1, MPFR_RNDN)
                mpfr_mul(t2, pim, dpr, MPFR_RNDN)
                mpfr_mul(t3, pr, dpi, MPFR_RNDN)
                mpfr_sub(t2, t2, t3, MPFR_RNDN)
                mpfr_div(rr, t1, den, MPFR_RNDN)
                mpfr_div(ri, t2, den, MPFR_RNDN)
                # s = sum_{j != i} 1 / (z_i - z_j)
                mpfr_set_ui(sr, 0, MPFR_RNDN)
                mpfr_set_ui(si, 0, MPFR_RNDN)
                for j in range(n):
                    if j == i:
                        continue
                    mpfr_sub(dr, &zr[i], &zr[j], MPFR_RNDN)
                    mpfr_sub(di, &zi[i], &zi[j], MPFR_RNDN)
                    mpfr_sqr(den, dr, MPFR_RNDN)
                    mpfr_fma(den, di, di, den, MPFR_RNDN)
                    mpfr_div(t1, dr, den, MPFR_RNDN)
                    mpfr_div(t2, di, den, MPFR_RNDN)
                    mpfr_add(sr, sr, t1, MPFR_RNDN)
                    mpfr_sub(si, si, t2, MPFR_RNDN)
                # corr = r / (1 - r s)
                mpfr_mul(t1, rr, sr, MPFR_RNDN)
                mpfr_mul(t3, ri, si, MPFR_RNDN)
                mpfr_sub(t1, t1, t3, MPFR_RNDN)          # Re(r s)
                mpfr_mul(t2, rr, si, MPFR_RNDN)
                mpfr_fma(t2, ri, sr, t2, MPFR_RNDN)       # Im(r s)
                mpfr_set_ui(t3, 1, MPFR_RNDN)
                mpfr_sub(t3, t3, t1, MPFR_RNDN)           # Re(1 - r s)
                mpfr_neg(t4, t2, MPFR_RNDN)               # Im(1 - r s)
                mpfr_sqr(den, t3, MPFR_RNDN)
                mpfr_fma(den, t4, t4, den, MPFR_RNDN)
                mpfr_mul(t1, rr, t3, MPFR_RNDN)
                mpfr_fma(t1, ri, t4, t1, MPFR_RNDN)
                mpfr_mul(t2, ri, t3, MPFR_RNDN)
                mpfr_mul(cr, rr, t4, MPFR_RNDN)
                mpfr_sub(t2, t2, cr, MPFR_RNDN)
                mpfr_div(cr, t1, den, MPFR_RNDN)
                mpfr_div(ci, t2, den, MPFR_RNDN)
                mpfr_sub(&nr[i], &zr[i], cr, MPFR_RNDN)
                mpfr_sub(&ni[i], &zi[i], ci, MPFR_RNDN)
                # correction test against tol * max(1, |z|)
                mpfr_hypot(ap, cr, ci, MPFR_RNDN)
                if mpfr_cmp_ui(az, 1) < 0:
                    mpfr_set(t1, tol, MPFR_RNDN)
                else:
                    mpfr_mul(t1, tol, az, MPFR_RNDN)
                if mpfr_cmp(ap, t1) <= 0:
                    done[i] = 1
                    ndone += 1
            for i in range(n):
                mpfr_set(&zr[i], &nr[i], MPFR_RNDN)
                mpfr_set(&zi[i], &ni[i], MPFR_RNDN)

        out = [(get_pair(&zr[i], &ztmp), get_pair(&zi[i], &ztmp)) for i in range(n)]
        flags = [bool(done[i]) for i in range(n)]
    finally:
        free(done)
        free_vec(c, n + 1)
        free_vec(dc, n + 1)
        free_vec(ac, n + 1)
        free_vec(zr, n)
        free_vec(zi, n)
        free_vec(nr, n)
        free_vec(ni, n)
        free_vec(w, 22)
        mpz_clear(&ztmp)
    return out, sweeps, flags


cdef double LN2 = log(2.0)
cdef double SQRT_PI = sqrt(M_PI)
cdef double SQRT2 = sqrt(2.0)


cdef double complex series_dmh(double complex w) nogil:
    cdef double complex w2 = w * w
    cdef double complex x = 2.0 * w2
    cdef double complex s1 = 1.0
    cdef double complex t = 1.0
    cdef double complex s2, u, val, phase
    cdef double prev = 1.0, at, arg
    cdef int s = 1
    while s < 200:
        t = -t * (2 * s - 1.5) * (2 * s - 0.5) / (s * x)
        at = cabs(t)
        if at > prev or at < 1e-17 * cabs(s1):
            break
        s1 = s1 + t
        prev = at
        s += 1
    val = cexp(-w2 / 4) * s1 / csqrt(w)
    arg = carg(w)
    if fabs(arg) > M_PI / 2:
        s2 = 1.0
        u = 1.0
        prev = 1.0
        s = 1
        while s < 200:
            u = u * (2 * s - 1.5) * (2 * s - 0.5) / (s * x)
            at = cabs(u)
            if at > prev or at < 1e-17 * cabs(s2):
                break
            s2 = s2 + u
            prev = at
            s += 1
        if arg > 0:
            phase = -1j
        else:
            phase = 1j
        val = val - SQRT2 * phase * cexp(w2 / 4) * s2 / csqrt(w)
    return val


cdef double complex dmh_right(double complex w) nogil:
    cdef double r = cabs(w)
    cdef double h, sk, s2, at, peak = 1.0
    cdef double complex total = 0.5, term
    cdef long k = 1
    if r >= 8.0:
        return series_dmh(w)
    h = 1.25 * pow(53 * LN2 + r * r / 2 + 10, -0.75)
    while True:
        sk = k * h
        s2 = sk * sk
        term = cexp(-w * s2 - s2 * s2 / 2)
        total = total + term
        at = cabs(term)
        if at > peak:
            peak = at
        if sk > 1 and at < 1e-17 * peak:
            break
        k += 1
    return cexp(-w * w / 4) * 2 * h * total / SQRT_PI


cdef double complex pcf_dmh(double complex w) nogil:
    # left half plane via the connection formula, which keeps the sum
    # away from cancellation
    cdef double s
    if creal(w) >= 0:
        return dmh_right(w)
    s = 1.0 if cimag(w) >= 0 else -1.0
    return (-1j * s * dmh_right(-w)
            + SQRT2 * cexp(0.25j * M_PI * s) * dmh_right(-1j * s * w))


def pcf_dmh_array(w):
    """D_{-1/2} on an array of complex arguments in double precision."""
    arr = np.ascontiguousarray(w, dtype=np.complex128)
    flat = arr.ravel()
    out = np.empty_like(flat)
    cdef double complex[::1] src = flat
    cdef double complex[::1] dst = out
    cdef Py_ssize_t i, n = flat.shape[0]
    with nogil:
        for i in range(n):
            dst[i] = pcf_dmh(src[i])
    return out.reshape(arr.shape)


def q_local_array(xi):
    """``e^{i pi/4} D(e^{-3 pi i/4} xi) - i sqrt2 D(e^{-5 pi i/4} xi)``."""
    arr = np.ascontiguousarray(xi, dtype=np.complex128)
    flat = arr.ravel()
    out = np.empty_like(flat)
    cdef double complex[::1] src = flat
    cdef double complex[::1] dst = out
    cdef Py_ssize_t i, n = flat.shape[0]
    cdef double complex r1 = cexp(-0.75j * M_PI)
    cdef double complex r2 = cexp(-1.25j * M_PI)
    cdef double complex e1 = cexp(0.25j * M_PI)
    with nogil:
        for i in range(n):
            dst[i] = e1 * pcf_dmh(src[i] * r1) - 1j * SQRT2 * pcf_dmh(src[i] * r2)
    return out.reshape(arr.shape)


def q_local_abs_grid(re, im):
    """``|q_l|`` on the tensor grid, shape ``(len(im), len(re))``."""
    re = np.asarray(re, dtype=float)
    im = np.asarray(im, dtype=float)
    xi = re[None, :] + 1j * im[:, None]
    return np.abs(q_local_array(xi))
