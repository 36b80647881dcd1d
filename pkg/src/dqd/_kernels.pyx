# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: complex Jacobi eigensolver and the discord objective.

Mirrors ``dqd._fallback`` operation for operation.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, log2, sin, cos

from .errors import NoConvergence

cnp.import_array()


cdef inline double cmag2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef int _jacobi(double complex[:, ::1] A, double complex[:, ::1] V,
                 int max_sweeps, double tol) nogil:
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t i, j, k, p, q
    cdef double scale = 0.0, off, mag, app, aqq, tau, t, c, s
    cdef double complex phase, se, sec, x, y
    cdef int sweep

    for i in range(n):
        A[i, i] = A[i, i].real
        for j in range(n):
            scale += cmag2(A[i, j])
    scale = sqrt(scale)

    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += cmag2(A[i, j])
        if sqrt(off) <= tol * scale:
            return 0
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                mag = sqrt(cmag2(A[p, q]))
                if mag == 0.0:
                    continue
                phase = A[p, q] / mag
                app = A[p, p].real
                aqq = A[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                se = s * phase
                sec = s * phase.conjugate()
                for k in range(n):
                    x = A[k, p]
                    y = A[k, q]
                    A[k, p] = c * x - sec * y
                    A[k, q] = se * x + c * y
                for k in range(n):
                    x = A[p, k]
                    y = A[q, k]
                    A[p, k] = c * x - se * y
                    A[q, k] = sec * x + c * y
                for k in range(n):
                    x = V[k, p]
                    y = V[k, q]
                    V[k, p] = c * x - sec * y
                    V[k, q] = se * x + c * y
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = app - t * mag
                A[q, q] = aqq + t * mag
    return 1


def jacobi_eigh(a, int max_sweeps=100, double tol=1e-14):
    cdef double complex[:, ::1] A = np.array(a, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = A.shape[0]
    V_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] V = V_arr
    cdef int status
    with nogil:
        status = _jacobi(A, V, max_sweeps, tol)
    if status != 0:
        raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i
    for i in range(n):
        w[i] = A[i, i].real
    return w, V_arr


cdef inline double _h_bloch(double r) nogil:
    cdef double hi, lo, out
    if r >= 1.0:
        return 0.0
    if r < 0.0:
        r = 0.0
    hi = 0.5 * (1.0 + r)
    lo = 0.5 * (1.0 - r)
    out = -hi * log2(hi)
    if lo > 0.0:
        out -= lo * log2(lo)
    return out


cdef inline double _measured(const double* u, const double* v, const double* r,
                             double nx, double ny, double nz) nogil:
    cdef double nu = nx * u[0] + ny * u[1] + nz * u[2]
    cdef double rn[3]
    cdef int k
    cdef double total = 0.0, weight, bx, by, bz, s
    for k in range(3):
        rn[k] = nx * r[k] + ny * r[3 + k] + nz * r[6 + k]
    for k in range(2):
        s = 1.0 - 2.0 * k
        weight = 1.0 + s * nu
        if weight > 1e-300:
            bx = v[0] + s * rn[0]
            by = v[1] + s * rn[1]
            bz = v[2] + s * rn[2]
            total += 0.5 * weight * _h_bloch(sqrt(bx * bx + by * by + bz * bz) / weight)
    return total


def measured_entropy_grid(u, v, r, thetas, phis):
    cdef double[::1] uu = np.ascontiguousarray(u, dtype=np.float64)
    cdef double[::1] vv = np.ascontiguousarray(v, dtype=np.float64)
    cdef double[::1] rr = np.ascontiguousarray(r, dtype=np.float64).reshape(9)
    cdef double[::1] th = np.ascontiguousarray(thetas, dtype=np.float64)
    cdef double[::1] ph = np.ascontiguousarray(phis, dtype=np.float64)
    out_arr = np.empty((th.shape[0], ph.shape[0]), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double st, ct
    with nogil:
        for i in range(th.shape[0]):
            st = sin(th[i])
            ct = cos(th[i])
            for j in range(ph.shape[0]):
                out[i, j] = _measured(&uu[0], &vv[0], &rr[0],
                                      st * cos(ph[j]), st * sin(ph[j]), ct)
    return out_arr


def measured_entropy(u, v, r, double theta, double phi):
    cdef double[::1] uu = np.ascontiguousarray(u, dtype=np.float64)
    cdef double[::1] vv = np.ascontiguousarray(v, dtype=np.float64)
    cdef double[::1] rr = np.ascontiguousarray(r, dtype=np.float64).reshape(9)
    cdef double st = sin(theta)
    return _measured(&uu[0], &vv[0], &rr[0], st * cos(phi), st * sin(phi), cos(theta))
