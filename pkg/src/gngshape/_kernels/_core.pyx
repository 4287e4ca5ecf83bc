# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython implementations of the hot kernels.

Must stay arithmetically identical to `fallback.py`: same operations in the
same order, so the two backends agree bit for bit.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY

NAME = "cython"


def gng_block(double[:, ::1] pos, double[::1] err, cnp.uint8_t[::1] alive,
              int[:, ::1] age, double[:, ::1] signals,
              double eps_b, double eps_n, int age_max, double decay):
    """Present a block of signals to the GNG state (mutates in place)."""
    cdef Py_ssize_t cap = pos.shape[0]
    cdef Py_ssize_t nsig = signals.shape[0]
    cdef Py_ssize_t t, i, j, s1, s2
    cdef double x0, x1, dx, dy, d2, best1, best2, d1
    cdef bint isolated

    for t in range(nsig):
        x0 = signals[t, 0]
        x1 = signals[t, 1]

        s1 = -1
        s2 = -1
        best1 = INFINITY
        best2 = INFINITY
        for i in range(cap):
            if not alive[i]:
                continue
            dx = pos[i, 0] - x0
            dy = pos[i, 1] - x1
            d2 = dx * dx + dy * dy
            if d2 < best1:
                best2 = best1
                s2 = s1
                best1 = d2
                s1 = i
            elif d2 < best2:
                best2 = d2
                s2 = i
        d1 = best1

        for j in range(cap):
            if age[s1, j] >= 0:
                age[s1, j] += 1
                age[j, s1] += 1

        err[s1] += d1

        pos[s1, 0] += eps_b * (x0 - pos[s1, 0])
        pos[s1, 1] += eps_b * (x1 - pos[s1, 1])
        for j in range(cap):
            # age was just incremented, so neighbors of s1 have age >= 1
            if age[s1, j] >= 1:
                pos[j, 0] += eps_n * (x0 - pos[j, 0])
                pos[j, 1] += eps_n * (x1 - pos[j, 1])

        age[s1, s2] = 0
        age[s2, s1] = 0

        for j in range(cap):
            if age[s1, j] > age_max:
                age[s1, j] = -1
                age[j, s1] = -1
                isolated = True
                for i in range(cap):
                    if age[j, i] >= 0:
                        isolated = False
                        break
                if isolated:
                    alive[j] = 0
                    err[j] = 0.0

        for j in range(cap):
            if alive[j]:
                err[j] *= decay


def dp_cost(double[:, ::1] cost, double gap, Py_ssize_t shift=0):
    """Minimum cost of an order-preserving matching with symmetric gaps."""
    cdef Py_ssize_t na = cost.shape[0]
    cdef Py_ssize_t nb = cost.shape[1]
    cdef Py_ssize_t i, j, r
    cdef double diag, up, cand, v, m, result

    prev_arr = np.empty(nb + 1, dtype=np.float64)
    cur_arr = np.empty(nb + 1, dtype=np.float64)
    cdef double[::1] prev = prev_arr
    cdef double[::1] cur = cur_arr
    cdef double[::1] tmp

    for j in range(nb + 1):
        prev[j] = gap * j

    for i in range(1, na + 1):
        r = (i - 1 + shift) % na
        m = i * gap
        cur[0] = i * gap
        for j in range(1, nb + 1):
            diag = prev[j - 1] + cost[r, j - 1]
            up = prev[j] + gap
            cand = diag if diag <= up else up
            v = cand - j * gap
            if v < m:
                m = v
            cur[j] = m + j * gap
        tmp = prev
        prev = cur
        cur = tmp

    result = prev[nb]
    return result
