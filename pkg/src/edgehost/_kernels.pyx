# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled trial loops: perturbed-leader decisions, retro-renting, and the
offline dynamic program. Mirrors the pure-Python reference arithmetic
operation for operation (same expressions, same order) so both backends
produce bit-identical results.
"""

import numpy as np

cimport cython
from libc.math cimport fabs, sqrt

BACKEND_NAME = "cython"


def ftpl_family_run(double[::1] r, ladder, params, double[::1] gamma,
                    double eta_scale, int eta_offset,
                    bint use_wait, double beta, double delta):
    from .policies import wait_threshold_coeff

    cdef Py_ssize_t T = r.shape[0]
    cdef Py_ssize_t K = ladder.K
    cdef double[::1] alphas = ladder.alpha_array
    cdef double[::1] gs = ladder.g_array
    cdef double c = params.c
    cdef double wait_coeff = 0.0
    if use_wait:
        wait_coeff = wait_threshold_coeff(params.kappa, beta, delta, params.M)

    levels_arr = np.empty(T, dtype=np.int64)
    cdef long long[::1] levels = levels_arr
    theta_arr = np.zeros(K, dtype=np.float64)
    cdef double[::1] theta = theta_arr
    cs_arr = np.empty(K, dtype=np.float64)
    cdef double[::1] cs = cs_arr

    cdef Py_ssize_t i, t, best
    cdef double eta, v, best_val, rt, gap, tmax, tmin
    cdef bint waiting = use_wait
    cdef long long wait_end = 0 if use_wait else -1

    for i in range(K):
        cs[i] = c * alphas[i]

    for t in range(1, T + 1):
        if waiting:
            levels[t - 1] = 0
        else:
            eta = eta_scale * sqrt(<double>(t - eta_offset))
            best = 0
            best_val = theta[0] + eta * gamma[0]
            for i in range(1, K):
                v = theta[i] + eta * gamma[i]
                if v < best_val:
                    best = i
                    best_val = v
            levels[t - 1] = best
        rt = r[t - 1]
        for i in range(K):
            theta[i] = theta[i] + (cs[i] + rt * gs[i])
        if waiting:
            tmax = theta[0]
            tmin = theta[0]
            for i in range(1, K):
                if theta[i] > tmax:
                    tmax = theta[i]
                if theta[i] < tmin:
                    tmin = theta[i]
            gap = tmax - tmin
            if t * wait_coeff < gap * gap:
                waiting = False
                wait_end = t
    return levels_arr, int(wait_end)


def alpha_rr_run(double[::1] r, ladder, params):
    cdef Py_ssize_t T = r.shape[0]
    cdef Py_ssize_t K = ladder.K
    if K > 3:
        raise ValueError("retro-renting is defined for at most one partial level (K <= 3)")
    cdef double[::1] alphas = ladder.alpha_array
    cdef double[::1] gs = ladder.g_array
    cdef double c = params.c
    cdef double M = params.M

    levels_arr = np.empty(T, dtype=np.int64)
    cdef long long[::1] levels = levels_arr

    cdef double[3] cav, cda, dg, pen, hmin
    cdef Py_ssize_t v, cur = 0, best_v
    cdef long long W = 0
    cdef double S = 0.0
    cdef double a_cur, g_cur, cand, cost, best_cost, cur_cost, rt
    cdef Py_ssize_t t

    for v in range(K):
        cav[v] = c * alphas[v]

    # window state for the current level
    a_cur = alphas[cur]
    g_cur = gs[cur]
    for v in range(K):
        cda[v] = c * (a_cur - alphas[v])
        dg[v] = g_cur - gs[v]
        pen[v] = M * fabs(alphas[v] - a_cur) if v != cur else 0.0
        hmin[v] = 0.0

    for t in range(1, T + 1):
        levels[t - 1] = cur
        for v in range(K):
            cand = cda[v] * W + dg[v] * S
            if cand < hmin[v]:
                hmin[v] = cand
        rt = r[t - 1]
        S = S + rt
        W += 1
        best_v = -1
        best_cost = 0.0
        cur_cost = 0.0
        for v in range(K):
            cost = hmin[v] + cav[v] * W + gs[v] * S + pen[v]
            if v == cur:
                cur_cost = cost
            elif best_v < 0 or cost < best_cost:
                best_v = v
                best_cost = cost
        if best_v >= 0 and best_cost <= cur_cost:
            cur = best_v
            a_cur = alphas[cur]
            g_cur = gs[cur]
            for v in range(K):
                cda[v] = c * (a_cur - alphas[v])
                dg[v] = g_cur - gs[v]
                pen[v] = M * fabs(alphas[v] - a_cur) if v != cur else 0.0
                hmin[v] = 0.0
            W = 0
            S = 0.0
    return levels_arr


def offline_dp(double[::1] r, ladder, params):
    cdef Py_ssize_t T = r.shape[0]
    cdef Py_ssize_t K = ladder.K
    cdef double[::1] alphas = ladder.alpha_array
    cdef double[::1] gs = ladder.g_array
    cdef double c = params.c
    cdef double M = params.M

    if T == 0:
        return np.empty(0, dtype=np.int64), 0.0

    prev_arr = np.zeros(K, dtype=np.float64)
    cur_arr = np.zeros(K, dtype=np.float64)
    cdef double[::1] prev = prev_arr
    cdef double[::1] cur = cur_arr
    ptr_arr = np.empty((T, K), dtype=np.int64)
    cdef long long[:, ::1] ptr = ptr_arr
    sched_arr = np.empty(T, dtype=np.int64)
    cdef long long[::1] schedule = sched_arr

    cdef Py_ssize_t t, i, j, best, best_j
    cdef double rt, base, aj, d, slot, val, best_val

    for t in range(T):
        rt = r[t]
        for j in range(K):
            base = c * alphas[j] + gs[j] * rt
            if t == 0:
                d = alphas[j] - alphas[0]
                cur[j] = (M * d if d > 0.0 else 0.0) + base
                ptr[t, j] = 0
                continue
            best = -1
            best_val = 0.0
            aj = alphas[j]
            for i in range(K):
                d = aj - alphas[i]
                slot = base + M * d if d > 0.0 else base
                val = prev[i] + slot
                if best < 0 or val < best_val:
                    best = i
                    best_val = val
            cur[j] = best_val
            ptr[t, j] = best
        prev, cur = cur, prev

    best_j = 0
    for j in range(1, K):
        if prev[j] < prev[best_j]:
            best_j = j
    j = best_j
    for t in range(T - 1, -1, -1):
        schedule[t] = j
        j = ptr[t, j]
    return sched_arr, float(prev[best_j])
