"""Hot loops behind the Green's function evaluators.

Each kernel has a numba version (``*_nb``) and a vectorised numpy version
(``*_np``). The public names at the bottom pick one according to
:data:`sharpinterp._accel.USE_NUMBA`.
"""
import math

import numpy as np

from . import specfun
from ._accel import USE_NUMBA, jit

# ---------------------------------------------------------------- lattice


@jit
def _lattice_counts_nb(n, N):
    # multiplicities of |k|^2 over 0 < |k|_inf <= N in Z^n
    top = n * N * N
    cnt = np.zeros(top + 1, dtype=np.int64)
    if n == 1:
        for i in range(-N, N + 1):
            cnt[i * i] += 1
    elif n == 2:
        for i in range(-N, N + 1):
            for j in range(-N, N + 1):
                cnt[i * i + j * j] += 1
    else:
        for i in range(-N, N + 1):
            for j in range(-N, N + 1):
                s = i * i + j * j
                for k in range(-N, N + 1):
                    cnt[s + k * k] += 1
    cnt[0] -= 1
    return cnt


def _lattice_counts_np(n, N):
    one = np.zeros(N * N + 1, dtype=np.int64)
    sq = np.arange(0, N + 1) ** 2
    one[sq] = 2
    one[0] = 1
    cnt = one
    for _ in range(n - 1):
        new = np.zeros(cnt.size + N * N, dtype=np.int64)
        for i in range(N + 1):
            w = 1 if i == 0 else 2
            new[i * i:i * i + cnt.size] += w * cnt
        cnt = new
    cnt = cnt.copy()
    cnt[0] -= 1
    return cnt


@jit
def _radial_sum_nb(um, ul, cnt, lam, need_g):
    # sum cnt / (u^m + lam u^l) and sum cnt u^l / (u^m + lam u^l)^2, per lam
    f = np.empty(lam.size)
    g = np.zeros(lam.size)
    for a in range(lam.size):
        acc = 0.0
        acc2 = 0.0
        for i in range(um.size - 1, -1, -1):
            r = 1.0 / (um[i] + lam[a] * ul[i])
            acc += cnt[i] * r
            if need_g:
                acc2 += cnt[i] * ul[i] * r * r
        f[a] = acc
        g[a] = acc2
    return f, g


def _radial_sum_np(um, ul, cnt, lam, need_g):
    f = np.empty(lam.size)
    g = np.zeros(lam.size)
    for a in range(lam.size):
        r = 1.0 / (um + lam[a] * ul)
        f[a] = np.sum((cnt * r)[::-1])
        if need_g:
            g[a] = np.sum((cnt * ul * r * r)[::-1])
    return f, g


@jit
def _k0_lattice_nb(u, cnt, lam):
    # T2 Bessel sums: sum K0(z) and sum (K0(z) + z K1(z)/2), z = 2 pi sqrt(lam u)
    s0 = np.zeros(lam.size)
    s1 = np.zeros(lam.size)
    for a in range(lam.size):
        r = 2.0 * math.pi * math.sqrt(lam[a])
        acc0 = 0.0
        acc1 = 0.0
        for i in range(u.size - 1, -1, -1):
            z = r * math.sqrt(u[i])
            if z > 700.0:
                continue
            k0, k1 = specfun._k01(z)
            acc0 += cnt[i] * k0
            acc1 += cnt[i] * (k0 + 0.5 * z * k1)
        s0[a] = acc0
        s1[a] = acc1
    return s0, s1


def _k0_lattice_np(u, cnt, lam):
    s0 = np.zeros(lam.size)
    s1 = np.zeros(lam.size)
    for a in range(lam.size):
        z = 2.0 * math.pi * np.sqrt(lam[a] * u)
        keep = z <= 700.0
        kk = np.array([specfun._k01(float(t)) for t in z[keep]]).reshape(-1, 2)
        c = cnt[keep]
        s0[a] = np.sum((c * kk[:, 0])[::-1])
        s1[a] = np.sum((c * (kk[:, 0] + 0.5 * z[keep] * kk[:, 1]))[::-1])
    return s0, s1


@jit
def _beta3_sum_nb(u, cnt):
    acc = 0.0
    for i in range(u.size - 1, -1, -1):
        r = math.sqrt(u[i])
        acc += cnt[i] * (math.exp(-u[i]) / u[i] + math.pi * specfun._erfc(math.pi * r) / r)
    return acc


def _beta3_sum_np(u, cnt):
    r = np.sqrt(u)
    e = np.array([specfun._erfc(math.pi * float(t)) for t in r])
    return float(np.sum((cnt * (np.exp(-u) / u + math.pi * e / r))[::-1]))


# ---------------------------------------------------------------- spheres


@jit
def _sphere2_partial_nb(m, lam, N, s):
    out = np.empty(lam.size)
    for a in range(lam.size):
        acc = 0.0
        for n in range(N, 0, -1):
            d = (n * (n + 1.0)) ** m + lam[a]
            acc += (2.0 * n + 1.0) / d ** s
        out[a] = acc
    return out


def _sphere2_partial_np(m, lam, N, s):
    n = np.arange(N, 0, -1, dtype=float)
    w = 2.0 * n + 1.0
    y = (n * (n + 1.0)) ** m
    return np.array([np.sum(w / (y + t) ** s) for t in lam])


@jit
def _sphere3_partial_nb(lam, J, s):
    # sum_{j=2}^{J} j^2 / ((j^2-1) (j^2-1+lam)^s)
    out = np.empty(lam.size)
    for a in range(lam.size):
        acc = 0.0
        for j in range(J, 1, -1):
            e = j * j - 1.0
            acc += j * j / (e * (e + lam[a]) ** s)
        out[a] = acc
    return out


def _sphere3_partial_np(lam, J, s):
    j = np.arange(J, 1, -1, dtype=float)
    e = j * j - 1.0
    return np.array([np.sum(j * j / (e * (e + t) ** s)) for t in lam])


@jit
def _sphere2_h_nb(m, nu, N):
    # nu^(2m-2) sum (2n+1)/(nu^(2m) + (n(n+1))^m), summed from the tail up
    out = np.empty(nu.size)
    for a in range(nu.size):
        v2m = nu[a] ** (2.0 * m)
        acc = 0.0
        for n in range(N, 0, -1):
            acc += (2.0 * n + 1.0) / (v2m + (n * (n + 1.0)) ** m)
        out[a] = nu[a] ** (2.0 * m - 2.0) * acc
    return out


def _sphere2_h_np(m, nu, N):
    n = np.arange(N, 0, -1, dtype=float)
    w = 2.0 * n + 1.0
    y = (n * (n + 1.0)) ** m
    return np.array([v ** (2.0 * m - 2.0) * np.sum(w / (v ** (2.0 * m) + y)) for v in nu])


# ---------------------------------------------------------------- intervals


@jit
def _interval4_partial_nb(xi, lam, N, s):
    out = np.empty(lam.size)
    p4 = math.pi ** 4
    w = np.empty(N + 1)
    d = np.empty(N + 1)
    for n in range(1, N + 1):
        sn = math.sin(math.pi * n * xi)
        w[n] = sn * sn
        d[n] = p4 * float(n) ** 4
    for a in range(lam.size):
        acc = 0.0
        for n in range(N, 0, -1):
            t = d[n] + lam[a]
            acc += w[n] / (t if s == 1 else t * t)
        out[a] = 2.0 * acc
    return out


def _interval4_partial_np(xi, lam, N, s):
    n = np.arange(N, 0, -1, dtype=float)
    w = np.sin(np.pi * n * xi) ** 2
    d = np.pi ** 4 * n ** 4
    return np.array([2.0 * np.sum(w / (d + t) ** s) for t in lam])


@jit
def _f0(x):
    x = abs(x)
    return math.exp(-x) * (math.cos(x) + math.sin(x))


@jit
def _s_function_nb(a, xi, N):
    acc = 0.0
    w = 2.0 * math.pi * a
    for n in range(N, 0, -1):
        acc += 2.0 * _f0(w * n)
        acc -= _f0(w * (n + xi)) + _f0(w * (-n + xi))
    return acc + 1.0 - _f0(w * xi)


def _s_function_np(a, xi, N):
    n = np.arange(N, 0, -1, dtype=float)
    w = 2.0 * np.pi * a

    def f0(x):
        x = np.abs(x)
        return np.exp(-x) * (np.cos(x) + np.sin(x))

    acc = np.sum(2.0 * f0(w * n) - f0(w * (n + xi)) - f0(w * (xi - n)))
    return float(acc + 1.0 - f0(w * xi))


if USE_NUMBA:
    lattice_counts = _lattice_counts_nb
    radial_sum = _radial_sum_nb
    k0_lattice = _k0_lattice_nb
    beta3_sum = _beta3_sum_nb
    sphere2_partial = _sphere2_partial_nb
    sphere3_partial = _sphere3_partial_nb
    sphere2_h = _sphere2_h_nb
    interval4_partial = _interval4_partial_nb
    s_function = _s_function_nb
else:
    lattice_counts = _lattice_counts_np
    radial_sum = _radial_sum_np
    k0_lattice = _k0_lattice_np
    beta3_sum = _beta3_sum_np
    sphere2_partial = _sphere2_partial_np
    sphere3_partial = _sphere3_partial_np
    sphere2_h = _sphere2_h_np
    interval4_partial = _interval4_partial_np
    s_function = _s_function_np
