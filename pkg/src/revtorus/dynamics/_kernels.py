"""Compiled inner loops.

A map is passed as ``(kind, prm)``: kind 0 is a linear map with
``prm = (a, b, c, d)``, kind 1 the standard map with ``prm[0] = sigma``.
Reversors use the same encoding with kind 1 meaning the standard-map
reversor.
"""

import math

import numpy as np
from numba import njit

LINEAR = 0
STANDARD = 1
TWO_PI = 2.0 * math.pi


@njit(cache=True, inline="always")
def _mod1(x):
    return x - math.floor(x)


@njit(cache=True)
def step(kind, prm, x, y):
    if kind == LINEAR:
        return _mod1(prm[0] * x + prm[1] * y), _mod1(prm[2] * x + prm[3] * y)
    k = prm[0] / TWO_PI
    y1 = y - k * math.sin(TWO_PI * x)
    return _mod1(x + y1), _mod1(y1)


@njit(cache=True)
def step_inv(kind, prm, x, y):
    if kind == LINEAR:
        # prm holds the matrix; its inverse is sign(det) * adj
        s = prm[0] * prm[3] - prm[1] * prm[2]
        return (
            _mod1((prm[3] * x - prm[1] * y) / s),
            _mod1((-prm[2] * x + prm[0] * y) / s),
        )
    k = prm[0] / TWO_PI
    x0 = x - y
    return _mod1(x0), _mod1(y + k * math.sin(TWO_PI * x0))


@njit(cache=True)
def jac(kind, prm, x, y):
    if kind == LINEAR:
        return prm[0], prm[1], prm[2], prm[3]
    g = prm[0] * math.cos(TWO_PI * x)
    return 1.0 - g, 1.0, -g, 1.0


@njit(cache=True, nogil=True)
def lyapunov_batch(kind, prm, xs, ys, vxs, vys, n, transient):
    """Benettin estimate with renormalization after every step."""
    m = xs.shape[0]
    out = np.empty(m)
    for i in range(m):
        x, y, vx, vy = xs[i], ys[i], vxs[i], vys[i]
        norm = math.hypot(vx, vy)
        vx /= norm
        vy /= norm
        acc = 0.0
        for t in range(transient + n):
            j00, j01, j10, j11 = jac(kind, prm, x, y)
            wx = j00 * vx + j01 * vy
            wy = j10 * vx + j11 * vy
            norm = math.hypot(wx, wy)
            vx = wx / norm
            vy = wy / norm
            if t >= transient:
                acc += math.log(norm)
            x, y = step(kind, prm, x, y)
        out[i] = acc / n
    return out


@njit(cache=True)
def _line_gap(ax, ay, bx, by):
    # sine of the angle between two unit vectors, as lines
    return abs(ax * by - ay * bx)


@njit(cache=True)
def oseledets(kind, prm, x, y, nmax, tol, min_iter):
    """Finite-time unstable/stable directions at (x, y).

    E^u: the product of Jacobians along the backward orbit applied to a
    fixed vector. E^s: the product of inverse Jacobians along the forward
    orbit. Products are renormalized each step; convergence is judged by
    the change in direction between consecutive steps.

    Returns (eux, euy, esx, esy, iterations_u, iterations_s); an iteration
    count of -1 flags no convergence.
    """
    v0x, v0y = math.cos(0.7137), math.sin(0.7137)
    res = np.zeros(6)

    # unstable: M_k = Df_{q_1} ... Df_{q_k}, q_j = f^{-j}(p)
    m00, m01, m10, m11 = 1.0, 0.0, 0.0, 1.0
    qx, qy = x, y
    px, py = v0x, v0y
    it_u = -1
    for k in range(1, nmax + 1):
        qx, qy = step_inv(kind, prm, qx, qy)
        j00, j01, j10, j11 = jac(kind, prm, qx, qy)
        n00 = m00 * j00 + m01 * j10
        n01 = m00 * j01 + m01 * j11
        n10 = m10 * j00 + m11 * j10
        n11 = m10 * j01 + m11 * j11
        s = math.sqrt(n00 * n00 + n01 * n01 + n10 * n10 + n11 * n11)
        m00, m01, m10, m11 = n00 / s, n01 / s, n10 / s, n11 / s
        wx = m00 * v0x + m01 * v0y
        wy = m10 * v0x + m11 * v0y
        w = math.hypot(wx, wy)
        wx /= w
        wy /= w
        gap = _line_gap(wx, wy, px, py)
        px, py = wx, wy
        if k >= min_iter and gap < tol:
            it_u = k
            break

    # stable: N_k = Df_{q_0}^{-1} ... Df_{q_{k-1}}^{-1}, q_j = f^j(p)
    m00, m01, m10, m11 = 1.0, 0.0, 0.0, 1.0
    qx, qy = x, y
    sx, sy = v0x, v0y
    it_s = -1
    for k in range(1, nmax + 1):
        j00, j01, j10, j11 = jac(kind, prm, qx, qy)
        dt = j00 * j11 - j01 * j10
        i00, i01, i10, i11 = j11 / dt, -j01 / dt, -j10 / dt, j00 / dt
        n00 = m00 * i00 + m01 * i10
        n01 = m00 * i01 + m01 * i11
        n10 = m10 * i00 + m11 * i10
        n11 = m10 * i01 + m11 * i11
        s = math.sqrt(n00 * n00 + n01 * n01 + n10 * n10 + n11 * n11)
        m00, m01, m10, m11 = n00 / s, n01 / s, n10 / s, n11 / s
        qx, qy = step(kind, prm, qx, qy)
        wx = m00 * v0x + m01 * v0y
        wy = m10 * v0x + m11 * v0y
        w = math.hypot(wx, wy)
        wx /= w
        wy /= w
        gap = _line_gap(wx, wy, sx, sy)
        sx, sy = wx, wy
        if k >= min_iter and gap < tol:
            it_s = k
            break

    res[0], res[1], res[2], res[3] = px, py, sx, sy
    res[4], res[5] = it_u, it_s
    return res


@njit(cache=True)
def _opnorm(a, b, c, d):
    f2 = a * a + b * b + c * c + d * d
    dt = a * d - b * c
    disc = max(f2 * f2 - 4.0 * dt * dt, 0.0)
    return math.sqrt(0.5 * (f2 + math.sqrt(disc)))


@njit(cache=True)
def log_norm_growth(kind, prm, xs, ys, nmax):
    """``out[i, n-1] = log ||Df^n_{p_i}||`` (operator norm) for n = 1..nmax."""
    m = xs.shape[0]
    out = np.empty((m, nmax))
    for i in range(m):
        x, y = xs[i], ys[i]
        p00, p01, p10, p11 = 1.0, 0.0, 0.0, 1.0
        logscale = 0.0
        for n in range(nmax):
            j00, j01, j10, j11 = jac(kind, prm, x, y)
            q00 = j00 * p00 + j01 * p10
            q01 = j00 * p01 + j01 * p11
            q10 = j10 * p00 + j11 * p10
            q11 = j10 * p01 + j11 * p11
            s = _opnorm(q00, q01, q10, q11)
            out[i, n] = logscale + math.log(s)
            logscale += math.log(s)
            p00, p01, p10, p11 = q00 / s, q01 / s, q10 / s, q11 / s
            x, y = step(kind, prm, x, y)
    return out
