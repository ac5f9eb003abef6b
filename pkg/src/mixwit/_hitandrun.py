"""Geodesic hit-and-run on the constant-purity slice of the probability simplex.

The slice is the (n-2)-sphere of radius ``r`` around the centroid, inside the
sum-zero hyperplane, clipped to the non-negative orthant. Each step draws a
uniformly random great circle through the current point and moves to a
uniform point of the circle's feasible part. The kernel is symmetric in the
surface measure, so the uniform law on the slice is stationary. A random
transposition of two coordinates is applied after every move; the slice is
permutation invariant and this speeds up travel between its disconnected
pieces at high purity.
"""

import numba
import numpy as np

TWO_PI = 2.0 * np.pi


@numba.njit(cache=True)
def _renormalize(x, center, radius):
    n = x.size
    d = x - center
    d -= d.sum() / n
    d *= radius / np.sqrt(np.sum(d * d))
    return center + d


@numba.njit(cache=True)
def _free_angle(u, t, h, pick, starts, ends, gap_lo, gap_hi):
    # Forbidden arcs are |theta - phi_i - pi| < w_i for every component i with
    # hypot(u_i, t_i) > h; returns the angle at fraction ``pick`` of the
    # remaining free length (theta = 0 is the current point). The four trailing
    # arrays are scratch buffers of length >= 2n + 1.
    n = u.size
    h2 = h * h
    m = 0
    for i in range(n):
        rho2 = u[i] * u[i] + t[i] * t[i]
        if rho2 <= h2:
            continue
        w = np.arccos(h / np.sqrt(rho2))
        s = (np.arctan2(t[i], u[i]) + np.pi - w) % TWO_PI
        e = s + 2.0 * w
        if e > TWO_PI:
            starts[m] = s
            ends[m] = TWO_PI
            m += 1
            starts[m] = 0.0
            ends[m] = e - TWO_PI
            m += 1
        else:
            starts[m] = s
            ends[m] = e
            m += 1
    if m == 0:
        return pick * TWO_PI
    # insertion sort: m is small in practice
    for a in range(1, m):
        sa = starts[a]
        ea = ends[a]
        b = a - 1
        while b >= 0 and starts[b] > sa:
            starts[b + 1] = starts[b]
            ends[b + 1] = ends[b]
            b -= 1
        starts[b + 1] = sa
        ends[b + 1] = ea
    g = 0
    cursor = 0.0
    for k in range(m):
        if starts[k] > cursor:
            gap_lo[g] = cursor
            gap_hi[g] = starts[k]
            g += 1
        if ends[k] > cursor:
            cursor = ends[k]
    if cursor < TWO_PI:
        gap_lo[g] = cursor
        gap_hi[g] = TWO_PI
        g += 1
    total = 0.0
    for k in range(g):
        total += gap_hi[k] - gap_lo[k]
    if total <= 0.0:
        return 0.0
    target = pick * total
    for k in range(g):
        length = gap_hi[k] - gap_lo[k]
        if target <= length:
            return gap_lo[k] + target
        target -= length
    return gap_hi[g - 1]


@numba.njit(cache=True)
def run_chain(x0, radius, normals, picks, swaps, burn_in, thinning, out):
    """Advance the chain from ``x0``; fill ``out`` with thinned states.

    ``normals`` has one row of standard normals per step, ``picks`` one
    uniform per step and ``swaps`` two uniforms per step. The first sample is
    taken after ``burn_in`` steps, the following ones every ``thinning``.
    """
    n = x0.size
    c = 1.0 / n
    h = 1.0 / (n * radius)
    center = np.full(n, c)
    x = _renormalize(x0.copy(), center, radius)
    u = np.empty(n)
    t = np.empty(n)
    starts = np.empty(2 * n + 1)
    ends = np.empty(2 * n + 1)
    gap_lo = np.empty(2 * n + 1)
    gap_hi = np.empty(2 * n + 1)
    k = 0
    for step in range(normals.shape[0]):
        g = normals[step]
        gmean = 0.0
        for i in range(n):
            u[i] = (x[i] - c) / radius
            gmean += g[i]
        gmean /= n
        gu = 0.0
        for i in range(n):
            t[i] = g[i] - gmean
            gu += t[i] * u[i]
        tnorm = 0.0
        for i in range(n):
            t[i] -= gu * u[i]
            tnorm += t[i] * t[i]
        tnorm = np.sqrt(tnorm)
        if tnorm > 0.0:
            for i in range(n):
                t[i] /= tnorm
            theta = _free_angle(u, t, h, picks[step], starts, ends, gap_lo, gap_hi)
            ct = np.cos(theta)
            st = np.sin(theta)
            dsum = 0.0
            for i in range(n):
                x[i] = radius * (ct * u[i] + st * t[i])
                dsum += x[i]
            dsum /= n
            dnorm = 0.0
            for i in range(n):
                x[i] -= dsum
                dnorm += x[i] * x[i]
            scale = radius / np.sqrt(dnorm)
            for i in range(n):
                x[i] = c + x[i] * scale
        i = int(swaps[step, 0] * n)
        j = int(swaps[step, 1] * n)
        tmp = x[i]
        x[i] = x[j]
        x[j] = tmp
        done = step + 1
        if done >= burn_in and (done - burn_in) % thinning == 0 and k < out.shape[0]:
            out[k] = x
            k += 1
    return k
