"""Numeric cores shared by evaluation, reparametrization, and the solver.

Every function here is written as explicit loops over C-contiguous
float64 arrays so the bodies compile under numba's nopython mode and run
unchanged as pure Python when the JIT is disabled (see _jit). No BLAS
calls: results are bit-identical across both backends.

Coefficient layout convention: univariate data is (n+1, K) with columns
processed independently, which lets bivariate tensor grids pass through
as reshaped column blocks.
"""

import numpy as np

from ._jit import njit


@njit
def horner_cols(c, t):
    """Evaluate power-basis columns at scalar t."""
    n1, k = c.shape
    out = np.empty(k)
    for j in range(k):
        acc = c[n1 - 1, j]
        for i in range(n1 - 2, -1, -1):
            acc = acc * t + c[i, j]
        out[j] = acc
    return out


@njit
def decasteljau_cols(c, t):
    """Evaluate Bernstein-basis columns at scalar t (stable outside [0,1] too)."""
    n1, k = c.shape
    work = c.copy()
    s = 1.0 - t
    for r in range(1, n1):
        for i in range(n1 - r):
            for j in range(k):
                work[i, j] = s * work[i, j] + t * work[i + 1, j]
    out = np.empty(k)
    for j in range(k):
        out[j] = work[0, j]
    return out


@njit
def clenshaw_cols(c, t):
    """Evaluate Chebyshev-basis columns at scalar t."""
    n1, k = c.shape
    out = np.empty(k)
    two_t = 2.0 * t
    for j in range(k):
        b1 = 0.0
        b2 = 0.0
        for i in range(n1 - 1, 0, -1):
            b = two_t * b1 - b2 + c[i, j]
            b2 = b1
            b1 = b
        out[j] = t * b1 - b2 + c[0, j]
    return out


@njit
def power_affine_cols(c, a, b):
    """Coefficients of p(a*t + b) for each power-basis column of c.

    Synthetic-division composition: exact for the affine argument, O(n^2)
    per column.
    """
    n1, k = c.shape
    out = np.zeros((n1, k))
    for j in range(k):
        out[0, j] = c[n1 - 1, j]
        deg = 0
        for i in range(n1 - 2, -1, -1):
            for m in range(deg + 1, 0, -1):
                out[m, j] = a * out[m - 1, j] + b * out[m, j]
            out[0, j] = b * out[0, j] + c[i, j]
            deg += 1
    return out


@njit
def cheb_affine_rows(n, a, b):
    """Rows lam[i] = Chebyshev coefficients of T_i(a*t + b), i = 0..n.

    Built from the three-term recurrence T_{i+1}(u) = 2u T_i(u) - T_{i-1}(u)
    with u = a*t + b, re-expanding t*T_k via T_{k+1} and T_{k-1}.
    """
    lam = np.zeros((n + 1, n + 1))
    lam[0, 0] = 1.0
    if n >= 1:
        lam[1, 0] = b
        lam[1, 1] = a
    for i in range(1, n):
        # 2*(a*t + b) * T_i(a*t+b) contributions
        lam[i + 1, 1] += 2.0 * a * lam[i, 0]
        for q in range(1, i + 1):
            lam[i + 1, q + 1] += a * lam[i, q]
            lam[i + 1, q - 1] += a * lam[i, q]
        for q in range(i + 1):
            lam[i + 1, q] += 2.0 * b * lam[i, q]
        # minus T_{i-1}(a*t+b)
        for q in range(i):
            lam[i + 1, q] -= lam[i - 1, q]
    return lam


@njit
def mat_apply_cols(m, c):
    """out = m @ c with explicit loops (no BLAS, backend-stable)."""
    rows, inner = m.shape
    _, k = c.shape
    out = np.zeros((rows, k))
    for i in range(rows):
        for p in range(inner):
            mip = m[i, p]
            if mip != 0.0:
                for j in range(k):
                    out[i, j] += mip * c[p, j]
    return out


@njit
def mat_t_apply_cols(m, c):
    """out = m.T @ c, i.e. out[q] = sum_i m[i, q] * c[i]."""
    inner, cols = m.shape
    _, k = c.shape
    out = np.zeros((cols, k))
    for i in range(inner):
        for q in range(cols):
            miq = m[i, q]
            if miq != 0.0:
                for j in range(k):
                    out[q, j] += miq * c[i, j]
    return out


@njit
def bernstein_patch_matrix(n, p, q, e, f):
    """Matrix M with M[k, i] = coefficient of u^k (1-u)^(n-k) in
    (p*u + q*(1-u))^i * (e*u + f*(1-u))^(n-i).

    Used for Bernstein reparametrization: the patch endpoints map to
    p = hi, q = lo on the first factor and e = 1-hi, f = 1-lo on the
    second. Homogeneous Pascal-style build, exact in float64 arithmetic.
    """
    # pw[i, s]: coeff of u^s (1-u)^(i-s) in (p*u + q*(1-u))^i
    pw = np.zeros((n + 1, n + 1))
    ef = np.zeros((n + 1, n + 1))
    pw[0, 0] = 1.0
    ef[0, 0] = 1.0
    for i in range(1, n + 1):
        for s in range(i + 1):
            acc = q * pw[i - 1, s]
            if s > 0:
                acc += p * pw[i - 1, s - 1]
            pw[i, s] = acc
            acc2 = f * ef[i - 1, s]
            if s > 0:
                acc2 += e * ef[i - 1, s - 1]
            ef[i, s] = acc2
    out = np.zeros((n + 1, n + 1))
    for i in range(n + 1):
        for s in range(i + 1):
            ps = pw[i, s]
            if ps != 0.0:
                for t in range(n - i + 1):
                    out[s + t, i] += ps * ef[n - i, t]
    return out


@njit
def zonotope_origin_inside(cx, cy, gens, tol):
    """Exact 2-D zonotope membership test for the origin.

    A point is inside iff for every edge-normal direction (perpendicular
    to some generator) and for both axis directions, the center offset
    along the direction does not exceed the total generator reach. Axis
    directions cover the degenerate point/segment cases.
    """
    g = gens.shape[0]
    for d in range(g + 2):
        if d < g:
            dx = -gens[d, 1]
            dy = gens[d, 0]
            if dx == 0.0 and dy == 0.0:
                continue
        elif d == g:
            dx = 1.0
            dy = 0.0
        else:
            dx = 0.0
            dy = 1.0
        reach = 0.0
        for i in range(g):
            reach += abs(dx * gens[i, 0] + dy * gens[i, 1])
        if abs(dx * cx + dy * cy) > reach + tol:
            return False
    return True


@njit
def abs_sum_tail_cols(c):
    """For each column: sum of |entries| beyond the first row."""
    n1, k = c.shape
    out = np.zeros(k)
    for j in range(k):
        acc = 0.0
        for i in range(1, n1):
            acc += abs(c[i, j])
        out[j] = acc
    return out


def warmup():
    """Trigger JIT compilation of every kernel on tiny inputs."""
    c = np.array([[1.0, 2.0], [0.5, -1.0]])
    horner_cols(c, 0.3)
    decasteljau_cols(c, 0.3)
    clenshaw_cols(c, 0.3)
    power_affine_cols(c, 0.5, 0.25)
    cheb_affine_rows(3, 0.5, 0.25)
    m = np.eye(2)
    mat_apply_cols(m, c)
    mat_t_apply_cols(m, c)
    bernstein_patch_matrix(2, 0.75, 0.25, 0.25, 0.75)
    zonotope_origin_inside(0.1, 0.1, np.array([[1.0, 0.0], [0.0, 1.0]]), 0.0)
    abs_sum_tail_cols(c)
