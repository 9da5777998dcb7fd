"""Hot numeric kernels for the pencil-alignment Newton solver.

Two interchangeable implementations of the same iteration: a numba-jitted
per-restart loop (default) and a vectorized pure-numpy batch. Selection is
by the EIGENCUBICS_NO_NUMBA environment flag; both paths are importable for
benchmarking regardless of the flag.

Unknown vector u = (t, px, py, qx, qy, s) for the system demanding that
P = (px, py, 1) and Q = (qx, qy, 1) are eigenpoints of f + t*g and that
R = P + s*Q is one as well; two minor conditions per point make it square.
"""

from __future__ import annotations

import os

import numpy as np

NUMBA_DISABLED = os.environ.get("EIGENCUBICS_NO_NUMBA", "").strip().lower() in (
    "1", "true", "yes")

_BIG = 1e10
_STEP_TOL = 1e-14


# -- pure-numpy batch path ---------------------------------------------------------

def _monomials(x, y, z):
    return np.stack([x ** 3, x * x * y, x * y * y, y ** 3, x * x * z,
                     x * y * z, y * y * z, x * z * z, y * z * z, z ** 3], axis=-1)


def _dx_monomials(x, y, z):
    zero = np.zeros_like(x)
    return np.stack([3 * x * x, 2 * x * y, y * y, zero, 2 * x * z,
                     y * z, zero, z * z, zero, zero], axis=-1)


def _dy_monomials(x, y, z):
    zero = np.zeros_like(x)
    return np.stack([zero, x * x, 2 * x * y, 3 * y * y, zero,
                     x * z, 2 * y * z, zero, z * z, zero], axis=-1)


def _dz_monomials(x, y, z):
    zero = np.zeros_like(x)
    return np.stack([zero, zero, zero, zero, x * x,
                     x * y, y * y, 2 * x * z, 2 * y * z, 3 * z * z], axis=-1)


def newton_pencil_numpy(mf, mg, starts, max_iter=60, ftol=1e-11):
    """Batched Newton iteration; returns (solutions (B,6), converged (B,))."""
    u = np.array(starts, dtype=np.complex128)
    b = u.shape[0]
    ok = np.zeros(b, dtype=bool)
    active = np.ones(b, dtype=bool)
    mf = np.asarray(mf, dtype=np.complex128)
    mg = np.asarray(mg, dtype=np.complex128)
    for _ in range(max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        ua = u[idx]
        t = ua[:, 0]
        m = mf[None, :, :] + t[:, None, None] * mg[None, :, :]  # (n, 3, 10)
        one = np.ones_like(t)
        pts = [
            (ua[:, 1], ua[:, 2], one),
            (ua[:, 3], ua[:, 4], one),
            (ua[:, 1] + ua[:, 5] * ua[:, 3], ua[:, 2] + ua[:, 5] * ua[:, 4],
             one + ua[:, 5]),
        ]
        n = idx.size
        f_val = np.empty((n, 6), dtype=np.complex128)
        jac = np.zeros((n, 6, 6), dtype=np.complex128)
        for p_i, (x, y, z) in enumerate(pts):
            mono = _monomials(x, y, z)
            dxm = _dx_monomials(x, y, z)
            dym = _dy_monomials(x, y, z)
            dzm = _dz_monomials(x, y, z)
            for k in range(2):
                row = 2 * p_i + k
                mk = m[:, k, :]
                f_val[:, row] = np.sum(mk * mono, axis=1)
                jac[:, row, 0] = np.sum(mg[None, k, :] * mono, axis=1)
                gx = np.sum(mk * dxm, axis=1)
                gy = np.sum(mk * dym, axis=1)
                gz = np.sum(mk * dzm, axis=1)
                if p_i == 0:
                    jac[:, row, 1] = gx
                    jac[:, row, 2] = gy
                elif p_i == 1:
                    jac[:, row, 3] = gx
                    jac[:, row, 4] = gy
                else:
                    s = ua[:, 5]
                    jac[:, row, 1] = gx
                    jac[:, row, 2] = gy
                    jac[:, row, 3] = gx * s
                    jac[:, row, 4] = gy * s
                    jac[:, row, 5] = gx * ua[:, 3] + gy * ua[:, 4] + gz
        res = np.max(np.abs(f_val), axis=1)
        newly = res < ftol
        ok[idx[newly]] = True
        active[idx[newly]] = False
        live = ~newly
        if not np.any(live):
            continue
        il = idx[live]
        dets = np.linalg.det(jac[live])
        solvable = np.abs(dets) > 1e-280
        bad = il[~solvable]
        active[bad] = False
        good = il[solvable]
        if good.size == 0:
            continue
        try:
            step = np.linalg.solve(jac[live][solvable], f_val[live][solvable])
        except np.linalg.LinAlgError:  # pragma: no cover - det guard above
            active[good] = False
            continue
        u[good] = u[good] - step
        blown = ~np.all(np.isfinite(u[good]), axis=1) | (
            np.max(np.abs(u[good]), axis=1) > _BIG)
        active[good[blown]] = False
    return u, ok


# -- numba path -------------------------------------------------------------------

try:  # pragma: no cover - exercised indirectly through the dispatch below
    if NUMBA_DISABLED:
        raise ImportError("numba disabled by EIGENCUBICS_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn
        if args and callable(args[0]):
            return args[0]
        return wrap


@njit(cache=True)
def _eval10(v, x, y, z):
    return (v[0] * x * x * x + v[1] * x * x * y + v[2] * x * y * y
            + v[3] * y * y * y + v[4] * x * x * z + v[5] * x * y * z
            + v[6] * y * y * z + v[7] * x * z * z + v[8] * y * z * z
            + v[9] * z * z * z)


@njit(cache=True)
def _grad10(v, x, y, z):
    gx = (3 * v[0] * x * x + 2 * v[1] * x * y + v[2] * y * y
          + 2 * v[4] * x * z + v[5] * y * z + v[7] * z * z)
    gy = (v[1] * x * x + 2 * v[2] * x * y + 3 * v[3] * y * y
          + v[5] * x * z + 2 * v[6] * y * z + v[8] * z * z)
    gz = (v[4] * x * x + v[5] * x * y + v[6] * y * y
          + 2 * v[7] * x * z + 2 * v[8] * y * z + 3 * v[9] * z * z)
    return gx, gy, gz


@njit(cache=True)
def _solve6(a, b):
    """In-place Gaussian elimination with partial pivoting; False if singular."""
    n = 6
    for col in range(n):
        piv = col
        best = abs(a[col, col])
        for r in range(col + 1, n):
            cand = abs(a[r, col])
            if cand > best:
                best = cand
                piv = r
        if best < 1e-280:
            return False
        if piv != col:
            for c in range(n):
                tmp = a[col, c]
                a[col, c] = a[piv, c]
                a[piv, c] = tmp
            tmp = b[col]
            b[col] = b[piv]
            b[piv] = tmp
        inv = 1.0 / a[col, col]
        for r in range(col + 1, n):
            factor = a[r, col] * inv
            if factor != 0:
                for c in range(col, n):
                    a[r, c] -= factor * a[col, c]
                b[r] -= factor * b[col]
    for r in range(n - 1, -1, -1):
        acc = b[r]
        for c in range(r + 1, n):
            acc -= a[r, c] * b[c]
        b[r] = acc / a[r, r]
    return True


@njit(cache=True)
def newton_pencil_numba(mf, mg, starts, max_iter=60, ftol=1e-11):
    b = starts.shape[0]
    out = starts.copy()
    ok = np.zeros(b, dtype=np.bool_)
    f_val = np.empty(6, dtype=np.complex128)
    jac = np.empty((6, 6), dtype=np.complex128)
    for bi in range(b):
        u = starts[bi].copy()
        converged = False
        for _ in range(max_iter):
            t, px, py, qx, qy, s = u[0], u[1], u[2], u[3], u[4], u[5]
            rx, ry, rz = px + s * qx, py + s * qy, 1.0 + s
            for r in range(6):
                for c in range(6):
                    jac[r, c] = 0
            worst = 0.0
            for p_i in range(3):
                if p_i == 0:
                    x, y, z = px, py, 1.0 + 0j
                elif p_i == 1:
                    x, y, z = qx, qy, 1.0 + 0j
                else:
                    x, y, z = rx, ry, rz
                for k in range(2):
                    row = 2 * p_i + k
                    m = mf[k] + t * mg[k]
                    val = _eval10(m, x, y, z)
                    f_val[row] = val
                    av = abs(val)
                    if av > worst:
                        worst = av
                    jac[row, 0] = _eval10(mg[k], x, y, z)
                    gx, gy, gz = _grad10(m, x, y, z)
                    if p_i == 0:
                        jac[row, 1] = gx
                        jac[row, 2] = gy
                    elif p_i == 1:
                        jac[row, 3] = gx
                        jac[row, 4] = gy
                    else:
                        jac[row, 1] = gx
                        jac[row, 2] = gy
                        jac[row, 3] = gx * s
                        jac[row, 4] = gy * s
                        jac[row, 5] = gx * qx + gy * qy + gz
            if worst < ftol:
                converged = True
                break
            a = jac.copy()
            rhs = f_val.copy()
            if not _solve6(a, rhs):
                break
            bad = False
            maxu = 0.0
            for c in range(6):
                u[c] = u[c] - rhs[c]
                au = abs(u[c])
                if au > maxu:
                    maxu = au
                if not np.isfinite(u[c].real) or not np.isfinite(u[c].imag):
                    bad = True
            if bad or maxu > _BIG:
                break
        out[bi] = u
        ok[bi] = converged
    return out, ok


def newton_pencil(mf, mg, starts, max_iter=60, ftol=1e-11):
    """Dispatch to the jitted kernel or the numpy fallback."""
    mf = np.ascontiguousarray(mf, dtype=np.complex128)
    mg = np.ascontiguousarray(mg, dtype=np.complex128)
    starts = np.ascontiguousarray(starts, dtype=np.complex128)
    if HAVE_NUMBA:
        return newton_pencil_numba(mf, mg, starts, max_iter, ftol)
    return newton_pencil_numpy(mf, mg, starts, max_iter, ftol)
