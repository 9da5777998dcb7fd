"""Floating-point eigenpoint solver and the aligned-pencil degree experiment."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import (_dx_monomials, _dy_monomials, _dz_monomials, _monomials,
                       newton_pencil)
from .eigenscheme import Cubic, positive_dim_analysis
from .errors import PositiveDimensionalError, SolverError
from .forms import CUBIC_BASIS
from .geometry import ProjPoint
from .scalars import Scalar


@dataclass(frozen=True)
class SolveOptions:
    tol_residual: float = 1e-9
    tol_cluster: float = 1e-7
    max_aberth_iters: int = 200
    newton_restarts: int = 2000
    seed: int = 0

    def __post_init__(self):
        if self.tol_residual <= 0 or self.tol_cluster <= 0:
            raise ValueError("tolerances must be positive")
        if self.tol_cluster <= self.tol_residual:
            raise ValueError("tol_cluster must exceed tol_residual")


class CPoint:
    """Numeric projective point: unit norm, dominant coordinate made real."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        v = np.asarray(coords, dtype=np.complex128)
        if v.shape != (3,):
            raise ValueError("CPoint needs three complex coordinates")
        n = np.linalg.norm(v)
        if n == 0 or not np.isfinite(n):
            raise ValueError("invalid coordinates")
        v = v / n
        k = int(np.argmax(np.abs(v)))
        phase = v[k] / abs(v[k])
        object.__setattr__(self, "coords", v * np.conj(phase))

    def __setattr__(self, *_):
        raise AttributeError("CPoint is immutable")

    def distance(self, other: "CPoint") -> float:
        # sqrt(1 - |<p,q>|^2), evaluated without cancellation as the norm of
        # the component of one unit vector orthogonal to the other
        ip = np.vdot(self.coords, other.coords)
        rest = other.coords - ip * self.coords
        return float(min(np.linalg.norm(rest), 1.0))

    def to_json(self):
        return [[float(c.real), float(c.imag)] for c in self.coords]

    def __repr__(self):
        return "CPoint(" + ", ".join(f"{c:.6g}" for c in self.coords) + ")"


def cpoint_from_exact(p: ProjPoint) -> CPoint:
    return CPoint([c.to_complex() for c in p.coords])


# -- univariate roots ---------------------------------------------------------------


def aberth_roots(coeffs, opts: SolveOptions | None = None):
    """All complex roots of a polynomial given by ascending coefficients."""
    opts = opts or SolveOptions()
    c = np.asarray(list(coeffs), dtype=np.complex128)
    if c.size == 0 or not np.any(c):
        raise ValueError("zero polynomial")
    top = c.size - 1
    while top > 0 and c[top] == 0:
        top -= 1
    c = c[:top + 1]
    if c.size < 2:
        raise ValueError("polynomial must have degree >= 1")
    roots_at_zero = 0
    while c[0] == 0:
        roots_at_zero += 1
        c = c[1:]
    zeros = [0j] * roots_at_zero
    n = c.size - 1
    if n == 0:
        return np.array(zeros)
    scale = np.max(np.abs(c))
    c = c / scale
    dc = c[1:] * np.arange(1, n + 1)
    radius = 1.0 + np.max(np.abs(c[:-1])) / abs(c[-1])
    k = np.arange(n)
    z = (0.6 * radius) * np.exp(2j * np.pi * (k + 0.35) / n + 0.45j)
    cn = np.max(np.abs(c))
    for it in range(opts.max_aberth_iters):
        p = np.polyval(c[::-1], z)
        bound = cn * np.maximum(1.0, np.abs(z)) ** n
        if np.all(np.abs(p) < opts.tol_residual * bound):
            break
        dp = np.polyval(dc[::-1], z)
        dp = np.where(dp == 0, 1e-300, dp)
        w = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        sums = np.sum(1.0 / diff, axis=1)
        corr = w / (1.0 - w * sums)
        z = z - corr
    else:
        raise SolverError("Aberth iteration did not converge",
                          state={"iterates": z.tolist(),
                                 "residuals": np.abs(p).tolist()})
    return np.concatenate([np.array(zeros), z]) if zeros else z


# -- eigenpoints of a cubic ----------------------------------------------------------


def minor_complex_vectors(f: Cubic, normalize=True) -> np.ndarray:
    """The three minors as complex dense coefficient vectors."""
    m = np.array([[c.to_complex() for c in g.dense_cubic()] for g in f.minors()])
    if not normalize:
        return m
    s = np.max(np.abs(m))
    if s == 0:
        raise ValueError("zero cubic")
    return m / s


def _eval_vec(m, x, y, z):
    return m @ _monomials(np.complex128(x), np.complex128(y), np.complex128(z))


def _residual(mvecs, coords) -> float:
    mono = _monomials(*[np.complex128(c) for c in coords])
    vals = mvecs @ mono
    norms = np.max(np.abs(mvecs), axis=1)
    return float(np.max(np.abs(vals) / norms))


def _polish_z_chart(mvecs, x, y, iters=40):
    """Gauss-Newton on all three minors in the chart z = 1 (2 unknowns)."""
    for _ in range(iters):
        xc, yc, zc = np.complex128(x), np.complex128(y), np.complex128(1)
        mono = _monomials(xc, yc, zc)
        fv = mvecs @ mono
        gx = mvecs @ _dx_monomials(xc, yc, zc)
        gy = mvecs @ _dy_monomials(xc, yc, zc)
        # normal equations of the 3x2 least-squares step
        a11 = np.vdot(gx, gx)
        a12 = np.vdot(gx, gy)
        a22 = np.vdot(gy, gy)
        b1 = np.vdot(gx, fv)
        b2 = np.vdot(gy, fv)
        det = a11 * a22 - a12 * np.conj(a12)
        if abs(det) < 1e-280 or not np.isfinite(det):
            return x, y, False
        dx = (b1 * a22 - a12 * b2) / det
        dy = (a11 * b2 - np.conj(a12) * b1) / det
        x, y = x - dx, y - dy
        if not (np.isfinite(x) and np.isfinite(y)) or max(abs(x), abs(y)) > 1e9:
            return x, y, False
        if max(abs(dx), abs(dy)) < 1e-14 * max(1.0, abs(x), abs(y)):
            break
    return x, y, True


def _y_coeff_polys(m):
    """Coefficients of m(x, y, 1) as a polynomial in y; ascending-x arrays."""
    return [
        np.array([m[9], m[7], m[4], m[0]]),
        np.array([m[8], m[5], m[1]]),
        np.array([m[6], m[2]]),
        np.array([m[3]]),
    ]


def _effective_ydeg(cp, tol=1e-13):
    scale = max(np.max(np.abs(np.concatenate(cp))), 1e-300)
    deg = 0
    for k in range(3, -1, -1):
        if np.max(np.abs(cp[k])) > tol * scale:
            deg = k
            break
    return deg


def _sylvester_values(cp, cq, dp, dq, xs):
    out = np.empty(xs.size, dtype=np.complex128)
    size = dp + dq
    for i, x0 in enumerate(xs):
        pv = [np.polyval(c[::-1], x0) for c in cp[:dp + 1]]
        qv = [np.polyval(c[::-1], x0) for c in cq[:dq + 1]]
        mat = np.zeros((size, size), dtype=np.complex128)
        for r in range(dq):
            for k, v in enumerate(reversed(pv)):
                mat[r, r + k] = v
        for r in range(dp):
            for k, v in enumerate(reversed(qv)):
                mat[dq + r, r + k] = v
        out[i] = np.linalg.det(mat)
    return out


def _pair_candidates(ma, mb, opts):
    """Candidate (x, y) roots of one minor pair via resultant elimination in y."""
    cp, cq = _y_coeff_polys(ma), _y_coeff_polys(mb)
    dp, dq = _effective_ydeg(cp), _effective_ydeg(cq)
    cands = []
    if dp == 0 and dq == 0:
        return cands
    if dp == 0 or dq == 0:
        flat = cp if dp == 0 else cq
        other = cq if dp == 0 else cp
        dother = dq if dp == 0 else dp
        poly = flat[0]
        if np.max(np.abs(poly[1:])) < 1e-13:
            return cands
        for x0 in aberth_roots(poly, opts):
            oc = np.array([np.polyval(c[::-1], x0) for c in other[:dother + 1]])
            if np.max(np.abs(oc)) < 1e-13 or oc.size < 2:
                continue
            for y0 in np.roots(oc[::-1]):
                cands.append((x0, y0))
        return cands
    xs = 1.3 * np.exp(2j * np.pi * (np.arange(24) + 0.17) / 24)
    vals = _sylvester_values(cp, cq, dp, dq, xs)
    vand = xs[:, None] ** np.arange(10)[None, :]
    coeffs, *_ = np.linalg.lstsq(vand, vals, rcond=None)
    mag = np.max(np.abs(coeffs))
    if mag < 1e-12:
        return cands  # shared component: another pair will cover this chart
    trimmed = np.array(coeffs)
    while trimmed.size > 1 and abs(trimmed[-1]) < 1e-11 * mag:
        trimmed = trimmed[:-1]
    if trimmed.size < 2:
        return cands
    for x0 in aberth_roots(trimmed, opts):
        ys = []
        pc = np.array([np.polyval(c[::-1], x0) for c in cp[:dp + 1]])
        qc = np.array([np.polyval(c[::-1], x0) for c in cq[:dq + 1]])
        for arr in (pc, qc):
            if np.max(np.abs(arr)) > 1e-13 and arr.size > 1:
                ys.extend(np.roots(arr[::-1]))
        for y0 in ys:
            cands.append((x0, y0))
    return cands


def _affine_chart_candidates(mvecs, opts):
    """Union of pair-resultant candidates on the chart z = 1.

    Special cubics can give one pair of minors a common chart component, so
    all three pairs contribute; the residual filter discards the excess.
    """
    cands = []
    for i, j in ((1, 2), (0, 1), (0, 2)):
        cands.extend(_pair_candidates(mvecs[i], mvecs[j], opts))
    return cands


_SWAP_XZ = ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def _points_from_mvecs(mvecs, mvecs_swapped, opts):
    """Deduplicated numeric zeros of a minor system given on both charts."""
    raw = []
    for vecs, swap in ((mvecs, False), (mvecs_swapped, True)):
        for x0, y0 in _affine_chart_candidates(vecs, opts):
            x1, y1, ok = _polish_z_chart(vecs, x0, y0)
            if not ok:
                continue
            coords = (x1, y1, 1.0)
            if swap:
                coords = (coords[2], coords[1], coords[0])
            raw.append(coords)
    raw.append((0.0, 1.0, 0.0))  # the single point missed by both charts

    points = []
    for coords in raw:
        try:
            cp = CPoint(coords)
        except ValueError:
            continue
        if _residual(mvecs, cp.coords) < opts.tol_residual:
            points.append(cp)

    clusters: list[list[CPoint]] = []
    for cp in points:
        for cl in clusters:
            if cp.distance(cl[0]) < opts.tol_cluster:
                cl.append(cp)
                break
        else:
            clusters.append([cp])
    reps = [min(cl, key=lambda c: _residual(mvecs, c.coords)) for cl in clusters]
    reps.sort(key=lambda c: (round(c.coords[0].real, 9), round(c.coords[0].imag, 9),
                             round(c.coords[1].real, 9), round(c.coords[1].imag, 9)))
    return reps


def eigenpoints_numeric(f: Cubic, opts: SolveOptions | None = None):
    """All seven eigenpoints of a regular cubic, with a regularity verdict."""
    opts = opts or SolveOptions()
    dec = positive_dim_analysis(f)
    if dec.kind != "regular-candidate":
        raise PositiveDimensionalError(
            f"eigenscheme has a {dec.kind}; use positive_dim_analysis")
    mvecs = minor_complex_vectors(f)
    f_swapped = Cubic(f.form.compose_linear(_SWAP_XZ))
    mvecs_swapped = minor_complex_vectors(f_swapped)
    reps = _points_from_mvecs(mvecs, mvecs_swapped, opts)
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            d = reps[i].distance(reps[j])
            if opts.tol_cluster <= d < 10 * opts.tol_cluster:
                raise SolverError("ill-conditioned: point clusters are ambiguous "
                                  "at the requested tolerance",
                                  state={"distance": d})
    if len(reps) > 7:
        raise SolverError(f"found {len(reps)} candidate points for a cubic "
                          "(expected at most 7)",
                          state={"count": len(reps)})
    regular = len(reps) == 7
    return reps, regular


def alignment_triples_numeric(points, tol) -> list:
    """Index triples of numerically collinear points."""
    from itertools import combinations
    out = []
    for t in combinations(range(len(points)), 3):
        mat = np.stack([points[i].coords for i in t])
        if abs(np.linalg.det(mat)) < tol:
            out.append(t)
    return out


def verify_alignment_at(f_t: Cubic, opts: SolveOptions | None = None):
    """Numeric eigenpoints of f_t plus every aligned triple found among them."""
    opts = opts or SolveOptions()
    points, regular = eigenpoints_numeric(f_t, opts)
    if not regular:
        raise SolverError("eigenscheme not regular at tolerance; alignment "
                          "count is ambiguous")
    return points, alignment_triples_numeric(points, opts.tol_cluster)


# -- the pencil degree experiment ----------------------------------------------------


@dataclass(frozen=True)
class PencilSweep:
    t_values: tuple
    stats: dict = field(default_factory=dict)


def _exact_rank3_minors(f: Cubic, g: Cubic, t: Scalar) -> bool:
    from .linalg import ExactMatrix
    member = Cubic(f.form + g.form.scale(t))
    rows = [m.dense_cubic() for m in member.minors()]
    return ExactMatrix(rows).rank() == 3


def _pencil_starts(mf, mg, mfs, mgs, b, rng, opts):
    """Start vectors for the multi-start Newton sweep.

    Half are importance-sampled: eigenpoints of f + t0*g at random t0, with
    the most nearly collinear triples arranged into (P, Q, R = P + sQ) form.
    The rest are plain heavy-tailed random draws. Basin mass in t would
    otherwise be too skewed for completeness at the default restart budget.
    """
    from itertools import combinations

    def cnormal(size, scale):
        return scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size))

    loose = SolveOptions(tol_residual=1e-6, tol_cluster=1e-5,
                         max_aberth_iters=opts.max_aberth_iters)
    adapted = []
    quota = b // 2
    attempts = 0
    while len(adapted) < quota and attempts < max(quota // 2, 1):
        attempts += 1
        t0 = complex(cnormal(1, 10.0 ** rng.uniform(-1.2, 0.9))[0])
        try:
            pts = _points_from_mvecs(mf + t0 * mg, mfs + t0 * mgs, loose)
        except (SolverError, ValueError):
            continue
        if len(pts) < 3:
            continue
        combos = list(combinations(range(len(pts)), 3))
        dets = np.array([abs(np.linalg.det(np.stack([pts[i].coords for i in tr])))
                         for tr in combos])
        for ci in np.argsort(dets)[:4]:
            tri = list(combos[ci])
            rng.shuffle(tri)
            for _ in range(3):
                a, bb, cc = tri
                av, bv, cv = pts[a].coords, pts[bb].coords, pts[cc].coords
                if min(abs(av[2]), abs(bv[2])) < 1e-3:
                    tri = [bb, cc, a]
                    continue
                p3 = np.array([av[0] / av[2], av[1] / av[2], 1.0])
                q3 = np.array([bv[0] / bv[2], bv[1] / bv[2], 1.0])
                sol, *_ = np.linalg.lstsq(np.stack([p3, q3], axis=1), cv,
                                          rcond=None)
                if abs(sol[0]) < 1e-10:
                    break
                s0 = sol[1] / sol[0]
                u = np.array([t0, p3[0], p3[1], q3[0], q3[1], s0],
                             dtype=np.complex128)
                u[1:] += cnormal(5, 1e-4)
                adapted.append(u)
                break
            if len(adapted) >= quota:
                break
    n_rand = b - len(adapted)
    scales = 10.0 ** rng.uniform(-0.6, 0.8, size=n_rand)
    rand = np.empty((n_rand, 6), dtype=np.complex128)
    rand[:, 0] = cnormal(n_rand, 10.0 ** rng.uniform(-0.5, 1.0, size=n_rand))
    for col in (1, 2, 3, 4):
        rand[:, col] = cnormal(n_rand, scales)
    rand[:, 5] = cnormal(n_rand, 1.0)
    if adapted:
        return np.concatenate([np.stack(adapted), rand], axis=0)
    return rand


def pencil_alignment_parameters(f: Cubic, g: Cubic,
                                opts: SolveOptions | None = None) -> PencilSweep:
    """Distinct pencil parameters t where f + t*g gains an aligned eigen-triple.

    Statistical completeness through multi-start Newton; undercounts are
    reported in the stats, never padded.
    """
    opts = opts or SolveOptions()
    wf, wg = f.vector, g.vector
    if all(not (wf[i] * wg[j] - wf[j] * wg[i])
           for i in range(10) for j in range(i + 1, 10)):
        raise ValueError("degenerate pencil: the two cubics coincide")
    for dec_target, name in ((f, "f"), (g, "g")):
        if positive_dim_analysis(dec_target).kind != "regular-candidate":
            raise ValueError(f"cubic {name} has a positive-dimensional eigenscheme")
    for tv in (Scalar(2, 1), Scalar(-1, 3), Scalar(5, -2)):
        if not _exact_rank3_minors(f, g, tv):
            raise ValueError("pencil meets the concurrent-lines locus")

    # one common scale so that mf + t*mg stays the minor vector of f + t*g
    mf = minor_complex_vectors(f, normalize=False)
    mg = minor_complex_vectors(g, normalize=False)
    joint = max(np.max(np.abs(mf)), np.max(np.abs(mg)))
    mf, mg = mf / joint, mg / joint
    swap = _SWAP_XZ
    mfs = minor_complex_vectors(Cubic(f.form.compose_linear(swap)),
                                normalize=False) / joint
    mgs = minor_complex_vectors(Cubic(g.form.compose_linear(swap)),
                                normalize=False) / joint
    rng = np.random.default_rng(opts.seed)
    b = opts.newton_restarts
    starts = _pencil_starts(mf, mg, mfs, mgs, b, rng, opts)

    sols, ok = newton_pencil(mf, mg, starts, 60, 1e-11)
    converged = sols[ok]

    verified_t = []
    for u in converged:
        t, px, py, qx, qy, s = u
        pts = np.array([[px, py, 1.0], [qx, qy, 1.0],
                        [px + s * qx, py + s * qy, 1.0 + s]])
        norms = np.linalg.norm(pts, axis=1)
        if np.any(norms < 1e-12) or not np.all(np.isfinite(norms)):
            continue
        unit = pts / norms[:, None]
        mt = mf + t * mg
        mt_norms = np.max(np.abs(mt), axis=1)
        if np.min(mt_norms) < 1e-14:
            continue
        res = 0.0
        for row in unit:
            mono = _monomials(*row)
            res = max(res, float(np.max(np.abs(mt @ mono) / mt_norms)))
        if res > opts.tol_residual:
            continue
        # Newton stalls on the degenerate manifold P = Q = R (one eigenpoint
        # counted thrice) with coincidences at the 1e-5 scale; genuine aligned
        # triples of a generic pencil member are separated at order one
        cps = [CPoint(row) for row in unit]
        if (cps[0].distance(cps[1]) < 1e-4 or cps[0].distance(cps[2]) < 1e-4
                or cps[1].distance(cps[2]) < 1e-4):
            continue
        verified_t.append(complex(t))

    verified_t.sort(key=lambda z: (z.real, z.imag))
    clusters = []
    for t in verified_t:
        placed = False
        for cl in clusters:
            ref = cl[0]
            if abs(t - ref) <= opts.tol_cluster * max(1.0, abs(t), abs(ref)):
                cl.append(t)
                placed = True
                break
        if not placed:
            clusters.append([t])
    t_values = tuple(complex(np.mean(cl)) for cl in clusters)
    stats = {
        "restarts": b,
        "converged": int(np.count_nonzero(ok)),
        "verified_solutions": len(verified_t),
        "distinct_t": len(t_values),
        "cluster_sizes": sorted((len(cl) for cl in clusters), reverse=True),
    }
    return PencilSweep(t_values, stats)
