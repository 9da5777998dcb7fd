"""Seeded verification suites for the rank tables, theorems, and experiments.

Each check returns a CheckResult with counts; the CLI's verify-paper command
and the acceptance test suite both run these.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .configurations import (VConfig, build_C2, build_C3, build_C5, build_C8,
                             build_d2_6align, build_odeco, build_rank8_case1,
                             build_rank8_case2, classify, classify_numeric,
                             rank_V)
from .eigenscheme import (Cubic, build_eigenconic_family, build_eigenline_family,
                          build_f_of_r, condition_matrix, geiser,
                          line_eigen_divisor, positive_dim_analysis)
from .errors import DegeneracyError, PositiveDimensionalError, SolverError
from .forms import TernaryForm
from .geometry import (Line, ProjPoint, Q_ISO, collinear, combine, cross,
                       isotropic_point, on_isotropic, scal, sigma,
                       so3_normalize)
from .numsolve import (SolveOptions, alignment_triples_numeric,
                       cpoint_from_exact, eigenpoints_numeric,
                       pencil_alignment_parameters)
from .scalars import Scalar


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        info = ", ".join(f"{k}={v}" for k, v in self.details.items())
        return f"[{status}] {self.name}: {info}"


# -- seeded exact sampling ----------------------------------------------------------


def _rand_int_point(rng: random.Random) -> ProjPoint:
    while True:
        c = [rng.randint(-9, 9) for _ in range(3)]
        if any(c):
            return ProjPoint(*c)


def _rand_pair(rng: random.Random):
    while True:
        a, b = rng.randint(-7, 7), rng.randint(-7, 7)
        if a and b:
            return (Scalar(a), Scalar(b))


def _rand_cubic(rng: random.Random) -> Cubic:
    while True:
        vec = [Fraction(rng.randint(-9, 9)) for _ in range(10)]
        if any(vec):
            return Cubic(vec)


def _rand_isotropic(rng: random.Random) -> ProjPoint:
    while True:
        lam, mu = rng.randint(-6, 6), rng.randint(-6, 6)
        if lam or mu:
            return isotropic_point(lam, mu)


def _tangent_line_points(rng: random.Random, count: int, touch_first: bool):
    """Distinct points on a random isotropic tangent line.

    With touch_first the tangency point itself is the first point returned.
    """
    while True:
        t = _rand_isotropic(rng)
        tangent = Line(*t.coords)
        x, y = tangent.two_points()
        pts = [t] if touch_first else []
        guard = 0
        while len(pts) < count and guard < 50:
            guard += 1
            cand = combine(Scalar(rng.randint(-7, 7)), x,
                           Scalar(rng.randint(-7, 7)), y)
            if all(cand != p for p in pts) and (touch_first or cand != t):
                pts.append(cand)
        if len(pts) == count:
            return pts


def _secant_line(rng: random.Random) -> Line:
    while True:
        a = _rand_int_point(rng)
        line = Line(*a.coords)
        if not line.is_tangent_to_isotropic():
            return line


# -- individual checks ---------------------------------------------------------------


def check_rank_tables(seed=0, n=200) -> CheckResult:
    rng = random.Random(seed)
    fails = 0
    for _ in range(n):
        p = _rand_int_point(rng)
        if condition_matrix([p]).rank() != 2:
            fails += 1
        # three points not on a line
        while True:
            a, b, c = (_rand_int_point(rng) for _ in range(3))
            if len({a, b, c}) == 3 and not collinear(a, b, c):
                break
        if condition_matrix([a, b, c]).rank() != 6:
            fails += 1
        # three aligned points on a non-tangent line
        while True:
            a, b = _rand_int_point(rng), _rand_int_point(rng)
            if a == b or sigma(a, b).is_zero():
                continue
            u, v = _rand_pair(rng)
            c = combine(u, a, v, b)
            if c != a and c != b:
                break
        if condition_matrix([a, b, c]).rank() != 6:
            fails += 1
        # three aligned points, line tangent at the first of them
        pts = _tangent_line_points(rng, 3, touch_first=True)
        if condition_matrix(pts).rank() != 5:
            fails += 1
        # four aligned points, non-tangent line
        while True:
            a, b = _rand_int_point(rng), _rand_int_point(rng)
            if a == b or sigma(a, b).is_zero():
                continue
            more = []
            guard = 0
            while len(more) < 2 and guard < 50:
                guard += 1
                cand = combine(Scalar(rng.randint(-7, 7)), a,
                               Scalar(rng.randint(-7, 7)), b)
                if cand not in (a, b) and all(cand != m for m in more):
                    more.append(cand)
            if len(more) == 2:
                break
        if condition_matrix([a, b] + more).rank() != 7:
            fails += 1
        # four aligned points on a tangent line (tangency point not required)
        pts4 = _tangent_line_points(rng, 4, touch_first=bool(rng.getrandbits(1)))
        if condition_matrix(pts4).rank() != 6:
            fails += 1
    return CheckResult("rank_tables", fails == 0,
                       {"instances_per_row": n, "failures": fails})


def _rand_vconfig_generic(rng) -> VConfig | None:
    p1, p2, p4 = (_rand_int_point(rng) for _ in range(3))
    if p1 == p2 or p1 == p4 or p2 == p4 or collinear(p1, p2, p4):
        return None
    a, b = _rand_pair(rng)
    c, d = _rand_pair(rng)
    try:
        return VConfig(p1, p2, combine(a, p1, b, p2), p4, combine(c, p1, d, p4))
    except ValueError:
        return None


def _rand_vconfig_delta2(rng) -> VConfig | None:
    p1, p2, p4 = (_rand_int_point(rng) for _ in range(3))
    if p1 == p2 or p1 == p4 or p2 == p4 or collinear(p1, p2, p4):
        return None
    t5a, t5b = _rand_pair(rng)
    p5 = combine(t5a, p1, t5b, p4)
    s11, s12, s14 = scal(p1, p1), scal(p1, p2), scal(p1, p4)
    s15, s22, s45 = scal(p1, p5), scal(p2, p2), scal(p4, p5)
    c1 = s14 * s15 * s22 - s12 ** 2 * s45
    c2 = s12 * (s11 * s45 - s14 * s15)
    if not c1 and not c2:
        return None
    try:
        return VConfig(p1, p2, combine(c1, p1, c2, p2), p4, p5)
    except ValueError:
        return None


def _rand_vconfig_rank8b(rng) -> VConfig | None:
    t1, t2 = _rand_isotropic(rng), _rand_isotropic(rng)
    if t1 == t2:
        return None
    p1 = cross(t1, t2)
    if on_isotropic(p1):
        return None
    try:
        p3 = combine(_rand_pair(rng)[0], p1, _rand_pair(rng)[0], t1)
        p5 = combine(_rand_pair(rng)[0], p1, _rand_pair(rng)[0], t2)
        return VConfig(p1, t1, p3, t2, p5)
    except ValueError:
        return None


def check_rank_v_theorem(seed=0, n=200) -> CheckResult:
    rng = random.Random(seed)
    fails = 0
    counts = {"generic": 0, "delta1": 0, "delta2": 0, "rank8a": 0, "rank8b": 0}

    def consume(v: VConfig | None, branch: str):
        nonlocal fails
        if v is None:
            return False
        rank, certs = rank_V(v)
        if not all(val for key, val in certs.items() if key.startswith("thm_")):
            fails += 1
        counts[branch] += 1
        return True

    while min(counts.values()) < n:
        if counts["generic"] < n:
            consume(_rand_vconfig_generic(rng), "generic")
        if counts["delta1"] < n:
            try:
                res = build_C2(_rand_int_point(rng), _rand_int_point(rng),
                               _rand_pair(rng), _rand_pair(rng), _rand_pair(rng))
                consume(VConfig(*res.points), "delta1")
            except (DegeneracyError, ValueError):
                pass
        if counts["delta2"] < n:
            consume(_rand_vconfig_delta2(rng), "delta2")
        if counts["rank8a"] < n:
            try:
                res = build_rank8_case1(_rand_int_point(rng), _rand_int_point(rng),
                                        _rand_pair(rng))
                consume(VConfig(*res.points), "rank8a")
            except (DegeneracyError, ValueError):
                pass
        if counts["rank8b"] < n:
            consume(_rand_vconfig_rank8b(rng), "rank8b")
    return CheckResult("rank_v_theorem", fails == 0,
                       {"instances_per_branch": n, "failures": fails})


def check_third_alignment(seed=0, n=50) -> CheckResult:
    rng = random.Random(seed)
    done = fails = 0
    while done < n:
        try:
            res = build_C3(_rand_int_point(rng), _rand_int_point(rng),
                           _rand_int_point(rng), _rand_pair(rng))
        except (DegeneracyError, ValueError):
            continue
        done += 1
        if (res.certificates["divisor_degree"] != 3
                or res.certificates["residual_degree_beyond_P1"] != 2):
            fails += 1
    return CheckResult("third_alignment", fails == 0,
                       {"instances": n, "failures": fails})


def check_gsplit(seed=0, n=50) -> CheckResult:
    """Divisibility of the G-split cubic by both V-lines on delta2 seeds."""
    rng = random.Random(seed)
    done = fails = 0
    while done < n:
        try:
            res = build_C3(_rand_int_point(rng), _rand_int_point(rng),
                           _rand_int_point(rng), _rand_pair(rng))
        except (DegeneracyError, ValueError):
            continue
        p1, p2, _, p4, _ = res.points
        g1, g2, g3 = res.cubic.minors()
        a1, b1, c1 = p1.canonical
        split = g3.scale(a1) + g2.scale(-b1) + g1.scale(c1)
        l12 = Line.through(p1, p2).form()
        l14 = Line.through(p1, p4).form()
        done += 1
        if not (l12.divides(split) and l14.divides(split)):
            fails += 1
    return CheckResult("gsplit", fails == 0, {"instances": n, "failures": fails})


def check_residual_degrees(seed=0, n=50) -> CheckResult:
    rng = random.Random(seed)
    fails = 0
    # the worked example with its exact residual triple
    f = Cubic(TernaryForm(3, {(2, 1, 0): 1, (2, 0, 1): -1}))
    dec = positive_dim_analysis(f)
    want = {ProjPoint(0, 1, 1), ProjPoint(2, 1, -1), ProjPoint(-2, 1, -1)}
    if (dec.kind != "line-component" or not dec.exact_residual
            or set(dec.residual_points) != want or dec.residual_degree != 3):
        fails += 1
    line_ok = conic_ok = 0
    while line_ok < n:
        t = _secant_line(rng)
        ell = Line(*_rand_int_point(rng).coords)
        try:
            cubic = build_eigenline_family(t, ell)
        except DegeneracyError:
            continue
        dec = positive_dim_analysis(cubic)
        line_ok += 1
        if dec.kind != "line-component" or dec.residual_degree != 3:
            fails += 1
        elif not dec.component.proportional_to(t.form()):
            fails += 1
    while conic_ok < n:
        r = _secant_line(rng)
        lam = Scalar(rng.randint(1, 9))
        mu = Scalar(rng.randint(-9, 9))
        try:
            cubic, conic = build_eigenconic_family("bitangent", r=r, lam=lam, mu=mu)
        except DegeneracyError:
            continue
        expected = Q_ISO.scale(lam) + (r.form() * r.form()).scale(3 * mu)
        dec = positive_dim_analysis(cubic)
        conic_ok += 1
        if dec.kind != "conic-component" or dec.residual_degree != 1:
            fails += 1
        elif not (dec.component.proportional_to(expected)
                  and conic.proportional_to(expected)):
            fails += 1
    return CheckResult("residual_degrees", fails == 0,
                       {"line_instances": n, "conic_instances": n,
                        "failures": fails})


def check_c8_orthocenter(seed=0, n=100) -> CheckResult:
    rng = random.Random(seed)
    fails = done = 0
    fermat = build_C8(ProjPoint(1, 1, 1), ProjPoint(1, 0, 0), ProjPoint(0, 1, 0))
    from .eigenscheme import FERMAT
    if (fermat.points[6] != ProjPoint(0, 0, 1)
            or not fermat.cubic.proportional_to(FERMAT)
            or fermat.report.label != "C8"):
        fails += 1
    while done < n:
        try:
            res = build_C8(_rand_int_point(rng), _rand_int_point(rng),
                           _rand_int_point(rng))
        except (DegeneracyError, ValueError):
            continue
        done += 1
        orth = all(res.certificates[k] for k in
                   ("orth_P1P2_P3P4", "orth_P1P4_P2P5", "orth_P1P6_P2P4"))
        if res.certificates["rank"] != 9 or not orth or res.report.label != "C8":
            fails += 1
    return CheckResult("c8_orthocenter", fails == 0,
                       {"instances": n, "failures": fails})


def check_odeco(seed=0, n=50) -> CheckResult:
    rng = random.Random(seed)
    fails = 0
    for _ in range(n):
        lams = [Scalar(rng.randint(1, 9), rng.randint(-3, 3)) for _ in range(3)]
        if not all(lams):
            continue
        res = build_odeco(*lams)
        if res.report.label != "C8" or not all(res.certificates.values()):
            fails += 1
    return CheckResult("odeco", fails == 0, {"instances": n, "failures": fails})


def check_geiser_contraction(seed=0, n=20) -> CheckResult:
    rng = random.Random(seed)
    done = fails = 0
    while done < n:
        try:
            res = build_C3(_rand_int_point(rng), _rand_int_point(rng),
                           _rand_int_point(rng), _rand_pair(rng))
        except (DegeneracyError, ValueError):
            continue
        p1, p2 = res.points[0], res.points[1]
        cubic = res.cubic
        images = []
        guard = 0
        while len(images) < 5 and guard < 60:
            guard += 1
            cand = combine(Scalar(rng.randint(-9, 9)), p1,
                           Scalar(rng.randint(-9, 9)), p2)
            if cubic.is_eigenpoint(cand):
                continue
            images.append(geiser(cubic, cand))
        done += 1
        if len(images) < 5 or any(img != images[0] for img in images[1:]):
            fails += 1
    return CheckResult("geiser_contraction", fails == 0,
                       {"instances": n, "failures": fails})


def check_equivariance(seed=0, n=25) -> CheckResult:
    rng = random.Random(seed)
    fails = done = 0
    while done < n:
        rot, _ = so3_normalize(_rand_int_point(rng))
        try:
            res = build_C8(_rand_int_point(rng), _rand_int_point(rng),
                           _rand_int_point(rng))
        except (DegeneracyError, ValueError):
            continue
        cubic = res.cubic
        moved = Cubic(rot.apply_form(cubic.form))
        done += 1
        for p in res.points[:3]:
            if not moved.is_eigenpoint(rot.apply_point(p)):
                fails += 1
                break
        else:
            probe = _rand_int_point(rng)
            if cubic.is_eigenpoint(probe) != moved.is_eigenpoint(
                    rot.apply_point(probe)):
                fails += 1
    return CheckResult("equivariance", fails == 0,
                       {"instances": n, "failures": fails})


_FORBIDDEN = {"C6", "C7", "C9"}


def _builder_reports(seed):
    rng = random.Random(seed)
    reports = []
    produced = 0
    while produced < 30:
        kind = rng.choice(["c8", "c5", "d2six", "odeco", "rank8b1", "rank8b2"])
        try:
            if kind == "c8":
                rep = build_C8(_rand_int_point(rng), _rand_int_point(rng),
                               _rand_int_point(rng)).report
            elif kind == "c5":
                rep = build_C5(_rand_int_point(rng), _rand_int_point(rng),
                               _rand_pair(rng), _rand_pair(rng)).report
            elif kind == "d2six":
                rep = build_d2_6align(_rand_int_point(rng), _rand_int_point(rng),
                                      _rand_pair(rng)).report
            elif kind == "odeco":
                rep = build_odeco(Scalar(rng.randint(1, 9)),
                                  Scalar(rng.randint(1, 9)),
                                  Scalar(rng.randint(1, 9))).report
            else:
                sub = "P2P4P6" if kind == "rank8b1" else "sixlines"
                res = build_rank8_case2(_rand_int_point(rng), _rand_pair(rng),
                                        _rand_pair(rng), subfamily=sub)
                rep = res.extras["report"]
        except (DegeneracyError, ValueError):
            continue
        produced += 1
        reports.append(rep)
    return reports


def check_impossibility(seed=0, n=500) -> CheckResult:
    rng = random.Random(seed)
    fails = 0
    reports = _builder_reports(seed)
    for rep in reports:
        if rep.label in _FORBIDDEN or (rep.label == "C4" and rep.strict):
            fails += 1
    solved = 0
    opts = SolveOptions()
    while solved < n:
        cubic = _rand_cubic(rng)
        try:
            points, regular = eigenpoints_numeric(cubic, opts)
        except (PositiveDimensionalError, SolverError, DegeneracyError):
            continue
        if not regular:
            continue
        solved += 1
        rep = classify_numeric([p.coords for p in points], opts.tol_cluster)
        if rep.label in _FORBIDDEN or (rep.label == "C4" and rep.strict):
            fails += 1
    return CheckResult("impossibility", fails == 0,
                       {"builder_reports": len(reports), "numeric_cubics": n,
                        "failures": fails})


def check_degree15(seed=0, pencils=3, restarts=2000, seeds_per_pencil=3,
                   rng_base=1000) -> CheckResult:
    rng = random.Random(seed)
    all_counts = []
    pencil_best = []
    done = 0
    while done < pencils:
        f, g = _rand_cubic(rng), _rand_cubic(rng)
        try:
            counts = []
            for k in range(seeds_per_pencil):
                opts = SolveOptions(newton_restarts=restarts,
                                    seed=rng_base + 97 * done + k)
                sweep = pencil_alignment_parameters(f, g, opts)
                counts.append(len(sweep.t_values))
        except ValueError:
            continue
        done += 1
        all_counts.append(counts)
        pencil_best.append(max(counts))
    flat = [c for counts in all_counts for c in counts]
    in_band = all(14 <= c <= 15 for c in flat)
    enough_full = sum(1 for b in pencil_best if b == 15) >= 2
    stable = all(len(set(counts)) == 1 for counts in all_counts)
    return CheckResult("degree15", in_band and enough_full,
                       {"counts": all_counts, "in_band_14_15": in_band,
                        "pencils_with_15": sum(1 for b in pencil_best if b == 15),
                        "stable_across_seeds": stable})


CHECKS = {
    "rank_tables": (check_rank_tables, {"rank"}),
    "rank_v_theorem": (check_rank_v_theorem, {"rank", "rankv"}),
    "third_alignment": (check_third_alignment, {"third"}),
    "gsplit": (check_gsplit, {"third", "gsplit"}),
    "residual_degrees": (check_residual_degrees, {"residual"}),
    "c8_orthocenter": (check_c8_orthocenter, {"c8"}),
    "odeco": (check_odeco, {"c8", "odeco"}),
    "geiser_contraction": (check_geiser_contraction, {"geiser"}),
    "equivariance": (check_equivariance, {"so3"}),
    "impossibility": (check_impossibility, {"config"}),
    "degree15": (check_degree15, {"degree15"}),
}


def run_checks(selector="all", seed=0, restarts=2000, quick=False):
    """Run the selected named checks; returns the list of CheckResults."""
    results = []
    for name, (fn, tags) in CHECKS.items():
        if selector not in ("all", name) and selector not in tags:
            continue
        kwargs = {"seed": seed}
        if name == "degree15":
            kwargs["restarts"] = restarts
        if quick:
            shrink = {"rank_tables": 25, "rank_v_theorem": 25,
                      "third_alignment": 10, "gsplit": 10,
                      "residual_degrees": 10, "c8_orthocenter": 15,
                      "odeco": 10, "geiser_contraction": 5,
                      "equivariance": 8, "impossibility": 40}
            if name in shrink:
                kwargs["n"] = shrink[name]
            if name == "degree15":
                kwargs["pencils"] = 1
                kwargs["seeds_per_pencil"] = 1
        results.append(fn(**kwargs))
    if not results:
        raise ValueError(f"no checks match selector {selector!r}")
    return results
