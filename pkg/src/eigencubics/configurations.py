"""Alignment configurations of seven eigenpoints: builders and classifier.

Labels C1..C9 follow the incidence catalogue of seven points with at least
one aligned triple; a pattern is identified by its line count together with
the sorted multiset of point-line degrees, which separates all nine rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .eigenscheme import (Cubic, condition_matrix, cubics_through,
                          line_eigen_divisor, unique_cubic_from_rank9)
from .errors import DegeneracyError
from .forms import BinaryForm, TernaryForm
from .geometry import (Line, ProjPoint, collinear, collinear_vectors, combine,
                       cross, delta1, delta1bar, delta2, on_isotropic, scal,
                       sigma, so3_normalize, validate_v_configuration)
from .linalg import ExactMatrix
from .scalars import I, ONE, Scalar, ZERO, sqrt_or_adjoin

#: (number of lines, sorted point-line degree sequence) -> configuration label
CONFIG_SIGNATURES = {
    (1, (0, 0, 0, 0, 1, 1, 1)): "C1",
    (2, (0, 0, 1, 1, 1, 1, 2)): "C2",
    (3, (1, 1, 1, 1, 1, 1, 3)): "C3",
    (3, (0, 1, 1, 1, 2, 2, 2)): "C4",
    (4, (1, 1, 1, 2, 2, 2, 3)): "C5",
    (4, (0, 2, 2, 2, 2, 2, 2)): "C6",
    (5, (1, 2, 2, 2, 2, 3, 3)): "C7",
    (6, (2, 2, 2, 3, 3, 3, 3)): "C8",
    (7, (3, 3, 3, 3, 3, 3, 3)): "C9",
}


@dataclass(frozen=True)
class ConfigReport:
    label: str                 # C1..C9, 'no alignment', or 'invalid'
    lines: tuple               # 1-based index triples
    strict: bool
    certificates: dict
    regular: bool = True

    def to_json(self):
        return {
            "label": self.label,
            "lines": [list(t) for t in self.lines],
            "strict": self.strict,
            "certificates": {k: bool(v) for k, v in sorted(self.certificates.items())},
            "regular": self.regular,
        }


def label_incidence(triples, n=7):
    """Configuration label for 0-based collinear triples among n points."""
    triples = sorted(tuple(sorted(t)) for t in triples)
    if not triples:
        return "no alignment", triples
    for a, b in combinations(triples, 2):
        shared = len(set(a) & set(b))
        if shared == 2:
            return "invalid", triples  # four or more aligned points
        if shared == 0:
            return "invalid", triples  # alignment lines must share a point
    degrees = [0] * n
    for t in triples:
        for i in t:
            degrees[i] += 1
    label = CONFIG_SIGNATURES.get((len(triples), tuple(sorted(degrees))), "invalid")
    return label, triples


def aligned_triples(points):
    """All 0-based triples of exactly collinear points."""
    out = []
    for t in combinations(range(len(points)), 3):
        if collinear(points[t[0]], points[t[1]], points[t[2]]):
            out.append(t)
    return out


def classify(points, regular=True, extra_certificates=None) -> ConfigReport:
    """Exact incidence classification of seven distinct points."""
    pts = tuple(points)
    if len(pts) != 7:
        raise ValueError("classification needs exactly 7 points")
    for i, j in combinations(range(7), 2):
        if pts[i] == pts[j]:
            raise ValueError(f"duplicate points at positions {i} and {j}")
    label, triples = label_incidence(aligned_triples(pts))
    certs = {}
    for t in triples:
        if sigma(pts[t[0]], pts[t[1]]).is_zero():
            certs[f"sigma_tangent_line_{t[0] + 1}_{t[1] + 1}_{t[2] + 1}"] = True
    if extra_certificates:
        certs.update(extra_certificates)
    return ConfigReport(
        label=label,
        lines=tuple(tuple(i + 1 for i in t) for t in triples),
        strict=label.startswith("C"),
        certificates=certs,
        regular=regular,
    )


def classify_numeric(coords, tol=1e-7, regular=True) -> ConfigReport:
    """Incidence classification of seven normalized numeric points."""
    arr = np.asarray(coords, dtype=np.complex128)
    if arr.shape != (7, 3):
        raise ValueError("need seven complex points")
    arr = arr / np.linalg.norm(arr, axis=1, keepdims=True)
    triples = [t for t in combinations(range(7), 3)
               if abs(np.linalg.det(arr[list(t)])) < tol]
    label, triples = label_incidence(triples)
    return ConfigReport(label=label,
                        lines=tuple(tuple(i + 1 for i in t) for t in triples),
                        strict=label.startswith("C"),
                        certificates={},
                        regular=regular)


# -- V-configurations ------------------------------------------------------------


@dataclass(frozen=True)
class VConfig:
    """Two aligned triples (P1,P2,P3) and (P1,P4,P5) sharing exactly P1."""

    p1: ProjPoint
    p2: ProjPoint
    p3: ProjPoint
    p4: ProjPoint
    p5: ProjPoint

    def __post_init__(self):
        validate_v_configuration(self.p1, self.p2, self.p3, self.p4, self.p5)

    @property
    def points(self):
        return (self.p1, self.p2, self.p3, self.p4, self.p5)


def rank_V(v: VConfig):
    """Rank of the 15x10 condition matrix plus the certificate dictionary."""
    p1, p2, p3, p4, p5 = v.points
    rank = condition_matrix(v.points).rank()
    d1 = delta1(p1, p2, p4)
    d2 = delta2(p1, p2, p3, p4, p5)
    d1b123 = delta1bar(p1, p2, p3)
    d1b145 = delta1bar(p1, p4, p5)
    sig12, sig14 = sigma(p1, p2), sigma(p1, p4)
    tangent_first = (not sig12) and (not scal(p2, p2) or not scal(p3, p3))
    tangent_second = (not sig14) and (not scal(p4, p4) or not scal(p5, p5))
    branch1 = not d1 and not d1b123 and not d1b145
    branch2 = tangent_first and tangent_second
    certificates = {
        "delta1_zero": not d1,
        "delta2_zero": not d2,
        "delta1bar_123_zero": not d1b123,
        "delta1bar_145_zero": not d1b145,
        "sigma_12_zero": not sig12,
        "sigma_14_zero": not sig14,
        "tangent_at_P2_or_P3": tangent_first,
        "tangent_at_P4_or_P5": tangent_second,
        "rank8_branch1": branch1,
        "rank8_branch2": branch2,
        "thm_bounds_ok": 8 <= rank <= 10,
        "thm_rank_le9_iff_ok": (rank <= 9) == (not (d1 * d2)),
        "thm_rank8_iff_ok": (rank == 8) == (branch1 or branch2),
        "thm_rank8_implies_delta2_ok": rank != 8 or not d2,
        "thm_branch2_delta1_nonzero_ok": not branch2 or bool(d1),
    }
    return rank, certificates


# -- shared builder helpers ---------------------------------------------------------


def _pair(t):
    a, b = t
    a, b = Scalar.of(a), Scalar.of(b)
    if not a and not b:
        raise DegeneracyError("parameter pair must be nonzero")
    return a, b


def _combo(t, p, q, forbid_ends=True) -> ProjPoint:
    a, b = _pair(t)
    if forbid_ends and (not a or not b):
        raise DegeneracyError("parameter choice collides with an existing point")
    return combine(a, p, b, q)


def _perp_point(w, t) -> ProjPoint:
    """Point <w>-orthogonal, parametrized over the polar line of w."""
    if not any(w):
        raise DegeneracyError("orthogonality constraint is vacuous")
    basis = []
    wp = ProjPoint(*w)
    for e in (ProjPoint(1, 0, 0), ProjPoint(0, 1, 0), ProjPoint(0, 0, 1)):
        if wp == e:
            continue
        cand = cross(wp, e)
        if all(cand != b for b in basis):
            basis.append(cand)
        if len(basis) == 2:
            break
    a, b = _pair(t)
    return combine(a, basis[0], b, basis[1])


def _pencil_member_through(cubics, point: ProjPoint):
    """The member of a pencil whose eigenscheme contains the point, if any."""
    cm = condition_matrix([point])
    cols = [cm.matrix.apply(c.vector) for c in cubics]
    small = ExactMatrix(list(zip(*cols)))
    ker = small.kernel()
    if not ker:
        return None
    coeffs = ker[0]
    vec = [ZERO] * 10
    for c, cubic in zip(coeffs, cubics):
        if not c:
            continue
        for i, w in enumerate(cubic.vector):
            vec[i] = vec[i] + c * w
    return Cubic(vec).normalized()


def _reconstruct(points) -> Cubic:
    cm = condition_matrix(points)
    rows = cm.matrix.first_independent_rows(9)
    if rows is None:
        raise DegeneracyError("condition matrix has rank below 9")
    return unique_cubic_from_rank9(cm.matrix.take_rows(rows))


def _binary_root_points(q: BinaryForm, x: ProjPoint, y: ProjPoint):
    """Points of a degree-2 divisor on the line spanned by x and y.

    Solves the quadratic exactly, adjoining one square root when needed;
    returns None when the coefficients already live in an extension.
    """
    c = list(q.coeffs)
    if len(c) != 3:
        raise ValueError("expected a binary quadratic")
    if any(not s.in_base_field() for s in c):
        return None
    c0, c1, c2 = c
    if not c0:
        first = ProjPoint(*x.coords)
        if not c1:
            return None  # double root at x: not two distinct points
        return first, combine(-c2, x, c1, y)
    disc = c1 * c1 - 4 * c0 * c2
    root = sqrt_or_adjoin(disc)
    t_plus = (-c1 + root) / (2 * c0)
    t_minus = (-c1 - root) / (2 * c0)
    return combine(t_plus, x, ONE, y), combine(t_minus, x, ONE, y)


# -- builders --------------------------------------------------------------------


@dataclass(frozen=True)
class BuildResult:
    points: tuple
    cubics: tuple
    certificates: dict
    report: ConfigReport | None = None
    extras: dict | None = None

    @property
    def cubic(self) -> Cubic:
        if len(self.cubics) != 1:
            raise ValueError("result holds a pencil, not a single cubic")
        return self.cubics[0]


def build_C2(p1: ProjPoint, p2: ProjPoint, t3, t5, t4=(1, 2)) -> BuildResult:
    """V-configuration with delta1 = 0: P4 orthogonal to s11 P2 - s12 P1."""
    if p1 == p2:
        raise DegeneracyError("P1 and P2 must differ")
    s11, s12 = scal(p1, p1), scal(p1, p2)
    w = tuple(s11 * b - s12 * a for a, b in zip(p1.coords, p2.coords))
    p4 = _perp_point(w, t4)
    if p4 == p1 or p4 == p2 or collinear(p1, p2, p4):
        raise DegeneracyError("parameter t4 degenerates the configuration")
    p3 = _combo(t3, p1, p2)
    p5 = _combo(t5, p1, p4)
    v = VConfig(p1, p2, p3, p4, p5)
    d1 = delta1(p1, p2, p4)
    assert not d1
    rank, certs = rank_V(v)
    cubics = tuple(c.normalized() for c in cubics_through(v.points))
    assert len(cubics) == 10 - rank
    return BuildResult(v.points, cubics, {"rank": rank, **certs})


def build_C3(p1: ProjPoint, p2: ProjPoint, p4: ProjPoint, t5) -> BuildResult:
    """V-configuration with delta2 = 0 via the closed form for P3; the unique
    cubic then carries a third aligned pair through P1."""
    if p1 == p2 or p1 == p4 or p2 == p4 or collinear(p1, p2, p4):
        raise DegeneracyError("P1, P2, P4 must be distinct and not aligned")
    p5 = _combo(t5, p1, p4)
    s11, s12, s14 = scal(p1, p1), scal(p1, p2), scal(p1, p4)
    s15, s22, s45 = scal(p1, p5), scal(p2, p2), scal(p4, p5)
    if not s12 and not s14:
        raise DegeneracyError("s12 = s14 = 0: P1 = P2 x P4", redirect="c5")
    if not s12 and not s22:
        raise DegeneracyError("s12 = s22 = 0: line P1vP2 tangent at P2 "
                              "(rank-5 aligned triple)", redirect=None)
    if not sigma(p1, p2) and not sigma(p1, p4):
        raise DegeneracyError("both lines tangent to the isotropic conic",
                              redirect="rank8b")
    c1 = s14 * s15 * s22 - s12 ** 2 * s45
    c2 = s12 * (s11 * s45 - s14 * s15)
    if not c1 and not c2:
        raise DegeneracyError("P3 closed form degenerates for these seeds")
    p3 = combine(c1, p1, c2, p2)
    if p3 == p1 or p3 == p2:
        raise DegeneracyError("P3 collides with P1 or P2")
    v = VConfig(p1, p2, p3, p4, p5)
    assert not delta2(*v.points)
    rank, certs = rank_V(v)
    if rank == 8:
        redirect = "rank8a" if certs["rank8_branch1"] else "rank8b"
        raise DegeneracyError("configuration degenerates to rank 8",
                              redirect=redirect)
    cubic = _reconstruct(v.points)
    g1, g2, g3 = cubic.minors()
    a1, b1, c1_ = p1.canonical
    split = g3.scale(a1) + g2.scale(-b1) + g1.scale(c1_)
    if split.is_zero():
        raise DegeneracyError("G-split cubic vanishes identically")
    l12, l14 = Line.through(p1, p2), Line.through(p1, p4)
    third = split.divexact(l12.form()).divexact(l14.form())
    third_line = Line(*(third.coeffs.get(e, ZERO)
                        for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))))
    if not third_line.contains(p1):
        raise DegeneracyError("third alignment line misses P1 "
                              "(eigenscheme not regular)")
    x, y = third_line.two_points()
    divisor = line_eigen_divisor(cubic, x, y)
    if divisor.is_zero() or divisor.degree != 3:
        raise DegeneracyError("third line carries a degenerate eigen-divisor")
    ab = ExactMatrix(list(zip(x.coords, y.coords))).solve(p1.coords)
    assert ab is not None
    residual = divisor.divexact(BinaryForm([ab[1], -ab[0]]))
    pair = _binary_root_points(residual, x, y)
    certs.update({"rank": rank, "third_line_through_P1": True,
                  "divisor_degree": divisor.degree,
                  "residual_degree_beyond_P1": residual.degree})
    extras = {"third_line": third_line, "divisor": divisor,
              "residual": residual,
              "p6": pair[0] if pair else None,
              "p7": pair[1] if pair else None}
    return BuildResult(v.points, (cubic,), certs, extras=extras)


def build_rank8_case1(p1: ProjPoint, p2: ProjPoint, t4) -> BuildResult:
    """Rank-8 V-configuration branch with delta1 and both delta1bar zero."""
    if on_isotropic(p1):
        raise DegeneracyError("P1 must be off the isotropic conic")
    if p1 == p2:
        raise DegeneracyError("P1 and P2 must differ")
    s11, s12, s22 = scal(p1, p1), scal(p1, p2), scal(p2, p2)
    w = tuple(s11 * b - s12 * a for a, b in zip(p1.coords, p2.coords))
    p4 = _perp_point(w, t4)
    if p4 == p1 or p4 == p2 or collinear(p1, p2, p4):
        raise DegeneracyError("parameter t4 degenerates the configuration")
    s14, s44 = scal(p1, p4), scal(p4, p4)
    c3 = (s12 ** 2 + s11 * s22, -2 * s11 * s12)
    c5 = (s14 ** 2 + s11 * s44, -2 * s11 * s14)
    if (not c3[0] and not c3[1]) or (not c5[0] and not c5[1]):
        raise DegeneracyError("closed forms for P3/P5 degenerate",
                              redirect="rank8b")
    p3 = combine(c3[0], p1, c3[1], p2)
    p5 = combine(c5[0], p1, c5[1], p4)
    if p3 in (p1, p2) or p5 in (p1, p4) or p3 == p5:
        raise DegeneracyError("derived points collide")
    v = VConfig(p1, p2, p3, p4, p5)
    rank, certs = rank_V(v)
    if rank != 8:
        raise DegeneracyError(f"expected rank 8, found {rank}")
    pencil = tuple(c.normalized() for c in cubics_through(v.points))
    assert len(pencil) == 2
    for member in pencil:
        assert member.is_singular_at(p1)
    certs.update({"rank": rank, "singular_at_P1": True})
    return BuildResult(v.points, pencil, certs)


def build_rank8_case2(p1: ProjPoint, t3, t5, subfamily=None) -> BuildResult:
    """Rank-8 branch with both V-lines tangent to Q_iso at P2 and P4.

    Normalizes P1 to (1:0:0), builds the printed pencil there, and maps
    everything back through the inverse rotation.  ``subfamily`` may be
    'P2P4P6' (extra alignment through P2, P4) or 'sixlines'.
    """
    if on_isotropic(p1):
        raise DegeneracyError("P1 must be off the isotropic conic")
    rot, rep = so3_normalize(p1)
    assert rep == ProjPoint(1, 0, 0)
    u1, u2 = _pair(t3)
    v1, v2 = _pair(t5)
    if not (u1 and u2 and v1 and v2):
        raise DegeneracyError("parameter choice collides with base points")
    n1 = ProjPoint(1, 0, 0)
    n2 = ProjPoint(0, I, 1)
    n4 = ProjPoint(0, -I, 1)
    n3 = ProjPoint(u1, I * u2, u2)
    n5 = ProjPoint(v1, -I * v2, v2)
    npts = (n1, n2, n3, n4, n5)
    validate_v_configuration(*npts)
    f1 = TernaryForm(3, {(3, 0, 0): 2, (1, 2, 0): 3, (1, 0, 2): 3})
    factor = TernaryForm.linear(2 * I * u2 * v2, u2 * v1 - u1 * v2,
                                -I * (u2 * v1 + u1 * v2))
    f2 = TernaryForm.linear(0, 1, I) * TernaryForm.linear(0, 1, -I) * factor
    cm = condition_matrix(npts)
    assert not any(cm.matrix.apply(f1.dense_cubic()))
    assert not any(cm.matrix.apply(f2.dense_cubic()))
    rank = cm.rank()
    if rank != 8:
        raise DegeneracyError(f"expected rank 8, found {rank}")
    pencil_n = (Cubic(f1), Cubic(f2))

    def back_point(p):
        return rot.apply_point(p)

    def back_cubic(c):
        return Cubic(rot.apply_form(c.form)).normalized()

    points = tuple(back_point(p) for p in npts)
    pencil = tuple(back_cubic(c) for c in pencil_n)
    for member in pencil:
        assert all(member.is_eigenpoint(p) for p in points)
    certs = {"rank": rank, "tangent_at_P2": True, "tangent_at_P4": True}
    extras = None
    if subfamily is not None:
        s = {(i, j): scal(npts[i - 1], npts[j - 1]) for i in range(1, 6)
             for j in range(i, 6)}
        if subfamily == "P2P4P6":
            n6 = combine(s[(1, 5)] * s[(3, 4)], n2, s[(1, 3)] * s[(2, 5)], n4)
        elif subfamily == "sixlines":
            n6 = Line.through(n2, n5).meet(Line.through(n3, n4))
        else:
            raise ValueError(f"unknown subfamily {subfamily!r}")
        member_n = _pencil_member_through(pencil_n, n6)
        if member_n is None:
            raise DegeneracyError("no pencil member contains the requested P6")
        s26 = scal(n2, n6)
        s46, s56, s66 = scal(n4, n6), scal(n5, n6), scal(n6, n6)
        if subfamily == "P2P4P6":
            n7 = combine(s[(1, 5)] * (s26 * s46 + s[(2, 4)] * s66), n1,
                         s[(1, 1)] * s[(2, 4)] * s56, n6)
        else:
            n7 = Line.through(n1, n6).meet(Line.through(n3, n5))
            assert n7 == combine(s[(1, 5)], n3, s[(1, 3)], n5)
        assert member_n.is_eigenpoint(n6) and member_n.is_eigenpoint(n7)
        seven_n = npts + (n6, n7)
        member = back_cubic(member_n)
        seven = tuple(back_point(p) for p in seven_n)
        assert all(member.is_eigenpoint(p) for p in seven)
        report = classify(seven_n)
        extras = {"points7": seven, "member": member, "report": report,
                  "orth_P1P6_P3P5": not scal(cross(n1, n6), cross(n3, n5))}
    return BuildResult(points, pencil, certs, extras=extras)


def build_d2_6align(p1: ProjPoint, p2: ProjPoint, t4) -> BuildResult:
    """Seven points with six alignments grown from the rank-8 first branch."""
    base = build_rank8_case1(p1, p2, t4)
    q1, q2, q3, q4, q5 = base.points
    p6 = Line.through(q2, q4).meet(Line.through(q3, q5))
    p7 = Line.through(q3, q4).meet(Line.through(q2, q5))
    member = _pencil_member_through(base.cubics, p6)
    if member is None:
        raise DegeneracyError("no pencil member aligns P6 with P2 and P4")
    if not member.is_eigenpoint(p7):
        raise DegeneracyError("P7 fails the eigenpoint conditions")
    seven = base.points + (p6, p7)
    rank7 = condition_matrix(seven).rank()
    s23, s25, s35 = scal(q2, q3), scal(q2, q5), scal(q3, q5)
    x23, x25, x35 = cross(q2, q3), cross(q2, q5), cross(q3, q5)
    p4_formula = tuple(
        x23.coords[i] * s25 * s35 - s23 * x25.coords[i] * s35
        + s23 * s25 * x35.coords[i]
        for i in range(3))
    certs = {
        **base.certificates,
        "rank7_below_10": rank7 < 10,
        "orth_P2P4_P3P5": not scal(cross(q2, q4), x35),
        "orth_P3P4_P2P5": not scal(cross(q3, q4), x25),
        "p4_cross_identity": (any(p4_formula)
                              and collinear_vectors(p4_formula, q4.coords)),
    }
    report = classify(seven)
    return BuildResult(seven, (member,), certs, report=report)


def build_C5(p2: ProjPoint, p4: ProjPoint, t3, t5) -> BuildResult:
    """Configuration with P1 = P2 x P4 and the closed forms for P6 and P7."""
    p1 = cross(p2, p4)
    p3 = _combo(t3, p1, p2)
    p5 = _combo(t5, p1, p4)
    v = VConfig(p1, p2, p3, p4, p5)
    assert not scal(p1, p2) and not scal(p1, p4)
    assert not delta2(*v.points)
    rank, certs = rank_V(v)
    s = lambda a, b: scal(a, b)
    s11, s13, s15 = s(p1, p1), s(p1, p3), s(p1, p5)
    s22, s23, s24, s25 = s(p2, p2), s(p2, p3), s(p2, p4), s(p2, p5)
    s34, s44, s45 = s(p3, p4), s(p4, p4), s(p4, p5)
    if rank == 9:
        w1 = (s15 * s24 * s34 + s15 * s23 * s44 - s13 * s25 * s44
              - s13 * s24 * s45)
        w2 = s13 * s24 * s25 - 2 * s15 * s22 * s34 + s13 * s22 * s45
        if not w1 and not w2:
            raise DegeneracyError("P6 closed form degenerates for these seeds")
        p6 = combine(w1, p2, w2, p4)
        cubic = _reconstruct(v.points)
        if not cubic.is_eigenpoint(p6):
            raise DegeneracyError("P6 formula fails the eigenpoint conditions")
        s26, s46 = s(p2, p6), s(p4, p6)
        constraint = (s26 * (s45 * s13 - s34 * s15)
                      + s46 * (s25 * s13 - s23 * s15))
        assert not constraint
        s56, s66 = s(p5, p6), s(p6, p6)
        a7 = s26 * s15 * s46 + s24 * s15 * s66
        b7 = s11 * (s26 * s45 + s24 * s56)
        if not a7 and not b7:
            raise DegeneracyError("P7 closed form degenerates for these seeds")
        p7 = combine(a7, p1, b7, p6)
        if not cubic.is_eigenpoint(p7):
            raise DegeneracyError("P7 formula fails the eigenpoint conditions")
        seven = v.points + (p6, p7)
        report = classify(seven)
        certs.update({"rank": rank, "c5_membership_constraint_zero": True})
        return BuildResult(seven, (cubic,), certs, report=report)
    if rank != 8:
        raise DegeneracyError(f"unexpected rank {rank} for a C5 seed")
    # both lines tangent: specialize to the rank-8 second-branch formulas
    if s22 or s44:
        raise DegeneracyError("rank 8 without double tangency", redirect="rank8a")
    pencil = tuple(c.normalized() for c in cubics_through(v.points))
    p6 = combine(s15 * s34, p2, s13 * s25, p4)
    member = _pencil_member_through(pencil, p6)
    if member is None:
        raise DegeneracyError("no pencil member contains the specialized P6")
    s26, s46 = s(p2, p6), s(p4, p6)
    s56, s66 = s(p5, p6), s(p6, p6)
    p7 = combine(s15 * (s26 * s46 + s24 * s66), p1, s11 * s24 * s56, p6)
    if not member.is_eigenpoint(p7):
        raise DegeneracyError("specialized P7 fails the eigenpoint conditions")
    seven = v.points + (p6, p7)
    report = classify(seven)
    certs.update({"rank": rank, "specialized_formulas": True})
    return BuildResult(seven, (member,), certs, report=report)


def build_C8(p1: ProjPoint, p2: ProjPoint, p4: ProjPoint) -> BuildResult:
    """Six-line configuration from the orthocenter-style closed form for P7."""
    if p1 == p2 or p1 == p4 or p2 == p4 or collinear(p1, p2, p4):
        raise DegeneracyError("P1, P2, P4 must be distinct and not aligned")
    s12, s14, s24 = scal(p1, p2), scal(p1, p4), scal(p2, p4)
    if not (s14 * s24) and not (s12 * s24) and not (s12 * s14):
        raise DegeneracyError("orthocenter formula degenerates "
                              "(all coefficient products vanish)")
    x12, x14, x24 = cross(p1, p2), cross(p1, p4), cross(p2, p4)
    p7 = ProjPoint(*(x12.coords[i] * s14 * s24 - s12 * x14.coords[i] * s24
                     + s12 * s14 * x24.coords[i] for i in range(3)))
    try:
        p3 = Line.through(p1, p2).meet(Line.through(p4, p7))
        p5 = Line.through(p1, p4).meet(Line.through(p2, p7))
        p6 = Line.through(p1, p7).meet(Line.through(p2, p4))
    except ValueError as exc:
        raise DegeneracyError(f"intersection construction failed: {exc}") from exc
    seven = (p1, p2, p3, p4, p5, p6, p7)
    for i, j in combinations(range(7), 2):
        if seven[i] == seven[j]:
            raise DegeneracyError("derived points collide")
    cm = condition_matrix(seven)
    rank = cm.rank()
    if rank != 9:
        raise DegeneracyError(f"expected rank 9, found {rank}")
    cubic = unique_cubic_from_rank9(
        cm.matrix.take_rows(cm.matrix.first_independent_rows(9)))
    assert all(cubic.is_eigenpoint(p) for p in seven)
    certs = {
        "rank": rank,
        "orth_P1P2_P3P4": not scal(cross(p1, p2), cross(p3, p4)),
        "orth_P1P4_P2P5": not scal(cross(p1, p4), cross(p2, p5)),
        "orth_P1P6_P2P4": not scal(cross(p1, p6), cross(p2, p4)),
    }
    report = classify(seven)
    return BuildResult(seven, (cubic,), certs, report=report)


#: orthogonal eigenpoint pairs of a diagonal cubic, 1-based
ODECO_ORTHOGONAL_PAIRS = ((1, 2), (1, 3), (2, 3), (1, 7), (2, 6), (3, 5))


def build_odeco(l1, l2, l3) -> BuildResult:
    """Diagonal cubic l1 x^3 + l2 y^3 + l3 z^3 and its seven eigenpoints."""
    l1, l2, l3 = Scalar.of(l1), Scalar.of(l2), Scalar.of(l3)
    if not (l1 and l2 and l3):
        raise DegeneracyError("all three coefficients must be nonzero")
    cubic = Cubic(TernaryForm(3, {(3, 0, 0): l1, (0, 3, 0): l2, (0, 0, 3): l3}))
    q1 = ProjPoint(l1.inverse(), 0, 0)
    q2 = ProjPoint(0, l2.inverse(), 0)
    q3 = ProjPoint(0, 0, l3.inverse())
    add = lambda *ps: ProjPoint(*(sum((p.coords[i] for p in ps), ZERO)
                                  for i in range(3)))
    points = (q1, q2, q3, add(q1, q2, q3), add(q1, q2), add(q1, q3), add(q2, q3))
    assert all(cubic.is_eigenpoint(q) for q in points)
    certs = {f"orth_Q{i}_Q{j}": not scal(points[i - 1], points[j - 1])
             for i, j in ODECO_ORTHOGONAL_PAIRS}
    report = classify(points)
    return BuildResult(points, (cubic.normalized(),), certs, report=report)
