"""Eigenscheme machinery: minors, condition matrices, reconstruction, families.

The three 2x2 minors of [[x, y, z], [fx, fy, fz]] are fixed as

    g1 = x fy - y fx,   g2 = x fz - z fx,   g3 = y fz - z fy,

and a point is an eigenpoint of the cubic f exactly when all three vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _igcd

import numpy as np

from .errors import DegeneracyError
from .forms import BinaryForm, CUBIC_BASIS, TernaryForm, form_gcd
from .geometry import Line, ProjPoint, Q_ISO, cross
from .linalg import ExactMatrix
from .scalars import ONE, ZERO, Scalar

_X = TernaryForm.monomial((1, 0, 0))
_Y = TernaryForm.monomial((0, 1, 0))
_Z = TernaryForm.monomial((0, 0, 1))

_DEG2_BASIS = ((2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2))


def _minor_forms(f: TernaryForm):
    fx, fy, fz = f.partial(0), f.partial(1), f.partial(2)
    return (_X * fy - _Y * fx, _X * fz - _Z * fx, _Y * fz - _Z * fy)


def _derived_phi_forms():
    """Row-entry forms from the coefficient extraction of the three minors."""
    rows = ([], [], [])
    for exps in CUBIC_BASIS:
        b = TernaryForm.monomial(exps)
        g1, g2, g3 = _minor_forms(b)
        rows[0].append(g1)
        rows[1].append(g2)
        rows[2].append(g3)
    return rows


def _printed_phi_forms():
    """The row entries as printed, transcribed term by term."""
    t = TernaryForm

    def m(*terms):
        out = t.zero(3)
        for coeff, exps in terms:
            out = out + t.monomial(exps, coeff)
        return out
    phi1 = [
        m((-3, (2, 1, 0))),
        m((1, (3, 0, 0)), (-2, (1, 2, 0))),
        m((2, (2, 1, 0)), (-1, (0, 3, 0))),
        m((3, (1, 2, 0))),
        m((-2, (1, 1, 1))),
        m((1, (2, 0, 1)), (-1, (0, 2, 1))),
        m((2, (1, 1, 1))),
        m((-1, (0, 1, 2))),
        m((1, (1, 0, 2))),
        t.zero(3),
    ]
    phi2 = [
        m((-3, (2, 0, 1))),
        m((-2, (1, 1, 1))),
        m((-1, (0, 2, 1))),
        t.zero(3),
        m((1, (3, 0, 0)), (-2, (1, 0, 2))),
        m((1, (2, 1, 0)), (-1, (0, 1, 2))),
        m((1, (1, 2, 0))),
        m((2, (2, 0, 1)), (-1, (0, 0, 3))),
        m((2, (1, 1, 1))),
        m((3, (1, 0, 2))),
    ]
    phi3 = [
        t.zero(3),
        m((-1, (2, 0, 1))),
        m((-2, (1, 1, 1))),
        m((-3, (0, 2, 1))),
        m((1, (2, 1, 0))),
        m((1, (1, 2, 0)), (-1, (1, 0, 2))),
        m((1, (0, 3, 0)), (-2, (0, 1, 2))),
        m((2, (1, 1, 1))),
        m((2, (0, 2, 1)), (-1, (0, 0, 3))),
        m((3, (0, 1, 2))),
    ]
    return (phi1, phi2, phi3)


PHI_FORMS = _derived_phi_forms()

# the printed rows and the re-derived ones must agree as polynomial identities
if PHI_FORMS != _printed_phi_forms():  # pragma: no cover
    raise AssertionError("condition-row tables disagree")


def phi_rows(p: ProjPoint):
    """The three condition rows at the canonical representative of p."""
    a, b, c = p.canonical
    rows = []
    for k in range(3):
        rows.append(tuple(f.evaluate((a, b, c)) for f in PHI_FORMS[k]))
    return rows


def minor_operator_matrices():
    """Integer matrices G1, G2, G3 with minors(f) = G_k . coeffs(f) (dense basis)."""
    out = []
    for k in range(3):
        g = np.zeros((10, 10))
        for j, form in enumerate(PHI_FORMS[k]):
            for exps, c in form.coeffs.items():
                assert c.is_rational()
                g[CUBIC_BASIS.index(exps), j] = float(c.ar)
        out.append(g)
    return out


class Cubic:
    """Ternary cubic stored densely in the fixed monomial basis."""

    __slots__ = ("form", "_minors")

    def __init__(self, form):
        if isinstance(form, (list, tuple)):
            form = TernaryForm.from_dense_cubic(form)
        if form.degree != 3:
            raise ValueError("Cubic needs a degree-3 form")
        object.__setattr__(self, "form", form)
        object.__setattr__(self, "_minors", None)

    def __setattr__(self, *_):
        raise AttributeError("Cubic is immutable")

    @property
    def vector(self):
        return self.form.dense_cubic()

    def is_zero(self):
        return self.form.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Cubic):
            return NotImplemented
        return self.form == other.form

    def __hash__(self):
        return hash(self.form)

    def minors(self):
        if self._minors is None:
            object.__setattr__(self, "_minors", _minor_forms(self.form))
        return self._minors

    def gradient_at(self, p: ProjPoint):
        return tuple(self.form.partial(v).evaluate(p.coords) for v in range(3))

    def is_eigenpoint(self, p: ProjPoint) -> bool:
        return all(not g.evaluate(p.coords) for g in self.minors())

    def is_singular_at(self, p: ProjPoint) -> bool:
        return not any(self.gradient_at(p))

    def proportional_to(self, other: "Cubic") -> bool:
        return self.form.proportional_to(other.form)

    def normalized(self) -> "Cubic":
        """Primitive Gaussian-integer vector, first nonzero coefficient with
        positive real part (positive imaginary part when the real part is 0)."""
        vec = self.vector
        lead = next((c for c in vec if c), None)
        if lead is None:
            raise ValueError("zero cubic cannot be normalized")
        if not all(c.in_base_field() for c in vec):
            inv = lead.inverse()
            return Cubic([c * inv for c in vec])
        den = 1
        for c in vec:
            for f in (c.ar, c.ai):
                den = den * f.denominator // _igcd(den, f.denominator)
        ints = [(int(c.ar * den), int(c.ai * den)) for c in vec]
        content = 0
        for re_i, im_i in ints:
            content = _igcd(content, _igcd(abs(re_i), abs(im_i)))
        ints = [(r // content, i // content) for r, i in ints]
        lr, li = next(t for t in ints if t != (0, 0))
        if lr < 0 or (lr == 0 and li < 0):
            ints = [(-r, -i) for r, i in ints]
        return Cubic([Scalar(Fraction(r), Fraction(i)) for r, i in ints])

    def to_complex_vector(self):
        return np.array([c.to_complex() for c in self.vector], dtype=np.complex128)

    def __repr__(self):
        return f"Cubic({[str(c) for c in self.vector]})"


FERMAT = Cubic(TernaryForm(3, {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1}))


@dataclass(frozen=True)
class ConditionMatrix:
    """3n x 10 matrix of eigenpoint conditions with per-row provenance."""

    points: tuple
    matrix: ExactMatrix
    row_provenance: tuple  # (point index, row kind 1|2|3) per row

    def rank(self) -> int:
        return self.matrix.rank()


def condition_matrix(points) -> ConditionMatrix:
    pts = tuple(points)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if pts[i] == pts[j]:
                raise ValueError(f"duplicate points at positions {i} and {j}")
    rows, prov = [], []
    for idx, p in enumerate(pts):
        for k, row in enumerate(phi_rows(p), start=1):
            rows.append(row)
            prov.append((idx, k))
    return ConditionMatrix(pts, ExactMatrix(rows), tuple(prov))


def cubics_through(points):
    """Basis of the linear system of cubics having all the points as eigenpoints."""
    if not points:
        return [Cubic(TernaryForm.monomial(e)) for e in CUBIC_BASIS]
    cm = condition_matrix(points)
    basis = []
    for vec in cm.matrix.kernel():
        assert not any(cm.matrix.apply(vec))
        basis.append(Cubic(list(vec)))
    for cubic in basis:
        assert all(cubic.is_eigenpoint(p) for p in points)
    return basis


def unique_cubic_from_rank9(h: ExactMatrix) -> Cubic:
    """Bordered-determinant cubic annihilated by a rank-9 9x10 matrix."""
    if h.nrows != 9 or h.ncols != 10:
        raise ValueError("expected a 9x10 matrix")
    if h.rank() != 9:
        raise DegeneracyError("matrix rank below 9: linear system underdetermined")
    vec = _bordered_cofactors(h)
    cubic = Cubic(vec)
    assert not any(h.apply(vec))
    return cubic.normalized()


def _bordered_cofactors(h: ExactMatrix):
    sign = -1
    vec = []
    for j in range(10):
        d = h.drop_column(j).det()
        vec.append(d if sign > 0 else -d)
        sign = -sign
    return vec


def bordered_minor_forms(h: ExactMatrix):
    """The minors of the bordered cubic, as det[[H], [phi_k(X)]] expansions."""
    cof = _bordered_cofactors(h)
    out = []
    for k in range(3):
        total = TernaryForm.zero(3)
        for j in range(10):
            if cof[j]:
                total = total + PHI_FORMS[k][j].scale(cof[j])
        out.append(total)
    return tuple(out)


def geiser(f: Cubic, p: ProjPoint) -> ProjPoint:
    """Geiser image (g3 : -g2 : g1) at p; eigenpoints are base points."""
    g1, g2, g3 = (g.evaluate(p.coords) for g in f.minors())
    if not (g1 or g2 or g3):
        raise DegeneracyError("base point: p lies in the eigenscheme")
    return ProjPoint(g3, -g2, g1)


def line_eigen_divisor(f: Cubic, p: ProjPoint, q: ProjPoint) -> BinaryForm:
    """GCD of the three minors restricted to the line p v q.

    Degree counts the eigenpoints on the line with multiplicity; the zero
    form signals that the whole line lies in the eigenscheme.
    """
    if p == q:
        raise ValueError("need two distinct points to span a line")
    restrictions = [g.restrict(p.coords, q.coords) for g in f.minors()]
    out = BinaryForm.zero()
    for r in restrictions:
        out = out.gcd(r)
    return out


@dataclass(frozen=True)
class EigDecomposition:
    """Outcome of the positive-dimensional screen for a cubic's eigenscheme."""

    kind: str  # 'regular-candidate' | 'line-component' | 'conic-component'
    component: TernaryForm | None
    residual_points: tuple
    residual_degree: int
    exact_residual: bool = True


def positive_dim_analysis(f: Cubic) -> EigDecomposition:
    if f.is_zero():
        raise ValueError("zero cubic")
    minors = f.minors()
    if all(g.is_zero() for g in minors):
        raise DegeneracyError("all eigenscheme minors vanish identically")
    g = None
    for m in minors:
        if m.is_zero():
            continue
        g = m if g is None else form_gcd(g, m)
    if g.degree == 0:
        return EigDecomposition("regular-candidate", None, (), 7)
    if g.degree == 3:
        raise DegeneracyError("eigenscheme minors share a cubic factor")
    h = tuple(m.divexact(g) for m in minors)
    if g.degree == 2:
        duals = [tuple(hh.coeffs.get(e, ZERO) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
                 for hh in h]
        lines = [Line(*d) for d in duals if any(d)]
        for i in range(len(lines)):
            for j in range(i + 1, len(lines)):
                if lines[i] != lines[j]:
                    pt = lines[i].meet(lines[j])
                    return EigDecomposition("conic-component", g, (pt,), 1)
        raise DegeneracyError("residual linear forms do not meet in a point")
    # line component: the residual scheme is the eigenvector locus of an
    # exact 3x3 matrix recovered from the Koszul syzygy
    mmat = _koszul_matrix(h)
    pts, exact = _matrix_eigen_points(mmat)
    return EigDecomposition("line-component", g, tuple(pts), 3, exact)


def _koszul_matrix(h) -> ExactMatrix:
    """Linear forms m with h1 = x m2 - y m3, h2 = x m1 - z m3, h3 = y m1 - z m2.

    Returns the matrix taking (x, y, z) to (m3, m2, m1): its eigenvectors cut
    out the residual scheme.
    """
    lin = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    cols = []
    for mi in range(3):
        for var in range(3):
            unit = [TernaryForm.zero(1)] * 3
            unit[mi] = TernaryForm.monomial(lin[var])
            m1, m2, m3 = unit
            ids = (_X * m2 - _Y * m3, _X * m1 - _Z * m3, _Y * m1 - _Z * m2)
            col = []
            for q in ids:
                col.extend(q.coeffs.get(e, ZERO) for e in _DEG2_BASIS)
            cols.append(col)
    rhs = []
    for q in h:
        rhs.extend(q.coeffs.get(e, ZERO) for e in _DEG2_BASIS)
    a = ExactMatrix(list(zip(*cols)))
    sol = a.solve(rhs)
    if sol is None:
        raise DegeneracyError("Koszul descent failed: no linear matrix exists")
    m1 = sol[0:3]
    m2 = sol[3:6]
    m3 = sol[6:9]
    return ExactMatrix([m3, m2, m1])


def _matrix_eigen_points(m: ExactMatrix):
    """Eigenvectors of an exact 3x3 matrix; exact where the eigenvalue is."""
    tr = m[0, 0] + m[1, 1] + m[2, 2]
    s2 = (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
          + m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
          + m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    det = m.det()

    def char(lam: Scalar) -> Scalar:
        return -lam ** 3 + tr * lam ** 2 - s2 * lam + det

    mc = np.array([[m[i, j].to_complex() for j in range(3)] for i in range(3)])
    numeric_vals, numeric_vecs = np.linalg.eig(mc)
    base_field = all(m[i, j].in_base_field() for i in range(3) for j in range(3))

    exact_vals = []
    if base_field:
        for z in numeric_vals:
            cand = Scalar(Fraction(z.real).limit_denominator(10 ** 8),
                          Fraction(z.imag).limit_denominator(10 ** 8))
            if not char(cand) and cand not in exact_vals:
                exact_vals.append(cand)

    points = []
    used = set()
    for lam in exact_vals:
        shifted = ExactMatrix([[m[i, j] - (lam if i == j else ZERO)
                                for j in range(3)] for i in range(3)])
        for vec in shifted.kernel():
            p = ProjPoint(*vec)
            if p not in points:
                points.append(p)
        used.update(i for i, z in enumerate(numeric_vals)
                    if abs(z - lam.to_complex()) < 1e-6)
    exact = len(points) == len(numeric_vals)
    if not exact:
        for i, z in enumerate(numeric_vals):
            if i in used:
                continue
            v = numeric_vecs[:, i]
            points.append(tuple(complex(c) for c in v))
    return points, exact


# -- constructive families with 1-dimensional eigenschemes ---------------------------


def build_f_of_r(r: Line) -> Cubic:
    """Cubic (r^2 - 3 <r,r> Q_iso) r whose eigenscheme contains two tangent lines."""
    a, b, c = r.canonical
    s = a * a + b * b + c * c
    if not s:
        raise DegeneracyError("line is tangent to the isotropic conic")
    rf = TernaryForm.linear(a, b, c)
    return Cubic(rf * rf * rf - Q_ISO.scale(3 * s) * rf)


def build_eigenline_family(t: Line, ell: Line, lam=None, r0: Line | None = None) -> Cubic:
    """A cubic whose eigenscheme contains the full line t."""
    tf = t.form()
    if not t.is_tangent_to_isotropic():
        cubic = Cubic(tf * tf * ell.form())
    else:
        p = t.tangency_point()
        if r0 is None:
            raise DegeneracyError("tangent line needs an auxiliary line r0 through "
                                  "the tangency point")
        if r0 == t or not r0.contains(p):
            raise DegeneracyError("r0 must differ from t and pass through the "
                                  "tangency point")
        lam = Scalar.of(lam if lam is not None else 0)
        base = tf * tf * ell.form()
        cubic = Cubic(base + build_f_of_r(r0).form.scale(lam))
    if cubic.is_zero():
        raise DegeneracyError("family member degenerates to the zero cubic")
    p1, p2 = t.two_points()
    assert line_eigen_divisor(cubic, p1, p2).is_zero()
    return cubic


def build_eigenconic_family(kind: str, *, ell: Line | None = None,
                            r: Line | None = None, lam=1, mu=1):
    """A cubic together with the conic contained in its eigenscheme."""
    if kind == "iso-line":
        if ell is None:
            raise ValueError("iso-line kind needs the line ell")
        cubic = Cubic(ell.form() * Q_ISO)
        conic = Q_ISO
    elif kind == "bitangent":
        if r is None:
            raise ValueError("bitangent kind needs the secant line r")
        if r.is_tangent_to_isotropic():
            raise DegeneracyError("bitangent kind needs a non-tangent line")
        lam, mu = Scalar.of(lam), Scalar.of(mu)
        if not lam:
            raise DegeneracyError("lambda = 0 degenerates the conic")
        rf = r.form()
        cubic = Cubic(rf * (Q_ISO.scale(lam) + (rf * rf).scale(mu)))
        conic = Q_ISO.scale(lam) + (rf * rf).scale(3 * mu)
    elif kind == "hyperosculating":
        if r is None:
            raise ValueError("hyperosculating kind needs the tangent line r")
        if not r.is_tangent_to_isotropic():
            raise DegeneracyError("hyperosculating kind needs a tangent line")
        rf = r.form()
        cubic = Cubic(rf * (Q_ISO - rf * rf))
        conic = Q_ISO - (rf * rf).scale(3)
    else:
        raise ValueError(f"unknown conic family kind: {kind!r}")
    assert all(conic.divides(g) for g in cubic.minors())
    return cubic, conic
