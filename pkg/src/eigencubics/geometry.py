"""Projective plane primitives tied to the quadratic form x^2 + y^2 + z^2.

Points keep the representative they were built with: the pairing scal() and
the invariants sigma/delta are scale-covariant, so callers only ever rely on
their vanishing. Equality and hashing go through a canonical representative.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .forms import TernaryForm
from .linalg import ExactMatrix
from .scalars import I, ONE, ZERO, Scalar, sqrt_exact, sqrt_or_adjoin

Q_ISO = TernaryForm(2, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1})


class ProjPoint:
    """Point of P^2 with exact coordinates; equality up to scale."""

    __slots__ = ("coords", "_canon")

    def __init__(self, a, b=None, c=None):
        if b is None:
            a, b, c = a
        coords = (Scalar.of(a), Scalar.of(b), Scalar.of(c))
        if not any(coords):
            raise ValueError("projective point needs a nonzero coordinate")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "_canon", None)

    def __setattr__(self, *_):
        raise AttributeError("ProjPoint is immutable")

    @property
    def canonical(self):
        if self._canon is None:
            object.__setattr__(self, "_canon", _canonical_triple(self.coords))
        return self._canon

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __repr__(self):
        return "(" + " : ".join(str(c) for c in self.canonical) + ")"

    def scaled(self, s) -> "ProjPoint":
        s = Scalar.of(s)
        return ProjPoint(*(c * s for c in self.coords))

    def to_complex(self):
        return tuple(c.to_complex() for c in self.coords)


class Line:
    """Line a x + b y + c z = 0, stored by its dual coordinates."""

    __slots__ = ("dual", "_canon")

    def __init__(self, a, b=None, c=None):
        if b is None:
            a, b, c = a
        dual = (Scalar.of(a), Scalar.of(b), Scalar.of(c))
        if not any(dual):
            raise ValueError("line needs a nonzero dual coordinate")
        object.__setattr__(self, "dual", dual)
        object.__setattr__(self, "_canon", None)

    def __setattr__(self, *_):
        raise AttributeError("Line is immutable")

    @classmethod
    def through(cls, p: ProjPoint, q: ProjPoint) -> "Line":
        return cls(*cross(p, q).coords)

    @property
    def canonical(self):
        if self._canon is None:
            object.__setattr__(self, "_canon", _canonical_triple(self.dual))
        return self._canon

    def __eq__(self, other):
        if not isinstance(other, Line):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __repr__(self):
        return "Line[" + " : ".join(str(c) for c in self.canonical) + "]"

    def contains(self, p: ProjPoint) -> bool:
        return not _dot3(self.dual, p.coords)

    def form(self) -> TernaryForm:
        return TernaryForm.linear(*self.dual)

    def two_points(self):
        """Two distinct points spanning the line."""
        e = [ProjPoint(1, 0, 0), ProjPoint(0, 1, 0), ProjPoint(0, 0, 1)]
        pts = []
        d = ProjPoint(*self.dual)
        for ek in e:
            if d == ek:
                continue
            cand = cross(d, ek)
            if all(cand != p for p in pts):
                pts.append(cand)
            if len(pts) == 2:
                return pts[0], pts[1]
        raise RuntimeError("failed to span line")  # pragma: no cover

    def meet(self, other: "Line") -> ProjPoint:
        if self == other:
            raise ValueError("lines coincide")
        return ProjPoint(*_cross3(self.dual, other.dual))

    def is_tangent_to_isotropic(self) -> bool:
        # self-duality of Q_iso: tangent lines are the isotropic dual vectors
        return not _dot3(self.dual, self.dual)

    def tangency_point(self) -> ProjPoint:
        if not self.is_tangent_to_isotropic():
            raise ValueError("line is not tangent to the isotropic conic")
        return ProjPoint(*self.dual)


def _canonical_triple(coords):
    """Primitive representative: first nonzero entry 1, then denominators and
    integer content cleared (pure Q(i) triples only; extension stays monic)."""
    lead = next(c for c in coords if c)
    inv = lead.inverse()
    monic = tuple(c * inv for c in coords)
    if any(not c.in_base_field() for c in monic):
        return monic
    den = 1
    for c in monic:
        for f in (c.ar, c.ai):
            den = den * f.denominator // gcd(den, f.denominator)
    ints = [(int(c.ar * den), int(c.ai * den)) for c in monic]
    content = 0
    for re_i, im_i in ints:
        content = gcd(content, gcd(abs(re_i), abs(im_i)))
    return tuple(Scalar(Fraction(re_i // content), Fraction(im_i // content))
                 for re_i, im_i in ints)


def _dot3(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _cross3(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def combine(a, p: ProjPoint, b, q: ProjPoint) -> ProjPoint:
    """The point a*p + b*q on the stored representatives."""
    a, b = Scalar.of(a), Scalar.of(b)
    return ProjPoint(*(a * pc + b * qc for pc, qc in zip(p.coords, q.coords)))


def scal(p: ProjPoint, q: ProjPoint) -> Scalar:
    """Bilinear pairing <p, q> = A1 A2 + B1 B2 + C1 C2 on the stored reps."""
    return _dot3(p.coords, q.coords)


def cross(p: ProjPoint, q: ProjPoint) -> ProjPoint:
    if p == q:
        raise ValueError("cross product of equal projective points")
    return ProjPoint(*_cross3(p.coords, q.coords))


def collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    m = ExactMatrix([p.coords, q.coords, r.coords])
    return not m.det()


def on_isotropic(p: ProjPoint) -> bool:
    return not scal(p, p)


def sigma(p1: ProjPoint, p2: ProjPoint) -> Scalar:
    """Tangency invariant s11 s22 - s12^2 of the line p1 v p2."""
    return scal(p1, p1) * scal(p2, p2) - scal(p1, p2) ** 2


def delta1(p1: ProjPoint, p2: ProjPoint, p4: ProjPoint) -> Scalar:
    """s11 s24 - s12 s14 = <p1 x p2, p1 x p4>."""
    return scal(p1, p1) * scal(p2, p4) - scal(p1, p2) * scal(p1, p4)


def delta1bar(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint) -> Scalar:
    """s11 s23 + s12 s13, defined for distinct aligned points."""
    if p1 == p2 or p1 == p3 or p2 == p3:
        raise ValueError("delta1bar needs three distinct points")
    if not collinear(p1, p2, p3):
        raise ValueError("delta1bar needs aligned points")
    return scal(p1, p1) * scal(p2, p3) + scal(p1, p2) * scal(p1, p3)


def validate_v_configuration(p1, p2, p3, p4, p5):
    pts = (p1, p2, p3, p4, p5)
    for i in range(5):
        for j in range(i + 1, 5):
            if pts[i] == pts[j]:
                raise ValueError(f"V-configuration needs distinct points (P{i+1} = P{j+1})")
    if not collinear(p1, p2, p3):
        raise ValueError("P1, P2, P3 must be aligned")
    if not collinear(p1, p4, p5):
        raise ValueError("P1, P4, P5 must be aligned")
    if collinear(p1, p2, p4):
        raise ValueError("P1, P2, P4 must not be aligned")


def delta2(p1, p2, p3, p4, p5) -> Scalar:
    """s12 s13 s45 - s14 s15 s23 on a validated V-configuration."""
    validate_v_configuration(p1, p2, p3, p4, p5)
    return (scal(p1, p2) * scal(p1, p3) * scal(p4, p5)
            - scal(p1, p4) * scal(p1, p5) * scal(p2, p3))


def isotropic_point(lam, mu) -> ProjPoint:
    """Rational parametrization (l^2+m^2 : i(l^2-m^2) : 2 i l m) of Q_iso."""
    lam, mu = Scalar.of(lam), Scalar.of(mu)
    return ProjPoint(lam ** 2 + mu ** 2, I * (lam ** 2 - mu ** 2), 2 * I * lam * mu)


# -- the SO3 action ----------------------------------------------------------------

#: cyclic coordinate rotation: C maps (v1, v2, v3) to (v3, v1, v2)
_CYCLE = ((0, 0, 1), (1, 0, 0), (0, 1, 0))


class SO3Map:
    """Exact complex special orthogonal 3x3 matrix: M M^t = I, det M = 1."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: ExactMatrix):
        if matrix.nrows != 3 or matrix.ncols != 3:
            raise ValueError("SO3Map needs a 3x3 matrix")
        if matrix.matmul(matrix.transpose()) != ExactMatrix.identity(3):
            raise ValueError("matrix is not orthogonal")
        if matrix.det() != ONE:
            raise ValueError("matrix has determinant != 1")
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, *_):
        raise AttributeError("SO3Map is immutable")

    @classmethod
    def identity(cls) -> "SO3Map":
        return cls(ExactMatrix.identity(3))

    def inverse(self) -> "SO3Map":
        return SO3Map(self.matrix.transpose())

    def compose(self, other: "SO3Map") -> "SO3Map":
        return SO3Map(self.matrix.matmul(other.matrix))

    def apply_point(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(*self.matrix.apply(p.coords))

    def apply_form(self, f: TernaryForm) -> TernaryForm:
        # (M . f)(v) = f(M^{-1} v) and the inverse of an SO3 matrix is its transpose
        return f.compose_linear(self.matrix.transpose().rows)

    def __repr__(self):
        return f"SO3Map({self.matrix.rows})"


def _mat(rows) -> ExactMatrix:
    return ExactMatrix(rows)


def _cycle_power(k: int) -> ExactMatrix:
    m = ExactMatrix.identity(3)
    for _ in range(k % 3):
        m = _mat(_CYCLE).matmul(m)
    return m


def _template_e1(v, omega) -> ExactMatrix:
    """Orthogonal frame with first column v (unit) given omega^2 = v2^2 + v3^2."""
    a, b, c = v
    inv = omega.inverse()
    return _mat([
        [a, omega, ZERO],
        [b, -a * b * inv, c * inv],
        [c, -a * c * inv, -b * inv],
    ])


def so3_normalize(p: ProjPoint):
    """SO3 map M and orbit representative R with M . R proportional to p.

    The representative is (1:i:0) for isotropic points and (1:0:0) otherwise.
    A quadratic extension is adjoined only when no branch stays inside Q(i).
    """
    coords = p.canonical
    s = _dot3(coords, coords)

    if not s:
        k = next(i for i in range(3) if coords[i])
        shifted = tuple(coords[(k + i) % 3] for i in range(3))
        inv = shifted[0].inverse()
        _, b, c = (c * inv for c in shifted)
        base = _mat([
            [-ONE, ZERO, ZERO],
            [ZERO, I * b, I * c],
            [ZERO, I * c, -I * b],
        ])
        m = _cycle_power(k).matmul(base)
        result = SO3Map(m)
        rep = ProjPoint(1, I, 0)
        assert collinear_vectors(result.matrix.apply(rep.coords), coords)
        return result, rep

    rep = ProjPoint(1, 0, 0)
    t = sqrt_exact(s)
    if t is not None:
        v = tuple(c / t for c in coords)
        branches = []
        for k in range(3):
            vs = tuple(v[(k + i) % 3] for i in range(3))
            rad = vs[1] ** 2 + vs[2] ** 2
            if rad:
                branches.append((k, vs, rad))
        # prefer a branch that stays inside Q(i), in the stated order
        ordered = ([b for b in branches if sqrt_exact(b[2]) is not None]
                   or branches)
        k, vs, rad = ordered[0]
        omega = sqrt_or_adjoin(rad)
        m = _cycle_power(k).matmul(_template_e1(vs, omega))
        result = SO3Map(m)
        assert collinear_vectors(result.matrix.apply(rep.coords), coords)
        return result, rep

    # <p, p> is not a square in Q(i): adjoin its root and complete the frame
    # through a pair of isotropic directions orthogonal to p
    omega = sqrt_or_adjoin(s)
    v = tuple(c / omega for c in coords)
    k = next(i for i in range(3) if s != coords[i] ** 2)
    ek = tuple(ONE if i == k else ZERO for i in range(3))
    w1 = _cross3(v, ek)
    w2 = _cross3(v, w1)
    q = ONE - v[k] ** 2
    beta = (4 * q).inverse()
    e1 = tuple(w1[i] * (ONE + beta) + I * w2[i] * (ONE - beta) for i in range(3))
    e2 = tuple(I * (ONE - beta) * w1[i] - (ONE + beta) * w2[i] for i in range(3))
    m = _mat([[v[i], e1[i], e2[i]] for i in range(3)])
    if m.det() != ONE:
        m = _mat([[v[i], e1[i], -e2[i]] for i in range(3)])
    result = SO3Map(m)
    assert collinear_vectors(result.matrix.apply(rep.coords), coords)
    return result, rep


def collinear_vectors(u, v) -> bool:
    """True when the coordinate triples are proportional."""
    return all(not c for c in _cross3(u, v))
