"""Homogeneous ternary forms over exact scalars, and binary forms on a line.

Cubics are also handled densely in the fixed 10-monomial basis
(x^3, x^2 y, x y^2, y^3, x^2 z, x y z, y^2 z, x z^2, y z^2, z^3).
"""

from __future__ import annotations

from math import comb

from .scalars import ONE, ZERO, Scalar

#: Exponent triples of the dense cubic basis, in the fixed serialization order.
CUBIC_BASIS = (
    (3, 0, 0), (2, 1, 0), (1, 2, 0), (0, 3, 0), (2, 0, 1),
    (1, 1, 1), (0, 2, 1), (1, 0, 2), (0, 1, 2), (0, 0, 3),
)

_CUBIC_INDEX = {e: i for i, e in enumerate(CUBIC_BASIS)}


def _basis_key(exps):
    # ascending (z-degree, y-degree) reproduces the dense cubic order
    return (exps[2], exps[1])


def _lex_key(exps):
    return exps  # x > y > z when compared descending


class TernaryForm:
    """Homogeneous polynomial in x, y, z with Scalar coefficients."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs=None):
        clean = {}
        for exps, c in (coeffs or {}).items():
            c = Scalar.of(c)
            if not c:
                continue
            if len(exps) != 3 or any(e < 0 for e in exps) or sum(exps) != degree:
                raise ValueError(f"exponent {exps} invalid for degree {degree}")
            clean[tuple(exps)] = c
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *_):
        raise AttributeError("TernaryForm is immutable")

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, degree: int) -> "TernaryForm":
        return cls(degree, {})

    @classmethod
    def monomial(cls, exps, coeff=1) -> "TernaryForm":
        return cls(sum(exps), {tuple(exps): Scalar.of(coeff)})

    @classmethod
    def linear(cls, a, b, c) -> "TernaryForm":
        return cls(1, {(1, 0, 0): Scalar.of(a), (0, 1, 0): Scalar.of(b),
                       (0, 0, 1): Scalar.of(c)})

    @classmethod
    def from_dense_cubic(cls, vec) -> "TernaryForm":
        if len(vec) != 10:
            raise ValueError("dense cubic needs 10 coefficients")
        return cls(3, {CUBIC_BASIS[i]: Scalar.of(v) for i, v in enumerate(vec)})

    def dense_cubic(self):
        if self.degree != 3:
            raise ValueError("dense vector only defined for cubics")
        return tuple(self.coeffs.get(e, ZERO) for e in CUBIC_BASIS)

    # -- basic structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TernaryForm):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def terms(self):
        """Terms sorted in the fixed basis order."""
        return sorted(self.coeffs.items(), key=lambda kv: _basis_key(kv[0]))

    def leading_coefficient(self) -> Scalar:
        if not self.coeffs:
            return ZERO
        return self.terms()[0][1]

    def monic(self) -> "TernaryForm":
        lc = self.leading_coefficient()
        if not lc:
            return self
        return self.scale(lc.inverse())

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other: "TernaryForm") -> "TernaryForm":
        if self.degree != other.degree:
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise ValueError("cannot add forms of different degrees")
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, ZERO) + c
        return TernaryForm(self.degree, out)

    def __neg__(self):
        return TernaryForm(self.degree, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "TernaryForm":
        s = Scalar.of(s)
        return TernaryForm(self.degree, {e: c * s for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, TernaryForm):
            out = {}
            for e1, c1 in self.coeffs.items():
                for e2, c2 in other.coeffs.items():
                    e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                    out[e] = out.get(e, ZERO) + c1 * c2
            return TernaryForm(self.degree + other.degree, out)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = TernaryForm.monomial((0, 0, 0), 1)
        for _ in range(n):
            out = out * self
        return out

    # -- calculus and evaluation ---------------------------------------------------

    def partial(self, var: int) -> "TernaryForm":
        """Partial derivative with respect to variable index 0, 1, or 2."""
        if self.degree == 0:
            return TernaryForm.zero(0)
        out = {}
        for e, c in self.coeffs.items():
            if e[var] == 0:
                continue
            ne = list(e)
            ne[var] -= 1
            out[tuple(ne)] = c * e[var]
        return TernaryForm(self.degree - 1, out)

    def evaluate(self, point) -> Scalar:
        a, b, c = (Scalar.of(v) for v in point)
        total = ZERO
        for (i, j, k), coeff in self.coeffs.items():
            total = total + coeff * a ** i * b ** j * c ** k
        return total

    def compose_linear(self, mat) -> "TernaryForm":
        """Substitute (x, y, z) -> mat . (x, y, z)."""
        rows = [TernaryForm.linear(*[Scalar.of(v) for v in row]) for row in mat]
        out = TernaryForm.zero(self.degree)
        for (i, j, k), coeff in self.coeffs.items():
            term = rows[0] ** i * rows[1] ** j * rows[2] ** k
            out = out + term.scale(coeff)
        return out

    def restrict(self, p, q) -> "BinaryForm":
        """The binary form f(u1*p + u2*q) in the line parameters (u1, u2)."""
        p = [Scalar.of(v) for v in p]
        q = [Scalar.of(v) for v in q]
        d = self.degree
        out = [ZERO] * (d + 1)
        for exps, coeff in self.coeffs.items():
            # expand each coordinate power (u1*pv + u2*qv)^e and convolve
            parts = [ZERO] * (d + 1)
            parts[0] = coeff
            deg_so_far = 0
            for var, e in enumerate(exps):
                if e == 0:
                    continue
                binom = [comb(e, j) * p[var] ** (e - j) * q[var] ** j for j in range(e + 1)]
                nxt = [ZERO] * (d + 1)
                for a in range(deg_so_far + 1):
                    if not parts[a]:
                        continue
                    for j, bc in enumerate(binom):
                        nxt[a + j] = nxt[a + j] + parts[a] * bc
                parts = nxt
                deg_so_far += e
            for k in range(d + 1):
                out[k] = out[k] + parts[k]
        return BinaryForm(out)

    # -- division and gcd -----------------------------------------------------------

    def divexact(self, divisor: "TernaryForm") -> "TernaryForm":
        """Exact quotient self / divisor; raises ValueError when not divisible."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero form")
        if self.is_zero():
            return TernaryForm.zero(max(self.degree - divisor.degree, 0))
        if self.degree < divisor.degree:
            raise ValueError("form is not divisible: degree too small")
        rem = dict(self.coeffs)
        lead_d = max(divisor.coeffs, key=_lex_key)
        lc_d = divisor.coeffs[lead_d]
        quot = {}
        while rem:
            lead_r = max(rem, key=_lex_key)
            qe = tuple(lead_r[i] - lead_d[i] for i in range(3))
            if any(e < 0 for e in qe):
                raise ValueError("form is not divisible")
            qc = rem[lead_r] / lc_d
            quot[qe] = qc
            for e, c in divisor.coeffs.items():
                te = (e[0] + qe[0], e[1] + qe[1], e[2] + qe[2])
                nv = rem.get(te, ZERO) - qc * c
                if nv:
                    rem[te] = nv
                else:
                    rem.pop(te, None)
        return TernaryForm(self.degree - divisor.degree, quot)

    def divides(self, other: "TernaryForm") -> bool:
        try:
            other.divexact(self)
            return True
        except ValueError:
            return False

    def proportional_to(self, other: "TernaryForm") -> bool:
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.monic() == other.monic()

    def __repr__(self):
        if not self.coeffs:
            return f"TernaryForm(0; degree {self.degree})"
        names = ("x", "y", "z")
        bits = []
        for e, c in self.terms():
            mono = "*".join(f"{names[v]}^{e[v]}" if e[v] > 1 else names[v]
                            for v in range(3) if e[v])
            bits.append(f"({c}){'*' + mono if mono else ''}")
        return "TernaryForm(" + " + ".join(bits) + ")"


def form_gcd(f: TernaryForm, g: TernaryForm) -> TernaryForm:
    """GCD in Q(i)[x,y,z], monic in the fixed basis order."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) undefined")
    d = _gcd_dict(dict(f.coeffs), dict(g.coeffs))
    deg = sum(next(iter(d)))
    return TernaryForm(deg, d).monic()


# dict-level polynomial helpers for the gcd recursion; keys are exponent
# triples (not necessarily all of the same total degree mid-recursion)

def _d_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
            v = out.get(e, ZERO) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out

def _d_sub(a, b):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, ZERO) - c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out

def _d_divexact(a, b):
    if not b:
        raise ZeroDivisionError
    if not a:
        return {}
    rem = dict(a)
    lead_b = max(b, key=_lex_key)
    lc_b = b[lead_b]
    quot = {}
    while rem:
        lead_r = max(rem, key=_lex_key)
        qe = tuple(lead_r[i] - lead_b[i] for i in range(3))
        if any(e < 0 for e in qe):
            raise ValueError("not divisible")
        qc = rem[lead_r] / lc_b
        quot[qe] = qc
        for e, c in b.items():
            te = (e[0] + qe[0], e[1] + qe[1], e[2] + qe[2])
            nv = rem.get(te, ZERO) - qc * c
            if nv:
                rem[te] = nv
            else:
                rem.pop(te, None)
    return quot

def _d_monic(a):
    if not a:
        return a
    lc = a[min(a, key=_basis_key)]
    inv = lc.inverse()
    return {e: c * inv for e, c in a.items()}

def _main_var(a, b):
    for v in (2, 1, 0):
        if any(e[v] for e in a) or any(e[v] for e in b):
            return v
    return None

def _v_coeffs(a, v):
    """Coefficient dicts of a viewed as a polynomial in variable v."""
    out = {}
    for e, c in a.items():
        le = list(e)
        k = le[v]
        le[v] = 0
        out.setdefault(k, {})[tuple(le)] = c
    deg = max(out) if out else -1
    return [out.get(k, {}) for k in range(deg + 1)]

def _v_assemble(coeff_dicts, v):
    out = {}
    for k, cd in enumerate(coeff_dicts):
        for e, c in cd.items():
            le = list(e)
            le[v] = k
            out[tuple(le)] = c
    return out

def _gcd_dict(a, b):
    if not a:
        return _d_monic(b)
    if not b:
        return _d_monic(a)
    v = _main_var(a, b)
    if v is None:
        return {(0, 0, 0): ONE}

    def content_pp(p):
        cs = [c for c in _v_coeffs(p, v) if c]
        cont = cs[0]
        for c in cs[1:]:
            cont = _gcd_dict(cont, c)
        return cont, _d_divexact(p, cont)

    cont_a, pa = content_pp(a)
    cont_b, pb = content_pp(b)
    cont = _gcd_dict(cont_a, cont_b)
    # pseudo-remainder sequence on the primitive parts
    f, g = pa, pb
    while True:
        gc = _v_coeffs(g, v)
        if len(gc) == 1:  # g free of v: primitive, so unit content
            f = {(0, 0, 0): ONE}
            g = {}
            break
        r = f
        while r:
            rc = _v_coeffs(r, v)
            if len(rc) < len(gc):
                break
            shift = [0, 0, 0]
            shift[v] = len(rc) - len(gc)
            t = _d_mul({tuple(shift): ONE}, rc[-1])
            r = _d_sub(_d_mul(gc[-1], r), _d_mul(t, g))
        if not r:
            f = g
            break
        _, r = content_pp(r)
        f, g = g, r
    return _d_monic(_d_mul(cont, f))


class BinaryForm:
    """Homogeneous binary form sum c_k * u1^(d-k) * u2^k; () is the zero form."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = tuple(Scalar.of(c) for c in coeffs)
        if cs and not any(cs):
            cs = ()
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, *_):
        raise AttributeError("BinaryForm is immutable")

    @classmethod
    def zero(cls) -> "BinaryForm":
        return cls(())

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def evaluate(self, u1, u2) -> Scalar:
        u1, u2 = Scalar.of(u1), Scalar.of(u2)
        total = ZERO
        d = self.degree
        for k, c in enumerate(self.coeffs):
            total = total + c * u1 ** (d - k) * u2 ** k
        return total

    def monic(self) -> "BinaryForm":
        if self.is_zero():
            return self
        lc = next(c for c in self.coeffs if c)
        inv = lc.inverse()
        return BinaryForm([c * inv for c in self.coeffs])

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        if self.is_zero() or other.is_zero():
            return BinaryForm.zero()
        out = [ZERO] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return BinaryForm(out)

    def divexact(self, other: "BinaryForm") -> "BinaryForm":
        if other.is_zero():
            raise ZeroDivisionError
        if self.is_zero():
            return self
        a, alo, ahi = _bstrip(self.coeffs)
        b, blo, bhi = _bstrip(other.coeffs)
        if blo > alo or bhi > ahi:
            raise ValueError("binary form not divisible")
        q, r = _upoly_divmod(a, b)
        if any(r):
            raise ValueError("binary form not divisible")
        pad = [ZERO] * (alo - blo) + q + [ZERO] * (ahi - bhi)
        return BinaryForm(pad)

    def gcd(self, other: "BinaryForm") -> "BinaryForm":
        if self.is_zero():
            return other.monic()
        if other.is_zero():
            return self.monic()
        a, alo, ahi = _bstrip(self.coeffs)
        b, blo, bhi = _bstrip(other.coeffs)
        g = _upoly_gcd(a, b)
        lo, hi = min(alo, blo), min(ahi, bhi)
        return BinaryForm([ZERO] * lo + g + [ZERO] * hi).monic()

    def __repr__(self):
        if self.is_zero():
            return "BinaryForm(0)"
        d = self.degree
        bits = [f"({c})*u1^{d - k}*u2^{k}" for k, c in enumerate(self.coeffs) if c]
        return "BinaryForm(" + " + ".join(bits) + ")"


def _bstrip(coeffs):
    """Strip u2^lo and u1^hi factors; returns (middle coeff list, lo, hi)."""
    lo = 0
    while not coeffs[lo]:
        lo += 1
    hi = 0
    while not coeffs[len(coeffs) - 1 - hi]:
        hi += 1
    mid = list(coeffs[lo:len(coeffs) - hi])
    return mid, lo, hi


def _upoly_divmod(a, b):
    # coefficient lists in ascending u2-power; division along the top index
    r = list(a)
    q = [ZERO] * max(0, len(a) - len(b) + 1)
    while len(r) >= len(b) and any(r):
        while r and not r[-1]:
            r.pop()
        if len(r) < len(b):
            break
        c = r[-1] / b[-1]
        k = len(r) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            r[k + i] = r[k + i] - c * bc
        r.pop()
    return q, r


def _upoly_gcd(a, b):
    a, b = list(a), list(b)
    while any(b):
        _, r = _upoly_divmod(a, b)
        while r and not r[-1]:
            r.pop()
        a, b = b, r
    inv = a[-1].inverse()
    return [c * inv for c in a]
