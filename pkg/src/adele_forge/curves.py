"""Function fields, places, divisors, Riemann-Roch spaces and the elliptic
group law for the two supported curve models: the projective line and a
smooth Weierstrass curve y^2 = x^3 + a*x + b over a prime field.

Places of the projective line are monic irreducible polynomials or the
point at infinity.  Places of an elliptic curve are the origin O or Galois
orbits of affine points with coordinates in a canonical GF(p^d); functions
are pairs a(x) + b(x)*y.
"""

from functools import lru_cache

from .errors import DomainError
from .fields import (
    FieldElement,
    Polynomial,
    RationalFunction,
    canonical_field,
    factor_polynomial,
    field_sqrt,
    roots_in_field,
)
from .series import LaurentSeries

DEFAULT_EXT_BOUND = 6


class CurveModel:
    __slots__ = ("kind", "spec", "a", "b", "_hash")

    def __init__(self, kind, spec, a=None, b=None):
        if spec.k != 1:
            raise DomainError("curve models require a prime base field")
        self.kind = kind
        self.spec = spec
        if kind == "p1":
            self.a = None
            self.b = None
        elif kind == "elliptic":
            a = spec.element(a)
            b = spec.element(b)
            four = spec.element(4)
            disc = spec.element(-16) * (four * a**3 + spec.element(27) * b * b)
            if not disc:
                raise DomainError("singular Weierstrass equation (discriminant 0)")
            self.a = a
            self.b = b
        else:
            raise DomainError("unknown curve model %r" % (kind,))
        self._hash = hash((kind, spec, self.a, self.b))

    @classmethod
    def projective_line(cls, spec):
        return cls("p1", spec)

    @classmethod
    def elliptic(cls, spec, a, b):
        return cls("elliptic", spec, a, b)

    @property
    def genus(self):
        return 0 if self.kind == "p1" else 1

    def __eq__(self, other):
        return (
            isinstance(other, CurveModel)
            and self.kind == other.kind
            and self.spec == other.spec
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.kind == "p1":
            return "P1/%r" % (self.spec,)
        return "E[y^2=x^3+%r*x+%r]/%r" % (self.a, self.b, self.spec)

    def rhs_poly(self, field=None):
        """x^3 + a*x + b over the base field or an extension of it."""
        if self.kind != "elliptic":
            raise DomainError("rhs only defined for the elliptic model")
        f = field or self.spec
        return Polynomial.from_elements(
            f, [f.element(self.b.val[0]), f.element(self.a.val[0]), f.zero(), f.one()]
        )

    def contains_affine(self, x, y):
        return y * y == self.rhs_poly(x.spec).evaluate(x)


class Place:
    """A closed point of a curve model.

    kind is one of "p1-finite" (data: monic irreducible Polynomial),
    "p1-infinity", "ec-origin", "ec-affine" (data: (orbit frozenset, field)).
    """

    __slots__ = ("curve", "kind", "data", "_hash")

    def __init__(self, curve, kind, data=None):
        self.curve = curve
        self.kind = kind
        self.data = data
        self._hash = hash((curve, kind, data))

    @classmethod
    def finite(cls, curve, poly):
        if curve.kind != "p1":
            raise DomainError("finite polynomial places live on the projective line")
        poly = poly.monic()
        if not poly.is_irreducible():
            raise DomainError("place polynomial must be irreducible")
        return cls(curve, "p1-finite", poly)

    @classmethod
    def infinity(cls, curve):
        return cls(curve, "p1-infinity")

    @classmethod
    def origin(cls, curve):
        if curve.kind != "elliptic":
            raise DomainError("O is a place of the elliptic model")
        return cls(curve, "ec-origin")

    @classmethod
    def affine_orbit(cls, curve, x0, y0):
        """Galois orbit of an affine point on the elliptic model.

        Coordinates must generate their field: the Frobenius orbit size has
        to equal the coordinate field degree.
        """
        field = x0.spec
        if not curve.contains_affine(x0, y0):
            raise DomainError("point is not on the curve")
        orbit = []
        px, py = x0, y0
        while True:
            orbit.append((px, py))
            px, py = px.frobenius(), py.frobenius()
            if (px, py) == (x0, y0):
                break
        if len(orbit) != field.k:
            raise DomainError("orbit does not generate its coordinate field")
        return cls(curve, "ec-affine", (frozenset(orbit), field))

    @classmethod
    def rational_point(cls, curve, point):
        if point is None:
            return cls.origin(curve)
        return cls.affine_orbit(curve, point[0], point[1])

    @property
    def residue_degree(self):
        if self.kind == "p1-finite":
            return self.data.degree
        if self.kind == "ec-affine":
            return self.data[1].k
        return 1

    def residue_field(self):
        if self.kind == "p1-finite":
            d = self.data.degree
            if d == 1:
                return self.curve.spec
            return _place_field(self.curve.spec.p, tuple(c.val[0] for c in self.data.coeffs))
        if self.kind == "ec-affine":
            return self.data[1]
        return self.curve.spec

    def representative(self):
        """Deterministic representative point of an ec-affine orbit."""
        orbit = sorted(self.data[0], key=lambda q: (q[0].encoding(), q[1].encoding()))
        return orbit[0]

    def sort_key(self):
        if self.kind == "p1-infinity":
            return (0,)
        if self.kind == "p1-finite":
            return (1,) + self.data.sort_key()
        if self.kind == "ec-origin":
            return (0,)
        x0, y0 = self.representative()
        return (1, self.residue_degree, x0.encoding(), y0.encoding())

    def __eq__(self, other):
        return (
            isinstance(other, Place)
            and self.curve == other.curve
            and self.kind == other.kind
            and self.data == other.data
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.kind == "p1-finite":
            return "(%r)" % (self.data,)
        if self.kind == "p1-infinity":
            return "(inf)"
        if self.kind == "ec-origin":
            return "(O)"
        x0, y0 = self.representative()
        return "[%r:%r deg %d]" % (x0, y0, self.residue_degree)


@lru_cache(maxsize=None)
def _place_field(p, modulus):
    from .fields import FieldSpec

    return FieldSpec(p, len(modulus) - 1, list(modulus))


class Divisor:
    __slots__ = ("curve", "_map")

    def __init__(self, curve, data=None):
        self.curve = curve
        self._map = {}
        if data:
            for place, mult in (data.items() if isinstance(data, dict) else data):
                if mult:
                    self._map[place] = self._map.get(place, 0) + mult
                    if not self._map[place]:
                        del self._map[place]

    @classmethod
    def of_place(cls, place, mult=1):
        return cls(place.curve, {place: mult})

    def support(self):
        return sorted(self._map, key=lambda v: v.sort_key())

    def multiplicity(self, place):
        return self._map.get(place, 0)

    def items(self):
        return [(v, self._map[v]) for v in self.support()]

    @property
    def degree(self):
        return sum(m * v.residue_degree for v, m in self._map.items())

    def __bool__(self):
        return bool(self._map)

    def __eq__(self, other):
        return (
            isinstance(other, Divisor)
            and self.curve == other.curve
            and self._map == other._map
        )

    def __hash__(self):
        return hash((self.curve, frozenset(self._map.items())))

    def __add__(self, other):
        if self.curve != other.curve:
            raise DomainError("divisors on different curves")
        out = dict(self._map)
        for v, m in other._map.items():
            out[v] = out.get(v, 0) + m
            if not out[v]:
                del out[v]
        d = Divisor(self.curve)
        d._map = out
        return d

    def __neg__(self):
        d = Divisor(self.curve)
        d._map = {v: -m for v, m in self._map.items()}
        return d

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n):
        d = Divisor(self.curve)
        if n:
            d._map = {v: n * m for v, m in self._map.items()}
        return d

    __rmul__ = __mul__

    def __repr__(self):
        if not self._map:
            return "0"
        return " + ".join("%d*%r" % (m, v) for v, m in self.items())


class FunctionFieldElement:
    """Element of k(P^1) (a rational function in t) or of k(E) (a(x)+b(x)y)."""

    __slots__ = ("curve", "fx", "fy")

    def __init__(self, curve, fx, fy=None):
        self.curve = curve
        self.fx = fx
        if curve.kind == "p1":
            if fy is not None:
                raise DomainError("no y component on the projective line")
            self.fy = None
        else:
            self.fy = fy if fy is not None else RationalFunction.zero(curve.spec)

    @classmethod
    def from_rational(cls, curve, rf):
        return cls(curve, rf)

    @classmethod
    def constant(cls, curve, c):
        c = curve.spec.element(c)
        return cls(curve, RationalFunction(Polynomial.constant(c)))

    @classmethod
    def zero(cls, curve):
        return cls(curve, RationalFunction.zero(curve.spec))

    @classmethod
    def one(cls, curve):
        return cls.constant(curve, 1)

    @classmethod
    def x_function(cls, curve):
        return cls(curve, RationalFunction(Polynomial.x(curve.spec)))

    @classmethod
    def y_function(cls, curve):
        if curve.kind != "elliptic":
            raise DomainError("y lives on the elliptic model")
        return cls(
            curve,
            RationalFunction.zero(curve.spec),
            RationalFunction.one(curve.spec),
        )

    def __bool__(self):
        return bool(self.fx) or bool(self.fy)

    def __eq__(self, other):
        return (
            isinstance(other, FunctionFieldElement)
            and self.curve == other.curve
            and self.fx == other.fx
            and self.fy == other.fy
        )

    def __hash__(self):
        return hash((self.curve, self.fx, self.fy))

    def __repr__(self):
        if self.curve.kind == "p1" or not self.fy:
            return repr(self.fx)
        if not self.fx:
            return "(%r)*y" % (self.fy,)
        return "%r + (%r)*y" % (self.fx, self.fy)

    def _coerce(self, other):
        if isinstance(other, FunctionFieldElement):
            if other.curve != self.curve:
                raise DomainError("functions on different curves")
            return other
        if isinstance(other, (int, FieldElement)):
            return FunctionFieldElement.constant(self.curve, other)
        raise DomainError("cannot combine function with %r" % (other,))

    def __add__(self, other):
        other = self._coerce(other)
        if self.curve.kind == "p1":
            return FunctionFieldElement(self.curve, self.fx + other.fx)
        return FunctionFieldElement(self.curve, self.fx + other.fx, self.fy + other.fy)

    def __sub__(self, other):
        other = self._coerce(other)
        if self.curve.kind == "p1":
            return FunctionFieldElement(self.curve, self.fx - other.fx)
        return FunctionFieldElement(self.curve, self.fx - other.fx, self.fy - other.fy)

    def __neg__(self):
        if self.curve.kind == "p1":
            return FunctionFieldElement(self.curve, -self.fx)
        return FunctionFieldElement(self.curve, -self.fx, -self.fy)

    def __mul__(self, other):
        other = self._coerce(other)
        if self.curve.kind == "p1":
            return FunctionFieldElement(self.curve, self.fx * other.fx)
        rhs = RationalFunction(self.curve.rhs_poly())
        fx = self.fx * other.fx + self.fy * other.fy * rhs
        fy = self.fx * other.fy + self.fy * other.fx
        return FunctionFieldElement(self.curve, fx, fy)

    def conjugate(self):
        if self.curve.kind == "p1":
            return self
        return FunctionFieldElement(self.curve, self.fx, -self.fy)

    def norm_x(self):
        """a^2 - b^2*(x^3+ax+b) as a rational function of x (elliptic)."""
        rhs = RationalFunction(self.curve.rhs_poly())
        return self.fx * self.fx - self.fy * self.fy * rhs

    def inverse(self):
        if not self:
            raise DomainError("inverting the zero function")
        if self.curve.kind == "p1":
            return FunctionFieldElement(self.curve, self.fx.inverse())
        n = self.norm_x().inverse()
        return FunctionFieldElement(self.curve, self.fx * n, -self.fy * n)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = FunctionFieldElement.one(self.curve)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def as_abc(self):
        """Clear denominators: (A, B, C) polynomials with self = (A + B*y)/C."""
        if self.curve.kind == "p1":
            return self.fx.num, Polynomial.zero(self.curve.spec), self.fx.den
        c = self.fx.den * self.fy.den
        a = self.fx.num * self.fy.den
        b = self.fy.num * self.fx.den
        return a, b, c

    def evaluate_affine(self, x, y):
        """Value at an affine point of the elliptic model (may raise on pole)."""
        a, b, c = self.as_abc()
        cf = c.lift_to(x.spec).evaluate(x)
        if not cf:
            raise DomainError("pole at evaluation point")
        return (a.lift_to(x.spec).evaluate(x) + b.lift_to(x.spec).evaluate(x) * y) / cf


# ---------------------------------------------------------------------------
# elliptic group law


def on_curve(curve, point):
    if point is None:
        return True
    x, y = point
    return curve.contains_affine(x, y)


def ec_neg(curve, point):
    if point is None:
        return None
    return (point[0], -point[1])


def ec_add(curve, P, Q):
    if not on_curve(curve, P) or not on_curve(curve, Q):
        raise DomainError("point is not on the curve")
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    field = x1.spec
    if x1 == x2:
        if y1 == -y2:
            return None
        lam = (field.element(3) * x1 * x1 + field.element(curve.a.val[0])) / (y1 + y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    y3 = lam * (x1 - x3) - y1
    return (x3, y3)


def scalar_multiple(curve, n, P):
    if n < 0:
        return scalar_multiple(curve, -n, ec_neg(curve, P))
    result = None
    base = P
    while n:
        if n & 1:
            result = ec_add(curve, result, base)
        base = ec_add(curve, base, base)
        n >>= 1
    return result


def rational_points(curve):
    """All points of the elliptic model over the base field, O first."""
    points = [None]
    spec = curve.spec
    rhs = curve.rhs_poly()
    for n in range(spec.p):
        x = spec.element(n)
        c = rhs.evaluate(x)
        if not c:
            points.append((x, spec.zero()))
            continue
        r = field_sqrt(c)
        if r is not None:
            points.append((x, r))
            points.append((x, -r))
    return points


def torsion_points(curve, l):
    """Rational points with l*P = O, including O."""
    if l < 1:
        raise DomainError("l must be positive")
    if l % curve.spec.p == 0:
        raise DomainError("l must be prime to characteristic")
    if l == 1:
        return [None]
    return [P for P in rational_points(curve) if scalar_multiple(curve, l, P) is None]


# ---------------------------------------------------------------------------
# valuations


def _poly_mult(poly, factor):
    """Multiplicity of an irreducible factor in a polynomial."""
    m = 0
    while True:
        q, r = divmod(poly, factor)
        if r:
            return m
        poly = q
        m += 1


def valuation(f, place):
    """The normalized discrete valuation of f at the place."""
    if not isinstance(f, FunctionFieldElement):
        raise DomainError("valuation expects a function field element")
    if not f:
        raise DomainError("valuation of zero undefined")
    if f.curve != place.curve:
        raise DomainError("function and place on different curves")
    if place.kind == "p1-finite":
        pi = place.data
        return _poly_mult(f.fx.num, pi) - _poly_mult(f.fx.den, pi)
    if place.kind == "p1-infinity":
        return f.fx.den.degree - f.fx.num.degree
    if place.kind == "ec-origin":
        a, b, c = f.as_abc()
        cands = []
        if a:
            cands.append(-2 * a.degree)
        if b:
            cands.append(-2 * b.degree - 3)
        return min(cands) + 2 * c.degree
    # ec-affine
    field = place.data[1]
    x0, y0 = place.representative()
    a, b, c = (g.lift_to(field) for g in f.as_abc())
    rhs = f.curve.rhs_poly(field)
    e = 2 if not y0 else 1
    return _val_affine(a, b, x0, y0, rhs) - e * c.root_multiplicity(x0)


def _val_affine(a, b, x0, y0, rhs):
    """Valuation of a(x) + b(x)*y at the affine point (x0, y0)."""
    if not y0:
        # local parameter y; v(x - x0) = 2
        if not a:
            return 2 * b.root_multiplicity(x0) + 1
        if not b:
            return 2 * a.root_multiplicity(x0)
        return min(2 * a.root_multiplicity(x0), 2 * b.root_multiplicity(x0) + 1)
    va = a.evaluate(x0) if a else x0.spec.zero()
    vb = b.evaluate(x0) if b else x0.spec.zero()
    if va + vb * y0:
        return 0
    if vb:
        # the conjugate a - b*y does not vanish: read the norm
        norm = a * a - b * b * rhs
        return norm.root_multiplicity(x0)
    # a(x0) = b(x0) = 0: strip one factor of (x - x0) from both
    lin = Polynomial.from_elements(x0.spec, [-x0, x0.spec.one()])
    return 1 + _val_affine(
        a.exact_div(lin) if a else a, b.exact_div(lin) if b else b, x0, y0, rhs
    )


def _places_above_x_factor(curve, g, ext_bound):
    """Places of the elliptic model above the roots of an irreducible g(x)."""
    d = g.degree
    if d > ext_bound:
        raise DomainError(
            "place of degree %d exceeds the extension bound %d" % (d, ext_bound)
        )
    field = canonical_field(curve.spec.p, d)
    x0 = roots_in_field(g, field)[0]
    rhs0 = curve.rhs_poly(field).evaluate(x0)
    if not rhs0:
        return [Place.affine_orbit(curve, x0, field.zero())]
    y0 = field_sqrt(rhs0)
    if y0 is not None:
        p1 = Place.affine_orbit(curve, x0, y0)
        p2 = Place.affine_orbit(curve, x0, -y0)
        return [p1] if p1 == p2 else [p1, p2]
    if 2 * d > ext_bound:
        raise DomainError(
            "place of degree %d exceeds the extension bound %d" % (2 * d, ext_bound)
        )
    field2 = canonical_field(curve.spec.p, 2 * d)
    x1 = roots_in_field(g, field2)[0]
    y1 = field_sqrt(curve.rhs_poly(field2).evaluate(x1))
    assert y1 is not None
    return [Place.affine_orbit(curve, x1, y1)]


def principal_divisor(f, ext_bound=DEFAULT_EXT_BOUND):
    """div(f) as a Divisor; always of degree zero."""
    if not f:
        raise DomainError("divisor of zero undefined")
    curve = f.curve
    entries = []
    if curve.kind == "p1":
        for poly in (f.fx.num, f.fx.den):
            if poly.degree < 1:
                continue
            sign = 1 if poly is f.fx.num else -1
            _, factors = factor_polynomial(poly)
            for irr, mult in factors:
                entries.append((Place.finite(curve, irr), sign * mult))
        vinf = f.fx.den.degree - f.fx.num.degree
        if vinf:
            entries.append((Place.infinity(curve), vinf))
        div = Divisor(curve, entries)
    else:
        a, b, c = f.as_abc()
        norm = a * a - b * b * curve.rhs_poly()
        candidates = {}
        for poly in (norm, c):
            if poly.degree < 1:
                continue
            _, factors = factor_polynomial(poly)
            for irr, _ in factors:
                candidates[irr] = None
        places = {}
        for g in candidates:
            for place in _places_above_x_factor(curve, g, ext_bound):
                places[place] = None
        entries = []
        for place in places:
            v = valuation(f, place)
            if v:
                entries.append((place, v))
        vo = valuation(f, Place.origin(curve))
        if vo:
            entries.append((Place.origin(curve), vo))
        div = Divisor(curve, entries)
    assert div.degree == 0, "principal divisor has nonzero degree"
    return div


# ---------------------------------------------------------------------------
# local expansions


@lru_cache(maxsize=512)
def _ec_expansions(curve, place, prec):
    """Laurent expansions (x(t), y(t)) at a place of the elliptic model."""
    if place.kind == "ec-origin":
        field = curve.spec
        a = field.element(curve.a.val[0])
        b = field.element(curve.b.val[0])
        # z = 1/y satisfies z = t^3 + a*t*z^2 + b*z^3 with t = x/y
        t = LaurentSeries.var(field, prec + 8)
        t3 = t * t * t
        z = t3
        for _ in range(prec + 10):
            nz = t3 + t.scale(a) * z * z + (z * z * z).scale(b)
            nz = nz.truncate(prec + 8)
            if nz.coeffs == z.coeffs and nz.start == z.start:
                z = nz
                break
            z = nz
        y = z.inverse()
        x = t * y
        return x.truncate(prec), y.truncate(prec)
    field = place.data[1]
    x0, y0 = place.representative()
    rhs = curve.rhs_poly(field)
    if y0:
        # local parameter t = x - x0
        work = prec + 8
        t = LaurentSeries.var(field, work)
        x = LaurentSeries.constant(x0, work) + t
        under = LaurentSeries.from_polynomial(rhs, work, var=x)
        y = under.sqrt(y0)
        return x.truncate(prec), y.truncate(prec)
    # 2-torsion style point: local parameter t = y, solve rhs(x) = t^2
    work = prec + 8
    t = LaurentSeries.var(field, work)
    t2 = t * t
    drhs = rhs.derivative()
    x = LaurentSeries.constant(x0, work)
    for _ in range(work):
        fx = LaurentSeries.from_polynomial(rhs, work, var=x) - t2
        if fx.is_zero_to_precision():
            break
        dfx = LaurentSeries.from_polynomial(drhs, work, var=x)
        x = x - fx * dfx.inverse()
        x = x.truncate(work)
    return x.truncate(prec), t.truncate(prec)


def expand_at(f, place, prec):
    """Laurent expansion of f at a place, valid below exponent ``prec``.

    The expansion variable is the canonical local parameter: t - theta at a
    finite place of P^1 (theta the residue class of t), 1/t at infinity,
    x - x0 / y / x/y on the elliptic model depending on the place.
    """
    if f.curve != place.curve:
        raise DomainError("function and place on different curves")
    curve = f.curve
    if curve.kind == "p1":
        if place.kind == "p1-finite":
            fieldv = place.residue_field()
            theta = fieldv.gen() if fieldv.k > 1 else -place.data.constant_term()
            num = f.fx.num.lift_to(fieldv).shift(theta)
            den = f.fx.den.lift_to(fieldv).shift(theta)
            work = max(prec, 0) + num.degree + 2 * den.degree + 4
            ns = LaurentSeries.from_polynomial(num, work)
            ds = LaurentSeries.from_polynomial(den, work)
            out = ns * ds.inverse()
            assert out.prec >= prec
            return out.truncate(prec)
        # infinity: t = 1/u
        num, den = f.fx.num, f.fx.den
        rn = Polynomial.from_elements(curve.spec, list(reversed(num.coeffs)))
        rd = Polynomial.from_elements(curve.spec, list(reversed(den.coeffs)))
        work = max(prec, 0) + num.degree + 2 * den.degree + 4
        ns = LaurentSeries.from_polynomial(rn, work)
        ds = LaurentSeries.from_polynomial(rd, work)
        out = (ns * ds.inverse()).shift(den.degree - num.degree)
        assert out.prec >= prec
        return out.truncate(prec)
    # elliptic
    v = valuation(f, place)
    a, b, c = f.as_abc()
    field = place.residue_field()
    a, b, c = a.lift_to(field), b.lift_to(field), c.lift_to(field)
    maxdeg = max(a.degree, b.degree, c.degree, 1)
    attempt = max(prec, 0) + 3 * maxdeg + 10 - min(v, 0)
    for _ in range(6):
        x, y = _ec_expansions(f.curve, place, attempt)
        num = LaurentSeries.from_polynomial(a, attempt, var=x)
        num = num + LaurentSeries.from_polynomial(b, attempt, var=x) * y
        dens = LaurentSeries.from_polynomial(c, attempt, var=x)
        if num.is_zero_to_precision() and f:
            attempt *= 2
            continue
        out = num * dens.inverse()
        if out.prec >= prec:
            return out.truncate(prec)
        attempt *= 2
    raise AssertionError("series precision did not stabilize")


def leading_value_at(f, place):
    """Leading Laurent coefficient of f at the place (a residue-field unit)."""
    if not f:
        raise DomainError("leading value of zero undefined")
    curve = f.curve
    if curve.kind == "p1" and place.kind == "p1-finite":
        pi = place.data
        num, den = f.fx.num, f.fx.den
        while not num % pi:
            num = num.exact_div(pi)
        while not den % pi:
            den = den.exact_div(pi)
        fieldv = place.residue_field()
        if fieldv.k == 1:
            theta = -pi.constant_term()
            return num.evaluate(theta) / den.evaluate(theta)
        nval = fieldv.element([c.val[0] for c in (num % pi).coeffs])
        dval = fieldv.element([c.val[0] for c in (den % pi).coeffs])
        return nval / dval
    if curve.kind == "p1":
        return f.fx.num.lc() / f.fx.den.lc()
    v = valuation(f, place)
    ser = expand_at(f, place, v + 1)
    return ser.coefficient(v)


def residue_value(f, place):
    """Value of f at the place; requires valuation zero."""
    if valuation(f, place) != 0:
        raise DomainError("function is not a unit at the place")
    return leading_value_at(f, place)


# ---------------------------------------------------------------------------
# Riemann-Roch spaces


def x_minimal_poly(place):
    """Minimal polynomial over the base field of the x-coordinate of an
    affine elliptic place."""
    x0 = place.representative()[0]
    spec = place.curve.spec
    field = x0.spec
    xs = []
    cur = x0
    while True:
        xs.append(cur)
        cur = cur.frobenius()
        if cur == x0:
            break
    poly = Polynomial.one(field)
    for xi in xs:
        poly = poly * Polynomial.from_elements(field, [-xi, field.one()])
    return Polynomial.from_elements(spec, [spec.element(c.lift_int()) for c in poly.coeffs])


def riemann_roch_space(D, ext_bound=DEFAULT_EXT_BOUND):
    """A basis of L(D) = {f : div(f) + D >= 0} over the base field."""
    curve = D.curve
    if curve.kind == "p1":
        return _rr_space_p1(D)
    return _rr_space_elliptic(D, ext_bound)


def _rr_space_p1(D):
    curve = D.curve
    spec = curve.spec
    if D.degree < 0:
        return []
    den = Polynomial.one(spec)
    num_fixed = Polynomial.one(spec)
    d_inf = 0
    for place, m in D.items():
        if place.kind == "p1-infinity":
            d_inf = m
        elif m > 0:
            den = den * place.data**m
        else:
            num_fixed = num_fixed * place.data ** (-m)
    top = den.degree + d_inf - num_fixed.degree
    basis = []
    for j in range(top + 1):
        num = num_fixed * Polynomial.x(spec) ** j
        basis.append(FunctionFieldElement(curve, RationalFunction(num, den)))
    return basis


def _rr_space_elliptic(D, ext_bound):
    curve = D.curve
    spec = curve.spec
    if D.degree < 0:
        return []
    one = FunctionFieldElement.one(curve)
    mult = one
    for place, m in D.items():
        if place.kind == "ec-affine" and m > 0:
            g = x_minimal_poly(place)
            mult = mult * FunctionFieldElement(curve, RationalFunction(g)) ** m
    D2 = D - principal_divisor(mult, ext_bound) if mult != one else D
    bound = D2.multiplicity(Place.origin(curve))
    if bound < 0:
        return []
    # ansatz basis of L(bound * O): x^i y^j with 2i + 3j <= bound, j in {0,1}
    monomials = []
    x = FunctionFieldElement.x_function(curve)
    y = FunctionFieldElement.y_function(curve)
    for j in (0, 1):
        i = 0
        while 2 * i + 3 * j <= bound:
            monomials.append(x**i * y**j if j else x**i)
            i += 1
    conditions = []  # rows over GF(p), one per vanishing constraint
    for place, m in D2.items():
        if place.kind == "ec-origin" or m >= 0:
            continue
        order = -m
        fieldv = place.residue_field()
        expansions = [expand_at(g, place, order) for g in monomials]
        for r in range(order):
            for coord in range(fieldv.k):
                row = []
                for ser in expansions:
                    row.append(ser.coefficient(r).val[coord])
                conditions.append(row)
    from .linalg import kernel_basis

    if conditions:
        coeff_vectors = kernel_basis(conditions, spec.p)
    else:
        coeff_vectors = [
            [1 if i == j else 0 for i in range(len(monomials))]
            for j in range(len(monomials))
        ]
    basis = []
    inv_mult = mult.inverse() if mult != one else one
    for vec in coeff_vectors:
        g = FunctionFieldElement.zero(curve)
        for c, mono in zip(vec, monomials):
            if c:
                g = g + mono * FunctionFieldElement.constant(curve, c)
        basis.append(g * inv_mult if mult != one else g)
    return basis
