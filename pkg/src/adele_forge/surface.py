"""Flags, two-step residues and the adelic intersection formula on the
projective plane, with Fulton's local multiplicity recursion and resultant
Bezout as independent oracles.

Surface functions stay in factored form (products of irreducible forms with
integer exponents); the valuation along a curve is an exponent lookup, and
restriction to a curve is deferred to valuation time.
"""

import logging
import math

from . import signs
from .errors import DomainError
from .fields import Polynomial, canonical_field, factor_polynomial, poly_gcd, poly_roots, prime_field

log = logging.getLogger(__name__)

INFINITE = math.inf

_CHART_VARS = {0: (1, 2), 1: (0, 2), 2: (0, 1)}


class BiPoly:
    """Bivariate polynomial over a FieldSpec: {(i, j): coefficient}."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec, terms):
        self.spec = spec
        self.terms = {ij: c for ij, c in terms.items() if c}

    @classmethod
    def zero(cls, spec):
        return cls(spec, {})

    @classmethod
    def constant(cls, c):
        return cls(c.spec, {(0, 0): c})

    @classmethod
    def variable(cls, spec, which):
        ij = (1, 0) if which == "u" else (0, 1)
        return cls(spec, {ij: spec.one()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.spec == other.spec and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (i, j), c in sorted(self.terms.items()):
            bits.append("%r*u^%d*v^%d" % (c, i, j))
        return " + ".join(bits)

    def __add__(self, other):
        out = dict(self.terms)
        for ij, c in other.terms.items():
            s = out.get(ij, self.spec.zero()) + c
            if s:
                out[ij] = s
            else:
                out.pop(ij, None)
        return BiPoly(self.spec, out)

    def __neg__(self):
        return BiPoly(self.spec, {ij: -c for ij, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                ij = (i1 + i2, j1 + j2)
                s = out.get(ij, self.spec.zero()) + c1 * c2
                if s:
                    out[ij] = s
                else:
                    out.pop(ij, None)
        return BiPoly(self.spec, out)

    def scale(self, c):
        if not c:
            return BiPoly.zero(self.spec)
        return BiPoly(self.spec, {ij: c * a for ij, a in self.terms.items()})

    def mul_monomial(self, di, dj):
        return BiPoly(self.spec, {(i + di, j + dj): c for (i, j), c in self.terms.items()})

    def evaluate(self, u0, v0):
        total = self.spec.zero()
        for (i, j), c in self.terms.items():
            total = total + c * u0**i * v0**j
        return total

    def deg_u(self):
        return max((i for i, _ in self.terms), default=-1)

    def deg_v(self):
        return max((j for _, j in self.terms), default=-1)

    def total_degree(self):
        return max((i + j for i, j in self.terms), default=-1)

    def as_u_polys(self):
        """Coefficients as polynomials in v, indexed by the power of u."""
        n = self.deg_u()
        buckets = [dict() for _ in range(n + 1)]
        for (i, j), c in self.terms.items():
            buckets[i][j] = c
        out = []
        for d in buckets:
            m = max(d, default=-1)
            coeffs = [d.get(j, self.spec.zero()) for j in range(m + 1)]
            out.append(Polynomial.from_elements(self.spec, coeffs))
        return out

    @classmethod
    def from_u_polys(cls, spec, polys):
        terms = {}
        for i, poly in enumerate(polys):
            for j, c in enumerate(poly.coeffs):
                if c:
                    terms[(i, j)] = c
        return cls(spec, terms)

    def swap_vars(self):
        return BiPoly(self.spec, {(j, i): c for (i, j), c in self.terms.items()})

    def restrict_v0(self):
        """self(u, 0) as a univariate polynomial in u."""
        n = self.deg_u()
        coeffs = [self.spec.zero()] * (n + 1)
        for (i, j), c in self.terms.items():
            if j == 0:
                coeffs[i] = c
        return Polynomial.from_elements(self.spec, coeffs)

    def exact_div_v(self):
        """self / v; requires every term to have a positive v-exponent."""
        out = {}
        for (i, j), c in self.terms.items():
            if j == 0:
                raise DomainError("not divisible by v")
            out[(i, j - 1)] = c
        return BiPoly(self.spec, out)

    def translate(self, u0, v0):
        """self(u + u0, v + v0)."""
        vshift = Polynomial.from_elements(self.spec, [v0, self.spec.one()])
        shifted = [poly.compose(vshift) for poly in self.as_u_polys()]
        # Horner in u with polynomial coefficients: evaluate at (u + u0)
        result = BiPoly.zero(self.spec)
        ushift = BiPoly(self.spec, {(1, 0): self.spec.one(), (0, 0): u0})
        for poly in reversed(shifted):
            result = result * ushift + BiPoly.from_u_polys(self.spec, [poly])
        return result

    def deriv_u(self):
        out = {}
        for (i, j), c in self.terms.items():
            if i:
                s = c * self.spec.element(i)
                if s:
                    out[(i - 1, j)] = s
        return BiPoly(self.spec, out)

    def deriv_v(self):
        out = {}
        for (i, j), c in self.terms.items():
            if j:
                s = c * self.spec.element(j)
                if s:
                    out[(i, j - 1)] = s
        return BiPoly(self.spec, out)

    def lift_to(self, field):
        if self.spec == field:
            return self
        return BiPoly(field, {ij: field.element(c.val[0]) for ij, c in self.terms.items()})


def _prem_u(A, B):
    """Pseudo-remainder of A by B with respect to u."""
    db = B.deg_u()
    if db < 0:
        raise DomainError("pseudo-division by zero")
    lcB = B.as_u_polys()[db]
    R = A
    while R and R.deg_u() >= db:
        da = R.deg_u()
        lcR = R.as_u_polys()[da]
        R = R * BiPoly.from_u_polys(R.spec, [lcB]) - B.mul_monomial(da - db, 0) * BiPoly.from_u_polys(R.spec, [lcR])
    return R


def bipoly_divide(N, F):
    """Exact quotient N / F in k[u,v], or None when F does not divide N."""
    if not N:
        return BiPoly.zero(N.spec)
    swap = False
    if F.deg_u() < 1:
        if F.deg_v() < 1:
            c = F.terms.get((0, 0))
            return N.scale(c.inverse())
        N, F = N.swap_vars(), F.swap_vars()
        swap = True
    db = F.deg_u()
    lcF = F.as_u_polys()[db]
    Q = BiPoly.zero(N.spec)
    R = N
    steps = 0
    while R and R.deg_u() >= db:
        da = R.deg_u()
        lcR = R.as_u_polys()[da]
        q, rem = divmod(lcR, lcF)
        if rem:
            return None
        term = BiPoly.from_u_polys(N.spec, [Polynomial.zero(N.spec)] * (da - db) + [q])
        Q = Q + term
        R = R - term * F
        steps += 1
        if steps > 4 * (N.deg_u() + N.deg_v() + 2):
            return None
    if R:
        return None
    return Q.swap_vars() if swap else Q


def bipoly_multiplicity(N, F):
    """Multiplicity of the irreducible F in N (INFINITE when N = 0)."""
    if not N:
        return INFINITE
    m = 0
    while True:
        Q = bipoly_divide(N, F)
        if Q is None:
            return m
        N = Q
        m += 1


def _content_u(A):
    polys = [p for p in A.as_u_polys() if p]
    if not polys:
        return Polynomial.zero(A.spec)
    g = polys[0]
    for p in polys[1:]:
        g = poly_gcd(g, p)
    return g


def bipoly_gcd(A, B):
    """A gcd of A and B in k[u,v] (defined up to a scalar)."""
    if not A:
        return B
    if not B:
        return A
    if A.deg_u() == 0 and B.deg_u() == 0:
        g = poly_gcd(_content_u(A), _content_u(B))
        return BiPoly.from_u_polys(A.spec, [g])
    if A.deg_u() == 0:
        g = poly_gcd(_content_u(A), _content_u(B))
        return BiPoly.from_u_polys(A.spec, [g])
    if B.deg_u() == 0:
        g = poly_gcd(_content_u(B), _content_u(A))
        return BiPoly.from_u_polys(A.spec, [g])
    contA, contB = _content_u(A), _content_u(B)
    Ap = bipoly_divide(A, BiPoly.from_u_polys(A.spec, [contA]))
    Bp = bipoly_divide(B, BiPoly.from_u_polys(B.spec, [contB]))
    while Bp:
        R = _prem_u(Ap, Bp)
        if R:
            cont = _content_u(R)
            R = bipoly_divide(R, BiPoly.from_u_polys(R.spec, [cont]))
        Ap, Bp = Bp, R
    cont = poly_gcd(contA, contB)
    return Ap * BiPoly.from_u_polys(A.spec, [cont])


def fulton_multiplicity(F, G, point):
    """Local intersection multiplicity of two affine curves at a point.

    Computed by the classical recursion on restrictions to the u-axis;
    INFINITE when the curves share a component through the point.
    """
    u0, v0 = point
    F = F.translate(u0, v0)
    G = G.translate(u0, v0)
    H = bipoly_gcd(F, G)
    if H.total_degree() > 0 and not H.evaluate(F.spec.zero(), F.spec.zero()):
        return INFINITE
    if H.total_degree() > 0:
        F = bipoly_divide(F, H)
        G = bipoly_divide(G, H)
    return _fulton_origin(F, G)


def _fulton_origin(F, G):
    zero = F.spec.zero()
    if F.evaluate(zero, zero) or G.evaluate(zero, zero):
        return 0
    if not F or not G:
        return INFINITE
    while True:
        f = F.restrict_v0()
        g = G.restrict_v0()
        if f.degree > g.degree or (not g and f):
            F, G, f, g = G, F, g, f
        if not f:
            # F is divisible by v
            H = F.exact_div_v()
            if not g:
                return INFINITE
            ord_u = 0
            for c in g.coeffs:
                if c:
                    break
                ord_u += 1
            return ord_u + _fulton_origin(H, G)
        c = g.lc() / f.lc()
        G = G - F.mul_monomial(g.degree - f.degree, 0).scale(c)
        if G.evaluate(zero, zero):
            return 0


class HomForm:
    """Homogeneous form in X0, X1, X2 over GF(p): {(i, j, k): int coeff}."""

    __slots__ = ("p", "degree", "terms", "_hash")

    def __init__(self, p, terms):
        clean = {}
        deg = None
        for ijk, c in terms.items():
            c = c % p
            if not c:
                continue
            if deg is None:
                deg = sum(ijk)
            elif sum(ijk) != deg:
                raise DomainError("form is not homogeneous")
            clean[ijk] = c
        if deg is None:
            raise DomainError("zero form")
        # normalize: the lexicographically largest monomial gets coefficient 1
        top = max(clean)
        inv = pow(clean[top], p - 2, p)
        clean = {ijk: (c * inv) % p for ijk, c in clean.items()}
        self.p = p
        self.degree = deg
        self.terms = clean
        self._hash = hash((p, deg, frozenset(clean.items())))

    @classmethod
    def line(cls, p, a, b, c):
        return cls(p, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    def __eq__(self, other):
        return isinstance(other, HomForm) and self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return self._hash

    def __repr__(self):
        bits = []
        for (i, j, k), c in sorted(self.terms.items(), reverse=True):
            mono = "".join(
                ("X%d" % n if e == 1 else "X%d^%d" % (n, e))
                for n, e in enumerate((i, j, k))
                if e
            )
            bits.append(mono if c == 1 and mono else ("%d%s" % (c, mono)))
        return " + ".join(bits)

    def evaluate(self, coords):
        field = coords[0].spec
        total = field.zero()
        for (i, j, k), c in self.terms.items():
            total = total + field.element(c) * coords[0] ** i * coords[1] ** j * coords[2] ** k
        return total

    def dehomogenize(self, chart, field):
        """Set X_chart = 1; the remaining coordinates become (u, v) in index
        order."""
        a, b = _CHART_VARS[chart]
        out = {}
        for ijk, c in self.terms.items():
            key = (ijk[a], ijk[b])
            out[key] = (out.get(key, 0) + c) % self.p
        return BiPoly(field, {ij: field.element(c) for ij, c in out.items() if c})

    def partial(self, var):
        out = {}
        for ijk, c in self.terms.items():
            e = ijk[var]
            if e:
                new = list(ijk)
                new[var] -= 1
                key = tuple(new)
                out[key] = (out.get(key, 0) + c * e) % self.p
        out = {k: c for k, c in out.items() if c}
        if not out:
            return None
        return HomForm(self.p, out)

    def coeff_of_x2(self):
        """Coefficients of powers of X2, as BiPoly in (X0, X1) over GF(p)."""
        field = prime_field(self.p)
        n = max(k for (_, _, k) in self.terms)
        out = [dict() for _ in range(n + 1)]
        for (i, j, k), c in self.terms.items():
            out[k][(i, j)] = field.element(c)
        return [BiPoly(field, d) for d in out]


class PlaneCurve:
    """An irreducible plane curve, asserted by input and spot-checked."""

    __slots__ = ("form",)

    def __init__(self, form):
        if form.degree < 1:
            raise DomainError("a plane curve needs positive degree")
        if form.degree in (2, 3):
            # a reducible form of degree <= 3 has a linear factor
            if _has_linear_factor(form):
                raise DomainError("form has a linear factor; not irreducible")
        elif form.degree > 3:
            log.warning("degree-%d form trusted irreducible without a check", form.degree)
        self.form = form

    @property
    def degree(self):
        return self.form.degree

    def __eq__(self, other):
        return isinstance(other, PlaneCurve) and self.form == other.form

    def __hash__(self):
        return hash(("curve", self.form))

    def __repr__(self):
        return "V(%r)" % (self.form,)

    def contains(self, point):
        return not self.form.evaluate(point.coords)

    def smooth_at(self, point):
        for var in range(3):
            d = self.form.partial(var)
            if d is not None and d.evaluate(point.coords):
                return True
        return False


def _has_linear_factor(form):
    p = form.p
    field = prime_field(p)
    for enc in range(1, p**3):
        c0, rest = enc % p, enc // p
        c1, c2 = rest % p, rest // p
        coeffs = (c0, c1, c2)
        nz = next(i for i in range(3) if coeffs[i])
        if coeffs[nz] != 1:
            continue  # one representative per line
        # parametrize the line by two points spanning it
        pts = _line_basis(field, coeffs)
        # restrict: form(s*A + t*B) must be the zero binary form
        if _restriction_is_zero(form, field, pts):
            return True
    return False


def _line_basis(field, coeffs):
    sols = []
    a, b, c = (field.element(x) for x in coeffs)
    candidates = [
        (field.one(), field.zero(), field.zero()),
        (field.zero(), field.one(), field.zero()),
        (field.zero(), field.zero(), field.one()),
        (field.one(), field.one(), field.zero()),
        (field.one(), field.zero(), field.one()),
        (field.zero(), field.one(), field.one()),
        (field.one(), field.one(), field.one()),
    ]
    for x, y, z in candidates:
        if a * x + b * y + c * z == field.zero():
            sols.append((x, y, z))
        if len(sols) == 2:
            return sols
    # fall back to a scan
    for n in range(field.p**3):
        x = field.element(n % field.p)
        y = field.element((n // field.p) % field.p)
        z = field.element(n // field.p**2)
        if (x or y or z) and a * x + b * y + c * z == field.zero():
            trip = (x, y, z)
            if not sols:
                sols.append(trip)
            elif not _proportional(sols[0], trip):
                sols.append(trip)
                return sols
    raise AssertionError("line has fewer than two points")


def _proportional(P, Q):
    for i in range(3):
        for j in range(3):
            if P[i] * Q[j] != P[j] * Q[i]:
                return False
    return True


def _restriction_is_zero(form, field, pts):
    A, B = pts
    # binary form in (s, t) of degree deg: evaluate at deg+1 projective values
    for enc in range(form.degree + 2):
        if enc == 0:
            s, t = field.one(), field.zero()
        else:
            s, t = field.element(enc - 1), field.one()
        coords = tuple(s * A[i] + t * B[i] for i in range(3))
        if form.evaluate(coords):
            return False
    return True


class SurfaceDivisor:
    """Finite formal sum of irreducible plane curves."""

    __slots__ = ("_map",)

    def __init__(self, data=None):
        self._map = {}
        if data:
            for curve, mult in (data.items() if isinstance(data, dict) else data):
                if mult:
                    self._map[curve] = self._map.get(curve, 0) + mult
                    if not self._map[curve]:
                        del self._map[curve]

    def support(self):
        return sorted(self._map, key=lambda c: sorted(c.form.terms.items()))

    def multiplicity(self, curve):
        return self._map.get(curve, 0)

    def items(self):
        return [(c, self._map[c]) for c in self.support()]

    @property
    def degree(self):
        return sum(m * c.degree for c, m in self._map.items())

    def __repr__(self):
        return " + ".join("%d*%r" % (m, c) for c, m in self.items()) or "0"


class ProjPoint:
    """A closed point of P^2: normalized coordinates over the canonical field
    of its exact degree."""

    __slots__ = ("field", "coords", "orbit", "_hash")

    def __init__(self, coords):
        field = coords[0].spec
        last = max(i for i in range(3) if coords[i])
        inv = coords[last].inverse()
        coords = tuple(c * inv for c in coords)
        orbit = []
        cur = coords
        while True:
            orbit.append(cur)
            cur = tuple(c.frobenius() for c in cur)
            if cur == coords:
                break
        if len(orbit) != field.k:
            raise DomainError("point coordinates do not generate their field")
        self.field = field
        self.coords = coords
        self.orbit = frozenset(orbit)
        self._hash = hash((field, self.orbit))

    @property
    def degree(self):
        return len(self.orbit)

    def chart(self):
        return max(i for i in range(3) if self.coords[i])

    def affine(self, chart=None):
        c = self.chart() if chart is None else chart
        a, b = _CHART_VARS[c]
        inv = self.coords[c].inverse()
        return (self.coords[a] * inv, self.coords[b] * inv)

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.field == other.field and self.orbit == other.orbit

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (self.degree,) + tuple(c.encoding() for c in min(
            (tuple(pt) for pt in self.orbit),
            key=lambda pt: tuple(c.encoding() for c in pt),
        ))

    def __repr__(self):
        return "(%s)" % (":".join(repr(c) for c in self.coords))


class Flag2:
    """A (curve, point) flag on the projective plane."""

    __slots__ = ("curve", "point", "chart")

    def __init__(self, curve, point, chart=None):
        if not curve.contains(point):
            raise DomainError("flag point is not on the flag curve")
        if chart is None:
            chart = point.chart()
        if not point.coords[chart]:
            raise DomainError("chart coordinate vanishes at the point")
        self.curve = curve
        self.point = point
        self.chart = chart

    def __repr__(self):
        return "Flag(%r, %r)" % (self.curve, self.point)


class FactoredFunction:
    """c * prod F_i^{e_i} with irreducible forms F_i; an element of the
    function field of the plane when the total degree is zero."""

    __slots__ = ("p", "constant", "powers")

    def __init__(self, p, constant=1, powers=None):
        field = prime_field(p)
        self.p = p
        self.constant = field.element(constant) if isinstance(constant, int) else constant
        if not self.constant:
            raise DomainError("factored functions are nonzero")
        self.powers = {}
        for curve, e in (powers or {}).items():
            if e:
                self.powers[curve] = self.powers.get(curve, 0) + e
                if not self.powers[curve]:
                    del self.powers[curve]

    def weighted_degree(self):
        return sum(e * c.degree for c, e in self.powers.items())

    def require_degree_zero(self):
        if self.weighted_degree() != 0:
            raise DomainError("entry function is not homogeneous of degree zero")
        return self

    def inverse(self):
        return FactoredFunction(
            self.p, self.constant.inverse(), {c: -e for c, e in self.powers.items()}
        )

    def __mul__(self, other):
        powers = dict(self.powers)
        for c, e in other.powers.items():
            powers[c] = powers.get(c, 0) + e
        return FactoredFunction(self.p, self.constant * other.constant, powers)

    def __pow__(self, e):
        if e == 0:
            return FactoredFunction(self.p, 1, {})
        return FactoredFunction(
            self.p, self.constant**e, {c: k * e for c, k in self.powers.items()}
        )

    def exponent_along(self, curve):
        return self.powers.get(curve, 0)

    def __repr__(self):
        bits = [repr(self.constant)] if self.constant != prime_field(self.p).one() else []
        for c, e in self.powers.items():
            bits.append("(%r)^%d" % (c, e))
        return " * ".join(bits) if bits else "1"


class SurfaceSymbol:
    """Formal product of K2 symbols {f, g}^e with factored entry functions."""

    __slots__ = ("p", "entries")

    def __init__(self, p, entries):
        flat = []
        for f, g, e in entries:
            if e:
                f.require_degree_zero()
                g.require_degree_zero()
                flat.append((f, g, e))
        self.p = p
        self.entries = tuple(flat)

    @classmethod
    def pair(cls, f, g, e=1):
        return cls(f.p, [(f, g, e)])

    def support_curves(self):
        out = {}
        for f, g, _ in self.entries:
            for h in (f, g):
                for c in h.powers:
                    out[c] = None
        return list(out)

    def __repr__(self):
        return " * ".join("{%r, %r}^%d" % (f, g, e) for f, g, e in self.entries) or "{1}"

# ---------------------------------------------------------------------------
# two-step residues


class RestrictedFunction:
    """A factored function together with the curve it is to be restricted to
    (the restriction itself is deferred to valuation time)."""

    __slots__ = ("curve", "constant", "powers")

    def __init__(self, curve, constant, powers):
        self.curve = curve
        self.constant = constant
        self.powers = {c: e for c, e in powers.items() if e}

    def __repr__(self):
        return "(%r)|_%r" % (FactoredFunction(self.constant.spec.p, self.constant, self.powers), self.curve)


def curve_tame_symbol(symbol, curve):
    """First-step residue of a K2 symbol along a curve: the tame symbol
    (-1)^(v_C(f)v_C(g)) f^(v_C(g)) g^(-v_C(f)) with the curve's own power
    cancelled, still in factored form."""
    p = symbol.p
    field = prime_field(p)
    constant = field.one()
    powers = {}
    minus_one = field.element(-1)
    for f, g, e in symbol.entries:
        a = f.exponent_along(curve)
        b = g.exponent_along(curve)
        if a == 0 and b == 0:
            continue
        term = f**b * g ** (-a)
        if (a * b) % 2:
            term = term * FactoredFunction(p, minus_one, {})
        term = term**e
        constant = constant * term.constant
        for c, k in term.powers.items():
            powers[c] = powers.get(c, 0) + k
            if not powers[c]:
                del powers[c]
    if powers.get(curve):
        raise DomainError("curve power did not cancel in the tame symbol")
    powers.pop(curve, None)
    return RestrictedFunction(curve, constant, powers)


def valuation_on_curve(func, curve, point, chart=None):
    """Valuation at a point of the restriction to ``curve`` of a factored
    function: sum of e_F * I_x(F, curve) over the factored support."""
    if isinstance(func, RestrictedFunction):
        if func.curve != curve:
            raise DomainError("function restricted to a different curve")
        powers = func.powers
    else:
        powers = func.powers
        if func.exponent_along(curve):
            raise DomainError("function vanishes identically along the curve")
    if not curve.contains(point):
        raise DomainError("point is not on the curve")
    if not curve.smooth_at(point):
        raise DomainError("flag-curve singular at point")
    if chart is None:
        chart = point.chart()
    field = point.field
    pt = point.affine(chart)
    C = curve.form.dehomogenize(chart, field)
    total = 0
    for F, e in powers.items():
        if F == curve:
            raise DomainError("function vanishes identically along the curve")
        m = fulton_multiplicity(F.form.dehomogenize(chart, field), C, pt)
        if m is INFINITE:
            raise DomainError("improper restriction: common component")
        total += e * m
    return total


def flag_residue(symbol, flag):
    """Two-step residue of a K2 symbol along a (curve, point) flag."""
    tame = curve_tame_symbol(symbol, flag.curve)
    return valuation_on_curve(tame, flag.curve, flag.point, flag.chart)


def parshin_point_reciprocity(symbol, point):
    """Sum of flag residues over all curves of the symbol's factored support
    through the point; always zero."""
    total = 0
    for curve in symbol.support_curves():
        if not curve.contains(point):
            continue
        if not curve.smooth_at(point):
            raise DomainError("support curve singular at the point")
        total += flag_residue(symbol, Flag2(curve, point))
    return total


# ---------------------------------------------------------------------------
# intersection points of two plane curves


def _bipoly_det(matrix):
    n = len(matrix)
    if n == 0:
        raise DomainError("empty determinant")
    if n == 1:
        return matrix[0][0]
    spec = matrix[0][0].spec
    total = BiPoly.zero(spec)
    for j in range(n):
        entry = matrix[0][j]
        if not entry:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in matrix[1:]]
        term = entry * _bipoly_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _resultant_x2(F, G):
    """Res_{X2}(F, G) as a BiPoly in (X0, X1) over GF(p)."""
    a = F.coeff_of_x2()
    b = G.coeff_of_x2()
    m = len(a) - 1
    n = len(b) - 1
    if m < 0 or n < 0:
        raise DomainError("zero form in resultant")
    if m == 0:
        out = BiPoly.constant(prime_field(F.p).one())
        for _ in range(n):
            out = out * a[0]
        return out
    if n == 0:
        out = BiPoly.constant(prime_field(F.p).one())
        for _ in range(m):
            out = out * b[0]
        return out
    size = m + n
    spec = prime_field(F.p)
    zero = BiPoly.zero(spec)
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(reversed(a)) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(reversed(b)) + [zero] * (size - n - 1 - i))
    return _bipoly_det(rows)


def _binary_roots(R, p, ext_bound):
    """Directions (x0 : x1) where the binary form R (a BiPoly in u=X0, v=X1)
    vanishes, grouped by degree: yields (field, x0, x1)."""
    field1 = prime_field(p)
    if not R:
        raise DomainError("identically zero resultant: improper intersection")
    # direction (1 : 0)
    if not R.evaluate(field1.one(), field1.zero()):
        yield (field1, field1.one(), field1.zero())
    # directions (w : 1): roots of R(w, 1)
    n = R.deg_u()
    coeffs = [field1.zero()] * (n + 1)
    for (i, j), c in R.terms.items():
        coeffs[i] = coeffs[i] + c
    r = Polynomial.from_elements(field1, coeffs)
    if not r:
        raise DomainError("degenerate resultant restriction")
    _, factors = factor_polynomial(r)
    for irr, _mult in factors:
        d = irr.degree
        if d > ext_bound:
            raise DomainError(
                "intersection direction of degree %d exceeds the bound %d" % (d, ext_bound)
            )
        field = canonical_field(p, d)
        from .fields import roots_in_field

        w0 = roots_in_field(irr, field)[0]
        yield (field, w0, field.one())


def curve_intersection_points(C1, C2, ext_bound=6):
    """All closed points of C1 . C2 as ProjPoint orbits."""
    if C1 == C2:
        raise DomainError("improper intersection: identical components")
    F, G = C1.form, C2.form
    p = F.p
    field1 = prime_field(p)
    points = []
    one = field1.one()
    zero = field1.zero()
    # the single point with X0 = X1 = 0
    special = (zero, zero, one)
    if not F.evaluate(special) and not G.evaluate(special):
        points.append(ProjPoint(special))
    R = _resultant_x2(F, G)
    for field, x0, x1 in _binary_roots(R, p, ext_bound):
        d = field.k
        fib_f = _fiber_poly(F, x0, x1, field)
        fib_g = _fiber_poly(G, x0, x1, field)
        if not fib_f and not fib_g:
            raise DomainError("improper intersection: common line component")
        if not fib_f or not fib_g:
            h = fib_g or fib_f
        else:
            h = poly_gcd(fib_f, fib_g)
        if h.degree < 1:
            continue  # spurious direction (leading coefficients vanished)
        _, fibfactors = factor_polynomial(h)
        degrees = sorted({irr.degree for irr, _ in fibfactors})
        for e in degrees:
            m = d * e
            if m > ext_bound:
                raise DomainError(
                    "intersection point of degree %d exceeds the bound %d" % (m, ext_bound)
                )
            if e == 1:
                fieldm, x0m, x1m = field, x0, x1
            else:
                fieldm = canonical_field(p, m)
                if d == 1:
                    x0m = fieldm.element(x0.val[0])
                    x1m = fieldm.element(x1.val[0])
                else:
                    # re-find the direction inside the bigger field
                    from .fields import roots_in_field

                    minpoly = _minimal_poly(x0, field1)
                    x0m = roots_in_field(minpoly, fieldm)[0]
                    x1m = fieldm.one()
            ff = _fiber_poly(F, x0m, x1m, fieldm)
            fg = _fiber_poly(G, x0m, x1m, fieldm)
            if not ff and not fg:
                raise DomainError("improper intersection: common line component")
            if not ff or not fg:
                hm = fg or ff
            else:
                hm = poly_gcd(ff, fg)
            for z in poly_roots(hm):
                try:
                    pt = ProjPoint((x0m, x1m, z))
                except DomainError:
                    continue  # lower-degree point; found at its own level
                if pt.degree == m and pt not in points:
                    points.append(pt)
    return points


def _fiber_poly(F, x0, x1, field):
    """F(x0, x1, Z) as a univariate polynomial in Z over ``field``."""
    n = max(k for (_, _, k) in F.terms)
    coeffs = [field.zero()] * (n + 1)
    for (i, j, k), c in F.terms.items():
        coeffs[k] = coeffs[k] + field.element(c) * x0**i * x1**j
    return Polynomial.from_elements(field, coeffs)


def _minimal_poly(a, base):
    """Minimal polynomial over the prime field of a field element."""
    field = a.spec
    conjs = []
    cur = a
    while True:
        conjs.append(cur)
        cur = cur.frobenius()
        if cur == a:
            break
    poly = Polynomial.one(field)
    for c in conjs:
        poly = poly * Polynomial.from_elements(field, [-c, field.one()])
    return Polynomial.from_elements(base, [base.element(c.lift_int()) for c in poly.coeffs])


# ---------------------------------------------------------------------------
# the adelic intersection number


def _aux_line_candidates(p):
    yield HomForm.line(p, 0, 0, 1)
    yield HomForm.line(p, 0, 1, 0)
    yield HomForm.line(p, 1, 0, 0)
    for enc in range(1, p**3):
        a, rest = enc % p, enc // p
        b, c = rest % p, rest // p
        coeffs = (a, b, c)
        nz = [x for x in coeffs if x]
        if len(nz) < 2 or coeffs[max(i for i in range(3) if coeffs[i])] != 1:
            continue
        yield HomForm.line(p, a, b, c)


def choose_aux_line(p, avoid_points, exclude_forms=()):
    """Deterministically pick a line avoiding the given points."""
    for form in _aux_line_candidates(p):
        if form in exclude_forms:
            continue
        ok = True
        for pt in avoid_points:
            if not form.evaluate(pt.coords):
                ok = False
                break
        if ok:
            return PlaneCurve(form)
    raise DomainError("no auxiliary line avoids the contributing points")


def _local_equation(divisor, aux):
    """The degree-zero factored function prod F^m / L^(deg) for a divisor."""
    powers = {}
    total = 0
    p = aux.form.p
    for curve, m in divisor.items():
        powers[curve] = m
        total += m * curve.degree
    powers[aux] = powers.get(aux, 0) - total
    return FactoredFunction(p, 1, powers)


def _contributing_flags(D1, D2, ext_bound):
    """Flags (C in supp D1, x in C meet supp D2), with the points deduped per
    curve, plus the set of all contributing points."""
    flags = []
    all_points = {}
    for C, _m in D1.items():
        pts = {}
        for F, _n in D2.items():
            if C == F:
                raise DomainError("improper intersection: shared component")
            for pt in curve_intersection_points(C, F, ext_bound):
                pts[pt] = None
                all_points[pt] = None
        flags.append((C, list(pts)))
    return flags, list(all_points)


def intersection_number(D1, D2, ext_bound=6):
    """The adelic intersection number -sum [k(x):k] nu_{XCx}{s1^-1, s2^-1}.

    s1 and s2 are single degree-zero ratios per divisor with poles on an
    auxiliary line chosen to avoid every contributing point; the flag sum
    runs over the curves of D1 and their intersection points with D2, the
    flags where the symbol has nontrivial residue.
    """
    p = _surface_char(D1, D2)
    flags, points = _contributing_flags(D1, D2, ext_bound)
    for C, pts in flags:
        for pt in pts:
            if not C.smooth_at(pt):
                raise DomainError("flag-curve singular at %r" % (pt,))
    aux = choose_aux_line(p, points, exclude_forms={C.form for C, _ in D1.items()}
                          | {C.form for C, _ in D2.items()})
    s1 = _local_equation(D1, aux)
    s2 = _local_equation(D2, aux)
    symbol = SurfaceSymbol.pair(s1.inverse(), s2.inverse())
    total = 0
    for C, pts in flags:
        for pt in pts:
            total += pt.degree * flag_residue(symbol, Flag2(C, pt))
    return -total


def _surface_char(*divisors):
    for D in divisors:
        for curve, _ in D.items():
            return curve.form.p
    raise DomainError("empty surface divisor")


def bezout_number(D1, D2):
    """deg D1 * deg D2: the classical global oracle."""
    return D1.degree * D2.degree


def fulton_intersection_cycle(D1, D2, ext_bound=6):
    """Point-by-point Fulton multiplicities I_x(D1, D2) as an oracle cycle."""
    _, points = _contributing_flags(D1, D2, ext_bound)
    cycle = {}
    for pt in points:
        chart = pt.chart()
        field = pt.field
        a = pt.affine(chart)
        total = 0
        for C1, m1 in D1.items():
            for C2, m2 in D2.items():
                m = fulton_multiplicity(
                    C1.form.dehomogenize(chart, field),
                    C2.form.dehomogenize(chart, field),
                    a,
                )
                if m is INFINITE:
                    raise DomainError("improper intersection at %r" % (pt,))
                total += m1 * m2 * m
        if total:
            cycle[pt] = total
    return cycle


def surface_product_cycle(D1, D2, ext_bound=6):
    """The zero-cycle nu_X([D1].[D2]) of the flag-wise product of the two
    divisor 1-cocycles with per-flag local equations (tail 1 outside the
    supports), as a finite map point -> integer.

    Its multiplicity at x matches the Fulton local multiplicity up to the
    audited global sign, and its degree equals intersection_number(D1, D2).
    """
    p = _surface_char(D1, D2)
    flags, points = _contributing_flags(D1, D2, ext_bound)
    for C, pts in flags:
        for pt in pts:
            if not C.smooth_at(pt):
                raise DomainError("flag-curve singular at %r" % (pt,))
    aux = choose_aux_line(p, points, exclude_forms={C.form for C, _ in D1.items()}
                          | {C.form for C, _ in D2.items()})
    cycle = {}
    for C, pts in flags:
        # front component of the flag (X, C, x): the local equation of D1 at
        # C, inverted; only its exponent along C enters the residue.
        s1_c = FactoredFunction(p, 1, {C: D1.multiplicity(C), aux: -D1.multiplicity(C) * C.degree})
        for pt in pts:
            # back component s_{2,C}/s_{2,x} with s_{2,C} = 1 (C is not in
            # supp D2): the local equation of D2 at x, inverted
            powers = {}
            for F, m in D2.items():
                if F.contains(pt):
                    powers[F] = m
            deg = sum(m * F.degree for F, m in powers.items())
            powers[aux] = powers.get(aux, 0) - deg
            s2_x = FactoredFunction(p, 1, powers)
            symbol = SurfaceSymbol.pair(s1_c.inverse(), s2_x.inverse())
            raw = flag_residue(symbol, Flag2(C, pt))
            if raw:
                cycle[pt] = cycle.get(pt, 0) + raw
    out = {}
    for pt, raw in cycle.items():
        val = signs.SURFACE_CYCLE_SIGN * raw
        if val:
            out[pt] = val
    return out


def cycle_degree(cycle):
    return sum(pt.degree * m for pt, m in cycle.items())


# ---------------------------------------------------------------------------
# dlog pole bound for K2 symbols


def dlog2_pole_check(symbol):
    """Maximum pole order along the support curves of the 2-form
    sum e * dlog f wedge dlog g attached to the symbol; at most 1.

    The global scaling constant of the weight-2 comparison map ((-1)^n(n-1)!
    at n = 2, i.e. -1) rescales the form and cannot change pole orders, so
    it is not applied here."""
    support = symbol.support_curves()
    if not support:
        return 0
    worst = 0
    p = symbol.p
    field = prime_field(p)
    for curve in support:
        chart = _visible_chart(curve)
        forms = {}
        for c in support:
            forms[c] = c.form.dehomogenize(chart, field)
        numerator = _wedge_numerator(symbol, forms, chart, field)
        if not numerator:
            continue
        Fhat = forms[curve]
        if Fhat.total_degree() < 1:
            continue  # the curve is invisible here; handled by chart choice
        mult = bipoly_multiplicity(numerator, Fhat)
        order = 1 - (mult if mult is not INFINITE else 10**9)
        worst = max(worst, order)
    return worst


def _visible_chart(curve):
    for chart in (2, 1, 0):
        line = HomForm(curve.form.p, {tuple(1 if i == chart else 0 for i in range(3)): 1})
        if curve.form != line:
            return chart
    raise AssertionError("unreachable")


def _wedge_numerator(symbol, forms, chart, field):
    """Numerator of the 2-form over the common denominator prod(distinct
    support forms)."""
    distinct = list(forms)
    total = BiPoly.zero(field)
    for f, g, e in symbol.entries:
        for A, ea in f.powers.items():
            FA = forms[A]
            dAu, dAv = FA.deriv_u(), FA.deriv_v()
            for B, eb in g.powers.items():
                if A == B:
                    continue
                FB = forms[B]
                wedge = dAu * FB.deriv_v() - dAv * FB.deriv_u()
                if not wedge:
                    continue
                rest = BiPoly.constant(field.element((e * ea * eb) % field.p))
                if not rest:
                    continue
                for other in distinct:
                    if other != A and other != B:
                        rest = rest * forms[other]
                total = total + wedge * rest
    return total
