"""Rational adelic cochains on a curve in finite presentation (tail plus
finitely many exceptions), the adelic differential, cohomology of the
complex for O(D) coefficients, divisor 1-cocycles, the residue morphism to
the Gersten complex, and the flag-wise cochain product.
"""

from . import signs
from .curves import (
    Divisor,
    FunctionFieldElement,
    Place,
    expand_at,
    principal_divisor,
    riemann_roch_space,
    valuation,
)
from .errors import DomainError
from .linalg import rref
from .milnor import GerstenCochain, MilnorSymbol, symbol_support, tame_symbol

# A level-1 Gersten cochain doubles as the image type of the residue
# morphism; the payload is exactly a finite map place -> K-data.
GerstenImage = GerstenCochain


def _one(curve):
    return FunctionFieldElement.one(curve)


class AdeleCochain:
    """Finite-presentation adelic cochain on a curve.

    weight is ("coh", Divisor) for coherent O(D) coefficients or ("k", n)
    with n in {0, 1, 2} for K-theory coefficients.

    degree 0 payload: a global component plus a local collection given as a
    default local component with finitely many exceptions.
    degree 1 payload: a tail component used at all unlisted places plus
    finitely many exceptions.
    """

    __slots__ = ("curve", "degree", "weight", "global_part", "tail", "exceptions")

    def __init__(self, curve, degree, weight, global_part=None, tail=None, exceptions=None):
        if degree not in (0, 1):
            raise DomainError("curve adelic degrees are 0 and 1")
        kind = weight[0]
        if kind not in ("coh", "k"):
            raise DomainError("unknown coefficient tag %r" % (kind,))
        if kind == "k" and weight[1] not in (0, 1, 2):
            raise DomainError("K-weights 0, 1, 2 are supported")
        self.curve = curve
        self.degree = degree
        self.weight = weight
        self.exceptions = dict(exceptions or {})
        if degree == 0:
            if global_part is None:
                raise DomainError("degree-0 cochain needs a global component")
            self.global_part = global_part
            self.tail = tail if tail is not None else _zero_value(curve, weight)
        else:
            if global_part is not None:
                raise DomainError("degree-1 cochain has no global component")
            self.global_part = None
            self.tail = tail if tail is not None else _unit_value(curve, weight)
        if kind == "coh":
            self._check_coherent_integrality()

    def _check_coherent_integrality(self):
        # Degree-0 local collections are unconstrained in this presentation;
        # the degree-1 tail must be integral against D away from exceptions,
        # checked by comparing its pole places with D's support.
        if self.degree != 1:
            return
        D = self.weight[1]
        tail = self.tail
        if isinstance(tail, FunctionFieldElement) and tail:
            check = set()
            for v, _m in principal_divisor(tail).items():
                check.add(v)
            for v, _m in D.items():
                check.add(v)
            for v in check:
                if v in self.exceptions:
                    continue
                if valuation(tail, v) < -D.multiplicity(v):
                    raise DomainError("tail not integral outside exceptions at %r" % (v,))

    def local_component(self, place):
        return self.exceptions.get(place, self.tail)

    def __repr__(self):
        exc = ", ".join(
            "%r: %r" % (v, x)
            for v, x in sorted(self.exceptions.items(), key=lambda vx: vx[0].sort_key())
        )
        if self.degree == 0:
            return "Adele0[global=%r, local tail=%r, {%s}]" % (self.global_part, self.tail, exc)
        return "Adele1[tail=%r, {%s}]" % (self.tail, exc)

    def __eq__(self, other):
        return (
            isinstance(other, AdeleCochain)
            and (self.curve, self.degree, self.weight) == (other.curve, other.degree, other.weight)
            and self.global_part == other.global_part
            and self.tail == other.tail
            and self.exceptions == other.exceptions
        )


def _zero_value(curve, weight):
    if weight[0] == "coh" or weight == ("k", 1):
        return FunctionFieldElement.zero(curve)
    if weight == ("k", 2):
        return MilnorSymbol(curve, [])
    return 0


def _unit_value(curve, weight):
    if weight[0] == "coh":
        return FunctionFieldElement.zero(curve)
    if weight == ("k", 1):
        return FunctionFieldElement.one(curve)
    if weight == ("k", 2):
        return MilnorSymbol(curve, [])
    return 0


class CohomologyReport:
    __slots__ = ("h0", "h1", "bound", "basis")

    def __init__(self, h0, h1, bound, basis):
        self.h0 = h0
        self.h1 = h1
        self.bound = bound
        self.basis = basis

    def __repr__(self):
        return "CohomologyReport(h0=%d, h1=%d, bound=%d)" % (self.h0, self.h1, self.bound)


def adelic_differential(cochain):
    """(f_X, {f_x}) -> {f_x - f_X} for a degree-0 coherent cochain."""
    if cochain.degree != 0:
        raise DomainError("differential of a degree-0 cochain expected")
    if cochain.weight[0] != "coh":
        raise DomainError("the differential is implemented for coherent coefficients")
    g = cochain.global_part
    tail = cochain.tail - g
    exc = {v: x - g for v, x in cochain.exceptions.items()}
    exc = {v: x for v, x in exc.items() if x != tail}
    return AdeleCochain(cochain.curve, 1, cochain.weight, tail=tail, exceptions=exc)


def divisor_cocycle(D):
    """The K1-valued 1-cocycle with exception s_v^(-D(v)) at v in supp D.

    s_v is the canonical uniformizer: the place polynomial on P^1 (1/t at
    infinity), the x-minimal polynomial / y / x/y on the elliptic model.
    """
    curve = D.curve
    exc = {}
    for v, m in D.items():
        u = uniformizer(v)
        exc[v] = u ** (-m)
    return AdeleCochain(curve, 1, ("k", 1), tail=_one(curve), exceptions=exc)


def uniformizer(place):
    """A function with valuation exactly 1 at the place."""
    curve = place.curve
    if place.kind == "p1-finite":
        return FunctionFieldElement(curve, _rat(place.data))
    if place.kind == "p1-infinity":
        from .fields import Polynomial, RationalFunction

        return FunctionFieldElement(
            curve, RationalFunction(Polynomial.one(curve.spec), Polynomial.x(curve.spec))
        )
    if place.kind == "ec-origin":
        x = FunctionFieldElement.x_function(curve)
        y = FunctionFieldElement.y_function(curve)
        return x / y
    x0, y0 = place.representative()
    if not y0:
        return FunctionFieldElement.y_function(curve)
    from .curves import x_minimal_poly

    u = FunctionFieldElement(curve, _rat(x_minimal_poly(place)))
    assert valuation(u, place) == 1
    return u


def _rat(poly):
    from .fields import RationalFunction

    return RationalFunction(poly)


def nu_curve(cochain, ext_bound=6):
    """Residue morphism of a degree-1 cochain into the Gersten complex.

    Weight 1: v -> -valuation(component_v); weight 2: v -> tame symbol of
    the component, raised to the audited weight-2 exponent.
    """
    if cochain.degree != 1:
        raise DomainError("nu acts on degree-1 cochains")
    if cochain.weight[0] != "k" or cochain.weight[1] not in (1, 2):
        raise DomainError("nu is defined for K-weight 1 or 2")
    curve = cochain.curve
    n = cochain.weight[1]
    support = {}
    tail = cochain.tail
    if n == 1:
        if tail and not _is_constant_function(tail):
            for v, _m in principal_divisor(tail, ext_bound).items():
                support[v] = None
    else:
        for v in symbol_support(tail, ext_bound):
            support[v] = None
    for v in cochain.exceptions:
        support[v] = None
    out = {}
    for v in support:
        comp = cochain.local_component(v)
        if n == 1:
            if not comp:
                raise DomainError("zero K1 component at %r" % (v,))
            val = -valuation(comp, v)
            if val:
                out[v] = val
        else:
            value = tame_symbol(comp, v) ** signs.NU_WEIGHT2_EXPONENT
            if value != value.spec.one():
                out[v] = value
    return GerstenImage(curve, 1, n, out)


def _is_constant_function(f):
    if f.curve.kind == "p1":
        return f.fx.num.degree < 1 and f.fx.den.degree < 1
    return not f.fy and f.fx.num.degree < 1 and f.fx.den.degree < 1


def _value_product(curve, wm, a, wn, b):
    """Product of K-theory values of weights wm and wn."""
    total = wm + wn
    if total > 2:
        raise DomainError("weight overflow: K-weight %d is not supported" % total)
    if wm == 0 and wn == 0:
        return a * b
    if wm == 0:
        return b**a if wn == 1 else MilnorSymbol(curve, [(f, g, e * a) for f, g, e in b.entries])
    if wn == 0:
        return a**b if wm == 1 else MilnorSymbol(curve, [(f, g, e * b) for f, g, e in a.entries])
    return MilnorSymbol.pair(a, b)


def cochain_product(left, right):
    """Flag-wise product (f.g)_{flag} = f_{front} * g_{back}.

    On a curve the allowed degree combinations are (0,0), (0,1), (1,0);
    anything of total degree above 1 overflows the complex.
    """
    if left.curve != right.curve:
        raise DomainError("cochains on different curves")
    if left.weight[0] != "k" or right.weight[0] != "k":
        raise DomainError("products are implemented for K-coefficients")
    curve = left.curve
    p, q = left.degree, right.degree
    if p + q > 1:
        raise DomainError("degree overflow: a curve has no degree-%d cochains" % (p + q))
    wm, wn = left.weight[1], right.weight[1]
    weight = ("k", wm + wn)
    if weight[1] > 2:
        raise DomainError("weight overflow: K-weight %d is not supported" % weight[1])
    if p == 0 and q == 0:
        g = _value_product(curve, wm, left.global_part, wn, right.global_part)
        tail = _value_product(curve, wm, left.tail, wn, right.tail)
        places = set(left.exceptions) | set(right.exceptions)
        exc = {
            v: _value_product(
                curve, wm, left.local_component(v), wn, right.local_component(v)
            )
            for v in places
        }
        return AdeleCochain(curve, 0, weight, global_part=g, tail=tail, exceptions=exc)
    if p == 0:
        # front component of the flag (X, x) is the global part of ``left``
        a = left.global_part
        tail = _value_product(curve, wm, a, wn, right.tail)
        exc = {v: _value_product(curve, wm, a, wn, x) for v, x in right.exceptions.items()}
        return AdeleCochain(curve, 1, weight, tail=tail, exceptions=exc)
    # p == 1, q == 0: back component of (X, x) is the local part of ``right``
    places = set(left.exceptions) | set(right.exceptions)
    tail = _value_product(curve, wm, left.tail, wn, right.tail)
    exc = {
        v: _value_product(curve, wm, left.local_component(v), wn, right.local_component(v))
        for v in places
    }
    return AdeleCochain(curve, 1, weight, tail=tail, exceptions=exc)


def cohomology_dims(curve, D, ext_bound=6):
    """h^0 and h^1 of the adelic complex with O(D) coefficients.

    h0 is dim L(D).  h1 is the corank of the principal-parts map
    L(E) -> O(E)/O(D) for an auxiliary divisor E = D + m*v1, recomputed with
    m doubled until two consecutive values agree.
    """
    if curve.kind == "p1":
        v1 = Place.infinity(curve)
    else:
        v1 = Place.origin(curve)
    basis_D = riemann_roch_space(D, ext_bound)
    h0 = len(basis_D)
    m = 2 * (curve.genus + 1)
    previous = None
    while True:
        h1 = _h1_estimate(curve, D, v1, m, h0, ext_bound)
        if previous is not None and h1 == previous:
            break
        previous = h1
        m *= 2
        if m > 4096:
            raise AssertionError("cohomology stabilization runaway")
    report = CohomologyReport(h0, h1, m, basis_D)
    if h0 - h1 != D.degree + 1 - curve.genus:
        raise AssertionError(
            "Riemann-Roch violated: h0=%d h1=%d deg=%d genus=%d"
            % (h0, h1, D.degree, curve.genus)
        )
    return report


def _h1_estimate(curve, D, v1, m, h0, ext_bound):
    E = D + Divisor(curve, {v1: m})
    basis_E = riemann_roch_space(E, ext_bound)
    dv1 = D.multiplicity(v1)
    rows = []
    prec = -dv1  # coefficients for exponents -E(v1) .. -D(v1)-1
    for f in basis_E:
        ser = expand_at(f, v1, prec)
        rows.append([ser.coefficient(n).val[0] for n in range(-dv1 - m, -dv1)])
    if rows:
        _, pivots = rref(rows, curve.spec.p)
        rk = len(pivots)
    else:
        rk = 0
    if rk != len(basis_E) - h0:
        raise AssertionError("principal-parts kernel is not L(D)")
    return m - rk
