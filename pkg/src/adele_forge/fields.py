"""Exact arithmetic over GF(p) and GF(p^k), univariate polynomials over such
fields, polynomial factorization, and rational functions in canonical form.

Extension fields are realized as GF(p)[x]/(modulus); elements carry their
FieldSpec and coefficient vector.  Polynomials over a prime field delegate
their inner loops to the kernel backend (see ``_kernels``).
"""

from functools import lru_cache
from random import Random

from . import _kernels as K
from .errors import DomainError

FACTOR_SEED = 0  # default seed for the randomized splitting steps


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class FieldSpec:
    """A finite field GF(p^k), with k > 1 presented as GF(p)[x]/(modulus)."""

    __slots__ = ("p", "k", "modulus", "_hash")

    def __init__(self, p, k=1, modulus=None):
        if not is_prime(p):
            raise DomainError("characteristic %r is not prime" % (p,))
        if k < 1:
            raise DomainError("extension degree must be >= 1")
        if k == 1:
            if modulus is not None:
                raise DomainError("modulus must be absent for a prime field")
            self.modulus = None
        else:
            if modulus is None:
                raise DomainError("extension field needs a modulus")
            mod = [c % p for c in modulus]
            while mod and mod[-1] == 0:
                mod.pop()
            if len(mod) != k + 1 or mod[-1] != 1:
                raise DomainError("modulus must be monic of degree %d" % k)
            if not _irreducible_int_poly(mod, p):
                raise DomainError("modulus is reducible over GF(%d)" % p)
            self.modulus = tuple(mod)
        self.p = p
        self.k = k
        self._hash = hash((p, k, self.modulus))

    @property
    def order(self):
        return self.p**self.k

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.k == 1:
            return "GF(%d)" % self.p
        return "GF(%d^%d)" % (self.p, self.k)

    def _elt(self, val):
        # val: reduced tuple of length k, no validation
        e = FieldElement.__new__(FieldElement)
        e.spec = self
        e.val = val
        return e

    def element(self, value):
        """Build an element from an int or a coefficient list (low first)."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise DomainError("field mismatch")
            return value
        if isinstance(value, int):
            return self._elt((value % self.p,) + (0,) * (self.k - 1))
        vals = [c % self.p for c in value]
        if len(vals) > self.k:
            raise DomainError("coefficient vector too long")
        vals += [0] * (self.k - len(vals))
        return self._elt(tuple(vals))

    def zero(self):
        return self._elt((0,) * self.k)

    def one(self):
        return self.element(1)

    def gen(self):
        """The class of x (for k > 1), or 1 for a prime field."""
        if self.k == 1:
            return self.one()
        return self._elt((0, 1) + (0,) * (self.k - 2))

    def elements(self):
        for n in range(self.order):
            vals = []
            m = n
            for _ in range(self.k):
                m, r = divmod(m, self.p)
                vals.append(r)
            yield self._elt(tuple(vals))

    def from_encoding(self, n):
        vals = []
        for _ in range(self.k):
            n, r = divmod(n, self.p)
            vals.append(r)
        return self._elt(tuple(vals))


def _irreducible_int_poly(mod, p):
    """Exhaustive small-degree factor search: sweep every factor degree
    d <= k//2 at once through gcd with x^(p^d) - x."""
    k = len(mod) - 1
    if k == 1:
        return True
    h = [0, 1]
    for _ in range(k // 2):
        h = K.poly_powmod(h, p, mod, p)
        g = K.poly_gcd(K.poly_sub(h, [0, 1], p), mod, p)
        if len(g) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def prime_field(p):
    return FieldSpec(p)


@lru_cache(maxsize=None)
def canonical_field(p, k):
    """GF(p^k) with the lexicographically first monic irreducible modulus."""
    if k == 1:
        return prime_field(p)
    for n in range(p**k):
        coeffs = []
        m = n
        for _ in range(k):
            m, r = divmod(m, p)
            coeffs.append(r)
        mod = coeffs + [1]
        if _irreducible_int_poly(mod, p):
            return FieldSpec(p, k, mod)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldElement:
    __slots__ = ("spec", "val")

    def __init__(self, spec, value):
        e = spec.element(value)
        self.spec = spec
        self.val = e.val

    def __bool__(self):
        return any(self.val)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.spec.element(other)
        return (
            isinstance(other, FieldElement)
            and self.spec == other.spec
            and self.val == other.val
        )

    def __hash__(self):
        return hash((self.spec._hash, self.val))

    def __repr__(self):
        if self.spec.k == 1:
            return str(self.val[0])
        return "(" + ",".join(str(c) for c in self.val) + ")"

    def encoding(self):
        n = 0
        for c in reversed(self.val):
            n = n * self.spec.p + c
        return n

    def lift_int(self):
        if self.spec.k != 1 and any(self.val[1:]):
            raise DomainError("element not in the prime subfield")
        return self.val[0]

    def _coerce(self, other):
        if isinstance(other, int):
            return self.spec.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.spec != self.spec:
            raise DomainError("field mismatch: %r vs %r" % (self.spec, other.spec))
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.spec.p
        return self.spec._elt(tuple((a + b) % p for a, b in zip(self.val, other.val)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.spec.p
        return self.spec._elt(tuple((a - b) % p for a, b in zip(self.val, other.val)))

    def __rsub__(self, other):
        return self.spec.element(other) - self

    def __neg__(self):
        p = self.spec.p
        return self.spec._elt(tuple((-a) % p for a in self.val))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        spec = self.spec
        p = spec.p
        if spec.k == 1:
            return spec._elt(((self.val[0] * other.val[0]) % p,))
        prod = K.poly_mul(list(self.val), list(other.val), p)
        prod = K.poly_mod(prod, list(spec.modulus), p)
        prod += [0] * (spec.k - len(prod))
        return spec._elt(tuple(prod))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise DomainError("division by zero in %r" % (self.spec,))
        spec = self.spec
        if spec.k == 1:
            return spec._elt((pow(self.val[0], spec.p - 2, spec.p),))
        inv = K.poly_invmod(list(self.val), list(spec.modulus), spec.p)
        inv += [0] * (spec.k - len(inv))
        return spec._elt(tuple(inv))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.spec.element(other) / self

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.spec.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self):
        return self**self.spec.p

    def minimal_degree(self):
        """Degree of the subfield GF(p^d) generated by this element."""
        a = self
        for d in range(1, self.spec.k + 1):
            a = a.frobenius()
            if a == self:
                return d
        raise AssertionError("frobenius orbit did not close")


def norm_to_prime_field(a):
    """Product of the Frobenius conjugates a * a^p * ... * a^(p^(k-1))."""
    spec = a.spec
    result = a
    conj = a
    for _ in range(spec.k - 1):
        conj = conj.frobenius()
        result = result * conj
    return prime_field(spec.p)._elt((result.lift_int(),))


def trace_to_prime_field(a):
    spec = a.spec
    result = a
    conj = a
    for _ in range(spec.k - 1):
        conj = conj.frobenius()
        result = result + conj
    return prime_field(spec.p)._elt((result.lift_int(),))


def field_sqrt(a):
    """A square root of a in its own field, or None if a is not a square."""
    spec = a.spec
    q = spec.order
    if not a:
        return spec.zero()
    if spec.p == 2:
        return a ** (q // 2)
    if a ** ((q - 1) // 2) != spec.one():
        return None
    z = Polynomial.from_elements(spec, [-a, spec.zero(), spec.one()])
    roots = poly_roots(z)
    return min(roots, key=lambda r: r.encoding())


class Polynomial:
    """Univariate polynomial over a FieldSpec; coefficients low degree first,
    no trailing zeros."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec, coeffs):
        self.spec = spec
        elts = [spec.element(c) for c in coeffs]
        while elts and not elts[-1]:
            elts.pop()
        self.coeffs = tuple(elts)

    @classmethod
    def _raw(cls, spec, elts):
        poly = cls.__new__(cls)
        poly.spec = spec
        poly.coeffs = elts
        return poly

    @classmethod
    def from_elements(cls, spec, elts):
        elts = list(elts)
        while elts and not elts[-1]:
            elts.pop()
        return cls._raw(spec, tuple(elts))

    @classmethod
    def from_ints(cls, spec, ints):
        return cls(spec, list(ints))

    @classmethod
    def zero(cls, spec):
        return cls._raw(spec, ())

    @classmethod
    def one(cls, spec):
        return cls._raw(spec, (spec.one(),))

    @classmethod
    def x(cls, spec):
        return cls._raw(spec, (spec.zero(), spec.one()))

    @classmethod
    def constant(cls, c):
        if not c:
            return cls.zero(c.spec)
        return cls._raw(c.spec, (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.spec._hash, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = repr(c)
            if i == 0:
                parts.append(cs)
            else:
                xs = "x" if i == 1 else "x^%d" % i
                parts.append(xs if cs == "1" else "%s*%s" % (cs, xs))
        return " + ".join(parts)

    def lc(self):
        if not self.coeffs:
            return self.spec.zero()
        return self.coeffs[-1]

    def constant_term(self):
        if not self.coeffs:
            return self.spec.zero()
        return self.coeffs[0]

    def _ints(self):
        return [c.val[0] for c in self.coeffs]

    def _from_ints(self, ints):
        spec = self.spec
        return Polynomial._raw(spec, tuple(spec._elt((c,)) for c in ints))

    def _check(self, other):
        if self.spec != other.spec:
            raise DomainError("polynomial field mismatch")

    def __add__(self, other):
        self._check(other)
        if self.spec.k == 1:
            return self._from_ints(K.poly_add(self._ints(), other._ints(), self.spec.p))
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.spec.zero()
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return Polynomial.from_elements(self.spec, [x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        self._check(other)
        if self.spec.k == 1:
            return self._from_ints(K.poly_sub(self._ints(), other._ints(), self.spec.p))
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.spec.zero()
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return Polynomial.from_elements(self.spec, [x - y for x, y in zip(a, b)])

    def __neg__(self):
        return Polynomial._raw(self.spec, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            other = Polynomial.constant(self.spec.element(other))
        self._check(other)
        if self.spec.k == 1:
            return self._from_ints(K.poly_mul(self._ints(), other._ints(), self.spec.p))
        if not self.coeffs or not other.coeffs:
            return Polynomial.zero(self.spec)
        z = self.spec.zero()
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Polynomial.from_elements(self.spec, out)

    def scale(self, c):
        c = self.spec.element(c)
        return Polynomial.from_elements(self.spec, [a * c for a in self.coeffs])

    def __divmod__(self, other):
        self._check(other)
        if not other:
            raise DomainError("polynomial division by zero")
        if self.spec.k == 1:
            q, r = K.poly_divmod(self._ints(), other._ints(), self.spec.p)
            return self._from_ints(q), self._from_ints(r)
        q = Polynomial.zero(self.spec)
        r = self
        inv = other.lc().inverse()
        while r and r.degree >= other.degree:
            d = r.degree - other.degree
            c = r.lc() * inv
            term = Polynomial.from_elements(
                self.spec, [self.spec.zero()] * d + [c]
            )
            q = q + term
            r = r - term * other
        return q, r

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise DomainError("inexact polynomial division")
        return q

    def __pow__(self, e):
        if e < 0:
            raise DomainError("negative polynomial power")
        result = Polynomial.one(self.spec)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def powmod(self, e, modulus):
        if self.spec.k == 1:
            out = K.poly_powmod(self._ints(), e, modulus._ints(), self.spec.p)
            return self._from_ints(out)
        result = Polynomial.one(self.spec)
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def monic(self):
        if not self:
            return self
        if self.lc() == self.spec.one():
            return self
        return self.scale(self.lc().inverse())

    def evaluate(self, x):
        if isinstance(x, int):
            x = self.spec.element(x)
        if x.spec != self.spec:
            raise DomainError("evaluation point in a different field")
        y = x.spec.zero()
        for c in reversed(self.coeffs):
            y = y * x + c
        return y

    def derivative(self):
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(self.coeffs[i] * self.spec.element(i))
        return Polynomial.from_elements(self.spec, out)

    def compose(self, other):
        """self(other) for a polynomial argument."""
        self._check(other)
        result = Polynomial.zero(self.spec)
        for c in reversed(self.coeffs):
            result = result * other + Polynomial.constant(c)
        return result

    def shift(self, a):
        """self(x + a)."""
        x_plus = Polynomial.from_elements(self.spec, [a, self.spec.one()])
        return self.compose(x_plus)

    def lift_to(self, spec):
        """Reinterpret a prime-field polynomial over an extension of GF(p)."""
        if self.spec == spec:
            return self
        if self.spec.k != 1 or spec.p != self.spec.p:
            raise DomainError("can only lift from the prime subfield")
        return Polynomial.from_elements(spec, [spec.element(c.val[0]) for c in self.coeffs])

    def root_multiplicity(self, x0):
        """Multiplicity of the root x0 (0 if not a root)."""
        m = 0
        f = self
        lin = Polynomial.from_elements(self.spec, [-x0, self.spec.one()])
        while f and not f.evaluate(x0):
            f = f.exact_div(lin)
            m += 1
        return m

    def sort_key(self):
        return (self.degree, tuple(c.encoding() for c in reversed(self.coeffs)))

    def is_irreducible(self):
        if self.degree < 1:
            return False
        f = self.monic()
        q = self.spec.order
        x = Polynomial.x(self.spec)
        h = x
        for _ in range(f.degree // 2):
            h = h.powmod(q, f)
            if poly_gcd(h - x, f).degree > 0:
                return False
        return True


def poly_gcd(a, b):
    if a.spec != b.spec:
        raise DomainError("polynomial field mismatch")
    if a.spec.k == 1:
        out = K.poly_gcd(a._ints(), b._ints(), a.spec.p)
        return a._from_ints(out)
    while b:
        a, b = b, a % b
    return a.monic()


def _pth_root(f):
    """For f with f' = 0, the polynomial g with g(x)^p = f(x)."""
    spec = f.spec
    p = spec.p
    e = spec.order // p
    out = []
    for i in range(0, len(f.coeffs), p):
        out.append(f.coeffs[i] ** e if e > 1 else f.coeffs[i])
    return Polynomial.from_elements(spec, out)


def _squarefree_decomposition(f):
    """Monic f -> list of (monic squarefree g, multiplicity), pairwise coprime."""
    spec = f.spec
    p = spec.p
    out = []
    df = f.derivative()
    if not df:
        for g, m in _squarefree_decomposition(_pth_root(f)):
            out.append((g, m * p))
        return out
    c = poly_gcd(f, df)
    w = f.exact_div(c)
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w.exact_div(y)
        if z.degree > 0:
            out.append((z, i))
        w = y
        c = c.exact_div(y)
        i += 1
    if c.degree > 0:
        for g, m in _squarefree_decomposition(_pth_root(c)):
            out.append((g, m * p))
    return out


def _distinct_degree(f):
    """Squarefree monic f -> list of (product of irreducibles of degree d, d)."""
    spec = f.spec
    q = spec.order
    x = Polynomial.x(spec)
    out = []
    h = x
    d = 0
    while f.degree > 0:
        d += 1
        if f.degree < 2 * d:
            out.append((f, f.degree))
            break
        h = h.powmod(q, f)
        g = poly_gcd(h - x, f)
        if g.degree > 0:
            out.append((g, d))
            f = f.exact_div(g)
            h = h % f
    return out


def _equal_degree_split(f, d, rng):
    """Split a squarefree product of degree-d irreducibles (Cantor-Zassenhaus)."""
    spec = f.spec
    if f.degree == d:
        return [f]
    q = spec.order
    n = f.degree
    while True:
        a = Polynomial.from_elements(
            spec, [spec.from_encoding(rng.randrange(q)) for _ in range(n)]
        )
        if a.degree < 1:
            continue
        g = poly_gcd(a, f)
        if 0 < g.degree < n:
            break
        if spec.p == 2:
            t = a % f
            acc = t
            for _ in range(spec.k * d - 1):
                t = t.powmod(2, f)
                acc = (acc + t) % f
            g = poly_gcd(acc, f)
        else:
            b = a.powmod((q**d - 1) // 2, f)
            g = poly_gcd(b - Polynomial.one(spec), f)
        if 0 < g.degree < n:
            break
    return _equal_degree_split(g, d, rng) + _equal_degree_split(f.exact_div(g), d, rng)


def factor_polynomial(f, seed=None):
    """Full factorization over the coefficient field.

    Returns (leading coefficient, [(monic irreducible, multiplicity), ...])
    with factors in a deterministic order (degree, then coefficient order).
    """
    if not f:
        raise DomainError("cannot factor zero")
    if seed is None:
        seed = FACTOR_SEED
    lc = f.lc()
    f = f.monic()
    rng = Random(seed)
    factors = []
    if f.degree == 0:
        return lc, []
    for g, mult in _squarefree_decomposition(f):
        for part, d in _distinct_degree(g):
            for irr in _equal_degree_split(part, d, rng):
                factors.append((irr, mult))
    factors.sort(key=lambda fm: fm[0].sort_key())
    return lc, factors


def poly_roots(f):
    """All roots of f in its own coefficient field (each listed once)."""
    if not f:
        raise DomainError("cannot take roots of zero")
    spec = f.spec
    q = spec.order
    x = Polynomial.x(spec)
    g = poly_gcd(f, x.powmod(q, f) - x)
    roots = []
    rng = Random(FACTOR_SEED)
    if g.degree > 0:
        for lin in _equal_degree_split(g, 1, rng):
            roots.append(-lin.constant_term())
    roots.sort(key=lambda r: r.encoding())
    return roots


def roots_in_field(f, field):
    """Roots in ``field`` of a prime-field polynomial f."""
    return poly_roots(f.lift_to(field))


class RationalFunction:
    """num/den in canonical form: coprime, den monic, den = 1 when num = 0."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Polynomial.one(num.spec)
        if num.spec != den.spec:
            raise DomainError("rational function field mismatch")
        if not den:
            raise DomainError("zero denominator")
        if not num:
            self.num = num
            self.den = Polynomial.one(num.spec)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        c = den.lc().inverse()
        self.num = num.scale(c)
        self.den = den.scale(c)

    @classmethod
    def from_poly(cls, num):
        return cls(num)

    @classmethod
    def zero(cls, spec):
        return cls(Polynomial.zero(spec))

    @classmethod
    def one(cls, spec):
        return cls(Polynomial.one(spec))

    @property
    def spec(self):
        return self.num.spec

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.degree == 0:
            return repr(self.num)
        return "(%r)/(%r)" % (self.num, self.den)

    def is_poly(self):
        return self.den.degree == 0

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        other = self._coerce(other)
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (FieldElement, int)):
            return RationalFunction(Polynomial.constant(self.spec.element(other)))
        raise DomainError("cannot combine rational function with %r" % (other,))

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if not other:
            raise DomainError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, e):
        if e >= 0:
            return RationalFunction(self.num**e, self.den**e)
        if not self:
            raise DomainError("zero to a negative power")
        return RationalFunction(self.den ** (-e), self.num ** (-e))

    def inverse(self):
        return self ** (-1)

    def evaluate(self, x):
        d = self.den.evaluate(x)
        if not d:
            raise DomainError("pole at evaluation point")
        return self.num.evaluate(x) / d

    def derivative(self):
        n = self.num.derivative() * self.den - self.num * self.den.derivative()
        return RationalFunction(n, self.den * self.den)

    def lift_to(self, spec):
        return RationalFunction(self.num.lift_to(spec), self.den.lift_to(spec))


def normalize_rational(num, den):
    """Canonical rational function num/den (coprime, monic denominator)."""
    return RationalFunction(num, den)
