"""Truncated Laurent series over a finite field.

Used for local expansions at places of a curve: principal parts for the
adelic cohomology computation, vanishing conditions for Riemann-Roch bases,
residues of 1-forms, and leading values of functions at places.

A series holds coefficients for exponents start, start+1, ..., prec-1 and
knows nothing beyond prec.  Arithmetic tracks the resulting precision
honestly; callers overshoot and assert they got enough.
"""

from .errors import DomainError


class LaurentSeries:
    __slots__ = ("spec", "start", "coeffs", "prec")

    def __init__(self, spec, start, coeffs, prec):
        coeffs = list(coeffs)
        # drop leading zeros, clamp to the precision window
        while coeffs and not coeffs[0]:
            coeffs.pop(0)
            start += 1
        if start + len(coeffs) > prec:
            coeffs = coeffs[: max(0, prec - start)]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if not coeffs:
            start = prec
        self.spec = spec
        self.start = start
        self.coeffs = coeffs
        self.prec = prec

    @classmethod
    def zero(cls, spec, prec):
        return cls(spec, prec, [], prec)

    @classmethod
    def constant(cls, c, prec):
        return cls(c.spec, 0, [c], prec)

    @classmethod
    def var(cls, spec, prec, exponent=1):
        """The series t^exponent."""
        return cls(spec, exponent, [spec.one()], prec)

    @classmethod
    def from_polynomial(cls, poly, prec, var=None):
        """poly(t) as a series, or poly(var) for a series argument."""
        if var is None:
            return cls(poly.spec, 0, list(poly.coeffs), prec)
        result = cls.zero(poly.spec, prec)
        for c in reversed(poly.coeffs):
            result = result * var + cls.constant(c, prec)
        return result

    def is_zero_to_precision(self):
        return not self.coeffs

    def valuation(self):
        if not self.coeffs:
            return None
        return self.start

    def coefficient(self, n):
        if n >= self.prec:
            raise DomainError("coefficient beyond series precision")
        if n < self.start or n >= self.start + len(self.coeffs):
            return self.spec.zero()
        return self.coeffs[n - self.start]

    def __repr__(self):
        terms = ["%r*t^%d" % (c, self.start + i) for i, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        return "<%s + O(t^%d)>" % (body, self.prec)

    def __add__(self, other):
        prec = min(self.prec, other.prec)
        start = min(self.start, other.start, prec)
        n = prec - start
        z = self.spec.zero()
        out = [z] * n
        for i, c in enumerate(self.coeffs):
            j = self.start + i - start
            if 0 <= j < n:
                out[j] = out[j] + c
        for i, c in enumerate(other.coeffs):
            j = other.start + i - start
            if 0 <= j < n:
                out[j] = out[j] + c
        return LaurentSeries(self.spec, start, out, prec)

    def __neg__(self):
        return LaurentSeries(self.spec, self.start, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            prec = min(
                self.prec + (other.start if other.coeffs else other.prec),
                other.prec + (self.start if self.coeffs else self.prec),
            )
            return LaurentSeries.zero(self.spec, prec)
        prec = min(self.prec + other.start, other.prec + self.start)
        start = self.start + other.start
        n = prec - start
        z = self.spec.zero()
        out = [z] * max(n, 0)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k < n:
                    out[k] = out[k] + a * b
                else:
                    break
        return LaurentSeries(self.spec, start, out, prec)

    def scale(self, c):
        return LaurentSeries(self.spec, self.start, [c * a for a in self.coeffs], self.prec)

    def shift(self, n):
        """Multiply by t^n."""
        return LaurentSeries(self.spec, self.start + n, self.coeffs, self.prec + n)

    def truncate(self, prec):
        return LaurentSeries(self.spec, self.start, self.coeffs, min(prec, self.prec))

    def inverse(self):
        if not self.coeffs:
            raise DomainError("cannot invert a series that is zero to precision")
        v = self.start
        rel = self.prec - v  # number of known unit-part coefficients
        a = self.coeffs + [self.spec.zero()] * (rel - len(self.coeffs))
        inv0 = a[0].inverse()
        out = [inv0]
        for n in range(1, rel):
            s = self.spec.zero()
            for i in range(1, n + 1):
                s = s + a[i] * out[n - i]
            out.append(-inv0 * s)
        return LaurentSeries(self.spec, -v, out, self.prec - 2 * v)

    def __truediv__(self, other):
        return self * other.inverse()

    def sqrt(self, branch):
        """Square root whose leading coefficient is ``branch``.

        Requires an even leading exponent and branch^2 = leading coefficient.
        Characteristic must be odd.
        """
        if not self.coeffs:
            raise DomainError("cannot take sqrt of a series that is zero to precision")
        if self.spec.p == 2:
            raise DomainError("series sqrt unavailable in characteristic 2")
        v = self.start
        if v % 2:
            raise DomainError("sqrt of a series with odd valuation")
        lead = self.coeffs[0]
        if branch * branch != lead:
            raise DomainError("sqrt branch does not match leading coefficient")
        rel = self.prec - v
        a = self.coeffs + [self.spec.zero()] * (rel - len(self.coeffs))
        # a[n] = sum_{i+j=n} out[i]*out[j]  =>  out[n] = (a[n] - middle) / (2*branch)
        inv2b = (branch + branch).inverse()
        out = [branch]
        for n in range(1, rel):
            s = self.spec.zero()
            for i in range(1, n):
                s = s + out[i] * out[n - i]
            out.append((a[n] - s) * inv2b)
        return LaurentSeries(self.spec, v // 2, out, self.prec - v // 2)
