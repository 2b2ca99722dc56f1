"""Sparse multivariate polynomials over exact coefficients (int or Fraction).

Monomials are exponent tuples, one slot per variable; coefficients never
touch floating point.
"""

from itertools import combinations_with_replacement


def monomials(nvars, degree):
    """All exponent tuples of the given total degree, deterministic order."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


class Poly:
    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars, coeffs=None):
        self.nvars = nvars
        self.coeffs = {}
        if coeffs:
            for m, c in coeffs.items():
                if c:
                    self.coeffs[m] = c

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, i):
        m = [0] * nvars
        m[i] = 1
        return cls(nvars, {tuple(m): 1})

    @classmethod
    def linear(cls, coeffs):
        """The linear form sum(coeffs[i] * x_i)."""
        n = len(coeffs)
        d = {}
        for i, c in enumerate(coeffs):
            if c:
                m = [0] * n
                m[i] = 1
                d[tuple(m)] = c
        return cls(n, d)

    @classmethod
    def monomial(cls, exponents, c=1):
        return cls(len(exponents), {tuple(exponents): c})

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(sum(m) for m in self.coeffs)

    def is_homogeneous(self):
        degs = {sum(m) for m in self.coeffs}
        return len(degs) <= 1

    def leading(self):
        """(monomial, coefficient) maximal in lexicographic monomial order."""
        m = max(self.coeffs)
        return m, self.coeffs[m]

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.nvars, other)
        d = dict(self.coeffs)
        for m, c in other.coeffs.items():
            s = d.get(m, 0) + c
            if s:
                d[m] = s
            elif m in d:
                del d[m]
        return Poly(self.nvars, d)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.nvars, other)
        return self + (-other)

    def __neg__(self):
        return Poly(self.nvars, {m: -c for m, c in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(self.nvars, {m: c * other for m, c in self.coeffs.items()})
        d = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = d.get(m, 0) + c1 * c2
                if s:
                    d[m] = s
                elif m in d:
                    del d[m]
        return Poly(self.nvars, d)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Poly.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.coeffs == other.coeffs
        return self.coeffs == Poly.constant(self.nvars, other).coeffs

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.coeffs.items()))))

    def evaluate(self, point):
        """Value at a point (exact; point entries int or Fraction)."""
        total = 0
        for m, c in self.coeffs.items():
            v = c
            for x, e in zip(point, m):
                for _ in range(e):
                    v = v * x
            total += v
        return total

    def compose_linear(self, images):
        """Substitute x_i -> images[i], each a Poly in a common variable set."""
        out_nvars = images[0].nvars if images else 0
        pow_cache = [{0: Poly.constant(out_nvars, 1)} for _ in images]
        acc = Poly.zero(out_nvars)
        for mono, c in sorted(self.coeffs.items()):
            term = Poly.constant(out_nvars, c)
            for i, e in enumerate(mono):
                if e:
                    cache = pow_cache[i]
                    top = max(cache)
                    while top < e:
                        cache[top + 1] = cache[top] * images[i]
                        top += 1
                    term = term * cache[e]
            acc = acc + term
        return acc

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        parts = []
        for m, c in sorted(self.coeffs.items(), reverse=True):
            vars_part = "*".join(
                "x%d" % i if e == 1 else "x%d^%d" % (i, e)
                for i, e in enumerate(m) if e)
            parts.append("%s%s" % (c, "*" + vars_part if vars_part else ""))
        return "Poly(%s)" % " + ".join(parts)


def poly_product(polys, nvars):
    out = Poly.constant(nvars, 1)
    for p in polys:
        out = out * p
    return out


def elementary_symmetric_all(forms, nvars):
    """e_0 .. e_len(forms) of the given polynomials, by the product DP."""
    es = [Poly.constant(nvars, 1)]
    for f in forms:
        new = [es[0]]
        for k in range(1, len(es)):
            new.append(es[k] + es[k - 1] * f)
        new.append(es[-1] * f)
        es = new
    return es
