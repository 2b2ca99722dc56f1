"""Graph equivariant cohomology over the rationals.

An equivariant class assigns a homogeneous degree-d polynomial in r
variables to each vertex, subject to the congruence along every edge: the
difference of the endpoint polynomials is divisible by the edge label as a
linear form.  Divisibility is tested as vanishing on the label's kernel
hyperplane; ranks come from the kernel dimension of the exact linear
system over Q.  Ordinary Betti numbers are recovered through the
free-module Hilbert series recursion and cross-checked against the fixed
point count and Poincare duality.
"""

from fractions import Fraction
from math import comb

from .errors import NotGKMConsistentError
from .lattice import integer_kernel
from .polynomials import Poly, monomials


class EquivariantClass:
    """Vertex-indexed homogeneous polynomials of one degree."""

    __slots__ = ("graph", "degree", "values")

    def __init__(self, graph, degree, values):
        degree = int(degree)
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        vals = {}
        for v in graph.vertices:
            if v not in values:
                raise ValueError("missing value at vertex %s" % v)
            p = values[v]
            if not isinstance(p, Poly):
                p = Poly.constant(graph.rank, p)
            if p.nvars != graph.rank:
                raise ValueError("polynomial at %s has %d variables, expected %d"
                                 % (v, p.nvars, graph.rank))
            if not p.is_homogeneous() or (not p.is_zero() and p.degree() != degree):
                raise ValueError("value at %s is not homogeneous of degree %d"
                                 % (v, degree))
            vals[v] = p
        self.graph = graph
        self.degree = degree
        self.values = vals

    def __eq__(self, other):
        return (isinstance(other, EquivariantClass)
                and self.graph == other.graph
                and self.degree == other.degree
                and self.values == other.values)

    def __repr__(self):
        return "EquivariantClass(degree=%d)" % self.degree


def _kernel_images(label, rank):
    """Substitution polynomials parametrizing the hyperplane label = 0."""
    basis = integer_kernel([label], rank)
    return [Poly.linear([b[i] for b in basis]) for i in range(rank)]


def divisible_by_linear(poly, label):
    """Divisibility of a polynomial by a nonzero integer linear form."""
    if not any(label):
        raise ValueError("zero linear form")
    return poly.compose_linear(_kernel_images(label, len(label))).is_zero()


def is_class(g, candidate):
    """Whether the edge congruences hold for every edge of the graph."""
    if candidate.graph != g:
        raise ValueError("class belongs to a different graph")
    for e in g.edges:
        diff = candidate.values[e.u] - candidate.values[e.v]
        if not diff.is_zero() and not divisible_by_linear(diff, e.label):
            return False
    return True


def multiply(c1, c2):
    """Vertexwise product; the ring structure of the section space."""
    if c1.graph != c2.graph:
        raise ValueError("graph mismatch")
    return EquivariantClass(c1.graph, c1.degree + c2.degree,
                            {v: c1.values[v] * c2.values[v]
                             for v in c1.graph.vertices})


def _gauss_rank(rows):
    """Rank of a list of dict-rows {column: Fraction} over Q."""
    pivots = {}  # column -> reduced row
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            if col in pivots:
                factor = row[col]
                for c, val in pivots[col].items():
                    acc = row.get(c, Fraction(0)) - factor * val
                    if acc:
                        row[c] = acc
                    elif c in row:
                        del row[c]
            else:
                inv = Fraction(1) / row[col]
                pivots[col] = {c: v * inv for c, v in row.items()}
                rank += 1
                break
    return rank


def graded_rank(g, d):
    """Dimension over Q of the degree-d equivariant classes.

    Unknowns are the monomial coefficients at each vertex; each edge
    contributes the equations expressing that the difference of the
    endpoint polynomials vanishes on the label's kernel hyperplane.
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    r = g.rank
    monos = monomials(r, d)
    ncols = len(g.vertices) * len(monos)
    col = {}
    idx = 0
    for v in g.vertices:
        for m in monos:
            col[(v, m)] = idx
            idx += 1

    restriction_cache = {}
    rows = []
    for e in g.edges:
        if e.label not in restriction_cache:
            images = _kernel_images(e.label, r)
            restriction_cache[e.label] = {
                m: Poly.monomial(m).compose_linear(images).coeffs for m in monos}
        restricted = restriction_cache[e.label]
        equations = {}
        for m in monos:
            for tmono, coeff in restricted[m].items():
                eq = equations.setdefault(tmono, {})
                eq[col[(e.u, m)]] = eq.get(col[(e.u, m)], 0) + Fraction(coeff)
                eq[col[(e.v, m)]] = eq.get(col[(e.v, m)], 0) - Fraction(coeff)
        for eq in equations.values():
            eq = {c: v for c, v in eq.items() if v}
            if eq:
                rows.append(eq)
    return ncols - _gauss_rank(rows)


def betti_numbers(g):
    """Even Betti numbers (b_0, b_2, ..., b_2n) from the graded ranks.

    Uses the Hilbert-series recursion for a free module over the
    polynomial ring in r variables:
        b_2k = graded_rank(k) - sum_{j<k} b_2j * C(k-j+r-1, r-1).
    The vector must be nonnegative, sum to the vertex count (the Euler
    characteristic equals the number of fixed points) and be palindromic;
    any failure raises NotGKMConsistentError.
    """
    n = g.valence
    r = g.rank
    b = []
    for k in range(n + 1):
        rk = graded_rank(g, k)
        bk = rk - sum(b[j] * comb(k - j + r - 1, r - 1) for j in range(k))
        if bk < 0:
            raise NotGKMConsistentError(
                "negative b_%d: graph not equivariantly formal / not GKM-consistent" % (2 * k))
        b.append(bk)
    if sum(b) != len(g.vertices):
        raise NotGKMConsistentError(
            "Betti sum %d differs from fixed point count %d: "
            "graph not equivariantly formal / not GKM-consistent"
            % (sum(b), len(g.vertices)))
    if b != b[::-1]:
        raise NotGKMConsistentError(
            "Betti vector %r is not palindromic: "
            "graph not equivariantly formal / not GKM-consistent" % (b,))
    return b
