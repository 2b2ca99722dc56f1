"""Fixed-point localization of characteristic numbers.

A characteristic number of the underlying manifold is computed as an exact
rational: sum over vertices of the expression evaluated at the vertex's
signed weights, divided by the product of those weights.  The sum of
rational functions is formed over the common denominator built from the
distinct weight hyperplanes, and must cancel to a constant; a nonconstant
remainder certifies that the signed data does not come from a genuine GKM
action and raises NonconstantSumError.

Evaluation rule at a vertex with signed weights a_1..a_n:
    c_k  -> e_k(a_1, ..., a_n)          (weighted degree k)
    p_k  -> e_k(a_1^2, ..., a_n^2)      (weighted degree 2k)
    eu   -> a_1 * ... * a_n             (weighted degree n)
"""

from fractions import Fraction

from .errors import NonconstantSumError, ExprSyntaxError
from .lattice import canonical_weight
from .polynomials import Poly, elementary_symmetric_all

_MAX_C_INDEX = 9
_MAX_P_INDEX = 4


def _symbol_degree(sym, valence):
    kind, index = sym
    if kind == "c":
        return index
    if kind == "p":
        return 2 * index
    return valence  # eu


def _check_symbol(sym, valence):
    kind, index = sym
    if kind == "c":
        if not (1 <= index <= min(valence, _MAX_C_INDEX)):
            raise ExprSyntaxError("symbol c%d out of range for valence %d"
                                  % (index, valence))
    elif kind == "p":
        if not (1 <= index <= min(valence // 2, _MAX_P_INDEX)):
            raise ExprSyntaxError("symbol p%d out of range for valence %d"
                                  % (index, valence))
    elif kind != "eu":
        raise ExprSyntaxError("unknown symbol kind %r" % (kind,))


class CharClassExpr:
    """Integer polynomial in the symbols c1..c_n, p1..p_(n//2), eu.

    Terms map a sorted tuple of ((kind, index), exponent) pairs to an
    integer coefficient.  Homogeneity in the weighted degree is checked by
    assert_homogeneous(); arithmetic (+, *) is formal.
    """

    __slots__ = ("valence", "terms")

    def __init__(self, valence, terms=None):
        self.valence = int(valence)
        self.terms = {}
        if terms:
            for key, coeff in terms.items():
                key = tuple(sorted((tuple(sym), int(exp)) for sym, exp in key if exp))
                for sym, _ in key:
                    _check_symbol(sym, self.valence)
                if coeff:
                    self.terms[key] = self.terms.get(key, 0) + int(coeff)
            self.terms = {k: c for k, c in self.terms.items() if c}

    @classmethod
    def zero(cls, valence):
        return cls(valence)

    @classmethod
    def constant(cls, valence, c):
        return cls(valence, {(): c})

    @classmethod
    def monomial(cls, valence, powers, coeff=1):
        """powers: mapping (kind, index) -> exponent."""
        return cls(valence, {tuple(powers.items()): coeff})

    def monomial_degree(self, key):
        return sum(_symbol_degree(sym, self.valence) * exp for sym, exp in key)

    @property
    def degree(self):
        """Weighted degree; requires homogeneity, 0 for the zero expression."""
        self.assert_homogeneous()
        if not self.terms:
            return 0
        return self.monomial_degree(next(iter(self.terms)))

    def assert_homogeneous(self):
        degrees = sorted({self.monomial_degree(k) for k in self.terms})
        if len(degrees) > 1:
            raise ExprSyntaxError("inhomogeneous expression: monomial degrees %s"
                                  % ", ".join(map(str, degrees)))

    def __add__(self, other):
        if other.valence != self.valence:
            raise ValueError("valence mismatch")
        merged = dict(self.terms)
        for k, c in other.terms.items():
            merged[k] = merged.get(k, 0) + c
        return CharClassExpr(self.valence,
                             {k: c for k, c in merged.items() if c})

    def __mul__(self, other):
        if isinstance(other, int):
            return CharClassExpr(self.valence,
                                 {k: c * other for k, c in self.terms.items()})
        if other.valence != self.valence:
            raise ValueError("valence mismatch")
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                powers = {}
                for sym, e in k1 + k2:
                    powers[sym] = powers.get(sym, 0) + e
                key = tuple(sorted(powers.items()))
                out[key] = out.get(key, 0) + c1 * c2
        return CharClassExpr(self.valence, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, CharClassExpr)
                and self.valence == other.valence and self.terms == other.terms)

    def __hash__(self):
        return hash((self.valence, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return "CharClassExpr(valence=%d, terms=%r)" % (self.valence, self.terms)


def _vertex_symbol_table(weights, rank, valence, needed):
    """Evaluated symbol polynomials at one vertex."""
    forms = [Poly.linear(w) for w in weights]
    table = {}
    if any(sym[0] == "c" for sym in needed) or ("eu", 0) in needed:
        es = elementary_symmetric_all(forms, rank)
        for k in range(1, valence + 1):
            table[("c", k)] = es[k]
        table[("eu", 0)] = es[valence]
    if any(sym[0] == "p" for sym in needed):
        squares = [f * f for f in forms]
        esq = elementary_symmetric_all(squares, rank)
        for k in range(1, valence // 2 + 1):
            table[("p", k)] = esq[k]
    return table


def _evaluate_expr(expr, table, rank):
    total = Poly.zero(rank)
    for key, coeff in expr.terms.items():
        term = Poly.constant(rank, coeff)
        for sym, exp in key:
            term = term * table[sym] ** exp
        total = total + term
    return total


def _localized_sum(g, vertex_weights, vertex_unit, expr):
    """Sum over vertices of expr(v) / prod(weights at v), exactly.

    vertex_weights[v] lists the signed weight vectors; vertex_unit[v] is
    the +-1 relating their product to the product of the canonical
    (lexicographically positive) representatives.  The common denominator
    is the product of the distinct canonical hyperplanes with their
    maximal multiplicity.
    """
    rank = g.rank
    mult = {}
    per_vertex = {}
    for v in g.vertices:
        counts = {}
        for w in vertex_weights[v]:
            if not any(w):
                raise ValueError("zero weight at vertex %s" % v)
            c = canonical_weight(w)
            counts[c] = counts.get(c, 0) + 1
        per_vertex[v] = counts
        for c, k in counts.items():
            mult[c] = max(mult.get(c, 0), k)

    needed = {sym for key in expr.terms for sym, _ in key}
    numerator = Poly.zero(rank)
    for v in g.vertices:
        cof = Poly.constant(rank, 1)
        for c, top in mult.items():
            extra = top - per_vertex[v].get(c, 0)
            for _ in range(extra):
                cof = cof * Poly.linear(c)
        table = _vertex_symbol_table(vertex_weights[v], rank, g.valence, needed)
        value = _evaluate_expr(expr, table, rank)
        numerator = numerator + vertex_unit[v] * (value * cof)

    if numerator.is_zero():
        return Fraction(0)
    denominator = Poly.constant(rank, 1)
    for c, top in mult.items():
        for _ in range(top):
            denominator = denominator * Poly.linear(c)
    lead_mono, lead_coeff = denominator.leading()
    num_at_lead = numerator.coeffs.get(lead_mono, 0)
    if numerator * lead_coeff == denominator * num_at_lead:
        return Fraction(num_at_lead, lead_coeff)
    raise NonconstantSumError(
        "localization sum is not constant: the signed data is inconsistent")


def integrate(g, signed, expr):
    """Exact rational value of the localization sum for a signed graph.

    Expressions of weighted degree below the valence must integrate to 0;
    degree-equal expressions to a constant.  Degree above the valence is
    rejected.
    """
    if signed.graph != g:
        raise ValueError("signed structure belongs to a different graph")
    if expr.valence != g.valence:
        raise ValueError("expression valence %d does not match graph valence %d"
                         % (expr.valence, g.valence))
    if expr.degree > g.valence:
        raise ValueError("expression degree %d exceeds valence %d"
                         % (expr.degree, g.valence))
    if any(len(g.darts_at(v)) != g.valence for v in g.vertices):
        raise ValueError("graph is not valence-regular")
    vertex_weights = {v: signed.weights_at(v) for v in g.vertices}
    unit = {}
    for v in g.vertices:
        u = 1
        for w in vertex_weights[v]:
            if canonical_weight(w) != w:
                u = -u
        unit[v] = u
    return _localized_sum(g, vertex_weights, unit, expr)


def orientation_from_signs(signed):
    """Vertex orientation induced by a signed structure.

    At each vertex this is the sign relating the product of the signed
    weights to the product of their canonical representatives.
    """
    out = {}
    for v in signed.graph.vertices:
        u = 1
        for w in signed.weights_at(v):
            if canonical_weight(w) != w:
                u = -u
        out[v] = u
    return out


def integrate_pontryagin(g, orientation, expr):
    """Localize a Pontryagin-only expression against an orientation map.

    Pontryagin evaluations square the weights, so no signed structure is
    needed; the orientation fixes the sign of each vertex's weight product
    (relative to the canonical representatives).
    """
    if any(sym[0] != "p" for key in expr.terms for sym, _ in key):
        raise ValueError("orientation-based integration supports p-symbols only")
    if expr.valence != g.valence:
        raise ValueError("expression valence %d does not match graph valence %d"
                         % (expr.valence, g.valence))
    if expr.degree > g.valence:
        raise ValueError("expression degree %d exceeds valence %d"
                         % (expr.degree, g.valence))
    missing = [v for v in g.vertices if v not in orientation]
    if missing:
        raise ValueError("orientation missing for vertices: %s" % ", ".join(missing))
    if any(orientation[v] not in (1, -1) for v in g.vertices):
        raise ValueError("orientation values must be +1 or -1")
    if any(len(g.darts_at(v)) != g.valence for v in g.vertices):
        raise ValueError("graph is not valence-regular")
    vertex_weights = {v: tuple(g.edges[i].label for i, _ in g.darts_at(v))
                      for v in g.vertices}
    unit = {v: orientation[v] for v in g.vertices}
    return _localized_sum(g, vertex_weights, unit, expr)


def pontryagin_number(g, orientation, partition):
    """Localized Pontryagin number for an orientation map vertex -> +-1.

    partition lists the indices of the elementary factors: [1] means p_1,
    [1, 1] means p_1^2, [2] means p_2.  The weighted degree 2*sum must
    equal the valence.  The exact rational is returned; for consistent
    data it is an integer.
    """
    partition = [int(k) for k in partition]
    if any(k < 1 for k in partition):
        raise ValueError("partition entries must be positive")
    if 2 * sum(partition) != g.valence:
        raise ValueError("degree mismatch: 2*%d != valence %d"
                         % (sum(partition), g.valence))
    expr = CharClassExpr.constant(g.valence, 1)
    for k in partition:
        expr = expr * CharClassExpr.monomial(g.valence, {("p", k): 1})
    return integrate_pontryagin(g, orientation, expr)
