"""Momentum-graph realizations and x-rays.

A realization places every vertex in Q^r and assigns every edge a length
at least 1 so that along each edge, head position minus tail position
equals length times the signed label.  Feasibility and a deterministic
feasible point come from exact Gaussian elimination of the (homogeneous)
edge equations followed by Fourier-Motzkin elimination of the remaining
inequality system; infeasibility returns a certificate, the explicit
nonnegative combination of constraints that collapses to an impossible
bound (for the classic parallel-edge obstruction this combination is a
cycle of edge equations).

Strict positivity of lengths is encoded as length >= 1: the constraint
cone is scale invariant, so nothing is lost.  The x-ray pairs the orbit
poset with the vertex images of each stratum.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .graph import SignedStructure
from .strata import orbit_poset, poset_isomorphic_with_labels

MAX_SIGN_SEARCH_EDGES = 24


@dataclass
class MomentumRealization:
    positions: dict  # vertex -> tuple of Fractions
    lengths: dict    # edge index -> Fraction

    def scale(self, factor):
        """Positive rescaling; factors below 1 may break the length floor,
        call normalized() afterwards to restore it."""
        factor = Fraction(factor)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return MomentumRealization(
            {v: tuple(x * factor for x in pos) for v, pos in self.positions.items()},
            {i: l * factor for i, l in self.lengths.items()})

    def normalized(self):
        """Rescale so the minimal edge length is exactly 1."""
        if not self.lengths:
            return self
        m = min(self.lengths.values())
        return self.scale(Fraction(1) / m)


@dataclass
class InfeasibilityCertificate:
    """Nonnegative combination of constraints proving infeasibility.

    combination lists (coefficient, source) pairs; sources are
    ("edge_eq", edge index, coordinate), ("length_lb", edge index) or
    ("extra", constraint index).  Summing coefficient * constraint kills
    every variable yet leaves a positive lower bound on zero.
    """
    combination: list
    message: str

    def involved_edges(self):
        return sorted({src[1] for _, src in self.combination
                       if src[0] in ("edge_eq", "length_lb")})

    def describe(self):
        parts = ["%s * %s" % (coeff, _source_name(src))
                 for coeff, src in self.combination]
        return "%s\n  inconsistent combination:\n    %s" % (
            self.message, "\n    ".join(parts))


def _source_name(src):
    if src[0] == "edge_eq":
        return "edge equation #%d, coordinate %d" % (src[1], src[2])
    if src[0] == "length_lb":
        return "length bound l_%d >= 1" % src[1]
    return "extra constraint #%d" % src[1]


@dataclass(frozen=True)
class LinearConstraint:
    """sum(coeffs[edge] * length_edge) >= rhs, exact rationals."""
    coeffs: tuple  # tuple of (edge index, Fraction)
    rhs: Fraction


class _Inequality:
    """sum(coeffs[var] * x) >= bound, with provenance over original sources."""

    __slots__ = ("coeffs", "bound", "provenance")

    def __init__(self, coeffs, bound, provenance):
        self.coeffs = {v: c for v, c in coeffs.items() if c}
        self.bound = bound
        self.provenance = dict(provenance)


def _combine_provenance(p1, f1, p2, f2):
    out = {}
    for src, c in p1.items():
        out[src] = out.get(src, Fraction(0)) + f1 * c
    for src, c in p2.items():
        out[src] = out.get(src, Fraction(0)) + f2 * c
    return {s: c for s, c in out.items() if c}


def _solve(g, signed, extra):
    """Shared feasibility core; returns MomentumRealization or certificate."""
    r = g.rank
    variables = []
    for v in g.vertices[1:]:
        for k in range(r):
            variables.append(("pos", v, k))
    for i in range(len(g.edges)):
        variables.append(("len", i))
    var_order = {var: n for n, var in enumerate(variables)}

    # homogeneous edge equations: mu(v) - mu(u) - l_i * alpha = 0
    equations = []
    for i, e in enumerate(g.edges):
        alpha = signed.dart_label((i, 0))
        for k in range(r):
            coeffs = {}
            if e.v != g.vertices[0]:
                coeffs[("pos", e.v, k)] = Fraction(1)
            if e.u != g.vertices[0]:
                coeffs[("pos", e.u, k)] = coeffs.get(("pos", e.u, k), Fraction(0)) - 1
            if alpha[k]:
                coeffs[("len", i)] = Fraction(-alpha[k])
            equations.append((coeffs, ("edge_eq", i, k)))

    # Gaussian elimination to reduced echelon form with provenance
    pivot_rows = {}  # pivot var -> (coeffs, provenance); pivot coefficient 1
    for coeffs, src in equations:
        row = {v: c for v, c in coeffs.items() if c}
        prov = {src: Fraction(1)}
        while row:
            piv = min(row, key=lambda v: var_order[v])
            if piv in pivot_rows:
                pcoeffs, pprov = pivot_rows[piv]
                f = row[piv]
                for v, c in pcoeffs.items():
                    acc = row.get(v, Fraction(0)) - f * c
                    if acc:
                        row[v] = acc
                    elif v in row:
                        del row[v]
                prov = _combine_provenance(prov, Fraction(1), pprov, -f)
            else:
                inv = Fraction(1) / row[piv]
                row = {v: c * inv for v, c in row.items()}
                prov = {s: c * inv for s, c in prov.items()}
                for other_piv, (ocoeffs, oprov) in list(pivot_rows.items()):
                    if piv in ocoeffs:
                        f = ocoeffs[piv]
                        new = dict(ocoeffs)
                        for v, c in row.items():
                            acc = new.get(v, Fraction(0)) - f * c
                            if acc:
                                new[v] = acc
                            elif v in new:
                                del new[v]
                        pivot_rows[other_piv] = (
                            new, _combine_provenance(oprov, Fraction(1), prov, -f))
                pivot_rows[piv] = (row, prov)
                break
        # homogeneous rows cannot be inconsistent; empty rows vanish

    free_vars = [v for v in variables if v not in pivot_rows]
    free_order = {v: n for n, v in enumerate(free_vars)}

    def express(var):
        """var as (constant 0, free-variable coefficients, provenance)."""
        if var in pivot_rows:
            coeffs, prov = pivot_rows[var]
            out = {v: -c for v, c in coeffs.items() if v != var}
            return out, prov
        return {var: Fraction(1)}, {}

    # inequalities over free variables
    inequalities = []
    for i in range(len(g.edges)):
        expr, prov = express(("len", i))
        inequalities.append(_Inequality(
            expr, Fraction(1),
            _combine_provenance({("length_lb", i): Fraction(1)}, Fraction(1),
                                prov, Fraction(-1))))
    for n_extra, constraint in enumerate(extra):
        combined = {}
        prov_total = {("extra", n_extra): Fraction(1)}
        for edge_idx, coeff in constraint.coeffs:
            expr, prov = express(("len", edge_idx))
            for v, c in expr.items():
                acc = combined.get(v, Fraction(0)) + Fraction(coeff) * c
                if acc:
                    combined[v] = acc
                elif v in combined:
                    del combined[v]
            prov_total = _combine_provenance(prov_total, Fraction(1),
                                             prov, -Fraction(coeff))
        inequalities.append(_Inequality(combined, Fraction(constraint.rhs), prov_total))

    # Fourier-Motzkin elimination, last free variable first
    levels = []
    system = inequalities
    for var in reversed(free_vars):
        levels.append((var, system))
        lowers, uppers, rest = [], [], []
        for ineq in system:
            c = ineq.coeffs.get(var)
            if c is None or c == 0:
                rest.append(ineq)
            elif c > 0:
                lowers.append(ineq)
            else:
                uppers.append(ineq)
        new_system = list(rest)
        for lo in lowers:
            for up in uppers:
                cl = lo.coeffs[var]
                cu = -up.coeffs[var]
                coeffs = {}
                for v, c in lo.coeffs.items():
                    coeffs[v] = coeffs.get(v, Fraction(0)) + cu * c
                for v, c in up.coeffs.items():
                    coeffs[v] = coeffs.get(v, Fraction(0)) + cl * c
                coeffs.pop(var, None)
                bound = cu * lo.bound + cl * up.bound
                prov = _combine_provenance(lo.provenance, cu, up.provenance, cl)
                new_system.append(_Inequality(coeffs, bound, prov))
        system = new_system

    for ineq in system:
        if not ineq.coeffs and ineq.bound > 0:
            return InfeasibilityCertificate(
                sorted(((c, s) for s, c in ineq.provenance.items()),
                       key=lambda cs: repr(cs[1])),
                "infeasible: constraints combine to 0 >= %s" % ineq.bound)

    # back-substitute the lexicographically minimal feasible values
    assignment = {}
    for var, sys_at_level in reversed(levels):
        lower = None
        upper = None
        for ineq in sys_at_level:
            c = ineq.coeffs.get(var)
            if c is None or c == 0:
                continue
            rest = ineq.bound
            for v, cv in ineq.coeffs.items():
                if v != var:
                    rest -= cv * assignment[v]
            value = rest / c
            if c > 0:
                lower = value if lower is None else max(lower, value)
            else:
                upper = value if upper is None else min(upper, value)
        if lower is not None:
            assignment[var] = lower
        elif upper is not None:
            assignment[var] = min(upper, Fraction(0))
        else:
            assignment[var] = Fraction(0)
        # contradictions were already caught during elimination

    def value_of(var):
        expr, _ = express(var)
        return sum((c * assignment[v] for v, c in expr.items()), Fraction(0))

    positions = {g.vertices[0]: (Fraction(0),) * r}
    for v in g.vertices[1:]:
        positions[v] = tuple(value_of(("pos", v, k)) for k in range(r))
    lengths = {i: value_of(("len", i)) for i in range(len(g.edges))}

    realization = MomentumRealization(positions, lengths)
    assert is_valid_realization(g, signed, realization, extra)
    return realization


def is_valid_realization(g, signed, m, extra=()):
    """Exact check of every edge equation, the length floor, and extras."""
    for v in g.vertices:
        if v not in m.positions or len(m.positions[v]) != g.rank:
            return False
    for i, e in enumerate(g.edges):
        if i not in m.lengths or m.lengths[i] < 1:
            return False
        alpha = signed.dart_label((i, 0))
        for k in range(g.rank):
            if m.positions[e.v][k] - m.positions[e.u][k] != m.lengths[i] * alpha[k]:
                return False
    for constraint in extra:
        total = sum((Fraction(c) * m.lengths[i] for i, c in constraint.coeffs),
                    Fraction(0))
        if total < constraint.rhs:
            return False
    return True


def realize(g, signed, extra=()):
    """Deterministic feasible realization, or an InfeasibilityCertificate.

    One vertex (the first) is pinned to the origin; among feasible points
    the solver returns the one minimizing the free coordinates
    lexicographically (lower bounds first, 0 where unconstrained)."""
    if signed.graph != g:
        raise ValueError("signed structure belongs to a different graph")
    return _solve(g, signed, tuple(extra))


def realize_any_signs(g):
    """First feasible (SignedStructure, MomentumRealization) over all sign
    classes modulo global negation, in canonical order; None if none is."""
    nedges = len(g.edges)
    if nedges > MAX_SIGN_SEARCH_EDGES:
        raise ValueError("sign search limited to %d edges" % MAX_SIGN_SEARCH_EDGES)
    edge_order = sorted(range(nedges), key=g.edge_sort_key)
    for rest in iproduct((1, -1), repeat=max(nedges - 1, 0)):
        signs = [1] * nedges
        for pos, s in zip(edge_order[1:], rest):
            signs[pos] = s
        signed = SignedStructure(g, signs)
        result = _solve(g, signed, ())
        if isinstance(result, MomentumRealization):
            return signed, result
    return None


@dataclass
class XRay:
    """Stratification poset plus the polytope vertex set of each stratum."""
    poset: object
    polytopes: dict  # element index -> sorted tuple of position tuples


def xray(g, signed, m):
    """X-ray of a valid realization: each stratum maps to its vertex images."""
    if not is_valid_realization(g, signed, m):
        raise ValueError("invalid realization for this signed graph")
    poset = orbit_poset(g)
    polytopes = {}
    for idx, el in enumerate(poset.elements):
        pts = {m.positions[v] for v in el.vertices}
        polytopes[idx] = tuple(sorted(pts))
    return XRay(poset, polytopes)


def _normalize_xray(x):
    """Translate the least fixed-point image to the origin, then scale by
    one global positive rational fixed from the sorted coordinate stream."""
    all_points = sorted({pt for pts in x.polytopes.values() for pt in pts})
    if not all_points:
        return x
    base = min(all_points)
    translated = {idx: tuple(tuple(c - b for c, b in zip(pt, base)) for pt in pts)
                  for idx, pts in x.polytopes.items()}
    stream = [c for pt in sorted({p for pts in translated.values() for p in pts})
              for c in pt]
    scale = next((abs(c) for c in stream if c), None)
    if scale is None or scale == 1:
        normalized = translated
    else:
        inv = Fraction(1) / scale
        normalized = {idx: tuple(tuple(c * inv for c in pt) for pt in pts)
                      for idx, pts in translated.items()}
    return XRay(x.poset, {idx: tuple(sorted(pts))
                          for idx, pts in normalized.items()})


def xray_equal(x1, x2, mode="exact"):
    """Compare x-rays: order isomorphism with matching isotropy labels and
    polytope vertex sets, exactly or after translation/scaling."""
    if mode not in ("exact", "normalized"):
        raise ValueError("mode must be 'exact' or 'normalized'")
    if mode == "normalized":
        x1 = _normalize_xray(x1)
        x2 = _normalize_xray(x2)
    extra1 = [x1.polytopes[i] for i in range(len(x1.poset.elements))]
    extra2 = [x2.polytopes[i] for i in range(len(x2.poset.elements))]
    return poset_isomorphic_with_labels(x1.poset, x2.poset,
                                        extra1=extra1, extra2=extra2) is not None


def fundamental_cycles(g):
    """Cycle basis from a BFS spanning tree, as lists of (edge, +-1)."""
    tree = {}
    parent = {g.vertices[0]: None}
    order = [g.vertices[0]]
    queue = [g.vertices[0]]
    tree_edges = set()
    while queue:
        v = queue.pop(0)
        for (i, flip) in g.darts_at(v):
            w = g.dart_head((i, flip))
            if w not in parent:
                parent[w] = (v, i, 1 if flip == 0 else -1)
                tree_edges.add(i)
                queue.append(w)
                order.append(w)

    def path_to_root(v):
        out = []
        while parent[v] is not None:
            u, i, sign = parent[v]
            out.append((i, sign))
            v = u
        return out

    cycles = []
    for i, e in enumerate(g.edges):
        if i in tree_edges:
            continue
        cycle = [(i, 1)]
        cycle += [(j, -s) for j, s in path_to_root(e.v)]
        cycle += [(j, s) for j, s in path_to_root(e.u)]
        net = {}
        for j, s in cycle:
            net[j] = net.get(j, 0) + s
        cycles.append([(j, s) for j, s in sorted(net.items()) if s])
    return cycles


def cycle_closure_holds(g, signed, m):
    """Sum of length * signed label around every basis cycle is zero."""
    for cycle in fundamental_cycles(g):
        total = [Fraction(0)] * g.rank
        for i, s in cycle:
            alpha = signed.dart_label((i, 0))
            for k in range(g.rank):
                total[k] += s * m.lengths[i] * alpha[k]
        if any(total):
            return False
    return True


def xray_to_jsonable(x):
    """Deterministic JSON shape with rationals as exact fraction strings."""
    from .strata import poset_to_jsonable
    data = poset_to_jsonable(x.poset)
    for idx, el_data in enumerate(data["elements"]):
        el_data["polytope"] = [[str(c) for c in pt] for pt in x.polytopes[idx]]
    return data
