"""Connections on GKM graphs: transport maps between edge stars.

A connection assigns to every oriented edge e: p -> q a bijection from the
darts leaving p onto the darts leaving q that sends e to its reverse and
satisfies, per transported dart e', the congruence

    label(transport(e')) = sigma * label(e') + c * label(e)

for some integer c (and sigma in {+1,-1} in the unsigned variant; signed
structures force sigma = +1 and use honest signed labels).  The congruence
couples only darts of one edge at a time, so the connections of a graph
form the product of the per-edge compatible bijections; enumeration is an
exhaustive backtracking over that product.  The integer c is unconstrained
by design.
"""

import warnings
from itertools import product as iproduct

from .graph import SignedStructure

SIGN_SEARCH_WARN_EDGES = 24


class Connection:
    """Transport bijections for both orientations of every edge.

    maps[dart] is a dict from the darts at the tail of `dart` to the darts
    at its head; reverse orientations hold the inverse bijections.
    """

    __slots__ = ("graph", "maps")

    def __init__(self, graph, maps):
        self.graph = graph
        self.maps = maps

    @classmethod
    def from_edge_bijections(cls, graph, per_edge):
        """Build from one bijection per edge (for the stored orientation)."""
        maps = {}
        for i, bij in enumerate(per_edge):
            maps[(i, 0)] = dict(bij)
            maps[(i, 1)] = {w: v for v, w in bij.items()}
        return cls(graph, maps)

    def transport(self, dart, other):
        return self.maps[dart][other]

    def is_complete(self):
        g = self.graph
        for i in range(len(g.edges)):
            for flip in (0, 1):
                dart = (i, flip)
                if dart not in self.maps:
                    return False
                tail = g.dart_tail(dart)
                head = g.dart_head(dart)
                bij = self.maps[dart]
                if sorted(bij) != sorted(g.darts_at(tail)):
                    return False
                if sorted(bij.values()) != sorted(g.darts_at(head)):
                    return False
        return True

    def __eq__(self, other):
        return (isinstance(other, Connection)
                and self.graph == other.graph and self.maps == other.maps)

    def __repr__(self):
        return "Connection(%d oriented edges)" % len(self.maps)


def _integer_multiple_of(diff, base):
    """The integer c with diff = c * base, or None."""
    c = None
    for d, b in zip(diff, base):
        if b == 0:
            if d != 0:
                return None
        else:
            if d % b:
                return None
            q = d // b
            if c is None:
                c = q
            elif c != q:
                return None
    return 0 if c is None else c


def _compatible_unsigned(target, source, along, sigma_plus):
    """Existence of sigma, c with target = sigma*source + c*along."""
    sigmas = (1,) if sigma_plus else (1, -1)
    for sigma in sigmas:
        diff = tuple(t - sigma * s for t, s in zip(target, source))
        if _integer_multiple_of(diff, along) is not None:
            return True
    return False


def _star_bijections(sources, targets, allowed):
    """All bijections source dart -> allowed target dart, lexicographic order."""
    out = []
    assignment = {}
    used = set()

    def backtrack(k):
        if k == len(sources):
            out.append(dict(assignment))
            return
        s = sources[k]
        for t in allowed[s]:
            if t in used:
                continue
            assignment[s] = t
            used.add(t)
            backtrack(k + 1)
            used.remove(t)
            del assignment[s]

    if len(sources) == len(targets):
        backtrack(0)
    return out


def _edge_bijections(g, edge_index, dart_label):
    """Compatible star bijections for one edge, labels given by dart_label.

    dart_label(dart) must return the label to use for the congruence; the
    unsigned variant passes canonical representatives plus a sign toggle,
    the signed variant passes honest signed labels.
    """
    e = g.edges[edge_index]
    fwd = (edge_index, 0)
    rev = (edge_index, 1)
    along = dart_label["along"](fwd)
    sources = [d for d in g.darts_at(e.u) if d != fwd]
    targets = [d for d in g.darts_at(e.v) if d != rev]
    allowed = {}
    for s in sources:
        opts = [t for t in targets
                if dart_label["match"](dart_label["value"](t),
                                       dart_label["value"](s), along)]
        allowed[s] = opts
        if not opts:
            return []
    bijections = _star_bijections(sources, targets, allowed)
    out = []
    for b in bijections:
        full = dict(b)
        full[fwd] = rev
        out.append(full)
    return out


def _unsigned_label_rules(g, sigma_plus):
    return {
        "along": lambda dart: g.edges[dart[0]].label,
        "value": lambda dart: g.edges[dart[0]].label,
        "match": lambda target, source, along:
            _compatible_unsigned(target, source, along, sigma_plus),
    }


def _signed_label_rules(signed):
    def match(target, source, along):
        diff = tuple(t - s for t, s in zip(target, source))
        return _integer_multiple_of(diff, along) is not None
    return {
        "along": signed.dart_label,
        "value": signed.dart_label,
        "match": match,
    }


def enumerate_unsigned_connections(g, sigma_plus=False, limit=10000):
    """Count and list of all connections in the unsigned (mod sign) sense.

    Per-edge bijection families are independent, so the count is their
    product.  The explicit list is materialized only while the count stays
    within `limit` (None for no cap); the count is always exact.
    """
    rules = _unsigned_label_rules(g, sigma_plus)
    edge_order = sorted(range(len(g.edges)), key=g.edge_sort_key)
    families = []
    count = 1
    for i in edge_order:
        fam = _edge_bijections(g, i, rules)
        count *= len(fam)
        if count == 0:
            return 0, []
        families.append((i, fam))
    if limit is not None and count > limit:
        return count, []
    connections = []
    for combo in iproduct(*[fam for _, fam in families]):
        per_edge = [None] * len(g.edges)
        for (i, _), bij in zip(families, combo):
            per_edge[i] = bij
        connections.append(Connection.from_edge_bijections(g, per_edge))
    return count, connections


def check_connection(g, signed, connection):
    """Whether a complete connection is compatible with the signed labels.

    An incomplete connection (missing or non-bijective star maps) is an
    input error, distinct from an incompatible one.
    """
    if signed.graph != g or connection.graph != g:
        raise ValueError("graph mismatch")
    if not connection.is_complete():
        raise ValueError("incomplete connection: missing star bijections")
    for i in range(len(g.edges)):
        for flip in (0, 1):
            dart = (i, flip)
            along = signed.dart_label(dart)
            bij = connection.maps[dart]
            for s, t in bij.items():
                if s == dart:
                    if t != (i, 1 - flip):
                        return False
                    continue
                diff = tuple(a - b for a, b in
                             zip(signed.dart_label(t), signed.dart_label(s)))
                if _integer_multiple_of(diff, along) is None:
                    return False
    return True


def exists_signed_structure_with_connection(g):
    """Search all sign assignments (modulo global negation) for one whose
    signed labels admit a connection.

    Returns (True, (SignedStructure, Connection)) with the first witness in
    canonical order, or (False, None) after exhausting the space.
    """
    nedges = len(g.edges)
    if nedges > SIGN_SEARCH_WARN_EDGES:
        warnings.warn("sign-structure search over %d edges (2^%d classes)"
                      % (nedges, nedges - 1))
    edge_order = sorted(range(nedges), key=g.edge_sort_key)
    for rest in iproduct((1, -1), repeat=nedges - 1):
        signs = [1] * nedges
        for pos, s in zip(edge_order[1:], rest):
            signs[pos] = s
        signed = SignedStructure(g, signs)
        rules = _signed_label_rules(signed)
        per_edge = []
        feasible = True
        for i in range(nedges):
            fam = _edge_bijections(g, i, rules)
            if not fam:
                feasible = False
                break
            per_edge.append(fam[0])
        if feasible:
            conn = Connection.from_edge_bijections(g, per_edge)
            return True, (signed, conn)
    return False, None
