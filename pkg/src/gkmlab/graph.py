"""GKM multigraphs: the data type, axiom validation, builtin catalog, and
isomorphism testing.

A GKM graph is a finite connected multigraph whose vertices stand for the
fixed points of a torus action and whose edges stand for invariant
2-spheres.  Edges carry nonzero integer weights modulo sign; parallel
edges are distinguished by identity, not by label (the minimal builtin has
triple edges).  Every vertex meets exactly `valence` edge-ends and the
labels meeting a vertex are pairwise linearly independent over Q.

A SignedStructure lifts each unsigned label to an honest weight vector for
one orientation of the edge; traversing the edge backwards negates it.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct

from .lattice import (canonical_weight, weights_collinear, rational_rank,
                      rational_inverse, int_det)


@dataclass(frozen=True)
class Edge:
    u: str
    v: str
    label: tuple


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations


class GKMGraph:
    """Immutable labelled multigraph with regular valence.

    `edges` is a tuple of Edge records; an edge's identity is its index in
    that tuple.  Labels are stored as the lexicographically-positive
    representative of {w, -w}.  Structural problems (unknown endpoints,
    loops, wrong label arity) are constructor errors; GKM axiom failures
    are reported by validate() as data.
    """

    __slots__ = ("rank", "valence", "vertices", "edges", "_vindex", "_stars")

    def __init__(self, rank, valence, vertices, edges):
        rank = int(rank)
        valence = int(valence)
        if rank < 1:
            raise ValueError("rank must be positive")
        if valence < 1:
            raise ValueError("valence must be positive")
        vertices = tuple(str(v) for v in vertices)
        if not vertices:
            raise ValueError("empty graph")
        if len(set(vertices)) != len(vertices):
            raise ValueError("duplicate vertex names")
        vindex = {v: i for i, v in enumerate(vertices)}
        built = []
        for (u, v, label) in edges:
            u, v = str(u), str(v)
            if u not in vindex or v not in vindex:
                raise ValueError("edge endpoint %r is not a declared vertex"
                                 % (u if u not in vindex else v))
            if u == v:
                raise ValueError("loop edge at %r (an invariant sphere joins two distinct fixed points)" % u)
            label = tuple(int(x) for x in label)
            if len(label) != rank:
                raise ValueError("label %r has arity %d, expected rank %d"
                                 % (label, len(label), rank))
            built.append(Edge(u, v, canonical_weight(label)))
        self.rank = rank
        self.valence = valence
        self.vertices = vertices
        self.edges = tuple(built)
        self._vindex = vindex
        stars = {v: [] for v in vertices}
        for i, e in enumerate(self.edges):
            stars[e.u].append((i, 0))
            stars[e.v].append((i, 1))
        # deterministic star order: sorted endpoints, label, edge index
        self._stars = {v: tuple(sorted(ds, key=lambda d: self.edge_sort_key(d[0])))
                       for v, ds in stars.items()}

    # -- basic accessors -------------------------------------------------

    def vertex_index(self, v):
        return self._vindex[v]

    def edge_sort_key(self, i):
        e = self.edges[i]
        a, b = sorted((e.u, e.v))
        return (a, b, e.label, i)

    def darts_at(self, v):
        """Oriented edges leaving v, as (edge index, flip) pairs."""
        return self._stars[v]

    def dart_tail(self, dart):
        i, flip = dart
        return self.edges[i].v if flip else self.edges[i].u

    def dart_head(self, dart):
        i, flip = dart
        return self.edges[i].u if flip else self.edges[i].v

    @staticmethod
    def reverse_dart(dart):
        i, flip = dart
        return (i, 1 - flip)

    def incident_labels(self, v):
        return tuple(self.edges[i].label for (i, _) in self._stars[v])

    def edges_between(self, u, v):
        pair = frozenset((u, v))
        return tuple(i for i, e in enumerate(self.edges)
                     if frozenset((e.u, e.v)) == pair)

    def label_set(self):
        return sorted({e.label for e in self.edges})

    # -- numeric invariants ----------------------------------------------

    def euler_characteristic(self):
        """Number of vertices (= fixed points)."""
        return len(self.vertices)

    def complexity(self):
        """Valence minus rank (half manifold dimension minus torus rank)."""
        return self.valence - self.rank

    def is_connected(self):
        if not self.vertices:
            return False
        seen = {self.vertices[0]}
        queue = [self.vertices[0]]
        while queue:
            v = queue.pop()
            for dart in self._stars[v]:
                w = self.dart_head(dart)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(self.vertices)

    # -- validation --------------------------------------------------------

    def validate(self):
        """Check the GKM graph axioms; violations are data, not exceptions."""
        report = ValidationReport()
        for i, e in enumerate(self.edges):
            if not any(e.label):
                report.violations.append(
                    "zero label on edge %s-%s (edge %d)" % (e.u, e.v, i))
        for v in self.vertices:
            darts = self._stars[v]
            if len(darts) != self.valence:
                report.violations.append(
                    "non-regular valence at vertex %s: %d edge-ends, expected %d"
                    % (v, len(darts), self.valence))
            for a in range(len(darts)):
                for b in range(a + 1, len(darts)):
                    w1 = self.edges[darts[a][0]].label
                    w2 = self.edges[darts[b][0]].label
                    if any(w1) and any(w2) and weights_collinear(w1, w2):
                        report.violations.append(
                            "collinear weights at vertex %s: %r and %r"
                            % (v, w1, w2))
        if not self.is_connected():
            report.violations.append("graph is not connected")
        if self.complexity() < 0:
            report.violations.append(
                "negative complexity (valence %d < rank %d): action cannot be effective"
                % (self.valence, self.rank))
        labels = [e.label for e in self.edges]
        if labels and rational_rank(labels, self.rank) < self.rank:
            report.warnings.append(
                "labels do not span rank %d rationally (action of a quotient torus)"
                % self.rank)
        return report

    # -- label transforms ---------------------------------------------------

    def relabel(self, mapping):
        """Rename vertices through a dict; structure is otherwise unchanged."""
        return GKMGraph(self.rank, self.valence,
                        [mapping[v] for v in self.vertices],
                        [(mapping[e.u], mapping[e.v], e.label) for e in self.edges])

    def transform_labels(self, matrix):
        """Apply an integer matrix to every label (then re-canonicalize)."""
        def apply(w):
            return tuple(sum(matrix[i][k] * w[k] for k in range(self.rank))
                         for i in range(self.rank))
        return GKMGraph(self.rank, self.valence, self.vertices,
                        [(e.u, e.v, apply(e.label)) for e in self.edges])

    def __eq__(self, other):
        return (isinstance(other, GKMGraph)
                and self.rank == other.rank
                and self.valence == other.valence
                and self.vertices == other.vertices
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.rank, self.valence, self.vertices, self.edges))

    def __repr__(self):
        return "GKMGraph(rank=%d, valence=%d, %d vertices, %d edges)" % (
            self.rank, self.valence, len(self.vertices), len(self.edges))


class SignedStructure:
    """A choice of signed label per edge, for the edge's stored orientation.

    signs[i] = +1 means edge i carries +label travelling u -> v; the
    reverse traversal carries the negated vector.
    """

    __slots__ = ("graph", "signs")

    def __init__(self, graph, signs):
        signs = tuple(int(s) for s in signs)
        if len(signs) != len(graph.edges):
            raise ValueError("need one sign per edge")
        if any(s not in (1, -1) for s in signs):
            raise ValueError("signs must be +1 or -1")
        self.graph = graph
        self.signs = signs

    def dart_label(self, dart):
        """Signed weight seen when leaving the dart's tail."""
        i, flip = dart
        w = self.graph.edges[i].label
        s = self.signs[i] * (-1 if flip else 1)
        return tuple(s * x for x in w)

    def weights_at(self, v):
        """Signed isotropy weights at a fixed point."""
        return tuple(self.dart_label(d) for d in self.graph.darts_at(v))

    def negate(self):
        return SignedStructure(self.graph, tuple(-s for s in self.signs))

    def __eq__(self, other):
        return (isinstance(other, SignedStructure)
                and self.graph == other.graph and self.signs == other.signs)

    def __hash__(self):
        return hash((self.graph, self.signs))

    def __repr__(self):
        return "SignedStructure(signs=%r)" % (self.signs,)


def validate(g):
    return g.validate()


# -- builtin catalog ------------------------------------------------------

def _four_vertex_double_sphere(names, edge_order="horizontals-first"):
    a, b, c, d = names
    horizontals = [(a, b, (1, 0, 0)), (a, b, (0, 1, 0)), (a, b, (0, 0, 1)),
                   (c, d, (1, 0, 0)), (c, d, (0, 1, 0)), (c, d, (0, 0, 1))]
    verticals = [(a, c, (1, -1, -1)), (b, d, (1, -1, -1))]
    edges = horizontals + verticals if edge_order == "horizontals-first" \
        else verticals + horizontals
    return GKMGraph(3, 4, names, edges)


def _projective_space(n, prefix="v"):
    # complete graph on n+1 vertices; eps_0..eps_{n-1} standard basis, eps_n = 0
    names = tuple("%s%d" % (prefix, i) for i in range(n + 1))
    eps = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    eps.append((0,) * n)
    edges = []
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            label = tuple(a - b for a, b in zip(eps[i], eps[j]))
            edges.append((names[i], names[j], label))
    return GKMGraph(n, n, names, edges)


def _sphere_bundle_over_cp3(prefix_a, prefix_b, verticals_first=False):
    # two rank-3 copies of the cp3 graph joined by four (1,-1,-1)-edges
    eps = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)]
    av = tuple("%s%d" % (prefix_a, i) for i in range(4))
    bv = tuple("%s%d" % (prefix_b, i) for i in range(4))
    horiz = []
    for names in (av, bv):
        for i in range(4):
            for j in range(i + 1, 4):
                label = tuple(a - b for a, b in zip(eps[i], eps[j]))
                horiz.append((names[i], names[j], label))
    vert = [(av[i], bv[i], (1, -1, -1)) for i in range(4)]
    edges = vert + horiz if verticals_first else horiz + vert
    return GKMGraph(3, 4, av + bv, edges)


def _all_plus(g):
    return SignedStructure(g, (1,) * len(g.edges))


def _build_catalog_entry(key):
    if key == "example8":
        return _four_vertex_double_sphere(("a", "b", "c", "d")), None
    if key == "product_s2s6":
        return _four_vertex_double_sphere(("p", "r", "q", "s"),
                                          edge_order="verticals-first"), None
    if key.startswith("cp") and key[2:].isdigit():
        n = int(key[2:])
        if 1 <= n <= 6:
            g = _projective_space(n)
            return g, _all_plus(g)
    if key == "cp1xcp3":
        g = _sphere_bundle_over_cp3("a", "b")
        return g, _all_plus(g)
    if key == "y_cp1xcp3":
        g = _sphere_bundle_over_cp3("y", "z", verticals_first=True)
        return g, _all_plus(g)
    raise KeyError("unknown catalog name %r" % key)


CATALOG_NAMES = ("example8", "product_s2s6",
                 "cp1", "cp2", "cp3", "cp4", "cp5", "cp6",
                 "cp1xcp3", "y_cp1xcp3")


def catalog(name):
    """Builtin graph by name: returns (graph, signed structure or None).

    example8 / product_s2s6: four vertices carrying two label-(1,0,0),
    (0,1,0),(0,0,1) triple edges joined by a pair of (1,-1,-1) edges; no
    signed structure (none is consistent, see the connection module).
    cpN (N = 1..6): the complete graph of complex projective N-space.
    cp1xcp3 / y_cp1xcp3: two cp3 copies joined by four (1,-1,-1) edges,
    with the product signed structure.  "cp(3)"-style spellings accepted.
    """
    key = str(name).strip().lower().replace("(", "").replace(")", "")
    try:
        return _build_catalog_entry(key)
    except KeyError:
        raise KeyError("unknown catalog name %r (choose from %s)"
                       % (name, ", ".join(CATALOG_NAMES)))


# -- isomorphism -----------------------------------------------------------

@dataclass
class GraphIso:
    vertex_map: dict
    edge_map: dict
    matrix: tuple | None = None  # GL(r, Z) matrix for the lattice-aut variant


def _pair_label_multiset(g, u, v):
    return sorted(g.edges[i].label for i in g.edges_between(u, v))


def _match_edges(g1, g2, vmap):
    """Edge bijection induced by a label-preserving vertex bijection."""
    emap = {}
    used = set()
    for u, v in {(min(e.u, e.v), max(e.u, e.v)) for e in g1.edges}:
        e1s = sorted(g1.edges_between(u, v),
                     key=lambda i: (g1.edges[i].label, i))
        e2s = sorted(g2.edges_between(vmap[u], vmap[v]),
                     key=lambda i: (g2.edges[i].label, i))
        if len(e1s) != len(e2s):
            return None
        for i, j in zip(e1s, e2s):
            if g1.edges[i].label != g2.edges[j].label:
                return None
            emap[i] = j
            used.add(j)
    if len(used) != len(g2.edges):
        return None
    return emap


def isomorphic_strict(g1, g2):
    """Label-preserving isomorphism, or None.

    Deterministic backtracking over g1's vertex order with incident-label
    multiset pruning; graphs here stay tiny, so no canonical-form
    machinery is needed.
    """
    if (g1.rank, g1.valence) != (g2.rank, g2.valence):
        return None
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return None
    if sorted(e.label for e in g1.edges) != sorted(e.label for e in g2.edges):
        return None

    sig2 = {v: sorted(g2.incident_labels(v)) for v in g2.vertices}
    order = g1.vertices
    vmap = {}
    used = set()

    def backtrack(k):
        if k == len(order):
            return True
        v = order[k]
        sig = sorted(g1.incident_labels(v))
        for w in g2.vertices:
            if w in used or sig2[w] != sig:
                continue
            ok = True
            for u in vmap:
                if _pair_label_multiset(g1, v, u) != _pair_label_multiset(g2, w, vmap[u]):
                    ok = False
                    break
            if ok:
                vmap[v] = w
                used.add(w)
                if backtrack(k + 1):
                    return True
                del vmap[v]
                used.remove(w)
        return False

    if not backtrack(0):
        return None
    emap = _match_edges(g1, g2, vmap)
    if emap is None:
        return None
    return GraphIso(dict(vmap), emap, matrix=None)


def _spanning_labels(labels, rank):
    basis = []
    for w in labels:
        if rational_rank(basis + [w], rank) > len(basis):
            basis.append(w)
        if len(basis) == rank:
            return basis
    return None


def isomorphic_up_to_lattice_aut(g1, g2):
    """Isomorphism combined with a GL(r, Z) change of weight lattice.

    Searches matrices M determined by mapping a spanning set of g1 labels
    onto (signed) g2 labels, then checks strict isomorphism of the
    transformed graph.  Returns a GraphIso whose matrix satisfies
    M * label = +-(matched label) on every edge, or None.  Graphs whose
    labels do not span rationally fall back to the strict test.
    """
    if (g1.rank, g1.valence) != (g2.rank, g2.valence):
        return None
    strict = isomorphic_strict(g1, g2)
    if strict is not None:
        ident = tuple(tuple(1 if i == j else 0 for j in range(g1.rank))
                      for i in range(g1.rank))
        return GraphIso(strict.vertex_map, strict.edge_map, matrix=ident)

    r = g1.rank
    base = _spanning_labels(g1.label_set(), r)
    if base is None:
        return None
    w_cols = [[base[i][k] for i in range(r)] for k in range(r)]  # base as columns
    w_inv = rational_inverse(w_cols)
    labels2 = g2.label_set()
    for targets in iproduct(labels2, repeat=r):
        for signs in iproduct((1, -1), repeat=r - 1):
            signs = (1,) + signs  # global sign of M is immaterial here
            t_cols = [[signs[i] * targets[i][k] for i in range(r)] for k in range(r)]
            m_frac = [[sum(Fraction(t_cols[i][l]) * w_inv[l][j] for l in range(r))
                       for j in range(r)] for i in range(r)]
            if any(x.denominator != 1 for row in m_frac for x in row):
                continue
            m_int = [[int(x) for x in row] for row in m_frac]
            if abs(int_det(m_int)) != 1:
                continue
            iso = isomorphic_strict(g1.transform_labels(m_int), g2)
            if iso is not None:
                return GraphIso(iso.vertex_map, iso.edge_map,
                                matrix=tuple(tuple(row) for row in m_int))
    return None


def check_isomorphism(g1, g2, iso):
    """Mechanically verify a returned witness (used by the test suite)."""
    vm = iso.vertex_map
    if sorted(vm) != sorted(g1.vertices) or sorted(vm.values()) != sorted(g2.vertices):
        return False
    if iso.matrix is None:
        h = g1
    else:
        h = g1.transform_labels([list(row) for row in iso.matrix])
    for u in g1.vertices:
        for v in g1.vertices:
            if u < v and _pair_label_multiset(h, u, v) != _pair_label_multiset(g2, vm[u], vm[v]):
                return False
    em = iso.edge_map
    if sorted(em) != list(range(len(g1.edges))) or sorted(em.values()) != list(range(len(g2.edges))):
        return False
    for i, j in em.items():
        e1, e2 = h.edges[i], g2.edges[j]
        if {vm[e1.u], vm[e1.v]} != {e2.u, e2.v} or e1.label != e2.label:
            return False
    return True
