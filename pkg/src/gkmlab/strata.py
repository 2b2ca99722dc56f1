"""Orbit-type stratification posets reconstructed from the graph.

For a subgroup H of the torus, the fixed subgraph keeps every vertex and
exactly the edges whose weights vanish on H; its connected components,
collected over all candidate subgroups and ordered by containment, mirror
the closed orbit-type stratification of the underlying action.  Candidate
subgroups are kernels of subsets of the label set: the fixed subgraph
depends only on which labels vanish, and every realizable vanishing
pattern arises from the kernel of the vanishing set itself.

Each element carries the largest subgroup fixing it and the principal
isotropy group, read off as the intersection of the kernels of the
component's edge labels at any one vertex; vertex-independence is checked
and its failure raises, since the reconstruction is only meaningful when
the choice does not matter.
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import NotGKMConsistentError
from .lattice import TorusSubgroup, kernel_of_weights, vanishes_on, subgroup_contains

MAX_VANISHING_PATTERNS = 20000


@dataclass(frozen=True)
class Subgraph:
    vertices: tuple
    edge_indices: tuple


@dataclass(frozen=True)
class StratElement:
    vertices: frozenset
    edges: frozenset
    generating_subgroup: TorusSubgroup
    principal_isotropy: TorusSubgroup

    def sort_key(self):
        return (sorted(self.vertices), len(self.edges), sorted(self.edges))


class StratPoset:
    """Elements sorted canonically; order relation is componentwise containment."""

    __slots__ = ("graph", "elements", "_leq")

    def __init__(self, graph, elements):
        self.graph = graph
        self.elements = tuple(sorted(elements, key=lambda el: el.sort_key()))
        n = len(self.elements)
        leq = [[False] * n for _ in range(n)]
        for i, a in enumerate(self.elements):
            for j, b in enumerate(self.elements):
                leq[i][j] = a.vertices <= b.vertices and a.edges <= b.edges
        self._leq = tuple(tuple(row) for row in leq)

    def leq(self, i, j):
        return self._leq[i][j]

    def __len__(self):
        return len(self.elements)

    def maximum(self):
        for j in range(len(self.elements)):
            if all(self._leq[i][j] for i in range(len(self.elements))):
                return j
        return None

    def minimal_indices(self):
        n = len(self.elements)
        return [i for i in range(n)
                if not any(self._leq[j][i] and j != i for j in range(n))]

    def down_set_size(self, i):
        return sum(1 for j in range(len(self.elements)) if self._leq[j][i])

    def up_set_size(self, i):
        return sum(1 for j in range(len(self.elements)) if self._leq[i][j])


def fixed_subgraph(g, subgroup):
    """All vertices of g plus the edges whose labels vanish on the subgroup."""
    if subgroup.rank != g.rank:
        raise ValueError("rank mismatch")
    kept = tuple(i for i, e in enumerate(g.edges)
                 if vanishes_on(e.label, subgroup))
    return Subgraph(tuple(g.vertices), kept)


def _components(g, edge_indices):
    """Connected components over all vertices using only the given edges."""
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i in edge_indices:
        e = g.edges[i]
        ru, rv = find(e.u), find(e.v)
        if ru != rv:
            parent[ru] = rv
    groups = {}
    for v in g.vertices:
        groups.setdefault(find(v), set()).add(v)
    out = []
    for verts in groups.values():
        edges = frozenset(i for i in edge_indices
                          if g.edges[i].u in verts)
        out.append((frozenset(verts), edges))
    return out


def _principal_isotropy(g, verts, edges):
    """Kernel of the component's edge labels at one vertex; must not depend
    on the vertex chosen."""
    per_vertex = {}
    for v in verts:
        labels = [g.edges[i].label for i in edges
                  if v in (g.edges[i].u, g.edges[i].v)]
        per_vertex[v] = kernel_of_weights(labels, g.rank)
    groups = set(per_vertex.values())
    if len(groups) > 1:
        raise NotGKMConsistentError(
            "principal isotropy depends on the chosen vertex in component %r"
            % sorted(verts))
    return groups.pop()


def _vanishing_pattern_kernels(labels, rank):
    """One kernel subgroup per realizable vanishing pattern.

    The fixed subgraph of H depends only on which labels vanish on H, and
    every realizable pattern is closed: it equals the labels lying in the
    lattice of its own members.  Closed sets are enumerated incrementally
    (grow by one label, take the closure), which ranges over exactly the
    same candidate subgroups as all 2^k label subsets would.
    """
    def closure(subset):
        h = kernel_of_weights(list(subset), rank)
        return frozenset(w for w in labels if vanishes_on(w, h)), h

    start, h0 = closure(())
    flats = {start: h0}
    queue = [start]
    while queue:
        flat = queue.pop()
        for w in labels:
            if w in flat:
                continue
            grown, h = closure(tuple(flat) + (w,))
            if grown not in flats:
                if len(flats) >= MAX_VANISHING_PATTERNS:
                    raise ValueError(
                        "more than %d vanishing patterns; refusing to enumerate"
                        % MAX_VANISHING_PATTERNS)
                flats[grown] = h
                queue.append(grown)
    return set(flats.values())


def orbit_poset(g):
    """The stratification poset of the graph.

    Candidate subgroups are kernels of subsets of the deduplicated label
    set (one per realizable vanishing pattern) plus the trivial subgroup;
    components of the fixed subgraphs are deduplicated by exact
    (vertex set, edge set) identity.
    """
    labels = g.label_set()
    candidates = _vanishing_pattern_kernels(labels, g.rank)
    candidates.add(TorusSubgroup.trivial(g.rank))

    seen = {}
    for h in candidates:
        sub = fixed_subgraph(g, h)
        for verts, edges in _components(g, sub.edge_indices):
            seen.setdefault((verts, edges), None)

    elements = []
    for verts, edges in seen:
        component_labels = [g.edges[i].label for i in edges]
        generating = kernel_of_weights(component_labels, g.rank)
        isotropy = _principal_isotropy(g, verts, edges)
        elements.append(StratElement(verts, edges, generating, isotropy))
    return StratPoset(g, elements)


def poset_isomorphic_with_labels(p1, p2, extra1=None, extra2=None):
    """Order isomorphism matching principal isotropy groups (and optional
    extra per-element labels); returns the index mapping or None."""
    n = len(p1.elements)
    if n != len(p2.elements):
        return None

    def signature(p, extra):
        sigs = []
        for i, el in enumerate(p.elements):
            ex = extra[i] if extra is not None else None
            sigs.append((el.principal_isotropy, p.down_set_size(i),
                         p.up_set_size(i), ex))
        return sigs

    sig1 = signature(p1, extra1)
    sig2 = signature(p2, extra2)
    if sorted(map(repr, sig1)) != sorted(map(repr, sig2)):
        return None

    order = sorted(range(n), key=lambda i: p1.down_set_size(i))
    mapping = {}
    used = set()

    def backtrack(k):
        if k == n:
            return True
        i = order[k]
        for j in range(n):
            if j in used or sig1[i] != sig2[j]:
                continue
            ok = True
            for i2, j2 in mapping.items():
                if p1.leq(i, i2) != p2.leq(j, j2) or p1.leq(i2, i) != p2.leq(j2, j):
                    ok = False
                    break
            if ok:
                mapping[i] = j
                used.add(j)
                if backtrack(k + 1):
                    return True
                del mapping[i]
                used.remove(j)
        return False

    if backtrack(0):
        return dict(mapping)
    return None


def poset_to_jsonable(p):
    """Deterministic JSON shape: elements sorted canonically, subgroups by
    canonical character matrix, order as the full leq relation."""
    elements = []
    for el in p.elements:
        elements.append({
            "vertices": sorted(el.vertices),
            "edges": [[p.graph.edges[i].u, p.graph.edges[i].v,
                       list(p.graph.edges[i].label)] for i in sorted(el.edges)],
            "generating_subgroup": [list(r) for r in el.generating_subgroup.char_matrix],
            "principal_isotropy": [list(r) for r in el.principal_isotropy.char_matrix],
            "isotropy_dim": el.principal_isotropy.dim_identity_component,
            "isotropy_torsion": list(el.principal_isotropy.torsion_invariants),
        })
    leq_pairs = [[i, j] for i in range(len(p)) for j in range(len(p))
                 if i != j and p.leq(i, j)]
    return {"elements": elements, "leq": leq_pairs}
