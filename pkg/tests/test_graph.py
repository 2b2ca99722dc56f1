"""Graph data type, validation, catalog, isomorphism."""

import pytest

from gkmlab.graph import (GKMGraph, SignedStructure, catalog, CATALOG_NAMES,
                          isomorphic_strict, isomorphic_up_to_lattice_aut,
                          check_isomorphism)


def test_constructor_rejects_structural_problems():
    with pytest.raises(ValueError):
        GKMGraph(3, 4, [], [])
    with pytest.raises(ValueError):
        GKMGraph(3, 4, ["a", "a"], [])
    with pytest.raises(ValueError):
        GKMGraph(3, 4, ["a", "b"], [("a", "c", (1, 0, 0))])
    with pytest.raises(ValueError):
        GKMGraph(3, 4, ["a", "b"], [("a", "a", (1, 0, 0))])
    with pytest.raises(ValueError):
        GKMGraph(3, 4, ["a", "b"], [("a", "b", (1, 0))])


def test_labels_canonicalized():
    g = GKMGraph(2, 1, ["a", "b"], [("a", "b", (-1, 1))])
    assert g.edges[0].label == (1, -1)


def test_validate_catalog_graphs_clean():
    for name in CATALOG_NAMES:
        g, _ = catalog(name)
        report = g.validate()
        assert report.ok, (name, report.violations)
        assert report.warnings == []


def test_validate_collinear_labels():
    g = GKMGraph(3, 2, ["a", "b"],
                 [("a", "b", (1, 0, 0)), ("a", "b", (2, 0, 0))])
    report = g.validate()
    assert any("collinear" in v for v in report.violations)


def test_validate_non_regular_valence():
    g = GKMGraph(3, 4, ["a", "b", "c"],
                 [("a", "b", (1, 0, 0)), ("a", "b", (0, 1, 0)),
                  ("a", "b", (0, 0, 1)), ("a", "c", (1, -1, -1))])
    report = g.validate()
    assert any("non-regular valence at vertex b" in v for v in report.violations)
    assert any("non-regular valence at vertex c" in v for v in report.violations)


def test_validate_flags_zero_label_and_disconnected():
    g = GKMGraph(2, 1, ["a", "b", "c", "d"],
                 [("a", "b", (0, 0)), ("c", "d", (1, 0))])
    report = g.validate()
    assert any("zero label" in v for v in report.violations)
    assert any("not connected" in v for v in report.violations)


def test_effectiveness_is_a_warning_not_a_violation():
    # K4 whose labels all live in the z = 0 plane: pairwise independent at
    # every vertex, but a quotient torus acts; legal input, flagged only
    g = GKMGraph(3, 3, ["v0", "v1", "v2", "v3"],
                 [("v0", "v1", (1, 0, 0)), ("v0", "v2", (0, 1, 0)),
                  ("v0", "v3", (1, 1, 0)), ("v1", "v2", (1, -1, 0)),
                  ("v1", "v3", (0, 1, 0)), ("v2", "v3", (1, 2, 0))])
    report = g.validate()
    assert report.ok
    assert any("span" in w for w in report.warnings)


def test_euler_characteristic():
    assert catalog("example8")[0].euler_characteristic() == 4
    assert catalog("cp3")[0].euler_characteristic() == 4
    assert catalog("cp1xcp3")[0].euler_characteristic() == 8


def test_complexity():
    assert catalog("example8")[0].complexity() == 1
    assert catalog("cp3")[0].complexity() == 0
    assert catalog("cp1xcp3")[0].complexity() == 1
    for name in CATALOG_NAMES:
        g, _ = catalog(name)
        assert g.complexity() >= 0


def test_catalog_example8_labels():
    g, signed = catalog("example8")
    assert signed is None
    assert set(g.label_set()) == {(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, -1)}
    assert len(g.edges) == 8
    # two triple edges
    pair_sizes = sorted(len(g.edges_between(u, v))
                        for u, v in {("a", "b"), ("c", "d"), ("a", "c"), ("b", "d")})
    assert pair_sizes == [1, 1, 3, 3]


def test_catalog_cp1xcp3_vertical_label():
    g, signed = catalog("cp1xcp3")
    vertical = [e for e in g.edges if e.label == (1, -1, -1)]
    assert len(vertical) == 4
    assert signed is not None


def test_catalog_cp1():
    g, signed = catalog("cp1")
    assert len(g.vertices) == 2
    assert len(g.edges) == 1
    assert g.edges[0].label == (1,)
    assert signed is not None


def test_catalog_accepts_paren_spelling_and_rejects_unknown():
    g1, _ = catalog("cp(3)")
    g2, _ = catalog("cp3")
    assert g1 == g2
    with pytest.raises(KeyError):
        catalog("cp7")
    with pytest.raises(KeyError):
        catalog("nonsense")


def test_isomorphic_strict_builtin_pair():
    g, _ = catalog("example8")
    h, _ = catalog("product_s2s6")
    iso = isomorphic_strict(g, h)
    assert iso is not None
    assert check_isomorphism(g, h, iso)


def test_isomorphic_strict_self_identity():
    g, _ = catalog("example8")
    iso = isomorphic_strict(g, g)
    assert iso is not None
    assert iso.vertex_map == {v: v for v in g.vertices}
    assert check_isomorphism(g, g, iso)


def test_isomorphic_strict_different_vertex_counts():
    assert isomorphic_strict(catalog("example8")[0], catalog("cp3")[0]) is None


def test_isomorphic_strict_symmetric_and_rename_invariant():
    g, _ = catalog("cp2")
    mapping = {"v0": "x", "v1": "y", "v2": "z"}
    h = g.relabel(mapping)
    fwd = isomorphic_strict(g, h)
    back = isomorphic_strict(h, g)
    assert fwd is not None and back is not None
    assert check_isomorphism(g, h, fwd)
    assert check_isomorphism(h, g, back)
    inverted = {w: v for v, w in fwd.vertex_map.items()}
    assert isomorphic_strict(h, g).vertex_map == inverted or check_isomorphism(h, g, back)


def test_lattice_aut_recovers_planted_matrix():
    g, _ = catalog("cp3")
    m = [[1, 1, 0], [0, 1, 0], [1, 0, 1]]  # det 1
    h = g.transform_labels(m)
    iso = isomorphic_up_to_lattice_aut(g, h)
    assert iso is not None
    assert iso.matrix is not None
    assert check_isomorphism(g, h, iso)


def test_lattice_aut_identity_on_strictly_isomorphic_pair():
    g, _ = catalog("example8")
    h, _ = catalog("product_s2s6")
    iso = isomorphic_up_to_lattice_aut(g, h)
    assert iso is not None
    assert iso.matrix == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert check_isomorphism(g, h, iso)


def test_lattice_aut_determinant_obstruction():
    g, _ = catalog("cp3")
    doubled = g.transform_labels([[2, 0, 0], [0, 2, 0], [0, 0, 2]])
    assert isomorphic_up_to_lattice_aut(g, doubled) is None


def test_signed_structure_dart_labels():
    g, signed = catalog("cp1")
    assert signed.dart_label((0, 0)) == (1,)
    assert signed.dart_label((0, 1)) == (-1,)
    assert signed.negate().dart_label((0, 0)) == (-1,)


def test_signed_structure_shape_errors():
    g, _ = catalog("cp1")
    with pytest.raises(ValueError):
        SignedStructure(g, (1, 1))
    with pytest.raises(ValueError):
        SignedStructure(g, (2,))
