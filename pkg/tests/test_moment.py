"""Momentum realizations, certificates, x-rays."""

import time
from fractions import Fraction
from itertools import product as iproduct

import pytest

from gkmlab.graph import SignedStructure, catalog
from gkmlab.moment import (InfeasibilityCertificate, LinearConstraint,
                           MomentumRealization, cycle_closure_holds,
                           fundamental_cycles, is_valid_realization, realize,
                           realize_any_signs, xray, xray_equal,
                           xray_to_jsonable)


def verify_certificate(g, signed, cert, extra=()):
    """Replay the combination: variables must cancel, bounds must not."""
    var_total = {}
    bound_total = Fraction(0)

    def add(coeffs, factor):
        for var, c in coeffs.items():
            acc = var_total.get(var, Fraction(0)) + factor * c
            if acc:
                var_total[var] = acc
            elif var in var_total:
                del var_total[var]

    for coeff, src in cert.combination:
        if src[0] == "edge_eq":
            _, i, k = src
            e = g.edges[i]
            alpha = signed.dart_label((i, 0))
            coeffs = {}
            if e.v != g.vertices[0]:
                coeffs[("pos", e.v, k)] = Fraction(1)
            if e.u != g.vertices[0]:
                coeffs[("pos", e.u, k)] = coeffs.get(("pos", e.u, k), Fraction(0)) - 1
            if alpha[k]:
                coeffs[("len", i)] = Fraction(-alpha[k])
            add(coeffs, coeff)  # equation: any sign allowed
        elif src[0] == "length_lb":
            assert coeff >= 0, "inequality combined with a negative factor"
            add({("len", src[1]): Fraction(1)}, coeff)
            bound_total += coeff * 1
        elif src[0] == "extra":
            assert coeff >= 0
            constraint = extra[src[1]]
            add({("len", i): Fraction(c) for i, c in constraint.coeffs}, coeff)
            bound_total += coeff * constraint.rhs
        else:  # pragma: no cover
            raise AssertionError("unknown source %r" % (src,))
    assert not var_total, "combination does not cancel the variables"
    assert bound_total > 0, "combination does not produce a positive bound"


def test_cp1_realization_is_unit_segment():
    g, signed = catalog("cp1")
    m = realize(g, signed)
    assert isinstance(m, MomentumRealization)
    assert m.positions == {"v0": (Fraction(0),), "v1": (Fraction(1),)}
    assert m.lengths == {0: Fraction(1)}


def test_example8_infeasible_for_every_sign_structure():
    g, _ = catalog("example8")
    start = time.perf_counter()
    assert realize_any_signs(g) is None
    assert time.perf_counter() - start < 1.0


def test_example8_certificates_verify():
    g, _ = catalog("example8")
    for signs in [(1,) * 8, (1, -1, 1, -1, 1, -1, 1, -1), (-1,) * 8]:
        signed = SignedStructure(g, signs)
        cert = realize(g, signed)
        assert isinstance(cert, InfeasibilityCertificate)
        verify_certificate(g, signed, cert)
        # the parallel-edge obstruction shows up as a cycle through the
        # triple edges: the combination involves at least two edges
        assert len(cert.involved_edges()) >= 2
        assert "inconsistent combination" in cert.describe()


def test_cp1xcp3_feasible_with_equal_vertical_lengths():
    g, signed = catalog("cp1xcp3")
    m = realize(g, signed)
    assert isinstance(m, MomentumRealization)
    assert is_valid_realization(g, signed, m)
    vertical = [i for i, e in enumerate(g.edges) if e.label == (1, -1, -1)]
    lengths = {m.lengths[i] for i in vertical}
    assert len(lengths) == 1


def test_cp1xcp3_vertical_rigidity_by_forced_inequalities():
    g, signed = catalog("cp1xcp3")
    vertical = [i for i, e in enumerate(g.edges) if e.label == (1, -1, -1)]
    for i in vertical:
        for j in vertical:
            if i == j:
                continue
            forced = LinearConstraint(((i, Fraction(1)), (j, Fraction(-1))),
                                      Fraction(1))
            cert = realize(g, signed, [forced])
            assert isinstance(cert, InfeasibilityCertificate)
            verify_certificate(g, signed, cert, extra=[forced])


def test_realize_any_signs_finds_catalog_positives():
    for name in ("cp1", "cp2", "cp3", "cp4", "cp1xcp3"):
        g, _ = catalog(name)
        found = realize_any_signs(g)
        assert found is not None, name
        signed, m = found
        assert is_valid_realization(g, signed, m)


def test_cycle_closure_on_feasible_realizations():
    for name in ("cp2", "cp3", "cp4", "cp1xcp3", "y_cp1xcp3"):
        g, signed = catalog(name)
        m = realize(g, signed)
        assert isinstance(m, MomentumRealization)
        assert cycle_closure_holds(g, signed, m), name
        # a cycle basis of a connected graph has |E| - |V| + 1 elements
        assert len(fundamental_cycles(g)) == len(g.edges) - len(g.vertices) + 1


def test_edge_equations_hold_exactly():
    g, signed = catalog("cp3")
    m = realize(g, signed)
    for i, e in enumerate(g.edges):
        alpha = signed.dart_label((i, 0))
        for k in range(g.rank):
            assert (m.positions[e.v][k] - m.positions[e.u][k]
                    == m.lengths[i] * alpha[k])


def test_scaling_preserves_feasibility():
    g, signed = catalog("cp3")
    m = realize(g, signed)
    assert is_valid_realization(g, signed, m.scale(3))
    assert is_valid_realization(g, signed, m.scale(Fraction(5, 2)))
    shrunk = m.scale(Fraction(1, 2))
    assert not is_valid_realization(g, signed, shrunk)  # lengths below 1
    assert is_valid_realization(g, signed, shrunk.normalized())
    with pytest.raises(ValueError):
        m.scale(0)


def test_xray_cp1_segment():
    g, signed = catalog("cp1")
    m = realize(g, signed)
    x = xray(g, signed, m)
    polys = sorted(x.polytopes.values(), key=len)
    assert polys[0] in (((Fraction(0),),), ((Fraction(1),),))
    assert polys[2] == ((Fraction(0),), (Fraction(1),))


def test_xray_cp3_faces():
    g, signed = catalog("cp3")
    m = realize(g, signed)
    x = xray(g, signed, m)
    assert len(x.poset) == 15
    for idx, el in enumerate(x.poset.elements):
        assert x.polytopes[idx] == tuple(sorted({m.positions[v]
                                                 for v in el.vertices}))


def test_xray_vertical_strata_parallel_slopes():
    g, signed = catalog("cp1xcp3")
    m = realize(g, signed)
    x = xray(g, signed, m)
    slope = (1, -1, -1)
    count = 0
    for idx, el in enumerate(x.poset.elements):
        if len(el.edges) == 1 and g.edges[next(iter(el.edges))].label == slope:
            p0, p1 = x.polytopes[idx]
            diff = tuple(a - b for a, b in zip(p1, p0))
            t = diff[0]
            assert t != 0 and all(d == t * s for d, s in zip(diff, slope))
            count += 1
    assert count == 4


def test_xray_requires_valid_realization():
    g, signed = catalog("cp1")
    bad = MomentumRealization({"v0": (Fraction(0),), "v1": (Fraction(2),)},
                              {0: Fraction(1)})
    with pytest.raises(ValueError, match="invalid realization"):
        xray(g, signed, bad)


def test_xray_equal_modes():
    g, signed = catalog("cp1xcp3")
    m = realize(g, signed)
    x = xray(g, signed, m)
    assert xray_equal(x, x, mode="exact")
    assert xray_equal(x, x, mode="normalized")
    shifted = MomentumRealization(
        {v: tuple(c + d for c, d in zip(pos, (1, 2, 3)))
         for v, pos in m.positions.items()}, dict(m.lengths))
    xs = xray(g, signed, shifted)
    assert not xray_equal(x, xs, mode="exact")
    assert xray_equal(x, xs, mode="normalized")
    scaled = xray(g, signed, m.scale(7))
    assert xray_equal(x, scaled, mode="normalized")
    with pytest.raises(ValueError):
        xray_equal(x, x, mode="fuzzy")


def test_xray_coincide_across_the_two_builtins():
    ga, sa = catalog("cp1xcp3")
    gb, sb = catalog("y_cp1xcp3")
    xa = xray(ga, sa, realize(ga, sa))
    xb = xray(gb, sb, realize(gb, sb))
    assert xray_equal(xa, xb, mode="normalized")


def test_xray_differs_from_plain_cp3():
    ga, sa = catalog("cp1xcp3")
    gb, sb = catalog("cp3")
    xa = xray(ga, sa, realize(ga, sa))
    xb = xray(gb, sb, realize(gb, sb))
    assert not xray_equal(xa, xb, mode="normalized")


def test_xray_json_has_no_decimal_points():
    import json
    g, signed = catalog("cp1xcp3")
    m = realize(g, signed)
    blob = json.dumps(xray_to_jsonable(xray(g, signed, m)))
    assert ".0" not in blob
    data = json.loads(blob)
    assert all(isinstance(c, str)
               for el in data["elements"] for pt in el["polytope"] for c in pt)
