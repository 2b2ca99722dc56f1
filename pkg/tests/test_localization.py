"""Localized characteristic numbers against point-evaluation oracles."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from gkmlab.errors import NonconstantSumError
from gkmlab.graph import SignedStructure, catalog, CATALOG_NAMES
from gkmlab.localization import (CharClassExpr, integrate,
                                 integrate_pontryagin, orientation_from_signs,
                                 pontryagin_number)


def _elementary(values, k):
    total = Fraction(0)
    for combo in combinations(values, k):
        term = Fraction(1)
        for x in combo:
            term *= x
        total += term
    return total


def oracle_integrate(g, signed, expr, point):
    """Independent oracle: evaluate the localization sum numerically at an
    exact rational point of the Lie algebra (no polynomial algebra)."""
    total = Fraction(0)
    n = g.valence
    for v in g.vertices:
        weights = signed.weights_at(v)
        values = [sum(Fraction(wi) * pi for wi, pi in zip(w, point))
                  for w in weights]
        denom = Fraction(1)
        for val in values:
            if val == 0:
                return None  # point on a weight hyperplane; caller retries
            denom *= val
        num = Fraction(0)
        for key, coeff in expr.terms.items():
            term = Fraction(coeff)
            for (kind, index), exp in key:
                if kind == "c":
                    base = _elementary(values, index)
                elif kind == "p":
                    base = _elementary([x * x for x in values], index)
                else:
                    base = _elementary(values, n)
                term *= base ** exp
            num += term
        total += num / denom
    return total


def _oracle_value(g, signed, expr, rng):
    while True:
        point = tuple(Fraction(rng.randint(-19, 19), rng.randint(1, 7))
                      for _ in range(g.rank))
        value = oracle_integrate(g, signed, expr, point)
        if value is not None:
            return value


def _expr(valence, powers):
    return CharClassExpr.monomial(valence, powers)


@pytest.mark.parametrize("name,powers,expected", [
    ("cp1", {("c", 1): 1}, 2),
    ("cp2", {("c", 1): 2}, 9),
    ("cp3", {("c", 1): 3}, 64),
    ("cp3", {("eu", 0): 1}, 4),
])
def test_integrals_match_frozen_values_and_oracle(name, powers, expected):
    g, signed = catalog(name)
    expr = _expr(g.valence, powers)
    value = integrate(g, signed, expr)
    assert value == expected
    rng = random.Random(hash(name) & 0xFFFF)
    for _ in range(3):
        assert _oracle_value(g, signed, expr, rng) == expected


def test_pontryagin_cp2_is_three_times_signature():
    g, signed = catalog("cp2")
    value = pontryagin_number(g, orientation_from_signs(signed), [1])
    assert value == 3  # signature of the underlying 4-manifold is 1
    assert value.denominator == 1


def test_pontryagin_cp1xcp3_vanishing():
    g, signed = catalog("cp1xcp3")
    orientation = orientation_from_signs(signed)
    assert pontryagin_number(g, orientation, [1, 1]) == 0
    assert pontryagin_number(g, orientation, [2]) == 0


def test_pontryagin_matches_signed_integration():
    for name in ("cp2", "cp4", "cp1xcp3"):
        g, signed = catalog(name)
        orientation = orientation_from_signs(signed)
        half = g.valence // 2
        expr = _expr(g.valence, {("p", half): 1})
        assert (pontryagin_number(g, orientation, [half])
                == integrate(g, signed, expr))


def _monomials_of_weighted_degree(valence, degree):
    symbols = [(("c", k), k) for k in range(1, min(valence, 9) + 1)]
    symbols += [(("p", k), 2 * k) for k in range(1, min(valence // 2, 4) + 1)]
    symbols += [(("eu", 0), valence)]
    out = []

    def rec(i, left, acc):
        if left == 0:
            out.append(dict(acc))
            return
        if i == len(symbols):
            return
        sym, w = symbols[i]
        for e in range(left // w + 1):
            if e:
                acc[sym] = e
            rec(i + 1, left - e * w, acc)
            acc.pop(sym, None)
    rec(0, degree, {})
    return [m for m in out if m]


@pytest.mark.parametrize("name", ["cp2", "cp3", "cp4", "cp1xcp3"])
def test_low_degree_monomials_integrate_to_zero(name):
    g, signed = catalog(name)
    for d in range(g.valence):
        for powers in _monomials_of_weighted_degree(g.valence, d):
            expr = _expr(g.valence, powers)
            assert integrate(g, signed, expr) == 0, (name, powers)


def test_euler_integral_counts_vertices_on_all_signed_builtins():
    for name in CATALOG_NAMES:
        g, signed = catalog(name)
        if signed is None:
            continue
        expr = _expr(g.valence, {("eu", 0): 1})
        assert integrate(g, signed, expr) == len(g.vertices), name
        assert integrate(g, signed, CharClassExpr.constant(g.valence, 1)) == 0, name


def test_degree_above_valence_rejected():
    g, signed = catalog("cp2")
    with pytest.raises(ValueError, match="exceeds valence"):
        integrate(g, signed, _expr(2, {("c", 1): 3}))


def test_inconsistent_signed_data_raises_nonconstant():
    # no sign assignment on this graph yields consistent localization sums;
    # degree 0 happens to cancel for the all-plus choice but c1^2 cannot
    g, _ = catalog("example8")
    signed = SignedStructure(g, (1,) * len(g.edges))
    assert integrate(g, signed, CharClassExpr.constant(4, 1)) == 0
    with pytest.raises(NonconstantSumError):
        integrate(g, signed, _expr(4, {("c", 1): 2}))


def test_resigning_along_a_cycle_fixes_orientation_and_pontryagin():
    g, signed = catalog("cp2")
    flipped = SignedStructure(g, tuple(-s for s in signed.signs))  # all 3 edges
    assert orientation_from_signs(flipped) == orientation_from_signs(signed)
    expr = _expr(2, {("p", 1): 1})
    assert integrate(g, flipped, expr) == integrate(g, signed, expr) == 3


def test_integrate_pontryagin_orientation_route():
    g, signed = catalog("cp2")
    orientation = orientation_from_signs(signed)
    expr = _expr(2, {("p", 1): 1})
    assert integrate_pontryagin(g, orientation, expr) == 3
    with pytest.raises(ValueError, match="p-symbols"):
        integrate_pontryagin(g, orientation, _expr(2, {("c", 1): 2}))


def test_pontryagin_requires_matching_degree_and_orientation():
    g, signed = catalog("cp2")
    orientation = orientation_from_signs(signed)
    with pytest.raises(ValueError, match="degree mismatch"):
        pontryagin_number(g, orientation, [2])
    partial = dict(orientation)
    partial.pop("v0")
    with pytest.raises(ValueError, match="missing"):
        pontryagin_number(g, partial, [1])


def test_all_degree_n_integrals_are_integers_on_signed_builtins():
    for name in ("cp1", "cp2", "cp3", "cp4", "cp1xcp3"):
        g, signed = catalog(name)
        for powers in _monomials_of_weighted_degree(g.valence, g.valence):
            value = integrate(g, signed, _expr(g.valence, powers))
            assert value.denominator == 1, (name, powers)
