"""Graph file format v1 and the expression grammar."""

import random

import pytest

from gkmlab.errors import ExprSyntaxError, GraphFormatError
from gkmlab.graph import catalog, CATALOG_NAMES
from gkmlab.localization import CharClassExpr
from gkmlab.parsing import (parse_expr, parse_graph, serialize_expr,
                            serialize_graph)


def test_roundtrip_all_catalog_files():
    for name in CATALOG_NAMES:
        g, signed = catalog(name)
        text = serialize_graph(g, signed)
        g2, signed2 = parse_graph(text)
        assert g2 == g, name
        assert signed2 == signed, name
        # serializing the parse gives back the same bytes
        assert serialize_graph(g2, signed2) == text, name


def test_parse_matches_catalog_example8():
    g, _ = catalog("example8")
    g2, signed2 = parse_graph(serialize_graph(g))
    assert g2 == g
    assert signed2 is None


def test_whitespace_and_comments():
    text = """
# a triangle with headroom   # nested comment text
rank 2
valence 2

vertex a
vertex b  # trailing comment
vertex c
edge a b ( 1 ,  0 )
edge b c (0,1)
edge a c (  1,1 )
"""
    g, signed = parse_graph(text)
    assert signed is None
    assert [e.label for e in g.edges] == [(1, 0), (0, 1), (1, 1)]


def test_arity_error():
    text = "rank 2\nvalence 1\nvertex a\nvertex b\nedge a b (1,0,0)\n"
    with pytest.raises(GraphFormatError, match="arity"):
        parse_graph(text)


def test_empty_graph_error():
    with pytest.raises(GraphFormatError, match="empty graph"):
        parse_graph("rank 2\nvalence 2\n")


def test_duplicate_vertex_error():
    with pytest.raises(GraphFormatError, match="duplicate vertex"):
        parse_graph("rank 1\nvalence 1\nvertex a\nvertex a\n")


def test_unknown_vertex_error():
    text = "rank 1\nvalence 1\nvertex a\nvertex b\nedge a z (1)\n"
    with pytest.raises(GraphFormatError, match="unknown vertex"):
        parse_graph(text)


def test_mixed_signedness_error():
    text = ("rank 1\nvalence 2\nvertex a\nvertex b\n"
            "edge a b (1)\nsigned edge a b (1)\n")
    with pytest.raises(GraphFormatError, match="mixed"):
        parse_graph(text)


def test_missing_headers():
    with pytest.raises(GraphFormatError, match="rank"):
        parse_graph("valence 1\nvertex a\n")
    with pytest.raises(GraphFormatError, match="valence"):
        parse_graph("rank 1\nvertex a\n")


def test_signed_orientation_read_back():
    text = ("rank 1\nvalence 1\nvertex a\nvertex b\n"
            "signed edge a b (-1)\n")
    g, signed = parse_graph(text)
    assert g.edges[0].label == (1,)
    assert signed.signs == (-1,)
    assert signed.dart_label((0, 0)) == (-1,)


# -- expressions ------------------------------------------------------------


def test_parse_expr_square():
    e = parse_expr("c1^2", 2)
    assert e.degree == 2
    assert e == CharClassExpr.monomial(2, {("c", 1): 2})


def test_parse_expr_sum_same_degree():
    e = parse_expr("p1 + 3*c1*c1", 2)
    assert e.degree == 2
    want = (CharClassExpr.monomial(2, {("p", 1): 1})
            + 3 * CharClassExpr.monomial(2, {("c", 1): 2}))
    assert e == want


def test_parse_expr_rejects_inhomogeneous():
    with pytest.raises(ExprSyntaxError, match="degrees 1, 2"):
        parse_expr("c1 + c2", 3)


def test_parse_expr_symbol_range():
    with pytest.raises(ExprSyntaxError, match="out of range"):
        parse_expr("c5", 3)
    with pytest.raises(ExprSyntaxError, match="out of range"):
        parse_expr("p2", 3)  # needs valence >= 4


def test_parse_expr_syntax_error_position():
    with pytest.raises(ExprSyntaxError) as err:
        parse_expr("c1 + + c1", 2)
    assert err.value.position is not None


def test_parse_expr_bare_integer_constant():
    e = parse_expr("1", 4)
    assert e == CharClassExpr.constant(4, 1)
    assert e.degree == 0


def test_parse_expr_signs_and_coefficients():
    e = parse_expr("-2*c1^2 + p1 - c2", 4)
    want = (-2 * CharClassExpr.monomial(4, {("c", 1): 2})
            + CharClassExpr.monomial(4, {("p", 1): 1})
            + -1 * CharClassExpr.monomial(4, {("c", 2): 1}))
    assert e == want


def _weighted_monomials(valence, degree):
    """All symbol-power maps of one weighted degree (small search)."""
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
        top = left // w
        for e in range(top + 1):
            if e:
                acc[sym] = e
            rec(i + 1, left - e * w, acc)
            acc.pop(sym, None)
    rec(0, degree, {})
    return out


def test_expr_roundtrip_random():
    rng = random.Random(42)
    for _ in range(60):
        valence = rng.randint(2, 6)
        degree = rng.randint(1, valence)
        pool = _weighted_monomials(valence, degree)
        expr = CharClassExpr.zero(valence)
        for powers in rng.sample(pool, k=min(len(pool), rng.randint(1, 3))):
            expr = expr + CharClassExpr.monomial(valence, powers,
                                                 rng.choice([-3, -1, 1, 2, 5]))
        if not expr.terms:
            continue
        assert parse_expr(serialize_expr(expr), valence) == expr
