"""Parsers for the graph text format (v1) and characteristic-class
expressions, plus the matching serializers.

Graph format v1, line oriented UTF-8:

    # comment
    rank 3
    valence 4
    vertex a
    vertex b
    edge a b (1, 0, 0)
    signed edge a c (1,-1,-1)      # oriented label a -> c

Whitespace inside the parentheses is free; `#` starts a comment anywhere.
Signed and unsigned edge lines must not be mixed.
"""

import re

from .errors import GraphFormatError, ExprSyntaxError
from .graph import GKMGraph, SignedStructure
from .lattice import canonical_weight
from .localization import CharClassExpr

_LABEL_RE = re.compile(r"\(([^()]*)\)\s*$")


def _parse_label(text, lineno):
    m = _LABEL_RE.search(text)
    if not m:
        raise GraphFormatError("line %d: missing (a,b,...) label" % lineno)
    entries = m.group(1).split(",")
    try:
        return tuple(int(x.strip()) for x in entries), text[:m.start()].strip()
    except ValueError:
        raise GraphFormatError("line %d: non-integer label entry" % lineno)


def parse_graph(text):
    """Parse graph format v1; returns (GKMGraph, SignedStructure or None)."""
    rank = valence = None
    vertices = []
    edge_lines = []  # (u, v, label, signed, lineno)
    seen_signed = seen_unsigned = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0].lower()
        if head == "rank":
            if rank is not None:
                raise GraphFormatError("line %d: duplicate rank header" % lineno)
            if len(tokens) != 2 or not tokens[1].lstrip("-").isdigit():
                raise GraphFormatError("line %d: expected `rank R`" % lineno)
            rank = int(tokens[1])
        elif head == "valence":
            if valence is not None:
                raise GraphFormatError("line %d: duplicate valence header" % lineno)
            if len(tokens) != 2 or not tokens[1].lstrip("-").isdigit():
                raise GraphFormatError("line %d: expected `valence N`" % lineno)
            valence = int(tokens[1])
        elif head == "vertex":
            if len(tokens) != 2:
                raise GraphFormatError("line %d: expected `vertex NAME`" % lineno)
            if tokens[1] in vertices:
                raise GraphFormatError("line %d: duplicate vertex name %r"
                                       % (lineno, tokens[1]))
            vertices.append(tokens[1])
        elif head in ("edge", "signed"):
            signed = head == "signed"
            body = line
            if signed:
                if len(tokens) < 2 or tokens[1].lower() != "edge":
                    raise GraphFormatError("line %d: expected `signed edge ...`" % lineno)
                body = line.split(None, 1)[1]
            label, rest = _parse_label(body, lineno)
            parts = rest.split()
            if len(parts) != 3:  # 'edge', NAME1, NAME2
                raise GraphFormatError("line %d: expected `edge NAME1 NAME2 (...)`" % lineno)
            _, u, v = parts
            edge_lines.append((u, v, label, signed, lineno))
            if signed:
                seen_signed = True
            else:
                seen_unsigned = True
        else:
            raise GraphFormatError("line %d: unrecognized directive %r" % (lineno, head))

    if rank is None:
        raise GraphFormatError("missing rank header")
    if valence is None:
        raise GraphFormatError("missing valence header")
    if not vertices:
        raise GraphFormatError("empty graph (no vertex lines)")
    if seen_signed and seen_unsigned:
        raise GraphFormatError("signed and unsigned edge lines must not be mixed")

    for u, v, label, _, lineno in edge_lines:
        if u not in vertices:
            raise GraphFormatError("line %d: unknown vertex %r" % (lineno, u))
        if v not in vertices:
            raise GraphFormatError("line %d: unknown vertex %r" % (lineno, v))
        if len(label) != rank:
            raise GraphFormatError("line %d: label arity %d does not match rank %d"
                                   % (lineno, len(label), rank))

    try:
        g = GKMGraph(rank, valence, vertices,
                     [(u, v, label) for u, v, label, _, _ in edge_lines])
    except ValueError as exc:
        raise GraphFormatError(str(exc))

    if not seen_signed:
        return g, None
    signs = []
    for (u, v, label, _, lineno), edge in zip(edge_lines, g.edges):
        if label == edge.label:
            signs.append(1)
        elif tuple(-x for x in label) == edge.label:
            signs.append(-1)
        else:  # pragma: no cover - canonicalization guarantees one branch
            raise GraphFormatError("line %d: label canonicalization failed" % lineno)
    return g, SignedStructure(g, signs)


def serialize_graph(g, signed=None):
    """Graph format v1 text; parses back to an equal graph (and signs)."""
    lines = ["rank %d" % g.rank, "valence %d" % g.valence]
    lines += ["vertex %s" % v for v in g.vertices]
    for i, e in enumerate(g.edges):
        label = e.label if signed is None else signed.dart_label((i, 0))
        prefix = "edge" if signed is None else "signed edge"
        lines.append("%s %s %s (%s)" % (prefix, e.u, e.v,
                                        ",".join(str(x) for x in label)))
    return "\n".join(lines) + "\n"


# -- characteristic-class expressions --------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<sym>c[1-9]|p[1-4]|eu)"
                       r"|(?P<op>[-+*^]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ExprSyntaxError("unexpected character %r" % text[pos], pos)
            break
        if m.group("int"):
            tokens.append(("int", int(m.group("int")), pos))
        elif m.group("sym"):
            s = m.group("sym")
            tokens.append(("sym", ("eu", 0) if s == "eu" else (s[0], int(s[1])), pos))
        else:
            tokens.append(("op", m.group("op"), pos))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


def parse_expr(text, valence):
    """Parse `expr := term (('+'|'-') term)*` into a CharClassExpr.

    A term is `[integer '*']? factor ('*' factor)*` with factor
    `symbol ['^' integer]`; a bare integer is accepted as a degree-0 term.
    Symbols are checked against the valence and the whole expression must
    be homogeneous in the weighted degree (c_i -> i, p_i -> 2i, eu -> n).
    """
    tokens = _tokenize(text)
    idx = 0

    def peek():
        return tokens[idx]

    def advance():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def parse_factor():
        kind, value, pos = advance()
        if kind != "sym":
            raise ExprSyntaxError("expected symbol", pos)
        exp = 1
        if peek()[0] == "op" and peek()[1] == "^":
            advance()
            kind2, value2, pos2 = advance()
            if kind2 != "int":
                raise ExprSyntaxError("expected integer exponent", pos2)
            exp = value2
        return value, exp

    def parse_term():
        coeff = 1
        powers = {}
        kind, value, pos = peek()
        if kind == "int":
            advance()
            coeff = value
            if peek()[0] == "op" and peek()[1] == "*":
                advance()
            else:
                return coeff, powers  # bare integer constant
        while True:
            sym, exp = parse_factor()
            powers[sym] = powers.get(sym, 0) + exp
            if peek()[0] == "op" and peek()[1] == "*":
                advance()
                continue
            break
        return coeff, powers

    terms = []
    sign = 1
    kind, value, pos = peek()
    if kind == "op" and value in "+-":
        advance()
        sign = -1 if value == "-" else 1
    while True:
        coeff, powers = parse_term()
        terms.append((sign * coeff, powers))
        kind, value, pos = peek()
        if kind == "end":
            break
        if kind == "op" and value in "+-":
            advance()
            sign = -1 if value == "-" else 1
            continue
        raise ExprSyntaxError("expected '+', '-' or end of input", pos)

    expr = CharClassExpr.zero(valence)
    for coeff, powers in terms:
        expr = expr + CharClassExpr.monomial(valence, powers, coeff)
    expr.assert_homogeneous()
    return expr


def serialize_expr(expr):
    """Textual form accepted back by parse_expr."""
    if not expr.terms:
        return "0"
    parts = []
    for key in sorted(expr.terms):
        coeff = expr.terms[key]
        factors = []
        for (kind, index), exp in key:
            name = "eu" if kind == "eu" else "%s%d" % (kind, index)
            factors.append(name if exp == 1 else "%s^%d" % (name, exp))
        body = "*".join(factors)
        if not body:
            parts.append(str(coeff))
        elif coeff == 1:
            parts.append(body)
        elif coeff == -1:
            parts.append("-%s" % body)
        else:
            parts.append("%d*%s" % (coeff, body))
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


def parse_orientation(text, g):
    """Orientation file: one `NAME 1` or `NAME -1` line per vertex."""
    orientation = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or parts[1] not in ("1", "+1", "-1"):
            raise GraphFormatError("line %d: expected `NAME +1|-1`" % lineno)
        name = parts[0]
        if name not in g.vertices:
            raise GraphFormatError("line %d: unknown vertex %r" % (lineno, name))
        if name in orientation:
            raise GraphFormatError("line %d: duplicate vertex %r" % (lineno, name))
        orientation[name] = 1 if parts[1] in ("1", "+1") else -1
    missing = [v for v in g.vertices if v not in orientation]
    if missing:
        raise GraphFormatError("orientation missing for vertices: %s"
                               % ", ".join(missing))
    return orientation
