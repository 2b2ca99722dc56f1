"""Exact integer-lattice algebra.

Weights are integer tuples, i.e. characters of a torus T^r.  A closed
subgroup of T^r is stored through the lattice of characters that vanish on
it (its annihilator); this makes character-vanishing a lattice membership
test and handles disconnected subgroups uniformly.  Everything here is
exact integer/rational arithmetic; no floating point.
"""

from fractions import Fraction


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) = x*a + y*b and g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(mat):
    """Diagonalize an integer matrix: returns (U, D, V) with D = U*mat*V.

    U and V are unimodular, D is diagonal with d1 | d2 | ... and every
    diagonal entry nonnegative.  Total function; the zero and empty
    matrices come back unchanged with identity transforms.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    A = [[int(x) for x in row] for row in mat]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    def row_sub(i, j, q):
        # row_i -= q * row_j
        A[i] = [a - q * b for a, b in zip(A[i], A[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_sub(i, j, q):
        # col_i -= q * col_j
        for row in A:
            row[i] -= q * row[j]
        for row in V:
            row[i] -= q * row[j]

    t = 0
    while t < min(m, n):
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        if A[t][t] < 0:
            negate_row(t)
        dirty = False
        for i in range(t + 1, m):
            if A[i][t]:
                q = A[i][t] // A[t][t]
                row_sub(i, t, q)
                if A[i][t]:
                    swap_rows(t, i)
                    dirty = True
                    break
        if dirty:
            continue
        for j in range(t + 1, n):
            if A[t][j]:
                q = A[t][j] // A[t][t]
                col_sub(j, t, q)
                if A[t][j]:
                    swap_cols(t, j)
                    dirty = True
                    break
        if dirty:
            continue
        # pivot row/column are clean; pivot must divide the rest of the block
        p = A[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_sub(t, offender, -1)  # row_t += row_offender
            continue
        t += 1

    D = [[A[i][j] if i == j else 0 for j in range(n)] for i in range(m)]
    return U, D, V


def smith_invariants(mat):
    """Diagonal of the Smith form, nonzero entries first."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    _, D, _ = smith_normal_form(mat)
    return [D[i][i] for i in range(min(m, n))]


def _pivot_index(row):
    for j, x in enumerate(row):
        if x:
            return j
    return None


def hermite_row_basis(rows, n):
    """Canonical echelon basis (row HNF) of the lattice spanned by rows.

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    rows are ordered by pivot column.  Two row sets span the same lattice
    exactly when their bases are equal.
    """
    basis = []  # rows in echelon order, pivot columns strictly increasing
    for row in rows:
        if len(row) != n:
            raise ValueError("row length %d does not match ambient rank %d" % (len(row), n))
        vec = [int(x) for x in row]
        j = 0
        pos = 0
        while True:
            j = _pivot_index(vec)
            if j is None:
                break
            while pos < len(basis) and _pivot_index(basis[pos]) < j:
                pos += 1
            if pos == len(basis) or _pivot_index(basis[pos]) > j:
                if vec[j] < 0:
                    vec = [-x for x in vec]
                basis.insert(pos, vec)
                break
            # combine with the existing row owning this pivot column
            cur = basis[pos]
            a, b = cur[j], vec[j]
            if b % a == 0:
                q = b // a
                vec = [x - q * y for x, y in zip(vec, cur)]
            else:
                g, x, y = xgcd(a, b)
                ag, bg = a // g, b // g
                new_cur = [x * u + y * v for u, v in zip(cur, vec)]
                vec = [ag * v - bg * u for u, v in zip(cur, vec)]
                basis[pos] = new_cur
    # reduce entries above each pivot; for a fixed upper row sweep the lower
    # rows in pivot order, so later corrections cannot re-dirty earlier columns
    for k in range(len(basis) - 2, -1, -1):
        for idx in range(k + 1, len(basis)):
            p = _pivot_index(basis[idx])
            q = basis[k][p] // basis[idx][p]
            if q:
                basis[k] = [x - q * y for x, y in zip(basis[k], basis[idx])]
    return [tuple(r) for r in basis]


def lattice_member(echelon_basis, w):
    """Membership of w in the lattice spanned by a hermite_row_basis output."""
    vec = [int(x) for x in w]
    for row in echelon_basis:
        p = _pivot_index(row)
        if vec[p]:
            if vec[p] % row[p]:
                return False
            q = vec[p] // row[p]
            vec = [x - q * y for x, y in zip(vec, row)]
    return not any(vec)


def integer_kernel(rows, n):
    """Basis of {x in Z^n : A x = 0} for the matrix A with the given rows.

    The result is a saturated lattice (the kernel of an integer matrix
    always is); with no rows it is all of Z^n.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return [tuple(row) for row in _identity(n)]
    _, D, V = smith_normal_form(rows)
    rank = sum(1 for i in range(min(len(rows), n)) if D[i][i])
    return [tuple(V[i][j] for i in range(n)) for j in range(rank, n)]


def saturate_rows(rows, n):
    """Basis of the saturation (Q-span intersected with Z^n) of a row lattice."""
    complement = integer_kernel(rows, n)
    return integer_kernel(complement, n)


def rational_rank(rows, n):
    """Rank over Q of a set of integer vectors."""
    return len(hermite_row_basis(rows, n))


def int_det(mat):
    """Determinant of a square integer matrix (Bareiss, exact)."""
    n = len(mat)
    if n == 0:
        return 1
    A = [[int(x) for x in row] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rational_inverse(mat):
    """Inverse of a square matrix as Fractions, or None if singular."""
    n = len(mat)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if A[i][col]:
                piv = i
                break
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for i in range(n):
            if i != col and A[i][col]:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[col])]
    return [row[n:] for row in A]


def canonical_weight(w):
    """Lexicographically-positive representative of {w, -w}."""
    t = tuple(int(x) for x in w)
    neg = tuple(-x for x in t)
    return t if t >= neg else neg


def weights_collinear(w1, w2):
    """Linear dependence over Q of two integer vectors."""
    n = len(w1)
    for i in range(n):
        for j in range(i + 1, n):
            if w1[i] * w2[j] != w1[j] * w2[i]:
                return False
    return True


class TorusSubgroup:
    """A closed subgroup of T^r in canonical character-matrix form.

    The subgroup is {t : chi_w(t) = 1 for every row w of char_matrix}; the
    rows form the Hermite basis of the annihilator lattice, listed in
    lexicographic order, so equality of subgroups is structural equality.
    """

    __slots__ = ("rank", "char_matrix", "_echelon",
                 "dim_identity_component", "torsion_invariants")

    def __init__(self, rank, char_rows=()):
        rank = int(rank)
        if rank < 1:
            raise ValueError("ambient rank must be positive")
        rows = [tuple(int(x) for x in r) for r in char_rows]
        for r in rows:
            if len(r) != rank:
                raise ValueError("character length %d does not match rank %d" % (len(r), rank))
        echelon = hermite_row_basis(rows, rank)
        self.rank = rank
        self._echelon = tuple(echelon)
        self.char_matrix = tuple(sorted(echelon))
        self.dim_identity_component = rank - len(echelon)
        if echelon:
            diag = smith_invariants([list(r) for r in echelon])
            self.torsion_invariants = tuple(d for d in diag if d > 1)
        else:
            self.torsion_invariants = ()

    @classmethod
    def full_torus(cls, rank):
        return cls(rank, ())

    @classmethod
    def trivial(cls, rank):
        return cls(rank, _identity(rank))

    def is_full_torus(self):
        return not self.char_matrix

    def is_trivial(self):
        return self.dim_identity_component == 0 and not self.torsion_invariants

    def contains(self, other):
        """Whether other is a subgroup of self."""
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        # H2 <= H1  iff  Ann(H1) <= Ann(H2)
        return all(lattice_member(other._echelon, row) for row in self._echelon)

    def intersect(self, other):
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return TorusSubgroup(self.rank, self.char_matrix + other.char_matrix)

    def identity_component(self):
        """The connected subtorus of self (saturate the annihilator)."""
        return TorusSubgroup(self.rank, saturate_rows(self._echelon, self.rank))

    def __eq__(self, other):
        return (isinstance(other, TorusSubgroup)
                and self.rank == other.rank
                and self.char_matrix == other.char_matrix)

    def __hash__(self):
        return hash((self.rank, self.char_matrix))

    def __repr__(self):
        return "TorusSubgroup(rank=%d, char_matrix=%r)" % (self.rank, self.char_matrix)


def kernel_of_weights(weights, rank):
    """Canonical form of the intersection of the character kernels.

    The empty set yields the full torus.
    """
    weights = list(weights)
    for w in weights:
        if len(w) != rank:
            raise ValueError("weight length %d does not match rank %d" % (len(w), rank))
    return TorusSubgroup(rank, weights)


def vanishes_on(w, subgroup):
    """Whether the character w restricts trivially to the subgroup."""
    if len(w) != subgroup.rank:
        raise ValueError("rank mismatch")
    return lattice_member(subgroup._echelon, w)


def intersect(h1, h2):
    return h1.intersect(h2)


def identity_component(h):
    return h.identity_component()


def subgroup_contains(h1, h2):
    """Whether h2 is contained in h1."""
    return h1.contains(h2)
