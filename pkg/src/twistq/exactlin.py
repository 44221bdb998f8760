"""Exact integer linear algebra: Smith normal form and homology of
finitely presented abelian groups.

Matrices carry explicit shape so that zero-row / zero-column maps at the
ends of a chain complex stay well defined.  Everything is plain Python
integers, so nothing overflows.
"""

__all__ = [
    "IntMatrix",
    "smith_normal_form",
    "kernel_basis",
    "solve_linear",
    "lattice_basis",
    "ModuleInfo",
    "homology_segment",
    "NotAComplexError",
]


class NotAComplexError(ValueError):
    pass


class IntMatrix:
    def __init__(self, rows, cols, data=None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[0] * cols for _ in range(rows)]
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError("shape mismatch")
            self.data = [list(r) for r in data]

    @staticmethod
    def identity(n):
        m = IntMatrix(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    @staticmethod
    def scalar(n, c):
        m = IntMatrix(n, n)
        for i in range(n):
            m.data[i][i] = c
        return m

    @staticmethod
    def from_columns(cols, rows):
        m = IntMatrix(rows, len(cols))
        for j, col in enumerate(cols):
            if len(col) != rows:
                raise ValueError("column length mismatch")
            for i in range(rows):
                m.data[i][j] = col[i]
        return m

    def column(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def copy(self):
        return IntMatrix(self.rows, self.cols, self.data)

    def hstack(self, other):
        if other.rows != self.rows:
            raise ValueError("row count mismatch")
        return IntMatrix(self.rows, self.cols + other.cols,
                         [a + b for a, b in zip(self.data, other.data)])

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in product")
            out = IntMatrix(self.rows, other.cols)
            for i in range(self.rows):
                row = self.data[i]
                orow = out.data[i]
                for k in range(self.cols):
                    a = row[k]
                    if a:
                        brow = other.data[k]
                        for j in range(other.cols):
                            orow[j] += a * brow[j]
            return out
        # vector
        if len(other) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum(r[j] * other[j] for j in range(self.cols))
                for r in self.data]

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def is_zero(self):
        return all(all(c == 0 for c in row) for row in self.data)

    def __repr__(self):
        return "IntMatrix(%d, %d, %r)" % (self.rows, self.cols, self.data)


def _snf_full(M):
    """Return (D, U, V, Uinv, Vinv) with U @ M @ V == D in Smith form.

    Pivot choice is deterministic: the nonzero entry of least magnitude
    in the remaining block, ties broken in row-major order.
    """
    A = [row[:] for row in M.data]
    n, m = M.rows, M.cols
    U = IntMatrix.identity(n)
    Ui = IntMatrix.identity(n)
    V = IntMatrix.identity(m)
    Vi = IntMatrix.identity(m)

    def row_swap(i, j):
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        U.data[i], U.data[j] = U.data[j], U.data[i]
        for r in Ui.data:  # inverse: swap columns
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        if i == j:
            return
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V.data:
            r[i], r[j] = r[j], r[i]
        Vi.data[i], Vi.data[j] = Vi.data[j], Vi.data[i]

    def row_add(i, j, q):
        # row_i += q * row_j; inverse column op on Ui: col_j -= q * col_i
        if q == 0:
            return
        A[i] = [a + q * b for a, b in zip(A[i], A[j])]
        U.data[i] = [a + q * b for a, b in zip(U.data[i], U.data[j])]
        for r in Ui.data:
            r[j] -= q * r[i]

    def col_add(i, j, q):
        # col_i += q * col_j
        if q == 0:
            return
        for r in A:
            r[i] += q * r[j]
        for r in V.data:
            r[i] += q * r[j]
        Vi.data[j] = [a - q * b for a, b in zip(Vi.data[j], Vi.data[i])]

    def row_negate(i):
        A[i] = [-a for a in A[i]]
        U.data[i] = [-a for a in U.data[i]]
        for r in Ui.data:
            r[i] = -r[i]

    def find_pivot(t):
        best = None
        for i in range(t, n):
            for j in range(t, m):
                a = A[i][j]
                if a and (best is None or abs(a) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        return best

    def clear_at(t):
        """Make A[t][t] the gcd of its row/column and zero the rest."""
        while True:
            piv = find_pivot(t)
            if piv is None:
                return False
            row_swap(t, piv[0])
            col_swap(t, piv[1])
            dirty = False
            for i in range(t + 1, n):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    row_add(i, t, -q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, m):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_add(j, t, -q)
                    if A[t][j]:
                        dirty = True
            if not dirty:
                return True

    t = 0
    while t < min(n, m) and clear_at(t):
        t += 1
    rank = t

    # nonnegative diagonal
    for i in range(rank):
        if A[i][i] < 0:
            row_negate(i)

    # enforce the divisibility chain d_1 | d_2 | ... | d_rank
    def fix_pair(i):
        # 2x2 Smith form of rows/cols i, i+1 after coupling the columns;
        # turns diag(a, b) into diag(gcd, lcm) without touching the rest
        col_add(i, i + 1, 1)
        while A[i + 1][i] or A[i][i + 1]:
            if A[i + 1][i]:
                q = A[i + 1][i] // A[i][i]
                row_add(i + 1, i, -q)
                if A[i + 1][i]:
                    row_swap(i, i + 1)
                continue
            q = A[i][i + 1] // A[i][i]
            col_add(i + 1, i, -q)
            if A[i][i + 1]:
                col_swap(i, i + 1)
        if A[i][i] < 0:
            row_negate(i)
        if A[i + 1][i + 1] < 0:
            row_negate(i + 1)

    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            if A[i + 1][i + 1] % A[i][i]:
                fix_pair(i)
                changed = True

    return IntMatrix(n, m, A), U, V, Ui, Vi


def smith_normal_form(M):
    """Smith normal form: returns (D, U, V) with U @ M @ V == D."""
    D, U, V, _, _ = _snf_full(M)
    return D, U, V


def kernel_basis(M):
    """Basis columns of the integer kernel {x : M @ x == 0}."""
    D, _, V, _, _ = _snf_full(M)
    out = []
    for j in range(M.cols):
        if j >= M.rows or D.data[j][j] == 0:
            out.append(V.column(j))
    return out


def _solve_z(M, b):
    """One integer solution of M @ x == b, or None (free choices are 0)."""
    D, U, V, _, _ = _snf_full(M)
    c = U @ b
    y = [0] * M.cols
    for i in range(M.rows):
        d = D.data[i][i] if i < M.cols else 0
        if d == 0:
            if c[i]:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return V @ y


def solve_linear(M, b, modulus=0):
    """Solve M @ x == b over Z (modulus 0) or over Z_modulus.

    Returns a solution vector or None; free coordinates are set to 0 and
    mod-n solutions are reduced to canonical residues, so the result is
    deterministic.
    """
    if modulus == 0:
        return _solve_z(M, b)
    ext = M.hstack(IntMatrix.scalar(M.rows, modulus))
    x = _solve_z(ext, b)
    if x is None:
        return None
    return [v % modulus for v in x[:M.cols]]


def lattice_basis(cols, dim):
    """Basis of the lattice in Z^dim spanned by the given columns."""
    if not cols:
        return []
    P = IntMatrix.from_columns(cols, dim)
    D, _, _, Ui, _ = _snf_full(P)
    out = []
    for j in range(min(P.rows, P.cols)):
        d = D.data[j][j]
        if d:
            out.append([d * Ui.data[i][j] for i in range(dim)])
    return out


class ModuleInfo:
    """A finitely generated abelian group with a T-action.

    invariant_factors: tuple (d_1, ..., d_k), each d_i | d_{i+1}, with 0
    meaning a free summand; factors equal to 1 are dropped.
    generators: cycle representatives (integer vectors in the ambient
    chain coordinates) mapping to the summand generators.
    t_action: matrix of the T-action in the generator basis, entries
    reduced modulo the row's invariant factor.
    """

    def __init__(self, invariant_factors, generators, t_action):
        self.invariant_factors = tuple(invariant_factors)
        self.generators = [list(g) for g in generators]
        self.t_action = [list(r) for r in t_action]

    def is_trivial(self):
        return not self.invariant_factors

    def order(self):
        if any(d == 0 for d in self.invariant_factors):
            return None
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def describe(self):
        if not self.invariant_factors:
            return "0"
        parts = ["Z" if d == 0 else "Z_%d" % d for d in self.invariant_factors]
        return " x ".join(parts)

    def __repr__(self):
        return "ModuleInfo(%s)" % self.describe()


def _detect_scalar_relations(rel):
    if rel.cols == 0:
        return 0
    if rel.rows == rel.cols:
        c = rel.data[0][0]
        if rel == IntMatrix.scalar(rel.rows, c):
            return c
    return None


def homology_segment(d_in, d_out, relations, t_mat, target_relations=None):
    """Homology ker(d_out) / im(d_in) of a segment of free Z-modules.

    The middle group is Z^r modulo the columns of `relations`; the target
    is Z^{r'} modulo `target_relations` (defaulting to the same scalar
    relations when `relations` is c * identity).  `t_mat` is the T-action
    on the middle coordinates.
    """
    r = d_out.cols
    if d_in.rows != r or relations.rows != r:
        raise ValueError("middle rank mismatch")
    if target_relations is None:
        c = _detect_scalar_relations(relations)
        if c is None:
            raise ValueError("target_relations required for non-scalar relations")
        target_relations = (IntMatrix(d_out.rows, 0) if c == 0
                            else IntMatrix.scalar(d_out.rows, c))

    # d_out . d_in must vanish modulo the target relations
    comp = d_out @ d_in
    for j in range(comp.cols):
        col = comp.column(j)
        if target_relations.cols == 0:
            ok = all(v == 0 for v in col)
        else:
            ok = _solve_z(target_relations, col) is not None
        if not ok:
            raise NotAComplexError("d_out . d_in != 0 at column %d" % j)

    # cycle lattice K = {x in Z^r : d_out x lies in the target relation lattice}
    if d_out.rows == 0:
        kbasis = IntMatrix.identity(r).columns()
    else:
        ext = d_out.hstack(target_relations)
        proj = [col[:r] for col in kernel_basis(ext)]
        kbasis = lattice_basis(proj, r)
    K = IntMatrix.from_columns(kbasis, r)

    # boundaries and relations, in cycle coordinates
    B = d_in.hstack(relations)
    ycols = []
    for j in range(B.cols):
        y = _solve_z(K, B.column(j))
        if y is None:
            raise NotAComplexError("boundary column %d is not a cycle" % j)
        ycols.append(y)
    Y = IntMatrix.from_columns(ycols, K.cols) if ycols else IntMatrix(K.cols, 0)

    D, U, _, Ui, _ = _snf_full(Y)
    factors, gens = [], []
    for i in range(K.cols):
        d = D.data[i][i] if i < min(Y.rows, Y.cols) else 0
        if d == 1:
            continue
        factors.append(d)
        gens.append(K @ Ui.column(i))
    # SNF emits 1s first and 0s last, so `factors` is already a chain

    kept = [i for i in range(K.cols)
            if (D.data[i][i] if i < min(Y.rows, Y.cols) else 0) != 1]
    t_action = [[0] * len(kept) for _ in range(len(kept))]
    for col, g in enumerate(gens):
        v = t_mat @ g
        c = _solve_z(K, v)
        if c is None:
            raise NotAComplexError("T-action does not preserve cycles")
        s = U @ c
        for row, i in enumerate(kept):
            d = factors[row]
            t_action[row][col] = s[i] % d if d else s[i]

    return ModuleInfo(factors, gens, t_action)
