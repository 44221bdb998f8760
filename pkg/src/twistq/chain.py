"""Twisted chain and cochain complexes of a finite quandle.

The degree-n chain group is the free module over the coefficient ring on
n-tuples of quandle elements, with boundary

    d(x_1, ..., x_n) = sum_{i=1..n} (-1)^i [ T (x_1, ..., ^x_i, ..., x_n)
        - (x_1 * x_i, ..., x_{i-1} * x_i, x_{i+1}, ..., x_n) ]

and d == 0 in degrees <= 1.  Three variants are supported: "TR" uses all
tuples, "TD" the degenerate ones (some x_i == x_{i+1}), and "TQ" the
quotient, realized on the non-degenerate tuples by deleting degenerate
terms from the boundary.

Integer matrices for the homology engine are blocks of size d x d (d the
ring degree over Z_n), each block a polynomial in T evaluated at the
companion matrix of the defining polynomial.
"""

import itertools
import os
from dataclasses import dataclass, replace

from .coeff import RingError
from .exactlin import IntMatrix, homology_segment, solve_linear
from .quandle import FiniteQuandle

__all__ = [
    "ComplexSpec",
    "Chain",
    "Cochain",
    "basis_tuples",
    "is_degenerate",
    "boundary",
    "boundary_matrix",
    "relations_matrix",
    "t_matrix",
    "delta_matrix",
    "homology",
    "cohomology",
    "delta",
    "is_cocycle",
    "is_coboundary",
    "pair",
    "brute_force_homology",
    "parse_cochain",
    "render_cochain",
]

VARIANTS = ("TR", "TD", "TQ")

_MAX_BASIS = int(os.environ.get("TWISTQ_MAX_BASIS", "20000"))
_MAX_BRUTE = int(os.environ.get("TWISTQ_MAX_BRUTE", "729"))


@dataclass(frozen=True)
class ComplexSpec:
    x: FiniteQuandle
    ring: object
    variant: str
    degree: int

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError("variant must be one of %s" % (VARIANTS,))
        if self.degree < 0:
            raise ValueError("degree must be >= 0")


class _FormalSum:
    """Shared behaviour of chains and cochains: tuple -> ring element."""

    def __init__(self, ring, degree, values=None):
        self.ring = ring
        self.degree = degree
        self.values = {}
        if values:
            for key, v in dict(values).items():
                self.add_term(key, v)

    def add_term(self, key, v):
        key = tuple(int(k) for k in key)
        if len(key) != self.degree:
            raise ValueError("key %r has wrong length for degree %d"
                             % (key, self.degree))
        s = self.ring.add(self.values.get(key, self.ring.zero()), v)
        if self.ring.is_zero(s):
            self.values.pop(key, None)
        else:
            self.values[key] = s

    def __call__(self, key):
        return self.values.get(tuple(key), self.ring.zero())

    def is_zero(self):
        return not self.values

    def support(self):
        return sorted(self.values)

    def __eq__(self, other):
        return (type(self) is type(other) and self.ring == other.ring
                and self.degree == other.degree and self.values == other.values)

    def __repr__(self):
        return "%s(%s)" % (type(self).__name__, render_cochain(self).strip())


class Chain(_FormalSum):
    pass


class Cochain(_FormalSum):
    pass


def is_degenerate(key):
    return any(key[i] == key[i + 1] for i in range(len(key) - 1))


def basis_tuples(x, n, variant):
    """Basis tuples for the degree-n group, in lexicographic order."""
    if n == 0:
        return [] if variant == "TD" else [()]
    count = x.size ** n
    if count > _MAX_BASIS:
        raise RingError(
            "degree-%d basis has %d tuples (limit %d; set TWISTQ_MAX_BASIS)"
            % (n, count, _MAX_BASIS))
    allt = itertools.product(range(x.size), repeat=n)
    if variant == "TR":
        return list(allt)
    if variant == "TD":
        return [t for t in allt if is_degenerate(t)]
    return [t for t in allt if not is_degenerate(t)]


def _boundary_terms(x, key):
    """The boundary of a basis tuple as [(tuple, t_exponent, sign), ...],
    meaning sign * T^t_exponent * tuple.  No variant filtering."""
    n = len(key)
    out = []
    if n <= 1:
        return out
    for i in range(1, n + 1):
        sign = -1 if i % 2 else 1
        omitted = key[:i - 1] + key[i:]
        acted = tuple(x.op(key[j], key[i - 1]) for j in range(i - 1)) + key[i:]
        out.append((omitted, 1, sign))
        out.append((acted, 0, -sign))
    return out


def boundary(spec, c):
    """Boundary of a chain of the spec's degree; result has degree - 1."""
    if c.degree != spec.degree:
        raise ValueError("chain degree %d != spec degree %d"
                         % (c.degree, spec.degree))
    out = Chain(spec.ring, spec.degree - 1 if spec.degree else 0)
    if spec.degree <= 1:
        return out
    for key, coef in c.values.items():
        if spec.variant == "TQ" and is_degenerate(key):
            raise ValueError("degenerate tuple %r in a TQ chain" % (key,))
        for tup, texp, sign in _boundary_terms(spec.x, key):
            if spec.variant == "TQ" and is_degenerate(tup):
                continue
            term = spec.ring.t_pow(coef, texp)
            if sign < 0:
                term = spec.ring.neg(term)
            out.add_term(tup, term)
    return out


def _boundary_polys(x, n, variant):
    """Boundary matrix of degree n over the Laurent ring, as a dict
    {(target_tuple, source_tuple): {t_exponent: int}}."""
    polys = {}
    for src in basis_tuples(x, n, variant):
        for tup, texp, sign in _boundary_terms(x, src):
            if variant == "TQ" and is_degenerate(tup):
                continue
            p = polys.setdefault((tup, src), {})
            p[texp] = p.get(texp, 0) + sign
    return polys


def _poly_block(ring, poly, companion, cpow_cache):
    d = ring.degree
    block = [[0] * d for _ in range(d)]
    for exp, c in poly.items():
        if c == 0:
            continue
        mat = cpow_cache.setdefault(exp, None)
        if mat is None:
            mat = IntMatrix.identity(d)
            for _ in range(exp):
                mat = IntMatrix(d, d, companion) @ mat
            cpow_cache[exp] = mat
        for i in range(d):
            for j in range(d):
                block[i][j] += c * mat.data[i][j]
    return block


def _matrix_from_polys(ring, polys, target_basis, source_basis):
    d = ring.degree
    tindex = {t: i for i, t in enumerate(target_basis)}
    sindex = {s: j for j, s in enumerate(source_basis)}
    M = IntMatrix(len(target_basis) * d, len(source_basis) * d)
    comp = ring.companion_matrix()
    cache = {0: IntMatrix.identity(d)}
    for (tgt, src), poly in polys.items():
        if not any(poly.values()):
            # fully cancelled entry; its target may even lie outside the
            # variant's basis (boundaries of degenerate tuples)
            continue
        block = _poly_block(ring, poly, comp, cache)
        r0, c0 = tindex[tgt] * d, sindex[src] * d
        for i in range(d):
            for j in range(d):
                M.data[r0 + i][c0 + j] = block[i][j]
    return M


def boundary_matrix(spec):
    """Integer matrix of the boundary C_n -> C_{n-1} in block coordinates
    (basis tuple index major, ring coefficient index minor)."""
    n = spec.degree
    src = basis_tuples(spec.x, n, spec.variant)
    tgt = basis_tuples(spec.x, n - 1, spec.variant) if n >= 1 else []
    if n <= 1:
        return IntMatrix(len(tgt) * spec.ring.degree,
                         len(src) * spec.ring.degree)
    polys = _boundary_polys(spec.x, n, spec.variant)
    return _matrix_from_polys(spec.ring, polys, tgt, src)


def relations_matrix(spec):
    """Columns presenting the coefficient torsion of the degree-n group."""
    r = len(basis_tuples(spec.x, spec.degree, spec.variant)) * spec.ring.degree
    if spec.ring.modulus == 0:
        return IntMatrix(r, 0)
    return IntMatrix.scalar(r, spec.ring.modulus)


def t_matrix(spec):
    """The T-action on the degree-n chain coordinates (block diagonal)."""
    d = spec.ring.degree
    basis = basis_tuples(spec.x, spec.degree, spec.variant)
    M = IntMatrix(len(basis) * d, len(basis) * d)
    comp = spec.ring.companion_matrix()
    for b in range(len(basis)):
        for i in range(d):
            for j in range(d):
                M.data[b * d + i][b * d + j] = comp[i][j]
    return M


def delta_matrix(spec):
    """Integer matrix of the coboundary C^n -> C^{n+1},
    (delta f)(c) = (-1)^{n+1} f(d c) for an (n+1)-chain c."""
    n = spec.degree
    src = basis_tuples(spec.x, n, spec.variant)
    tgt = basis_tuples(spec.x, n + 1, spec.variant)
    if n + 1 <= 1:
        return IntMatrix(len(tgt) * spec.ring.degree,
                         len(src) * spec.ring.degree)
    sign = 1 if n % 2 else -1
    polys = {}
    for (low, high), poly in _boundary_polys(spec.x, n + 1, spec.variant).items():
        polys[(high, low)] = {e: sign * c for e, c in poly.items()}
    return _matrix_from_polys(spec.ring, polys, tgt, src)


def _vector(spec, fs, n=None):
    basis = basis_tuples(spec.x, spec.degree if n is None else n, spec.variant)
    d = spec.ring.degree
    vec = []
    for t in basis:
        vec.extend(fs(t))
    covered = set(basis)
    for key in fs.values:
        if key not in covered and not spec.ring.is_zero(fs.values[key]):
            raise ValueError("value on %r outside the %s basis"
                             % (key, spec.variant))
    return vec


def _from_vector(spec, vec, n, cls):
    basis = basis_tuples(spec.x, n, spec.variant)
    d = spec.ring.degree
    out = cls(spec.ring, n)
    for i, t in enumerate(basis):
        v = tuple(c % spec.ring.modulus if spec.ring.modulus else c
                  for c in vec[i * d:(i + 1) * d])
        if not spec.ring.is_zero(v):
            out.add_term(t, v)
    return out


def homology(spec):
    """Degree-n twisted homology as a ModuleInfo."""
    n = spec.degree
    d_out = boundary_matrix(spec)
    d_in = boundary_matrix(replace(spec, degree=n + 1))
    return homology_segment(
        d_in, d_out, relations_matrix(spec), t_matrix(spec),
        target_relations=relations_matrix(replace(spec, degree=max(n - 1, 0)))
        if n >= 1 else IntMatrix(d_out.rows, 0))


def _cocycle_lattice(spec):
    from .exactlin import kernel_basis, lattice_basis
    d_out = delta_matrix(spec)
    up = replace(spec, degree=spec.degree + 1)
    target_rel = relations_matrix(up)
    if d_out.rows == 0:
        r = d_out.cols
        return IntMatrix.identity(r).columns()
    ext = d_out.hstack(target_rel)
    proj = [col[:d_out.cols] for col in kernel_basis(ext)]
    return lattice_basis(proj, d_out.cols)


def cohomology(spec):
    """Degree-n twisted cohomology; returns (ModuleInfo, cocycle_gens)
    where cocycle_gens generate the group of n-cocycles."""
    n = spec.degree
    d_out = delta_matrix(spec)
    if n == 0:
        d_in = IntMatrix(d_out.cols, 0)
    else:
        d_in = delta_matrix(replace(spec, degree=n - 1))
    info = homology_segment(
        d_in, d_out, relations_matrix(spec), t_matrix(spec),
        target_relations=relations_matrix(replace(spec, degree=n + 1)))
    gens = []
    for col in _cocycle_lattice(spec):
        f = _from_vector(spec, col, n, Cochain)
        if not f.is_zero():
            gens.append(f)
    return info, gens


def delta(spec, f):
    """Coboundary of a degree-n cochain; the result has degree n + 1."""
    if f.degree != spec.degree:
        raise ValueError("cochain degree %d != spec degree %d"
                         % (f.degree, spec.degree))
    n = spec.degree
    out = Cochain(spec.ring, n + 1)
    sign = 1 if n % 2 else -1
    for key in basis_tuples(spec.x, n + 1, spec.variant):
        acc = spec.ring.zero()
        for tup, texp, s in _boundary_terms(spec.x, key):
            v = f(tup)
            if spec.ring.is_zero(v):
                continue
            v = spec.ring.t_pow(v, texp)
            acc = spec.ring.add(acc, v) if s * sign > 0 else spec.ring.sub(acc, v)
        if not spec.ring.is_zero(acc):
            out.add_term(key, acc)
    return out


def is_cocycle(spec, f):
    """Check delta f == 0 (and, for TQ, vanishing on degenerate tuples).
    Returns (ok, witness_tuple_or_None)."""
    if spec.variant == "TQ":
        for key, v in f.values.items():
            if is_degenerate(key) and not spec.ring.is_zero(v):
                return False, key
    df = delta(spec, f)
    if df.is_zero():
        return True, None
    return False, df.support()[0]


def is_coboundary(spec, f):
    """Find g of degree n - 1 with delta g == f, or return None."""
    n = spec.degree
    if n == 0:
        return None if not f.is_zero() else Cochain(spec.ring, 0)
    low = replace(spec, degree=n - 1)
    M = delta_matrix(low)
    b = _vector(spec, f)
    x = solve_linear(M, b, spec.ring.modulus)
    if x is None:
        return None
    g = _from_vector(low, x, n - 1, Cochain)
    assert delta(low, g) == f
    return g


def pair(spec, f, c):
    """Evaluation <f, c> = sum_t c_t f(t) in the coefficient ring."""
    acc = spec.ring.zero()
    for key, coef in c.values.items():
        acc = spec.ring.add(acc, spec.ring.mul(coef, f(key)))
    return acc


# -- brute-force oracle ----------------------------------------------------

def _subgroup_closure(gens, modulus):
    """All elements of the subgroup of Z_m^k generated by `gens`."""
    zero = tuple(0 for _ in gens[0]) if gens else ()
    seen = {zero}
    frontier = [zero]
    while frontier:
        base = frontier.pop()
        for g in gens:
            nxt = tuple((a + b) % modulus for a, b in zip(base, g))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def _factor(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _abelian_invariants(quotient_reps, add, zero):
    """Invariant factors of a finite abelian group given by an element
    list and an addition callback, via torsion counting: the number of
    cyclic p-factors of exponent >= j is log_p #{x : p^j x == 0} minus
    the same count for j - 1."""
    order = len(quotient_reps)

    def scaled(x, k):
        acc = zero
        for _ in range(k):
            acc = add(acc, x)
        return acc

    per_prime = {}
    for p in _factor(order):
        logs = [0]  # log_p of the p^j-torsion count, j = 0, 1, ...
        while True:
            j = len(logs)
            c = sum(1 for x in quotient_reps if scaled(x, p ** j) == zero)
            m = 0
            while p ** (m + 1) <= c:
                m += 1
            assert p ** m == c, "torsion count is not a power of p"
            if m == logs[-1]:
                break
            logs.append(m)
        ge = [logs[j] - logs[j - 1] for j in range(1, len(logs))]
        factors = []  # prime powers, largest first
        for j in range(len(ge), 0, -1):
            exactly = ge[j - 1] - (ge[j] if j < len(ge) else 0)
            factors.extend([p ** j] * exactly)
        per_prime[p] = factors
    width = max((len(v) for v in per_prime.values()), default=0)
    chain = []
    for i in range(width):
        f = 1
        for lst in per_prime.values():
            if i < len(lst):
                f *= lst[i]
        chain.append(f)
    return tuple(c for c in reversed(chain) if c != 1)


def brute_force_homology(spec):
    """Homology by full enumeration of the (small) middle chain group.

    Independent of the Smith normal form engine: cycles are found by
    testing every chain, boundaries by subgroup closure, and the group
    structure of the quotient by torsion counting.  Only usable for
    finite coefficients and small chain groups (TWISTQ_MAX_BRUTE).
    """
    ring, n = spec.ring, spec.degree
    if ring.modulus == 0:
        raise RingError("brute-force oracle needs finite coefficients")
    m = ring.modulus
    basis = basis_tuples(spec.x, n, spec.variant)
    k = len(basis) * ring.degree
    total = m ** k
    if total > _MAX_BRUTE:
        raise RingError("chain group has %d elements (limit %d)"
                        % (total, _MAX_BRUTE))
    d_out = boundary_matrix(spec)
    d_in = boundary_matrix(replace(spec, degree=n + 1))

    cycles = []
    for vec in itertools.product(range(m), repeat=k):
        img = d_out @ list(vec)
        if all(v % m == 0 for v in img):
            cycles.append(vec)

    bcols = [tuple(v % m for v in d_in.column(j)) for j in range(d_in.cols)]
    bcols = [c for c in bcols if any(c)]
    boundaries = (_subgroup_closure(bcols, m) if bcols and k
                  else {tuple([0] * k)})

    def canon(x):
        return min(tuple((a + b) % m for a, b in zip(x, off))
                   for off in boundaries)

    def add(a, b):
        return canon(tuple((u + v) % m for u, v in zip(a, b)))

    from .exactlin import ModuleInfo
    reps = sorted({canon(z) for z in cycles})
    if k == 0 or len(reps) <= 1:
        return ModuleInfo((), [], [])
    zero = canon(tuple([0] * k))
    factors = _abelian_invariants(reps, add, zero)
    return ModuleInfo(factors, [], [])


# -- cochain text ----------------------------------------------------------

def parse_cochain(ring, text, degree=None):
    """Parse lines of the form 'x1,x2,...,xn -> ringElem'."""
    from .coeff import parse_poly
    out = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lhs, sep, rhs = line.partition("->")
        if not sep:
            raise ValueError("missing '->' in cochain line %r" % raw)
        key = tuple(int(v) for v in lhs.strip().split(","))
        if out is None:
            out = Cochain(ring, degree if degree is not None else len(key))
        out.add_term(key, ring.reduce(parse_poly(rhs.strip())))
    if out is None:
        if degree is None:
            raise ValueError("empty cochain text needs an explicit degree")
        out = Cochain(ring, degree)
    return out


def render_cochain(fs):
    from .coeff import render_poly
    lines = []
    for key in sorted(fs.values):
        lines.append("%s -> %s" % (",".join(str(v) for v in key),
                                   render_poly(fs.values[key])))
    return "\n".join(lines) + ("\n" if lines else "")
