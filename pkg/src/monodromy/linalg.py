"""Dense exact linear algebra over cyclotomic Scalars.

Matrices are immutable row-major tables of :class:`Scalar`.  Subspaces are
stored by their reduced row echelon basis, which makes equality structural.
Pivoting always takes the first nonzero entry in column order, so every
result here is deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import ParseError, PreconditionError, ShapeError, SingularMatrixError
from .exactfield import ONE, ZERO, Polynomial, Scalar, _lcm, _lift, _tables

__all__ = [
    "Matrix",
    "Subspace",
    "SpectrumSpec",
    "rref",
    "rank",
    "kernel_basis",
    "subspace_intersect",
    "char_poly",
    "poly_from_roots",
    "companion",
    "krylov_cyclic_vector",
    "algebra_dimension",
    "sylvester_kernel",
]


def _sc(x):
    return x if isinstance(x, Scalar) else Scalar(x)


class Matrix:
    """Immutable dense matrix of Scalars.

    >>> Matrix([[0, 1], [1, 0]]) @ Matrix([[0, 1], [1, 0]]) == Matrix.identity(2)
    True
    """

    __slots__ = ("rows", "cols", "_e", "_hash")

    def __init__(self, entries):
        rows = [tuple(_sc(x) for x in row) for row in entries]
        if not rows or not rows[0]:
            raise ShapeError("a matrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = width
        self._e = tuple(rows)
        self._hash = None

    @classmethod
    def _wrap(cls, rows):
        obj = object.__new__(cls)
        obj._e = tuple(tuple(r) for r in rows)
        obj.rows = len(obj._e)
        obj.cols = len(obj._e[0])
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, n):
        return cls._wrap([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r, c=None):
        c = r if c is None else c
        return cls._wrap([[ZERO] * c for _ in range(r)])

    @classmethod
    def diag(cls, values):
        vals = [_sc(v) for v in values]
        n = len(vals)
        return cls._wrap([[vals[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns):
        columns = [tuple(_sc(x) for x in c) for c in columns]
        return cls._wrap([list(r) for r in zip(*columns)])

    # -- access ------------------------------------------------------------

    @property
    def shape(self):
        return self.rows, self.cols

    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self._e[i][j]

    def row(self, i):
        return self._e[i]

    def col(self, j):
        return tuple(r[j] for r in self._e)

    def tolist(self):
        return [list(r) for r in self._e]

    def flatten(self):
        return tuple(x for r in self._e for x in r)

    @classmethod
    def unflatten(cls, vec, n):
        return cls._wrap([vec[i * n:(i + 1) * n] for i in range(n)])

    @property
    def T(self):
        return Matrix._wrap(list(zip(*self._e)))

    def trace(self):
        if not self.is_square():
            raise ShapeError("trace of a non-square matrix")
        acc = ZERO
        for i in range(self.rows):
            acc = acc + self._e[i][i]
        return acc

    # -- arithmetic --------------------------------------------------------

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same(other)
        return Matrix._wrap([[a + b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)])

    def __sub__(self, other):
        self._check_same(other)
        return Matrix._wrap([[a - b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)])

    def __neg__(self):
        return Matrix._wrap([[-a for a in r] for r in self._e])

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        c = _sc(c)
        return Matrix._wrap([[a * c for a in r] for r in self._e])

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            cols = [other.col(j) for j in range(other.cols)]
            return Matrix._wrap([[_dot(r, c) for c in cols] for r in self._e])
        vec = tuple(other)
        if len(vec) != self.cols:
            raise ShapeError(f"cannot apply {self.shape} matrix to a vector of length {len(vec)}")
        return tuple(_dot(r, vec) for r in self._e)

    def __pow__(self, k):
        if not self.is_square():
            raise ShapeError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Matrix.identity(self.rows), self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._e == other._e

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._e)
        return self._hash

    def is_zero(self):
        return all(x.is_zero() for r in self._e for x in r)

    def det(self):
        if not self.is_square():
            raise ShapeError("determinant of a non-square matrix")
        m = [list(r) for r in self._e]
        n = self.rows
        det = ONE
        for col in range(n):
            piv = next((i for i in range(col, n) if not m[i][col].is_zero()), None)
            if piv is None:
                return ZERO
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            p = m[col][col]
            det = det * p
            inv = p.inverse()
            for i in range(col + 1, n):
                f = m[i][col]
                if not f.is_zero():
                    f = f * inv
                    m[i] = [a - f * b if not b.is_zero() else a for a, b in zip(m[i], m[col])]
        return det

    def is_invertible(self):
        return self.is_square() and not self.det().is_zero()

    def inverse(self):
        """Gauss-Jordan inverse; raises SingularMatrixError if det = 0."""
        if not self.is_square():
            raise ShapeError("inverse of a non-square matrix")
        n = self.rows
        aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(self._e)]
        red, pivots = _rref_rows(aug, limit=n)
        if pivots[:n] != list(range(n)):
            raise SingularMatrixError("matrix is singular")
        return Matrix._wrap([r[n:] for r in red[:n]])

    # -- display / serialization ------------------------------------------

    def __repr__(self):
        return f"Matrix({[[str(x) for x in r] for r in self._e]})"

    def to_json(self):
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[x.to_json() for x in r] for r in self._e]}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, list):
            obj = {"entries": obj}
        if not isinstance(obj, dict) or "entries" not in obj:
            raise ParseError(f"matrix must be {{'rows', 'cols', 'entries'}}, got {obj!r}")
        entries = obj["entries"]
        if not isinstance(entries, list) or not entries or not all(isinstance(r, list) for r in entries):
            raise ParseError("matrix entries must be a nonempty list of rows")
        m = cls([[Scalar.from_json(x) for x in r] for r in entries])
        if obj.get("rows", m.rows) != m.rows or obj.get("cols", m.cols) != m.cols:
            raise ParseError(f"declared shape ({obj.get('rows')}, {obj.get('cols')}) "
                             f"does not match entries {m.shape}")
        return m


def _dot(u, v):
    acc = ZERO
    for a, b in zip(u, v):
        if not a.is_zero() and not b.is_zero():
            acc = acc + a * b
    return acc


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

def _rref_rows(rows, limit=None):
    """Reduced row echelon form of a list of rows; pivots in the first ``limit`` columns.

    All entries are lifted once into Q(zeta_K), K the lcm of their conductors,
    and eliminated there as (integer vector, denominator) pairs; canonical
    Scalars are rebuilt only at the end.
    """
    if not rows:
        return [], []
    k = 1
    for r in rows:
        for x in r:
            if x._n != k and x._n != 1:
                k = _lcm(k, x._n)
    if k == 1:
        m = [[Fraction(x._c[0], x._d) for x in r] for r in rows]
        m, pivots = _eliminate(m, limit, _FracOps)
        return [[Scalar(x) for x in r] for r in m], pivots
    ops = _VecOps(k)
    m = [[ops.lift(x) for x in r] for r in rows]
    m, pivots = _eliminate(m, limit, ops)
    return [[ops.to_scalar(x) for x in r] for r in m], pivots


class _FracOps:
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def is_zero(x):
        return not x

    @staticmethod
    def inverse(x):
        return 1 / x

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def sub(a, b):
        return a - b


class _VecOps:
    """Arithmetic on (coefficient tuple, denominator) pairs in one field Q(zeta_k)."""

    def __init__(self, k):
        self.k = k
        self.tables = _tables(k)
        phi = self.tables.phi
        self.zero = ((0,) * phi, 1)
        self.one = ((1,) + (0,) * (phi - 1), 1)

    def lift(self, x):
        if x._n == self.k:
            return (x._c, x._d)
        return (tuple(_lift(list(x._c), x._n, self.k)), x._d)

    def to_scalar(self, v):
        return Scalar._build(self.k, list(v[0]), v[1])

    @staticmethod
    def is_zero(v):
        return not any(v[0])

    @staticmethod
    def _norm(c, d):
        g = d
        for x in c:
            if x:
                g = gcd(g, x)
                if g == 1:
                    return tuple(c), d
        if g != 1:
            return tuple(x // g for x in c), d // g
        return tuple(c), d

    def mul(self, a, b):
        return self._norm(self.tables.mul(a[0], b[0]), a[1] * b[1])

    def sub(self, a, b):
        da, db = a[1], b[1]
        if da == db:
            return self._norm([x - y for x, y in zip(a[0], b[0])], da)
        return self._norm([x * db - y * da for x, y in zip(a[0], b[0])], da * db)

    def inverse(self, v):
        return self.lift(self.to_scalar(v).inverse())


def _eliminate(m, limit, ops):
    m = [list(r) for r in m]
    ncols = len(m[0]) if limit is None else limit
    is_zero, mul, sub = ops.is_zero, ops.mul, ops.sub
    pivots = []
    r = 0
    for col in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if not is_zero(m[i][col])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        if p != ops.one:
            inv = ops.inverse(p)
            m[r] = [x if is_zero(x) else mul(x, inv) for x in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][col]
                if not is_zero(f):
                    m[i] = [a if is_zero(b) else sub(a, mul(f, b)) for a, b in zip(m[i], prow)]
        pivots.append(col)
        r += 1
    return m, pivots


def rref(M: Matrix):
    """(reduced row echelon form, pivot columns)."""
    red, pivots = _rref_rows(M.tolist())
    return Matrix._wrap(red), pivots


def rank(M: Matrix) -> int:
    return len(_rref_rows(M.tolist())[1])


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

class Subspace:
    """A subspace of K^n held by its canonical (RREF) row basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, vectors=()):
        vecs = [tuple(_sc(x) for x in v) for v in vectors]
        if any(len(v) != ambient_dim for v in vecs):
            raise ShapeError(f"vectors must have length {ambient_dim}")
        self.ambient_dim = ambient_dim
        if vecs:
            red, pivots = _rref_rows(vecs)
            self.basis = tuple(tuple(r) for r in red[:len(pivots)])
        else:
            self.basis = ()

    @classmethod
    def span(cls, *vectors):
        return cls(len(vectors[0]), vectors)

    @classmethod
    def full(cls, n):
        return cls(n, Matrix.identity(n).tolist())

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def coordinate(cls, n, indices):
        """span{e_i : i in indices} (0-based)."""
        eye = Matrix.identity(n)
        return cls(n, [eye.row(i) for i in indices])

    @property
    def dim(self):
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, basis={[[str(x) for x in v] for v in self.basis]})"

    def contains(self, v) -> bool:
        v = tuple(_sc(x) for x in v)
        if len(v) != self.ambient_dim:
            raise ShapeError("vector length does not match ambient dimension")
        return Subspace(self.ambient_dim, self.basis + (v,)).dim == self.dim

    def contains_subspace(self, other) -> bool:
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other):
        _same_ambient(self, other)
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def image(self, A: Matrix) -> "Subspace":
        """A applied to the subspace."""
        return Subspace(A.rows, [A @ v for v in self.basis])

    def preimage(self, A: Matrix) -> "Subspace":
        """{x : A x in self}."""
        # x in preimage iff ann(self) . A x = 0
        ann = self.annihilator()
        if ann.dim == 0:
            return Subspace.full(A.cols)
        rows = Matrix._wrap(ann.basis) @ A
        return kernel_basis(rows)

    def annihilator(self) -> "Subspace":
        """{y : y . v = 0 for all v in self} (bilinear, no conjugation)."""
        if self.dim == 0:
            return Subspace.full(self.ambient_dim)
        return kernel_basis(Matrix._wrap(self.basis))

    def is_invariant(self, A: Matrix) -> bool:
        return all(self.contains(A @ v) for v in self.basis)

    def basis_columns(self) -> Matrix:
        return Matrix.from_columns(self.basis)

    def to_json(self):
        return {"ambient_dim": self.ambient_dim, "dim": self.dim,
                "basis": [[x.to_json() for x in v] for v in self.basis]}

    @classmethod
    def from_json(cls, obj):
        try:
            n = obj["ambient_dim"]
            vecs = [[Scalar.from_json(x) for x in v] for v in obj["basis"]]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed subspace {obj!r}") from exc
        return cls(n, vecs)


def _same_ambient(U, V):
    if U.ambient_dim != V.ambient_dim:
        raise ShapeError(f"ambient dimensions differ: {U.ambient_dim} vs {V.ambient_dim}")


def kernel_basis(M: Matrix) -> Subspace:
    """Right kernel {v : M v = 0} as a canonical Subspace."""
    red, pivots = _rref_rows(M.tolist())
    n = M.cols
    free = [j for j in range(n) if j not in pivots]
    vecs = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        vecs.append(v)
    return Subspace(n, vecs)


def subspace_intersect(U: Subspace, V: Subspace) -> Subspace:
    """U ∩ V, via the kernel of [U^T | -V^T]."""
    _same_ambient(U, V)
    n = U.ambient_dim
    if U.dim == 0 or V.dim == 0:
        return Subspace.zero(n)
    cols = list(U.basis) + [tuple(-x for x in v) for v in V.basis]
    K = kernel_basis(Matrix.from_columns(cols))
    vecs = []
    for coeffs in K.basis:
        w = [ZERO] * n
        for c, u in zip(coeffs[:U.dim], U.basis):
            if not c.is_zero():
                w = [a + c * b for a, b in zip(w, u)]
        vecs.append(w)
    return Subspace(n, vecs)


# ---------------------------------------------------------------------------
# polynomials and companion matrices
# ---------------------------------------------------------------------------

def char_poly(M: Matrix) -> Polynomial:
    """det(X I - M) by the Faddeev-LeVerrier recurrence."""
    if not M.is_square():
        raise ShapeError(f"char_poly needs a square matrix, got {M.shape}")
    n = M.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    eye = Matrix.identity(n)
    Mk = Matrix.zeros(n)
    for k in range(1, n + 1):
        Mk = M @ Mk + eye * coeffs[n - k + 1]
        coeffs[n - k] = -(M @ Mk).trace() / k
    return Polynomial(coeffs)


class SpectrumSpec:
    """A multiset of nonzero eigenvalues, kept in canonical (sorted) order."""

    __slots__ = ("values",)

    def __init__(self, values):
        vals = [_sc(v) for v in values]
        if any(v.is_zero() for v in vals):
            raise PreconditionError("spectrum contains 0; eigenvalues must be nonzero")
        self.values = tuple(sorted(vals, key=Scalar.sort_key))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        if not isinstance(other, SpectrumSpec):
            return NotImplemented
        return self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"SpectrumSpec({[str(v) for v in self.values]})"

    def polynomial(self) -> Polynomial:
        return poly_from_roots(self)

    def is_disjoint(self, other) -> bool:
        return self.polynomial().gcd(other.polynomial()).degree == 0

    def to_json(self):
        return {"values": [v.to_json() for v in self.values]}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, list):
            obj = {"values": obj}
        if not isinstance(obj, dict) or not isinstance(obj.get("values"), list):
            raise ParseError(f"spectrum must be {{'values': [...]}}, got {obj!r}")
        return cls([Scalar.from_json(v) for v in obj["values"]])


def poly_from_roots(spec) -> Polynomial:
    """The monic polynomial prod (X - alpha) over a multiset of nonzero roots."""
    values = [_sc(v) for v in getattr(spec, "values", spec)]
    if not values:
        raise PreconditionError("poly_from_roots needs a nonempty spectrum")
    if any(v.is_zero() for v in values):
        raise PreconditionError("spectrum contains 0; eigenvalues must be nonzero")
    p = Polynomial([ONE])
    for v in values:
        p = p * Polynomial([-v, ONE])
    return p


def companion(p: Polynomial) -> Matrix:
    """Companion matrix: ones on the subdiagonal, last column -(a_0, ..., a_{n-1}).

    For p = X^n + a_{n-1} X^{n-1} + ... + a_0 the last column is
    (-a_0, -a_1, ..., -a_{n-1}) read top to bottom, so char_poly(companion(p)) = p.
    """
    if p.degree < 1:
        raise PreconditionError("companion needs a polynomial of degree >= 1")
    if not p.is_monic():
        raise PreconditionError(f"companion needs a monic polynomial, got {p}")
    if p.coeffs[0].is_zero():
        raise PreconditionError("constant coefficient is 0; companion matrix would be singular")
    n = p.degree
    rows = [[ZERO] * n for _ in range(n)]
    for k in range(1, n):
        rows[k][k - 1] = ONE
    for i in range(n):
        rows[i][n - 1] = -p.coeffs[i]
    return Matrix._wrap(rows)


def krylov_cyclic_vector(A: Matrix, W: Subspace):
    """A vector v with {v, Av, ..., A^(n-2) v} a basis of the hyperplane W.

    v spans the line W ∩ A^-1 W ∩ ... ∩ A^-(n-2) W.  Raises PreconditionError
    carrying the offending dimension when that intersection is not a line or
    the Krylov family is dependent (W then contains an A-invariant subspace).
    """
    if not A.is_square():
        raise ShapeError("krylov_cyclic_vector needs a square matrix")
    n = A.rows
    if W.ambient_dim != n or W.dim != n - 1:
        raise ShapeError(f"W must be a hyperplane of K^{n}, got dim {W.dim}")
    X = W
    pre = W
    for _ in range(n - 2):
        pre = pre.preimage(A)
        X = subspace_intersect(X, pre)
    if X.dim != 1:
        err = PreconditionError(
            f"W ∩ A^-1 W ∩ ... ∩ A^-(n-2) W has dimension {X.dim}, expected 1: "
            "W contains a nonzero A-invariant subspace")
        err.dimension = X.dim
        raise err
    v = X.basis[0]
    family = [v]
    for _ in range(n - 2):
        family.append(A @ family[-1])
    span = Subspace(n, family)
    if span.dim != n - 1 or span != W:
        err = PreconditionError(
            f"Krylov family of the cyclic candidate spans dimension {span.dim}, expected {n - 1}")
        err.dimension = span.dim
        raise err
    return v


# ---------------------------------------------------------------------------
# algebras and intertwiners
# ---------------------------------------------------------------------------

class _EchelonSpan:
    """Incrementally maintained fully reduced basis (pivot -> row)."""

    def __init__(self):
        self.rows = {}

    def reduce(self, v):
        v = list(v)
        for p, b in self.rows.items():
            f = v[p]
            if not f.is_zero():
                v = [a - f * c if not c.is_zero() else a for a, c in zip(v, b)]
        return v

    def add(self, v):
        """Insert v if independent; return True when the span grew."""
        v = self.reduce(v)
        piv = next((j for j, x in enumerate(v) if not x.is_zero()), None)
        if piv is None:
            return False
        inv = v[piv].inverse()
        v = [x * inv if not x.is_zero() else x for x in v]
        for p, b in list(self.rows.items()):
            f = b[piv]
            if not f.is_zero():
                self.rows[p] = [a - f * c if not c.is_zero() else a for a, c in zip(b, v)]
        self.rows[piv] = v
        return True

    def __len__(self):
        return len(self.rows)


def algebra_dimension(mats) -> int:
    """Dimension of the unital algebra generated by ``mats``.

    Breadth-first closure: every new basis element is multiplied on the right
    by each generator in order; growth stops when no product is new.  Equals
    n^2 exactly when the matrices act irreducibly (Burnside).
    """
    mats = list(mats)
    if not mats:
        raise ShapeError("algebra_dimension needs at least one matrix")
    n = mats[0].rows
    if any(not m.is_square() or m.rows != n for m in mats):
        raise ShapeError("algebra_dimension needs square matrices of one size")
    span = _EchelonSpan()
    eye = Matrix.identity(n)
    span.add(eye.flatten())
    queue = [eye]
    full = n * n
    while queue and len(span) < full:
        nxt = []
        for B in queue:
            for g in mats:
                prod = B @ g
                if span.add(prod.flatten()):
                    nxt.append(prod)
                    if len(span) == full:
                        return full
        queue = nxt
    return len(span)


def sylvester_kernel(G: Matrix, H: Matrix):
    """Basis of {U : U G = H U}; for G = H this is the centralizer of G."""
    if not (G.is_square() and H.is_square()) or G.rows != H.rows:
        raise ShapeError(f"sylvester_kernel needs square matrices of one size, got {G.shape}, {H.shape}")
    n = G.rows
    # row (i, j) of U G - H U, column (a, b) for U[a][b]
    rows = []
    for i in range(n):
        for j in range(n):
            row = [ZERO] * (n * n)
            for b in range(n):
                row[i * n + b] = row[i * n + b] + G[b, j]
            for a in range(n):
                row[a * n + j] = row[a * n + j] - H[i, a]
            rows.append(row)
    K = kernel_basis(Matrix._wrap(rows))
    return [Matrix.unflatten(v, n) for v in K.basis]
