"""Pseudo-reflections, shared frames, invariant subspaces and rigidity.

A tuple of invertible matrices whose pairwise ratios are pseudo-reflections
can be conjugated so that all members agree outside a single row or a single
column.  In such a frame a common eigenvalue forces a common invariant line
or hyperplane, and conversely a common invariant subspace forces a common
eigenvalue.  Irreducibility of a pair is therefore decided by a polynomial
gcd, which :func:`analyze` cross-checks against the Burnside dimension.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .errors import (
    ParseError,
    PreconditionError,
    RootOutsideFieldError,
    ShapeError,
    SingularMatrixError,
)
from .exactfield import ZERO, Scalar
from .linalg import (
    Matrix,
    SpectrumSpec,
    Subspace,
    algebra_dimension,
    char_poly,
    kernel_basis,
    rank,
    subspace_intersect,
    sylvester_kernel,
)

__all__ = [
    "MonodromyTuple",
    "PseudoReflection",
    "SharedFrame",
    "StableSubspace",
    "AnalysisReport",
    "is_pseudo_reflection",
    "classify_pseudo_reflection",
    "shared_frame",
    "common_line_or_hyperplane",
    "common_eigenvalue_from_invariant_subspace",
    "beukers_irreducible",
    "simultaneous_conjugator",
    "rigidity_index",
    "analyze",
]


class MonodromyTuple:
    """An ordered tuple of p >= 2 invertible n x n matrices, n >= 2.

    ``product_is_identity`` is computed on construction.  Passing
    ``require_product_identity=True`` turns a failing product into a
    PreconditionError.
    """

    def __init__(self, members, require_product_identity=False, labels=None):
        members = tuple(m if isinstance(m, Matrix) else Matrix(m) for m in members)
        if len(members) < 2:
            raise ShapeError(f"a tuple needs p >= 2 members, got {len(members)}")
        n = members[0].rows
        for k, m in enumerate(members, 1):
            if not m.is_square() or m.rows != n:
                raise ShapeError(f"member {k} has shape {m.shape}, expected ({n}, {n})")
        if n < 2:
            raise ShapeError(f"matrix size must be n >= 2, got {n}")
        for k, m in enumerate(members, 1):
            if m.det().is_zero():
                raise SingularMatrixError(f"member {k} is singular")
        self.members = members
        self.n = n
        self.p = len(members)
        self.labels = tuple(labels) if labels is not None else None
        prod = Matrix.identity(n)
        for m in members:
            prod = prod @ m
        self.product_is_identity = prod == Matrix.identity(n)
        if require_product_identity and not self.product_is_identity:
            raise PreconditionError("product of the members is not the identity")

    def __len__(self):
        return self.p

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def __eq__(self, other):
        if not isinstance(other, MonodromyTuple):
            return NotImplemented
        return self.members == other.members

    def __repr__(self):
        return f"MonodromyTuple(n={self.n}, p={self.p}, product_is_identity={self.product_is_identity})"

    def conjugate(self, h: Matrix) -> "MonodromyTuple":
        """Memberwise h g h^-1."""
        hinv = h.inverse()
        return MonodromyTuple([h @ g @ hinv for g in self.members], labels=self.labels)

    @classmethod
    def from_json(cls, obj):
        """Parse a tuple document; a claimed product identity is re-checked exactly."""
        if isinstance(obj, list):
            obj = {"members": obj}
        if not isinstance(obj, dict) or not isinstance(obj.get("members"), list):
            raise ParseError("tuple document needs a 'members' list")
        members = [Matrix.from_json(m) for m in obj["members"]]
        claimed = obj.get("product_is_identity", False)
        if not isinstance(claimed, bool):
            raise ParseError("'product_is_identity' must be a boolean")
        t = cls(members, require_product_identity=claimed, labels=obj.get("labels"))
        for key in ("n", "p"):
            if key in obj and obj[key] != getattr(t, key):
                raise ParseError(f"declared {key}={obj[key]} does not match members ({getattr(t, key)})")
        return t

    def to_json(self):
        out = {"n": self.n, "p": self.p, "product_is_identity": self.product_is_identity,
               "members": [m.to_json() for m in self.members]}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out


# ---------------------------------------------------------------------------
# pseudo-reflections
# ---------------------------------------------------------------------------

class PseudoReflection(NamedTuple):
    kind: str            # "reflection" or "transvection"
    nu: Optional[Scalar]  # special eigenvalue minus 1, for reflections


def is_pseudo_reflection(h: Matrix) -> bool:
    if not h.is_square():
        raise ShapeError(f"is_pseudo_reflection needs a square matrix, got {h.shape}")
    return rank(h - Matrix.identity(h.rows)) == 1


def classify_pseudo_reflection(h: Matrix) -> PseudoReflection:
    """Reflection (with nu = trace(h - I) != 0) or transvection (nu = 0).

    h - I = l phi^T has image span{l}; (h - I) l = (phi . l) l, so the image
    lies in the kernel exactly when trace(h - I) = phi . l vanishes.
    """
    if not is_pseudo_reflection(h):
        raise PreconditionError("matrix is not a pseudo-reflection (rank(h - I) != 1)")
    nu = (h - Matrix.identity(h.rows)).trace()
    if nu.is_zero():
        return PseudoReflection("transvection", None)
    return PseudoReflection("reflection", nu)


# ---------------------------------------------------------------------------
# shared frame
# ---------------------------------------------------------------------------

@dataclass
class SharedFrame:
    """Basis change T with T^-1 A_i T agreeing outside one row or column.

    ``mode`` is "columns" or "rows"; ``distinct_index`` (0-based) is the only
    column/row where the transformed members may differ.
    """

    basis_change: Matrix
    mode: str
    distinct_index: int
    transformed: tuple

    def shared_indices(self):
        n = self.basis_change.rows
        return [k for k in range(n) if k != self.distinct_index]

    def verify(self):
        """Entry-by-entry check of the shared rows/columns; raises on failure."""
        first = self.transformed[0]
        for idx, B in enumerate(self.transformed[1:], 2):
            for k in self.shared_indices():
                a = first.col(k) if self.mode == "columns" else first.row(k)
                b = B.col(k) if self.mode == "columns" else B.row(k)
                if a != b:
                    raise PreconditionError(
                        f"member {idx} differs from member 1 in shared {self.mode[:-1]} {k + 1}")
        return True

    @classmethod
    def from_basis(cls, t, T: Matrix, mode: str, distinct_index: int) -> "SharedFrame":
        Tinv = T.inverse()
        frame = cls(T, mode, distinct_index, tuple(Tinv @ A @ T for A in t.members))
        frame.verify()
        return frame

    def to_json(self):
        return {"mode": self.mode, "distinct_index": self.distinct_index,
                "basis_change": self.basis_change.to_json(),
                "transformed": [m.to_json() for m in self.transformed]}


def _complete_basis(vectors, n):
    """Extend independent vectors by standard basis vectors e_1, e_2, ..."""
    out = list(vectors)
    span = Subspace(n, out) if out else Subspace.zero(n)
    eye = Matrix.identity(n)
    for k in range(n):
        if span.dim == n:
            break
        e = eye.row(k)
        if not span.contains(e):
            out.append(e)
            span = Subspace(n, out)
    return out


def _extend_within(vectors, target: Subspace):
    """Extend independent vectors inside ``target`` to a basis of it."""
    out = list(vectors)
    span = Subspace(target.ambient_dim, out) if out else Subspace.zero(target.ambient_dim)
    for v in target.basis:
        if span.dim == target.dim:
            break
        if not span.contains(v):
            out.append(v)
            span = Subspace(target.ambient_dim, out)
    return out


def _check_pairwise(t):
    for i in range(t.p):
        for j in range(i + 1, t.p):
            h = t[i] @ t[j].inverse()
            if not is_pseudo_reflection(h):
                raise PreconditionError(
                    f"pair ({i + 1}, {j + 1}): A_{i + 1} A_{j + 1}^-1 is not a pseudo-reflection")


def shared_frame(t: MonodromyTuple) -> SharedFrame:
    """Conjugate the members so they agree outside one column or one row.

    With W1 = ker(A1 - A2) and W2 = ker(A2 - Aj): if every such W2 equals W1,
    a basis of W1 completed by one vector makes the first n-1 columns common.
    Otherwise all differences share one image line l and the basis is built
    around W1 ∩ W2: l is the last vector when A1 - A2 does not kill l, else l
    sits first (if l ∈ W1 ∩ W2) or at position n-1; all rows but l's agree.
    """
    _check_pairwise(t)
    A = t.members
    n = t.n
    D12 = A[0] - A[1]
    W1 = kernel_basis(D12)
    partner = None
    for j in range(2, t.p):
        W2 = kernel_basis(A[1] - A[j])
        if W2 != W1:
            partner = W2
            break
    if partner is None:
        T = Matrix.from_columns(_complete_basis(W1.basis, n))
        return SharedFrame.from_basis(t, T, "columns", n - 1)

    I = subspace_intersect(W1, partner)
    # a column of D12 spanning its image, and a preimage of it
    k = next(c for c in range(n) if any(not x.is_zero() for x in D12.col(c)))
    w = D12.col(k)
    if not W1.contains(w):
        # D12 acts on w by a nonzero scalar: e_n = w
        base = list(I.basis)
        base = _extend_within(base, W1)
        T = Matrix.from_columns(base + [w])
        distinct = n - 1
    else:
        e_last = Matrix.identity(n).row(k)
        if I.contains(w):
            base = _extend_within([w], I)
            base = _extend_within(base, W1)
            distinct = 0
        else:
            base = list(I.basis) + [w]
            distinct = n - 2
        T = Matrix.from_columns(base + [e_last])
    return SharedFrame.from_basis(t, T, "rows", distinct)


# ---------------------------------------------------------------------------
# invariant subspaces from a frame
# ---------------------------------------------------------------------------

class StableSubspace(NamedTuple):
    kind: str  # "line" or "hyperplane"
    subspace: Subspace


def _check_common_eigenvalue(t, lam):
    for k, A in enumerate(t.members, 1):
        if not char_poly(A)(lam).is_zero():
            raise PreconditionError(f"{lam} is not an eigenvalue of member {k}")


def _rows_case(mats, distinct, lam):
    """Members agree outside row ``distinct``; return (kind, subspace) in these coordinates."""
    n = mats[0].rows
    shifted = mats[0] - Matrix.identity(n) * lam
    shared = [shifted.row(k) for k in range(n) if k != distinct]
    R = Matrix._wrap(shared)
    if rank(R) == n - 1:
        line = kernel_basis(R)
        return "line", line
    # dependent shared rows: sum c_k row_k = 0 gives a common eigenvector of the transposes
    c = kernel_basis(R.T).basis[0]
    v = list(c)
    v.insert(distinct, ZERO)
    return "hyperplane", Subspace(n, [v]).annihilator()


def common_line_or_hyperplane(t: MonodromyTuple, frame: SharedFrame, lam) -> StableSubspace:
    """A line or hyperplane stable under every member, for a common eigenvalue ``lam``."""
    lam = Scalar(lam)
    frame.verify()
    _check_common_eigenvalue(t, lam)
    mats = list(frame.transformed)
    if frame.mode == "rows":
        kind, S = _rows_case(mats, frame.distinct_index, lam)
    else:
        kind, S = _rows_case([B.T for B in mats], frame.distinct_index, lam)
        # a stable line of the transposes is a stable hyperplane of the members, and back
        kind = "hyperplane" if kind == "line" else "line"
        S = S.annihilator()
    S = S.image(frame.basis_change)
    for k, A in enumerate(t.members, 1):
        if not S.is_invariant(A):
            raise AssertionError(f"constructed {kind} is not invariant under member {k}")
    return StableSubspace(kind, S)


def _coordinates(basis, v):
    """Coefficients of v in the given basis vectors (v must lie in their span)."""
    n = len(v)
    cols = list(basis) + [v]
    K = kernel_basis(Matrix.from_columns(cols))
    for sol in K.basis:
        if not sol[-1].is_zero():
            s = -sol[-1].inverse()
            return [x * s for x in sol[:-1]]
    raise ValueError(f"vector is not in the span (ambient dim {n})")


def _restricted_block(B, basis):
    """Matrix of B restricted to span(basis) (assumed invariant)."""
    cols = [_coordinates(basis, B @ w) for w in basis]
    return Matrix.from_columns(cols)


def _quotient_block(B, W_basis, g_basis):
    """Matrix of the map B induces on K^n / W, in the images of g_basis."""
    full = list(g_basis) + list(W_basis)
    cols = [_coordinates(full, B @ g)[:len(g_basis)] for g in g_basis]
    return Matrix.from_columns(cols)


def common_eigenvalue_from_invariant_subspace(t: MonodromyTuple, frame: SharedFrame,
                                              W: Subspace) -> Scalar:
    """A common eigenvalue of the members, given a common invariant subspace W.

    In the frame basis the members agree on E = span{e_k : k != distinct}.  If
    W ⊆ E they share the restriction to W; otherwise E + W is everything and
    they share the map induced on the quotient by W.  A root of that common
    block's characteristic polynomial is returned.
    """
    n = t.n
    if W.ambient_dim != n:
        raise ShapeError(f"W lives in dimension {W.ambient_dim}, members in {n}")
    if not 0 < W.dim < n:
        raise PreconditionError(f"W must be a nontrivial proper subspace, got dim {W.dim}")
    for k, A in enumerate(t.members, 1):
        if not W.is_invariant(A):
            raise PreconditionError(f"W is not invariant under member {k}")
    frame.verify()
    Tinv = frame.basis_change.inverse()
    Wf = W.image(Tinv)
    mats = list(frame.transformed)
    if frame.mode == "rows":
        # transposes agree outside one column and stabilise the annihilator
        mats = [B.T for B in mats]
        Wf = Wf.annihilator()
    E = Subspace.coordinate(n, [k for k in range(n) if k != frame.distinct_index])
    if E.contains_subspace(Wf):
        blocks = [_restricted_block(B, Wf.basis) for B in mats]
    else:
        g = []
        span = Wf
        for e in E.basis:
            if span.dim == n:
                break
            if not span.contains(e):
                g.append(e)
                span = span + Subspace(n, [e])
        blocks = [_quotient_block(B, Wf.basis, g) for B in mats]
    if any(b != blocks[0] for b in blocks[1:]):
        raise AssertionError("common block differs between members")
    roots, _rest = char_poly(blocks[0]).roots()
    polys = [char_poly(A) for A in t.members]
    for r in roots:
        if all(p(r).is_zero() for p in polys):
            return r
    raise RootOutsideFieldError(
        f"common block char poly {char_poly(blocks[0])} has no root in the cyclotomic field")


# ---------------------------------------------------------------------------
# irreducibility, conjugation, rigidity
# ---------------------------------------------------------------------------

def beukers_irreducible(A: Matrix, B: Matrix) -> bool:
    """For A B^-1 a pseudo-reflection: irreducible iff spec A ∩ spec B = ∅."""
    if not (A.is_square() and B.is_square()) or A.shape != B.shape:
        raise ShapeError(f"A and B must be square of one size, got {A.shape}, {B.shape}")
    if A.det().is_zero():
        raise SingularMatrixError("A is singular")
    if B.det().is_zero():
        raise SingularMatrixError("B is singular")
    if not is_pseudo_reflection(A @ B.inverse()):
        raise PreconditionError("A B^-1 is not a pseudo-reflection")
    return char_poly(A).gcd(char_poly(B)).degree == 0


def _conjugator_space(t1, t2):
    """Basis (as matrices) of {U : U g_i = g'_i U for all i}.

    The first member's equations are solved in full; each further member only
    adds equations on the coefficients of the current basis.
    """
    pairs = list(zip(t1.members, t2.members))
    basis = sylvester_kernel(*pairs[0])
    for g, h in pairs[1:]:
        if not basis:
            break
        residues = [(U @ g - h @ U).flatten() for U in basis]
        # columns are the residues; a kernel vector c gives sum c_k U_k
        coeffs = kernel_basis(Matrix.from_columns(residues))
        basis = [sum((U * c for U, c in zip(basis, vec) if not c.is_zero()), Matrix.zeros(t1.n))
                 for vec in coeffs.basis]
    return basis


def simultaneous_conjugator(t1: MonodromyTuple, t2: MonodromyTuple, tries: int = 16,
                            seed: int = 0) -> Optional[Matrix]:
    """An invertible u with u t1[i] u^-1 = t2[i] for all i, or None.

    When the solution space has dimension > 1, basis elements are tried first,
    then seeded random combinations; det is a nonzero polynomial on the space
    if any invertible solution exists, so a miss has probability <= n / 2001
    per try.
    """
    if t1.n != t2.n or t1.p != t2.p:
        raise ShapeError(f"tuples differ in shape: (n={t1.n}, p={t1.p}) vs (n={t2.n}, p={t2.p})")
    n = t1.n
    basis = _conjugator_space(t1, t2)
    if not basis:
        return None
    for U in basis:
        if not U.det().is_zero():
            return U
    rng = random.Random(seed)
    for _ in range(tries):
        U = Matrix.zeros(n)
        for B in basis:
            U = U + B * rng.randint(-1000, 1000)
        if not U.det().is_zero():
            return U
    return None


def rigidity_index(t: MonodromyTuple) -> int:
    """(2 - p) n^2 + sum of centralizer dimensions."""
    if not t.product_is_identity:
        raise PreconditionError("rigidity_index needs a tuple whose product is the identity")
    return (2 - t.p) * t.n * t.n + sum(len(sylvester_kernel(g, g)) for g in t.members)


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

@dataclass
class AnalysisReport:
    n: int
    p: int
    pseudo_reflection_pairs: list
    spectra: list
    spectra_intersection: SpectrumSpec
    irreducible: bool
    burnside_dim: int
    invariant_witness: Optional[Subspace] = None
    rigidity_index: Optional[int] = None
    shared_frame: Optional[SharedFrame] = None
    unsplit: dict = field(default_factory=dict)
    reasons: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    def to_json(self):
        def spectrum(spec, rest):
            out = spec.to_json()
            if rest is not None:
                out["unsplit_factor"] = rest.to_json()
            return out

        return {
            "n": self.n,
            "p": self.p,
            "pseudo_reflection_pairs": self.pseudo_reflection_pairs,
            "spectra": [spectrum(s, self.unsplit.get(k)) for k, s in enumerate(self.spectra)],
            "spectra_intersection": spectrum(self.spectra_intersection,
                                             self.unsplit.get("intersection")),
            "irreducible": self.irreducible,
            "burnside_dim": self.burnside_dim,
            "invariant_witness": None if self.invariant_witness is None
            else self.invariant_witness.to_json(),
            "rigidity_index": self.rigidity_index,
            "shared_frame": None if self.shared_frame is None else self.shared_frame.to_json(),
            "reasons": dict(sorted(self.reasons.items())),
            "notes": dict(sorted(self.notes.items())),
        }


def analyze(t: MonodromyTuple) -> AnalysisReport:
    """Run every structural check on a tuple and collect the results."""
    n, p = t.n, t.p
    pairs = []
    for i in range(p):
        for j in range(i + 1, p):
            h = t[i] @ t[j].inverse()
            ok = is_pseudo_reflection(h)
            pairs.append({"i": i + 1, "j": j + 1, "pseudo_reflection": ok,
                          "kind": classify_pseudo_reflection(h).kind if ok else None})

    polys = [char_poly(A) for A in t.members]
    spectra, unsplit = [], {}
    for k, cp in enumerate(polys):
        roots, rest = cp.roots()
        spectra.append(SpectrumSpec(roots))
        if rest.degree > 0:
            unsplit[k] = rest
    common = polys[0]
    for cp in polys[1:]:
        common = common.gcd(cp)
    common_roots, rest = common.roots()
    if rest.degree > 0:
        unsplit["intersection"] = rest
    # set semantics for the intersection
    distinct = []
    for r in common_roots:
        if r not in distinct:
            distinct.append(r)

    dim = algebra_dimension(t.members)
    report = AnalysisReport(n, p, pairs, spectra, SpectrumSpec(distinct),
                            irreducible=(dim == n * n), burnside_dim=dim, unsplit=unsplit)

    singles = [k for k, A in enumerate(t.members, 1) if is_pseudo_reflection(A)]
    if singles:
        report.notes["pseudo_reflection_members"] = (
            "members that are themselves pseudo-reflections: " + ", ".join(map(str, singles)))

    try:
        report.shared_frame = shared_frame(t)
    except PreconditionError as exc:
        report.reasons["shared_frame"] = str(exc)

    if report.irreducible:
        report.reasons["invariant_witness"] = "tuple is irreducible"
    elif report.shared_frame is None:
        report.reasons["invariant_witness"] = "no shared frame; witness search needs one"
    elif not distinct:
        report.reasons["invariant_witness"] = "no common eigenvalue in the cyclotomic field"
    else:
        stable = common_line_or_hyperplane(t, report.shared_frame, distinct[0])
        report.invariant_witness = stable.subspace
        report.notes["invariant_witness"] = (
            f"common {stable.kind} for eigenvalue {distinct[0]}, invariance verified")

    if t.product_is_identity:
        report.rigidity_index = rigidity_index(t)
        if p == 2:
            report.notes["rigidity_index"] = "a couple (g, g^-1) is always linearly rigid"
        elif report.irreducible and report.rigidity_index == 2:
            report.notes["rigidity_index"] = "irreducible with index 2: linearly rigid"
    else:
        report.reasons["rigidity_index"] = "product of the members is not the identity"
    return report
