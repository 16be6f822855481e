"""Companion tuples from spectra, and reduction of shared-column tuples to them.

Given p spectra with no value common to all of them, the companion matrices
of the corresponding polynomials share their first n-1 columns.  Conversely a
tuple sharing its first n-1 columns with no common eigenvalue is conjugate,
by a single matrix, to exactly that companion tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, PreconditionError, ShapeError
from .exactfield import parse_rational, root_of_unity
from .linalg import (
    Matrix,
    SpectrumSpec,
    Subspace,
    char_poly,
    companion,
    krylov_cyclic_vector,
    poly_from_roots,
)
from .rigid import MonodromyTuple, is_pseudo_reflection

__all__ = [
    "SpectrumSpec",
    "HypergeometricParams",
    "levelt_construct",
    "levelt_normalize",
    "hypergeometric_tuple",
    "HYPERGEOMETRIC_LABELS",
]

HYPERGEOMETRIC_LABELS = ("h_inf", "h_0", "h_1")


def _common_values(polys):
    common = polys[0]
    for p in polys[1:]:
        common = common.gcd(p)
    return common


def _describe_common(common):
    roots, rest = common.roots()
    parts = []
    for r in roots:
        if str(r) not in parts:
            parts.append(str(r))
    if rest.degree > 0:
        parts.append(f"roots of {rest}")
    return ", ".join(parts)


def levelt_construct(specs) -> MonodromyTuple:
    """Companion matrices of prod (X - alpha) for each spectrum."""
    specs = [s if isinstance(s, SpectrumSpec) else SpectrumSpec(s) for s in specs]
    if len(specs) < 2:
        raise ShapeError(f"need p >= 2 spectra, got {len(specs)}")
    n = len(specs[0])
    if any(len(s) != n for s in specs):
        raise ShapeError(f"spectra have different sizes: {[len(s) for s in specs]}")
    if n < 2:
        raise ShapeError(f"need spectra of size n >= 2, got {n}")
    polys = [poly_from_roots(s) for s in specs]
    common = _common_values(polys)
    if common.degree > 0:
        raise PreconditionError(f"common eigenvalue shared by all spectra: {_describe_common(common)}")
    return MonodromyTuple([companion(p) for p in polys])


def _check_shared_columns(t):
    n = t.n
    first = t[0]
    for idx, A in enumerate(t.members[1:], 2):
        for col in range(n - 1):
            for row in range(n):
                if A[row, col] != first[row, col]:
                    raise PreconditionError(
                        f"members 1 and {idx} differ at entry ({row + 1}, {col + 1}): "
                        f"{first[row, col]} vs {A[row, col]}")


def levelt_normalize(t: MonodromyTuple):
    """Return (T, normalized) with T^-1 A_i T the companion matrix of A_i.

    The members must already share their first n-1 columns and have no
    eigenvalue common to all of them.  T has columns u, A_1 u, ..., A_1^(n-1) u
    where u is the cyclic vector of the hyperplane W = span{e_1..e_(n-1)}.
    """
    _check_shared_columns(t)
    polys = [char_poly(A) for A in t.members]
    common = _common_values(polys)
    if common.degree > 0:
        raise PreconditionError(f"common eigenvalue shared by all members: {_describe_common(common)}")
    n = t.n
    A1 = t[0]
    W = Subspace.coordinate(n, range(n - 1))
    try:
        u = krylov_cyclic_vector(A1, W)
    except PreconditionError as exc:
        raise PreconditionError(
            "no cyclic vector although the spectra have empty intersection; an invariant "
            f"subspace inside W would force a common eigenvalue ({exc})") from exc
    cols = [u]
    for _ in range(n - 1):
        cols.append(A1 @ cols[-1])
    T = Matrix.from_columns(cols)
    Tinv = T.inverse()
    normalized = [Tinv @ A @ T for A in t.members]
    for k, (B, p) in enumerate(zip(normalized, polys), 1):
        if B != companion(p):
            raise AssertionError(f"member {k} did not reduce to companion form")
    return T, MonodromyTuple(normalized, labels=t.labels)


@dataclass(frozen=True)
class HypergeometricParams:
    """Local exponents a_1..a_n (at infinity) and b_1..b_n (at zero)."""

    num: tuple
    den: tuple

    def __post_init__(self):
        object.__setattr__(self, "num", tuple(Fraction(x) for x in self.num))
        object.__setattr__(self, "den", tuple(Fraction(x) for x in self.den))

    @classmethod
    def parse(cls, num, den):
        """From comma-separated strings such as ``"1/2,1/2"``."""
        def split(text):
            if isinstance(text, str):
                items = [s for s in text.split(",") if s.strip()]
            else:
                items = list(text)
            return [parse_rational(s) for s in items]
        return cls(split(num), split(den))

    def clashes(self):
        """1-based (i, j) with a_i - b_j an integer."""
        return [(i, j) for i, a in enumerate(self.num, 1) for j, b in enumerate(self.den, 1)
                if (a - b).denominator == 1]

    def to_json(self):
        return {"num": [str(a) for a in self.num], "den": [str(b) for b in self.den]}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "num" not in obj or "den" not in obj:
            raise ParseError(f"hypergeometric parameters need 'num' and 'den', got {obj!r}")
        return cls([parse_rational(x) for x in obj["num"]], [parse_rational(x) for x in obj["den"]])


def hypergeometric_tuple(params: HypergeometricParams) -> MonodromyTuple:
    """The triple (A, B^-1, B A^-1) with spec A = e(a_j), spec B = e(b_j).

    e(x) = exp(2 pi i x).  The product telescopes to the identity and the last
    member is the inverse of the pseudo-reflection A B^-1.
    """
    n = len(params.num)
    if len(params.den) != n:
        raise ShapeError(f"num has {n} exponents but den has {len(params.den)}")
    if n < 2:
        raise ShapeError(f"need n >= 2 exponents, got {n}")
    bad = params.clashes()
    if bad:
        i, j = bad[0]
        raise PreconditionError(
            f"a_{i} - b_{j} = {params.num[i - 1] - params.den[j - 1]} is an integer at (i, j) = ({i}, {j}); "
            "spectra would intersect")
    alpha = SpectrumSpec([root_of_unity(a) for a in params.num])
    beta = SpectrumSpec([root_of_unity(b) for b in params.den])
    A = companion(alpha.polynomial())
    B = companion(beta.polynomial())
    Binv, Ainv = B.inverse(), A.inverse()
    t = MonodromyTuple([A, Binv, B @ Ainv], require_product_identity=True,
                       labels=HYPERGEOMETRIC_LABELS)
    if not is_pseudo_reflection(A @ Binv):
        raise AssertionError("A B^-1 is not a pseudo-reflection")
    return t

