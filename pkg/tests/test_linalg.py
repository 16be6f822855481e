import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_invertible, random_matrix
from monodromy import (
    Matrix,
    ParseError,
    Polynomial,
    PreconditionError,
    ShapeError,
    SingularMatrixError,
    SpectrumSpec,
    Subspace,
    algebra_dimension,
    char_poly,
    companion,
    kernel_basis,
    krylov_cyclic_vector,
    poly_from_roots,
    rank,
    rref,
    subspace_intersect,
    sylvester_kernel,
    zeta,
)

small = st.integers(min_value=-4, max_value=4)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n).map(Matrix)


def test_rank_examples():
    assert rank(Matrix.zeros(3)) == 0
    assert rank(Matrix.identity(4)) == 4
    assert rank(Matrix([[1, 2], [2, 4]])) == 1


def test_rref_shape_and_pivots():
    R, pivots = rref(Matrix([[0, 2, 4], [1, 1, 1], [1, 2, 3]]))
    assert pivots == [0, 1]
    assert R.row(0) == tuple(Matrix([[1, 0, -1]]).row(0))
    assert R.row(1) == tuple(Matrix([[0, 1, 2]]).row(0))
    assert all(x.is_zero() for x in R.row(2))


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(3)).dim == 0
    assert kernel_basis(Matrix.zeros(2)).dim == 2
    assert kernel_basis(Matrix([[1, -1], [0, 0]])) == Subspace.span((1, 1))


def test_intersections():
    U = Subspace.span((1, 2, 3), (0, 1, 1))
    assert subspace_intersect(U, U) == U
    assert subspace_intersect(Subspace.span((1, 0)), Subspace.span((1, 1))).dim == 0
    H1 = Subspace.coordinate(3, [1, 2])
    H2 = Subspace.coordinate(3, [0, 2])
    assert subspace_intersect(H1, H2) == Subspace.coordinate(3, [2])
    with pytest.raises(ShapeError):
        subspace_intersect(H1, Subspace.full(2))


def test_subspace_canonical_and_annihilator():
    assert Subspace.span((2, 4), (1, 2)) == Subspace.span((1, 2))
    H = Subspace.span((1, 1, 0), (0, 0, 1))
    assert H.annihilator() == Subspace.span((1, -1, 0))
    assert H.annihilator().annihilator() == H


def test_char_poly_examples():
    X = Polynomial.monomial_x()
    assert char_poly(Matrix.diag([2, 3, zeta(4)])) == (X - 2) * (X - 3) * (X - Polynomial([zeta(4)]))
    assert char_poly(Matrix([[0, 1], [1, 0]])) == Polynomial([-1, 0, 1])
    assert char_poly(companion(Polynomial([1, 2, 1]))) == Polynomial([1, 2, 1])


def test_poly_from_roots_examples():
    assert poly_from_roots(SpectrumSpec([1, -1])) == Polynomial([-1, 0, 1])
    assert poly_from_roots(SpectrumSpec([-1, -1])) == Polynomial([1, 2, 1])
    assert poly_from_roots(SpectrumSpec([1] * 4)) == Polynomial([1, -4, 6, -4, 1])


def test_spectrum_rejects_zero_and_round_trips():
    with pytest.raises(PreconditionError):
        SpectrumSpec([1, 0])
    s = SpectrumSpec([zeta(3), 2, "1/2"])
    assert SpectrumSpec.from_json(s.to_json()) == s
    assert SpectrumSpec([1, 2]) == SpectrumSpec([2, 1])
    assert SpectrumSpec([1, -1]).is_disjoint(SpectrumSpec([zeta(4), -zeta(4)]))
    assert not SpectrumSpec([1, 2]).is_disjoint(SpectrumSpec([1, 3]))


def test_companion_examples():
    assert companion(Polynomial([-1, 0, 1])) == Matrix([[0, 1], [1, 0]])
    assert companion(Polynomial([1, 2, 1])) == Matrix([[0, -1], [1, -2]])
    assert companion(Polynomial([-5, 1])) == Matrix([[5]])


def test_inverse_and_det():
    M = Matrix([[2, 1], [zeta(3), 1]])
    assert M @ M.inverse() == Matrix.identity(2)
    assert M.det() == 2 - zeta(3)
    with pytest.raises(SingularMatrixError):
        Matrix([[1, 2], [2, 4]]).inverse()


def test_matrix_json():
    M = Matrix([[1, zeta(8)], ["1/3", -2]])
    assert Matrix.from_json(M.to_json()) == M
    with pytest.raises(ParseError):
        Matrix.from_json({"rows": 3, "cols": 2, "entries": [[1, 2], [3, 4]]})
    with pytest.raises(ParseError):
        Matrix.from_json({"entries": []})
    with pytest.raises(ShapeError):
        Matrix([[1, 2], [3]])


def test_krylov_examples():
    A = companion(Polynomial([-1, 0, 1]))
    assert krylov_cyclic_vector(A, Subspace.coordinate(2, [0])) == (1, 0)
    A = companion(Polynomial([-1, 1, -2, 1]))
    W = Subspace.coordinate(3, [0, 1])
    v = krylov_cyclic_vector(A, W)
    assert Subspace(3, [v, A @ v]) == W
    # oracle: v spans the preimage chain W ∩ A^-1 W
    assert Subspace(3, [v]) == subspace_intersect(W, W.preimage(A))
    with pytest.raises(PreconditionError):
        krylov_cyclic_vector(Matrix.identity(3), W)


def test_algebra_dimension_examples():
    assert algebra_dimension([Matrix.identity(3)]) == 1
    assert algebra_dimension([Matrix.diag([1, 2])]) == 2
    assert algebra_dimension([Matrix([[0, 1], [1, 0]]), Matrix([[0, -1], [1, 0]])]) == 4
    # spectra {1, -1} and {-1, -1} meet in -1: common eigenvector (1, -1), dim 3
    assert algebra_dimension([Matrix([[0, 1], [1, 0]]), Matrix([[0, -1], [1, -2]])]) == 3
    assert algebra_dimension([Matrix.diag([1, 2]), Matrix([[1, 1], [0, 3]])]) == 3


def test_sylvester_examples():
    assert len(sylvester_kernel(Matrix.identity(2), Matrix.identity(2))) == 4
    D = Matrix.diag([1, 2])
    sols = sylvester_kernel(D, D)
    assert len(sols) == 2 and all(U[0, 1].is_zero() and U[1, 0].is_zero() for U in sols)
    sols = sylvester_kernel(D, Matrix.diag([2, 1]))
    assert len(sols) == 2 and all(U[0, 0].is_zero() and U[1, 1].is_zero() for U in sols)


@settings(max_examples=40, deadline=None)
@given(square(3))
def test_rank_nullity(M):
    assert rank(M) + kernel_basis(M).dim == 3
    for v in kernel_basis(M).basis:
        assert all(x.is_zero() for x in M @ v)


@settings(max_examples=40, deadline=None)
@given(square(3))
def test_cayley_hamilton(M):
    p = char_poly(M)
    acc = Matrix.zeros(3)
    for c in reversed(p.coeffs):
        acc = acc @ M + Matrix.identity(3) * c
    assert acc.is_zero()
    assert p.coeffs[0] == (-1) ** 3 * M.det()


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from([1, -1, 2, "1/2", "e(1/3)", "e(1/4)"]), min_size=1, max_size=4))
def test_companion_char_poly_inverse_pair(values):
    p = poly_from_roots(SpectrumSpec([v if not isinstance(v, str) or not v.startswith("e")
                                      else zeta(int(v[-2])) for v in values]))
    C = companion(p)
    assert char_poly(C) == p


def test_sylvester_solutions_satisfy_equation(rng):
    for _ in range(5):
        G = random_matrix(rng, 3, zeta=zeta(3))
        h = random_invertible(rng, 3)
        H = h @ G @ h.inverse()
        sols = sylvester_kernel(G, H)
        assert sols
        for U in sols:
            assert U @ G == H @ U
