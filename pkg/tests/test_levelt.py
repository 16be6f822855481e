from fractions import Fraction

import pytest

from conftest import random_disjoint_spectra, random_matrix
from monodromy import (
    HypergeometricParams,
    Matrix,
    MonodromyTuple,
    ParseError,
    PreconditionError,
    ShapeError,
    SpectrumSpec,
    analyze,
    hypergeometric_tuple,
    is_pseudo_reflection,
    levelt_construct,
    levelt_normalize,
    rank,
    rigidity_index,
    zeta,
)

i = zeta(4)


def test_construct_examples():
    t = levelt_construct([[1, -1], [i, -i]])
    assert t.members == (Matrix([[0, 1], [1, 0]]), Matrix([[0, -1], [1, 0]]))
    t = levelt_construct([[-1, -1], [1, 1]])
    assert t.members == (Matrix([[0, -1], [1, -2]]), Matrix([[0, -1], [1, 2]]))
    assert is_pseudo_reflection(t[0] @ t[1].inverse())


def test_construct_errors():
    with pytest.raises(PreconditionError, match="common eigenvalue.*1"):
        levelt_construct([[1, 2], [1, 3]])
    with pytest.raises(PreconditionError):
        levelt_construct([[1, 0], [2, 3]])
    with pytest.raises(ShapeError):
        levelt_construct([[1, 2]])
    with pytest.raises(ShapeError):
        levelt_construct([[1], [2]])
    with pytest.raises(ShapeError):
        levelt_construct([[1, 2], [3, 4, 5]])


def test_construct_allows_pairwise_overlap():
    # 1 is shared by the first two, but nothing by all three
    t = levelt_construct([[1, 2], [1, 3], [4, 5]])
    assert t.p == 3


def test_normalize_fixed_point():
    t = levelt_construct([[1, zeta(3), zeta(3) ** 2], [i, -i, -1]])
    T, nt = levelt_normalize(t)
    assert nt == t
    assert T == Matrix.identity(3)


def test_normalize_recovers_after_conjugation(rng):
    for _ in range(5):
        specs = random_disjoint_spectra(rng, 3, 2, 6)
        t = levelt_construct(specs)
        S = random_matrix(rng, 3)
        rows = S.tolist()
        rows[-1] = [0, 0, rng.choice([1, 2, -3])]
        S = Matrix(rows)
        if not S.is_invertible():
            continue
        t2 = MonodromyTuple([S.inverse() @ A @ S for A in t])
        T, nt = levelt_normalize(t2)
        assert nt == t
        for A, B in zip(t2, nt):
            assert T.inverse() @ A @ T == B


def test_normalize_errors(rng):
    t = levelt_construct([[1, 2], [3, 4]])
    with pytest.raises(PreconditionError, match="differ at entry"):
        levelt_normalize(t.conjugate(Matrix([[1, 0], [1, 1]])))
    A = Matrix([[0, -2], [1, 3]])   # spectrum {1, 2}
    B = Matrix([[0, -3], [1, 4]])   # spectrum {1, 3}
    with pytest.raises(PreconditionError, match="common eigenvalue"):
        levelt_normalize(MonodromyTuple([A, B]))


def test_hypergeometric_gauss():
    t = hypergeometric_tuple(HypergeometricParams.parse("1/2,1/2", "1,1"))
    A, Binv, last = t.members
    B = Binv.inverse()
    assert A == Matrix([[0, -1], [1, -2]])
    assert B == Matrix([[0, -1], [1, 2]])
    assert A - B == Matrix([[0, 0], [0, -4]]) and rank(A - B) == 1
    assert t.product_is_identity
    assert is_pseudo_reflection(last.inverse())
    assert rigidity_index(t) == 2
    assert t.labels == ("h_inf", "h_0", "h_1")


def test_hypergeometric_errors():
    with pytest.raises(PreconditionError, match=r"\(1, 1\)"):
        hypergeometric_tuple(HypergeometricParams.parse("1/3,2/3", "1/3,1"))
    with pytest.raises(ShapeError):
        hypergeometric_tuple(HypergeometricParams.parse("1/2", "0"))
    with pytest.raises(ShapeError):
        hypergeometric_tuple(HypergeometricParams.parse("1/2,1/3", "0"))
    with pytest.raises(ParseError):
        HypergeometricParams.parse("1/2,x", "0,1")


def test_hypergeometric_params_json_and_clashes():
    p = HypergeometricParams.parse("1/3, 4/3", "1/3,1/2")
    assert p.clashes() == [(1, 1), (2, 1)]
    assert HypergeometricParams.from_json(p.to_json()) == p
    assert p.to_json() == {"num": ["1/3", "4/3"], "den": ["1/3", "1/2"]}
    with pytest.raises(ParseError):
        HypergeometricParams.from_json({"num": ["1"]})


@pytest.mark.parametrize("num, den", [("1/3,2/3", "0,1/2"), ("1/5,2/5,3/5", "0,1/4,1/2"),
                                      ("1/8,3/8,5/8,7/8", "0,1/3,1/2,2/3")])
def test_hypergeometric_irreducible_rigid(num, den):
    t = hypergeometric_tuple(HypergeometricParams.parse(num, den))
    report = analyze(t)
    assert report.irreducible and report.burnside_dim == t.n ** 2
    assert report.rigidity_index == 2


def test_spectrum_round_trip():
    spec = SpectrumSpec([Fraction(1, 2), zeta(12), -1])
    assert SpectrumSpec.from_json(spec.to_json()) == spec
