"""Roots of polynomials over cyclotomic fields.

Strategy: form the norm of f down to Q (product of Galois conjugates of the
coefficients), factor it over Q, and test the candidates each rational
factor proposes: rational roots from linear factors, primitive L-th roots of
unity from factors equal to Phi_L.  Any remaining factor is handed to sympy's
factorization over Q(zeta_K), K the coefficient conductor, to catch roots that
are neither rational nor roots of unity.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import sympy

from .exactfield import (
    Polynomial,
    Scalar,
    _cyclotomic_int,
    euler_phi,
    root_of_unity,
)

_X = sympy.Symbol("x")


def galois_conjugate(s: Scalar, a: int) -> Scalar:
    """Apply zeta_N -> zeta_N^a (gcd(a, N) = 1) to s."""
    n = s.conductor
    if n == 1:
        return s
    out = [Fraction(0)] * n
    for k, q in enumerate(s.coeffs):
        if q:
            out[(a * k) % n] += q
    return Scalar.from_coeffs(n, out)


def norm_polynomial(f: Polynomial) -> list:
    """Coefficients (lowest first, Fractions) of prod_sigma sigma(f) in Q[x]."""
    k = f.conductor()
    prod = Polynomial([1])
    for a in range(1, k + 1):
        if gcd(a, k) == 1:
            prod = prod * Polynomial([galois_conjugate(c, a) for c in f.coeffs])
    return [c.to_fraction() for c in prod.coeffs]


def _rational_factors(coeffs):
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)],
                      _X, domain="QQ")
    _, factors = poly.factor_list()
    out = []
    for fac, _mult in factors:
        lc = fac.LC()
        out.append([Fraction(int(sympy.fraction(c / lc)[0]), int(sympy.fraction(c / lc)[1]))
                    for c in reversed(fac.all_coeffs())])
    return out


def _cyclotomic_index(coeffs):
    """L with Phi_L == coeffs (monic integer, lowest first), else None."""
    deg = len(coeffs) - 1
    if any(c.denominator != 1 for c in coeffs):
        return None
    ints = tuple(int(c) for c in coeffs)
    if abs(ints[0]) != 1:
        return None
    # phi(L) >= sqrt(L / 2), so L <= 2 deg^2 (plus the small cases)
    for L in range(1, max(7, 2 * deg * deg + 1)):
        if euler_phi(L) == deg and _cyclotomic_int(L) == ints:
            return L
    return None


def _field_factor_roots(f: Polynomial):
    """Roots of f in Q(zeta_K) found by sympy's algebraic factorization."""
    k = f.conductor()
    if k == 1:
        return []
    dom = sympy.QQ.algebraic_field(sympy.exp(2 * sympy.pi * sympy.I / k))
    mod = [int(c) for c in reversed(dom.mod.to_list())]
    if tuple(mod) != _cyclotomic_int(k):
        return []

    def to_dom(s):
        lifted = s.coeffs_at(k)
        return dom.new([sympy.Rational(q.numerator, q.denominator) for q in reversed(lifted)])

    poly = sympy.Poly.from_list([to_dom(c) for c in reversed(f.coeffs)], _X, domain=dom)
    _, factors = poly.factor_list()
    roots = []
    for fac, _mult in factors:
        if fac.degree() != 1:
            continue
        a, b = fac.rep.to_list()
        anp = dom.neg(dom.quo(b, a))
        coeffs = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(anp.to_list())]
        roots.append(Scalar.from_coeffs(k, coeffs))
    return roots


def field_roots(f: Polynomial):
    """(roots with multiplicity, monic cofactor without roots found)."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no finite root set")
    f = f.monic()
    if f.degree <= 0:
        return [], f
    candidates = []
    rest = []
    for fac in _rational_factors(norm_polynomial(f)):
        if len(fac) == 2:
            candidates.append(Scalar(-fac[0] / fac[1]))
            continue
        L = _cyclotomic_index(fac)
        if L is not None:
            candidates.extend(root_of_unity(Fraction(j, L)) for j in range(1, L) if gcd(j, L) == 1)
        else:
            rest.append(fac)
    roots = []
    x = Polynomial.monomial_x()
    for r in candidates:
        while f.degree > 0 and f(r).is_zero():
            f = f // (x - Polynomial([r]))
            roots.append(r)
    if rest and f.degree > 0:
        for r in _field_factor_roots(f):
            while f.degree > 0 and f(r).is_zero():
                f = f // (x - Polynomial([r]))
                roots.append(r)
    roots.sort(key=Scalar.sort_key)
    return roots, f
