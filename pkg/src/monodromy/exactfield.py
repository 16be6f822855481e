"""Exact arithmetic in Q and in cyclotomic fields Q(zeta_N).

An element of Q(zeta_N) is stored as an integer coefficient vector over a
positive common denominator, in the power basis 1, z, ..., z^(phi(N)-1)
reduced modulo the N-th cyclotomic polynomial.  Every value is kept at its
minimal conductor, so structural equality is field equality.

Rational numbers are plain ``fractions.Fraction`` at the API boundary and a
``Scalar`` with conductor 1 inside the field.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational as _RationalABC

from .errors import ParseError

__all__ = [
    "Scalar",
    "Polynomial",
    "cyclotomic_polynomial",
    "root_of_unity",
    "zeta",
    "scalar_arith",
    "euler_phi",
    "parse_rational",
]


# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------

def _lcm(a, b):
    return a // gcd(a, b) * b


def _prime_factors(n):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in _prime_factors(n):
        result -= result // p
    return result


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a canonical Fraction."""
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"rational must be a string like '3/4', got {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        if sep:
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational: {text!r}") from exc
    return value


# ---------------------------------------------------------------------------
# per-conductor tables (cached)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _cyclotomic_int(n: int) -> tuple:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError(f"conductor must be >= 1, got {n}")
    # X^n - 1
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _int_poly_exact_div(num, _cyclotomic_int(d))
    return tuple(num)


def _int_poly_exact_div(num, den):
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        t = num[k]
        if t:
            # den is monic
            q[k - dn] = t
            for j in range(dn + 1):
                num[k - dn + j] -= t * den[j]
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return q


class _Tables:
    """Multiplication and embedding data for one conductor."""

    __slots__ = ("n", "phi", "mod", "_powers", "_descents")

    def __init__(self, n):
        self.n = n
        self.mod = _cyclotomic_int(n)
        self.phi = len(self.mod) - 1
        unit = [0] * self.phi
        unit[0] = 1
        self._powers = [tuple(unit)]
        self._descents = None

    def power(self, k):
        """z^k in the power basis (0 <= k < n), extending the cache as needed."""
        powers = self._powers
        mod = self.mod
        phi = self.phi
        while len(powers) <= k:
            vec = powers[-1]
            top = vec[-1]
            nxt = [0] + list(vec[:-1])
            if top:
                for j in range(phi):
                    nxt[j] -= top * mod[j]
            powers.append(tuple(nxt))
        return powers[k]

    @property
    def descents(self):
        if self._descents is None:
            self._descents = [_make_descent(m, self) for m in _descent_targets(self.n)]
        return self._descents

    def reduce(self, coeffs):
        """Reduce an integer coefficient list modulo Phi_n (returns a new list)."""
        phi = self.phi
        r = list(coeffs)
        if len(r) <= phi:
            return r + [0] * (phi - len(r))
        mod = self.mod
        for k in range(len(r) - 1, phi - 1, -1):
            t = r[k]
            if t:
                base = k - phi
                for j in range(phi):
                    r[base + j] -= t * mod[j]
        return r[:phi]

    def mul(self, a, b):
        la, lb = len(a), len(b)
        out = [0] * (la + lb - 1)
        for i in range(la):
            ai = a[i]
            if ai:
                for j in range(lb):
                    bj = b[j]
                    if bj:
                        out[i + j] += ai * bj
        return self.reduce(out)


def _descent_targets(n):
    """Maximal proper conductors m | n worth testing for membership."""
    out = []
    for p in _prime_factors(n):
        if p == 2:
            if n % 8 == 0:
                out.append(n // 2)
            elif n % 4 == 0:
                out.append(n // 4)
        else:
            out.append(n // p)
    return out


def _make_descent(m, big):
    p = big.n // m
    if m % p == 0 and (p != 2 or m % 4 == 0):
        return _StrideDescent(m, p)
    return _LinearDescent(m, big)


class _StrideDescent:
    """Q(zeta_m) in Q(zeta_pm) with p | m: Phi_pm(x) = Phi_m(x^p)."""

    __slots__ = ("m", "p")

    def __init__(self, m, p):
        self.m, self.p = m, p

    def try_descend(self, c):
        p = self.p
        for k, v in enumerate(c):
            if v and k % p:
                return None
        return list(c[::p]), 1


class _LinearDescent:
    """Membership test and coordinates for Q(zeta_m) inside Q(zeta_n)."""

    __slots__ = ("m", "embed", "rows", "inv", "inv_den")

    def __init__(self, m, big):
        self.m = m
        small_phi = euler_phi(m)
        step = big.n // m
        # columns: images of the small power basis
        cols = [big.power(step * k) for k in range(small_phi)]
        self.embed = cols
        rows = _pivot_rows([[Fraction(c[r]) for c in cols] for r in range(big.phi)])
        inv = _frac_inverse([[Fraction(c[r]) for c in cols] for r in rows])
        den = 1
        for row in inv:
            for x in row:
                den = _lcm(den, x.denominator)
        self.rows = rows
        self.inv = [[int(x * den) for x in row] for row in inv]
        self.inv_den = den

    def try_descend(self, c):
        sub = [c[r] for r in self.rows]
        y = [sum(a * b for a, b in zip(row, sub)) for row in self.inv]
        den = self.inv_den
        # verify: embed(y) == den * c
        for r in range(len(c)):
            s = 0
            for k, col in enumerate(self.embed):
                if y[k] and col[r]:
                    s += y[k] * col[r]
            if s != den * c[r]:
                return None
        return y, den


def _pivot_rows(rows):
    """Indices of a maximal linearly independent subset of rows, greedily."""
    ncols = len(rows[0])
    basis = {}  # pivot column -> reduced row
    chosen = []
    for idx, row in enumerate(rows):
        v = list(row)
        for col, b in basis.items():
            if v[col]:
                f = v[col]
                v = [x - f * y for x, y in zip(v, b)]
        piv = next((j for j in range(ncols) if v[j]), None)
        if piv is None:
            continue
        inv = 1 / v[piv]
        v = [x * inv for x in v]
        for col, b in list(basis.items()):
            if b[piv]:
                f = b[piv]
                basis[col] = [x - f * y for x, y in zip(b, v)]
        basis[piv] = v
        chosen.append(idx)
        if len(chosen) == ncols:
            break
    return chosen


def _frac_inverse(rows):
    n = len(rows)
    m = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next(i for i in range(col, n) if m[i][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [a / p for a in m[col]]
        for i in range(n):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return [r[n:] for r in m]


@lru_cache(maxsize=None)
def _tables(n) -> _Tables:
    return _Tables(n)


@lru_cache(maxsize=None)
def _lift_matrix(small, big):
    t = _tables(big)
    step = big // small
    return tuple(t.power(step * k) for k in range(euler_phi(small)))


def _lift(c, small, big):
    if small == big:
        return c
    cols = _lift_matrix(small, big)
    out = [0] * _tables(big).phi
    for k, ck in enumerate(c):
        if ck:
            for j, v in enumerate(cols[k]):
                if v:
                    out[j] += ck * v
    return out


# ---------------------------------------------------------------------------
# Scalar
# ---------------------------------------------------------------------------

class Scalar:
    """An exact element of a cyclotomic field, canonicalized on construction.

    ``Scalar(3)``, ``Scalar(Fraction(1, 2))`` and ``Scalar("2/5")`` build
    rationals; :func:`zeta` and :func:`root_of_unity` build roots of unity.
    Instances are immutable and hashable; they mix freely with ``int`` and
    ``Fraction`` in arithmetic and comparisons.
    """

    __slots__ = ("_n", "_c", "_d", "_hash")

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self._n, self._c, self._d = value._n, value._c, value._d
        else:
            if isinstance(value, str):
                value = parse_rational(value)
            if isinstance(value, bool) or not isinstance(value, _RationalABC):
                raise TypeError(f"cannot build a Scalar from {value!r}")
            q = Fraction(value)
            self._n, self._c, self._d = 1, (q.numerator,), q.denominator
        self._hash = None

    @classmethod
    def _raw(cls, n, c, d):
        obj = object.__new__(cls)
        obj._n, obj._c, obj._d = n, c, d
        obj._hash = None
        return obj

    @classmethod
    def _build(cls, n, c, d=1):
        """Normalize integer data (already reduced mod Phi_n) to canonical form."""
        if d < 0:
            c = [-x for x in c]
            d = -d
        g = d
        for x in c:
            if x:
                g = gcd(g, x)
                if g == 1:
                    break
        if g != 1:
            c = [x // g for x in c]
            d //= g
        while n > 1:
            if not any(c[1:]):
                n, c = 1, [c[0]]
                break
            for desc in _tables(n).descents:
                hit = desc.try_descend(c)
                if hit is not None:
                    y, den = hit
                    return cls._build(desc.m, y, d * den)
            break
        return cls._raw(n, tuple(c), d)

    @classmethod
    def from_coeffs(cls, n: int, coeffs) -> "Scalar":
        """Element sum(coeffs[k] * zeta_n^k); coeffs may be any length."""
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"conductor must be a positive integer, got {n!r}")
        fr = [Fraction(x) for x in coeffs]
        den = 1
        for x in fr:
            den = _lcm(den, x.denominator)
        ints = [int(x * den) for x in fr]
        # exponents >= n wrap around since zeta^n = 1
        folded = [0] * n
        for k, v in enumerate(ints):
            folded[k % n] += v
        if n % 4 == 2:
            # zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
            m = n // 2
            moved = [0] * m
            for k, v in enumerate(folded):
                if v:
                    moved[(k * (m + 1) // 2) % m] += -v if k % 2 else v
            n, folded = m, moved
        return cls._build(n, _tables(n).reduce(folded), den)

    # -- accessors ---------------------------------------------------------

    @property
    def conductor(self) -> int:
        return self._n

    N = conductor

    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(x, self._d) for x in self._c)

    def coeffs_at(self, n: int) -> tuple:
        """Coefficients in the power basis of Q(zeta_n), for conductor | n."""
        if n % self._n or n % 4 == 2:
            raise ValueError(f"Q(zeta_{self._n}) is not embedded in the power basis of Q(zeta_{n})")
        return tuple(Fraction(x, self._d) for x in _lift(list(self._c), self._n, n))

    def is_rational(self) -> bool:
        return self._n == 1

    def to_fraction(self) -> Fraction:
        if self._n != 1:
            raise ValueError(f"{self} is not rational")
        return Fraction(self._c[0], self._d)

    def is_zero(self) -> bool:
        return self._n == 1 and self._c[0] == 0

    def __bool__(self):
        return not self.is_zero()

    def sort_key(self):
        return (self._n, self.coeffs)

    # -- arithmetic --------------------------------------------------------

    def _align(self, other):
        n = self._n if self._n == other._n else _lcm(self._n, other._n)
        return n, _lift(self._c, self._n, n), _lift(other._c, other._n, n)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self._n == 1 and other._n == 1:
            q = Fraction(self._c[0], self._d) + Fraction(other._c[0], other._d)
            return Scalar._raw(1, (q.numerator,), q.denominator)
        n, a, b = self._align(other)
        da, db = self._d, other._d
        return Scalar._build(n, [x * db + y * da for x, y in zip(a, b)], da * db)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(self._n, tuple(-x for x in self._c), self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return ZERO
        if self._n == 1 and other._n == 1:
            q = Fraction(self._c[0], self._d) * Fraction(other._c[0], other._d)
            return Scalar._raw(1, (q.numerator,), q.denominator)
        if other._n == 1:
            return Scalar._build(self._n, [x * other._c[0] for x in self._c], self._d * other._d)
        if self._n == 1:
            return Scalar._build(other._n, [x * self._c[0] for x in other._c], self._d * other._d)
        n, a, b = self._align(other)
        return Scalar._build(n, _tables(n).mul(a, b), self._d * other._d)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        """Multiplicative inverse: the product of the other Galois conjugates over the norm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self._n == 1:
            q = Fraction(self._d, self._c[0])
            return Scalar._raw(1, (q.numerator,), q.denominator)
        n = self._n
        t = _tables(n)
        c = self._c
        prod = None
        for u in range(2, n):
            if gcd(u, n) != 1:
                continue
            folded = [0] * n
            for k, x in enumerate(c):
                if x:
                    folded[(u * k) % n] += x
            conj = t.reduce(folded)
            prod = conj if prod is None else t.mul(prod, conj)
        norm = t.mul(list(c), prod)
        # the norm of the integer vector c is a nonzero rational integer
        assert not any(norm[1:]) and norm[0]
        return Scalar._build(n, [x * self._d for x in prod], norm[0])

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._n == other._n and self._d == other._d and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            if self._n == 1:
                self._hash = hash(Fraction(self._c[0], self._d))
            else:
                self._hash = hash((self._n, self._c, self._d))
        return self._hash

    # -- display / serialization ------------------------------------------

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if self._n == 1:
            return str(Fraction(self._c[0], self._d))
        terms = []
        for k, q in enumerate(self.coeffs):
            if not q:
                continue
            if k == 0:
                terms.append(str(q))
            else:
                mono = f"z{self._n}" if k == 1 else f"z{self._n}^{k}"
                if q == 1:
                    terms.append(mono)
                elif q == -1:
                    terms.append("-" + mono)
                else:
                    terms.append(f"{q}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"N": self._n, "coeffs": [str(q) for q in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "Scalar":
        """Accept the object form, a bare rational ``"p/q"`` / int, or ``"e(p/q)"``."""
        if isinstance(obj, str) and obj.strip().startswith("e(") and obj.strip().endswith(")"):
            # e(a) = exp(2 pi i a), a rational
            return root_of_unity(parse_rational(obj.strip()[2:-1]))
        if isinstance(obj, (str, int)) and not isinstance(obj, bool):
            return cls(parse_rational(obj))
        if not isinstance(obj, dict) or "N" not in obj or "coeffs" not in obj:
            raise ParseError(f"scalar must be {{'N': int, 'coeffs': [...]}}, got {obj!r}")
        n = obj["N"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ParseError(f"scalar conductor must be a positive integer, got {n!r}")
        coeffs = obj["coeffs"]
        if not isinstance(coeffs, list) or len(coeffs) != euler_phi(n):
            raise ParseError(f"scalar with N={n} needs exactly {euler_phi(n)} coeffs, got {coeffs!r}")
        return cls.from_coeffs(n, [parse_rational(c) for c in coeffs])


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, _RationalABC) and not isinstance(x, bool):
        q = Fraction(x)
        return Scalar._raw(1, (q.numerator,), q.denominator)
    return NotImplemented


ZERO = Scalar(0)
ONE = Scalar(1)


# ---------------------------------------------------------------------------
# public constructors / operations
# ---------------------------------------------------------------------------

def zeta(n: int) -> Scalar:
    """The primitive root exp(2*pi*i/n)."""
    return root_of_unity(Fraction(1, n))


def root_of_unity(e) -> Scalar:
    """exp(2*pi*i*e) for a rational e, as a Scalar at minimal conductor."""
    e = parse_rational(e) if isinstance(e, str) else Fraction(e)
    q = e.denominator
    coeffs = [0] * q
    coeffs[e.numerator % q] = 1
    return Scalar.from_coeffs(q, coeffs)


def scalar_arith(a, b, op: str) -> Scalar:
    """Dispatch ``add``/``sub``/``mul``/``div`` on two Scalars."""
    a, b = Scalar(a), Scalar(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# Polynomial
# ---------------------------------------------------------------------------

class Polynomial:
    """Univariate polynomial with Scalar coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [c if isinstance(c, Scalar) else Scalar(c) for c in coeffs]
        while len(cs) > 1 and cs[-1].is_zero():
            cs.pop()
        if not cs:
            cs = [ZERO]
        self.coeffs = tuple(cs)

    @classmethod
    def monomial_x(cls):
        return cls([0, 1])

    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0].is_zero():
            return -1
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Scalar:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return self.lead == 1

    def is_zero(self) -> bool:
        return self.degree < 0

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial([(a[k] if k < len(a) else ZERO) + (b[k] if k < len(b) else ZERO)
                           for k in range(n)])

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        return self + (-other)

    def __rsub__(self, other):
        return Polynomial([other]) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial([c * other for c in self.coeffs])
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = other.lead.inverse()
        quot = [ZERO] * max(len(rem) - db, 1)
        for k in range(len(rem) - 1, db - 1, -1):
            t = rem[k] * inv_lead
            if t.is_zero():
                continue
            quot[k - db] = t
            for j, b in enumerate(other.coeffs):
                rem[k - db + j] = rem[k - db + j] - t * b
        return Polynomial(quot), Polynomial(rem[:db] if db > 0 else [ZERO])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self * self.lead.inverse()

    def gcd(self, other) -> "Polynomial":
        """Monic gcd (zero only if both are zero)."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def conductor(self) -> int:
        n = 1
        for c in self.coeffs:
            n = _lcm(n, c.conductor)
        return n

    def roots(self):
        """Roots lying in the coefficient field, with multiplicity.

        Returns ``(roots, rest)`` where ``rest`` is the monic cofactor with no
        root in Q(zeta_K) (K = lcm(2, coefficient conductor)).
        """
        from ._roots import field_roots
        return field_roots(self)

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero() and self.degree > 0:
                continue
            mono = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
            sign = "+"
            if c.is_rational() and c.to_fraction() < 0:
                sign, c = "-", -c
            if not mono:
                body = str(c) if c.is_rational() else f"({c})"
            elif c == 1:
                body = mono
            else:
                body = (str(c) if c.is_rational() else f"({c})") + "*" + mono
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]


def cyclotomic_polynomial(n: int) -> Polynomial:
    """Phi_n, computed by exact division of X^n - 1 by the lower Phi_d."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"cyclotomic_polynomial needs N >= 1, got {n!r}")
    return Polynomial(list(_cyclotomic_int(n)))
