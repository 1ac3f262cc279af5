"""Exact integer, rational, and quadratic-extension linear algebra.

Everything in this module is exact: matrices are dense lists of rows over
Python ints or Fractions, polynomials carry arbitrary-precision integer
coefficients, and scalars extend to Q(sqrt(d)) where needed.  No floating
point anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union


def squarefree_part(n: int) -> tuple[int, int]:
    """Split n > 0 as b^2 * d with d squarefree; returns (b, d)."""
    if n <= 0:
        raise ValueError("squarefree_part requires n > 0")
    b, d = 1, 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            b *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    return b, d * n


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class QuadExt:
    """Exact scalar a + b*sqrt(d) with rational a, b and squarefree d > 1.

    Construct through :func:`quad` which collapses b == 0 back to Fraction.
    Arithmetic mixing two different d values raises; callers gate on a
    single extension before doing any mixed arithmetic.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ValueError(f"mixed extensions sqrt({self.d}) vs sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quad(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quad(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quad(o.a - self.a, o.b - self.b, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quad(self.a * o.a + self.b * o.b * self.d,
                    self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        norm = o.a * o.a - o.b * o.b * self.d
        if norm == 0:
            raise ZeroDivisionError("division by zero quadratic scalar")
        inv = QuadExt(o.a / norm, -o.b / norm, self.d)
        return self * inv

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.d}))"


Scalar = Union[int, Fraction, QuadExt]


def quad(a, b, d: int) -> Scalar:
    """Normalizing constructor: b == 0 falls back to a plain Fraction."""
    b = Fraction(b)
    if b == 0:
        return Fraction(a)
    if d <= 1 or squarefree_part(d)[1] != d:
        raise ValueError(f"{d} is not a squarefree integer > 1")
    return QuadExt(a, b, d)


class IntPolynomial:
    """Univariate polynomial with integer coefficients, stored ascending.

    Normalized so the leading coefficient is nonzero; the zero polynomial
    has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(int(c) for c in cs)

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def x_minus(cls, root: int) -> "IntPolynomial":
        return cls((-root, 1))

    @classmethod
    def from_roots(cls, roots: Sequence[int]) -> "IntPolynomial":
        p = cls.one()
        for r in roots:
            p = p * cls.x_minus(r)
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, x: Scalar) -> Scalar:
        acc: Scalar = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = list(self.coeffs) + [0] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] -= c
        return IntPolynomial(out)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero() or other.is_zero():
            return IntPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def scale(self, k: int) -> "IntPolynomial":
        return IntPolynomial(c * k for c in self.coeffs)

    def divmod_monic(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Division with remainder by a monic divisor; stays in Z[x]."""
        if not divisor.is_monic():
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dd = divisor.degree
        if len(rem) - 1 < dd:
            return IntPolynomial.zero(), IntPolynomial(rem)
        q = [0] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                q[i - dd] = c
                for j, b in enumerate(divisor.coeffs):
                    rem[i - dd + j] -= c * b
        return IntPolynomial(q), IntPolynomial(rem)

    def divides(self, other: "IntPolynomial") -> bool:
        if self.is_zero():
            return other.is_zero()
        if not self.is_monic():
            raise ValueError("divisibility test implemented for monic divisors")
        _, r = other.divmod_monic(self)
        return r.is_zero()

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> "IntPolynomial":
        if self.is_zero():
            return self
        c = self.content()
        if self.coeffs[-1] < 0:
            c = -c
        return IntPolynomial(x // c for x in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "IntPolynomial(0)"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*x" if c != 1 else "x")
            else:
                terms.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return "IntPolynomial(" + " + ".join(terms) + ")"


# -- rational polynomial helpers (internal: lists of Fractions, ascending) --

def _frac_poly(p: IntPolynomial) -> list[Fraction]:
    return [Fraction(c) for c in p.coeffs]


def _frac_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _frac_divmod(a: list[Fraction], b: list[Fraction]):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = a[:]
    q = [Fraction(0)] * max(0, len(rem) - len(b) + 1)
    lead = b[-1]
    for i in range(len(rem) - 1, len(b) - 2, -1):
        c = rem[i] / lead
        if c:
            q[i - (len(b) - 1)] = c
            for j, bc in enumerate(b):
                rem[i - (len(b) - 1) + j] -= c * bc
    return q, _frac_trim(rem)


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Greatest common divisor in Z[x], normalized monic-primitive."""
    fa, fb = _frac_poly(a), _frac_poly(b)
    while fb:
        _, r = _frac_divmod(fa, fb)
        fa, fb = fb, r
    if not fa:
        return IntPolynomial.zero()
    lead = fa[-1]
    monic = [c / lead for c in fa]
    den = math.lcm(*(c.denominator for c in monic))
    return IntPolynomial(int(c * den) for c in monic).primitive()


def poly_bezout(a: IntPolynomial, b: IntPolynomial):
    """Extended Euclid over Q: returns (u, v, g) with u*a + v*b = g, g monic.

    u and v are lists of Fractions (ascending coefficients).
    """
    r0, r1 = _frac_poly(a), _frac_poly(b)
    u0, u1 = [Fraction(1)], []
    v0, v1 = [], [Fraction(1)]

    def sub(p, q, f):
        out = p[:] + [Fraction(0)] * max(0, len(q) + len(f) - 1 - len(p))
        for i, qc in enumerate(q):
            if qc:
                for j, fc in enumerate(f):
                    out[i + j] -= qc * fc
        return _frac_trim(out)

    while r1:
        q, r = _frac_divmod(r0, r1)
        q = _frac_trim(q)
        r0, r1 = r1, r
        u0, u1 = u1, sub(u0, u1, q)
        v0, v1 = v1, sub(v0, v1, q)
    if not r0:
        raise ValueError("bezout of two zero polynomials")
    lead = r0[-1]
    g = [c / lead for c in r0]
    u = [c / lead for c in u0]
    v = [c / lead for c in v0]
    return u, v, g


def sturm_count(p: IntPolynomial, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in the open interval (lo, hi).

    Requires p(lo) != 0 and p(hi) != 0.
    """
    f = _frac_poly(p)
    if not f:
        raise ValueError("sturm_count of the zero polynomial")

    def ev(poly, x):
        acc = Fraction(0)
        for c in reversed(poly):
            acc = acc * x + c
        return acc

    if ev(f, lo) == 0 or ev(f, hi) == 0:
        raise ValueError("sturm_count endpoints must not be roots")
    chain = [f, _frac_trim([i * c for i, c in enumerate(f)][1:])]
    while chain[-1]:
        _, r = _frac_divmod(chain[-2], chain[-1])
        chain.append([-c for c in r])
    chain.pop()

    def variations(x):
        signs = []
        for poly in chain:
            val = ev(poly, x)
            if val:
                signs.append(val > 0)
        return sum(1 for s, t in zip(signs, signs[1:]) if s != t)

    return variations(lo) - variations(hi)


# -- matrices: dense lists of rows over int / Fraction / QuadExt ------------

def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_vec(m, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in m]


def vec_sub(a, b):
    return [x - y for x, y in zip(a, b)]


def vec_scale(v, k):
    return [k * x for x in v]


def unit_vector(n: int, i: int) -> list[int]:
    e = [0] * n
    e[i] = 1
    return e


def _check_square(m) -> int:
    n = len(m)
    for row in m:
        if len(row) != n:
            raise ValueError("matrix is not square")
    return n


def det_bareiss(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    n = _check_square(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def charpoly(m: Sequence[Sequence[int]]) -> IntPolynomial:
    """det(xI - m) by the Berkowitz division-free recursion.

    Exact over the integers; no rational intermediates.
    """
    n = _check_square(m)
    c = [1]  # descending coefficients for the leading 0x0 block
    for r in range(1, n + 1):
        a_rr = m[r - 1][r - 1]
        q = [1, -a_rr]
        if r >= 2:
            row = [m[r - 1][j] for j in range(r - 1)]
            w = [m[i][r - 1] for i in range(r - 1)]
            q.append(-sum(row[j] * w[j] for j in range(r - 1)))
            for _ in range(3, r + 1):
                w = [sum(m[i][j] * w[j] for j in range(r - 1)) for i in range(r - 1)]
                q.append(-sum(row[j] * w[j] for j in range(r - 1)))
        c_new = [0] * (r + 1)
        for i in range(r + 1):
            acc = 0
            for j in range(min(i, len(c) - 1) + 1):
                acc += q[i - j] * c[j]
            c_new[i] = acc
        c = c_new
    return IntPolynomial(reversed(c))


def vector_minpoly(m, v) -> IntPolynomial:
    """Least-degree monic polynomial p with p(m) v = 0, as a primitive
    integer polynomial.

    For symmetric integer m the result is monic over Z and its roots are
    exactly the eigenvalues whose eigenprojection keeps a component of v.
    The zero vector returns the constant 1.
    """
    n = _check_square(m)
    if len(v) != n:
        raise ValueError("vector length does not match matrix")
    if all(isinstance(x, int) for row in m for x in row) and all(
            isinstance(x, int) for x in v):
        return _minpoly_int(m, v)
    fm = [[Fraction(x) for x in row] for row in m]
    fv = [Fraction(x) for x in v]
    return _minpoly_frac(fm, fv)


def _minpoly_int(m, v) -> IntPolynomial:
    if all(x == 0 for x in v):
        return IntPolynomial.one()
    n = len(v)
    basis: list[tuple[int, list[int], list[int]]] = []  # (pivot, vec, combo)
    w = list(v)
    k = 0
    while True:
        combo = [0] * (k + 1)
        combo[k] = 1
        vec = w[:]
        for pivot, bvec, bcombo in basis:
            if vec[pivot]:
                g = math.gcd(vec[pivot], bvec[pivot])
                mul_v, mul_b = bvec[pivot] // g, vec[pivot] // g
                vec = [mul_v * x - mul_b * y for x, y in zip(vec, bvec)]
                combo = [mul_v * x for x in combo]
                for i, y in enumerate(bcombo):
                    combo[i] -= mul_b * y
        if all(x == 0 for x in vec):
            poly = IntPolynomial(combo).primitive()
            if not poly.is_monic():
                raise AssertionError("minimal polynomial failed to be monic")
            return poly
        g = math.gcd(*(vec + combo))
        if g > 1:
            vec = [x // g for x in vec]
            combo = [x // g for x in combo]
        pivot = next(i for i, x in enumerate(vec) if x)
        basis.append((pivot, vec, combo))
        w = [sum(m[i][j] * w[j] for j in range(n)) for i in range(n)]
        k += 1


def _minpoly_frac(m, v) -> IntPolynomial:
    if all(x == 0 for x in v):
        return IntPolynomial.one()
    n = len(v)
    basis: list[tuple[int, list[Fraction], list[Fraction]]] = []
    w = v[:]
    k = 0
    while True:
        combo = [Fraction(0)] * (k + 1)
        combo[k] = Fraction(1)
        vec = w[:]
        for pivot, bvec, bcombo in basis:
            if vec[pivot]:
                f = vec[pivot] / bvec[pivot]
                vec = [x - f * y for x, y in zip(vec, bvec)]
                for i, y in enumerate(bcombo):
                    combo[i] -= f * y
        if all(x == 0 for x in vec):
            lead = combo[-1]
            monic = [c / lead for c in combo]
            den = math.lcm(*(c.denominator for c in monic))
            return IntPolynomial(int(c * den) for c in monic).primitive()
        pivot = next(i for i, x in enumerate(vec) if x)
        basis.append((pivot, vec, combo))
        w = [sum(m[i][j] * w[j] for j in range(n)) for i in range(n)]
        k += 1


class SupportFactorization:
    """Split of a monic squarefree polynomial into integer roots, quadratic
    conjugate pairs (a +/- b sqrt(d))/2, and a residual with neither."""

    __slots__ = ("integer_roots", "quadratic_roots", "residual")

    def __init__(self, integer_roots, quadratic_roots, residual: IntPolynomial):
        self.integer_roots = sorted(integer_roots)
        self.quadratic_roots = sorted(quadratic_roots)
        self.residual = residual

    def reconstruct(self) -> IntPolynomial:
        p = IntPolynomial.one()
        for r in self.integer_roots:
            p = p * IntPolynomial.x_minus(r)
        for a, b, d in self.quadratic_roots:
            # minimal polynomial of (a + b sqrt(d))/2: x^2 - a x + (a^2 - b^2 d)/4
            t4 = a * a - b * b * d
            if t4 % 4:
                raise AssertionError("quadratic pair with non-integral norm")
            p = p * IntPolynomial((t4 // 4, -a, 1))
        return p * self.residual

    def __repr__(self):
        return (f"SupportFactorization(int={self.integer_roots}, "
                f"quad={self.quadratic_roots}, residual={self.residual})")


def factor_support(p: IntPolynomial, root_bound: int) -> SupportFactorization:
    """Extract all integer roots and all monic quadratic factors with
    conjugate irrational real roots inside [-root_bound, root_bound].

    The quadratic search is exhaustive within the bound, so the residual
    genuinely has no monic integer factor of degree <= 2 with roots in
    range.  Requires p monic with distinct real roots.
    """
    if not p.is_monic():
        raise ValueError("factor_support requires a monic polynomial")
    if p.degree >= 1 and not poly_gcd(p, p.derivative()) == IntPolynomial.one():
        raise ValueError("factor_support requires distinct roots")
    bound = int(root_bound)
    q = p
    integer_roots = []
    if q.degree >= 1 and q.coeffs[0] == 0:
        integer_roots.append(0)
        q, _ = q.divmod_monic(IntPolynomial((0, 1)))
    c0 = q.coeffs[0] if q.degree >= 0 else 1
    for cand in range(-bound, bound + 1):
        if cand == 0 or q.degree < 1:
            continue
        if c0 % cand == 0 and q(cand) == 0:
            q, _ = q.divmod_monic(IntPolynomial.x_minus(cand))
            integer_roots.append(cand)
    quadratic_roots = []
    while q.degree >= 2:
        hit = _find_quadratic_factor(q, bound)
        if hit is None:
            break
        s, t = hit
        q, _ = q.divmod_monic(IntPolynomial((t, -s, 1)))
        disc = s * s - 4 * t
        b, d = squarefree_part(disc)
        quadratic_roots.append((s, b, d))
    return SupportFactorization(integer_roots, quadratic_roots, q)


def _find_quadratic_factor(q: IntPolynomial, bound: int):
    """First (s, t) with x^2 - s x + t dividing q, real irrational roots in
    [-bound, bound]; None if no such factor exists."""
    if q.degree == 2:
        s, t = -q.coeffs[1], q.coeffs[0]
        disc = s * s - 4 * t
        if disc <= 0 or math.isqrt(disc) ** 2 == disc:
            raise ValueError("quadratic remainder without irrational real roots")
        return s, t
    for s in range(-2 * bound, 2 * bound + 1):
        # both roots in [-bound, bound]: q2(+/-bound) >= 0 and disc > 0
        t_lo = abs(s) * bound - bound * bound
        t_hi = (s * s - 1) // 4 if s * s >= 1 else -1
        for t in range(t_lo, t_hi + 1):
            disc = s * s - 4 * t
            if disc <= 0 or math.isqrt(disc) ** 2 == disc:
                continue
            quad_poly = IntPolynomial((t, -s, 1))
            if quad_poly.divides(q):
                return s, t
    return None


def rank_mod_p(m: Sequence[Sequence[int]], p: int) -> int:
    """Rank of an integer matrix over the prime field Z_p, p an odd prime."""
    if not is_odd_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if not m:
        return 0
    rows = [[x % p for x in row] for row in m]
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def apply_factored(m, v, factors) -> list:
    """Apply the product of (m - shift*I)/divisor factors to v, left to right.

    Shifts and divisors may be ints, Fractions, or QuadExt scalars; the
    result vector lives in the smallest field containing them all.
    """
    w = list(v)
    for shift, divisor in factors:
        if divisor == 0:
            raise ZeroDivisionError("factor with zero divisor")
        mv = mat_vec(m, w)
        w = [(x - shift * y) / divisor for x, y in zip(mv, w)]
    return w


def apply_poly(m, coeffs: Sequence, v) -> list:
    """Apply p(m) to v by Horner's rule; coeffs ascending, any exact scalar."""
    n = len(v)
    w = [coeffs[-1] * x for x in v] if coeffs else [0] * n
    for c in reversed(coeffs[:-1]):
        w = mat_vec(m, w)
        if c != 0:
            w = [x + c * y for x, y in zip(w, v)]
    return w
