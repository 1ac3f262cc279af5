"""Per-vertex eigenvalue supports and strong-cospectrality classification.

For a symmetric integer matrix M attached to a graph, the support of a
vertex u is the set of eigenvalues whose eigenprojection keeps a component
of e_u; it equals the root set of the minimal polynomial of e_u under M.
Projections F e_u are computed exactly over Q or Q(sqrt(d)) by Lagrange
products over the support roots, never by a full eigendecomposition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .exactalg import (
    IntPolynomial,
    apply_poly,
    factor_support,
    mat_vec,
    poly_bezout,
    poly_gcd,
    quad,
    unit_vector,
    vector_minpoly,
)
from .graphs import Graph, adjacency, laplacian, signless_laplacian

LAPLACIAN = "laplacian"
ADJACENCY = "adjacency"
SIGNLESS_LAPLACIAN = "signless_laplacian"
MATRIX_KINDS = (LAPLACIAN, ADJACENCY, SIGNLESS_LAPLACIAN)


def matrix_of(g: Graph, kind: str) -> list[list[int]]:
    if kind == LAPLACIAN:
        return laplacian(g)
    if kind == ADJACENCY:
        return adjacency(g)
    if kind == SIGNLESS_LAPLACIAN:
        return signless_laplacian(g)
    raise ValueError(f"unknown matrix kind {kind!r}")


def eigenvalue_bound(g: Graph, kind: str) -> int:
    """Integer bound on |eigenvalue| for the chosen matrix."""
    if kind == LAPLACIAN:
        return g.n
    if kind == ADJACENCY:
        return max(g.n - 1, 1)
    if kind == SIGNLESS_LAPLACIAN:
        return 2 * g.n
    raise ValueError(f"unknown matrix kind {kind!r}")


@dataclass(frozen=True)
class IntegerEig:
    """An integer eigenvalue."""
    value: int

    def exact(self):
        return self.value

    def approx(self) -> float:
        return float(self.value)

    def sort_key(self):
        return (self.approx(), 0, self.value, 0, 0)

    def to_json(self):
        return {"type": "integer", "value": self.value}


@dataclass(frozen=True)
class QuadraticEig:
    """Eigenvalue (a + b*sqrt(delta))/2 with b != 0; the sign of b
    distinguishes the two algebraic conjugates."""
    a: int
    b: int
    delta: int

    def exact(self):
        return quad(Fraction(self.a, 2), Fraction(self.b, 2), self.delta)

    def conjugate(self) -> "QuadraticEig":
        return QuadraticEig(self.a, -self.b, self.delta)

    def approx(self) -> float:
        return (self.a + self.b * math.sqrt(self.delta)) / 2

    def sort_key(self):
        return (self.approx(), 1, self.a, self.b, self.delta)

    def to_json(self):
        return {"type": "quadratic", "a": self.a, "b": self.b, "delta": self.delta}


@dataclass(frozen=True)
class ResidualEig:
    """Stand-in for the roots of a monic factor with no integer or
    quadratic roots (degree >= 3); exact values are not represented."""
    poly: IntPolynomial

    def approx(self) -> float:
        return math.inf

    def sort_key(self):
        return (math.inf, 2, self.poly.coeffs, 0, 0)

    def to_json(self):
        return {"type": "residual", "coeffs": list(self.poly.coeffs)}


EigenvalueId = Union[IntegerEig, QuadraticEig, ResidualEig]


def ids_from_factorization(fac) -> list[EigenvalueId]:
    ids: list[EigenvalueId] = [IntegerEig(r) for r in fac.integer_roots]
    for a, b, d in fac.quadratic_roots:
        ids.append(QuadraticEig(a, b, d))
        ids.append(QuadraticEig(a, -b, d))
    if fac.residual.degree >= 1:
        ids.append(ResidualEig(fac.residual))
    return sorted(ids, key=lambda e: e.sort_key())


@dataclass
class SupportProfile:
    matrix_kind: str
    u: int
    minpoly: IntPolynomial
    support: list  # EigenvalueId, sorted ascending, residual last
    projections: dict  # EigenvalueId -> exact vector (Fraction/QuadExt entries)
    residual: Optional[IntPolynomial]  # None when the support splits fully

    @property
    def residual_present(self) -> bool:
        return self.residual is not None

    def projection_sum(self, n: int) -> list:
        """Sum of all represented projections; conjugate pairs are added
        first so the total stays rational even across several extensions."""
        total = [Fraction(0)] * n
        for eig, vec in self.projections.items():
            if isinstance(eig, QuadraticEig):
                if eig.b < 0:
                    continue
                conj = self.projections[QuadraticEig(eig.a, -eig.b, eig.delta)]
                vec = [x + y for x, y in zip(vec, conj)]
            total = [t + x for t, x in zip(total, vec)]
        return total

    def residual_remainder(self, n: int) -> list:
        """e_u minus all represented projections: the residual component."""
        total = self.projection_sum(n)
        return [(Fraction(1) if i == self.u else Fraction(0)) - total[i]
                for i in range(n)]


def _projection(m, e_u, target: EigenvalueId, others: list[EigenvalueId],
                residual: Optional[IntPolynomial]):
    """Lagrange product of (M - mu I)/(lambda - mu) over the other support
    roots applied to e_u; conjugate pairs foreign to the target's field are
    folded into rational quadratic factors, and a residual factor is applied
    wholesale and divided by its value at the target."""
    lam = target.exact()
    if isinstance(lam, int):
        lam = Fraction(lam)  # keep all divisions exact
    w: list = list(e_u)

    if residual is not None and residual.degree >= 1:
        w = apply_poly(m, residual.coeffs, w)
        rv = residual(lam)
        if rv == 0:
            raise AssertionError("residual vanishes at a split eigenvalue")
        w = [x / rv for x in w]

    seen_pairs: set[tuple[int, int, int]] = set()
    for other in others:
        if isinstance(other, ResidualEig):
            continue
        if isinstance(other, IntegerEig):
            mu = other.value
            mv = mat_vec(m, w)
            w = [(x - mu * y) / (lam - mu) for x, y in zip(mv, w)]
            continue
        same_field = (isinstance(target, QuadraticEig)
                      and other.delta == target.delta)
        if same_field:
            mu = other.exact()
            mv = mat_vec(m, w)
            w = [(x - mu * y) / (lam - mu) for x, y in zip(mv, w)]
        else:
            key = (other.a, abs(other.b), other.delta)
            if key in seen_pairs:
                continue
            seen_pairs.add(key)
            a, b, d = key
            t4 = a * a - b * b * d
            if t4 % 4:
                raise AssertionError("quadratic eigenvalue is not an algebraic integer")
            t = t4 // 4
            div = lam * lam - a * lam + t
            mv = mat_vec(m, w)
            mmv = mat_vec(m, mv)
            w = [(xx - a * x + t * y) / div for xx, x, y in zip(mmv, mv, w)]
    return w


def support_profile(g: Graph, kind: str, u: int) -> SupportProfile:
    """Exact eigenvalue support of vertex u with projection vectors.

    Projections are produced for integer and quadratic eigenvalues; a
    residual factor (degree >= 3, no integer or quadratic roots) is flagged
    and its component recovered as e_u minus the rest.
    """
    if not g.is_connected():
        raise ValueError("support_profile requires a connected graph")
    if not 0 <= u < g.n:
        raise ValueError(f"vertex {u} out of range")
    m = matrix_of(g, kind)
    e_u = unit_vector(g.n, u)
    p = vector_minpoly(m, e_u)
    fac = factor_support(p, eigenvalue_bound(g, kind))
    ids = ids_from_factorization(fac)
    residual = fac.residual if fac.residual.degree >= 1 else None
    projections = {}
    split_ids = [e for e in ids if not isinstance(e, ResidualEig)]
    for eig in split_ids:
        others = [o for o in split_ids if o != eig]
        vec = _projection(m, e_u, eig, others, residual)
        if all(x == 0 for x in vec):
            raise AssertionError("support root with vanishing projection")
        projections[eig] = vec
    return SupportProfile(kind, u, p, ids, projections, residual)


NOT_COSPECTRAL = "not_cospectral"
STRONGLY_COSPECTRAL = "strongly_cospectral"


@dataclass
class CospectralityProfile:
    matrix_kind: str
    u: int
    v: int
    status: str
    witness: Optional[EigenvalueId]
    plus_set: list
    minus_set: list
    z_plus: Optional[list]
    z_minus: Optional[list]

    @property
    def strongly_cospectral(self) -> bool:
        return self.status == STRONGLY_COSPECTRAL


def classify_by_minpolys(g: Graph, kind: str, u: int, v: int):
    """Minimal polynomials of e_u - e_v and e_u + e_v.

    Their root sets are the eigenvalues whose projections of e_u and e_v
    differ, respectively do not cancel; u and v are strongly cospectral
    exactly when the two are coprime and multiply to the minimal polynomial
    of e_u.
    """
    if u == v:
        raise ValueError("classify_by_minpolys requires u != v")
    m = matrix_of(g, kind)
    n = g.n
    diff = [0] * n
    diff[u], diff[v] = 1, -1
    summ = [0] * n
    summ[u] = summ[v] = 1
    poly_minus = vector_minpoly(m, diff)
    poly_plus = vector_minpoly(m, summ)
    return poly_minus, poly_plus


def minpoly_split_is_cospectral(poly_minus: IntPolynomial,
                                poly_plus: IntPolynomial,
                                minpoly_u: IntPolynomial) -> bool:
    return (poly_gcd(poly_minus, poly_plus) == IntPolynomial.one()
            and poly_minus * poly_plus == minpoly_u)


def _bezout_projection(m, vec, keep: IntPolynomial, kill: IntPolynomial):
    """Project vec onto the eigenspaces of keep's roots: with
    s*keep + t*kill = 1, the operator t(M) kill(M) fixes those components
    and annihilates the components at kill's roots."""
    _, t_cof, gpoly = poly_bezout(keep, kill)
    if [c for c in gpoly] != [Fraction(1)]:
        raise AssertionError("projector polynomials are not coprime")
    w = apply_poly(m, [Fraction(c) for c in kill.coeffs], vec)
    return apply_poly(m, t_cof, w)


def cospectrality_profile(g: Graph, kind: str, u: int, v: int,
                          profiles: Optional[dict] = None) -> CospectralityProfile:
    """Exact plus/minus classification of the common support of u and v.

    Every eigenvalue where the projections of e_u and e_v are equal lands in
    plus_set, negated ones in minus_set; any other relation certifies that
    the pair is not strongly cospectral, with the witness eigenvalue kept.
    Residual factors are classified through the minimal polynomials of
    e_u -+ e_v, splitting into plus and minus parts when both occur.
    Callers scanning many pairs may pass precomputed support profiles keyed
    by vertex.
    """
    if not g.is_connected():
        raise ValueError("cospectrality_profile requires a connected graph")
    if u == v:
        raise ValueError("cospectrality_profile requires u != v")
    if profiles is not None:
        pu, pv = profiles[u], profiles[v]
    else:
        pu = support_profile(g, kind, u)
        pv = support_profile(g, kind, v)

    def not_cospectral(witness):
        return CospectralityProfile(kind, u, v, NOT_COSPECTRAL, witness,
                                    [], [], None, None)

    set_u = set(pu.support)
    set_v = set(pv.support)
    if set_u != set_v:
        witness = sorted(set_u.symmetric_difference(set_v),
                         key=lambda e: e.sort_key())[0]
        return not_cospectral(witness)

    plus, minus = [], []
    for eig in pu.support:
        if isinstance(eig, ResidualEig):
            continue
        fu, fv = pu.projections[eig], pv.projections[eig]
        if fu == fv:
            plus.append(eig)
        elif fu == [-x for x in fv]:
            minus.append(eig)
        else:
            return not_cospectral(eig)

    if pu.residual is not None:
        rr = pu.residual
        poly_minus, poly_plus = classify_by_minpolys(g, kind, u, v)
        r_minus = poly_gcd(rr, poly_minus)
        r_plus = poly_gcd(rr, poly_plus)
        if r_minus * r_plus != rr:
            return not_cospectral(ResidualEig(rr))
        if r_plus.degree >= 1:
            plus.append(ResidualEig(r_plus))
        if r_minus.degree >= 1:
            minus.append(ResidualEig(r_minus))

    m = matrix_of(g, kind)
    e_u = unit_vector(g.n, u)
    z_plus = _bezout_projection(m, e_u, _dedup_poly(plus), _dedup_poly(minus))
    z_minus = [a - b for a, b in zip([Fraction(x) for x in e_u], z_plus)]
    return CospectralityProfile(kind, u, v, STRONGLY_COSPECTRAL, None,
                                plus, minus, z_plus, z_minus)


def _eig_factor(eig: EigenvalueId) -> IntPolynomial:
    if isinstance(eig, IntegerEig):
        return IntPolynomial.x_minus(eig.value)
    if isinstance(eig, QuadraticEig):
        t4 = eig.a * eig.a - eig.b * eig.b * eig.delta
        return IntPolynomial((t4 // 4, -eig.a, 1))
    return eig.poly


def _dedup_poly(ids: list) -> IntPolynomial:
    """Product of minimal factors over the ids, counting each conjugate
    pair once."""
    out = IntPolynomial.one()
    seen: set = set()
    for eig in ids:
        if isinstance(eig, QuadraticEig):
            key = (eig.a, abs(eig.b), eig.delta)
            if key in seen:
                continue
            seen.add(key)
        out = out * _eig_factor(eig)
    return out
