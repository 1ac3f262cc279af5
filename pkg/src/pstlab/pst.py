"""Exact perfect-state-transfer decisions for Laplacian and adjacency walks.

A pair (u, v) admits perfect state transfer under exp(itM) exactly when
u, v are strongly cospectral, the support eigenvalues have the right
algebraic form, and the plus/minus classification matches a parity split
of the (rescaled) integer support.  Positive verdicts carry the transfer
time and phase; negative verdicts carry one machine-checkable certificate
naming the violated condition.  A floating-point matrix-exponential
oracle cross-checks positives but never decides anything.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .exactalg import IntPolynomial, factor_support, poly_gcd, vector_minpoly, unit_vector
from .graphs import Graph, bipartition, write_graph6
from .spectral import (
    ADJACENCY,
    LAPLACIAN,
    EigenvalueId,
    IntegerEig,
    QuadraticEig,
    ResidualEig,
    classify_by_minpolys,
    eigenvalue_bound,
    ids_from_factorization,
    matrix_of,
    support_profile,
)

YES = "yes"
NO = "no"
UNDECIDED = "undecided"

# certificate kinds for negative verdicts
NOT_STRONGLY_COSPECTRAL = "not-strongly-cospectral"
NON_INTEGER_SUPPORT = "non-integer-support"
PARITY_VIOLATION = "parity-violation"
MIXED_DELTA = "mixed-delta"
RESIDUAL_FACTOR = "residual-factor"
QUADRATIC_MIXED_A = "quadratic-mixed-a"


@dataclass
class Certificate:
    """Why perfect state transfer fails, with enough data to replay."""
    kind: str
    witnesses: tuple = ()
    detail: str = ""
    poly_minus: Optional[IntPolynomial] = None
    poly_plus: Optional[IntPolynomial] = None
    minpoly_u: Optional[IntPolynomial] = None
    gcd_value: Optional[int] = None
    claimed_class: Optional[str] = None

    def to_json(self):
        out = {"kind": self.kind, "detail": self.detail,
               "witnesses": [w.to_json() for w in self.witnesses]}
        if self.gcd_value is not None:
            out["g"] = self.gcd_value
        if self.claimed_class is not None:
            out["class"] = self.claimed_class
        for name, poly in (("poly_minus", self.poly_minus),
                           ("poly_plus", self.poly_plus),
                           ("minpoly_u", self.minpoly_u)):
            if poly is not None:
                out[name] = list(poly.coeffs)
        return out


@dataclass
class PSTReport:
    """Full decision record for one ordered query (u, v)."""
    graph6: str
    matrix_kind: str
    u: int
    v: int
    verdict: str
    certificate: Optional[Certificate] = None
    g: Optional[int] = None
    time_coeff: Optional[Fraction] = None   # t = time_coeff * pi / sqrt(time_delta)
    time_delta: int = 1
    phase_s: Optional[Fraction] = None      # gamma = exp(i * pi * phase_s)
    plus_set: tuple = ()
    minus_set: tuple = ()

    @property
    def yes(self) -> bool:
        return self.verdict == YES

    def time_value(self) -> float:
        if self.time_coeff is None:
            raise ValueError("no transfer time on a non-positive report")
        return float(self.time_coeff) * math.pi / math.sqrt(self.time_delta)

    def phase_value(self) -> complex:
        if self.phase_s is None:
            raise ValueError("no phase on a non-positive report")
        return complex(np.exp(1j * math.pi * float(self.phase_s)))

    def to_json(self):
        return {
            "graph6": self.graph6,
            "kind": self.matrix_kind,
            "u": self.u,
            "v": self.v,
            "verdict": self.verdict,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "g": self.g,
            "time": (None if self.time_coeff is None else {
                "num": self.time_coeff.numerator,
                "den": self.time_coeff.denominator,
                "sqrt_delta": self.time_delta,
            }),
            "phase": (None if self.phase_s is None else {
                "s_num": self.phase_s.numerator,
                "s_den": self.phase_s.denominator,
            }),
            "plus_set": [e.to_json() for e in self.plus_set],
            "minus_set": [e.to_json() for e in self.minus_set],
        }


def _validate_pair(g: Graph, u: int, v: int) -> None:
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError(f"vertex pair ({u},{v}) out of range")
    if u == v:
        raise ValueError("perfect state transfer queries need u != v")
    if not g.is_connected():
        raise ValueError("perfect state transfer analysis rejects disconnected graphs")


def _strong_cospectrality_polys(g: Graph, kind: str, u: int, v: int):
    m = matrix_of(g, kind)
    poly_minus, poly_plus = classify_by_minpolys(g, kind, u, v)
    minpoly_u = vector_minpoly(m, unit_vector(g.n, u))
    return poly_minus, poly_plus, minpoly_u


def _cospectrality_gate(g: Graph, kind: str, poly_minus, poly_plus, minpoly_u):
    """None when strongly cospectral, else a certificate with a witness
    eigenvalue taken from the shared factor or the support difference."""
    bound = eigenvalue_bound(g, kind)
    shared = poly_gcd(poly_minus, poly_plus)
    if shared != IntPolynomial.one():
        witness = ids_from_factorization(factor_support(shared, bound))[0]
        return Certificate(NOT_STRONGLY_COSPECTRAL, (witness,),
                           "projections at the witness match neither sign",
                           poly_minus, poly_plus, minpoly_u)
    product = poly_minus * poly_plus
    if product != minpoly_u:
        quotient, rem = product.divmod_monic(minpoly_u)
        if not rem.is_zero():
            raise AssertionError("minimal polynomial does not divide the split product")
        witness = ids_from_factorization(factor_support(quotient, bound))[0]
        return Certificate(NOT_STRONGLY_COSPECTRAL, (witness,),
                           "eigenvalue supports of u and v differ",
                           poly_minus, poly_plus, minpoly_u)
    return None


def laplacian_pst(g: Graph, u: int, v: int) -> PSTReport:
    """Decide Laplacian perfect state transfer between u and v.

    Yes requires strong cospectrality, an all-integer support, and the
    even/odd split of support eigenvalues over their gcd to coincide with
    the plus/minus classification; the transfer then happens at t = pi/g
    with phase 1.
    """
    _validate_pair(g, u, v)
    if g.n < 2:
        raise ValueError("need at least two vertices")
    g6 = write_graph6(g)
    poly_minus, poly_plus, minpoly_u = _strong_cospectrality_polys(g, LAPLACIAN, u, v)
    plus_ids: list = []
    minus_ids: list = []

    def no(cert):
        return PSTReport(g6, LAPLACIAN, u, v, NO, cert,
                         plus_set=tuple(plus_ids), minus_set=tuple(minus_ids))

    cert = _cospectrality_gate(g, LAPLACIAN, poly_minus, poly_plus, minpoly_u)
    if cert is not None:
        return no(cert)
    bound = eigenvalue_bound(g, LAPLACIAN)
    fac_minus = factor_support(poly_minus, bound)
    fac_plus = factor_support(poly_plus, bound)
    plus_ids = ids_from_factorization(fac_plus)
    minus_ids = ids_from_factorization(fac_minus)
    for fac in (fac_plus, fac_minus):
        if fac.residual.degree >= 1:
            return no(Certificate(RESIDUAL_FACTOR, (ResidualEig(fac.residual),),
                                  "support contains non-quadratic irrational eigenvalues",
                                  poly_minus, poly_plus, minpoly_u))
    quad_ids = [e for e in plus_ids + minus_ids if isinstance(e, QuadraticEig)]
    if quad_ids:
        return no(Certificate(NON_INTEGER_SUPPORT, (quad_ids[0],),
                              "support contains an irrational eigenvalue",
                              poly_minus, poly_plus, minpoly_u))
    plus = fac_plus.integer_roots
    minus = fac_minus.integer_roots
    gg = math.gcd(*(plus + minus))
    if gg == 0:
        raise AssertionError("support of a connected graph cannot be {0} alone")
    for lam in plus:
        if (lam // gg) % 2 != 0:
            return no(Certificate(PARITY_VIOLATION, (IntegerEig(lam),),
                                  "plus-classified eigenvalue with odd lambda/g",
                                  poly_minus, poly_plus, minpoly_u,
                                  gcd_value=gg, claimed_class="plus"))
    for lam in minus:
        if (lam // gg) % 2 != 1:
            return no(Certificate(PARITY_VIOLATION, (IntegerEig(lam),),
                                  "minus-classified eigenvalue with even lambda/g",
                                  poly_minus, poly_plus, minpoly_u,
                                  gcd_value=gg, claimed_class="minus"))
    return PSTReport(g6, LAPLACIAN, u, v, YES, None, gg,
                     Fraction(1, gg), 1, Fraction(0),
                     tuple(plus_ids), tuple(minus_ids))


def adjacency_pst(g: Graph, u: int, v: int) -> PSTReport:
    """Decide adjacency perfect state transfer between u and v.

    After the strong-cospectrality gate, the decision cascades on the
    algebraic form of the support: residual factors and mixed quadratic
    extensions are immediate negatives, an all-integer support uses the
    gcd parity split of theta_0 - theta_r, and a pure sqrt(delta) support
    rescales to the integer criterion with time divided by sqrt(delta).
    Supports combining sqrt(delta) halves with a nonzero rational part are
    negatives in bipartite graphs and undecided otherwise.
    """
    _validate_pair(g, u, v)
    g6 = write_graph6(g)
    poly_minus, poly_plus, minpoly_u = _strong_cospectrality_polys(g, ADJACENCY, u, v)
    plus_ids: list = []
    minus_ids: list = []

    def no(kind, witnesses, detail, **kw):
        return PSTReport(g6, ADJACENCY, u, v, NO,
                         Certificate(kind, tuple(witnesses), detail,
                                     poly_minus, poly_plus, minpoly_u, **kw),
                         plus_set=tuple(plus_ids), minus_set=tuple(minus_ids))

    cert = _cospectrality_gate(g, ADJACENCY, poly_minus, poly_plus, minpoly_u)
    if cert is not None:
        return PSTReport(g6, ADJACENCY, u, v, NO, cert)
    bound = eigenvalue_bound(g, ADJACENCY)
    fac_minus = factor_support(poly_minus, bound)
    fac_plus = factor_support(poly_plus, bound)
    plus_ids[:] = ids_from_factorization(fac_plus)
    minus_ids[:] = ids_from_factorization(fac_minus)
    for fac in (fac_plus, fac_minus):
        if fac.residual.degree >= 1:
            return no(RESIDUAL_FACTOR, (ResidualEig(fac.residual),),
                      "support contains non-quadratic irrational eigenvalues")

    classified: list[tuple[EigenvalueId, bool]] = (
        [(e, True) for e in plus_ids] + [(e, False) for e in minus_ids])
    quad_ids = [e for e, _ in classified if isinstance(e, QuadraticEig)]
    int_ids = [e for e, _ in classified if isinstance(e, IntegerEig)]

    if not quad_ids:
        # all-integer support
        values = [(e.value, is_plus) for e, is_plus in classified]
        theta0 = max(val for val, _ in values)
        gg = math.gcd(*(theta0 - val for val, _ in values))
        if gg == 0:
            raise AssertionError("strongly cospectral pair with singleton support")
        for val, is_plus in values:
            if ((theta0 - val) // gg) % 2 != (0 if is_plus else 1):
                return no(PARITY_VIOLATION, (IntegerEig(val),),
                          "parity of (theta0 - theta)/g disagrees with the sign class",
                          gcd_value=gg,
                          claimed_class="plus" if is_plus else "minus")
        return PSTReport(g6, ADJACENCY, u, v, YES, None, gg,
                         Fraction(1, gg), 1, Fraction(theta0, gg) % 2,
                         tuple(plus_ids), tuple(minus_ids))

    deltas = sorted({e.delta for e in quad_ids})
    if len(deltas) > 1:
        w1 = next(e for e in quad_ids if e.delta == deltas[0])
        w2 = next(e for e in quad_ids if e.delta == deltas[1])
        return no(MIXED_DELTA, (w1, w2),
                  "support spans two distinct quadratic extensions")
    a_values = sorted({e.a for e in quad_ids})
    if len(a_values) > 1:
        w1 = next(e for e in quad_ids if e.a == a_values[0])
        w2 = next(e for e in quad_ids if e.a == a_values[1])
        return no(QUADRATIC_MIXED_A, (w1, w2),
                  "quadratic support eigenvalues with two rational parts")
    a = a_values[0]
    bad_int = [e for e in int_ids if 2 * e.value != a]
    if bad_int:
        return no(QUADRATIC_MIXED_A, (bad_int[0], quad_ids[0]),
                  "integer eigenvalue off the common rational part of the support")
    if a != 0:
        if bipartition(g) is not None:
            return no(QUADRATIC_MIXED_A, (quad_ids[0],),
                      "bipartite support cannot contain (a + b sqrt(delta))/2 "
                      "with a and b nonzero")
        return PSTReport(
            g6, ADJACENCY, u, v, UNDECIDED,
            Certificate(QUADRATIC_MIXED_A, (quad_ids[0],),
                        "no decision procedure for quadratic supports with "
                        "nonzero rational part on non-bipartite graphs",
                        poly_minus, poly_plus, minpoly_u),
            plus_set=tuple(plus_ids), minus_set=tuple(minus_ids))

    # pure multiples of sqrt(delta): rescale to the integer criterion
    delta = deltas[0]
    scaled: list[tuple[int, bool]] = []
    for e, is_plus in classified:
        if isinstance(e, QuadraticEig):
            if e.b % 2:
                raise AssertionError("algebraic integer b*sqrt(delta)/2 with odd b")
            scaled.append((e.b // 2, is_plus))
        else:
            scaled.append((0, is_plus))
    c0 = max(c for c, _ in scaled)
    gg = math.gcd(*(c0 - c for c, _ in scaled))
    if gg == 0:
        raise AssertionError("strongly cospectral pair with singleton support")
    for c, is_plus in scaled:
        if ((c0 - c) // gg) % 2 != (0 if is_plus else 1):
            witness = next(e for e, ip in classified
                           if ip == is_plus and _scaled_value(e) == c)
            return no(PARITY_VIOLATION, (witness,),
                      "parity of the rescaled support disagrees with the sign class",
                      gcd_value=gg, claimed_class="plus" if is_plus else "minus")
    return PSTReport(g6, ADJACENCY, u, v, YES, None, gg,
                     Fraction(1, gg), delta, Fraction(c0, gg) % 2,
                     tuple(plus_ids), tuple(minus_ids))


def _scaled_value(e: EigenvalueId) -> int:
    if isinstance(e, QuadraticEig):
        return e.b // 2
    return 0


def pst_search(g: Graph, kind: str) -> list[PSTReport]:
    """Scan all unordered vertex pairs; returns the positive reports."""
    if not g.is_connected():
        raise ValueError("perfect state transfer analysis rejects disconnected graphs")
    decide = laplacian_pst if kind == LAPLACIAN else adjacency_pst
    out = []
    for u in range(g.n):
        for v in range(u + 1, g.n):
            report = decide(g, u, v)
            if report.yes:
                out.append(report)
    return out


def all_pair_reports(g: Graph, kind: str) -> list[PSTReport]:
    """Decision record for every unordered pair, positive or not."""
    if not g.is_connected():
        raise ValueError("perfect state transfer analysis rejects disconnected graphs")
    decide = laplacian_pst if kind == LAPLACIAN else adjacency_pst
    return [decide(g, u, v) for u in range(g.n) for v in range(u + 1, g.n)]


def numeric_fidelity(g: Graph, kind: str, u: int, v: int, t: float) -> float:
    """|exp(itM)_{v,u}|^2 in floating point; the cross-check oracle."""
    m = np.array(matrix_of(g, kind), dtype=float)
    eigvals, eigvecs = np.linalg.eigh(m)
    amp = (eigvecs * np.exp(1j * t * eigvals)) @ eigvecs.T
    return float(abs(amp[v, u]) ** 2)


def exact_transfer_vector(g: Graph, kind: str, u: int,
                          plus_ids, minus_ids) -> list:
    """Sum of plus projections minus sum of minus projections of e_u.

    For a genuine transfer instance this equals e_v exactly; swapping any
    eigenvalue between the classes must break that identity.
    """
    prof = support_profile(g, kind, u)
    if prof.residual_present:
        raise ValueError("exact reconstruction needs a fully split support")
    out = [Fraction(0)] * g.n
    for eig in plus_ids:
        out = [x + y for x, y in zip(out, prof.projections[eig])]
    for eig in minus_ids:
        out = [x - y for x, y in zip(out, prof.projections[eig])]
    return out


def bipartite_phase_check(report: PSTReport, g: Graph) -> tuple[bool, str]:
    """Structural assertions for adjacency transfer across a bipartition:
    phase +/- i, equal 2-adic valuation across the support, and 0 absent.

    Preconditions (verdict yes, adjacency kind, bipartite graph, endpoints
    in different classes) raise; assertion failures return (False, why).
    """
    if not report.yes or report.matrix_kind != ADJACENCY:
        raise ValueError("needs a positive adjacency report")
    bip = bipartition(g)
    if bip is None:
        raise ValueError("graph is not bipartite")
    if bip.side_of(report.u) == bip.side_of(report.v):
        raise ValueError("endpoints lie in the same colour class")
    if report.phase_s % 2 not in (Fraction(1, 2), Fraction(3, 2)):
        return False, f"phase exp(i pi {report.phase_s}) is not +/- i"
    support = list(report.plus_set) + list(report.minus_set)
    if any(not isinstance(e, IntegerEig) for e in support):
        return False, "non-integer support across a bipartition"
    values = [e.value for e in support]
    if any(val == 0 for val in values):
        return False, "0 in support"
    twoadic = {(val & -val) for val in map(abs, values)}
    if len(twoadic) > 1:
        return False, "support eigenvalues with different powers of two"
    return True, ""
