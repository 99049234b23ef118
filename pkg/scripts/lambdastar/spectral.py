#!/usr/bin/env python3
"""Eigenvalue decisions at the rational thresholds around lambda*: gate, PSD at -2, ell0, limits."""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from dotenv import load_dotenv

from exact_linalg import (
    IntMatrix,
    LinalgError,
    adjugate_positive_definite,
    bordered_det,
    is_positive_semidefinite,
    leading_minors_positive,
    scaled_adjacency,
    shifted_adjacency,
    sqrt_lower_bound,
)
from graphs import Graph, RootedGraph, TPE_GADGET, ape, path_extension

load_dotenv(override=True)

SQRT_ITERS = int(os.getenv("LAMBDASTAR_SQRT_ITERS", "32"))
LOGGER = logging.getLogger("lambdastar.spectral")


class UndecidableError(ArithmeticError):
    """The smallest eigenvalue falls between the two rational bounds of lambda*."""


class InconclusiveError(ArithmeticError):
    """The rational square-root bound was too loose to certify a limit decision."""


class NotFoundError(LookupError):
    """No ell in 0..6 makes the augmented path extension fail PSD at -2."""


@dataclass(frozen=True)
class Constants:
    lambda_star_lo: Fraction = Fraction(18259, 9040)
    lambda_star_hi: Fraction = Fraction(91499, 45301)
    psd2_proxy: Fraction = Fraction(305, 152)
    q_limit: Fraction = Fraction(95, 47)
    coef_limit: Fraction = Fraction(6, 7)
    q_forb: Fraction = Fraction(101, 50)
    lambda_star_float: float = 2.0198008871
    lambda_prime_float: float = 2.02124
    lambda1_e10_float: float = -2.006594

    def sanity(self) -> None:
        if not self.lambda_star_lo < self.lambda_star_hi:
            raise AssertionError("Cotas de lambda* desordenadas")
        for bound in (self.lambda_star_lo, self.lambda_star_hi):
            if abs(float(bound) - self.lambda_star_float) > 1e-8:
                raise AssertionError(f"Cota {bound} lejos de lambda*")
        if not 2 < self.psd2_proxy < -self.lambda1_e10_float:
            raise AssertionError("305/152 debe quedar entre 2 y |lambda1(E10)|")


CONSTANTS = Constants()


class GateResult(str, Enum):
    ABOVE = "above"
    BELOW = "below"


def _pd_at(graph: Graph, shift: Fraction) -> bool:
    return leading_minors_positive(scaled_adjacency(graph, shift))


def gate_lambda_star(graph: Graph) -> GateResult:
    """Standalone decision of lambda_1(G) against -lambda*."""
    if _pd_at(graph, CONSTANTS.lambda_star_lo):
        return GateResult.ABOVE
    if not _pd_at(graph, CONSTANTS.lambda_star_hi):
        return GateResult.BELOW
    raise UndecidableError(f"lambda1 entre -{CONSTANTS.lambda_star_hi} y -{CONSTANTS.lambda_star_lo}")


def is_psd_at_two(graph: Graph) -> bool:
    return _pd_at(graph, CONSTANTS.psd2_proxy)


@dataclass(frozen=True)
class _Adjugate:
    p: int
    q: int
    det: int
    adj: IntMatrix

    @classmethod
    def build(cls, graph: Graph, shift: Fraction) -> "_Adjugate":
        det, adj = adjugate_positive_definite(scaled_adjacency(graph, shift))
        return cls(shift.numerator, shift.denominator, det, adj)

    def child_det(self, border: Sequence[int]) -> int:
        return bordered_det(self.p, self.q, self.det, self.adj, border)


class ParentCertificate:
    """A graph certified above -lambda*, ready to decide one-vertex extensions of itself.

    Every child (G plus a vertex joined to ``border``) has G as principal submatrix,
    so only the sign of the child determinant is needed.
    """

    def __init__(self, graph: Graph, with_psd2: bool = True) -> None:
        self.graph = graph
        try:
            self._lo = _Adjugate.build(graph, CONSTANTS.lambda_star_lo)
        except LinalgError as exc:
            raise UndecidableError(f"El padre no es definido positivo en lambda*_-: {exc}") from exc
        self._hi = _Adjugate.build(graph, CONSTANTS.lambda_star_hi)
        self._psd2: Optional[_Adjugate] = None
        if with_psd2 and is_psd_at_two(graph):
            self._psd2 = _Adjugate.build(graph, CONSTANTS.psd2_proxy)

    @property
    def psd_at_two(self) -> bool:
        return self._psd2 is not None

    def gate_child(self, border: Sequence[int]) -> GateResult:
        if self._lo.child_det(border) > 0:
            return GateResult.ABOVE
        if self._hi.child_det(border) < 0:
            return GateResult.BELOW
        raise UndecidableError(f"Extensión con frontera {list(border)} indecidible")

    def child_psd_at_two(self, border: Sequence[int]) -> bool:
        if self._psd2 is None:
            return False
        return self._psd2.child_det(border) > 0


def min_ell0(base: RootedGraph, max_ell: int = 6) -> int:
    for ell in range(max_ell + 1):
        if not is_psd_at_two(ape(base, ell)):
            return ell
    raise NotFoundError(f"APE(F, ell) es PSD en -2 para todo ell <= {max_ell}")


def limit_coefficient_bounds(q: Fraction, iters: Optional[int] = None) -> Tuple[Fraction, Fraction]:
    """Rational (lo, hi) around q/2 - sqrt(q^2/4 - 1)."""
    q = Fraction(q)
    if q <= 2:
        raise LinalgError(f"Se requiere q > 2, se recibió {q}")
    t = q * q / 4 - 1
    s_lo = sqrt_lower_bound(t, SQRT_ITERS if iters is None else iters)
    s_hi = t / s_lo
    return q / 2 - s_hi, q / 2 - s_lo


def limit_below(base: RootedGraph, q: Fraction, iters: Optional[int] = None) -> bool:
    """True iff the path extensions (F_R, ell) have limit smallest eigenvalue below -q."""
    q = Fraction(q)
    c_lo, c_hi = limit_coefficient_bounds(q, iters)
    extended = path_extension(base, 0)
    v0 = extended.n - 1
    if not is_positive_semidefinite(shifted_adjacency(extended, q, (v0, c_lo))):
        return True
    if is_positive_semidefinite(shifted_adjacency(extended, q, (v0, c_hi))):
        return False
    raise InconclusiveError(f"Cota de raíz insuficiente para q={q}; aumente LAMBDASTAR_SQRT_ITERS")


def lambda_prime_check(delta: Fraction = Fraction(1, 10000)) -> bool:
    """The paw gadget's path extensions converge to -lambda': below -q just under it, above just over it."""
    centre = Fraction(str(CONSTANTS.lambda_prime_float))
    return limit_below(TPE_GADGET, centre - delta) and not limit_below(TPE_GADGET, centre + delta)


def lambda1_interval(graph: Graph, tol: float) -> Tuple[Fraction, Fraction]:
    """Bisection on x in A + xI with exact PD tests at dyadic points."""
    if tol <= 0:
        raise LinalgError("tol debe ser positivo")
    if graph.n == 0:
        raise LinalgError("El grafo vacío no tiene valores propios")
    lo = Fraction(0)
    hi = Fraction(max(graph.degrees()) + 1)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _pd_at(graph, mid):
            hi = mid
        else:
            lo = mid
    LOGGER.debug("lambda1 en [%s, %s] para n=%s", float(-hi), float(-lo), graph.n)
    return -hi, -lo


__all__ = [
    "CONSTANTS",
    "Constants",
    "GateResult",
    "InconclusiveError",
    "NotFoundError",
    "ParentCertificate",
    "SQRT_ITERS",
    "UndecidableError",
    "gate_lambda_star",
    "is_psd_at_two",
    "lambda1_interval",
    "lambda_prime_check",
    "limit_below",
    "limit_coefficient_bounds",
    "min_ell0",
]
