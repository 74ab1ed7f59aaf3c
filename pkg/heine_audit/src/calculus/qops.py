"""
Heine binomial operators H_n(bD_q), the q-exponential operator T(bD_q)
and the two polynomial families they produce from monomials.
"""

from dataclasses import dataclass
from typing import List, Optional, Union

from loguru import logger

from ..algebra.pseries import (
    MonomialArg,
    MultiSeries,
    ms_mul,
    ms_one,
    ms_scale,
    ms_shift,
    ms_sum,
    ms_truncate,
)
from ..algebra.qfield import RatFunQ, qpow
from ..core.errors import SeriesError
from .qcore import dq, inv_qfact, qbinom, qpoch_scalar


@dataclass(frozen=True)
class HeineOrder:
    """n of H_n; None stands for INFINITY, the T operator"""

    value: Optional[int]

    def __post_init__(self):
        if self.value is not None and self.value < 0:
            raise SeriesError(f"Heine order must be >= 0, got {self.value}")

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def weight(self, k: int) -> RatFunQ:
        """(q^n;q)_k/(q;q)_k, or 1/(q;q)_k for INFINITY"""
        if self.value is None:
            return inv_qfact(k)
        return qpoch_scalar(qpow(self.value), k) * inv_qfact(k)

    def __str__(self) -> str:
        return "oo" if self.value is None else str(self.value)


INFINITY = HeineOrder(None)


def as_heine_order(n: Union[int, HeineOrder]) -> HeineOrder:
    return n if isinstance(n, HeineOrder) else HeineOrder(n)


@dataclass(frozen=True)
class LedgerTerm:
    k: int
    weight: RatFunQ
    term: MultiSeries  # b^k D_q^k f, unweighted


def _k_limit(b: MonomialArg, var: str, f: MultiSeries, polynomial: bool) -> int:
    i = f.vars.index(var)
    top = max((exps[i] for exps in f.terms), default=0)
    if b.degree > 0:
        return min(f.order // b.degree, top)
    if polynomial:
        return top
    raise SeriesError("sum does not truncate: degree-0 operator argument on a non-polynomial series")


def _exact(series: MultiSeries, order: int, polynomial: bool) -> MultiSeries:
    if polynomial:
        return MultiSeries(series.vars, order, series.terms)
    return ms_truncate(series, order)


def heine_ledger(n: Union[int, HeineOrder], b: MonomialArg, var: str, f: MultiSeries,
                 polynomial: bool = False) -> List[LedgerTerm]:
    """
    Per-k terms of the operator sum, weight_k * b^k D_q^k f.

    With deg(b) >= 1 each term is exact at order(f); with a degree-0 b the
    series must be flagged as an exact polynomial.
    """
    n = as_heine_order(n)
    k_max = _k_limit(b, var, f, polynomial)
    order = f.order
    logger.debug(f"operator ledger n={n} k<= {k_max} at order {order}")
    ledger = []
    derivative = f
    for k in range(k_max + 1):
        if k:
            derivative = dq(derivative, var)
            if polynomial:
                derivative = MultiSeries(derivative.vars, order, derivative.terms)
        term = _exact(ms_shift(derivative, b ** k), order, polynomial)
        ledger.append(LedgerTerm(k, n.weight(k), term))
    return ledger


def heine_apply(n: Union[int, HeineOrder], b: MonomialArg, var: str, f: MultiSeries,
                polynomial: bool = False) -> MultiSeries:
    """sum_k (q^n;q)_k/(q;q)_k b^k D_q^k f"""
    ledger = heine_ledger(n, b, var, f, polynomial)
    terms = [ms_scale(entry.term, entry.weight) for entry in ledger if not entry.weight.is_zero]
    return ms_sum(terms, f.vars, f.order)


def t_apply(b: MonomialArg, var: str, f: MultiSeries, polynomial: bool = False) -> MultiSeries:
    """sum_k b^k D_q^k f / (q;q)_k"""
    return heine_apply(INFINITY, b, var, f, polynomial)


def heine_annihilate(n: int, b: MonomialArg, var: str, f: MultiSeries, polynomial: bool = False) -> MultiSeries:
    """Apply prod_{k<n} (1 - q^k b D_q), the inverse of H_n(bD_q)"""
    if b.degree == 0 and not polynomial:
        raise SeriesError("sum does not truncate: degree-0 operator argument on a non-polynomial series")
    g = f
    for k in range(n):
        step = ms_shift(dq(g, var), b.scaled(qpow(k))) if g.order else ms_scale(g, 0)
        g = g - _exact(step, g.order, polynomial)
    return g


def hahn(m: int, alpha: MultiSeries, xarg: MultiSeries, yarg: MultiSeries) -> MultiSeries:
    """Phi_m^(alpha)(x, y|q) = sum_k [m,k]_q (alpha;q)_k x^k y^(m-k)"""
    if m < 0:
        raise SeriesError(f"Hahn polynomial degree must be >= 0, got {m}")
    order = min(alpha.order, xarg.order, yarg.order)
    one = ms_one(xarg.vars, order)
    x_pows = [one]
    y_pows = [one]
    for _ in range(m):
        x_pows.append(ms_mul(x_pows[-1], xarg))
        y_pows.append(ms_mul(y_pows[-1], yarg))
    poch = one
    terms = []
    for k in range(m + 1):
        if k:
            poch = ms_mul(poch, one - ms_scale(alpha, qpow(k - 1)))
        monomial = ms_mul(x_pows[k], y_pows[m - k])
        terms.append(ms_scale(ms_mul(poch, monomial), qbinom(m, k)))
    return ms_sum(terms)


def rogers_szego(m: int, b: MultiSeries, x: MultiSeries) -> MultiSeries:
    """r_m = sum_k [m,k]_q b^k x^(m-k)"""
    if m < 0:
        raise SeriesError(f"Rogers-Szego degree must be >= 0, got {m}")
    order = min(b.order, x.order)
    one = ms_one(x.vars, order)
    b_pows = [one]
    x_pows = [one]
    for _ in range(m):
        b_pows.append(ms_mul(b_pows[-1], b))
        x_pows.append(ms_mul(x_pows[-1], x))
    return ms_sum([ms_scale(ms_mul(b_pows[k], x_pows[m - k]), qbinom(m, k)) for k in range(m + 1)])
