"""
q-combinatorial primitives: Pochhammer symbols, Gaussian binomials,
the two q-exponentials, basic hypergeometric series and the q-derivative.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from loguru import logger

from ..algebra.pseries import (
    MonomialArg,
    MultiSeries,
    VarTable,
    geometric_inverse,
    ms_inverse,
    ms_mul,
    ms_one,
    ms_product,
    ms_scale,
    ms_shift,
    ms_subst_qscale,
    ms_sum,
    ms_truncate,
    one_minus,
)
from ..algebra.qfield import ONE, ZERO, RatFunQ, qpow, ratfun_str, vanishing_qpow_index
from ..core.errors import SeriesError, UndefinedSeriesError


def binom2(k: int) -> int:
    return k * (k - 1) // 2


@lru_cache(maxsize=None)
def qfact(n: int) -> RatFunQ:
    """(q;q)_n"""
    if n < 0:
        raise SeriesError(f"negative Pochhammer length {n}")
    if n == 0:
        return ONE
    return qfact(n - 1) * (ONE - qpow(n))


def inv_qfact(n: int) -> RatFunQ:
    """1/(q;q)_n with the convention 1/(q;q)_n = 0 for n < 0"""
    if n < 0:
        return ZERO
    return ONE / qfact(n)


def qpoch_scalar(c: RatFunQ, n: int) -> RatFunQ:
    """(c;q)_n for a scalar c"""
    if n < 0:
        raise SeriesError(f"negative Pochhammer length {n}")
    value = ONE
    for j in range(n):
        value = value * (ONE - c.scale_qpow(j))
    return value


def qpoch_scalar_denominator(c: RatFunQ, n: int, label: str = "", length: str = "n") -> RatFunQ:
    """1/(c;q)_n, raising UndefinedSeriesError when the symbol vanishes

    (q^-j;q)_n vanishes for every n >= j + 1; the message names that range
    with the length variable of the caller, e.g. "(q^0;q)_l vanishes for l >= 1".
    """
    value = qpoch_scalar(c, n)
    if value.is_zero:
        symbol = label or f"({ratfun_str(c)};q)_{length}"
        m = vanishing_qpow_index(c)
        first = n if m is None else m + 1
        raise UndefinedSeriesError(f"{symbol} vanishes for {length} >= {first}", symbol=symbol, index=n)
    return ONE / value


@lru_cache(maxsize=None)
def qbinom(n: int, k: int) -> RatFunQ:
    """Gaussian binomial [n, k]_q by the q-Pascal recursion"""
    if n < 0:
        raise SeriesError(f"q-binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return ZERO
    if k == 0 or k == n:
        return ONE
    return qbinom(n - 1, k - 1) + qbinom(n - 1, k) * qpow(k)


def qpoch_n(u: MonomialArg, n: int, order: Optional[int] = None) -> MultiSeries:
    """
    (u;q)_n = prod_{j<n} (1 - q^j u).

    The product is a polynomial; it is exact at any order, which defaults to
    its degree n*deg(u).
    """
    if n < 0:
        raise SeriesError(f"negative Pochhammer length {n}")
    if order is None:
        order = n * u.degree
    factors = [ms_one(u.vars, order)]
    for j in range(n):
        factors.append(one_minus(u.scaled(qpow(j)), order))
    return ms_product(factors)


def _euler_sum(u: MonomialArg, order: int, gaussian: bool, sign: int) -> MultiSeries:
    if u.degree == 0 and not u.coeff.is_zero:
        raise SeriesError("non-truncating infinite product (argument of analytic degree 0)")
    terms = []
    k = 0
    while k * u.degree <= order:
        c = ONE if k == 0 else u.coeff ** k * inv_qfact(k)
        if gaussian:
            c = c.scale_qpow(binom2(k))
        if sign < 0 and k % 2:
            c = -c
        terms.append(MonomialArg(c, type(u.index)(e * k for e in u.index), u.vars).to_series(order))
        if u.coeff.is_zero:
            break
        k += 1
    return ms_sum(terms)


def qpoch_inf(u: MonomialArg, order: int) -> MultiSeries:
    """(u;q)_oo = sum_k q^binom(k,2) (-u)^k / (q;q)_k"""
    return _euler_sum(u, order, gaussian=True, sign=-1)


def eq_exp(u: MonomialArg, order: int) -> MultiSeries:
    """e_q(u) = sum_k u^k / (q;q)_k = 1/(u;q)_oo"""
    return _euler_sum(u, order, gaussian=False, sign=1)


def Eq_exp(u: MonomialArg, order: int) -> MultiSeries:  # noqa: N802
    """E_q(u) = sum_k q^binom(k,2) u^k / (q;q)_k = (-u;q)_oo"""
    return _euler_sum(u, order, gaussian=True, sign=1)


def qpoch_multi(args: Sequence[MonomialArg], order: int, vars: Optional[VarTable] = None) -> MultiSeries:
    """(u1, u2, ...;q)_oo"""
    if not args:
        if vars is None:
            raise SeriesError("empty Pochhammer product needs explicit variables")
        return ms_one(vars, order)
    return ms_product([qpoch_inf(u, order) for u in args])


def qpoch_inv(u: MonomialArg, n: int, order: int) -> MultiSeries:
    """1/(u;q)_n"""
    if u.degree == 0:
        return ms_scale(ms_one(u.vars, order), qpoch_scalar_denominator(u.coeff, n))
    return ms_inverse(qpoch_n(u, n, order))


def qpoch_recip_scaled(u: MonomialArg, n: int, order: Optional[int] = None) -> MultiSeries:
    """u^n (1/u;q)_n = prod_{j<n} (u - q^j)"""
    if n < 0:
        raise SeriesError(f"negative Pochhammer length {n}")
    if order is None:
        order = n * u.degree
    factors = [ms_one(u.vars, order)]
    for j in range(n):
        factors.append(u.to_series(order) - ms_scale(ms_one(u.vars, order), qpow(j)))
    return ms_product(factors)


@dataclass(frozen=True)
class PhiSpec:
    """r-phi-s data: numerator parameters, denominator parameters, argument"""

    numerator_params: Tuple[MonomialArg, ...]
    denominator_params: Tuple[MonomialArg, ...]
    argument: MonomialArg
    label: str = field(default="", compare=False)

    @property
    def r(self) -> int:
        return len(self.numerator_params)

    @property
    def s(self) -> int:
        return len(self.denominator_params)


def _termination_index(spec: PhiSpec) -> Optional[int]:
    """Largest k with a possibly nonzero term when a scalar numerator is q^-m"""
    stop = None
    for a in spec.numerator_params:
        if a.degree:
            continue
        m = vanishing_qpow_index(a.coeff)
        if m is not None:
            stop = m if stop is None else min(stop, m)
    return stop


def phi_series(spec: PhiSpec, order: int) -> MultiSeries:
    """
    Basic hypergeometric series with the general r-phi-s convention:
    term_k = prod (a_i;q)_k / ((q;q)_k prod (b_j;q)_k) [(-1)^k q^binom(k,2)]^(1+s-r) z^k.
    """
    z = spec.argument
    vars = z.vars
    if z.coeff.is_zero:
        return ms_one(vars, order)
    stop = _termination_index(spec)
    if z.degree == 0:
        if stop is None:
            raise SeriesError("sum does not truncate (degree-0 argument and no terminating numerator)")
        k_max = stop
    else:
        k_max = order // z.degree
        if stop is not None:
            k_max = min(k_max, stop)
    extra = 1 + spec.s - spec.r

    scalar_num = [a.coeff for a in spec.numerator_params if a.degree == 0]
    scalar_den = [b.coeff for b in spec.denominator_params if b.degree == 0]
    series_num = [a for a in spec.numerator_params if a.degree > 0]
    series_den = [b for b in spec.denominator_params if b.degree > 0]
    logger.debug(f"phi_series {spec.r}phi{spec.s} {spec.label} up to k={k_max} at order {order}")

    z_unit = MonomialArg(ONE, z.index, vars)
    scalar = ONE
    body = ms_one(vars, order)
    terms = [body]
    for k in range(1, k_max + 1):
        shift = qpow(k - 1)
        for c in scalar_num:
            scalar = scalar * (ONE - c * shift)
        step_den = ONE - qpow(k)
        for c in scalar_den:
            factor = ONE - c * shift
            if factor.is_zero:
                symbol = f"({ratfun_str(c)};q)_{k}"
                raise UndefinedSeriesError(
                    f"undefined series (zero denominator at k={k}): {symbol} vanishes",
                    symbol=symbol, index=k,
                )
            step_den = step_den * factor
        scalar = scalar / step_den * z.coeff
        if scalar.is_zero:
            break
        room = order - k * z.degree
        body = ms_truncate(body, room)
        for a in series_num:
            body = ms_mul(body, one_minus(a.scaled(shift), room))
        for b in series_den:
            body = ms_mul(body, geometric_inverse(b.scaled(shift), room))
        c = scalar
        if extra:
            c = c.scale_qpow(extra * binom2(k))
            if (extra * k) % 2:
                c = -c
        terms.append(ms_shift(ms_scale(body, c), z_unit ** k))
    return ms_sum(terms, order=order)


def dq(f: MultiSeries, var: str) -> MultiSeries:
    """(f(x) - f(qx))/x; exact to order N-1"""
    i = f.vars.index(var)
    if f.order == 0:
        raise SeriesError("cannot apply D_q to an order-0 series")
    terms = {}
    for exps, c in f.terms.items():
        m = exps[i]
        if m == 0:
            continue
        lowered = exps[:i] + (m - 1,) + exps[i + 1:]
        terms[lowered] = c * (ONE - qpow(m))
    return MultiSeries(f.vars, f.order - 1, terms)


def dq_k(f: MultiSeries, var: str, k: int) -> MultiSeries:
    if k < 0:
        raise SeriesError(f"D_q power must be >= 0, got {k}")
    for _ in range(k):
        f = dq(f, var)
    return f


def dq_leibniz(f: MultiSeries, g: MultiSeries, var: str, n: int) -> MultiSeries:
    """sum_k [n,k]_q D^k f (D^(n-k) g)(q^k x), the expansion of D^n(fg)"""
    terms: List[MultiSeries] = []
    for k in range(n + 1):
        left = dq_k(f, var, k)
        right = ms_subst_qscale(dq_k(g, var, n - k), var, k)
        terms.append(ms_scale(ms_mul(left, right), qbinom(n, k)))
    return ms_sum(terms)
