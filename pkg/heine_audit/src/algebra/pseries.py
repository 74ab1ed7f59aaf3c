"""
Truncated multivariate formal power series over RatFunQ.

A MultiSeries is exact for every monomial of total degree <= order; terms
above the order are unknown and never stored. Keys of the term map are
exponent tuples aligned with the series' VarTable.
"""

from collections import defaultdict
from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..core.errors import SeriesError
from .qfield import ONE, ZERO, RatFunQ, RationalLike, qpow, ratfun_str, ratfun_sum

Exponents = Tuple[int, ...]


@dataclass(frozen=True)
class VarTable:
    names: Tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise SeriesError(f"duplicate analytic variable in {self.names}")
        if "q" in self.names:
            raise SeriesError("q is the coefficient parameter, not an analytic variable")

    @classmethod
    def of(cls, *names: str) -> "VarTable":
        """VarTable.of("a", "b", "x") or, for one-letter names, VarTable.of("abx")"""
        if len(names) == 1 and len(names[0]) > 1 and names[0].isalpha():
            names = tuple(names[0])
        return cls(tuple(names))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise SeriesError(f"unknown variable {name!r} (have {', '.join(self.names)})") from None

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)


class MultiIndex(tuple):
    """Exponent vector aligned with a VarTable"""

    def __new__(cls, exponents: Iterable[int]):
        exponents = tuple(int(e) for e in exponents)
        if any(e < 0 for e in exponents):
            raise SeriesError(f"negative exponent in {exponents}")
        return super().__new__(cls, exponents)

    @property
    def exponents(self) -> Exponents:
        return tuple(self)

    @property
    def total(self) -> int:
        return sum(self)

    @classmethod
    def from_names(cls, vars: VarTable, names: Iterable[str]) -> "MultiIndex":
        exps = [0] * len(vars)
        for name in names:
            exps[vars.index(name)] += 1
        return cls(exps)


def canonical_key(exps: Exponents) -> Tuple[int, Exponents]:
    """Total degree first, then descending exponent tuple (x^2 before xy before y^2)"""
    return (sum(exps), tuple(-e for e in exps))


class MultiSeries:
    __slots__ = ("vars", "order", "_terms")

    def __init__(self, vars: VarTable, order: int, terms: Optional[Mapping[Exponents, RatFunQ]] = None):
        if order < 0:
            raise SeriesError(f"truncation order must be >= 0, got {order}")
        self.vars = vars
        self.order = order
        clean: Dict[Exponents, RatFunQ] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(vars):
                raise SeriesError(f"exponent {exps} does not match variables {vars.names}")
            if coeff.is_zero or sum(exps) > order:
                continue
            clean[exps] = coeff
        self._terms = clean

    @classmethod
    def _trusted(cls, vars: VarTable, order: int, terms: Dict[Exponents, RatFunQ]) -> "MultiSeries":
        series = cls.__new__(cls)
        series.vars = vars
        series.order = order
        series._terms = terms
        return series

    @property
    def terms(self) -> Mapping[Exponents, RatFunQ]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def max_degree(self) -> int:
        """Largest stored total degree, -1 for the zero series"""
        return max((sum(e) for e in self._terms), default=-1)

    def constant_term(self) -> RatFunQ:
        return self._terms.get((0,) * len(self.vars), ZERO)

    def items(self) -> List[Tuple[Exponents, RatFunQ]]:
        return sorted(self._terms.items(), key=lambda item: canonical_key(item[0]))

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        return ms_add(self, other)

    def __sub__(self, other: "MultiSeries") -> "MultiSeries":
        return ms_sub(self, other)

    def __neg__(self) -> "MultiSeries":
        return ms_neg(self)

    def __mul__(self, other: "MultiSeries") -> "MultiSeries":
        return ms_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return self.vars == other.vars and self.order == other.order and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"MultiSeries({ms_to_text(self)})"


@dataclass(frozen=True)
class MonomialArg:
    """coeff * monomial, e.g. q^n*a*b"""

    coeff: RatFunQ
    index: MultiIndex
    vars: VarTable

    @classmethod
    def of(cls, vars: VarTable, names: Union[str, Sequence[str]] = "",
           coeff: Union[RatFunQ, RationalLike] = 1) -> "MonomialArg":
        """MonomialArg.of(V, "ab", qpow(n)) is q^n*a*b; repeated names raise the power"""
        if not isinstance(coeff, RatFunQ):
            coeff = RatFunQ.of(coeff)
        return cls(coeff, MultiIndex.from_names(vars, names), vars)

    @classmethod
    def scalar(cls, vars: VarTable, coeff: Union[RatFunQ, RationalLike]) -> "MonomialArg":
        return cls.of(vars, "", coeff)

    @property
    def degree(self) -> int:
        return self.index.total

    def __pow__(self, k: int) -> "MonomialArg":
        return MonomialArg(self.coeff ** k, MultiIndex(e * k for e in self.index), self.vars)

    def scaled(self, c: RatFunQ) -> "MonomialArg":
        return MonomialArg(self.coeff * c, self.index, self.vars)

    def times(self, other: "MonomialArg") -> "MonomialArg":
        _check_vars(self.vars, other.vars)
        return MonomialArg(self.coeff * other.coeff,
                           MultiIndex(a + b for a, b in zip(self.index, other.index)), self.vars)

    def to_series(self, order: int) -> MultiSeries:
        return ms_monomial(self.vars, order, self.index, self.coeff)


def _check_vars(lhs: VarTable, rhs: VarTable) -> None:
    if lhs != rhs:
        raise SeriesError(f"mismatched variables {lhs.names} vs {rhs.names}")


def ms_zero(vars: VarTable, order: int) -> MultiSeries:
    return MultiSeries._trusted(vars, order, {})


def ms_const(vars: VarTable, order: int, c: Union[RatFunQ, RationalLike] = 1) -> MultiSeries:
    if not isinstance(c, RatFunQ):
        c = RatFunQ.of(c)
    return MultiSeries(vars, order, {(0,) * len(vars): c})


def ms_one(vars: VarTable, order: int) -> MultiSeries:
    return ms_const(vars, order, ONE)


def ms_monomial(vars: VarTable, order: int, exps: Sequence[int],
                coeff: Union[RatFunQ, RationalLike] = 1) -> MultiSeries:
    if not isinstance(coeff, RatFunQ):
        coeff = RatFunQ.of(coeff)
    return MultiSeries(vars, order, {tuple(exps): coeff})


def ms_var(vars: VarTable, order: int, name: str) -> MultiSeries:
    return ms_monomial(vars, order, MultiIndex.from_names(vars, [name]))


def ms_add(f: MultiSeries, g: MultiSeries) -> MultiSeries:
    _check_vars(f.vars, g.vars)
    order = min(f.order, g.order)
    buckets: Dict[Exponents, List[RatFunQ]] = defaultdict(list)
    for source in (f._terms, g._terms):
        for exps, c in source.items():
            if sum(exps) <= order:
                buckets[exps].append(c)
    return _collect(f.vars, order, buckets)


def ms_sum(series: Sequence[MultiSeries], vars: Optional[VarTable] = None,
           order: Optional[int] = None) -> MultiSeries:
    """Add many series at once, one coefficient normalization per monomial"""
    if not series:
        if vars is None or order is None:
            raise SeriesError("empty sum needs explicit variables and order")
        return ms_zero(vars, order)
    vars = series[0].vars
    for s in series:
        _check_vars(vars, s.vars)
    top = min(s.order for s in series)
    if order is not None:
        top = min(top, order)
    buckets: Dict[Exponents, List[RatFunQ]] = defaultdict(list)
    for s in series:
        for exps, c in s._terms.items():
            if sum(exps) <= top:
                buckets[exps].append(c)
    return _collect(vars, top, buckets)


def _collect(vars: VarTable, order: int, buckets: Mapping[Exponents, List[RatFunQ]]) -> MultiSeries:
    terms: Dict[Exponents, RatFunQ] = {}
    for exps, values in buckets.items():
        c = values[0] if len(values) == 1 else ratfun_sum(values)
        if not c.is_zero:
            terms[exps] = c
    return MultiSeries._trusted(vars, order, terms)


def ms_neg(f: MultiSeries) -> MultiSeries:
    return MultiSeries._trusted(f.vars, f.order, {e: -c for e, c in f._terms.items()})


def ms_sub(f: MultiSeries, g: MultiSeries) -> MultiSeries:
    return ms_add(f, ms_neg(g))


def ms_scale(f: MultiSeries, c: Union[RatFunQ, RationalLike]) -> MultiSeries:
    if not isinstance(c, RatFunQ):
        c = RatFunQ.of(c)
    if c.is_zero:
        return ms_zero(f.vars, f.order)
    return MultiSeries._trusted(f.vars, f.order, {e: v * c for e, v in f._terms.items()})


def _by_degree(terms: Mapping[Exponents, RatFunQ]) -> List[Tuple[int, Exponents, RatFunQ]]:
    return sorted(((sum(e), e, c) for e, c in terms.items()), key=lambda t: t[0])


def _product_buckets(lhs: Mapping[Exponents, RatFunQ], rhs: Mapping[Exponents, RatFunQ],
                     order: int) -> Dict[Exponents, List[RatFunQ]]:
    buckets: Dict[Exponents, List[RatFunQ]] = defaultdict(list)
    right = _by_degree(rhs)
    for t1, e1, c1 in _by_degree(lhs):
        room = order - t1
        if room < 0:
            break
        for t2, e2, c2 in right:
            if t2 > room:
                break
            buckets[tuple(a + b for a, b in zip(e1, e2))].append(c1 * c2)
    return buckets


def ms_mul(f: MultiSeries, g: MultiSeries) -> MultiSeries:
    """Cauchy product truncated at min(order(f), order(g))"""
    _check_vars(f.vars, g.vars)
    order = min(f.order, g.order)
    return _collect(f.vars, order, _product_buckets(f._terms, g._terms, order))


def ms_product(factors: Sequence[MultiSeries]) -> MultiSeries:
    if not factors:
        raise SeriesError("empty product needs explicit variables and order")
    result = factors[0]
    for factor in factors[1:]:
        result = ms_mul(result, factor)
    return result


def ms_pow(f: MultiSeries, k: int) -> MultiSeries:
    if k < 0:
        return ms_pow(ms_inverse(f), -k)
    result = ms_one(f.vars, f.order)
    for _ in range(k):
        result = ms_mul(result, f)
    return result


def ms_inverse(f: MultiSeries) -> MultiSeries:
    """
    Multiplicative inverse by homogeneous components.

    With f = f_0 + f_1 + ... (f_d homogeneous of degree d) and c = f_0,
    g_0 = 1/c and g_d = -(1/c) * sum_{e=1..d} f_e * g_{d-e}.
    """
    c = f.constant_term()
    if c.is_zero:
        raise SeriesError("non-unit series (zero constant term)")
    zero_exps = (0,) * len(f.vars)
    inv_c = ONE / c
    minus_inv_c = -inv_c
    f_parts: Dict[int, Dict[Exponents, RatFunQ]] = defaultdict(dict)
    for exps, v in f._terms.items():
        d = sum(exps)
        if d > 0:
            f_parts[d][exps] = v
    g_parts: List[Dict[Exponents, RatFunQ]] = [{zero_exps: inv_c}]
    for d in range(1, f.order + 1):
        buckets: Dict[Exponents, List[RatFunQ]] = defaultdict(list)
        for e in range(1, d + 1):
            fe = f_parts.get(e)
            gd = g_parts[d - e]
            if not fe or not gd:
                continue
            for e1, c1 in fe.items():
                for e2, c2 in gd.items():
                    buckets[tuple(a + b for a, b in zip(e1, e2))].append(c1 * c2)
        part = {}
        for exps, values in buckets.items():
            s = ratfun_sum(values)
            if not s.is_zero:
                part[exps] = s * minus_inv_c
        g_parts.append(part)
    terms: Dict[Exponents, RatFunQ] = {}
    for part in g_parts:
        terms.update(part)
    return MultiSeries._trusted(f.vars, f.order, terms)


def ms_subst_qscale(f: MultiSeries, var: str, j: int) -> MultiSeries:
    """Substitute var -> q^j * var"""
    i = f.vars.index(var)
    if j == 0:
        return f
    return MultiSeries._trusted(f.vars, f.order, {e: c.scale_qpow(j * e[i]) for e, c in f._terms.items()})


def ms_coeff(f: MultiSeries, idx: Sequence[int]) -> RatFunQ:
    idx = tuple(idx)
    if len(idx) != len(f.vars):
        raise SeriesError(f"index {idx} does not match variables {f.vars.names}")
    if sum(idx) > f.order:
        raise SeriesError(f"beyond truncation: total degree {sum(idx)} > order {f.order}")
    return f._terms.get(idx, ZERO)


def ms_truncate(f: MultiSeries, order: int) -> MultiSeries:
    if order > f.order:
        raise SeriesError(f"cannot raise truncation order from {f.order} to {order}")
    if order == f.order:
        return f
    return MultiSeries._trusted(f.vars, order, {e: c for e, c in f._terms.items() if sum(e) <= order})


def ms_shift(f: MultiSeries, u: MonomialArg) -> MultiSeries:
    """Multiply by u; exactness order rises by deg(u)"""
    _check_vars(f.vars, u.vars)
    if u.coeff.is_zero:
        return ms_zero(f.vars, f.order + u.degree)
    if u.degree == 0:
        return ms_scale(f, u.coeff)
    terms = {tuple(a + b for a, b in zip(e, u.index)): c * u.coeff for e, c in f._terms.items()}
    return MultiSeries._trusted(f.vars, f.order + u.degree, terms)


def ms_rename(f: MultiSeries, mapping: Mapping[str, str], vars: VarTable) -> MultiSeries:
    """Re-express f over vars, moving each variable old -> mapping.get(old, old)"""
    targets = []
    for name in f.vars:
        targets.append(vars.index(mapping.get(name, name)))
    terms: Dict[Exponents, RatFunQ] = {}
    for exps, c in f._terms.items():
        new = [0] * len(vars)
        for e, t in zip(exps, targets):
            new[t] += e
        terms[tuple(new)] = c
    return MultiSeries._trusted(vars, f.order, terms)


def monomial_str(vars: VarTable, exps: Sequence[int]) -> str:
    factors = []
    for name, e in zip(vars, exps):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


def ms_to_text(f: MultiSeries) -> str:
    """Canonical text: terms by total degree then descending exponents, closed by O(order+1)"""
    parts = []
    for exps, c in f.items():
        mono = monomial_str(f.vars, exps)
        coeff = ratfun_str(c)
        if c.is_polynomial and " " in coeff:
            coeff = f"({coeff})"
        parts.append(coeff if mono == "1" else f"{coeff}*{mono}")
    parts.append(f"O({f.order + 1})")
    return " + ".join(parts)


def first_difference(f: MultiSeries, g: MultiSeries) -> Optional[MultiIndex]:
    """First mismatching monomial in canonical order, up to the smaller order"""
    _check_vars(f.vars, g.vars)
    order = min(f.order, g.order)
    keys = {e for e in f._terms if sum(e) <= order} | {e for e in g._terms if sum(e) <= order}
    for exps in sorted(keys, key=canonical_key):
        if f._terms.get(exps, ZERO) != g._terms.get(exps, ZERO):
            return MultiIndex(exps)
    return None


def geometric_inverse(u: MonomialArg, order: int) -> MultiSeries:
    """1/(1 - u) for a monomial u of positive degree"""
    if u.degree == 0:
        raise SeriesError("non-truncating geometric series (degree-0 ratio)")
    terms: Dict[Exponents, RatFunQ] = {}
    k = 0
    power = ONE
    while k * u.degree <= order:
        terms[tuple(e * k for e in u.index)] = power
        power = power * u.coeff
        k += 1
    return MultiSeries(u.vars, order, terms)


def q_monomial(vars: VarTable, names: Union[str, Sequence[str]], j: int = 0) -> MonomialArg:
    """Shorthand for q^j times the named monomial"""
    return MonomialArg.of(vars, names, qpow(j))


def one_minus(u: MonomialArg, order: int) -> MultiSeries:
    """The binomial 1 - u"""
    zero_exps = (0,) * len(u.vars)
    if u.degree == 0:
        return ms_const(u.vars, order, ONE - u.coeff)
    return MultiSeries(u.vars, order, {zero_exps: ONE, tuple(u.index): -u.coeff})
