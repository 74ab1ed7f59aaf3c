"""
Side builders for the identity catalog.

Every builder is a pure function (params, order) -> MultiSeries registered
under a tag such as "T2.lhs". Left-hand sides are direct computations
(explicit operator application, or explicit sums of Hahn polynomials);
right-hand sides are the printed closed forms.
"""

import random
from typing import Callable, Dict, List, Sequence, Union

from ..algebra.pseries import (
    MonomialArg,
    MultiSeries,
    VarTable,
    geometric_inverse,
    ms_const,
    ms_inverse,
    ms_mul,
    ms_product,
    ms_scale,
    ms_shift,
    ms_sum,
    ms_truncate,
    ms_var,
    one_minus,
)
from ..algebra.qfield import ONE, PolyQ, RatFunQ, qpow, ratfun_make
from ..calculus.qcore import (
    PhiSpec,
    binom2,
    dq_k,
    dq_leibniz,
    inv_qfact,
    phi_series,
    qbinom,
    qfact,
    qpoch_inf,
    qpoch_inv,
    qpoch_multi,
    qpoch_n,
    qpoch_recip_scaled,
    qpoch_scalar,
    qpoch_scalar_denominator,
)
from ..calculus.qops import HeineOrder, hahn, heine_apply, t_apply
from ..core.errors import UsageError
from .models import Builder, Params

BUILDERS: Dict[str, Builder] = {}

V_A = VarTable.of("a")
V_X = VarTable.of("x")
V_Z = VarTable.of("z")
V_BX = VarTable.of("bx")
V_ABX = VarTable.of("abx")
V_ABCX = VarTable.of("abcx")
V_ABCDX = VarTable.of("abcdx")
V_BXY = VarTable.of("bxy")
V_BXYZ = VarTable.of("bxyz")
V_ABXYZ = VarTable.of("abxyz")


def builder(tag: str) -> Callable[[Builder], Builder]:
    def register(func: Builder) -> Builder:
        if tag in BUILDERS:
            raise ValueError(f"builder {tag} registered twice")
        BUILDERS[tag] = func
        return func
    return register


def get_builder(tag: str) -> Builder:
    try:
        return BUILDERS[tag]
    except KeyError:
        raise UsageError(f"unknown builder tag {tag!r}") from None


def mono(vars: VarTable, names: Union[str, Sequence[str]] = "", j: int = 0, sign: int = 1) -> MonomialArg:
    """sign * q^j * monomial"""
    c = qpow(j)
    return MonomialArg.of(vars, names, -c if sign < 0 else c)


def scalar(vars: VarTable, c: Union[RatFunQ, int]) -> MonomialArg:
    return MonomialArg.scalar(vars, c)


def qconst(vars: VarTable, order: int, j: int) -> MultiSeries:
    return ms_const(vars, order, qpow(j))


def signed_gaussian(j: int) -> RatFunQ:
    """(-1)^j q^binom(j,2)"""
    c = qpow(binom2(j))
    return -c if j % 2 else c


def inverse_product(args: Sequence[MonomialArg], order: int) -> MultiSeries:
    """1/(u1, u2, ...;q)_oo"""
    return ms_inverse(qpoch_multi(args, order))


def hahn_sum(vars: VarTable, order: int, alpha: int, bname: str, xname: str,
             weight: Callable[[int], RatFunQ], yname: str) -> MultiSeries:
    """sum_m weight(m) Phi_m^(q^alpha)(b, x) yname^m"""
    b, x = ms_var(vars, order, bname), ms_var(vars, order, xname)
    alpha_series = qconst(vars, order, alpha)
    terms = []
    for m in range(order // 2 + 1):
        phi_m = hahn(m, alpha_series, b, x)
        terms.append(ms_shift(ms_scale(phi_m, weight(m)), mono(vars, yname * m)))
    return ms_sum(terms, vars, order)


# Preliminaries


@builder("I1.lhs")
def i1_lhs(p: Params, order: int) -> MultiSeries:
    a = mono(V_A, "a")
    return ms_mul(qpoch_n(a, p.n, order), qpoch_inf(mono(V_A, "a", p.n), order))


@builder("I1.rhs")
def i1_rhs(p: Params, order: int) -> MultiSeries:
    return qpoch_inf(mono(V_A, "a"), order)


@builder("I2.lhs")
def i2_lhs(p: Params, order: int) -> MultiSeries:
    return qpoch_n(mono(V_A, "a"), p.n + p.k, order)


@builder("I2.rhs")
def i2_rhs(p: Params, order: int) -> MultiSeries:
    return ms_mul(qpoch_n(mono(V_A, "a"), p.n, order), qpoch_n(mono(V_A, "a", p.n), p.k, order))


@builder("I3.lhs")
def i3_lhs(p: Params, order: int) -> MultiSeries:
    # both sides carry the factor a^k (1/a q^(1-n);q)_k = prod_{j<k} (a - q^(1-n+j))
    scaled = qpoch_recip_scaled(mono(V_A, "a", p.n - 1), p.k, order)
    return ms_mul(qpoch_n(mono(V_A, "a"), p.n - p.k, order), ms_scale(scaled, qpow((1 - p.n) * p.k)))


@builder("I3.rhs")
def i3_rhs(p: Params, order: int) -> MultiSeries:
    c = qpow(p.k + binom2(p.k) - p.n * p.k)
    if p.k % 2:
        c = -c
    return ms_scale(qpoch_n(mono(V_A, "a"), p.n, order), c)


def random_polynomial(rng: random.Random, order: int) -> MultiSeries:
    """Degree <= 4 in x with small coefficients linear in q"""
    terms = {}
    for i in range(rng.randint(0, 4) + 1):
        c = ratfun_make(PolyQ([rng.randint(-3, 3), rng.randint(-2, 2)]), PolyQ([1]))
        terms[(i,)] = c
    return MultiSeries(V_X, order, terms)


def leibniz_pair(p: Params, order: int):
    rng = random.Random(1000 * p.n + p.k)
    return random_polynomial(rng, order + p.n), random_polynomial(rng, order + p.n)


@builder("I4.lhs")
def i4_lhs(p: Params, order: int) -> MultiSeries:
    f, g = leibniz_pair(p, order)
    return dq_k(ms_mul(f, g), "x", p.n)


@builder("I4.rhs")
def i4_rhs(p: Params, order: int) -> MultiSeries:
    f, g = leibniz_pair(p, order)
    return ms_truncate(dq_leibniz(f, g, "x", p.n), order)


@builder("I5.lhs")
def i5_lhs(p: Params, order: int) -> MultiSeries:
    spec = PhiSpec((mono(V_Z, "", p.n),), (), mono(V_Z, "z"), label="1phi0")
    return phi_series(spec, order)


@builder("I5.rhs")
def i5_rhs(p: Params, order: int) -> MultiSeries:
    return ms_mul(qpoch_inf(mono(V_Z, "z", p.n), order), inverse_product([mono(V_Z, "z")], order))


@builder("I6.lhs")
def i6_lhs(p: Params, order: int) -> MultiSeries:
    return ms_inverse(qpoch_n(mono(V_X, "x"), p.n, order))


@builder("I6.rhs")
def i6_rhs(p: Params, order: int) -> MultiSeries:
    terms = {(k,): qbinom(p.n + k - 1, k) for k in range(order + 1)}
    return MultiSeries(V_X, order, terms)


# Operator actions


@builder("T1.lhs")
def t1_lhs(p: Params, order: int) -> MultiSeries:
    geometric = MultiSeries(V_BX, order, {(0, m): ONE for m in range(order + 1)})
    return heine_apply(p.n, mono(V_BX, "b"), "x", geometric)


@builder("T1.rhs")
def t1_rhs(p: Params, order: int) -> MultiSeries:
    b, x = ms_var(V_BX, order, "b"), ms_var(V_BX, order, "x")
    alpha = qconst(V_BX, order, p.n)
    return ms_sum([hahn(m, alpha, b, x) for m in range(order + 1)])


@builder("T2.lhs")
def t2_lhs(p: Params, order: int) -> MultiSeries:
    f = inverse_product([mono(V_ABX, "ax")], order)
    return heine_apply(p.n, mono(V_ABX, "b"), "x", f)


@builder("T2.rhs")
def t2_rhs(p: Params, order: int) -> MultiSeries:
    top = qpoch_inf(mono(V_ABX, "ab", p.n), order)
    return ms_mul(top, inverse_product([mono(V_ABX, "ax"), mono(V_ABX, "ab")], order))


@builder("T3.lhs")
def t3_lhs(p: Params, order: int) -> MultiSeries:
    return heine_apply(p.n, mono(V_ABX, "b"), "x", qpoch_inf(mono(V_ABX, "ax"), order))


@builder("T3.rhs")
def t3_rhs(p: Params, order: int) -> MultiSeries:
    spec = PhiSpec(
        (scalar(V_ABX, qpow(p.n)), scalar(V_ABX, 0)),
        (mono(V_ABX, "ax", sign=-1),),
        mono(V_ABX, "ab"),
        label="2phi1",
    )
    return ms_mul(qpoch_inf(mono(V_ABX, "ax"), order), phi_series(spec, order))


@builder("T3.corrected")
def t3_corrected(p: Params, order: int) -> MultiSeries:
    spec = PhiSpec((scalar(V_ABX, qpow(p.n)),), (mono(V_ABX, "ax"),), mono(V_ABX, "ab"), label="1phi1")
    return ms_mul(qpoch_inf(mono(V_ABX, "ax"), order), phi_series(spec, order))


@builder("T4.lhs")
def t4_lhs(p: Params, order: int) -> MultiSeries:
    f = inverse_product([mono(V_ABCX, "bx"), mono(V_ABCX, "cx")], order)
    return heine_apply(p.n, mono(V_ABCX, "a"), "x", f)


@builder("T4.rhs")
def t4_rhs(p: Params, order: int) -> MultiSeries:
    V = V_ABCX
    spec = PhiSpec((scalar(V, qpow(p.n)), mono(V, "cx")), (mono(V, "ac", p.n),), mono(V, "ab"), label="2phi1")
    return ms_product([
        qpoch_inf(mono(V, "ac", p.n), order),
        inverse_product([mono(V, "bx"), mono(V, "cx"), mono(V, "ac")], order),
        phi_series(spec, order),
    ])


def t5_prefactor(order: int) -> MultiSeries:
    V = V_ABCDX
    return ms_mul(qpoch_inf(mono(V, "cx"), order), inverse_product([mono(V, "ax"), mono(V, "bx")], order))


def t5_sum(p: Params, order: int, corrected: bool) -> MultiSeries:
    V = V_ABCDX
    bx = mono(V, "bx").to_series(order)
    a, b = ms_var(V, order, "a"), ms_var(V, order, "b")
    weight = HeineOrder(p.n).weight
    # d^l c^(l-m) Phi_m has total degree >= 2l
    l_max = order // 2
    phis = [hahn(m, bx, a, b) for m in range(l_max + 1)]
    outer = []
    for l in range(l_max + 1):
        inner = []
        for m in range(l + 1):
            c = qbinom(l, m) * (signed_gaussian(l - m) if corrected else ONE)
            inner.append(ms_shift(phis[m], MonomialArg.of(V, "c" * (l - m), c)))
        step = ms_shift(ms_sum(inner, V, order), mono(V, ("d" if corrected else "b") * l))
        step = ms_mul(ms_scale(step, weight(l)), qpoch_inv(mono(V, "cx"), l, order))
        outer.append(step)
    return ms_mul(t5_prefactor(order), ms_sum(outer, V, order))


@builder("T5.lhs")
def t5_lhs(p: Params, order: int) -> MultiSeries:
    return heine_apply(p.n, mono(V_ABCDX, "d"), "x", t5_prefactor(order))


@builder("T5.rhs")
def t5_rhs(p: Params, order: int) -> MultiSeries:
    return t5_sum(p, order, corrected=False)


@builder("T5.corrected")
def t5_corrected(p: Params, order: int) -> MultiSeries:
    return t5_sum(p, order, corrected=True)


# Generating functions


@builder("T7.lhs")
def t7_lhs(p: Params, order: int) -> MultiSeries:
    return hahn_sum(V_BXY, order, p.n, "b", "x", lambda m: ONE, "y")


@builder("T7.rhs")
def t7_rhs(p: Params, order: int) -> MultiSeries:
    V = V_BXY
    spec = PhiSpec((scalar(V, qpow(p.n)), scalar(V, qpow(1))), (mono(V, "xy", 1),), mono(V, "by"), label="2phi1")
    return ms_mul(ms_inverse(one_minus(mono(V, "xy"), order)), phi_series(spec, order))


@builder("T8.lhs")
def t8_lhs(p: Params, order: int) -> MultiSeries:
    return hahn_sum(V_BXY, order, p.n, "b", "x", inv_qfact, "y")


@builder("T8.rhs")
def t8_rhs(p: Params, order: int) -> MultiSeries:
    V = V_BXY
    return ms_mul(qpoch_inf(mono(V, "by", p.n), order), inverse_product([mono(V, "xy"), mono(V, "by")], order))


@builder("T9.lhs")
def t9_lhs(p: Params, order: int) -> MultiSeries:
    return hahn_sum(V_BXY, order, p.n, "b", "x", lambda m: inv_qfact(m).scale_qpow(binom2(m)), "y")


@builder("T9.rhs")
def t9_rhs(p: Params, order: int) -> MultiSeries:
    V = V_BXY
    spec = PhiSpec((scalar(V, qpow(p.n)), scalar(V, 0)), (mono(V, "xy", sign=-1),), mono(V, "by"), label="2phi1")
    return ms_mul(qpoch_inf(mono(V, "xy"), order), phi_series(spec, order))


@builder("T9.corrected")
def t9_corrected(p: Params, order: int) -> MultiSeries:
    V = V_BXY
    spec = PhiSpec((scalar(V, qpow(p.n)),), (mono(V, "xy", sign=-1),), mono(V, "by", sign=-1), label="1phi1")
    return ms_mul(qpoch_inf(mono(V, "xy", sign=-1), order), phi_series(spec, order))


def mehler_lhs(p: Params, order: int, weight: Callable[[int], RatFunQ]) -> MultiSeries:
    """sum_m weight(m) Phi_m^(q^n)(a, x) Phi_m^(q^k)(b, y) z^m"""
    V = V_ABXYZ
    a, b, x, y = (ms_var(V, order, name) for name in "abxy")
    alpha_n, alpha_k = qconst(V, order, p.n), qconst(V, order, p.k)
    terms = []
    for m in range(order // 3 + 1):
        product = ms_mul(hahn(m, alpha_n, a, x), hahn(m, alpha_k, b, y))
        terms.append(ms_shift(ms_scale(product, weight(m)), mono(V, "z" * m)))
    return ms_sum(terms, V, order)


@builder("T10.lhs")
def t10_lhs(p: Params, order: int) -> MultiSeries:
    return mehler_lhs(p, order, lambda m: ONE)


@builder("T10.rhs")
def t10_rhs(p: Params, order: int) -> MultiSeries:
    V = V_ABXYZ
    qn, qk = qpow(p.n), qpow(p.k)
    terms: List[MultiSeries] = []
    for m in range(order // 2 + 1):
        outer = qpoch_scalar(qk, m) * qfact(m)
        for i in range((order - 2 * m) // 2 + 1):
            middle = outer * qpoch_scalar(qn, i) * inv_qfact(i) ** 2
            for l in range(m + 1):
                if 2 * m + 2 * i + (m - l) > order:
                    continue
                denominator = qpoch_scalar_denominator(qpow(i), l, label=f"(q^{i};q)_l", length="l")
                c = middle * qpoch_scalar(qpow(p.n + i), l) * denominator * inv_qfact(l) * inv_qfact(m - l)
                monomial = mono(V, "bz" * m + "yz" * i + "x" * (m - l)).scaled(c)
                terms.append(ms_shift(qpoch_inv(mono(V, "xyz"), m + i + 1, order), monomial))
    return ms_sum(terms, V, order)


@builder("T11.lhs")
def t11_lhs(p: Params, order: int) -> MultiSeries:
    return mehler_lhs(p, order, inv_qfact)


def t11_prefactor(p: Params, order: int) -> MultiSeries:
    V = V_ABXYZ
    return ms_mul(qpoch_inf(mono(V, "bxz", p.k), order), inverse_product([mono(V, "xyz"), mono(V, "bxz")], order))


def t11_sum(p: Params, order: int, corrected: bool) -> MultiSeries:
    V = V_ABXYZ
    bxz = mono(V, "bxz").to_series(order)
    yz, bz = mono(V, "yz").to_series(order), mono(V, "bz").to_series(order)
    weight = HeineOrder(p.n).weight
    # the m-th term has total degree >= 3m (a^m form) or >= 4m ((bz)^m form)
    m_max = order // 3 if corrected else order // 4
    phis = [hahn(l, bxz, yz, bz) for l in range(m_max + 1)]
    outer = []
    for m in range(m_max + 1):
        inner = []
        for l in range(m + 1):
            c = qbinom(m, l) * qpow(p.k * (m - l))
            if corrected:
                c = c * signed_gaussian(m - l)
            inner.append(ms_shift(phis[l], MonomialArg.of(V, "bz" * (m - l), c)))
        step = ms_shift(ms_sum(inner, V, order), mono(V, "a" * m if corrected else "bz" * m))
        step = ms_mul(ms_scale(step, weight(m)), qpoch_inv(mono(V, "bxz", p.k), m, order))
        outer.append(step)
    return ms_mul(t11_prefactor(p, order), ms_sum(outer, V, order))


@builder("T11.rhs")
def t11_rhs(p: Params, order: int) -> MultiSeries:
    return t11_sum(p, order, corrected=False)


@builder("T11.corrected")
def t11_corrected(p: Params, order: int) -> MultiSeries:
    return t11_sum(p, order, corrected=True)


def double_hahn_lhs(p: Params, order: int, weight: Callable[[int], RatFunQ]) -> MultiSeries:
    """sum_{n,m} Phi_(n+m)^(q^k)(b, x) weight(n) weight(m) z^n y^m"""
    V = V_BXYZ
    b, x = ms_var(V, order, "b"), ms_var(V, order, "x")
    alpha = qconst(V, order, p.k)
    terms = []
    for s in range(order // 2 + 1):
        phi_s = hahn(s, alpha, b, x)
        spread = MultiSeries(V, order, {(0, 0, s - j, j): weight(j) * weight(s - j) for j in range(s + 1)})
        terms.append(ms_mul(phi_s, spread))
    return ms_sum(terms, V, order)


@builder("T12.lhs")
def t12_lhs(p: Params, order: int) -> MultiSeries:
    return double_hahn_lhs(p, order, lambda j: ONE)


def t12_sum(p: Params, order: int, corrected: bool) -> MultiSeries:
    V = V_BXYZ
    terms = []
    for i in range(order // 2 + 1):
        spec = PhiSpec(
            (scalar(V, qpow(p.k + i)), scalar(V, qpow(1))),
            (mono(V, "xy", i + 1),),
            mono(V, "by"),
            label="2phi1",
        )
        head = mono(V, "bz" * i).scaled(qpoch_scalar(qpow(p.k), i))
        step = ms_mul(ms_shift(qpoch_inv(mono(V, "xz"), i + 1, order), head), phi_series(spec, order))
        if corrected:
            step = ms_mul(step, geometric_inverse(mono(V, "xy", i), order))
        terms.append(step)
    total = ms_sum(terms, V, order)
    if corrected:
        return total
    prefactor = ms_inverse(ms_mul(one_minus(mono(V, "xz"), order), one_minus(mono(V, "xy"), order)))
    return ms_mul(prefactor, total)


@builder("T12.rhs")
def t12_rhs(p: Params, order: int) -> MultiSeries:
    return t12_sum(p, order, corrected=False)


@builder("T12.corrected")
def t12_corrected(p: Params, order: int) -> MultiSeries:
    return t12_sum(p, order, corrected=True)


@builder("T13.lhs")
def t13_lhs(p: Params, order: int) -> MultiSeries:
    return double_hahn_lhs(p, order, inv_qfact)


@builder("T13.rhs")
def t13_rhs(p: Params, order: int) -> MultiSeries:
    V = V_BXYZ
    spec = PhiSpec((scalar(V, qpow(p.k)), mono(V, "xz")), (mono(V, "bz", p.k),), mono(V, "by"), label="2phi1")
    return ms_product([
        qpoch_inf(mono(V, "bz", p.k), order),
        inverse_product([mono(V, "xy"), mono(V, "xz"), mono(V, "bz")], order),
        phi_series(spec, order),
    ])


# q-exponential operator limits


@builder("C1.lhs")
def c1_lhs(p: Params, order: int) -> MultiSeries:
    return t_apply(mono(V_ABX, "b"), "x", inverse_product([mono(V_ABX, "ax")], order))


@builder("C1.rhs")
def c1_rhs(p: Params, order: int) -> MultiSeries:
    return inverse_product([mono(V_ABX, "ax"), mono(V_ABX, "ab")], order)


@builder("C2.lhs")
def c2_lhs(p: Params, order: int) -> MultiSeries:
    return t_apply(mono(V_ABX, "b"), "x", qpoch_inf(mono(V_ABX, "ax"), order))


@builder("C2.rhs")
def c2_rhs(p: Params, order: int) -> MultiSeries:
    V = V_ABX
    spec = PhiSpec((scalar(V, 0), scalar(V, 0)), (mono(V, "ax"),), mono(V, "ab"), label="2phi1")
    return ms_mul(qpoch_inf(mono(V, "ax"), order), phi_series(spec, order))


@builder("C2.corrected")
def c2_corrected(p: Params, order: int) -> MultiSeries:
    V = V_ABX
    spec = PhiSpec((scalar(V, 0),), (mono(V, "ax"),), mono(V, "ab"), label="1phi1")
    return ms_mul(qpoch_inf(mono(V, "ax"), order), phi_series(spec, order))


@builder("C3.lhs")
def c3_lhs(p: Params, order: int) -> MultiSeries:
    f = inverse_product([mono(V_ABCX, "bx"), mono(V_ABCX, "cx")], order)
    return t_apply(mono(V_ABCX, "a"), "x", f)


@builder("C3.rhs")
def c3_rhs(p: Params, order: int) -> MultiSeries:
    V = V_ABCX
    top = qpoch_inf(mono(V, "abcx"), order)
    return ms_mul(top, inverse_product([mono(V, name) for name in ("bx", "cx", "ac", "ab")], order))
