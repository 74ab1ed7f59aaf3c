from .qfield import (
    ONE,
    Q,
    ZERO,
    PolyQ,
    RatFunQ,
    Rational,
    poly_gcd,
    poly_mul,
    poly_str,
    qpow,
    ratfun_arith,
    ratfun_eval_at,
    ratfun_make,
    ratfun_str,
    ratfun_sum,
)
from .pseries import (
    MonomialArg,
    MultiIndex,
    MultiSeries,
    VarTable,
    first_difference,
    ms_add,
    ms_coeff,
    ms_inverse,
    ms_mul,
    ms_rename,
    ms_shift,
    ms_subst_qscale,
    ms_to_text,
    ms_truncate,
)

__all__ = [
    'ONE',
    'Q',
    'ZERO',
    'PolyQ',
    'RatFunQ',
    'Rational',
    'poly_gcd',
    'poly_mul',
    'poly_str',
    'qpow',
    'ratfun_arith',
    'ratfun_eval_at',
    'ratfun_make',
    'ratfun_str',
    'ratfun_sum',
    'MonomialArg',
    'MultiIndex',
    'MultiSeries',
    'VarTable',
    'first_difference',
    'ms_add',
    'ms_coeff',
    'ms_inverse',
    'ms_mul',
    'ms_rename',
    'ms_shift',
    'ms_subst_qscale',
    'ms_to_text',
    'ms_truncate',
]
