from .qcore import (
    Eq_exp,
    PhiSpec,
    dq,
    dq_k,
    dq_leibniz,
    eq_exp,
    phi_series,
    qbinom,
    qfact,
    qpoch_inf,
    qpoch_inv,
    qpoch_multi,
    qpoch_n,
    qpoch_recip_scaled,
)
from .qops import (
    INFINITY,
    HeineOrder,
    LedgerTerm,
    hahn,
    heine_annihilate,
    heine_apply,
    heine_ledger,
    rogers_szego,
    t_apply,
)

__all__ = [
    'Eq_exp',
    'PhiSpec',
    'dq',
    'dq_k',
    'dq_leibniz',
    'eq_exp',
    'phi_series',
    'qbinom',
    'qfact',
    'qpoch_inf',
    'qpoch_inv',
    'qpoch_multi',
    'qpoch_n',
    'qpoch_recip_scaled',
    'INFINITY',
    'HeineOrder',
    'LedgerTerm',
    'hahn',
    'heine_annihilate',
    'heine_apply',
    'heine_ledger',
    'rogers_szego',
    't_apply',
]
