"""
The fixed identity catalog: twenty-two entries, each naming its builders
and its default parameter grid.
"""

from functools import lru_cache
from typing import Dict, List

from ..algebra.pseries import VarTable
from ..core.errors import UsageError
from .builders import BUILDERS
from .models import IdentitySpec, Params

N_GRID = [Params(n=n) for n in (1, 2, 3)]
K_GRID = [Params(k=k) for k in (1, 2, 3)]
NK_GRID = [Params(n, k) for n in (1, 2, 3) for k in (1, 2, 3)]
TRIANGLE = [Params(n, k) for n in range(7) for k in range(n + 1)]


def k_at_most_n(p: Params) -> bool:
    return p.k <= p.n


def _entry(id: str, description: str, anchor: str, vars: str, **kwargs) -> IdentitySpec:
    spec = IdentitySpec(id=id, description=description, anchor=anchor, vars=VarTable.of(vars), **kwargs)
    if not spec.skipped:
        spec.lhs = spec.lhs or f"{id}.lhs"
        spec.rhs = spec.rhs or f"{id}.rhs"
    return spec


@lru_cache(maxsize=1)
def _build_catalog() -> tuple:
    return (
        _entry(
            "I1", "finite Pochhammer as a ratio of infinite ones",
            r"(a;q)_{n}&=\frac{(a;q)_{\infty}}{(aq^n;q)_{\infty}}", "a",
            uses=("n",), default_grid=[Params(n=n) for n in range(7)],
        ),
        _entry(
            "I2", "splitting a Pochhammer of length n+k",
            r"(a;q)_{n+k}&=(a;q)_{n}(aq^n;q)_{k}", "a",
            uses=("n", "k"), default_grid=list(TRIANGLE), grid_filter=k_at_most_n,
        ),
        _entry(
            "I3", "reversal of the last k factors of (a;q)_n",
            r"(-qa^{-1})^{k}q^{\binom{k}{2}-nk}", "a",
            uses=("n", "k"), default_grid=list(TRIANGLE), grid_filter=k_at_most_n,
        ),
        _entry(
            "I4", "q-Leibniz rule for D_q^n of a product (k seeds the random pair)",
            r"D_{q}^{n}\{f(x)g(x)\}", "x",
            uses=("n", "k"), default_grid=[Params(n, k) for n in range(1, 5) for k in (1, 2, 3)],
            note="verified as sum_k [n,k] D^k f (D^(n-k) g)(q^k x); the printed weight "
                 "q^(k(n-k)) only holds when read as q^(k(k-n)) acting on D^(n-k){g(q^k x)}",
        ),
        _entry(
            "I5", "q-binomial theorem, 1phi0(q^n;;q,z) = (q^n z;q)_oo/(z;q)_oo",
            "frequently use the $q$-binomial theorem", "z",
            uses=("n",), default_grid=[Params(n=n) for n in range(6)],
        ),
        _entry(
            "I6", "Heine binomial formula, 1/(x;q)_n = sum_k [n+k-1,k] x^k",
            "The Heine binomial formula is", "x",
            uses=("n",), default_grid=[Params(n=n) for n in range(1, 6)],
        ),
        _entry(
            "T1", "H_n(bD_q) on the geometric series gives the Hahn generating sum",
            r"\Phi_{m}^{(q^n)}(b,x|q)=\sum", "bx",
            uses=("n",), default_grid=list(N_GRID),
        ),
        _entry(
            "T2", "H_n(bD_q) applied to 1/(ax;q)_oo",
            r"\frac{(q^nab;q)_{\infty}}{(ax,ab;q)_{\infty}}", "abx",
            uses=("n",), default_grid=list(N_GRID),
        ),
        _entry(
            "T3", "H_n(bD_q) applied to (ax;q)_oo",
            r"(ax;q)_{\infty}{}_{2}\varphi_{1}", "abx",
            uses=("n",), default_grid=list(N_GRID), corrected_rhs="T3.corrected",
            note="printed 2phi1(q^n,0;-ax;q,ab); D_q^k (ax;q)_oo carries (-1)^k q^binom(k,2), "
                 "which turns the sum into 1phi1(q^n;ax;q,ab)",
        ),
        _entry(
            "T4", "H_n(aD_q) applied to 1/(bx,cx;q)_oo",
            r"\frac{(q^{n}ac;q)_{\infty}}{(bx,cx,ac;q)_{\infty}}", "abcx",
            uses=("n",), default_grid=list(N_GRID),
        ),
        _entry(
            "T5", "H_n(dD_q) applied to (cx;q)_oo/(ax,bx;q)_oo",
            r"\Phi_{m}^{(bx)}(a,b)c^{l-m}", "abcdx",
            uses=("n",), default_grid=list(N_GRID), corrected_rhs="T5.corrected",
            note="printed sum uses b^l where the operator parameter d belongs, and c^(l-m) "
                 "without the (-1)^(l-m) q^binom(l-m,2) of D_q^(l-m) (cx;q)_oo",
        ),
        _entry(
            "T6", "generating function in the Theta_0 notation",
            r"(1\ominus_{1,1}qxy)_{q}^{(-k-1)}", "bxy",
            skipped=True,
            note="notation Theta_0 and the operator (1 (-)_{1,1} qxy)_q^(-k-1) are undefined; "
                 "the hypothesis u in C is unused",
        ),
        _entry(
            "T7", "ordinary generating function of Phi_m^(q^n)(b,x)",
            r"\frac{1}{1-xy}{}_{2}\varphi_{1}", "bxy",
            uses=("n",), default_grid=list(N_GRID),
        ),
        _entry(
            "T8", "exponential generating function of Phi_m^(q^n)(b,x)",
            r"\frac{(q^{n}by;q)_{\infty}}{(xy,by;q)_{\infty}}", "bxy",
            uses=("n",), default_grid=list(N_GRID),
        ),
        _entry(
            "T9", "Gaussian-weighted generating function of Phi_m^(q^n)(b,x)",
            r"q^{\binom{m}{2}}\Phi_{m}^{(q^n)}(b,x|q)", "bxy",
            uses=("n",), default_grid=list(N_GRID), corrected_rhs="T9.corrected",
            note="printed (xy;q)_oo 2phi1(q^n,0;-xy;q,by); the sum closes as "
                 "(-xy;q)_oo 1phi1(q^n;-xy;q,-by)",
        ),
        _entry(
            "T10", "Mehler-type sum of Phi_m^(q^n)(a,x) Phi_m^(q^k)(b,y) z^m",
            r"(q^k;q)_{m}(q;q)_{m}(bz)^m", "abxyz",
            uses=("n", "k"), default_grid=list(NK_GRID),
            note="the printed sum divides by (q^i;q)_l; "
                 "the operator parameter a is also missing from it",
        ),
        _entry(
            "T11", "exponential Mehler-type sum with 1/(q;q)_m",
            r"\Phi_{l}^{(bxz)}(yz,bz)(q^kbz)^{m-l}", "abxyz",
            uses=("n", "k"), default_grid=list(NK_GRID), corrected_rhs="T11.corrected",
            note="printed (bz)^m where the operator parameter gives a^m, and (q^k bz)^(m-l) "
                 "without the (-1)^(m-l) q^binom(m-l,2) sign factor",
        ),
        _entry(
            "T12", "double generating function sum_{n,m} Phi_(n+m)^(q^k)(b,x) z^n y^m",
            r"\frac{(q^k;q)_{i}(bz)^i}{(xz;q)_{i+1}}", "bxyz",
            uses=("k",), default_grid=list(K_GRID), corrected_rhs="T12.corrected",
            note="the global prefactor 1/((1-xz)(1-xy)) should be a per-term 1/(1-q^i xy)",
        ),
        _entry(
            "T13", "double exponential generating function of Phi_(n+m)^(q^k)(b,x)",
            r"\frac{(q^{k}bz;q)_{\infty}}{(yx,xz,bz;q)_{\infty}}", "bxyz",
            uses=("k",), default_grid=list(K_GRID),
        ),
        _entry(
            "C1", "T(bD_q) applied to 1/(ax;q)_oo",
            r"\frac{1}{(ax,ab;q)_{\infty}}", "abx",
        ),
        _entry(
            "C2", "T(bD_q) applied to (ax;q)_oo",
            r"{}_{2}\varphi_{1}\left(\begin{array}{c} 0,0", "abx",
            corrected_rhs="C2.corrected",
            note="printed 2phi1(0,0;ax;q,ab) differs at ab; the limit of the corrected "
                 "Heine form is 1phi1(0;ax;q,ab)",
        ),
        _entry(
            "C3", "T(aD_q) applied to 1/(bx,cx;q)_oo",
            r"\frac{(a b cx;q)_{\infty}}{(bx,cx,ac,ab;q)_{\infty}}", "abcx",
        ),
    )


def catalog() -> List[IdentitySpec]:
    return list(_build_catalog())


def catalog_ids() -> List[str]:
    return [spec.id for spec in _build_catalog()]


def get_identity(id: str) -> IdentitySpec:
    by_id: Dict[str, IdentitySpec] = {spec.id: spec for spec in _build_catalog()}
    try:
        return by_id[id]
    except KeyError:
        raise UsageError(f"unknown identity id {id!r}; known: {', '.join(by_id)}") from None


def check_builders() -> None:
    """Every tag named by the catalog resolves to a registered builder"""
    for spec in _build_catalog():
        for tag in (spec.lhs, spec.rhs, spec.corrected_rhs):
            if tag is not None and tag not in BUILDERS:
                raise UsageError(f"{spec.id}: builder {tag} is not registered")
