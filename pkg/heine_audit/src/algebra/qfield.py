"""
Exact coefficient arithmetic in the formal parameter q.

Rationals are ``fractions.Fraction``; polynomials and the fraction field are
backed by sympy's sparse ``ring("q", QQ)`` elements, wrapped so every value
is immutable and every rational function is kept in normal form
(gcd cancelled, monic denominator).
"""

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Sequence, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring

from ..core.errors import PoleError, PolynomialError

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_RING, _Q = ring("q", QQ)
_ZERO = _RING.zero
_ONE = _RING.one


def _to_qq(value: RationalLike):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _from_qq(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def _q_power(j: int) -> PolyElement:
    return _RING({(j,): QQ.one})


def _constant_term(p: PolyElement):
    return p.get((0,), QQ.zero)


class PolyQ:
    """Univariate polynomial in q with rational coefficients"""

    __slots__ = ("_p",)

    def __init__(self, coefficients: Iterable[RationalLike] = ()):
        terms = {}
        for i, c in enumerate(coefficients):
            c = Fraction(c)
            if c:
                terms[(i,)] = _to_qq(c)
        self._p = _RING(terms) if terms else _RING.zero

    @classmethod
    def _wrap(cls, element: PolyElement) -> "PolyQ":
        poly = cls.__new__(cls)
        poly._p = element
        return poly

    @classmethod
    def monomial(cls, j: int, coeff: RationalLike = 1) -> "PolyQ":
        if j < 0:
            raise PolynomialError(f"negative power q^{j} is not a polynomial")
        return cls._wrap(_q_power(j) * _to_qq(coeff))

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        """Dense coefficient list, index = power of q, no trailing zeros"""
        if self.is_zero:
            return ()
        dense = [Fraction(0)] * (self.degree + 1)
        for (i,), c in self._p.items():
            dense[i] = _from_qq(c)
        return tuple(dense)

    @property
    def degree(self) -> int:
        """Degree in q, -1 for the zero polynomial"""
        if not self._p:
            return -1
        return max(i for (i,) in self._p.keys())

    @property
    def is_zero(self) -> bool:
        return not self._p

    @property
    def leading_coefficient(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return _from_qq(self._p.LC)

    def evaluate(self, q0: RationalLike) -> Fraction:
        q0 = Fraction(q0)
        value = Fraction(0)
        for c in reversed(self.coefficients):
            value = value * q0 + c
        return value

    def __add__(self, other: "PolyQ") -> "PolyQ":
        return PolyQ._wrap(self._p + other._p)

    def __sub__(self, other: "PolyQ") -> "PolyQ":
        return PolyQ._wrap(self._p - other._p)

    def __neg__(self) -> "PolyQ":
        return PolyQ._wrap(-self._p)

    def __mul__(self, other: "PolyQ") -> "PolyQ":
        return poly_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyQ):
            return NotImplemented
        return self._p == other._p

    def __hash__(self) -> int:
        return hash(frozenset(self._p.items()))

    def __repr__(self) -> str:
        return f"PolyQ({poly_str(self)})"


def poly_mul(p: PolyQ, r: PolyQ) -> PolyQ:
    return PolyQ._wrap(p._p * r._p)


def poly_gcd(p: PolyQ, r: PolyQ) -> PolyQ:
    """Monic greatest common divisor"""
    if p.is_zero and r.is_zero:
        raise PolynomialError("gcd of zeros")
    return PolyQ._wrap(p._p.gcd(r._p).monic())


def poly_str(p: PolyQ) -> str:
    """Canonical text form, ascending powers of q: '1 - q^2', '1/2*q'"""
    if p.is_zero:
        return "0"
    parts = []
    for i, c in enumerate(p.coefficients):
        if not c:
            continue
        magnitude = abs(c)
        if i == 0:
            body = str(magnitude)
        else:
            power = "q" if i == 1 else f"q^{i}"
            body = power if magnitude == 1 else f"{magnitude}*{power}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts)


class RatFunQ:
    """
    Normalized rational function num/den in q.

    Construct through ``ratfun_make`` (or ``RatFunQ.of`` for constants);
    the normal form makes equality a representation comparison.
    """

    __slots__ = ("_n", "_d")

    def __init__(self, num: PolyQ, den: PolyQ):
        n, d = _normalize(num._p, den._p)
        self._n = n
        self._d = d

    @classmethod
    def _trusted(cls, n: PolyElement, d: PolyElement) -> "RatFunQ":
        value = cls.__new__(cls)
        value._n = n
        value._d = d
        return value

    @classmethod
    def of(cls, value: RationalLike) -> "RatFunQ":
        value = Fraction(value)
        if not value:
            return ZERO
        return cls._trusted(_RING(_to_qq(value)), _ONE)

    @property
    def num(self) -> PolyQ:
        return PolyQ._wrap(self._n)

    @property
    def den(self) -> PolyQ:
        return PolyQ._wrap(self._d)

    @property
    def is_zero(self) -> bool:
        return not self._n

    @property
    def is_polynomial(self) -> bool:
        return self._d == _ONE

    def __add__(self, other: "RatFunQ") -> "RatFunQ":
        return _add(self, other)

    def __sub__(self, other: "RatFunQ") -> "RatFunQ":
        return _add(self, -other)

    def __neg__(self) -> "RatFunQ":
        return RatFunQ._trusted(-self._n, self._d)

    def __mul__(self, other: "RatFunQ") -> "RatFunQ":
        return _mul(self, other)

    def __truediv__(self, other: "RatFunQ") -> "RatFunQ":
        return _mul(self, reciprocal(other))

    def __pow__(self, exponent: int) -> "RatFunQ":
        if exponent < 0:
            return reciprocal(self) ** (-exponent)
        return RatFunQ._trusted(self._n ** exponent, self._d ** exponent)

    def scale_qpow(self, s: int) -> "RatFunQ":
        """Multiply by q^s, skipping the gcd when q does not divide the side being reduced"""
        if s == 0 or self.is_zero:
            return self
        if s > 0:
            if _constant_term(self._d):
                return RatFunQ._trusted(self._n * _q_power(s), self._d)
        elif _constant_term(self._n):
            return RatFunQ._trusted(self._n, self._d * _q_power(-s))
        return _mul(self, qpow(s))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatFunQ):
            return NotImplemented
        return self._n == other._n and self._d == other._d

    def __hash__(self) -> int:
        return hash((frozenset(self._n.items()), frozenset(self._d.items())))

    def __repr__(self) -> str:
        return f"RatFunQ({ratfun_str(self)})"

    def __reduce__(self):
        return (_rebuild_ratfun, (self.num.coefficients, self.den.coefficients))


def _rebuild_ratfun(num: Sequence[Fraction], den: Sequence[Fraction]) -> RatFunQ:
    return RatFunQ._trusted(PolyQ(num)._p, PolyQ(den)._p)


def _normalize(n: PolyElement, d: PolyElement) -> Tuple[PolyElement, PolyElement]:
    if not d:
        raise PolynomialError("division by zero polynomial")
    if not n:
        return _ZERO, _ONE
    if d == _ONE:
        return n, d
    _, n, d = n.cofactors(d)
    return _make_monic(n, d)


def _add(lhs: RatFunQ, rhs: RatFunQ) -> RatFunQ:
    if not lhs._n:
        return rhs
    if not rhs._n:
        return lhs
    if lhs._d == rhs._d:
        if lhs._d == _ONE:
            return RatFunQ._trusted(lhs._n + rhs._n, _ONE)
        return RatFunQ._trusted(*_normalize(lhs._n + rhs._n, lhs._d))
    if rhs._d == _ONE:
        return RatFunQ._trusted(lhs._n + rhs._n * lhs._d, lhs._d)
    if lhs._d == _ONE:
        return RatFunQ._trusted(lhs._n * rhs._d + rhs._n, rhs._d)
    n = lhs._n * rhs._d + rhs._n * lhs._d
    return RatFunQ._trusted(*_normalize(n, lhs._d * rhs._d))


def _mul(lhs: RatFunQ, rhs: RatFunQ) -> RatFunQ:
    if not lhs._n or not rhs._n:
        return ZERO
    if lhs._d == _ONE and rhs._d == _ONE:
        return RatFunQ._trusted(lhs._n * rhs._n, _ONE)
    n1, d1 = lhs._n, lhs._d
    n2, d2 = rhs._n, rhs._d
    # cross-cancel, keeping each denominator monic
    if d2 != _ONE and n1.degree() > 0:
        _, n1, d2 = n1.cofactors(d2)
        n1, d2 = _make_monic(n1, d2)
    if d1 != _ONE and n2.degree() > 0:
        _, n2, d1 = n2.cofactors(d1)
        n2, d1 = _make_monic(n2, d1)
    return RatFunQ._trusted(n1 * n2, d1 * d2)


def _make_monic(n: PolyElement, d: PolyElement) -> Tuple[PolyElement, PolyElement]:
    lc = d.LC
    if lc == QQ.one:
        return n, d
    return n.quo_ground(lc), d.monic()


def reciprocal(value: RatFunQ) -> RatFunQ:
    if value.is_zero:
        raise PolynomialError("division by zero polynomial")
    return RatFunQ._trusted(*_normalize(value._d, value._n))


def ratfun_make(num: PolyQ, den: PolyQ) -> RatFunQ:
    return RatFunQ(num, den)


def ratfun_arith(lhs: RatFunQ, rhs: RatFunQ, op: str) -> RatFunQ:
    """Field arithmetic dispatched on op in {'+', '-', '*', '/'} (also '×', '÷', '−')"""
    if op in ("+",):
        return lhs + rhs
    if op in ("-", "−"):
        return lhs - rhs
    if op in ("*", "×"):
        return lhs * rhs
    if op in ("/", "÷"):
        return lhs / rhs
    raise ValueError(f"unknown operator {op!r}")


def ratfun_eval_at(f: RatFunQ, q0: RationalLike) -> Fraction:
    den = f.den.evaluate(q0)
    if den == 0:
        raise PoleError(f"pole at evaluation point q={Fraction(q0)}")
    return f.num.evaluate(q0) / den


def ratfun_sum(values: Iterable[RatFunQ]) -> RatFunQ:
    """Sum many coefficients with one normalization per distinct denominator"""
    groups: Dict[PolyElement, PolyElement] = {}
    for value in values:
        if not value._n:
            continue
        if value._d in groups:
            groups[value._d] = groups[value._d] + value._n
        else:
            groups[value._d] = value._n
    total = ZERO
    for d, n in groups.items():
        if not n:
            continue
        if d == _ONE:
            term = RatFunQ._trusted(n, _ONE)
        else:
            term = RatFunQ._trusted(*_normalize(n, d))
        total = total + term
    return total


@lru_cache(maxsize=None)
def qpow(j: int) -> RatFunQ:
    """q^j for any integer j"""
    if j >= 0:
        return RatFunQ._trusted(_q_power(j), _ONE)
    return RatFunQ._trusted(_ONE, _q_power(-j))


def ratfun_str(f: RatFunQ) -> str:
    if f.is_polynomial:
        return poly_str(f.num)
    return f"({poly_str(f.num)})/({poly_str(f.den)})"


def vanishing_qpow_index(value: RatFunQ) -> Union[int, None]:
    """Return m >= 0 when value == q^(-m), so (value;q)_k vanishes for k > m"""
    if value.is_zero or value._n != _ONE:
        return None
    terms = list(value._d.items())
    if len(terms) != 1 or terms[0][1] != QQ.one:
        return None
    return terms[0][0][0]


ZERO = RatFunQ._trusted(_ZERO, _ONE)
ONE = RatFunQ._trusted(_ONE, _ONE)
Q = qpow(1)
