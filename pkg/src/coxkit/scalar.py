"""Exact arithmetic in real cyclotomic rings.

Every scalar is a polynomial in a primitive N-th root of unity ``z`` with
rational coefficients, reduced modulo the N-th cyclotomic polynomial.  All
values produced by the toolkit are real, so ``2cos(pi/m) = z^(N/2m) + z^-(N/2m)``
and its polynomial combinations cover every entry of the canonical
representation of a Coxeter group whose finite labels ``m`` all satisfy
``2m | N``.
"""
from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import Iterable

from mpmath.ctx_iv import MPIntervalContext
import numpy as np
from sympy import divisors, factorint

from .errors import ContextMismatch

NEGATIVE, ZERO, POSITIVE = -1, 0, 1

_EPS = 2.0 ** -52


def conductor_for_labels(labels: Iterable) -> int:
    """Least common multiple of ``{2m : m finite, m >= 3} ∪ {4}``.

    ``labels`` may contain ``None`` (or ``math.inf``) for infinite labels; these
    and the labels 1 and 2 do not enlarge the ring.
    """
    n = 4
    for m in labels:
        if m is None or m == math.inf or m < 3:
            continue
        n = math.lcm(n, 2 * int(m))
    return n


@functools.lru_cache(maxsize=None)
def context(conductor: int) -> "ScalarContext":
    """Shared context for a given conductor (contexts are interned)."""
    return ScalarContext(conductor)


class ScalarContext:
    """The ring Q(z)/Phi_N(z) for a fixed even conductor ``N >= 4``."""

    def __init__(self, conductor: int):
        if conductor < 4 or conductor % 2:
            raise ValueError(f"conductor must be even and >= 4, got {conductor}")
        self.conductor = conductor
        self.modulus = cyclotomic_coeffs(conductor)
        self.degree = len(self.modulus) - 1
        # x^d = -sum(low_i x^i)
        self._low_nz = tuple((i, c) for i, c in enumerate(self.modulus[:-1]) if c)
        self._cos = np.cos(2 * np.pi * np.arange(self.degree) / conductor)
        self._monomials: dict[int, tuple[int, ...]] = {}

    def __repr__(self):
        return f"ScalarContext(N={self.conductor})"

    def __reduce__(self):
        return (context, (self.conductor,))

    # -- construction helpers -------------------------------------------

    def monomial(self, e: int) -> tuple[int, ...]:
        """Coefficient vector of ``z^e`` in normal form."""
        e %= self.conductor
        vec = self._monomials.get(e)
        if vec is not None:
            return vec
        d = self.degree
        if e < d:
            out = [0] * d
            out[e] = 1
            vec = tuple(out)
        else:
            low = np.array(self.modulus[:-1], dtype=np.int64)
            v = np.zeros(e + 1, dtype=np.int64)
            v[e] = 1
            for k in range(e, d - 1, -1):
                top = v[k]
                if top:
                    v[k - d:k] -= top * low
                    if abs(top) > 2 ** 40:
                        return self._monomial_slow(e)
            v = v[:d]
            vec = tuple(int(c) for c in v)
        self._monomials[e] = vec
        return vec

    def _monomial_slow(self, e: int) -> tuple[int, ...]:
        d = self.degree
        v = [0] * d
        v[d - 1] = 1
        for _ in range(e - (d - 1)):
            top = v[-1]
            v = [0] + v[:-1]
            if top:
                for i, c in self._low_nz:
                    v[i] -= top * c
        vec = tuple(v)
        self._monomials[e] = vec
        return vec

    def zero(self) -> "CycScalar":
        return CycScalar._raw(self, (0,) * self.degree, 1)

    def one(self) -> "CycScalar":
        return self.rational(1)

    def rational(self, q) -> "CycScalar":
        q = Fraction(q)
        return CycScalar._raw(self, (q.numerator,) + (0,) * (self.degree - 1), q.denominator)

    def two_cos(self, m: int) -> "CycScalar":
        """``2cos(pi/m)`` as an exact element of this ring."""
        m = int(m)
        if m < 1 or self.conductor % (2 * m):
            raise ContextMismatch(f"2*{m} does not divide the conductor {self.conductor}")
        a = self.conductor // (2 * m)
        p, q = self.monomial(a), self.monomial(self.conductor - a)
        return CycScalar._raw(self, tuple(x + y for x, y in zip(p, q)), 1)

    def from_coeffs(self, coeffs: Iterable, check_real: bool = True) -> "CycScalar":
        """Build a scalar from rational coefficients of ``1, z, z^2, ...``.

        Coefficients beyond the degree are reduced modulo the cyclotomic
        polynomial.  The result must be real.
        """
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = math.lcm(den, c.denominator)
        acc = [0] * self.degree
        for k, c in enumerate(fr):
            if c:
                n = c.numerator * (den // c.denominator)
                for i, v in enumerate(self.monomial(k)):
                    if v:
                        acc[i] += n * v
        x = CycScalar._make(self, acc, den)
        if check_real and not x.is_real():
            raise ValueError(f"scalar {x} is not real")
        return x


class CycScalar:
    """Exact real element of a cyclotomic ring, stored as ``num / den``."""

    __slots__ = ("ctx", "num", "den", "_hash")

    @classmethod
    def _raw(cls, ctx: ScalarContext, num: tuple, den: int) -> "CycScalar":
        self = object.__new__(cls)
        self.ctx = ctx
        self.num = num
        self.den = den
        self._hash = None
        return self

    @classmethod
    def _make(cls, ctx, num, den) -> "CycScalar":
        if den != 1:
            g = den
            for c in num:
                if c:
                    g = math.gcd(g, c)
                    if g == 1:
                        break
            if den < 0:
                g = -g
            if g != 1:
                num = [c // g for c in num]
                den //= g
        return cls._raw(ctx, tuple(num), den)

    # -- basic protocol -------------------------------------------------

    def key(self) -> tuple:
        """Hashable canonical key (equal keys ⇔ equal scalars in one context)."""
        return (self.num, self.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, CycScalar):
            return self.ctx is other.ctx and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == self.ctx.rational(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return not self.is_zero()

    def _coerce(self, other) -> "CycScalar":
        if isinstance(other, CycScalar):
            if other.ctx is not self.ctx:
                raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.rational(other)
        raise TypeError(f"cannot combine CycScalar with {type(other).__name__}")

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return CycScalar._make(self.ctx, [a + b for a, b in zip(self.num, o.num)], self.den)
        den = self.den * o.den
        return CycScalar._make(
            self.ctx, [a * o.den + b * self.den for a, b in zip(self.num, o.num)], den
        )

    __radd__ = __add__

    def __neg__(self):
        return CycScalar._raw(self.ctx, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return self.ctx.zero()
            return CycScalar._make(self.ctx, [a * other for a in self.num], self.den)
        if isinstance(other, Fraction):
            return CycScalar._make(
                self.ctx, [a * other.numerator for a in self.num], self.den * other.denominator
            )
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        ctx = self.ctx
        d = ctx.degree
        prod = [0] * (2 * d - 1)
        bnz = [(j, b) for j, b in enumerate(o.num) if b]
        for i, a in enumerate(self.num):
            if a:
                for j, b in bnz:
                    prod[i + j] += a * b
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                base = k - d
                for i, m in ctx._low_nz:
                    prod[base + i] -= c * m
        return CycScalar._make(ctx, prod[:d], self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycScalar":
        """Multiplicative inverse via the extended Euclidean algorithm over Q."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        ctx = self.ctx
        # polynomials as lists of Fractions, low -> high
        a = _trim([Fraction(c) for c in ctx.modulus])
        b = _trim([Fraction(c, self.den) for c in self.num])
        s0, s1 = [], [Fraction(1)]  # coefficients of b
        while len(b) > 1:
            q, r = _pdivmod(a, b)
            a, b = b, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        # b is a nonzero constant
        inv = [c / b[0] for c in s1]
        return ctx.from_coeffs(inv, check_real=False)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycScalar._make(
                self.ctx, [a * q.denominator for a in self.num], self.den * q.numerator
            )
        return self * self._coerce(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ctx.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- realness, sign, approximation ----------------------------------

    def conjugate(self) -> "CycScalar":
        ctx = self.ctx
        acc = [0] * ctx.degree
        for k, c in enumerate(self.num):
            if c:
                for i, v in enumerate(ctx.monomial(ctx.conductor - k)):
                    if v:
                        acc[i] += c * v
        return CycScalar._make(ctx, acc, self.den)

    def is_real(self) -> bool:
        return self.conjugate() == self

    def approx(self) -> float:
        return float(np.dot(np.array(self.num, dtype=float), self.ctx._cos)) / self.den

    def sign(self) -> int:
        """Exact sign: ``-1``, ``0`` or ``1``."""
        return _sign(self.ctx, self.num)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    # -- presentation ---------------------------------------------------

    def as_fraction(self) -> Fraction | None:
        """The value as a Fraction when it is rational, else ``None``."""
        if any(self.num[1:]):
            return None
        return Fraction(self.num[0], self.den)

    def __str__(self):
        q = self.as_fraction()
        if q is not None:
            return str(q)
        terms = []
        for k, c in enumerate(self.num):
            if not c:
                continue
            mag = abs(c)
            body = "" if k and mag == 1 else str(mag)
            if k:
                body += ("*" if body else "") + ("z" if k == 1 else f"z^{k}")
            terms.append(("-" if c < 0 else "+") + body)
        s = "".join(terms).lstrip("+")
        if self.den != 1:
            s = f"({s})/{self.den}"
        return s

    def __repr__(self):
        return f"CycScalar({self}, N={self.ctx.conductor})"

    def to_json(self) -> dict:
        return {"num": list(self.num), "den": self.den, "approx": round(self.approx(), 12)}


def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Integer coefficients (low -> high) of the n-th cyclotomic polynomial.

    Uses ``Phi_n = prod_{d | n} (x^d - 1)^mu(n/d)``: multiply the factors with
    ``mu = +1`` first, then divide out the ``mu = -1`` factors exactly.
    """
    up, down = [], []
    for d in divisors(n):
        f = factorint(n // d)
        mu = 0 if any(e > 1 for e in f.values()) else (-1) ** len(f)
        if mu == 1:
            up.append(d)
        elif mu == -1:
            down.append(d)
    p = [1]
    for d in up:
        q = [0] * (len(p) + d)
        for i, c in enumerate(p):
            q[i] -= c
            q[i + d] += c
        p = q
    for d in down:
        # p = q * (x^d - 1)  =>  q_k = q_{k-d} - p_k
        deg = len(p) - 1 - d
        q = [0] * (deg + 1)
        for k in range(deg + 1):
            q[k] = (q[k - d] if k >= d else 0) - p[k]
        p = q
    return tuple(p)


def _float_sign(ctx: ScalarContext, num: tuple) -> int:
    v = np.array(num, dtype=float)
    s = float(np.dot(v, ctx._cos))
    bound = float(np.abs(v).sum()) * (ctx.degree + 4) * 4 * _EPS
    if s > bound:
        return POSITIVE
    if s < -bound:
        return NEGATIVE
    return ZERO


@functools.lru_cache(maxsize=1 << 16)
def _sign_cached(conductor: int, num: tuple) -> int:
    ctx = context(conductor)
    if not any(num):
        return ZERO
    s = _float_sign(ctx, num)
    if s:
        return s
    prec = 106
    while True:
        # a private interval context: its precision is local to this call
        iv = MPIntervalContext()
        iv.prec = prec
        two_pi_n = 2 * iv.pi / conductor
        acc = iv.mpf(0)
        for k, c in enumerate(num):
            if c:
                acc += c * iv.cos(two_pi_n * k)
        if acc.a > 0:
            return POSITIVE
        if acc.b < 0:
            return NEGATIVE
        prec *= 2


def _sign(ctx: ScalarContext, num: tuple) -> int:
    # denominators are positive, so they never affect the sign
    return _sign_cached(ctx.conductor, num)


def sign_or_zero(a: CycScalar) -> str:
    return {NEGATIVE: "negative", ZERO: "zero", POSITIVE: "positive"}[a.sign()]


def two_cos(ctx: ScalarContext, m: int) -> CycScalar:
    return ctx.two_cos(m)


# -- small dense polynomial helpers over Q (low -> high) ----------------

def _trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _psub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim([Fraction(c) for c in out]) if out else []


def _pdivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and any(a):
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        a.pop()
        _trim(a)
        if len(a) == 1 and a[0] == 0:
            break
    return _trim(q), _trim(a) if a else [Fraction(0)]
