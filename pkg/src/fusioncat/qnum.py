"""q-numbers, q-factorials and quantum Lie superfactorials at q = exp(i pi / kappa).

Two bracket conventions are supported::

    [x]_q  = (q^x - q^-x) / (q - q^-1)      (real at roots of unity)
    [[x]]_q = (1 - q^x) / (1 - q)

Superfactorials are represented by the multiset of arguments x entering the
product, so the quantum value, the double-bracket value and the classical
(q = 1) value all come from one list.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import mpmath
from mpmath import mp

from .lie_core import LieType

DEFAULT_PRECISION = 50
GUARD_DIGITS = 12
TOLERANCE = mpmath.mpf(10) ** -30


class QDomainError(ValueError):
    """Raised when a q-quantity is requested outside the window 0 < x < kappa."""


@dataclass(frozen=True)
class QContext:
    altitude: int
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.altitude < 2:
            raise ValueError(f"altitude must be >= 2, got {self.altitude}")
        if self.precision < 30:
            raise ValueError(f"precision must be >= 30 digits, got {self.precision}")

    @property
    def working_dps(self) -> int:
        return self.precision + GUARD_DIGITS

    def workdps(self):
        return mp.workdps(self.working_dps)

    @property
    def q(self):
        with self.workdps():
            return mp.expjpi(mpmath.mpf(1) / self.altitude)

    def qpow(self, x, power: int = 1):
        """q**(power*x) for rational x, computed from the exact exponent."""
        e = Fraction(x) * power / (2 * self.altitude)
        e -= e.numerator // e.denominator
        with self.workdps():
            return mp.expj(2 * mp.pi * mpmath.mpf(e.numerator) / e.denominator)


def _frac_mpf(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


@lru_cache(maxsize=200_000)
def _sine_ratio(altitude: int, x: Fraction, dps: int):
    with mp.workdps(dps):
        return mp.sinpi(_frac_mpf(x) / altitude) / mp.sinpi(mpmath.mpf(1) / altitude)


def q_number(ctx: QContext, x) -> mpmath.mpf:
    """[x]_q = sin(x pi / kappa) / sin(pi / kappa)."""
    return _sine_ratio(ctx.altitude, Fraction(x), ctx.working_dps)


def q_number_bb(ctx: QContext, n, power: int = 1) -> mpmath.mpc:
    """[[n]]_p = (1 - p^n) / (1 - p) with p = q**power."""
    n = Fraction(n)
    if n == 0:
        return mpmath.mpc(0)
    with ctx.workdps():
        return (1 - ctx.qpow(n, power)) / (1 - ctx.qpow(1, power))


def q_factorial(ctx: QContext, s: int) -> mpmath.mpf:
    """[s]!_q for 0 <= s < kappa."""
    if s < 0 or s >= ctx.altitude:
        raise QDomainError(f"[{s}]!_q needs 0 <= s < kappa = {ctx.altitude}")
    with ctx.workdps():
        return mp.fprod(q_number(ctx, n) for n in range(1, s + 1))


def q_factorial_bb(ctx: QContext, s: int, power: int = 1) -> mpmath.mpc:
    """[[s]]!_p with p = q**power."""
    if s < 0:
        raise QDomainError(f"[[{s}]]! needs s >= 0")
    with ctx.workdps():
        return mp.fprod(q_number_bb(ctx, n, power) for n in range(1, s + 1))


def _tilde_factorial_b(s: int) -> list[Fraction]:
    # [s/2] [s-1] [s-2] ... [1]
    return [Fraction(s, 2)] + [Fraction(j) for j in range(s - 1, 0, -1)]


def _tilde_factorial_c(s: int) -> list[Fraction]:
    # j/2 for (s+3)/2 <= j <= s, then (s+1)/2, then j/2 for 1 <= j <= (s-1)/2;
    # the [1] factors dropped from the printed pattern equal 1
    top = [Fraction(j, 2) for j in range(s, (s + 3) // 2 - 1, -1)]
    bottom = [Fraction(j, 2) for j in range((s - 1) // 2, 0, -1)]
    return top + [Fraction(s + 1, 2)] + bottom


_F4_ARGS = (
    [Fraction(1, 2)] * 2 + [Fraction(1)] * 3 + [Fraction(3, 2)] + [Fraction(2)] * 3
    + [Fraction(5, 2)] * 2 + [Fraction(3)] * 3 + [Fraction(7, 2)] + [Fraction(4)] * 2
    + [Fraction(9, 2)] + [Fraction(5)] * 2 + [Fraction(11, 2)] + [Fraction(6), Fraction(7), Fraction(8)]
)

_G2_ARGS = [Fraction(5, 3), Fraction(4, 3), Fraction(3), Fraction(2), Fraction(1), Fraction(1, 3)]


def superfactorial_arguments(t: LieType) -> list[Fraction]:
    """Multiset of arguments x whose q-numbers multiply to the superfactorial of type t."""
    if t.simply_laced:
        return [Fraction(n) for s in t.exponents for n in range(1, s + 1)]
    if t.family == "B":
        out = []
        for s in t.exponents:
            out += [Fraction(1, 2)] if s == 1 else _tilde_factorial_b(s)
        return out
    if t.family == "C":
        return [x for s in t.exponents for x in _tilde_factorial_c(s)]
    if t.family == "F":
        return list(_F4_ARGS)
    return list(_G2_ARGS)


def _check_window(ctx: QContext, args, t: LieType) -> None:
    hi = max(args, default=Fraction(0))
    if hi >= ctx.altitude:
        raise QDomainError(f"superfactorial of {t} needs kappa > {hi}, got kappa = {ctx.altitude}")


def q_superfactorial(ctx: QContext, t: LieType) -> mpmath.mpf:
    """Quantum Lie superfactorial sf_G[q]."""
    args = superfactorial_arguments(t)
    _check_window(ctx, args, t)
    with ctx.workdps():
        return mp.fprod(q_number(ctx, x) for x in args)


def q_superfactorial_bb(ctx: QContext, t: LieType, power: int = 1) -> mpmath.mpc:
    """Double-bracket superfactorial Sf_G[p] with p = q**power."""
    args = superfactorial_arguments(t)
    _check_window(ctx, args, t)
    with ctx.workdps():
        return mp.fprod(q_number_bb(ctx, x, power) for x in args)


def classical_superfactorial(t: LieType) -> Fraction:
    """Exact q = 1 value of the superfactorial, i.e. the product of its arguments."""
    out = Fraction(1)
    for x in superfactorial_arguments(t):
        out *= x
    return out


def classical_superfactorial_reference(t: LieType) -> Fraction:
    """Closed forms for the classical superfactorial, independent of the argument lists."""
    prod_fact = 1
    for s in t.exponents:
        prod_fact *= factorial(s)
    r = t.rank
    if t.simply_laced:
        return Fraction(prod_fact)
    if t.family == "B":
        return Fraction(prod_fact, 2**r)
    if t.family == "C":
        return Fraction(prod_fact, 2 ** (r * (r - 1)))
    if t.family == "F":
        return Fraction(prod_fact, 2**12)
    return Fraction(prod_fact, 27)


def q_barnes_integer(ctx: QContext, n: int, power: int = 1) -> mpmath.mpc:
    """Quantum Barnes G-function G_p(n) at a positive integer, p = q**power.

    Uses G_p(1) = 1 and G_p(z + 1) = Gamma_p(z) G_p(z) with Gamma_p(m) = [[m - 1]]!_p.
    """
    if n < 1:
        raise QDomainError(f"G_q(n) is only implemented for integers n >= 1, got {n}")
    with ctx.workdps():
        g = mpmath.mpc(1)
        for z in range(1, n):
            g *= q_factorial_bb(ctx, z - 1, power)
        return g
