"""Measure coefficients c_i = max{h_i log p, h_{i-1} log q} and the
t-norm evaluation of measure functions f_x(t) = (sum x_i c_i^t)^(1/t).

Branch decisions (which side of the max wins) are always made by exact
big-integer comparison, never by floating logs.  The stored float value is
then computed on the decided branch at the pair's working precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import mpmath
from mpmath import mpf, workprec

from .arith import (DEFAULT_PREC, GREATER, LESS, FibTable, cmp_power,
                    fib_table, is_prime)

P_TERM, Q_TERM, TIE = "p", "q", "tie"


@dataclass(frozen=True)
class PrimePair:
    p: int
    q: int
    prec: int = DEFAULT_PREC
    log_p: mpf = field(init=False, repr=False, compare=False)
    log_q: mpf = field(init=False, repr=False, compare=False)
    ratio: mpf = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.p == self.q:
            raise ValueError("need two distinct primes")
        if not (is_prime(self.p) and is_prime(self.q)):
            raise ValueError(f"({self.p}, {self.q}) is not a prime pair")
        if self.prec < 96:
            raise ValueError("precision below 96 bits is not supported")
        with workprec(self.prec):
            object.__setattr__(self, "log_p", mpmath.log(self.p))
            object.__setattr__(self, "log_q", mpmath.log(self.q))
            object.__setattr__(self, "ratio", self.log_q / self.log_p)


@dataclass(frozen=True)
class MeasureValue:
    value: mpf
    branch: str
    degenerate: bool = False


@dataclass(frozen=True)
class MeasureCoefficient:
    index: int
    value: mpf
    branch: str
    # integer exponent pair (a, b) with value = a*log p + b*log q; exactly
    # one of a, b is nonzero, which is what exact tie detection needs
    exponents: tuple[int, int]


def mahler_rational(pair: PrimePair, a: int, b: int) -> MeasureValue:
    """Measure of p^a / q^b: max{a log p, b log q} on the exact branch."""
    if a < 0 or b < 0:
        raise ValueError("exponents must be >= 0")
    if a == 0 and b == 0:
        return MeasureValue(mpf(0), TIE, degenerate=True)
    order = cmp_power(pair.p, a, pair.q, b)
    with workprec(pair.prec):
        if order == GREATER:
            return MeasureValue(a * pair.log_p, P_TERM)
        if order == LESS:
            return MeasureValue(b * pair.log_q, Q_TERM)
        return MeasureValue(a * pair.log_p, TIE)


@dataclass(frozen=True)
class CoefficientVector:
    pair: PrimePair
    N: int
    coefficients: tuple[MeasureCoefficient, ...]  # indices 1..N+1

    def __getitem__(self, i: int) -> MeasureCoefficient:
        if not 1 <= i <= self.N + 1:
            raise IndexError(f"coefficient index {i} outside 1..{self.N + 1}")
        return self.coefficients[i - 1]

    def value(self, i: int) -> mpf:
        return self[i].value

    def values(self, upto: int | None = None) -> list[mpf]:
        """c_1..c_upto (default c_1..c_N) as a plain list."""
        k = upto if upto is not None else self.N
        return [self.coefficients[i].value for i in range(k)]

    def float_logs(self, upto: int | None = None) -> list[float]:
        """log c_i as doubles, for the fast screening passes."""
        return [math.log(float(v)) for v in self.values(upto)]


def coefficient_vector(pair: PrimePair, N: int,
                       fib: FibTable | None = None) -> CoefficientVector:
    h = fib or fib_table(N, N)
    coeffs = []
    for i in range(1, N + 2):
        mv = mahler_rational(pair, h[i], h[i - 1])
        exps = (h[i], 0) if mv.branch == P_TERM else (0, h[i - 1])
        coeffs.append(MeasureCoefficient(i, mv.value, mv.branch, exps))
    return CoefficientVector(pair, N, tuple(coeffs))


def eval_measure_pow(x: Sequence[int], coeffs: CoefficientVector, t) -> mpf:
    """sum_i x_i c_i^t, the t-th power of the measure function (linear in x)."""
    if t <= 0:
        raise ValueError("t must be positive")
    with workprec(coeffs.pair.prec):
        tt = mpf(t)
        return mpmath.fsum(xi * coeffs.coefficients[i].value ** tt
                           for i, xi in enumerate(x) if xi)


def eval_measure_fn(x: Sequence[int], coeffs: CoefficientVector, t) -> mpf:
    """The t-norm (sum x_i c_i^t)^(1/t); non-increasing in t."""
    if t <= 0:
        raise ValueError("t must be positive")
    if not any(x):
        raise ValueError("zero vector has no measure function")
    with workprec(coeffs.pair.prec):
        return eval_measure_pow(x, coeffs, t) ** (1 / mpf(t))


def omega(x: Sequence[int], fib: FibTable | None = None) -> list[tuple[int, int]]:
    """Exponent pairs (h_i, h_{i-1}) with multiplicity x_i: the product
    representation behind x, for reporting only."""
    h = fib or fib_table(len(x), len(x))
    out: list[tuple[int, int]] = []
    for i, xi in enumerate(x, start=1):
        out.extend([(h[i], h[i - 1])] * xi)
    return out
