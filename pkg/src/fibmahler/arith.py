"""Exact integer arithmetic: Fibonacci table, power comparison, primality.

Everything here is pure and deterministic.  Real-valued results are mpmath
mpf values produced at an explicit mantissa precision (bits); callers pass
``prec`` and we wrap the computation in ``mpmath.workprec`` so the global
context never leaks.
"""

from __future__ import annotations

import mpmath
from mpmath import mpf, workprec

DEFAULT_PREC = 128

#: Ordering verdicts returned by cmp_power.
LESS, EQUAL, GREATER = -1, 0, 1

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10^24
# (covers the full 64-bit range).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_MAX_PRIME_INPUT = 1 << 64


class FibTable:
    """Fibonacci numbers h_0 = 0, h_1 = 1, ..., h_maxIndex, exact."""

    def __init__(self, max_index: int):
        if max_index < 2:
            raise ValueError("max_index must be >= 2")
        vals = [0, 1]
        for _ in range(max_index - 1):
            vals.append(vals[-1] + vals[-2])
        self.max_index = max_index
        self._values = vals

    def __getitem__(self, i: int) -> int:
        if not 0 <= i <= self.max_index:
            raise IndexError(f"fib index {i} outside table 0..{self.max_index}")
        return self._values[i]

    fib = __getitem__

    def __len__(self) -> int:
        return self.max_index + 1


def fib_table(n: int, N: int | None = None) -> FibTable:
    """Table covering a computation at ambient dimension N (default n).

    Compatibility at N reads h_{N+1}, so the table extends two past N.
    """
    return FibTable(max((N or n) + 2, 2))


def cmp_power(p: int, a: int, q: int, b: int) -> int:
    """Exact order of p^a versus q^b; returns -1, 0 or 1.

    Three stages: crude bit-length intervals, certified interval-arithmetic
    logs (rigorous bounds, escalating precision), and finally full
    big-integer exponentiation.  The verdict never rests on an unverified
    floating comparison.
    """
    if p < 2 or q < 2:
        raise ValueError("bases must be >= 2")
    if a < 0 or b < 0:
        raise ValueError("exponents must be >= 0")
    if a == 0 and b == 0:
        return EQUAL
    if a == 0:
        return LESS
    if b == 0:
        return GREATER

    # 2^(L-1) <= x < 2^L  gives  a*(Lp-1) <= log2(p^a) < a*Lp.
    lp, lq = p.bit_length(), q.bit_length()
    if a * lp <= b * (lq - 1):
        return LESS
    if b * lq <= a * (lp - 1):
        return GREATER

    for prec in (128, 256, 512):
        ctx = mpmath.iv
        old = ctx.prec
        try:
            ctx.prec = prec
            d = a * ctx.log(p) - b * ctx.log(q)
            if d > 0:
                return GREATER
            if d < 0:
                return LESS
        finally:
            ctx.prec = old

    x, y = p ** a, q ** b
    return (x > y) - (x < y)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin verdict for 2 <= n < 2^64."""
    if n < 2:
        raise ValueError("primality is defined for n >= 2")
    if n >= _MAX_PRIME_INPUT:
        raise ValueError("input exceeds the 64-bit certified range")
    for w in _MR_WITNESSES:
        if n % w == 0:
            return n == w
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    k = max(n + 1, 2)
    while not is_prime(k):
        k += 1
    return k


def prev_prime(n: int) -> int | None:
    """Largest prime strictly less than n, or None when there is none."""
    k = n - 1
    while k >= 2:
        if is_prime(k):
            return k
        k -= 1
    return None


def golden_ratio(prec: int = DEFAULT_PREC) -> mpf:
    """(1 + sqrt 5) / 2 at the requested mantissa precision."""
    if prec < 96:
        raise ValueError("precision below 96 bits is not supported")
    with workprec(prec):
        return (1 + mpmath.sqrt(5)) / 2


def log_of(n: int, prec: int = DEFAULT_PREC) -> mpf:
    with workprec(prec):
        return mpmath.log(n)
