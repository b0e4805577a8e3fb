"""Breakpoint solving (t_n and s_n), compatibility of prime pairs, and the
prime-pair search near the golden ratio.

t_n is the unique t >= 1 with c_n^t = c_{n-1}^t + c_{n-2}^t.  The residual
(c_{n-1}/c_n)^t + (c_{n-2}/c_n)^t - 1 is strictly decreasing, so bisection
with a certified sign-change bracket suffices.  The sign of the residual at
t = 1 is decided exactly: c_{n-1} + c_{n-2} - c_n is an integer combination
a*log p + b*log q, and its sign is the order of p^a versus q^b.  In
particular a = b = 0 certifies t_n = 1 with a degenerate bracket.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mpf, workprec

from .arith import (DEFAULT_PREC, FibTable, cmp_power, fib_table,
                    golden_ratio, next_prime, prev_prime)
from .measures import CoefficientVector, PrimePair, coefficient_vector

DEFAULT_TOL = 1e-12
_BRACKET_CAP = 1 << 20

T_POINT, S_POINT = "t", "s"


class DivergenceError(ValueError):
    """No sign change found: the defining equation has no root >= 1."""


class PrecisionError(ArithmeticError):
    """Ordering of two breakpoints could not be certified at this tolerance."""


@dataclass(frozen=True)
class Breakpoint:
    index: int
    value: mpf
    lo: mpf
    hi: mpf
    kind: str  # T_POINT | S_POINT

    @property
    def bracket(self) -> tuple[mpf, mpf]:
        return (self.lo, self.hi)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi


def _sign_log_combination(pair: PrimePair, a: int, b: int) -> int:
    """Exact sign of a*log p + b*log q for integers a, b."""
    if a >= 0 and b >= 0:
        return 1 if (a or b) else 0
    if a <= 0 and b <= 0:
        return -1
    if a > 0:
        return cmp_power(pair.p, a, pair.q, -b)
    return -cmp_power(pair.p, -a, pair.q, b)


def _bisect(res, lo: mpf, hi: mpf, tol: float, prec: int) -> tuple[mpf, mpf]:
    """Shrink a sign-change bracket (res(lo) > 0 > res(hi)) to relative tol."""
    with workprec(prec):
        while hi - lo > tol * lo:
            mid = (lo + hi) / 2
            if res(mid) > 0:
                lo = mid
            else:
                hi = mid
    return lo, hi


def solve_tn(coeffs: CoefficientVector, n: int, tol: float = DEFAULT_TOL) -> Breakpoint:
    """The crossing point t_n where generators n and n+1 exchange the lead."""
    if n < 3:
        raise ValueError("breakpoints are defined for n >= 3")
    if n > coeffs.N + 1:
        raise ValueError(f"coefficient vector covers indices up to {coeffs.N + 1}")
    pair, prec = coeffs.pair, coeffs.pair.prec
    cn, cn1, cn2 = coeffs[n], coeffs[n - 1], coeffs[n - 2]

    a = cn1.exponents[0] + cn2.exponents[0] - cn.exponents[0]
    b = cn1.exponents[1] + cn2.exponents[1] - cn.exponents[1]
    sign_at_one = _sign_log_combination(pair, a, b)
    if sign_at_one == 0:
        one = mpf(1)
        return Breakpoint(n, one, one, one, T_POINT)
    if sign_at_one < 0:
        raise DivergenceError(
            f"residual already negative at t=1 for n={n}: no root t >= 1 "
            "(pair violates the weak inequality chain)")

    with workprec(prec):
        r1 = cn1.value / cn.value
        r2 = cn2.value / cn.value
        if r1 >= 1 or r2 >= 1:
            raise DivergenceError(
                f"coefficients not increasing at n={n}: no crossing with t >= 1")

        def res(t: mpf) -> mpf:
            return r1 ** t + r2 ** t - 1

        lo, hi = mpf(1), mpf(2)
        while res(hi) > 0:
            hi *= 2
            if hi > _BRACKET_CAP:
                raise DivergenceError(
                    f"no sign change below {_BRACKET_CAP} for n={n}")
        lo, hi = _bisect(res, lo, hi, tol, prec)
        return Breakpoint(n, (lo + hi) / 2, lo, hi, T_POINT)


def _target_coefficient(k: int, phi: mpf, h: FibTable) -> mpf:
    """max{h_k, phi*h_{k-1}}, branch decided by the exact parity alternation
    of h_k/h_{k-1} around phi (odd k sits above, even k below; k = 1 uses
    the h_1/h_0 = infinity convention)."""
    if k < 1:
        raise ValueError("target coefficients start at k = 1")
    if k == 1 or k % 2 == 1:
        return mpf(h[k])
    return phi * h[k - 1]


def solve_sn(n: int, tol: float = DEFAULT_TOL, prec: int = DEFAULT_PREC,
             fib: FibTable | None = None) -> Breakpoint:
    """The golden-ratio idealization of t_n: root of
    a_n^s = a_{n-1}^s + a_{n-2}^s with a_k = max{h_k, phi*h_{k-1}}."""
    if n < 3:
        raise ValueError("defined for n >= 3")
    h = fib or fib_table(n, n)
    with workprec(prec):
        phi = golden_ratio(prec)
        an = _target_coefficient(n, phi, h)
        r1 = _target_coefficient(n - 1, phi, h) / an
        r2 = _target_coefficient(n - 2, phi, h) / an

        def res(t: mpf) -> mpf:
            return r1 ** t + r2 ** t - 1

        lo, hi = mpf(1), mpf(2)
        if res(lo) <= 0:
            raise DivergenceError(f"no root s_{n} >= 1")
        while res(hi) > 0:
            hi *= 2
            if hi > _BRACKET_CAP:
                raise DivergenceError(f"no sign change below {_BRACKET_CAP}")
        lo, hi = _bisect(res, lo, hi, tol, prec)
        return Breakpoint(n, (lo + hi) / 2, lo, hi, S_POINT)


def weak_compatible(pair: PrimePair, N: int, fib: FibTable | None = None) -> bool:
    """Exact verdict of the two-sided ratio chain at level N: log q / log p
    lies strictly between h_N/h_{N-1} and h_{N-1}/h_{N-2} (either order)."""
    if N < 3:
        raise ValueError("defined for N >= 3")
    h = fib or fib_table(N, N)
    s1 = cmp_power(pair.p, h[N], pair.q, h[N - 1])
    s2 = cmp_power(pair.p, h[N - 1], pair.q, h[N - 2])
    return s1 * s2 == -1


@dataclass(frozen=True)
class CompatibilityReport:
    pair: PrimePair
    N: int
    weak_ok: bool
    breakpoints: tuple[Breakpoint, ...]  # indices 3..N+1 when solved
    strictly_decreasing: bool
    verdict: bool


def _certified_less(a: Breakpoint, b: Breakpoint) -> bool | None:
    """True if a < b certified, False if a >= b certified, None if unknown."""
    if a.hi < b.lo:
        return True
    if a.exact and b.exact:
        return a.value < b.value
    if a.lo >= b.hi:
        return False
    return None


def _ordered_chain(points: list[Breakpoint], coeffs: CoefficientVector,
                   tol: float) -> bool:
    """Certify t_{n+1} < t_n along the list (descending index order).

    On bracket overlap both points are re-solved at 4x tighter tolerance
    before giving up with PrecisionError.
    """
    pts = {bp.index: bp for bp in points}
    idxs = sorted(pts)
    # pairwise walk; the highest index holds the smallest breakpoint
    for k in range(len(idxs) - 1, 0, -1):
        small, large = pts[idxs[k]], pts[idxs[k - 1]]
        verdict = _certified_less(small, large)
        if verdict is None:
            small = solve_tn(coeffs, small.index, tol / 4)
            large = solve_tn(coeffs, large.index, tol / 4)
            pts[small.index], pts[large.index] = small, large
            verdict = _certified_less(small, large)
        if verdict is None:
            raise PrecisionError(
                f"cannot order t_{small.index} and t_{large.index} at "
                f"tolerance {tol}; increase precision")
        if not verdict:
            return False
    return True


def compatible(pair: PrimePair, N: int, tol: float = DEFAULT_TOL,
               fib: FibTable | None = None) -> CompatibilityReport:
    """Full compatibility at level N: the weak ratio chain plus the strict
    ordering t_{N+1} < t_N < ... < t_3 with certified gaps."""
    if N < 3:
        raise ValueError("defined for N >= 3")
    h = fib or fib_table(N, N)
    weak = weak_compatible(pair, N, h)
    if not weak:
        return CompatibilityReport(pair, N, False, (), False, False)
    coeffs = coefficient_vector(pair, N, h)
    try:
        points = [solve_tn(coeffs, n, tol) for n in range(3, N + 2)]
    except DivergenceError:
        return CompatibilityReport(pair, N, weak, (), False, False)
    decreasing = _ordered_chain(points, coeffs, tol)
    return CompatibilityReport(pair, N, weak, tuple(points), decreasing,
                               weak and decreasing)


def max_compatible_N(pair: PrimePair, cap: int, tol: float = DEFAULT_TOL,
                     fib: FibTable | None = None) -> int:
    """Largest N <= cap whose breakpoint chain t_{N+1} < ... < t_3 stays
    strictly ordered, or 0 if none.

    The chain is the binding criterion here: it is monotone in N (a strict
    chain at N contains the chain at every smaller N), so a single solve up
    to the cap settles every level.
    """
    if cap < 3:
        raise ValueError("cap must be >= 3")
    h = fib or fib_table(cap + 1, cap + 1)
    coeffs = coefficient_vector(pair, cap + 1, h)
    points: list[Breakpoint] = []
    best = 0
    for n in range(3, cap + 2):
        try:
            points.append(solve_tn(coeffs, n, tol))
        except DivergenceError:
            break
        if n >= 4 and not _ordered_chain(points, coeffs, tol):
            break
        if n >= 4:
            best = n - 1
    return best


def find_compatible_pairs(N: int, p_min: int, p_max: int,
                          max_results: int = 10, tol: float = DEFAULT_TOL,
                          prec: int = DEFAULT_PREC,
                          window: int = 8) -> list[tuple[PrimePair, mpf]]:
    """Search primes p in [p_min, p_max]; for each, test the nearest primes
    on both sides of round(p^phi) as q candidates (the golden-ratio target
    makes log q / log p land near phi).  Returns up to max_results pairs
    with their ratio offsets |log q/log p - phi|, sorted by offset.
    """
    if not 2 <= p_min <= p_max < 1 << 40:
        raise ValueError("prime range must satisfy 2 <= p_min <= p_max < 2^40")
    phi = golden_ratio(prec)
    found: list[tuple[PrimePair, mpf]] = []
    p = p_min - 1
    while True:
        p = next_prime(p)
        if p > p_max:
            break
        with workprec(prec):
            center = int(mpmath.nint(mpf(p) ** phi))
        candidates: list[int] = []
        up, down = center, center  # center itself is a candidate if prime
        for _ in range(window):
            nxt = next_prime(down - 1)
            candidates.append(nxt)
            down = nxt + 1
        for _ in range(window):
            prv = prev_prime(up)
            if prv is None or prv == p:
                break
            candidates.append(prv)
            up = prv
        for q in candidates:
            if q == p:
                continue
            pair = PrimePair(p, q, prec)
            try:
                report = compatible(pair, N, tol)
            except (DivergenceError, PrecisionError):
                continue
            if report.verdict:
                with workprec(prec):
                    found.append((pair, abs(pair.ratio - phi)))
    found.sort(key=lambda item: item[1])
    return found[:max_results]
