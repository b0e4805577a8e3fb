"""Piecewise minimum envelope over the generator family and certification
that every restricted vector's measure function stays above it.

The envelope over S_n tiles (0, inf) as

    (0, t_n]          -> generator n+1 (the constant c_n)
    [t_i, t_{i-1}]    -> generator i,  for 4 <= i <= n
    [t_3, inf)        -> generator 3

A certificate for a vector z closes the head and tail analytically:

  head: f_z(t) >= (sum z)^{1/t} * min{c_i : z_i > 0}, and the envelope is
        the constant c_n on (0, t_n], so any t below
        eps = log(sum z) / log(c_n / min_c) is covered;
  tail: f_z(t) >= max{c_i : z_i > 0} for every t, and the tail segment is
        non-increasing, so any t past the point T where the generator-3
        function drops to that max is covered.

The open interval in between is checked on a log-spaced grid with adaptive
refinement where margins get small.  Grid screening runs in double
precision on log-values; any point within the screening threshold is
re-examined with mpmath before a verdict is declared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import mpmath
from mpmath import mpf, workprec

from .arith import FibTable, fib_table
from .lattice import Vector, build_S, pad, trim, x_vector
from .measures import (CoefficientVector, PrimePair, coefficient_vector,
                       eval_measure_fn)
from .solver import DEFAULT_TOL, Breakpoint, solve_tn

CERTIFIED, VIOLATED, INCONCLUSIVE = "Certified", "Violated", "Inconclusive"

DEFAULT_GRID = 4096
REFINE_DEPTH = 24
MARGIN_SCREEN = 1e-6
_TAIL_FALLBACK = 512.0


@dataclass(frozen=True)
class Envelope:
    n: int
    pair: PrimePair
    coeffs: CoefficientVector
    breakpoints: tuple[Breakpoint, ...]  # t_n, t_{n-1}, ..., t_3 (ascending values)

    def breakpoint(self, i: int) -> Breakpoint:
        for bp in self.breakpoints:
            if bp.index == i:
                return bp
        raise KeyError(f"no breakpoint t_{i} on this envelope")

    def segment_generator(self, t) -> int:
        """Index i of the generator x_n(i) attaining the minimum at t."""
        if t <= 0:
            raise ValueError("t must be positive")
        for bp in self.breakpoints:  # descending index, ascending value
            if t <= bp.value:
                return bp.index + 1
        return 3

    def generator_vector(self, i: int, fib: FibTable | None = None) -> Vector:
        return x_vector(self.n, i, self.coeffs.N, fib)

    def value(self, t, fib: FibTable | None = None) -> mpf:
        i = self.segment_generator(t)
        return eval_measure_fn(self.generator_vector(i, fib), self.coeffs, t)

    def min_over_generators(self, t, fib: FibTable | None = None
                            ) -> tuple[mpf, list[int]]:
        """Brute-force minimum over all generators with the attaining index
        set; the oracle the segment tiling must agree with."""
        h = fib or fib_table(self.n, self.coeffs.N)
        best, arg = None, []
        for i in range(3, self.n + 2):
            v = eval_measure_fn(x_vector(self.n, i, self.coeffs.N, h),
                                self.coeffs, t)
            if best is None or v < best:
                best, arg = v, [i]
            elif v == best:
                arg.append(i)
        return best, arg


def build_envelope(n: int, pair: PrimePair,
                   coeffs: CoefficientVector | None = None,
                   tol: float = DEFAULT_TOL,
                   fib: FibTable | None = None) -> Envelope:
    if n < 3:
        raise ValueError("the envelope needs n >= 3")
    cf = coeffs or coefficient_vector(pair, max(n, 13))
    if n > cf.N:
        raise ValueError(f"coefficient vector covers only N = {cf.N}")
    points = tuple(solve_tn(cf, i, tol) for i in range(n, 2, -1))
    for a, b in zip(points, points[1:]):
        if not a.value <= b.value:
            raise ValueError(
                f"breakpoints out of order at t_{a.index}, t_{b.index}: "
                "pair is not compatible at this level")
    return Envelope(n, pair, cf, points)


@dataclass(frozen=True)
class VerificationCertificate:
    target: Vector
    n: int
    status: str
    head_cutoff: float
    tail_cutoff: float
    grid_size: int
    min_margin: float  # minimum relative margin (f_z - envelope)/envelope seen
    witness: float | None = None  # t where a violation (or near-tie) sits


class _LogGridScreen:
    """Double-precision evaluation of log f_x(t) for the screening pass."""

    def __init__(self, env: Envelope, fib: FibTable):
        self.env = env
        self.fib = fib
        self.logc = env.coeffs.float_logs(env.n + 1)
        self.gen_support = {
            i: _support(env.generator_vector(i, fib))
            for i in range(3, env.n + 2)
        }
        self.bps = [(bp.index, float(bp.value)) for bp in env.breakpoints]

    def log_f(self, support: list[tuple[int, float]], t: float) -> float:
        terms = [t * self.logc[j] + lx for j, lx in support]
        m = max(terms)
        return (m + math.log(math.fsum(math.exp(v - m) for v in terms))) / t

    def envelope_log(self, t: float) -> float:
        for idx, val in self.bps:
            if t <= val:
                return self.log_f(self.gen_support[idx + 1], t)
        return self.log_f(self.gen_support[3], t)


def _support(z: Sequence[int]) -> list[tuple[int, float]]:
    return [(j, math.log(x)) for j, x in enumerate(z) if x]


def _head_cutoff(z: Vector, env: Envelope) -> float:
    """eps with f_z >= c_n guaranteed on (0, eps]."""
    total = sum(z)
    if total < 2:
        raise ValueError("head bound needs at least two parts")
    vals = [float(env.coeffs.value(j + 1)) for j, x in enumerate(z) if x]
    min_c = min(vals)
    cn = float(env.coeffs.value(env.n))
    if cn <= min_c:
        # z's cheapest coefficient already beats the constant segment;
        # the head is vacuous, start the grid just below t_n
        return float(env.breakpoints[0].value) / 2
    return math.log(total) / math.log(cn / min_c)


def _tail_cutoff(z: Vector, env: Envelope, fib: FibTable) -> float | None:
    """T with f_z >= envelope guaranteed on [T, inf), or None if the
    generator-3 curve never drops below max{c_i : z_i > 0}."""
    max_c = max(float(env.coeffs.value(j + 1)) for j, x in enumerate(z) if x)
    screen = _LogGridScreen(env, fib)
    g3 = screen.gen_support[3]
    target = math.log(max_c)
    lo, hi = 1.0, 2.0
    if screen.log_f(g3, lo) <= target:
        return lo
    while screen.log_f(g3, hi) > target:
        hi *= 2
        if hi > 1 << 20:
            return None
    for _ in range(80):
        mid = (lo + hi) / 2
        if screen.log_f(g3, mid) > target:
            lo = mid
        else:
            hi = mid
    return hi


def _mp_margin(z: Vector, env: Envelope, t: float, fib: FibTable) -> mpf:
    """(f_z - envelope) / envelope at full working precision."""
    with workprec(env.pair.prec * 2):
        tt = mpf(t)
        fz = eval_measure_fn(z, env.coeffs, tt)
        ev = env.value(tt, fib)
        return (fz - ev) / ev


def verify_mintest(z: Sequence[int], n: int, pair: PrimePair,
                   envelope: Envelope | None = None,
                   grid_size: int = DEFAULT_GRID,
                   tol: float = DEFAULT_TOL,
                   fib: FibTable | None = None) -> VerificationCertificate:
    """Certificate that f_z(t) >= min over the generator family for all t > 0.

    Members of the generator family itself certify immediately with zero
    margin (they are segments of the envelope).
    """
    env = envelope or build_envelope(n, pair, tol=tol)
    h = fib or fib_table(n, env.coeffs.N)
    z = pad(z, env.coeffs.N)
    if z in set(build_S(n, env.coeffs.N, h).members):
        return VerificationCertificate(z, n, CERTIFIED, 0.0, 0.0, 0, 0.0)

    eps = _head_cutoff(z, env)
    tail = _tail_cutoff(z, env, h)
    inconclusive_tail = tail is None
    T = tail if tail is not None else _TAIL_FALLBACK
    if eps >= T:
        # analytic bounds already cover everything
        return VerificationCertificate(z, n, CERTIFIED, eps, T, 0, math.inf)

    screen = _LogGridScreen(env, h)
    zsup = _support(z)
    log_eps, log_T = math.log(eps), math.log(T)
    step = (log_T - log_eps) / (grid_size - 1)
    suspicious: list[float] = []
    min_margin = math.inf
    for k in range(grid_size):
        t = math.exp(log_eps + k * step)
        margin = screen.log_f(zsup, t) - screen.envelope_log(t)
        # log-domain margin approximates the relative margin for small values
        if margin < min_margin:
            min_margin = margin
        if margin < MARGIN_SCREEN:
            suspicious.append(t)
            # refine around the suspicious point before judging it
            for d in range(1, REFINE_DEPTH):
                for sgn in (-1, 1):
                    tt = math.exp(log_eps + (k + sgn / (1 << d)) * step)
                    if eps <= tt <= T:
                        suspicious.append(tt)

    witness = None
    for t in suspicious:
        m = _mp_margin(z, env, t, h)
        fm = float(m)
        if fm < min_margin:
            min_margin = fm
        if m < 0:
            return VerificationCertificate(z, n, VIOLATED, eps, T, grid_size,
                                           fm, witness=t)
        if m == 0 or abs(fm) < tol:
            witness = t
    if witness is not None or inconclusive_tail:
        return VerificationCertificate(z, n, INCONCLUSIVE, eps, T, grid_size,
                                       min_margin, witness=witness)
    return VerificationCertificate(z, n, CERTIFIED, eps, T, grid_size,
                                   min_margin)


@dataclass(frozen=True)
class VerificationSummary:
    n: int
    status: str
    certificates: tuple[VerificationCertificate, ...]

    @property
    def offenders(self) -> list[Vector]:
        return [c.target for c in self.certificates if c.status != CERTIFIED]


def verify_conjecture(n: int, pair: PrimePair,
                      restricted_extras: Sequence[Vector],
                      envelope: Envelope | None = None,
                      grid_size: int = DEFAULT_GRID,
                      tol: float = DEFAULT_TOL,
                      fib: FibTable | None = None) -> VerificationSummary:
    """Check every vector of R_n outside the generator family.

    ``restricted_extras`` is R_n minus the generators (possibly empty, in
    which case the result is certified vacuously).  Levels n < 3 have no
    envelope and are always vacuous.
    """
    extras = sorted(tuple(v) for v in restricted_extras)
    if n < 3 or not extras:
        return VerificationSummary(n, CERTIFIED, ())
    env = envelope or build_envelope(n, pair, tol=tol)
    certs = tuple(verify_mintest(z, n, pair, env, grid_size, tol, fib)
                  for z in extras)
    if any(c.status == VIOLATED for c in certs):
        status = VIOLATED
    elif any(c.status == INCONCLUSIVE for c in certs):
        status = INCONCLUSIVE
    else:
        status = CERTIFIED
    return VerificationSummary(n, status, certs)


@dataclass(frozen=True)
class ExceptionalReport:
    n: int
    pair: PrimePair
    points: tuple[Breakpoint, ...]
    count: int


def exceptional_points(n: int, pair: PrimePair,
                       verified: Sequence[VerificationSummary],
                       tol: float = DEFAULT_TOL,
                       coeffs: CoefficientVector | None = None
                       ) -> ExceptionalReport:
    """The switch points t_3..t_n of the certified envelope (n-2 of them).

    Requires certified summaries for every level up to n; the count claim
    rests on the verified minimum, not on the envelope alone.
    """
    got = {s.n: s.status for s in verified}
    for i in range(1, n + 1):
        if got.get(i) != CERTIFIED:
            raise ValueError(
                f"level {i} is not certified; run verification through n={n} first")
    if n < 3:
        return ExceptionalReport(n, pair, (), 0)
    cf = coeffs or coefficient_vector(pair, max(n, 13))
    pts = tuple(solve_tn(cf, i, tol) for i in range(3, n + 1))
    return ExceptionalReport(n, pair, pts, n - 2)


def emit_plot_data(n: int, pair: PrimePair,
                   restricted_extras: Sequence[Vector],
                   t_min: float, t_max: float, samples: int,
                   envelope: Envelope | None = None,
                   tol: float = DEFAULT_TOL,
                   fib: FibTable | None = None
                   ) -> tuple[list[str], list[list]]:
    """Rows of t, one f-column per generator, one per extra restricted
    vector, the envelope value, and a breakpoint marker.

    The marker column holds the index i when t_i falls between the previous
    sample and this one, else 0.
    """
    if not 0 < t_min < t_max:
        raise ValueError("need 0 < t_min < t_max")
    if samples < 2:
        raise ValueError("need at least 2 samples")
    env = envelope or build_envelope(n, pair, tol=tol)
    h = fib or fib_table(n, env.coeffs.N)
    extras = [pad(v, env.coeffs.N) for v in sorted(tuple(v) for v in restricted_extras)]
    header = (["t"]
              + [f"gen{i}" for i in range(3, n + 2)]
              + ["z" + "_".join(str(c) for c in trim(v)) for v in extras]
              + ["envelope", "breakpoint"])
    bps = sorted((float(bp.value), bp.index) for bp in env.breakpoints)
    rows: list[list] = []
    prev_t = None
    for k in range(samples):
        t = t_min + (t_max - t_min) * k / (samples - 1)
        tt = mpf(t)
        row: list = [tt]
        vals = [eval_measure_fn(x_vector(n, i, env.coeffs.N, h), env.coeffs, tt)
                for i in range(3, n + 2)]
        row.extend(vals)
        row.extend(eval_measure_fn(v, env.coeffs, tt) for v in extras)
        row.append(min(vals))
        marker = 0
        if prev_t is not None:
            for val, idx in bps:
                if prev_t < val <= t:
                    marker = idx
        row.append(marker)
        rows.append(row)
        prev_t = t
    return header, rows
