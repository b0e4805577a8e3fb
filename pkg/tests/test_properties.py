"""Randomized property suites (1000 cases each)."""

import functools

from hypothesis import given, settings, strategies as st
from mpmath import mpf, workprec

from fibmahler.arith import fib_table
from fibmahler.lattice import iter_V, x_vector
from fibmahler.measures import (PrimePair, coefficient_vector,
                                eval_measure_fn, eval_measure_pow)
from fibmahler.solver import solve_sn, solve_tn

N = 13
CASES = settings(max_examples=1000, deadline=None)

_FIB = fib_table(N, N)
_PAIR = PrimePair(1879, 198301)
_COEFFS = coefficient_vector(_PAIR, N, _FIB)


@functools.lru_cache(maxsize=None)
def breakpoint_value(i):
    return solve_tn(_COEFFS, i).value


@functools.lru_cache(maxsize=None)
def s_value(n):
    return solve_sn(n).value


@functools.lru_cache(maxsize=None)
def two_slot_members():
    """All members of V_n (n <= 10) supported on two adjacent slots."""
    out = []
    for n in range(1, 11):
        for z in iter_V(n, N, _FIB):
            support = [j for j, x in enumerate(z) if x]
            if len(support) <= 2 and support[-1] - support[0] <= 1:
                out.append((n, z, support[-1] + 1))  # 1-based top slot j
    return out


nonzero_vectors = st.lists(st.integers(min_value=0, max_value=9),
                           min_size=N, max_size=N).filter(any)
t_values = st.floats(min_value=0.05, max_value=60,
                     allow_nan=False, allow_infinity=False)


@CASES
@given(x=nonzero_vectors, t1=t_values, t2=t_values)
def test_measure_fn_monotone_in_t(x, t1, t2):
    if t1 > t2:
        t1, t2 = t2, t1
    with workprec(128):
        lo, hi = eval_measure_fn(x, _COEFFS, t2), eval_measure_fn(x, _COEFFS, t1)
        assert hi >= lo * (1 - mpf(2) ** -80)
        if sum(x) >= 2 and t2 - t1 > 1e-3:
            assert hi > lo  # strictly decreasing off single-term supports


@CASES
@given(x=nonzero_vectors, y=nonzero_vectors, t=t_values)
def test_measure_pow_linear_in_x(x, y, t):
    with workprec(128):
        px = eval_measure_pow(x, _COEFFS, t)
        py = eval_measure_pow(y, _COEFFS, t)
        s = tuple(a + b for a, b in zip(x, y))
        assert abs(eval_measure_pow(s, _COEFFS, t) - (px + py)) \
            <= (px + py) * mpf(2) ** -90
        d = tuple(3 * a for a in x)
        assert abs(eval_measure_pow(d, _COEFFS, t) - 3 * px) \
            <= 3 * px * mpf(2) ** -90


@CASES
@given(data=st.data())
def test_generator_recurrences_exact(data):
    n = data.draw(st.integers(min_value=4, max_value=13))
    i = data.draw(st.integers(min_value=3, max_value=n))
    if i <= n - 1:
        lhs = x_vector(n, i, N, _FIB)
        rhs = tuple(a + b for a, b in zip(x_vector(n - 1, i, N, _FIB),
                                          x_vector(n - 2, i, N, _FIB)))
    else:
        lhs = x_vector(n, n, N, _FIB)
        rhs = tuple(a + b for a, b in zip(x_vector(n - 1, n, N, _FIB),
                                          x_vector(n - 2, n - 1, N, _FIB)))
    assert lhs == rhs


@CASES
@given(data=st.data())
def test_adjacent_generators_meet_at_breakpoints(data):
    n = data.draw(st.integers(min_value=3, max_value=13))
    i = data.draw(st.integers(min_value=3, max_value=n))
    ti = breakpoint_value(i)
    with workprec(128):
        a = eval_measure_fn(x_vector(n, i, N, _FIB), _COEFFS, ti)
        b = eval_measure_fn(x_vector(n, i + 1, N, _FIB), _COEFFS, ti)
        assert abs(a - b) <= a * mpf("1e-9")


@CASES
@given(n=st.integers(min_value=3, max_value=25))
def test_target_breakpoints_strictly_decreasing(n):
    assert s_value(n) - s_value(n + 1) > 1e-11


@CASES
@given(data=st.data())
def test_two_slot_members_are_generators(data):
    n, z, j = data.draw(st.sampled_from(two_slot_members()))
    assert z == x_vector(n, j + 1, N, _FIB)
