import mpmath
import pytest

from fibmahler.arith import (EQUAL, GREATER, LESS, FibTable, cmp_power,
                             fib_table, golden_ratio, is_prime, next_prime,
                             prev_prime)


def naive_fib(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def trial_division(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class TestFibTable:
    def test_seeds(self):
        h = FibTable(5)
        assert h[0] == 0 and h[1] == 1

    def test_known_values(self):
        h = fib_table(13, 13)
        assert h[13] == 233
        assert h[12] == 144

    def test_against_naive_loop(self):
        h = FibTable(30)
        assert h[30] == naive_fib(30) == 832040

    def test_recurrence_exact(self):
        h = FibTable(40)
        for i in range(2, 41):
            assert h[i] == h[i - 1] + h[i - 2]

    def test_out_of_range(self):
        h = FibTable(5)
        with pytest.raises(IndexError):
            h[6]
        with pytest.raises(IndexError):
            h[-1]

    def test_covers_two_past_N(self):
        # compatibility at level N reads index N+1
        h = fib_table(3, 13)
        assert h[15] == h[14] + h[13]


class TestCmpPower:
    def test_small(self):
        assert cmp_power(2, 3, 3, 2) == LESS  # 8 < 9

    def test_identity(self):
        assert cmp_power(7, 5, 7, 5) == EQUAL

    def test_big_exponents_match_exact_powers(self):
        p, a, q, b = 1879, 233, 198301, 144
        expected = (p ** a > q ** b) - (p ** a < q ** b)
        assert cmp_power(p, a, q, b) == expected

    def test_zero_exponents(self):
        assert cmp_power(2, 0, 3, 0) == EQUAL
        assert cmp_power(2, 0, 3, 1) == LESS
        assert cmp_power(2, 1, 3, 0) == GREATER

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            cmp_power(1, 2, 3, 4)
        with pytest.raises(ValueError):
            cmp_power(2, -1, 3, 4)

    def test_random_sample_against_exact(self):
        import random
        rng = random.Random(20240817)
        for _ in range(400):
            p = rng.choice([2, 3, 5, 7, 11, 13, 1879, 198301])
            q = rng.choice([2, 3, 5, 7, 11, 13, 1879, 198301])
            a, b = rng.randint(0, 60), rng.randint(0, 60)
            expected = (p ** a > q ** b) - (p ** a < q ** b)
            assert cmp_power(p, a, q, b) == expected


class TestIsPrime:
    def test_worked_example_pair(self):
        assert is_prime(1879)
        assert is_prime(198301)

    def test_oracle_value(self):
        assert is_prime(198303) == trial_division(198303)

    def test_agrees_with_trial_division(self):
        for n in range(2, 2000):
            assert is_prime(n) == trial_division(n), n
        for n in range(10 ** 6 - 500, 10 ** 6 + 1):
            assert is_prime(n) == trial_division(n), n

    def test_strong_pseudoprimes(self):
        # Carmichael and 2-pseudoprime examples
        for n in (341, 561, 1105, 25326001, 3215031751):
            assert not is_prime(n)

    def test_domain(self):
        with pytest.raises(ValueError):
            is_prime(1)
        with pytest.raises(ValueError):
            is_prime(1 << 64)

    def test_neighbors(self):
        assert next_prime(1879) == 1889
        assert prev_prime(1879) == 1877
        assert next_prime(1) == 2
        assert prev_prime(2) is None


class TestGoldenRatio:
    def test_defining_polynomial(self):
        for prec in (96, 128, 256):
            phi = golden_ratio(prec)
            with mpmath.workprec(prec):
                assert abs(phi * phi - phi - 1) < mpmath.mpf(2) ** (4 - prec)

    def test_precisions_agree(self):
        lo = golden_ratio(96)
        hi = golden_ratio(128)
        with mpmath.workprec(128):
            assert abs(hi - lo) < mpmath.mpf(2) ** -94

    def test_against_builtin_constant(self):
        with mpmath.workprec(200):
            assert abs(golden_ratio(128) - mpmath.phi) < mpmath.mpf(2) ** -124

    def test_min_precision(self):
        with pytest.raises(ValueError):
            golden_ratio(64)
