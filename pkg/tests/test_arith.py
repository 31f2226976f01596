import math
import random

import pytest

from svperiods.arith import (
    NonInvertibleError,
    divisor_count,
    divisor_sigma,
    euler_phi,
    kloosterman,
    mod_inverse,
)


def test_mod_inverse_examples():
    # brute-force scan oracle for (3, 7)
    assert [y for y in range(7) if (3 * y) % 7 == 1] == [5]
    assert mod_inverse(3, 7) == 5
    assert mod_inverse(1, 1) == 0
    with pytest.raises(NonInvertibleError):
        mod_inverse(2, 4)


def test_mod_inverse_error_type_is_not_overflow():
    assert not issubclass(NonInvertibleError, OverflowError)
    with pytest.raises(OverflowError):
        kloosterman(1, 1, 2**31)


def test_mod_inverse_random():
    rng = random.Random(1)
    for _ in range(300):
        c = rng.randint(1, 10**6)
        x = rng.randint(-10**6, 10**6)
        if c > 1 and math.gcd(x, c) != 1:
            with pytest.raises(NonInvertibleError):
                mod_inverse(x, c)
        else:
            y = mod_inverse(x, c)
            assert 0 <= y < c
            assert c == 1 or (x * y) % c == 1


def test_divisor_sigma_examples():
    assert divisor_sigma(1, 6) == 12
    assert divisor_sigma(3, 2) == 9
    assert divisor_sigma(1, 1) == 1
    # brute force cross-check
    for n in range(1, 60):
        for k in (0, 1, 2, 3):
            assert divisor_sigma(k, n) == sum(d**k for d in range(1, n + 1) if n % d == 0)


def test_kloosterman_trivial_values():
    assert kloosterman(1, 1, 1) == 1.0
    assert abs(kloosterman(0, 0, 12) - 4.0) < 1e-12  # phi(12) summands of 1
    # two-term direct sum at c = 3: 2 cos(2 pi / 3 * 2) = -1
    assert abs(kloosterman(1, 1, 3) - 2 * math.cos(4 * math.pi / 3)) < 1e-12
    assert abs(kloosterman(1, 1, 3) + 1.0) < 1e-12


def _sample_triples(count, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        out.append((rng.randint(-50, 50), rng.randint(-50, 50), rng.randint(1, 200)))
    return out


@pytest.mark.parametrize("a,b,c", _sample_triples(120, 42))
def test_kloosterman_symmetry_periodicity_negation(a, b, c):
    v = kloosterman(a, b, c)
    assert abs(v - kloosterman(b, a, c)) < 1e-9
    assert abs(v - kloosterman(a + c, b, c)) < 1e-9
    assert abs(v - kloosterman(-a, -b, c)) < 1e-9


@pytest.mark.parametrize("a,b,c", _sample_triples(60, 7))
def test_kloosterman_weil_type_bound(a, b, c):
    bound = divisor_count(c) * math.sqrt(math.gcd(math.gcd(abs(a), abs(b)), c)) * math.sqrt(c)
    assert abs(kloosterman(a, b, c)) <= bound + 1e-6


def test_euler_phi():
    for n in range(1, 80):
        assert euler_phi(n) == sum(1 for x in range(1, n + 1) if math.gcd(x, n) == 1)
