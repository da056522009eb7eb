from fractions import Fraction

import pytest

from latvol.errors import BudgetExceededError, InvariantError, PreconditionError
from latvol.padic import (
    LocalFactor,
    gl_count_modp,
    gl_density,
    index_local_factors,
    is_prime,
    local_tamagawa_check,
    local_zeta,
    primes_up_to,
    singular_density,
    sl_count_modp,
    sl_density,
    tamagawa_factors_table,
    tamagawa_partial,
)


def test_prime_utilities():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(primes_up_to(100)) == 25
    with pytest.raises(BudgetExceededError):
        primes_up_to(10**7)


def test_local_factor_validation():
    LocalFactor(2, 2, Fraction(3, 8))
    with pytest.raises(PreconditionError):
        LocalFactor(4, 2, Fraction(1))
    with pytest.raises(PreconditionError):
        LocalFactor(2, 0, Fraction(1))


def test_gl_density_formula():
    assert gl_density(2, 2) == Fraction(3, 8)
    assert gl_density(2, 3) == Fraction(16, 27)
    assert gl_density(1, 5) == Fraction(4, 5)
    # prod over j of (1 - p^-j), written out for k = 3
    assert gl_density(3, 2) == Fraction(1, 2) * Fraction(3, 4) * Fraction(7, 8)


def test_gl_count_formula_vs_enumeration():
    for p in (2, 3):
        f = gl_count_modp(2, p, method="formula")
        e = gl_count_modp(2, p, method="enumeration")
        assert f == e
        assert Fraction(f, p**4) == gl_density(2, p)
    assert gl_count_modp(2, 2) == 6
    assert gl_count_modp(2, 3) == 48


def test_sl_count_formula_vs_enumeration():
    for p in (2, 3):
        assert sl_count_modp(2, p, method="formula") == sl_count_modp(
            2, p, method="enumeration"
        )
    assert sl_count_modp(3, 2, method="formula") == 168
    assert sl_count_modp(3, 2, method="enumeration") == 168


def test_enumeration_budget():
    with pytest.raises(BudgetExceededError):
        gl_count_modp(3, 7, method="enumeration")  # 7^9 states


def test_sl_density_formula():
    assert sl_density(2, 2) == Fraction(3, 4)
    assert sl_density(3, 2) == Fraction(21, 32)
    assert sl_density(2, 5) == Fraction(24, 25)


def test_local_zeta_values():
    assert local_zeta(2, 2, 2) == Fraction(8, 3)
    # k = 1: single factor (1 - p^-s)^-1
    assert local_zeta(1, 3, 2) == Fraction(9, 8)
    with pytest.raises(PreconditionError):
        local_zeta(2, 2, 1)  # pole at s = k - 1
    with pytest.raises(PreconditionError):
        local_zeta(2, 2, True)


def test_local_tamagawa_identity_spot():
    for k, p in ((2, 2), (2, 3), (3, 2), (4, 5), (5, 97), (6, 13)):
        assert local_tamagawa_check(k, p) == 1


def test_singular_density_values():
    assert singular_density(2, 2, 1) == Fraction(5, 8)
    assert singular_density(2, 2, 2) == Fraction(11, 32)
    assert singular_density(2, 3, 1) == Fraction(11, 27)
    for n in (1, 2):
        assert singular_density(2, 2, n) <= 2 * Fraction(1, 2**n)
    with pytest.raises(BudgetExceededError):
        singular_density(2, 5, 4)


def test_index_local_factors():
    assert index_local_factors([[49, 18], [0, 1]]) == {7: 49}
    assert index_local_factors([[2, 0], [0, 6]]) == {2: 4, 3: 3}
    assert index_local_factors([[1, 0], [0, 1]]) == {}
    with pytest.raises(PreconditionError):
        index_local_factors([[1, 2], [2, 4]])
    with pytest.raises(BudgetExceededError):
        index_local_factors(10**13)


def test_tamagawa_partial_matches_direct_product():
    from latvol.dirichlet import riemann_zeta

    want = riemann_zeta(2.0)
    for p in (2, 3, 5, 7):
        want *= float(sl_density(2, p))
    got = tamagawa_partial(2, 10)
    assert abs(got - want) < 1e-13
    with pytest.raises(PreconditionError):
        tamagawa_partial(1, 10)
    with pytest.raises(PreconditionError):
        tamagawa_partial(2, 1)


def test_tamagawa_factors_table():
    t = tamagawa_factors_table(2, 10)
    assert t.schema == "tamagawa"
    assert [row[0] for row in t.rows] == [2, 3, 5, 7]
    assert t.rows[0][1] == Fraction(3, 4)
    assert abs(t.rows[-1][2] - tamagawa_partial(2, 10)) < 1e-13
