import math
from fractions import Fraction

import mpmath
import pytest

import helpers as H
from latvol.dirichlet import (
    DirichletSeries,
    abelian_limit,
    convolve,
    dirichlet_psi,
    product_error_scan,
    product_error_table,
    riemann_zeta,
    sigma_summatory,
    subgroup_zeta,
    summatory,
    volume_constant,
)
from latvol.errors import PreconditionError

mpmath.mp.dps = 40


def test_series_construction_and_validation():
    f = DirichletSeries.ones(10)
    assert list(f.coefficients) == [Fraction(1)] * 10
    g = DirichletSeries.shifted(5)
    assert list(g.coefficients) == [1, 2, 3, 4, 5]
    assert g.weights is None
    d = DirichletSeries.delta(4)
    assert list(d.coefficients) == [Fraction(1), Fraction(0), Fraction(0), Fraction(0)]
    with pytest.raises(PreconditionError):
        DirichletSeries([1, -1])
    with pytest.raises(PreconditionError):
        DirichletSeries([1, 1], weights=[2, 1])
    with pytest.raises(PreconditionError):
        DirichletSeries([1], weights=[Fraction(1, 2)])


def test_from_csv(tmp_path):
    p = tmp_path / "series.csv"
    p.write_text("n,a\n1,1\n2,3/2\n3,0\n")
    f = DirichletSeries.from_csv(p)
    assert list(f.coefficients) == [Fraction(1), Fraction(3, 2), Fraction(0)]
    p.write_text("n,a\n1,1\n3,1\n")
    with pytest.raises(PreconditionError):
        DirichletSeries.from_csv(p)


def test_convolution_gives_divisor_sigma():
    N = 200
    f = convolve(DirichletSeries.ones(N), DirichletSeries.shifted(N), N)
    sig = H.sigma_table(N)
    assert [int(c) for c in f.coefficients] == sig[1:]


def test_summatory_exact():
    N = 300
    f = convolve(DirichletSeries.ones(N), DirichletSeries.shifted(N), N)
    sig = H.sigma_table(N)
    assert summatory(f, 300) == sum(sig[1:])
    assert summatory(f, 10) == 87
    assert sigma_summatory(10) == 87
    for t in (1, 2, 17, 100, 299):
        assert sigma_summatory(t) == sum(sig[1 : t + 1])


def test_dirichlet_psi_matches_direct_sum():
    f = DirichletSeries.ones(2000)
    got = dirichlet_psi(f, 2.0)
    want = math.fsum(1 / n**2 for n in range(1, 2001))
    assert abs(got - want) < 1e-14


def test_riemann_zeta_against_mpmath():
    for s in (1.001, 1.1, 1.5, 2.0, 3.0, 4.0, 7.5, 12.0, 16.0, 30.0, 50.0):
        want = float(mpmath.zeta(s))
        assert abs(riemann_zeta(s) - want) < 1e-12, s
    assert riemann_zeta(2.0) == pytest.approx(math.pi**2 / 6, abs=1e-14)
    with pytest.raises(PreconditionError):
        riemann_zeta(1.0)
    with pytest.raises(PreconditionError):
        riemann_zeta(0.5)


def test_subgroup_zeta_values():
    want = float(mpmath.zeta(3) * mpmath.zeta(2))
    assert abs(subgroup_zeta(2, 3.0) - want) < 1e-12
    want = float(mpmath.zeta(4) * mpmath.zeta(3) * mpmath.zeta(2))
    assert abs(subgroup_zeta(3, 4.0) - want) < 1e-12
    with pytest.raises(PreconditionError):
        subgroup_zeta(2, 2.0)  # pole


def test_volume_constant_values():
    assert volume_constant(1) == 1.0
    assert abs(volume_constant(2) - float(mpmath.zeta(2)) / 2) < 1e-12
    assert abs(volume_constant(3) - float(mpmath.zeta(2) * mpmath.zeta(3)) / 3) < 1e-12


def test_product_error_table_pinned():
    t = product_error_table([1, 10])
    assert t.rows[0][1] == pytest.approx(0.1775329665758868, abs=1e-12)
    assert t.rows[1][1] == pytest.approx(4.7532966575886775, abs=1e-12)
    assert t.rows[1][2] == pytest.approx(0.14392654613720945, abs=1e-12)


def test_product_error_scan_matches_table():
    sup, arg = product_error_scan(1000)
    assert arg == 2
    assert sup == pytest.approx(0.20970765992968712, abs=1e-12)
    # scan agrees with per-T table values
    t = product_error_table([2])
    assert sup == pytest.approx(t.rows[0][2], abs=1e-12)


def test_abelian_limit_table():
    t = abelian_limit(2, [3.0, 2.5, 2.1])
    assert t.params == {"k": 2}
    zeta2 = math.pi**2 / 6
    scaled = [row[1] for row in t.rows]
    assert abs(scaled[-1] - zeta2) < abs(scaled[0] - zeta2)
    with pytest.raises(PreconditionError):
        abelian_limit(2, [2.5, 2.5])
    with pytest.raises(PreconditionError):
        abelian_limit(2, [1.5])
