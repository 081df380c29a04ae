import math
from fractions import Fraction

import mpmath
import pytest

from polyzeta.bridge import RelationRule
from polyzeta.ncalg import SymPoly, zY
from polyzeta.numeric import (
    NumericConfig,
    abel_spotcheck,
    euler_gamma,
    harmonic,
    mzv,
    mzv_extrapolated,
    polylog,
    tail_bound,
    validate_relations,
    x_to_index,
)
from polyzeta.words import compositions

ZETA2 = math.pi ** 2 / 6
BIG = NumericConfig(terms=1_000_000)


def test_config_validation():
    with pytest.raises(ValueError):
        NumericConfig(tol=0)
    with pytest.raises(ValueError):
        NumericConfig(terms=10)
    with pytest.raises(ValueError):
        NumericConfig(precision=8)


def test_zeta2():
    v, err = mzv((2,), BIG)
    assert abs(v - ZETA2) < 1e-5
    assert abs(v - ZETA2) <= err


def test_zeta21_vs_zeta3():
    a, _ = mzv((2, 1), BIG)
    b, _ = mzv((3,), BIG)
    assert abs(a - b) < 1e-4


def test_zeta2_gamma():
    z, _ = mzv((2,), BIG)
    g, _ = euler_gamma(BIG)
    assert abs(z * g - 0.94948171111498152454) < 1e-4
    assert abs(g - float(mpmath.euler)) < 1e-12


def test_divergent_index():
    with pytest.raises(ValueError):
        mzv((1, 2))
    with pytest.raises(ValueError):
        mzv(())


def test_polylog():
    want = math.pi ** 2 / 12 - math.log(2) ** 2 / 2
    assert abs(polylog((2,), 0.5) - want) < 1e-10
    assert abs(polylog((2,), 0.5) - 0.5822405265) < 1e-9
    assert abs(polylog((1,), 0.5) - math.log(2)) < 1e-9
    assert abs(polylog((2, 1), 0.3) - float(mpmath.nsum(
        lambda n: 0.3 ** n / n ** 2 * mpmath.harmonic(n - 1), [1, mpmath.inf]))) < 1e-12
    with pytest.raises(ValueError):
        polylog((2,), 1.0)


def test_harmonic_exact():
    assert harmonic((2,), 3) == Fraction(49, 36)
    assert harmonic((1, 1), 3) == Fraction(1, 2) * (1 + Fraction(1, 3)) + Fraction(1, 3)
    assert isinstance(harmonic((3, 1), 5), Fraction)


def test_x_to_index():
    assert x_to_index((0, 1, 1)) == (2, 1)
    with pytest.raises(ValueError):
        x_to_index((0, 1, 0))


def _convergent(max_weight):
    for p in range(2, max_weight + 1):
        for s in compositions(p):
            if s[0] >= 2:
                yield s


def test_tail_bound_honest():
    small, big = NumericConfig(terms=20_000), NumericConfig(terms=40_000)
    for s in _convergent(5):
        v1, e1 = mzv(s, small)
        v2, _ = mzv(s, big)
        assert abs(v2 - v1) <= e1, s
        assert tail_bound(s, 40_000) < tail_bound(s, 20_000)


def test_extrapolation_against_closed_forms():
    z = lambda k: float(mpmath.zeta(k))
    known = {
        (2,): z(2), (3,): z(3), (2, 1): z(3), (3, 1): math.pi ** 4 / 360,
        (2, 1, 1): z(4), (2, 2): math.pi ** 4 / 120,
        (4, 1): 2 * z(5) - z(2) * z(3), (3, 1, 1): 2 * z(5) - z(2) * z(3),
        (2, 2, 1): 3 * z(2) * z(3) - 11 / 2 * z(5),
    }
    for s, want in known.items():
        v, err = mzv_extrapolated(s)
        assert abs(v - want) < 1e-9, s
        assert err < 1e-6


def test_validate_weight5(report6):
    checks = validate_relations(report6, NumericConfig())
    assert len(checks) == 18
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]
    assert max(c.residual for c in checks) < 1e-8


def test_validate_detects_perturbation(report6):
    rule = report6.rule_for(zY((2, 1)))
    ok = validate_relations(report6, NumericConfig(tol=1e-4), rules=[rule])
    bad = RelationRule(rule.lhs, SymPoly.sym(zY((3,))) * Fraction(7, 5), 3)
    worse = validate_relations(report6, NumericConfig(tol=1e-4), rules=[bad])
    assert ok[0].passed and not worse[0].passed


def test_kernel_values_vanish(report6):
    # the same check through numbers: every Q_l evaluates to zero
    checks = validate_relations(report6, NumericConfig(), max_weight=6)
    assert all(c.residual < 1e-7 for c in checks)


def test_abel_spotcheck():
    grid = [1 - 10 ** -k for k in (2, 2.5, 3)]
    r2 = abel_spotcheck((2,), grid)
    assert abs(r2["limit"] - ZETA2) < 1e-2
    r1 = abel_spotcheck((1,), grid)
    assert abs(r1["limit"]) < 1e-2 and r1["target"] == 0
    r3 = abel_spotcheck((3,), grid)
    assert abs(r3["limit"] - 1.2020569031595942) < 1e-2
