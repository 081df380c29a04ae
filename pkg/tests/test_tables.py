"""Mined weight <= 6 rules against the hand-typed fixture and the CLI golden."""
import io
from fractions import Fraction

import pytest
from conftest import FIXTURES, load_fixture_rules

from polyzeta.bridge import basis_element
from polyzeta.cli import dispatch
from polyzeta.ncalg import NCPolynomial, shuffle, stuffle, zY
from polyzeta.words import X, Y


def lift(poly, side):
    prod = stuffle if side == "Y" else shuffle
    alpha = Y if side == "Y" else X
    out = NCPolynomial.zero(alpha)
    for powers, c in poly.items():
        term = NCPolynomial.one(alpha)
        for sym, k in powers:
            for _ in range(k):
                term = prod(term, basis_element(sym))
        out = out + term.scale(c)
    return out


def test_fixture_row_counts():
    rows = load_fixture_rules()
    for side in "YX":
        counts = [sum(1 for r in rows if r[0] == side and r[1] == p) for p in (3, 4, 5, 6)]
        assert counts == [1, 3, 5, 9]


def test_rules_match_fixture(report6):
    rows = load_fixture_rules()
    mined = {r.lhs: r for r in report6.rules_Y + report6.rules_X}
    assert len(mined) == len(rows) == 36
    for side, weight, lhs, rhs in rows:
        rule = mined[lhs]
        assert (rule.side, rule.weight) == (side, weight)
        assert rule.rhs == rhs, rule


def test_kernel_generators_match_fixture(report6):
    for side, _, lhs, rhs in load_fixture_rules():
        Q = report6.kernel_generator(report6.rule_for(lhs))
        assert Q == basis_element(lhs) - lift(rhs, side)


@pytest.mark.xfail(strict=True, reason="printed generator has -5 where the rewriting rule needs +5")
def test_printed_kernel_generator_y3y2():
    from conftest import parse_poly

    r = report6_small()
    Q = r.kernel_generator(r.rule_for(zY((3, 2))))
    printed = basis_element(zY((3, 2))) - lift(parse_poly("3*Sigma[y3]*Sigma[y2]"), "Y") \
        - basis_element(zY((5,))).scale(Fraction(5))
    assert Q == printed


def report6_small():
    from polyzeta.bridge import mine_relations

    return mine_relations(5)


def test_cli_golden_bytes():
    out = io.StringIO()
    assert dispatch(["relations", "--max-weight", "6"], out, io.StringIO()) == 0
    assert out.getvalue() == (FIXTURES / "relations_w6.txt").read_text()
