import re
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from polyzeta.bridge import mine_relations
from polyzeta.cli import symbol_from_name
from polyzeta.ncalg import SymPoly

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"

_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\*)?(.*)")
_FACTOR = re.compile(r"((?:Sigma|S)\[[^\]]*\])(?:\^(\d+))?")


def parse_poly(text: str) -> SymPoly:
    """'3/2*Sigma[y3] - Sigma[y3]*Sigma[y2]^2' -> SymPoly."""
    out = SymPoly()
    # split on +/- that start a new term (never inside brackets)
    for chunk in re.findall(r"[+-]?[^+-]+", text.replace(" - ", " + -").replace(" + ", " +")):
        if not chunk.strip():
            continue
        m = _TERM.fullmatch(chunk.strip())
        sign, coeff, body = m.groups()
        term = SymPoly.const(Fraction(coeff or 1) * (-1 if sign == "-" else 1))
        for sym, exp in _FACTOR.findall(body):
            term = term * SymPoly.sym(symbol_from_name(sym)) ** int(exp or 1)
        out = out + term
    return out


def load_fixture_rules(name="rewriting_w6.txt"):
    rows = []
    for line in (FIXTURES / name).read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        head, rule = line.split("|")
        side, weight = head.split()
        lhs, rhs = rule.split("=")
        rows.append((side, int(weight), symbol_from_name(lhs.strip()), parse_poly(rhs)))
    return rows


@pytest.fixture(scope="session")
def report6():
    return mine_relations(6)


@pytest.fixture(scope="session")
def report8():
    return mine_relations(8)
