"""Command-line entry point: ``polyzeta <command> ...``.

Exit status: 0 on success, 1 on a domain error (bad word, improper star,
inconsistent input), 2 on a usage error (unknown flag, malformed config).
"""
from __future__ import annotations

import argparse
import configparser
import json
import os
import re
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Optional

from .numeric import NumericConfig

DEFAULTS = {"max_weight": 6, "terms": 100_000, "tol": 1e-3, "precision": 64}
_CASTS = {"max_weight": int, "terms": int, "tol": float, "precision": int}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    numeric: NumericConfig
    max_weight: int


def _cast(key: str, raw, origin: str):
    try:
        val = _CASTS[key](raw)
    except (TypeError, ValueError):
        raise UsageError(f"{origin}: bad value {raw!r} for key {key!r}")
    if key in ("max_weight", "terms", "precision") and val < 1:
        raise UsageError(f"{origin}: key {key!r} must be positive")
    if key == "tol" and not val > 0:
        raise UsageError(f"{origin}: key {key!r} must be positive")
    return val


def _read_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read config {path}: {e.strerror}")
    if path.endswith(".json"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise UsageError(f"{path}: invalid JSON ({e.msg})")
        if not isinstance(data, dict):
            raise UsageError(f"{path}: expected an object")
    else:
        cp = configparser.ConfigParser()
        try:
            cp.read_string(text if text.lstrip().startswith("[") else "[polyzeta]\n" + text)
        except configparser.Error as e:
            raise UsageError(f"{path}: {e.message.splitlines()[0]}")
        data = {}
        for section in cp.sections():
            data.update(cp[section])
    out = {}
    for key, raw in data.items():
        k = key.strip().lower().replace("-", "_")
        if k not in _CASTS:
            raise UsageError(f"{path}: unknown key {key!r}")
        out[k] = _cast(k, raw, path)
    return out


def load_config(path: Optional[str] = None, env: Optional[dict] = None) -> Config:
    """Defaults, then the file (INI or JSON), then POLYZETA_* variables."""
    env = os.environ if env is None else env
    merged = dict(DEFAULTS)
    path = path or env.get("POLYZETA_CONFIG")
    if path:
        merged.update(_read_file(path))
    for key in _CASTS:
        name = "POLYZETA_" + key.upper()
        if name in env:
            merged[key] = _cast(key, env[name], name)
    try:
        numeric = NumericConfig(terms=merged["terms"], tol=merged["tol"], precision=merged["precision"])
    except ValueError as e:
        raise UsageError(str(e))
    return Config(numeric, merged["max_weight"])


# ---------------------------------------------------------------------------
# rendering of relation tables

def rule_to_json(rule) -> dict:
    terms = []
    for powers, c in rule.rhs.items():
        terms.append({
            "coeff": str(Fraction(c)),
            "monomial": [[s.name("basis"), k] for s, k in powers],
        })
    return {
        "weight": rule.weight,
        "side": rule.side,
        "lhs": rule.lhs.name("basis"),
        "rhs": rule.rhs.render(style="basis", mul="*"),
        "rhs_terms": terms,
    }


_SYM = re.compile(r"(Sigma|S)\[([^\]]*)\]")


def symbol_from_name(name: str):
    from .ncalg import GAMMA, zX, zY

    if name == "gamma":
        return GAMMA
    m = _SYM.fullmatch(name)
    if not m:
        raise ValueError(f"unknown symbol {name!r}")
    letters = m.group(2).split()
    if m.group(1) == "Sigma":
        return zY(tuple(int(l[1:]) for l in letters))
    return zX(tuple(int(l[1:]) for l in letters))


def rule_from_json(d: dict):
    from .bridge import RelationRule
    from .ncalg import SymPoly

    rhs = SymPoly()
    for t in d["rhs_terms"]:
        mono = SymPoly.const(Fraction(t["coeff"]))
        for name, k in t["monomial"]:
            mono = mono * SymPoly.sym(symbol_from_name(name)) ** k
        rhs = rhs + mono
    return RelationRule(symbol_from_name(d["lhs"]), rhs, d["weight"])


def _sides(side: str) -> List[str]:
    return ["Y", "X"] if side == "both" else [side]


def render_table(report, fmt: str = "text", side: str = "both", irreducibles: bool = False) -> str:
    """Relation table of a report in text, json or latex."""
    sides = _sides(side)
    rules = [r for s in sides for r in (report.rules(s) if report else [])]
    if fmt == "json":
        return json.dumps([rule_to_json(r) for r in rules], indent=1)
    if fmt == "latex":
        lines = [r"\begin{array}{|c|l|}", r"\hline", r"\text{weight} & \text{rule}\\", r"\hline"]
        for r in rules:
            lines.append(
                f"{r.weight} & {r.lhs.name('latex')} = {r.rhs.render(style='latex', mul=' ')}\\\\"
            )
        lines += [r"\hline", r"\end{array}"]
        return "\n".join(lines)
    lines = ["weight | rule"]
    current = None
    for r in rules:
        if r.side != current:
            current = r.side
            lines.append(f"# side {current}")
        lines.append(f"{r.weight} | {r.render()}")
    if irreducibles and report:
        for s in sides:
            irr = ", ".join(x.name("basis") for x in report.irreducibles(s))
            lines.append(f"# irreducible {s}: {irr}")
    return "\n".join(lines)


def render_kernel(report, side: str = "both") -> str:
    from .words import X, Y

    lines = ["weight | generator"]
    for s in _sides(side):
        alpha = Y if s == "Y" else X
        for r in report.rules(s):
            Q = report.kernel_generator(r)
            lines.append(f"{r.weight} | Q[{alpha.pretty(r.lhs.word)}] = {_render_poly(alpha, Q)}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands

def _fmt_word(alpha, w) -> str:
    return alpha.pretty(w, sep=" ")


def cmd_lyndon(args, cfg) -> str:
    from .words import alphabet, lyndon_words

    alpha = alphabet(args.alphabet)
    bound = args.max_grade if args.max_grade is not None else cfg.max_weight
    words = sorted(lyndon_words(alpha, bound))
    if args.format == "json":
        return json.dumps([list(w) for w in words])
    return "\n".join(_fmt_word(alpha, w) for w in words)


def _parse_word(alpha, text: str):
    text = text.strip()
    if re.fullmatch(r"([xy]\d+\s*)+", text):
        return tuple(int(t[1:]) for t in text.split())
    return alpha.parse(text)


def _render_poly(alpha, P) -> str:
    out = []
    for w in sorted(P.terms, key=alpha.key):
        c = Fraction(P.terms[w])
        body = alpha.pretty(w)
        a = abs(c)
        txt = body if a == 1 else f"{a}*{body}"
        out.append(("-" if c < 0 else "+", txt))
    if not out:
        return "0"
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    return text + "".join(f" {sg} {t}" for sg, t in out[1:])


def cmd_basis(args, cfg) -> str:
    from .bases import lower_word, sigma_fast, upper_word
    from .words import X, Y

    alpha = X if args.kind == "shuffle-X" else Y
    w = _parse_word(alpha, args.word)
    P = lower_word(w, args.kind)
    if args.kind == "stuffle-Y":
        S = sigma_fast(w)
    else:
        S = upper_word(w, alpha.name)
    if args.format == "json":
        enc = lambda Q: [[list(u), str(Q.terms[u])] for u in sorted(Q.terms, key=alpha.key)]
        return json.dumps({"kind": args.kind, "word": list(w), "lower": enc(P), "upper": enc(S)})
    lo, up = ("Pi", "Sigma") if args.kind == "stuffle-Y" else ("P", "S")
    name = alpha.pretty(w)
    return f"{lo}[{name}] = {_render_poly(alpha, P)}\n{up}[{name}] = {_render_poly(alpha, S)}"


def cmd_product(args, cfg) -> str:
    from .ncalg import NCPolynomial, conc, shuffle, stuffle
    from .words import alphabet

    alpha = alphabet(args.alphabet)
    u = NCPolynomial.word(alpha, _parse_word(alpha, args.left))
    v = NCPolynomial.word(alpha, _parse_word(alpha, args.right))
    op = {"shuffle": shuffle, "stuffle": stuffle, "conc": conc}[args.op]
    P = op(u, v)
    if args.format == "json":
        return json.dumps([[list(w), str(P.terms[w])] for w in sorted(P.terms, key=alpha.key)])
    return _render_poly(alpha, P)


def cmd_rat(args, cfg) -> str:
    from . import ratseries as rs
    from .words import X, Y

    if args.action == "check":
        if not args.lhs or not args.rhs:
            raise UsageError("rat check needs --lhs and --rhs")
        N = args.up_to if args.up_to is not None else cfg.max_weight
        ok = rs.equal_up_to(rs.parse(args.lhs), rs.parse(args.rhs), N)
        if args.format == "json":
            return json.dumps({"equal": ok, "up_to": N})
        return f"{'equal' if ok else 'different'} up to grade {N}"
    if not args.expr or args.word is None:
        raise UsageError("rat coeff needs --expr and --word")
    e = rs.parse(args.expr)
    alpha = Y if rs.alphabet_of(e) == "Y" else X
    w = _parse_word(alpha, args.word)
    c = rs.coefficient(rs.rep_of(e), w)
    if args.format == "json":
        return json.dumps({"word": list(w), "coeff": rs.render_coeff(c)})
    return rs.render_coeff(c)


def cmd_negalog(args, cfg) -> str:
    from . import negalog as ng

    w = ng.as_word(args.word)
    if not w:
        raise ValueError("empty word")
    p = ng.lineg_coeffs(w)
    if args.action == "li":
        if args.format == "json":
            return json.dumps({"word": list(w), "p": p})
        return ng.render_upoly(p)
    if args.action == "h":
        n = args.n if args.n is not None else 10
        vals = [ng.hneg_value(w, k) for k in range(n + 1)]
        if args.format == "json":
            return json.dumps({"word": list(w), "values": vals})
        return " ".join(map(str, vals))
    p1, ph = ng.zeta_sh_neg(w), ng.gamma_neg(w)
    if args.format == "json":
        return json.dumps({"word": list(w), "p": p, "p1": p1, "phat1": str(ph)})
    return f"zeta_sh = {p1}, gamma = {ph}"


def cmd_relations(args, cfg) -> str:
    from .bridge import mine_relations

    N = args.max_weight if args.max_weight is not None else cfg.max_weight
    if N < 2:
        raise UsageError("--max-weight must be at least 2")
    report = mine_relations(N)
    if args.kernel:
        return render_kernel(report, args.side)
    return render_table(report, args.format, args.side, irreducibles=args.irreducibles)


def cmd_euler(args, cfg) -> str:
    from .bridge import euler_even_ratio, run_ratios

    rows = []
    for k in range(1, args.k + 1):
        r2, r31 = run_ratios(k)
        rows.append({"k": k, "zeta(2k)/pi^2k": str(euler_even_ratio(k)),
                     "zeta({2}^k)/pi^2k": str(r2), "zeta({3,1}^k)/pi^4k": str(r31)})
    if args.format == "json":
        return json.dumps(rows)
    lines = ["k | zeta(2k)/pi^2k | zeta({2}^k)/pi^2k | zeta({3,1}^k)/pi^4k"]
    for r in rows:
        lines.append(" | ".join(str(v) for v in r.values()))
    return "\n".join(lines)


def cmd_verify(args, cfg) -> str:
    from .bridge import mine_relations
    from .numeric import validate_relations

    num = cfg.numeric
    if args.terms is not None or args.tol is not None:
        try:
            num = replace(num, terms=args.terms or num.terms, tol=args.tol or num.tol)
        except ValueError as e:
            raise UsageError(str(e))
    N = args.max_weight if args.max_weight is not None else min(cfg.max_weight, 5)
    report = mine_relations(max(N, 2))
    checks = validate_relations(report, num, max_weight=N)
    failed = sum(not c.passed for c in checks)
    if args.json or args.format == "json":
        out = json.dumps([c.__dict__ for c in checks], indent=1)
    else:
        lines = [f"{'PASS' if c.passed else 'FAIL'} {c.side} {c.weight} | {c.rule} | residual {c.residual:.3e}"
                 for c in checks]
        lines.append(f"{len(checks) - failed}/{len(checks)} relations within tol {num.tol:g}")
        out = "\n".join(lines)
    if failed:
        raise _DomainFailure(out)
    return out


class _DomainFailure(Exception):
    """A command produced output but the outcome is a failure."""


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyzeta", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="INI or JSON file with max_weight, terms, tol, precision")
    p.add_argument("--format", choices=["text", "table", "json", "latex"], default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=["text", "table", "json", "latex"], default=argparse.SUPPRESS)
        sp.set_defaults(func=func)
        return sp

    sp = add("lyndon", cmd_lyndon, "list Lyndon words")
    sp.add_argument("--alphabet", choices=["X", "Y", "Y0"], default="Y")
    sp.add_argument("--max-grade", type=int)

    sp = add("basis", cmd_basis, "show a dual basis pair element")
    sp.add_argument("--kind", choices=["shuffle-X", "shuffle-Y", "stuffle-Y"], default="stuffle-Y")
    sp.add_argument("--word", required=True)

    sp = add("product", cmd_product, "shuffle, quasi-shuffle or concatenation of two words")
    sp.add_argument("--op", choices=["shuffle", "stuffle", "conc"], default="shuffle")
    sp.add_argument("--alphabet", choices=["X", "Y", "Y0"], default="Y")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)

    sp = add("rat", cmd_rat, "rational series identities and coefficients")
    sp.add_argument("action", choices=["check", "coeff"])
    sp.add_argument("--lhs")
    sp.add_argument("--rhs")
    sp.add_argument("--up-to", type=int)
    sp.add_argument("--expr")
    sp.add_argument("--word")

    sp = add("negalog", cmd_negalog, "negative-index polylogarithms and regularized values")
    sp.add_argument("action", choices=["li", "reg", "h"])
    sp.add_argument("--word", required=True, help='indices, e.g. "2 1" for (-2,-1)')
    sp.add_argument("--n", type=int, help="last n for the h action")

    sp = add("relations", cmd_relations, "mine polynomial relations among polyzetas")
    sp.add_argument("--max-weight", type=int)
    sp.add_argument("--side", choices=["Y", "X", "both"], default="both")
    sp.add_argument("--irreducibles", action="store_true")
    sp.add_argument("--kernel", action="store_true", help="print the kernel generators Q_l")

    sp = add("euler", cmd_euler, "exact zeta ratio table")
    sp.add_argument("--k", type=int, default=5)

    sp = add("verify", cmd_verify, "numeric check of mined relations")
    sp.add_argument("--max-weight", type=int)
    sp.add_argument("--terms", type=int)
    sp.add_argument("--tol", type=float)
    sp.add_argument("--json", action="store_true")
    return p


def dispatch(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.format == "table":
        args.format = "text"
    try:
        cfg = load_config(args.config)
        text = args.func(args, cfg)
    except UsageError as e:
        parser.print_usage(err)
        print(f"polyzeta: error: {e}", file=err)
        return 2
    except _DomainFailure as e:
        print(str(e), file=out)
        return 1
    except (ValueError, ArithmeticError) as e:
        print(f"polyzeta: {e}", file=err)
        return 1
    print(text, file=out)
    return 0


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
