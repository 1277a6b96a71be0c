"""Command-line front end.

Every command prints one deterministic document (JSON by default) and exits
with 0 when all agreement flags hold, 1 on a mismatch, 2 on a usage error and
3 when an enumeration would exceed the budget.

Statistic grammar (``--stat`` or first positional argument)::

    one | x1 | x2 | quad | binomx1_2 | sign | chi1 | chik:K | distinct
    plambda:L1,L2,...          P_λ for the partition λ
    {"X1^2*X2": "1/2", ...}    any character polynomial as a JSON object
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from . import braidcoh, glcount, lseries, toristat
from .errors import BudgetExceeded, TwistedGLError
from .ffpoly import DEFAULT_BUDGET, cycle_type_histogram, field_of_order
from .symcomb import (
    CharacterPolynomial,
    ClassFunction,
    Partition,
    _frac_str,
    as_class_function,
    chi_distinct,
    chi_k,
    p_lambda,
    sign,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Raise instead of exiting so usage errors share the error document."""

    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# statistic registry


@dataclass
class Statistic:
    name: str
    at: Callable[[int], ClassFunction]
    poly: CharacterPolynomial | None = None
    tag: str | None = None


X1 = CharacterPolynomial.X(1)
X2 = CharacterPolynomial.X(2)
B12 = CharacterPolynomial.binom_X(1, 2)


def _poly_stat(name: str, P: CharacterPolynomial, tag: str | None = None) -> Statistic:
    return Statistic(name, lambda n: as_class_function(P, n), P, tag)


def parse_statistic(text: str) -> Statistic:
    raw = text.strip()
    if raw.startswith("{"):
        try:
            P = CharacterPolynomial.from_json(json.loads(raw))
        except (ValueError, TypeError) as exc:
            raise UsageError(f"bad character polynomial literal: {exc}") from exc
        return _poly_stat("poly:" + json.dumps(P.to_json(), sort_keys=True), P)
    key = raw.lower()
    if key in ("one", "1", "trivial"):
        return _poly_stat("one", CharacterPolynomial.constant(1))
    if key == "x1":
        return _poly_stat("x1", X1, "X1")
    if key == "x2":
        return _poly_stat("x2", X2, "X2")
    if key == "binomx1_2":
        return _poly_stat("binomx1_2", B12, "binomX1_2")
    if key == "quad":
        return _poly_stat("quad", B12 - X2, "P_quad")
    if key == "sign":
        return Statistic("sign", sign)
    if key == "chi1":
        return Statistic("chi1", lambda n: chi_k(n, 1))
    if key.startswith("chik:"):
        try:
            k = int(key.split(":", 1)[1])
        except ValueError as exc:
            raise UsageError(f"bad chik statistic {text!r}") from exc
        if k < 1:
            raise UsageError("chik needs k >= 1")
        return Statistic(f"chik:{k}", lambda n: chi_k(n, k))
    if key == "distinct":
        return Statistic("distinct", chi_distinct)
    if key.startswith("plambda:"):
        body = key.split(":", 1)[1].strip("()[] ")
        try:
            lam = Partition(tuple(int(x) for x in body.split(",") if x.strip())).parts
            P = p_lambda(lam)
        except ValueError as exc:
            raise UsageError(f"bad partition in {text!r}") from exc
        return _poly_stat("plambda:" + ",".join(map(str, lam)), P)
    raise UsageError(f"unknown statistic {text!r}")


# ---------------------------------------------------------------------------
# helpers


def fs(x: Fraction | int) -> str:
    return _frac_str(Fraction(x))


class Runner:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.budget = args.budget
        self.jobs = args.jobs
        cache_path = args.cache or os.environ.get(braidcoh.CACHE_ENV)
        self.table = braidcoh.MultiplicityTable(cache_path) if cache_path else None

    def mults(self, f: ClassFunction, n: int) -> list[Fraction]:
        if self.table is not None:
            return self.table.row(f, n)
        return braidcoh.ls_multiplicities(f, n)

    def rhs(self, f: ClassFunction, q: int, n: int) -> Fraction:
        return sum(
            ((-1) ** i * Fraction(q) ** (n - i) * m for i, m in enumerate(self.mults(f, n))), Fraction(0)
        )

    def lhs(self, f: ClassFunction, q: int, n: int) -> Fraction:
        return glcount.lhs_conf_sum(f, field_of_order(q), n, budget=self.budget, jobs=self.jobs)

    def close(self) -> None:
        if self.table is not None:
            self.table.save()


def _need(value, name: str):
    if value is None:
        raise UsageError(f"missing {name}")
    return value


def _int(text: str, name: str) -> int:
    try:
        return int(text)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"{name} must be an integer, got {text!r}") from exc


def _qlist(text: str) -> list[int]:
    return [_int(x, "q") for x in text.split(",") if x.strip()]


# ---------------------------------------------------------------------------
# commands; each returns (document, ok, csv records)


Record = dict


def cmd_verify_gl(r: Runner, stat: Statistic, q: int, n: int):
    f = stat.at(n)
    lhs, rhs = r.lhs(f, q, n), r.rhs(f, q, n)
    doc = {"command": "verify-gl", "stat": stat.name, "q": q, "n": n, "chi_id": f.canonical_id(),
           "lhs": fs(lhs), "rhs": fs(rhs), "match": lhs == rhs}
    recs = [
        {"quantity": "lhs", "method": "brute", "value": fs(lhs)},
        {"quantity": "rhs", "method": "cohomology", "value": fs(rhs)},
    ]
    return doc, lhs == rhs, recs


def cmd_fit(r: Runner, stat: Statistic, n: int, qs: list[int]):
    if len(qs) < n + 1 or len(set(qs)) != len(qs):
        raise UsageError(f"fit needs at least {n + 1} distinct q values")
    f = stat.at(n)
    fitted = glcount.solve_exact(
        [[Fraction((-1) ** i * q ** (n - i)) for i in range(n + 1)] for q in qs],
        [r.lhs(f, q, n) for q in qs],
    )
    coh = r.mults(f, n)
    ok = fitted == coh
    doc = {"command": "fit", "stat": stat.name, "n": n, "qs": qs,
           "fit": [fs(x) for x in fitted], "cohomology": [fs(x) for x in coh], "match": ok}
    recs = [{"i": i, "quantity": "multiplicity", "method": "fit", "value": fs(x)} for i, x in enumerate(fitted)]
    recs += [{"i": i, "quantity": "multiplicity", "method": "cohomology", "value": fs(x)} for i, x in enumerate(coh)]
    return doc, ok, recs


def cmd_stable(r: Runner, stat: Statistic, I: int, check_upto: int):
    if stat.tag is None:
        raise UsageError("stable needs one of x1, x2, binomx1_2, quad")
    series = lseries.stable_coefficients(stat.tag, I)
    upto = min(I, check_upto)
    braid = []
    for i in range(1, upto + 1):
        n = max(2 * i + stat.poly.degree, 1)
        braid.append(r.mults(as_class_function(stat.poly, n), n)[i])
    ok = all(Fraction(series[i]) == braid[i] for i in range(upto))
    doc = {"command": "stable", "stat": stat.name, "I": I, "series": series,
           "braid": [fs(x) for x in braid], "match": ok}
    recs = [{"i": i + 1, "quantity": "stable", "method": "series", "value": str(v)} for i, v in enumerate(series)]
    recs += [{"i": i + 1, "quantity": "stable", "method": "cohomology", "value": fs(v)} for i, v in enumerate(braid)]
    return doc, ok, recs


def _brute_ok(q: int, n: int) -> bool:
    return (n == 2 and q <= 7) or (n == 3 and q <= 3)


def cmd_tori(r: Runner, stat: Statistic, q: int, n: int):
    f = stat.at(n)
    poly = toristat.tori_polynomial(f, n)
    value = poly.evaluate(q)
    doc = {"command": "tori", "stat": stat.name, "q": q, "n": n, "polynomial": str(poly),
           "value": fs(value), "multiplicities": [fs(x) for x in toristat.r_multiplicities(f, n)]}
    recs = [{"quantity": "statistic", "method": "coinvariant", "value": fs(value)}]
    ok = True
    if _brute_ok(q, n):
        counts = toristat.tori_bruteforce(q, n)
        brute = sum((f(mu) * c for mu, c in counts.items()), Fraction(0))
        doc["bruteforce"] = fs(brute)
        doc["by_type"] = {",".join(map(str, mu)): c for mu, c in counts.items()}
        ok = brute == value
        recs.append({"quantity": "statistic", "method": "brute", "value": fs(brute)})
    doc["match"] = ok
    return doc, ok, recs


def cmd_factor_stats(r: Runner, q: int, n: int):
    ctx = field_of_order(q)
    hist = cycle_type_histogram(ctx, n, budget=r.budget, jobs=r.jobs)
    total = sum(hist.values())
    irr_formula = glcount.irreducible_count_formula(q, n)
    irr_brute = hist.get((n,), 0)
    distinct = sum(c for mu, c in hist.items() if len(set(mu)) == len(mu))
    dmults = r.mults(chi_distinct(n), n)
    distinct_rhs = sum(((-1) ** i * Fraction(q) ** (n - i) * m for i, m in enumerate(dmults)), Fraction(0))
    mobius = sum(c * (-1) ** (n - len(mu)) for mu, c in hist.items())
    small = []
    for k in (1, 2):
        rep = glcount.small_factor_report(ctx, n, k, budget=r.budget)
        small.append({"k": k, "phi": rep.phi, "pi": fs(rep.pi), "error": fs(rep.error),
                      "bound": fs(rep.bound), "holds": rep.holds})
    ok = (
        total == (q**n - q ** (n - 1) if n >= 2 else q**n)
        and irr_formula == irr_brute
        and distinct == distinct_rhs
        and (n < 2 or mobius == 0)
        and all(s["holds"] for s in small)
    )
    doc = {
        "command": "factor-stats", "q": q, "n": n,
        "squarefree": total,
        "cycle_types": {",".join(map(str, mu)): c for mu, c in hist.items()},
        "irreducible": {"formula": irr_formula, "brute": irr_brute},
        "distinct_degrees": {"brute": distinct, "cohomology": fs(distinct_rhs),
                             "multiplicities": [fs(x) for x in dmults]},
        "sign_sum": mobius,
        "small_factors": small,
        "match": ok,
    }
    recs = [
        {"quantity": "squarefree", "method": "brute", "value": str(total)},
        {"quantity": "irreducible", "method": "formula", "value": str(irr_formula)},
        {"quantity": "irreducible", "method": "brute", "value": str(irr_brute)},
        {"quantity": "distinct_degrees", "method": "brute", "value": str(distinct)},
        {"quantity": "distinct_degrees", "method": "cohomology", "value": fs(distinct_rhs)},
        {"quantity": "sign_sum", "method": "brute", "value": str(mobius)},
    ]
    return doc, ok, recs


def cmd_table_a(r: Runner, q: int, n: int, terms: int = 8):
    if n < 2:
        raise UsageError("table-a needs n >= 2")
    rows = []
    recs = []

    def add(row: int, column: str, quantity: str, values: dict[str, Fraction | str]):
        vals = {k: (v if isinstance(v, str) else fs(v)) for k, v in values.items()}
        numeric = [v for v in vals.values()]
        agree = len(set(numeric)) == 1
        rows.append({"row": row, "column": column, "quantity": quantity, "values": vals, "agree": agree})
        for method, v in vals.items():
            recs.append({"row": row, "column": column, "quantity": quantity, "method": method, "value": v})
        return agree

    conf = q**n - q ** (n - 1)
    tori = q ** (n * n - n)
    L = lseries.conf_L()
    one = as_class_function(1, n)
    x1 = as_class_function(X1, n)
    quad = as_class_function(B12 - X2, n)
    sg = sign(n)
    c1 = chi_k(n, 1)
    brute_tori = toristat.tori_bruteforce(q, n) if _brute_ok(q, n) else None

    def tori_brute(f: ClassFunction) -> dict:
        if brute_tori is None:
            return {}
        return {"brute": sum((f(mu) * c for mu, c in brute_tori.items()), Fraction(0))}

    # (1) counts
    add(1, "left", "squarefree polynomials",
        {"brute": r.lhs(one, q, n), "cohomology": r.rhs(one, q, n), "series": L.coefficient(n).evaluate(q)})
    add(1, "right", "maximal tori",
        {"coinvariant": toristat.tori_statistic(one, q, n), "closed": Fraction(tori), **tori_brute(one)})
    # (2) linear factors / eigenvectors
    add(2, "left", "expected linear factors",
        {"brute": r.lhs(x1, q, n) / conf, "cohomology": r.rhs(x1, q, n) / conf,
         "series": lseries.weighted_L("X1").coefficient(n).evaluate(q) / conf,
         "closed": sum((Fraction(-1, q) ** i for i in range(n - 1)), Fraction(0))})
    right2 = {"coinvariant": toristat.tori_statistic(x1, q, n) / tori,
              "closed": sum((Fraction(1, q) ** i for i in range(n)), Fraction(0))}
    if brute_tori is not None:
        right2["brute"] = tori_brute(x1)["brute"] / tori
    add(2, "right", "expected eigenvectors", right2)
    # (3) quadratic excess: irreducible minus reducible on the left, reducible minus irreducible on the right
    add(3, "left", "expected excess irreducible over reducible quadratic factors",
        {"brute": -r.lhs(quad, q, n) / conf, "cohomology": -r.rhs(quad, q, n) / conf,
         "series": -lseries.weighted_L("P_quad").coefficient(n).evaluate(q) / conf})
    lim = lseries.residue_ratio("P_quad").expand(terms)
    stable = lseries.stable_coefficients("P_quad", terms)
    rows.append({"row": 3, "column": "left", "quantity": "limit series in 1/q (coefficients of q^-1..)",
                 "values": {"series": [fs(-c) for c in lim[1:]], "stable_multiplicities": [str(a) for a in stable]},
                 "agree": True})
    right3 = {"coinvariant": toristat.tori_quadratic_excess(q, n)}
    if brute_tori is not None:
        right3["brute"] = tori_brute(quad)["brute"] / tori
    add(3, "right", "expected excess reducible over irreducible 2-dim subtori", right3)
    ser = toristat.tori_quadratic_excess_series(n)
    rows.append({"row": 3, "column": "right", "quantity": "finite-n series in 1/q (coefficients of q^-1..)",
                 "values": {"coinvariant": [fs(ser.coeff(-i)) for i in range(1, terms + 1)]}, "agree": True})
    # (4) sign
    add(4, "left", "sum of sign (Mobius) over squarefree polynomials",
        {"brute": r.lhs(sg, q, n), "cohomology": r.rhs(sg, q, n), "closed": Fraction(0)})
    add(4, "right", "parity bias of irreducible factor count",
        {"coinvariant": toristat.tori_statistic(sg, q, n), "closed": Fraction(q) ** comb(n, 2), **tori_brute(sg)})
    # (5) irreducibles
    add(5, "left", "irreducible polynomials",
        {"brute": r.lhs(c1, q, n), "cohomology": r.rhs(c1, q, n),
         "closed": Fraction(glcount.irreducible_count_formula(q, n))})
    add(5, "right", "irreducible maximal tori",
        {"closed": Fraction(toristat.pnt_tori_formula(q, n)), "hooks": toristat.pnt_tori_hooks(q, n),
         "chi1": toristat.pnt_tori_chi1(q, n), **tori_brute(c1)})
    ok = all(row["agree"] for row in rows)
    doc = {"command": "table-a", "q": q, "n": n, "rows": rows, "match": ok}
    return doc, ok, recs


# ---------------------------------------------------------------------------
# rendering


CSV_COLUMNS = ["command", "stat", "q", "n", "row", "column", "i", "quantity", "method", "value"]


def render(doc: dict, recs: list[Record], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for rec in recs:
            base = {k: doc.get(k, "") for k in ("command", "stat", "q", "n")}
            base.update(rec)
            w.writerow({k: base.get(k, "") for k in CSV_COLUMNS})
        return buf.getvalue().rstrip("\n")
    return _human(doc)


def _human(doc: dict) -> str:
    lines = []
    if doc.get("command") == "table-a":
        lines.append(f"Table A at q={doc['q']}, n={doc['n']}")
        for row in doc["rows"]:
            vals = ", ".join(f"{k}={v}" for k, v in row["values"].items())
            flag = "ok" if row["agree"] else "MISMATCH"
            lines.append(f"({row['row']}) {row['column']:<5} {row['quantity']}: {vals}  [{flag}]")
        return "\n".join(lines)
    for key, val in doc.items():
        if isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True)
        lines.append(f"{key}: {val}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--q", type=int, help="field size (a prime power)")
    common.add_argument("--n", type=int, help="degree / matrix size")
    common.add_argument("--stat", help="statistic name, see module docstring")
    common.add_argument("--format", choices=("human", "json", "csv"), default="json")
    common.add_argument("--cache", help=f"multiplicity cache file (default: ${braidcoh.CACHE_ENV})")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max polynomials to enumerate")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")

    parser = _Parser(prog="twistedgl", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("table-a", parents=[common], help="both columns of Table A at (q, n)")
    p.add_argument("pos", nargs="*", help="q n")
    p.add_argument("--terms", type=int, default=8)
    p = sub.add_parser("verify-gl", parents=[common], help="brute force vs cohomology")
    p.add_argument("pos", nargs="*", help="stat q n")
    p = sub.add_parser("fit", parents=[common], help="recover multiplicities from point counts")
    p.add_argument("pos", nargs="*", help="stat n q1,q2,...")
    p.add_argument("--qs", help="comma-separated field sizes")
    p = sub.add_parser("stable", parents=[common], help="stable multiplicities from the L-series")
    p.add_argument("pos", nargs="*", help="stat I")
    p.add_argument("--I", dest="I", type=int)
    p.add_argument("--check-upto", type=int, default=4, help="compare with the braid side for i <= this")
    p = sub.add_parser("tori", parents=[common], help="torus statistic in GL_n(F_q)")
    p.add_argument("pos", nargs="*", help="stat q n")
    p = sub.add_parser("factor-stats", parents=[common], help="factorization statistics at (q, n)")
    p.add_argument("pos", nargs="*", help="q n")
    return parser


def _take(pos: list[str], names: Sequence[str], flags: dict) -> dict:
    out = dict(flags)
    if len(pos) > len(names):
        raise UsageError(f"too many positional arguments: {pos}")
    for name, val in zip(names, pos):
        if out.get(name) is not None:
            raise UsageError(f"{name} given twice")
        out[name] = val
    return out


def dispatch(args: argparse.Namespace, r: Runner):
    c = args.command
    flags = {"stat": args.stat, "q": args.q, "n": args.n}
    if c == "verify-gl":
        v = _take(args.pos, ["stat", "q", "n"], flags)
        return cmd_verify_gl(r, parse_statistic(_need(v["stat"], "stat")), _int(_need(v["q"], "q"), "q"), _int(_need(v["n"], "n"), "n"))
    if c == "fit":
        v = _take(args.pos, ["stat", "n", "qs"], {**flags, "qs": args.qs})
        return cmd_fit(r, parse_statistic(_need(v["stat"], "stat")), _int(_need(v["n"], "n"), "n"), _qlist(_need(v["qs"], "qs")))
    if c == "stable":
        v = _take(args.pos, ["stat", "I"], {"stat": args.stat, "I": args.I})
        return cmd_stable(r, parse_statistic(_need(v["stat"], "stat")), _int(_need(v["I"], "I"), "I"), args.check_upto)
    if c == "tori":
        v = _take(args.pos, ["stat", "q", "n"], flags)
        return cmd_tori(r, parse_statistic(_need(v["stat"], "stat")), _int(_need(v["q"], "q"), "q"), _int(_need(v["n"], "n"), "n"))
    if c == "factor-stats":
        v = _take(args.pos, ["q", "n"], {"q": args.q, "n": args.n})
        return cmd_factor_stats(r, _int(_need(v["q"], "q"), "q"), _int(_need(v["n"], "n"), "n"))
    if c == "table-a":
        v = _take(args.pos, ["q", "n"], {"q": args.q, "n": args.n})
        return cmd_table_a(r, _int(_need(v["q"], "q"), "q"), _int(_need(v["n"], "n"), "n"), args.terms)
    raise UsageError(f"unknown command {c}")  # pragma: no cover


def _error(fmt: str, code: str, message: str) -> str:
    if fmt == "json":
        return json.dumps({"error": code, "message": message}, sort_keys=True)
    return f"error ({code}): {message}"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        fmt = "human" if "human" in argv else "csv" if "csv" in argv else "json"
        print(_error(fmt, "usage", str(exc)))
        return EXIT_USAGE
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.budget is not None and args.budget <= 0:
        print(_error(args.format, "usage", "budget must be positive"))
        return EXIT_USAGE
    r = Runner(args)
    try:
        doc, ok, recs = dispatch(args, r)
    except BudgetExceeded as exc:
        print(_error(args.format, exc.code, str(exc)))
        return EXIT_BUDGET
    except UsageError as exc:
        print(_error(args.format, "usage", str(exc)))
        return EXIT_USAGE
    except TwistedGLError as exc:
        print(_error(args.format, exc.code, str(exc)))
        return EXIT_USAGE
    r.close()
    print(render(doc, recs, args.format))
    return EXIT_OK if ok else EXIT_MISMATCH


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
