"""Command-line front end: ``python -m ehpkit <group> <command> [flags]``.

Exit codes: 0 success, 1 a verification reported failure, 2 usage error.
``EHP_MAX_ENUM`` bounds the size of any exhaustive enumeration (default 10^7).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from math import comb
from typing import List, Optional

from .ehp import TableParams, render_table
from .fgab import bareiss, rational_rank
from .gw import FieldClass, GWElement, gw_is_unit, gw_unit_family_holds, twist_class
from .james import SPACES, james_truncated
from .localization import PrimeSet
from .multinomial import count_even_sign, count_even_sign_enumerated, eo_counts, odd_double_factorial
from .simplicial import check_simplicial_identities, homology
from .specseq import SpecSeqMorphism, SpectralSequence, check_comparison, random_comparison_pair, random_filtered_complex
from .stable import (
    SphereShape,
    c_invertible,
    diagonal_vector,
    example_james_hopf_perms,
    perm_sum_matrix,
    single_letter_block,
)

DEFAULT_MAX_ENUM = 10**7
EO_CAP = 12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def max_enum() -> int:
    raw = os.environ.get("EHP_MAX_ENUM")
    if raw is None:
        return DEFAULT_MAX_ENUM
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"EHP_MAX_ENUM must be an integer, got {raw!r}")
    if value < 1:
        raise UsageError("EHP_MAX_ENUM must be positive")
    return value


def _check_enum(size: int, what: str):
    limit = max_enum()
    if size > limit:
        raise UsageError(f"{what} would enumerate {size} items, above EHP_MAX_ENUM={limit}")


def _primes(text: str) -> PrimeSet:
    try:
        return PrimeSet.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _field(text: str) -> FieldClass:
    try:
        return FieldClass.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _fmt(args, default="text", allowed=("text", "json")) -> str:
    f = getattr(args, "format", None) or default
    if f not in allowed:
        raise UsageError(f"--format {f} is not available for this command (use {', '.join(allowed)})")
    return f


class Result:
    def __init__(self, text: str, code: int = 0):
        self.text = text
        self.code = code


# -- gw ---------------------------------------------------------------------------

def cmd_gw_unit(args) -> Result:
    x = GWElement.of(args.a, args.b, args.primes)
    unit = gw_is_unit(x, args.field)
    if _fmt(args) == "json":
        return Result(_dump({"element": x.to_json(), "field": str(args.field), "unit": unit}))
    return Result(f"unit: {str(unit).lower()}\n")


def cmd_gw_twist(args) -> Result:
    e = twist_class(args.n, args.q, args.primes)
    if _fmt(args) == "json":
        return Result(_dump({"n": args.n, "q": args.q, "twist": e.to_json()}))
    return Result(f"e = {e}\n")


# -- comb -------------------------------------------------------------------------

def cmd_comb_eo(args) -> Result:
    if args.s > EO_CAP:
        raise UsageError(f"--s is capped at {EO_CAP}")
    _check_enum(odd_double_factorial(args.s), "eo")
    even, odd = eo_counts(args.s)
    f = _fmt(args, default="json", allowed=("text", "json", "csv"))
    if f == "csv":
        return Result(_csv(["s", "E", "O"], [[args.s, even, odd]]))
    if f == "text":
        return Result(f"E = {even}\nO = {odd}\n")
    return Result(_dump({"E": even, "O": odd}))


def cmd_comb_even_count(args) -> Result:
    closed = count_even_sign(args.x, args.y)
    out = {"x": args.x, "y": args.y, "even": closed}
    if args.enumerate:
        _check_enum(comb(args.x + args.y, args.x), "even-count")
        out["enumerated"] = count_even_sign_enumerated(args.x, args.y)
    f = _fmt(args, default="json")
    if f == "text":
        lines = [f"even-sign elements of ({args.x}+{args.y} choose {args.x},{args.y}): {closed}"]
        if "enumerated" in out:
            lines.append(f"by enumeration: {out['enumerated']}")
        return Result("\n".join(lines) + "\n")
    return Result(_dump(out))


# -- stable -----------------------------------------------------------------------

def cmd_stable_diag(args) -> Result:
    sphere = SphereShape(args.n, args.q)
    entries = diagonal_vector(sphere, args.primes, args.imax)
    f = _fmt(args, allowed=("text", "json", "csv"))
    if f == "json":
        return Result(_dump({"n": args.n, "q": args.q, "diagonal": [{"i": i, **d.to_json()} for i, d in enumerate(entries)]}))
    if f == "csv":
        return Result(_csv(["i", "a", "b"], [[i, str(d.a), str(d.b)] for i, d in enumerate(entries)]))
    return Result("".join(f"d_{i} = {d}\n" for i, d in enumerate(entries)))


def cmd_stable_invertible(args) -> Result:
    res = c_invertible(SphereShape(args.n, args.q), args.primes, args.field, args.imax)
    if _fmt(args) == "json":
        out = {"result": "Invertible" if res.__class__.__name__ == "Invertible" else "FailsAt"}
        if out["result"] == "FailsAt":
            out["index"] = res.index
        return Result(_dump(out))
    return Result(f"{res}\n")


# -- ss ---------------------------------------------------------------------------

def cmd_ss_page(args) -> Result:
    ss = SpectralSequence.from_filtered_complex(random_filtered_complex(random.Random(args.seed)))
    r = args.r if args.r is not None else ss.last_page()
    data = ss.to_json(r)
    if _fmt(args, default="json") == "json":
        return Result(_dump(data))
    lines = [f"E^{r} page (seed {args.seed})"]
    for e in data["entries"]:
        lines.append(f"({e['i']},{e['j']}): invariants={e['invariants']} rank={e['rank']}")
    return Result("\n".join(lines) + "\n")


def cmd_ss_abutment(args) -> Result:
    rng = random.Random(args.seed)
    failures = []
    for k in range(args.count):
        ss = SpectralSequence.from_filtered_complex(random_filtered_complex(rng))
        if ss.abutment_mismatches():
            failures.append(k)
    ok = not failures
    if _fmt(args) == "json":
        return Result(_dump({"count": args.count, "failures": failures, "pass": ok}), 0 if ok else 1)
    return Result(f"E^inf vs graded homology: {args.count - len(failures)}/{args.count} agree\n", 0 if ok else 1)


def cmd_ss_compare(args) -> Result:
    rng = random.Random(args.seed)
    held = violations = 0
    for _ in range(args.count):
        C, Cp, theta = random_comparison_pair(rng, args.q)
        m = SpecSeqMorphism.from_chain_map(SpectralSequence.from_filtered_complex(C), SpectralSequence.from_filtered_complex(Cp), theta)
        rep = check_comparison(m, args.q)
        if rep.hypothesis_holds:
            held += 1
            violations += len(rep.violations)
    ok = violations == 0
    if _fmt(args) == "json":
        return Result(_dump({"count": args.count, "hypothesis_held": held, "violations": violations, "pass": ok}), 0 if ok else 1)
    return Result(f"hypothesis held in {held}/{args.count} pairs, violations: {violations}\n", 0 if ok else 1)


# -- james ------------------------------------------------------------------------

def cmd_james_homology(args) -> Result:
    J = james_truncated(SPACES[args.space], args.n)
    _check_enum(sum(J.count(k) for k in range(args.cap + 1)), "james homology")
    res = homology(J, args.cap)
    f = _fmt(args, allowed=("text", "json", "csv"))
    if f == "json":
        return Result(_dump({"space": args.space, "n": args.n, "cap": args.cap, **res.to_json()}))
    if f == "csv":
        return Result(_csv(["d", "group", "reliable"], [[d, str(g), int(d <= res.reliable_through)] for d, g in enumerate(res.groups)]))
    lines = [f"H_*(J_{args.n}({args.space})), normalized chains through degree {args.cap}"]
    for d, g in enumerate(res.groups):
        flag = "" if d <= res.reliable_through else "  (truncated, unreliable)"
        lines.append(f"H_{d} = {g}{flag}")
    return Result("\n".join(lines) + "\n")


def cmd_james_identities(args) -> Result:
    J = james_truncated(SPACES[args.space], args.n)
    _check_enum(sum(J.count(k) for k in range(args.cap + 1)), "james identities")
    rep = check_simplicial_identities(J, args.cap)
    code = 0 if rep.ok else 1
    if _fmt(args) == "json":
        return Result(_dump({"space": args.space, "n": args.n, "cap": args.cap, "ok": rep.ok, "failures": rep.failures}), code)
    head = "simplicial identities hold" if rep.ok else "simplicial identities FAIL"
    return Result("\n".join([f"{head} on J_{args.n}({args.space}) through degree {args.cap}"] + rep.failures) + "\n", code)


# -- ehp --------------------------------------------------------------------------

def cmd_ehp_table(args) -> Result:
    if args.rows < 1 or args.cols < 1:
        raise UsageError("--rows and --cols must be positive")
    if args.n < 2 or (args.n2 is not None and args.n2 < args.n):
        raise UsageError("need n >= 2 and n2 >= n")
    params = TableParams(args.n, args.q, args.v, args.primes, args.field, args.n2)
    return Result(render_table(params, args.rows, args.cols, _fmt(args, allowed=("text", "json", "csv"))))


def cmd_ehp_condition(args) -> Result:
    res = gw_unit_family_holds(twist_class(args.n, args.q, args.primes), args.primes, args.field)
    if _fmt(args) == "json":
        out = {"n": args.n, "q": args.q, "primes": args.primes.to_json(), "field": str(args.field), "holds": not hasattr(res, "index")}
        if hasattr(res, "index"):
            out["witness"] = res.index
        return Result(_dump(out))
    return Result(f"{res}\n")


# -- verify -----------------------------------------------------------------------

def cmd_verify_example(args) -> Result:
    full = perm_sum_matrix(example_james_hopf_perms(), 2, 4)
    block = single_letter_block(full, 2, 4)
    _, det = bareiss(block)
    rank = rational_rank(full)
    ok = det == 0 and rank < 16
    if _fmt(args) == "json":
        return Result(_dump({"matrix": block, "det": det, "full_rank": rank, "pass": ok}), 0 if ok else 1)
    lines = ["a^2_(4,2) = e + (23) + (243) on the single-'1' tuples:"]
    lines += ["  " + " ".join(f"{x:2d}" for x in row) for row in block]
    lines += [f"det = {det}", f"rank of the 16x16 matrix = {rank}", "pass" if ok else "FAIL"]
    return Result("\n".join(lines) + "\n", 0 if ok else 1)


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=["text", "csv", "json"], default=argparse.SUPPRESS, help="output format")

    p = _Parser(prog="ehpkit", description="Computations around the simplicial EHP sequence.", parents=[fmt])
    groups = p.add_subparsers(dest="group", metavar="GROUP", parser_class=_Parser)
    groups.required = True

    def sub(parent, name, help_, fn):
        sp = parent.add_parser(name, help=help_, description=help_, parents=[fmt])
        sp.set_defaults(fn=fn)
        return sp

    def group(name, help_):
        g = groups.add_parser(name, help=help_, description=help_)
        s = g.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
        s.required = True
        return s

    g = group("gw", "Grothendieck-Witt arithmetic")
    sp = sub(g, "unit", "is A + B<-1> a unit of GW(k) (x) Z_P", cmd_gw_unit)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--primes", type=_primes, default=PrimeSet.all(), help="'all' or e.g. 2,3")
    sp.add_argument("--field", type=_field, default=_field("real"), help="real or nonreal")
    sp = sub(g, "twist", "the twist class e of S^(n + q alpha)", cmd_gw_twist)
    sp.add_argument("--n", type=_nonneg, required=True)
    sp.add_argument("--q", type=_nonneg, required=True)
    sp.add_argument("--primes", type=_primes, default=PrimeSet.all())

    g = group("comb", "permutation-sign combinatorics")
    sp = sub(g, "eo", "even/odd sign counts of pair partitions of {1..2s}", cmd_comb_eo)
    sp.add_argument("--s", type=_nonneg, required=True)
    sp = sub(g, "even-count", "even-sign elements of a two-part multinomial set", cmd_comb_even_count)
    sp.add_argument("--x", type=_nonneg, required=True)
    sp.add_argument("--y", type=_nonneg, required=True)
    sp.add_argument("--enumerate", action="store_true", help="also count by exhaustive enumeration")

    g = group("stable", "stable diagonal classes")
    for name, fn, help_ in (
        ("diag", cmd_stable_diag, "diagonal entries d_(i,i) of c"),
        ("invertible", cmd_stable_invertible, "decide invertibility of c up to i_max"),
    ):
        sp = sub(g, name, help_, fn)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--q", type=_nonneg, default=0)
        sp.add_argument("--imax", type=int, default=12)
        sp.add_argument("--primes", type=_primes, default=PrimeSet.of(2))
        if name == "invertible":
            sp.add_argument("--field", type=_field, default=_field("real"))

    g = group("ss", "spectral-sequence engine on random filtered complexes")
    sp = sub(g, "page", "dump one page of a seeded random filtered complex", cmd_ss_page)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--r", type=int, default=None, help="page number (default: last page)")
    sp = sub(g, "abutment", "compare E^inf with the graded homology", cmd_ss_abutment)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=_nonneg, default=50)
    sp = sub(g, "compare", "check the comparison lemma on random morphisms", cmd_ss_compare)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=_nonneg, default=50)
    sp.add_argument("--q", type=_nonneg, default=2)

    g = group("james", "truncated James construction")
    for name, fn, help_ in (
        ("homology", cmd_james_homology, "integral homology of J_n(X)"),
        ("identities", cmd_james_identities, "check the simplicial identities of J_n(X)"),
    ):
        sp = sub(g, name, help_, fn)
        sp.add_argument("--space", choices=sorted(SPACES), required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--cap", type=_nonneg, default=6)

    g = group("ehp", "E^1 pages of the EHP spectral sequences")
    sp = sub(g, "table", "render the E^1 page", cmd_ehp_table)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=_nonneg, required=True)
    sp.add_argument("--v", type=_nonneg, required=True)
    sp.add_argument("--rows", type=int, default=20)
    sp.add_argument("--cols", type=int, default=10)
    sp.add_argument("--n2", type=int, default=None, help="truncate at n2 (truncated EHP sequence)")
    sp.add_argument("--primes", type=_primes, default=PrimeSet.of(2))
    sp.add_argument("--field", type=_field, default=_field("real"))
    sp = sub(g, "condition", "is (m+1) + m e a unit for every m", cmd_ehp_condition)
    sp.add_argument("--n", type=_nonneg, required=True)
    sp.add_argument("--q", type=_nonneg, required=True)
    sp.add_argument("--primes", type=_primes, default=PrimeSet.of(2))
    sp.add_argument("--field", type=_field, default=_field("real"))

    g = group("verify", "fixed worked examples")
    sub(g, "example-6-5", "the James-Hopf permutation sum e + (23) + (243)", cmd_verify_example)
    return p


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = args.fn(args)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (ValueError, ArithmeticError) as exc:
        err.write(parser.format_usage())
        err.write(f"ehpkit: error: {exc}\n")
        return 2
    out.write(result.text)
    return result.code


def main() -> None:
    sys.exit(run())
