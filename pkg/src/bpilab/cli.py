"""Command-line front end ``bpilab``.

Results go to stdout (or ``--output``); progress and errors go to stderr.
Exit status: 0 success, 1 a check failed or an internal invariant aborted,
2 bad input.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from itertools import combinations_with_replacement
from pathlib import Path

from . import __version__
from .chartab import TableError, cd_set, character_table, direct_product_table, wreath_c2_table
from .corpus import (
    SpecError,
    builtin,
    builtin_corpus,
    build_dihedral,
    build_frobenius,
    build_sl23_on_z3sq,
    dumps,
    load_corpus,
    load_group_spec,
    save_table,
)
from .permgrp import BoundExceeded, GroupInputError, PermGroup, is_pi_separable
from .pichar import NucleusError, bcd_sets, bpi_set, pi_class_count, pi_special_set
from .primes import PrimeSet, prime_divisors
from .theorems import CHECKS, PRIME_CHECKS, CorpusReport, RunConfig, run_check, run_corpus

CORPUS_ENV = "BPILAB_CORPUS_DIR"
DEFAULT_SEED = 20240613
EXAMPLES = ("paper-3.2", "paper-3.1-arith", "paper-ex1-arith")

log = logging.getLogger("bpilab")


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# rendering


def _compact(witness: dict, width: int = 70) -> str:
    text = json.dumps(witness, sort_keys=True, separators=(",", ":"))
    return text if len(text) <= width else text[: width - 3] + "..."


def _witness(r) -> str:
    sides = [s for s in (r.lhs, r.rhs) if not s.holds and s.witness]
    if r.status == "error":
        return r.detail
    if r.status == "skip" and r.detail:
        return r.detail
    return " ".join(_compact(s.witness) for s in sides)


def render_report(report: CorpusReport, fmt: str = "text") -> str:
    """Aligned text table, or the JSON report document."""
    if fmt == "json":
        return dumps(report.to_doc())
    head = ("", "check", "group", "pi", "p", "lhs", "rhs", "status", "witness")
    rows = []
    for r in report.results:
        mark = "✓" if r.equivalence_holds else "✗"
        rows.append((mark, r.check, r.group, str(r.pi) if r.pi is not None else "-",
                     str(r.p) if r.p is not None else "-",
                     str(r.lhs.holds).lower(), str(r.rhs.holds).lower(), r.status, _witness(r)))
    widths = [max(len(x[i]) for x in [head, *rows]) for i in range(len(head))]
    fmt_row = lambda x: "  ".join(c.ljust(w) for c, w in zip(x, widths)).rstrip()
    lines = [fmt_row(head)]
    lines += [fmt_row(x) for x in rows]
    for rej in report.rejected:
        lines.append(f"rejected: {rej['group']} pi={rej['pi']}: {rej['reason']}")
    if rows:
        c = report.counts()
        lines.append(f"{c['pass']} passed, {c['fail']} failed, {c['skip']} skipped, {c['error']} errors")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument helpers


def load_group(source: str) -> PermGroup:
    if source.startswith("builtin:"):
        return builtin(source[len("builtin:"):]).to_group()
    path = Path(source)
    if path.exists():
        return load_group_spec(path.read_text()).to_group()
    try:
        return builtin(source).to_group()
    except GroupInputError:
        raise InputError(f"no such file or builtin group: {source}") from None


def parse_pi(text: str) -> PrimeSet:
    try:
        pi = PrimeSet.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if not pi.primes:
        raise InputError("pi must name at least one prime")
    return pi


def _require_pi(args) -> PrimeSet:
    if args.pi is None:
        raise InputError("--pi is required")
    return parse_pi(args.pi)


def _group_arg(args) -> PermGroup:
    if args.group is None:
        raise InputError("--group is required")
    return load_group(args.group)


def _chars(chars) -> list[dict]:
    return [{"index": x.index, "label": x.label, "degree": x.degree} for x in chars]


def _setfmt(values) -> str:
    return "{" + ", ".join(str(v) for v in values) + "}"


# ---------------------------------------------------------------------------
# verbs


def cmd_table(args) -> tuple[str, int]:
    G = _group_arg(args)
    T = character_table(G, seed=args.seed)
    if args.format == "json":
        return save_table(T), 0
    cd = T.classes
    vals = [x.value_strings() for x in T]
    head = [["", "order"] + [str(o) for o in cd.orders], ["", "size"] + [str(s) for s in cd.sizes]]
    body = [[T.labels[i] or f"X.{i}", str(x.degree)] + vals[i] for i, x in enumerate(T)]
    cols = list(zip(*(head + body)))
    widths = [max(len(c) for c in col) for col in cols]
    lines = [f"{T.name}: order {T.order}, {len(T)} classes, method {T.method}"]
    for row in head + body:
        lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip())
    lines.append(f"cd = {_setfmt(cd_set(T))}")
    return "\n".join(lines) + "\n", 0


def cmd_bpi(args) -> tuple[str, int]:
    G = _group_arg(args)
    pi = _require_pi(args)
    if not is_pi_separable(G, pi):
        raise InputError(f"{G.name} is not {pi}-separable")
    T = character_table(G, seed=args.seed)
    pp = pi.complement()
    B, Bp = bpi_set(T, pi), bpi_set(T, pp)
    X, Xp = pi_special_set(T, pi), pi_special_set(T, pp)
    b, bp = bcd_sets(T, pi)
    doc = {
        "group": T.name,
        "order": T.order,
        "pi": sorted(pi.primes),
        "cd": cd_set(T),
        "b_pi": _chars(B),
        "b_pi_prime": _chars(Bp),
        "x_pi": _chars(X),
        "x_pi_prime": _chars(Xp),
        "bcd_pi": b,
        "bcd_pi_prime": bp,
        "pi_classes": pi_class_count(T, pi),
        "pi_prime_classes": pi_class_count(T, pp),
    }
    if args.format == "json":
        return dumps(doc), 0
    lines = [
        f"{T.name}: order {T.order}, pi = {pi}",
        f"cd = {_setfmt(cd_set(T))}",
        f"B_{pi}: {len(B)} characters ({doc['pi_classes']} classes of pi-elements), degrees {_setfmt(b)}",
        f"B_{pp}: {len(Bp)} characters ({doc['pi_prime_classes']} classes of pi'-elements), degrees {_setfmt(bp)}",
        f"X_{pi}: {len(X)} characters, degrees {_setfmt(sorted({x.degree for x in X}))}",
        f"X_{pp}: {len(Xp)} characters, degrees {_setfmt(sorted({x.degree for x in Xp}))}",
    ]
    for name, chars in (("B_pi", B), ("B_pi'", Bp)):
        lines.append(f"{name} members: " + ", ".join(f"{x.label or x.index}({x.degree})" for x in chars))
    return "\n".join(lines) + "\n", 0


def _check_names(args) -> list[str]:
    names = args.check or ["all"]
    if "all" in names:
        return list(CHECKS)
    bad = [n for n in names if n not in CHECKS]
    if bad:
        raise InputError(f"unknown check(s) {', '.join(bad)}; known: {', '.join(CHECKS)}")
    return names


def cmd_verify(args) -> tuple[str, int]:
    G = _group_arg(args)
    pi = _require_pi(args)
    if not is_pi_separable(G, pi):
        raise InputError(f"{G.name} is not {pi}-separable")
    character_table(G, seed=args.seed)
    report = CorpusReport(seed=args.seed)
    for name in _check_names(args):
        if name in PRIME_CHECKS:
            primes = [args.p] if args.p is not None else list(prime_divisors(G.order)) or [2]
            for p in primes:
                report.results.append(run_check(name, G, pi, p))
        else:
            report.results.append(run_check(name, G, pi))
    return render_report(report, args.format), 0 if report.ok else 1


def _corpus_entries(args) -> list:
    if args.corpus:
        path = Path(args.corpus)
        if not path.exists():
            raise InputError(f"no such corpus file: {path}")
        return load_corpus(path.read_text())
    folder = os.environ.get(CORPUS_ENV)
    if folder:
        files = sorted(Path(folder).glob("*.json"))
        if not files:
            raise InputError(f"{CORPUS_ENV}={folder} holds no corpus files")
        out = []
        for f in files:
            out += load_corpus(f.read_text())
        return out
    return builtin_corpus()


def cmd_corpus_run(args) -> tuple[str, int]:
    specs = _corpus_entries(args)
    if args.pi is not None:
        pi = parse_pi(args.pi)
        for s in specs:
            s.suggested_pi = [sorted(pi.primes)]
    progress = None if args.quiet else (lambda msg: print(msg, file=sys.stderr, flush=True))
    cfg = RunConfig(checks=_check_names(args), seed=args.seed, progress=progress)
    report = run_corpus(specs, cfg)
    return render_report(report, args.format), 0 if report.ok else 1


# -- examples


def _example_32(args) -> tuple[dict, list[str]]:
    G = build_sl23_on_z3sq().to_group()
    T = character_table(G, seed=args.seed)
    b3, b2 = bcd_sets(T, PrimeSet.of(3))
    doc = {"group": T.name, "order": T.order, "cd": cd_set(T), "bcd_3": b3, "bcd_2": b2}
    lines = [
        f"{T.name}: order {T.order}",
        f"cd = {_setfmt(doc['cd'])}",
        f"Bcd_3 = {_setfmt(b3)}",
        f"Bcd_2 = {_setfmt(b2)}",
    ]
    return doc, lines


def _products(values) -> list[int]:
    return sorted({a * b for a, b in combinations_with_replacement(values, 2)})


def _example_31(args) -> tuple[dict, list[str]]:
    G = build_sl23_on_z3sq().to_group()
    T = character_table(G, seed=args.seed)
    b3, b2 = bcd_sets(T, PrimeSet.of(3))
    p2, p3 = _products(b2), _products(b3)
    targets = {t: {"bcd_2_product": t in p2, "bcd_3_product": t in p3} for t in (24, 48)}
    W = wreath_c2_table(T)
    theta = next(x for x in bpi_set(T, PrimeSet.of(3)) if x.degree == 8)
    eta = next(x for x in bpi_set(T, PrimeSet.of(2)) if x.degree == 3)
    a, b = sorted((theta.index, eta.index))
    chi = W[W.labels.index(f"ind({a},{b})")]
    doc = {
        "bcd_2": b2,
        "bcd_3": b3,
        "bcd_2_products": p2,
        "bcd_3_products": p3,
        "targets": {str(k): v for k, v in targets.items()},
        "wreath": {"name": W.name, "order": W.order, "classes": len(W), "cd": cd_set(W)},
        "induced": {"label": chi.label, "degree": chi.degree, "theta": theta.index, "eta": eta.index},
        "48_in_cd": 48 in cd_set(W),
    }
    lines = [f"Bcd_2 = {_setfmt(b2)}, Bcd_3 = {_setfmt(b3)}"]
    for t, v in targets.items():
        lines.append(f"{t}: product of two Bcd_2 degrees: {'yes' if v['bcd_2_product'] else 'no'}; "
                     f"product of two Bcd_3 degrees: {'yes' if v['bcd_3_product'] else 'no'}")
    lines.append(f"{W.name}: order {W.order}, {len(W)} classes, cd = {_setfmt(cd_set(W))}")
    lines.append(f"theta(1) = {theta.degree} in B_3, eta(1) = {eta.degree} in B_2, "
                 f"{chi.label} has degree {chi.degree}")
    lines.append(f"48 in cd: {'yes' if doc['48_in_cd'] else 'no'}")
    return doc, lines


def _example_ex1(args) -> tuple[dict, list[str]]:
    d8, f21 = build_dihedral(4).to_group(), build_frobenius(7, 3).to_group()
    TH, TK = character_table(d8, seed=args.seed), character_table(f21, seed=args.seed)
    TG = direct_product_table(TH, TK, name="D8xF21")
    W = wreath_c2_table(TG)
    pi = PrimeSet.of(2)
    theta = next(x for x in TH if x.degree > 1)
    eta = next(x for x in TK if x.degree > 1)
    left = TG.labels.index(f"{theta.index}x0")  # theta x 1_K
    right = TG.labels.index(f"0x{eta.index}")  # 1_H x eta
    a, b = sorted((left, right))
    chi = W[W.labels.index(f"ind({a},{b})")]
    bcd = bcd_sets(TG, pi)
    doc = {
        "group": TG.name,
        "pi": [2],
        "theta_degree": theta.degree,
        "eta_degree": eta.degree,
        "bcd_pi": bcd[0],
        "bcd_pi_prime": bcd[1],
        "wreath": {"name": W.name, "order": W.order, "classes": len(W)},
        "induced": {"label": chi.label, "degree": chi.degree,
                    "pi_part": pi.pi_part(chi.degree), "pi_prime_part": chi.degree // pi.pi_part(chi.degree)},
    }
    ind = doc["induced"]
    lines = [
        f"G = {TG.name}, pi = {{2}}, Bcd_pi(G) = {_setfmt(bcd[0])}, Bcd_pi'(G) = {_setfmt(bcd[1])}",
        f"theta(1) = {theta.degree}, eta(1) = {eta.degree}",
        f"{W.name}: order {W.order}, {len(W)} classes",
        f"{chi.label}: degree {ind['degree']} = 2*{theta.degree}*{eta.degree}, "
        f"pi-part {ind['pi_part']} > 2, pi'-part {ind['pi_prime_part']} > 1",
    ]
    return doc, lines


def cmd_example(args) -> tuple[str, int]:
    fn = {"paper-3.2": _example_32, "paper-3.1-arith": _example_31, "paper-ex1-arith": _example_ex1}
    if args.name not in fn:
        raise InputError(f"unknown example {args.name!r}; choose from {', '.join(EXAMPLES)}")
    doc, lines = fn[args.name](args)
    if args.format == "json":
        return dumps({"example": args.name, **doc}), 0
    return "\n".join(lines) + "\n", 0


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="builtin:NAME or a group JSON file")
    common.add_argument("--pi", help="comma-separated primes, e.g. 2,3")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", help="write the result here instead of stdout")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="bpilab", description="Character tables and B_pi sets of small groups.")
    ap.add_argument("--version", action="version", version=f"bpilab {__version__}")
    sub = ap.add_subparsers(dest="verb", required=True)
    sub.add_parser("table", parents=[common], help="character table")
    sub.add_parser("bpi", parents=[common], help="B_pi and pi-special sets")
    v = sub.add_parser("verify", parents=[common], help="run theorem checks on one group")
    v.add_argument("--check", action="append", help=f"check name or 'all' ({', '.join(CHECKS)})")
    v.add_argument("--p", type=int, help="prime for the Sylow checks")
    c = sub.add_parser("corpus-run", parents=[common], help="run checks over a corpus")
    c.add_argument("--corpus", help=f"corpus JSON file (default: ${CORPUS_ENV} or the builtin corpus)")
    c.add_argument("--check", action="append")
    c.add_argument("--quiet", action="store_true", help="no progress on stderr")
    e = sub.add_parser("example", parents=[common], help="reproduce a worked example")
    e.add_argument("--name", required=True, choices=EXAMPLES)
    return ap


VERBS = {
    "table": cmd_table,
    "bpi": cmd_bpi,
    "verify": cmd_verify,
    "corpus-run": cmd_corpus_run,
    "example": cmd_example,
}


def _execute(args) -> tuple[str, int]:
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if getattr(args, "p", None) is not None and args.p < 2:
        raise InputError("--p must be a prime")
    return VERBS[args.verb](args)


def run_command(argv: list[str] | None = None) -> tuple[str, int]:
    """Parse and execute; returns (rendered output, exit status)."""
    return _execute(build_parser().parse_args(argv))


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors exit 2, --help exits 0
        return int(exc.code or 0)
    try:
        out, status = _execute(args)
    except (InputError, GroupInputError, SpecError, BoundExceeded, FileNotFoundError, ValueError) as exc:
        print(f"bpilab: error: {exc}", file=sys.stderr)
        return 2
    except (NucleusError, TableError, ArithmeticError, RuntimeError) as exc:
        print(f"bpilab: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
