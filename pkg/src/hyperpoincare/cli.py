"""Command-line interface.

Exit codes: 0 success, 1 usage or input error, 2 verification mismatch
(including "no denominator found" for ``fit``).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from typing import Iterable, List, Optional

from . import catalog as cat
from .cartan import cartan_matrix, determinant, load_algebra
from .errors import HyperPoincareError, Mismatch
from .factorization import fit_denominator, search_denominator
from .polyseries import affine_poincare, finite_poincare, finite_type, render_poly
from .weylgrowth import enumerate_growth

log = logging.getLogger("hyperpoincare")

FORMATS = ("plain", "jsonl", "csv")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _node_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated node numbers, got {text!r}")


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="plain")
    common.add_argument("--workers", type=_positive, default=os.cpu_count() or 1,
                        help="enumeration threads (1 = sequential baseline)")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    source = argparse.ArgumentParser(add_help=False)
    g = source.add_mutually_exclusive_group(required=True)
    g.add_argument("--algebra", help="built-in name: A4, B_5, affine:D4, H48")
    g.add_argument("--file", help="JSON algebra definition {name, rank, cartan, labels?}")

    p = _Parser(prog="hyperpoincare",
                description="Growth series of Weyl groups and their finite-denominator factorizations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("classify", parents=[common, source], help="finite / affine / indefinite, hyperbolic flag")

    s = sub.add_parser("growth", parents=[common, source], help="number of elements per length")
    s.add_argument("--order", type=_nonneg, default=None, help="truncation order (default: until finite group ends)")

    s = sub.add_parser("cosets", parents=[common, source], help="minimal coset representatives per length")
    s.add_argument("--J", type=_node_list, required=True, help="parabolic nodes, e.g. 1,2,3,4")
    s.add_argument("--order", type=_nonneg, required=True)

    s = sub.add_parser("poincare", parents=[common], help="closed-form finite or affine (Bott) series")
    s.add_argument("--type", required=True, dest="ftype", help="B5 or affine:D4")
    s.add_argument("--order", type=_nonneg, default=None, help="truncation (required for affine)")

    s = sub.add_parser("fit", parents=[common, source], help="denominator Q with P(H) = P(G)/Q")
    s.add_argument("--G", required=True, dest="gtype", help="finite type, e.g. B5")
    s.add_argument("--order", type=_nonneg, default=None, help="default: D + guard")
    s.add_argument("--guard", type=_positive, default=1)

    s = sub.add_parser("search", parents=[common, source], help="all finite types giving a polynomial Q")
    s.add_argument("--order", type=_nonneg, required=True)
    s.add_argument("--max-rank", type=_positive, default=5)
    s.add_argument("--guard", type=_positive, default=1)

    s = sub.add_parser("verify-catalog", parents=[common], help="check tabulated denominators")
    s.add_argument("--catalog-file", help="override file adding Cartan matrices")
    s.add_argument("--ids", type=_node_list, default=None, help="entries to check (default all)")
    s.add_argument("--order", type=_nonneg, default=None, help="default: D + guard per entry")
    s.add_argument("--guard", type=_positive, default=1)
    return p


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _cell(v):
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    if v is None:
        return ""
    return v


class Writer:
    """Emit records as plain text, JSON lines, or CSV with a header from the first record."""

    def __init__(self, fmt: str, out):
        self.fmt = fmt
        self.out = out
        self._csv = None

    def record(self, rec: dict, plain: Optional[str] = None) -> None:
        if self.fmt == "jsonl":
            self.out.write(json.dumps(rec, sort_keys=False) + "\n")
        elif self.fmt == "csv":
            if self._csv is None:
                self._csv = csv.DictWriter(self.out, fieldnames=list(rec), lineterminator="\n")
                self._csv.writeheader()
            self._csv.writerow({k: _cell(v) for k, v in rec.items()})
        else:
            self.out.write((plain if plain is not None else " ".join(f"{k}={v}" for k, v in rec.items())) + "\n")
        self.out.flush()


def _matrix(args):
    if args.file:
        return load_algebra(args.file)
    return cartan_matrix(args.algebra)


def _series_records(w: Writer, name, coeffs, counter="coefficient"):
    for k, c in enumerate(coeffs):
        w.record({"algebra": name, "level": k, counter: c}, plain=f"t^{k}\t{c}")


def _cmd_classify(args, w):
    m = _matrix(args)
    w.record({"algebra": m.name, "rank": m.rank, "class": m.kind, "hyperbolic": m.hyperbolic,
              "det": determinant(m.entries)},
             plain=m.kind + (" (hyperbolic)" if m.hyperbolic else ""))
    return 0


def _cmd_growth(args, w, J=None):
    m = _matrix(args)
    subsets = [J] if J is not None else []
    name = m.name or (args.file or "")

    def on_level(rec):
        log.info("level %d: %d elements (%.1fs)", rec["level"], rec["frontier_size"], rec["elapsed"])
        if J is None:
            # stream as each level finishes
            w.record({"algebra": name, "level": rec["level"], "coefficient": rec["coefficient"]},
                     plain=f"t^{rec['level']}\t{rec['coefficient']}")

    full, parts = enumerate_growth(m, args.order, subsets, workers=args.workers, checkpoint=on_level)
    if J is not None:
        s = parts[tuple(sorted(set(J)))]
        for k, c in enumerate(s.coeffs):
            w.record({"algebra": name, "level": k, "coefficient": c}, plain=f"t^{k}\t{c}")
    else:
        s = full
    if s.budget_exceeded:
        print(f"budget exceeded: series truncated at t^{s.truncation}", file=sys.stderr)
    if w.fmt == "plain":
        w.out.write(("complete" if s.complete else f"truncated at t^{s.truncation}") + "\n")
    return 0


def _cmd_cosets(args, w):
    return _cmd_growth(args, w, J=args.J)


def _cmd_poincare(args, w):
    t = args.ftype.strip()
    if t.lower().startswith("affine:"):
        if args.order is None:
            raise UsageError("--order is required for affine types")
        coeffs = affine_poincare(t.split(":", 1)[1], args.order).coeffs
    else:
        p = finite_poincare(t)
        coeffs = p.coeffs if args.order is None else p.to_series(args.order).coeffs
    _series_records(w, t, coeffs)
    return 0


def _fit_plain(rec):
    return (f"Q({rec['G']}) = ({render_poly(rec['Q'])})  degree {rec['observed_degree']}, "
            f"D = {rec['D']}, verified to t^{rec['verified_to']}, guard {rec['guard']}")


def _cmd_fit(args, w):
    m = _matrix(args)
    g = finite_type(args.gtype)
    T = g.positive_roots + args.guard if args.order is None else args.order
    full, _ = enumerate_growth(m, T, workers=args.workers)
    fit = fit_denominator(full.as_series(), g, args.guard)
    if fit is None:
        w.record({"algebra": m.name, "G": g.name, "Q": None, "observed_degree": None, "D": g.positive_roots,
                  "verified_to": full.truncation, "guard": args.guard},
                 plain=f"no polynomial denominator for {g} through t^{full.truncation}")
        return 2
    rec = fit.record(m.name)
    w.record(rec, plain=_fit_plain(rec))
    return 0


def _cmd_search(args, w):
    m = _matrix(args)
    full, _ = enumerate_growth(m, args.order, workers=args.workers)
    for fit in search_denominator(full.as_series(), args.max_rank, args.guard, workers=args.workers):
        rec = fit.record(m.name)
        w.record(rec, plain=_fit_plain(rec))
    return 0


def _cmd_verify(args, w):
    entries = cat.load_catalog(args.catalog_file)
    if args.ids is not None:
        bad = [i for i in args.ids if not 1 <= i <= len(entries)]
        if bad:
            raise UsageError(f"unknown catalog ids {bad}")
        entries = [entries[i - 1] for i in args.ids]
    code = 0
    for e in entries:
        r = cat.verify_entry(e, args.order, args.guard, workers=args.workers)
        log.info("entry %d: %s (%.1fs)", e.id, r.status, r.elapsed)
        rec = r.record()
        rec["algebra"] = e.label
        rec["G"] = e.finite_type.name
        plain = f"{r.status:<18}{e.display()}" + (f"  [{r.reason}]" if r.reason else "")
        w.record(rec, plain=plain)
        if r.status == cat.MISMATCH:
            code = 2
    return code


_COMMANDS = {
    "classify": _cmd_classify,
    "growth": _cmd_growth,
    "cosets": _cmd_cosets,
    "poincare": _cmd_poincare,
    "fit": _cmd_fit,
    "search": _cmd_search,
    "verify-catalog": _cmd_verify,
}


def run(argv: Optional[Iterable[str]] = None, stdout=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(message)s")
    w = Writer(args.format, stdout or sys.stdout)
    try:
        return _COMMANDS[args.command](args, w)
    except Mismatch as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (UsageError, HyperPoincareError, ValueError, OSError) as e:
        parser.print_usage(sys.stderr)
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
