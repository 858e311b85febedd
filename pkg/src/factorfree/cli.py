"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 enumeration budget exhausted,
3 divergent series or no feasible beta, 4 a verified inequality failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .analytic import (
    DEFAULT_PRECISION,
    DEFAULT_TAIL_TOL,
    analytic_spectrum,
    build_condition_report,
    find_beta,
    pavlov_condition,
)
from .automaton import build_factor_automaton
from .certify import (
    enclose_growth,
    ratio_sequences,
    verify_circular_multiplicativity,
    verify_circular_ratio,
    verify_growth_ratio,
    verify_submult,
    verify_supermult,
)
from .core import (
    Alphabet,
    BudgetExceeded,
    DivergenceError,
    Explicit,
    FactorFreeError,
    LengthSpectrum,
    NoSolutionError,
    PowerFree,
    format_fraction,
    parse_word,
    to_fraction,
)
from .counting import count, count_tables
from .formats import (
    dumps,
    family_to_json,
    load_descriptor,
    ratio_rows_to_csv,
    table_to_csv,
    table_to_json,
)
from .tables import table1, table2

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_ANALYTIC, EXIT_FAIL = 0, 1, 2, 3, 4
DEFAULT_MAX_NODES = 10**8

NAMED_FAMILIES = {"squarefree": "2", "square-free": "2", "cubefree": "3", "cube-free": "3"}


class InputError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return to_fraction(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _family_options(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("family (choose one)")
    g.add_argument("--family", help="named family: squarefree or cubefree")
    g.add_argument("--power-free", type=_rational, metavar="P", help="p-power-free words, P rational > 1")
    g.add_argument("--factors", nargs="+", metavar="WORD", help="explicit forbidden factors, e.g. 02 012")
    g.add_argument("--one-per-length", type=int, metavar="I", help="one factor of each length >= I (analytic only)")
    g.add_argument("--lengths", nargs="+", type=int, metavar="L", help="finite multiset of factor lengths (analytic only)")
    g.add_argument("--family-json", metavar="FILE", help="JSON family descriptor")
    p.add_argument("--alphabet", type=int, metavar="K", help="alphabet size")


def _output_options(p: argparse.ArgumentParser, formats=("csv", "json"), default="csv") -> None:
    p.add_argument("--format", choices=formats, default=default)
    p.add_argument("--output", metavar="FILE", help="write here instead of stdout")


def _count_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int, default=1, help="worker processes for the enumeration")
    p.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES, help="enumeration budget")
    p.add_argument("--seed", type=int, help=argparse.SUPPRESS)


def _resolve_family(args):
    chosen = [
        name
        for name in ("family", "power_free", "factors", "one_per_length", "lengths", "family_json")
        if getattr(args, name, None) is not None
    ]
    if len(chosen) != 1:
        raise InputError("give exactly one family option (--family, --power-free, --factors, "
                         "--one-per-length, --lengths or --family-json)")
    alphabet = None
    if args.alphabet is not None:
        alphabet = Alphabet(args.alphabet)
    kind = chosen[0]
    if kind == "family":
        if args.family not in NAMED_FAMILIES:
            raise InputError(f"unknown family {args.family!r}; use squarefree or cubefree")
        family = PowerFree(NAMED_FAMILIES[args.family])
    elif kind == "power_free":
        family = PowerFree(args.power_free)
    elif kind == "factors":
        family = Explicit(parse_word(w, alphabet) for w in args.factors)
    elif kind == "one_per_length":
        family = LengthSpectrum.one_per_length(args.one_per_length)
    elif kind == "lengths":
        family = LengthSpectrum.finite(args.lengths)
    else:
        with open(args.family_json) as fh:
            family, json_alphabet = load_descriptor(json.load(fh))
        if alphabet is None:
            alphabet = json_alphabet
        elif json_alphabet is not None and json_alphabet != alphabet:
            raise InputError("--alphabet disagrees with the descriptor")
    if alphabet is None:
        raise InputError("alphabet size missing (--alphabet K)")
    if isinstance(family, Explicit):
        family.check_alphabet(alphabet)
    return family, alphabet


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _count(args, family, alphabet, max_n, circular=False):
    return count(family, alphabet, max_n, circular=circular, max_nodes=args.max_nodes, threads=args.threads)


# -- subcommands ---------------------------------------------------------------


def cmd_count(args) -> int:
    family, alphabet = _resolve_family(args)
    if args.max_n < 0:
        raise InputError("--max-n must be >= 0")
    if args.emit_dfa:
        if not isinstance(family, Explicit):
            raise InputError("--emit-dfa needs an explicit family")
        with open(args.emit_dfa, "w") as fh:
            fh.write(dumps(build_factor_automaton(family, alphabet).to_json()))
    table = _count(args, family, alphabet, args.max_n, circular=args.circular)
    _emit(args, table_to_csv(table) if args.format == "csv" else dumps(table_to_json(table)))
    return EXIT_OK


def _spectrum_extras(family, beta):
    if isinstance(family, PowerFree):
        return {}
    spectrum = analytic_spectrum(family)
    verdict = pavlov_condition(spectrum, beta)
    return {
        "pavlov": {
            "sum": verdict.sum.to_json(),
            "below_1_36": "undecided" if verdict.below_threshold is None else verdict.below_threshold,
            "caller_obligation": verdict.caller_obligation,
        }
    }


def cmd_analyze(args) -> int:
    family, alphabet = _resolve_family(args)
    k = alphabet.size
    try:
        if args.find_beta:
            beta = find_beta(family, k, precision=args.precision, tail_tol=args.tail_tol)
        elif args.beta is not None:
            beta = args.beta
        else:
            raise InputError("give --beta R or --find-beta")
        report = build_condition_report(family, k, beta, tail_tol=args.tail_tol)
        out = report.to_json()
        out.update(_spectrum_extras(family, beta))
    except (NoSolutionError, DivergenceError) as exc:
        out = {
            "family": family.describe(),
            "alphabet": k,
            "error": "no_solution" if isinstance(exc, NoSolutionError) else "divergence",
            "message": str(exc),
        }
        _emit(args, dumps(out))
        return EXIT_ANALYTIC
    _emit(args, dumps(out))
    return EXIT_OK


def cmd_enclose(args) -> int:
    family, alphabet = _resolve_family(args)
    n = args.n
    if n <= 0:
        raise InputError("--n must be positive")
    table = _count(args, family, alphabet, n)
    certificates = []
    c = None
    justification = []
    status = EXIT_OK
    if args.auto:
        if isinstance(family, LengthSpectrum) or not isinstance(family, (PowerFree, Explicit)):
            raise InputError("--auto needs an explicit or power-free family")
        try:
            beta = find_beta(family, alphabet.size)
            report = build_condition_report(family, alphabet.size, beta)
        except (NoSolutionError, DivergenceError) as exc:
            justification.append(f"no lower endpoint: {exc}")
            report = None
        if report is not None:
            certificates.append({"condition_report": report.to_json()})
            if report.supports_supermult:
                ratio = verify_growth_ratio(table, beta)
                supermult = verify_supermult(table, report.c.lo)
                certificates += [ratio.to_json(), supermult.to_json()]
                if ratio.passed and supermult.passed:
                    c = min(report.c.lo, Fraction(1))
                    justification.append(
                        f"C = {format_fraction(c)} from the analytic condition at beta = {format_fraction(beta)}; "
                        f"growth-ratio and supermultiplicativity re-checked on the table up to n = {n}"
                    )
                else:
                    justification.append("no lower endpoint: table contradicts the analytic certificate")
                    status = EXIT_FAIL
            else:
                justification.append("no lower endpoint: C is not certified positive")
    elif args.c is not None:
        if args.c <= 0:
            justification.append("no lower endpoint: C is not positive")
        else:
            check = verify_supermult(table, args.c)
            certificates.append(check.to_json())
            if check.passed:
                c = args.c
                justification.append("user-supplied C; supermultiplicativity re-checked on the table")
            else:
                justification.append("no lower endpoint: user-supplied C fails on the table")
                status = EXIT_FAIL
    else:
        justification.append("upper endpoint only (no C given)")
    justification.append("upper endpoint: submultiplicativity (Fekete)")
    enc = enclose_growth(table, c, n, args.root_tol, justification=tuple(justification))
    out = enc.to_json()
    out["certificates"] = certificates
    _emit(args, dumps(out))
    return status


def cmd_verify(args) -> int:
    family, alphabet = _resolve_family(args)
    which = args.which
    if which in ("ratio", "growth"):
        if args.beta is None:
            raise InputError("--which ratio needs --beta")
        report = verify_growth_ratio(_count(args, family, alphabet, args.max_n), args.beta)
    elif which == "supermult":
        if args.c is None:
            raise InputError("--which supermult needs --c")
        report = verify_supermult(_count(args, family, alphabet, args.max_n), args.c)
    elif which == "submult":
        report = verify_submult(_count(args, family, alphabet, args.max_n))
    elif which in ("circular", "circular-mult"):
        if args.c is None:
            raise InputError(f"--which {which} needs --c")
        linear, circular = count_tables(
            family, alphabet, args.max_n, max_nodes=args.max_nodes, threads=args.threads
        )
        if which == "circular":
            report = verify_circular_ratio(linear, circular, args.c)
        else:
            report = verify_circular_multiplicativity(circular, args.c)
        if args.ratios:
            with open(args.ratios, "w", newline="") as fh:
                fh.write(ratio_rows_to_csv(ratio_sequences(linear, circular)))
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(which)
    out = report.to_json()
    out["family"] = family_to_json(family)
    _emit(args, dumps(out))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_tables(args) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    bad = 0
    if args.which == "table1":
        writer.writerow(["i", "k", "beta", "omega", "c", "c_float", "printed_c", "status"])
        for cell in table1():
            if cell.beta is None:
                writer.writerow([cell.i, cell.k, "", "", "", "", "", cell.note])
            else:
                writer.writerow([
                    cell.i, cell.k, cell.beta, format_fraction(cell.omega), format_fraction(cell.c),
                    f"{float(cell.c):.6f}", cell.printed_c, cell.note,
                ])
            bad += not cell.ok
    else:
        writer.writerow(["k", "beta", "c", "c_float", "c_truncated", "printed_c", "status"])
        for cell in table2():
            writer.writerow([
                cell.k, format_fraction(cell.beta), format_fraction(cell.c), f"{float(cell.c):.6f}",
                cell.truncated, cell.printed, "ok" if cell.ok else "MISMATCH",
            ])
            bad += not cell.ok
    _emit(args, buf.getvalue())
    return EXIT_OK if not bad else EXIT_FAIL


# -- parser --------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the input-error code; argparse's own 2 means budget here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="factorfree",
        description="Exact counts and certified growth bounds for factor-avoiding languages.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count F-free, power-free or circular words")
    _family_options(p)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--circular", action="store_true")
    p.add_argument("--emit-dfa", metavar="FILE", help="also write the factor automaton (explicit families)")
    _output_options(p)
    _count_options(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("analyze", help="evaluate the growth condition and constant C")
    _family_options(p)
    p.add_argument("--beta", type=_rational)
    p.add_argument("--find-beta", action="store_true", help="maximise beta first")
    p.add_argument("--precision", type=_rational, default=DEFAULT_PRECISION)
    p.add_argument("--tail-tol", type=_rational, default=DEFAULT_TAIL_TOL)
    p.add_argument("--output", metavar="FILE")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("enclose", help="two-sided enclosure of the growth rate")
    _family_options(p)
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--c", type=_rational, help="supermultiplicativity constant")
    group.add_argument("--auto", action="store_true", help="derive C analytically and re-check it")
    p.add_argument("--root-tol", type=_rational, default=Fraction(1, 10**9))
    p.add_argument("--output", metavar="FILE")
    _count_options(p)
    p.set_defaults(func=cmd_enclose)

    p = sub.add_parser("verify", help="check a growth inequality on exact counts")
    _family_options(p)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--which", choices=["ratio", "supermult", "submult", "circular", "circular-mult"], required=True)
    p.add_argument("--beta", type=_rational)
    p.add_argument("--c", type=_rational)
    p.add_argument("--ratios", metavar="FILE", help="with circular checks: write the t,c_check,c_circ CSV")
    p.add_argument("--output", metavar="FILE")
    _count_options(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tables", help="recompute the published beta/C tables")
    p.add_argument("which", choices=["table1", "table2"])
    p.add_argument("--output", metavar="FILE")
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, ValueError, TypeError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FactorFreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
