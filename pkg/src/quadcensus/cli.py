"""Command-line front end.

Subcommands: classify, count, charsum, sweep, selftest.  Exit codes:
0 success, 1 property failure, 2 input/validation error, 3 classifier
mismatch.  All outputs echo the run configuration in their header so runs
are reproducible from the artifact alone.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import field as field_mod
from .classify import (
    classify_algebraic,
    classify_geometric,
    classify_tangent_count,
)
from .counting import (
    QuadricPair,
    count_joint,
    indicator_identity_check,
    sweep,
)
from .field import FieldSpec, odd_prime_powers
from .forms import parse_form
from .projective import enumerate_points, normalize
from .reports import render_rows, row_record, summarize_by_q

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_INPUT = 2
EXIT_MISMATCH = 3


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="quadcensus",
        description="Classify and count points of P^(n-1)(F_q) relative to smooth quadrics.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(sp, forms=False):
        sp.add_argument("--p", type=int, help="field characteristic (odd prime)")
        sp.add_argument("--k", type=int, default=1, help="extension degree")
        sp.add_argument(
            "--modulus",
            help="comma-separated modulus coefficients, low degree first, monic",
        )
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--trials", type=int, default=20)
        sp.add_argument(
            "--workers",
            type=int,
            default=int(os.environ.get("QS_WORKERS", "1")),
            help="worker processes for point-chunked enumeration",
        )
        sp.add_argument("--output", choices=["csv", "json", "text"], default="text")
        sp.add_argument("--quick", action="store_true")
        sp.add_argument("--inject-char-fault", action="store_true", help=argparse.SUPPRESS)
        if forms:
            sp.add_argument("--form", help="'n q a_11 a_12 ... a_nn' upper-triangular")
            sp.add_argument("--form2", help="second form, same grammar")
            sp.add_argument(
                "--point",
                action="append",
                default=[],
                help="comma-separated coordinates; repeatable",
            )
            sp.add_argument("--all", action="store_true", help="run over every point")

    common(sub.add_parser("classify", help="classify points against one quadric"), forms=True)
    common(sub.add_parser("count", help="joint census for a pair of quadrics"), forms=True)
    common(sub.add_parser("charsum", help="character sums and identity check for a pair"), forms=True)
    sp = sub.add_parser("sweep", help="seeded random pair sweep across field orders")
    common(sp)
    sp.add_argument("--n", type=int, default=3, help="number of variables (odd)")
    sp.add_argument(
        "--qs",
        help="comma-separated field orders; default: odd prime powers 7..81",
    )
    common(sub.add_parser("selftest", help="run the built-in verification batteries"))
    return parser


def _field_from_args(args):
    if args.p is None:
        return None
    modulus = None
    if args.modulus:
        modulus = [int(c) for c in args.modulus.split(",")]
    return FieldSpec(args.p, args.k, modulus)


def _require_form(args, attr="form"):
    text = getattr(args, attr, None)
    if not text:
        raise ValueError(f"--{attr} is required for this subcommand")
    return parse_form(text, _field_from_args(args))


def _config_echo(args):
    skip = {"inject_char_fault"}
    return {
        key: value
        for key, value in sorted(vars(args).items())
        if key not in skip and value is not None
    }


def _fmt_point(pt):
    return "[" + ":".join(str(c) for c in pt) + "]"


def _cmd_classify(args):
    form = _require_form(args)
    f = form.field
    if args.all:
        points = enumerate_points(form.n, f)
    elif args.point:
        points = [
            normalize(f, [f.from_int(int(c)) for c in spec.split(",")])
            for spec in args.point
        ]
    else:
        raise ValueError("supply --point (repeatable) or --all")
    lines = []
    any_mismatch = False
    for pt in points:
        verdicts = [classify_algebraic(form, pt), classify_geometric(form, pt)]
        if form.n == 3:
            verdicts.append(classify_tangent_count(form, pt))
        mismatch = len({v.value for v in verdicts}) > 1
        any_mismatch = any_mismatch or mismatch
        lines.append((pt, [v.value for v in verdicts], mismatch))
    if args.output == "json":
        import json

        doc = {
            "config": _config_echo(args),
            "rows": [
                {"point": _fmt_point(pt), "verdicts": vs, "mismatch": m}
                for pt, vs, m in lines
            ],
        }
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        for key, value in _config_echo(args).items():
            sys.stdout.write(f"# {key}={value}\n")
        sep = "," if args.output == "csv" else " "
        for pt, vs, m in lines:
            cells = [_fmt_point(pt), *vs] + (["MISMATCH"] if m else [])
            sys.stdout.write(sep.join(cells) + "\n")
    return EXIT_MISMATCH if any_mismatch else EXIT_OK


def _pair_from_args(args):
    first = _require_form(args, "form")
    second = parse_form(args.form2, first.field) if args.form2 else None
    if second is None:
        raise ValueError("--form2 is required for this subcommand")
    return QuadricPair(first, second)


def _cmd_count(args):
    pair = _pair_from_args(args)
    joint = count_joint(pair, workers=args.workers, seed=args.seed)
    chars = indicator_identity_check(pair, workers=args.workers, joint=joint)
    rec = row_record(joint, chars)
    sys.stdout.write(render_rows([rec], args.output, config=_config_echo(args)))
    return EXIT_OK if chars.identity_holds else EXIT_PROPERTY


def _cmd_charsum(args):
    pair = _pair_from_args(args)
    joint = count_joint(pair, workers=args.workers, seed=args.seed)
    chars = indicator_identity_check(pair, workers=args.workers, joint=joint)
    rec = {
        "n": pair.n,
        "q": pair.q,
        "T11": chars.t11,
        "T12": chars.t12,
        "T21": chars.t21,
        "T22": chars.t22,
        "chi_A": chars.chi_a,
        "chi_B": chars.chi_b,
        "chi_AB": chars.chi_ab,
        "s_fg": chars.s_fg,
        "identity_holds": chars.identity_holds,
        "lemma32_rhs": chars.lemma32_rhs,
        "katz_rhs": chars.katz_rhs,
    }
    if args.output == "json":
        import json

        doc = {"config": _config_echo(args), "rows": [rec]}
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2, default=float) + "\n")
    else:
        for key, value in _config_echo(args).items():
            sys.stdout.write(f"# {key}={value}\n")
        if args.output == "csv":
            sys.stdout.write(",".join(rec.keys()) + "\n")
            sys.stdout.write(",".join(str(v) for v in rec.values()) + "\n")
        else:
            sys.stdout.write(
                " ".join(f"{key}={value}" for key, value in rec.items()) + "\n"
            )
    return EXIT_OK if chars.identity_holds else EXIT_PROPERTY


def _cmd_sweep(args):
    if args.qs:
        q_list = [int(q) for q in args.qs.split(",")]
    else:
        q_list = odd_prime_powers(7, 81)
    if args.quick:
        q_list = q_list[:3]
    rows = sweep(args.n, q_list, args.trials, args.seed, workers=args.workers)
    records = [row_record(joint, chars) for joint, chars in rows]
    summary = summarize_by_q(records)
    config = _config_echo(args)
    config["qs"] = ",".join(str(q) for q in q_list)
    sys.stdout.write(render_rows(records, args.output, config=config, summary=summary))
    failed = any(not rec["identity_holds"] for rec in records)
    return EXIT_PROPERTY if failed else EXIT_OK


def _cmd_selftest(args):
    from .selftest import run_selftest

    results = run_selftest(quick=args.quick)
    all_ok = True
    for name, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        sys.stdout.write(f"[{status}] {name}: {detail}\n")
        all_ok = all_ok and ok
    sys.stdout.write("selftest: " + ("all batteries passed\n" if all_ok else "FAILURES\n"))
    return EXIT_OK if all_ok else EXIT_PROPERTY


_COMMANDS = {
    "classify": _cmd_classify,
    "count": _cmd_count,
    "charsum": _cmd_charsum,
    "sweep": _cmd_sweep,
    "selftest": _cmd_selftest,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "inject_char_fault", False):
        field_mod._CHAR_FAULT = True
    try:
        return _COMMANDS[args.subcommand](args)
    except (ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    finally:
        field_mod._CHAR_FAULT = False


if __name__ == "__main__":
    sys.exit(main())
