"""loopcert command line: root data export, affine Weyl enumeration, lemma
verification sweeps, entirety certificates, the one-variable decay suite, and
the reproduce-all acceptance driver.

Config precedence: flags > --config file > environment (LOOPCERT_*) >
defaults.  Every report echoes its resolved config; reruns with the same
config and seed write byte-identical files (timing only with --timing).
Exit codes: 0 clean, 2 usage/parameter error, 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from fractions import Fraction as Q
from pathlib import Path

from . import acceptance
from . import convergence as conv
from . import decay
from . import inequalities as ineq
from . import weyl
from .cartan import RootSystemError, build_root_system_label
from .reports import Report, q_json, q_str, write_report

ENV_PREFIX = "LOOPCERT_"


class UsageError(Exception):
    pass


def _q(text: str) -> Q:
    try:
        return Q(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational: {text!r}") from exc


def _env_default(name: str, cast, fallback):
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return fallback
    return cast(raw)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="loopcert", description=__doc__)
    top.add_argument("--config", help="JSON file with default flag values")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=_env_default("seed", int, 20260808))
    common.add_argument("--prec", type=int, default=_env_default("prec", int, 256), help="precision bits")
    common.add_argument("--threads", type=int, default=_env_default("threads", int, 1))
    common.add_argument("--out", default=None, help="output path (reports: JSON)")
    common.add_argument("--timing", action="store_true", help="include wall time in the report (breaks byte-determinism)")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", parents=[common], help="emit the finite root datum as JSON")
    p.add_argument("--type", required=True, dest="type_label")

    pw = sub.add_parser("weyl", help="affine Weyl group tools")
    wsub = pw.add_subparsers(dest="weyl_command", required=True)
    pe = wsub.add_parser("enumerate", parents=[common], help="JSON lines of elements by length")
    pe.add_argument("--type", required=True, dest="type_label")
    pe.add_argument("--max-len", required=True, type=int)
    pe.add_argument("--kostant", action="store_true", help="restrict to minimal coset representatives")
    pc = wsub.add_parser("census", parents=[common], help="per-length counts as CSV")
    pc.add_argument("--type", required=True, dest="type_label")
    pc.add_argument("--max-len", required=True, type=int)

    p = sub.add_parser("verify", parents=[common], help="run a lemma/theorem verification sweep")
    p.add_argument("lemma", choices=["lemma22", "lemma23", "lemma351", "thm32", "cor34"])
    p.add_argument("--type", required=True, dest="type_label")
    p.add_argument("--max-len", required=True, type=int)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--r", type=_q, default=Q(1))
    p.add_argument("--t", type=_q, default=Q(1, 2))

    p = sub.add_parser("certify", parents=[common], help="entirety certificate over Kostant cells")
    p.add_argument("--type", required=True, dest="type_label")
    p.add_argument("--max-len", required=True, type=int)
    p.add_argument("--r", type=_q, default=Q(1))
    p.add_argument("--re-nu", type=_q, default=Q(0))
    p.add_argument("--nu0", type=_q, default=None, help="default: 2 h_dual + 1")
    p.add_argument("--c1", type=_q, default=Q(1))
    p.add_argument("--c2", type=_q, default=Q(1))
    p.add_argument("--c3", type=_q, default=Q(1))
    p.add_argument("--d", type=_q, default=None, dest="cap_d", help="default: smallest valid")
    p.add_argument("--big-d", type=_q, default=Q(1))
    p.add_argument("--csv", default=None, help="also write plot data (fixed column order)")

    pd = sub.add_parser("decay", help="one-variable decay estimates")
    dsub = pd.add_subparsers(dest="decay_command", required=True)
    pl = dsub.add_parser("l1", parents=[common], help="L1 norms of derivatives of the bump")
    pl.add_argument("--n", required=True, type=int)
    pf = dsub.add_parser("fourier", parents=[common], help="envelope decay fit of the transform")
    pf.add_argument("--range", required=True, help="r_min,r_max")
    pf.add_argument("--samples", type=int, default=8)
    pv = dsub.add_parser("convert", parents=[common], help="moment-to-pointwise conversion")
    pv.add_argument("--c", required=True, type=_q)
    pv.add_argument("--C", required=True, type=_q, dest="big_c")
    pv.add_argument("--y", required=True, type=_q)

    p = sub.add_parser("reproduce-all", parents=[common], help="run the acceptance suite")
    p.add_argument("--profile", choices=["small", "full"], default="small")
    p.add_argument("--out-dir", default=_env_default("out_dir", str, None))
    return top


def _apply_config_file(argv: list[str], parser: argparse.ArgumentParser) -> list[str]:
    """Insert config-file values as defaults: flags still win."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    path = argv[idx + 1]
    data = json.loads(Path(path).read_text())
    extra: list[str] = []
    for key, value in data.items():
        flag = "--" + key.replace("_", "-")
        if flag not in argv:
            extra.extend([flag, str(value)])
    return argv[: idx] + argv[idx + 2 :] + extra


def _config_echo(args: argparse.Namespace) -> dict:
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in ("command", "weyl_command", "decay_command", "config"):
            out[key] = value
        elif isinstance(value, Q):
            out[key] = q_str(value)
        else:
            out[key] = value
    return out


# ---------------------------------------------------------------------------
# subcommand bodies


def cmd_roots(args) -> Report:
    rs = build_root_system_label(args.type_label)
    results = {
        "type": rs.series,
        "rank": rs.rank,
        "cartan": [list(row) for row in rs.cartan.entries],
        "positive_roots": [list(r) for r in rs.positive_roots],
        "highest_root": list(rs.highest_root),
        "weights": [[q_json(c) for c in w] for w in rs.fundamental_weights],
        "coweights": [[q_json(c) for c in w] for w in rs.fundamental_coweights],
        "rho": [q_json(c) for c in rs.rho],
        "form": [[q_json(c) for c in row] for row in rs.form],
    }
    return Report("roots", _config_echo(args), results)


def cmd_weyl_enumerate(args) -> Report:
    rs = build_root_system_label(args.type_label)
    layers = weyl.enumerate_by_length(rs, args.max_len)
    lines = []
    for layer in layers:
        for w in layer:
            if args.kostant and not weyl.is_kostant(rs, w):
                continue
            lines.append(
                {
                    "tilde_matrix": [list(r) for r in w.tilde.matrix],
                    "b": list(w.b),
                    "length": w.length,
                    "word": list(w.word or ()),
                }
            )
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        with open(args.out, "w") as fh:
            for line in lines:
                fh.write(json.dumps(line, sort_keys=True) + "\n")
        args.out = None  # the JSONL file owns the path; envelope goes to stdout
    counts = [len(layer) for layer in layers]
    return Report("weyl_enumerate", _config_echo(args), {"counts": counts, "emitted": len(lines)})


def cmd_weyl_census(args) -> Report:
    rs = build_root_system_label(args.type_label)
    census = conv.growth_census(rs, args.max_len)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["length", "count_full", "count_kostant"])
            for length, (full, kost) in enumerate(zip(census["full"], census["kostant"])):
                writer.writerow([length, full, kost])
        args.out = None  # the CSV owns the path; envelope goes to stdout
    return Report("weyl_census", _config_echo(args), {"full": census["full"], "kostant": census["kostant"]})


def cmd_verify(args) -> Report:
    rs = build_root_system_label(args.type_label)
    rep = ineq.verify(rs, args.lemma, args.max_len, args.samples, args.seed, threads=args.threads)
    report = Report("verify", _config_echo(args), rep.to_results(), failures=list(rep.violations))
    return report


def cmd_certify(args) -> Report:
    rs = build_root_system_label(args.type_label)
    if args.nu0 is None or args.cap_d is None:
        params = conv.default_params(rs, r=args.r, re_nu=args.re_nu, big_d=args.big_d,
                                     c1=args.c1, c2=args.c2, c3=args.c3)
        if args.nu0 is not None or args.cap_d is not None:
            params = conv.CertificateParams(
                rs.label, args.r, args.re_nu,
                args.nu0 if args.nu0 is not None else params.nu0,
                args.c1, args.c2, args.c3,
                args.cap_d if args.cap_d is not None else params.cap_d,
                args.big_d,
            )
    else:
        params = conv.CertificateParams(rs.label, args.r, args.re_nu, args.nu0,
                                        args.c1, args.c2, args.c3, args.cap_d, args.big_d)
    try:
        params.validate(rs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    results = conv.certify(rs, params, args.max_len, prec=args.prec)
    failures = [] if results["verdict"] == "DECAYING" else [{"verdict": results["verdict"]}]
    if args.csv:
        Path(args.csv).parent.mkdir(parents=True, exist_ok=True)
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["length", "count", "max_log_term", "shell_sum", "partial_sum"])
            for shell in results["shells"]:
                writer.writerow([shell["length"], shell["count"], shell["max_log_term"],
                                 shell["shell_sum"], shell["partial_sum"]])
    return Report("certify", _config_echo(args), results, failures=failures)


def cmd_decay(args) -> Report:
    if args.decay_command == "l1":
        from mpmath import mp

        with mp.workprec(args.prec + 64):
            res = decay.l1_norm(args.n, args.prec)
            tele = decay.l1_norm_extrema(args.n, args.prec) if args.n >= 1 else None
            results = {
                "n": args.n,
                "ln_norm": mp.nstr(res["ln"], 30),
                "abs_err": mp.nstr(res["abs_err"], 5),
                "ln_norm_telescoping": None if tele is None else mp.nstr(tele, 30),
                "ratio_to_(2N)^2N": mp.nstr(res["ln"] - 2 * args.n * mp.log(2 * args.n), 20) if args.n else None,
            }
        return Report("decay_l1", _config_echo(args), results)
    if args.decay_command == "fourier":
        from mpmath import mp

        r_min, r_max = (float(x) for x in args.range.split(","))
        fit = decay.fourier_decay_fit(r_min, r_max, args.samples, args.prec)
        results = {
            "exponent_coeff": mp.nstr(fit["exponent_coeff"], 20),
            "power": fit["power"],
            "const": mp.nstr(fit["const"], 20),
            "residual": mp.nstr(fit["residual"], 5),
            "points": [[r, v] for r, v in fit["points"]],
            "target": mp.nstr(mp.sqrt(2 * mp.pi), 20),
        }
        return Report("decay_fourier", _config_echo(args), results)
    if args.decay_command == "convert":
        from mpmath import mp

        res = decay.moment_to_pointwise(args.c, args.big_c, args.y, args.prec)
        results = {
            "best_n": res["best_n"],
            "ln_bound": mp.nstr(res["ln_bound"], 20),
            "achieved_d": res["achieved_d"],
            "asymptote_ratio": mp.nstr(res["asymptote_ratio"], 20),
        }
        return Report("decay_convert", _config_echo(args), results)
    raise UsageError(f"unknown decay subcommand {args.decay_command!r}")


def cmd_reproduce(args) -> Report:
    results = acceptance.run_all(seed=args.seed, prec=args.prec, threads=args.threads, profile=args.profile)
    failures = [r for r in results if not r["pass"]]
    out_dir = args.out_dir
    if out_dir and not args.out:
        args.out = str(Path(out_dir) / "reproduce.json")
    report = Report("reproduce", _config_echo(args), {"criteria": results, "profile": args.profile}, failures=failures)
    return report


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config_file(argv, parser)
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    t0 = time.time()
    try:
        if args.command == "roots":
            report = cmd_roots(args)
        elif args.command == "weyl":
            report = cmd_weyl_enumerate(args) if args.weyl_command == "enumerate" else cmd_weyl_census(args)
        elif args.command == "verify":
            report = cmd_verify(args)
        elif args.command == "certify":
            report = cmd_certify(args)
        elif args.command == "decay":
            report = cmd_decay(args)
        elif args.command == "reproduce-all":
            report = cmd_reproduce(args)
        else:
            raise UsageError(f"unknown command {args.command!r}")
    except (UsageError, RootSystemError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (weyl.EnumerationLimit, weyl.ScanBoundError, ArithmeticError, AssertionError) as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return 3
    if args.timing:
        report.wall_time_s = time.time() - t0
    text = write_report(report, args.out)
    if not args.out:
        print(text, end="")
    else:
        print(f"{report.kind}: {'ok' if report.ok else 'FAILURES'} -> {args.out}")
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
