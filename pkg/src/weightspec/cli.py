"""Command-line entry point.

Subcommands: ``spectrum``, ``mds``, ``expected``, ``rs``, ``ensemble``,
``fullrank``, ``verify``.  The field is given either as ``--q`` (any
prime power, factored automatically) or explicitly as ``--p``/``--m``.
Randomized subcommands require ``--seed``: reproducibility is part of
the contract, so there is no wall-clock default.

Exit codes: 0 success, 2 domain error (infeasible parameters, bad
input file, ...), 3 failed verification / ``--assert`` violation,
64 usage error.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import codes, ensemble, formulas, serialize
from .gf import field_create
from .linalg import mat_rank

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_ASSERT = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D102 - argparse hook
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_field_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=int, help="field order (prime power)")
    p.add_argument("--p", type=int, help="field characteristic (prime)")
    p.add_argument("--m", type=int, default=1, help="extension degree (default 1)")


def _resolve_field(args) -> tuple[int, int]:
    if args.q is not None:
        if args.p is not None:
            raise ValueError("give either --q or --p/--m, not both")
        return formulas.factor_prime_power(args.q)
    if args.p is None:
        raise ValueError("a field is required: --q or --p [--m]")
    return args.p, args.m


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--format", choices=("table", "json", "csv"), default="table",
        help="output format (default: table)",
    )
    p.add_argument("--out", help="write output to this path instead of stdout")


def _table(rows: list[tuple], header: tuple | None = None) -> str:
    data = [tuple(str(c) for c in r) for r in rows]
    if header:
        data.insert(0, tuple(str(c) for c in header))
    widths = [max(len(r[i]) for r in data) for i in range(len(data[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in data]
    if header:
        lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _emit(args, table: str, json_obj: dict, csv_text: str | None) -> None:
    if args.format == "json":
        text = serialize.json_stable(json_obj)
    elif args.format == "csv":
        if csv_text is None:
            raise ValueError("this subcommand has no CSV form")
        text = csv_text
    else:
        text = table
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[tuple], header: tuple) -> str:
    lines = [",".join(str(c) for c in header)]
    lines += [",".join(str(c) for c in row) for row in rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_mds(args) -> int:
    p, m = _resolve_field(args)
    q = p**m
    ms = formulas.mds_spectrum(args.n, args.k, q)
    rows = [(w, c) for w, c in enumerate(ms.counts)]
    table = _table(rows, header=("w", "lambda_w"))
    table += f"D = {ms.D}, sum(w>=1) = {sum(ms.counts[1:])} = q^k - 1\n"
    json_obj = {
        "n": ms.n, "k": ms.k, "q": ms.q, "D": ms.D,
        "counts": [str(c) for c in ms.counts],
    }
    _emit(args, table, json_obj, _csv(rows, ("w", "count")))
    return EXIT_OK


def _cmd_expected(args) -> int:
    p, m = _resolve_field(args)
    q = p**m
    es = formulas.expected_spectrum(args.n, args.k, q)
    rows = [
        (w, serialize.frac_str(es.mu[w]), f"{float(es.mu[w]):.6g}",
         serialize.frac_str(es.var_bound[w]))
        for w in range(1, args.n + 1)
    ]
    table = _table(rows, header=("w", "mu_w", "mu_w~", "var_bound"))
    json_obj = {
        "n": es.n, "k": es.k, "q": es.q,
        "mu": [serialize.frac_str(f) for f in es.mu],
        "var_bound": [serialize.frac_str(f) for f in es.var_bound],
    }
    _emit(args, table, json_obj, _csv(
        [(w, mu, vb) for w, mu, _, vb in rows], ("w", "mu", "var_bound")))
    return EXIT_OK


def _cmd_rs(args) -> int:
    p, m = _resolve_field(args)
    field = field_create(p, m)
    code = codes.reed_solomon_generator(field, args.n, args.k)
    text = serialize.matrix_text(code.G)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    code = serialize.read_code(args.gen)
    spec = codes.spectrum(code, strategy=args.strategy, cap=args.cap)
    rows = [(w, c) for w, c in enumerate(spec.counts)]
    q = code.field.q
    head = (
        f"[n={code.n}, k={code.k}, rank={code.rank}]_q={q}"
        f"  words={spec.total()}\n"
    )
    table = head + _table(rows, header=("w", "A_w"))
    json_obj = serialize.spectrum_json_dict(
        spec, q, extra={"k": code.k, "rank": code.rank}
    )
    _emit(args, table, json_obj, _csv(rows, ("w", "count")))
    return EXIT_OK


def _cmd_fullrank(args) -> int:
    p, m = _resolve_field(args)
    q = p**m
    value = formulas.full_rank_prob(args.n, args.k, q, args.variant)
    bound = 1 - Fraction(2, q ** (args.n - args.k))
    rows = [
        ("variant", args.variant),
        ("value", serialize.frac_str(value)),
        ("value~", f"{float(value):.8g}"),
        ("lower_bound 1-2/q^(n-k)", serialize.frac_str(bound)),
    ]
    json_obj = {
        "n": args.n, "k": args.k, "q": q,
        "variant": args.variant,
        "value": serialize.frac_str(value),
        "lower_bound": serialize.frac_str(bound),
    }
    if args.montecarlo:
        est = ensemble.full_rank_montecarlo(
            args.n, args.k, p, m, args.montecarlo, args.seed
        )
        exact = formulas.full_rank_prob(args.n, args.k, q, "exact")
        err = abs(est - exact)
        rows += [
            ("mc_samples", args.montecarlo),
            ("mc_fraction", serialize.frac_str(est)),
            ("mc_fraction~", f"{float(est):.8g}"),
            ("mc_abs_error_vs_exact", f"{float(err):.3g}"),
        ]
        json_obj["montecarlo"] = {
            "samples": args.montecarlo,
            "seed": str(args.seed),
            "fraction": serialize.frac_str(est),
            "abs_error_vs_exact": float(err),
        }
    _emit(args, _table(rows), json_obj, _csv(rows, ("key", "value")))
    return EXIT_OK


def _cmd_ensemble(args) -> int:
    p, m = _resolve_field(args)
    cfg = ensemble.EnsembleConfig(
        n=args.n, k=args.k, p=p, m=m,
        samples=args.samples,
        master_seed=args.seed,
        strategy=args.strategy,
        cap=args.cap,
    )
    try:
        summary, records = ensemble.run_ensemble(cfg, jobs=args.jobs)
    except ensemble.InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    json_obj = serialize.summary_json_dict(summary)
    if args.stamp:
        json_obj["generated_at"] = datetime.now(timezone.utc).isoformat()
    if args.summary:
        with open(args.summary, "w", encoding="utf-8") as fh:
            fh.write(serialize.json_stable(json_obj))
    if args.records:
        with open(args.records, "w", encoding="utf-8") as fh:
            fh.write(serialize.records_csv(records, cfg.n))
    fr = summary.fraction_full_rank
    rows = [
        ("samples", summary.samples),
        ("fraction_full_rank", f"{serialize.frac_str(fr)} ~ {float(fr):.6g}"),
        ("fraction_a1", serialize.frac_str(summary.fraction_a1)),
        ("fraction_a2", serialize.frac_str(summary.fraction_a2)),
        ("fraction_q_conditional", serialize.frac_str(summary.fraction_q_conditional)),
        ("fraction_q_joint", serialize.frac_str(summary.fraction_q_joint)),
        ("theorem_bound_raw", serialize.frac_str(summary.theorem_bound_raw)),
        ("theorem_bound_clamped", serialize.frac_str(summary.theorem_bound_clamped)),
        ("violations", "; ".join(summary.violations) or "none"),
    ]
    _emit(args, _table(rows), json_obj, None)
    if getattr(args, "assert_", False) and summary.violations:
        print(
            "assertion failure: " + "; ".join(summary.violations), file=sys.stderr
        )
        return EXIT_ASSERT
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.suite != "bounds":
        raise ValueError(f"unknown suite {args.suite!r}")
    report = formulas.bounds_sweep(nmax=args.nmax, qmax=args.qmax)
    rows = [(name, count, "ok") for name, count in sorted(report.checks.items())]
    table = _table(rows, header=("check", "evaluations", "status"))
    table += (
        f"total {report.total_checks()} checks, "
        f"{len(report.failures)} failures "
        f"(n <= {report.nmax}, q <= {report.qmax})\n"
    )
    if report.failures:
        table += "\n".join(report.failures[:50]) + "\n"
    json_obj = {
        "suite": "bounds",
        "nmax": report.nmax,
        "qmax": report.qmax,
        "checks": report.checks,
        "failures": report.failures,
    }
    _emit(args, table, json_obj, None)
    return EXIT_OK if report.ok else EXIT_ASSERT


# ---------------------------------------------------------------------------
# parser wiring
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(
        prog="weightspec",
        description="Exact weight spectra of linear codes over GF(q): "
        "closed forms, bounds and a deterministic Monte Carlo harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_mds = sub.add_parser("mds", help="closed-form MDS weight distribution")
    p_mds.add_argument("--n", type=int, required=True)
    p_mds.add_argument("--k", type=int, required=True)
    _add_field_args(p_mds)
    _add_output_args(p_mds)
    p_mds.set_defaults(func=_cmd_mds)

    p_exp = sub.add_parser("expected", help="mean spectrum of a random code")
    p_exp.add_argument("--n", type=int, required=True)
    p_exp.add_argument("--k", type=int, required=True)
    _add_field_args(p_exp)
    _add_output_args(p_exp)
    p_exp.set_defaults(func=_cmd_expected)

    p_rs = sub.add_parser("rs", help="write a Reed-Solomon generator matrix")
    p_rs.add_argument("--n", type=int, required=True)
    p_rs.add_argument("--k", type=int, required=True)
    _add_field_args(p_rs)
    p_rs.add_argument("--out", help="output path (default: stdout)")
    p_rs.set_defaults(func=_cmd_rs)

    p_spec = sub.add_parser("spectrum", help="exact spectrum of a stored code")
    p_spec.add_argument("--gen", required=True, help="generator matrix text file")
    p_spec.add_argument("--strategy", choices=("auto", "direct", "dual"), default="auto")
    p_spec.add_argument("--cap", type=int, default=codes.DEFAULT_ENUMERATION_CAP)
    _add_output_args(p_spec)
    p_spec.set_defaults(func=_cmd_spectrum)

    p_fr = sub.add_parser("fullrank", help="full-rank probability of a random matrix")
    p_fr.add_argument("--n", type=int, required=True)
    p_fr.add_argument("--k", type=int, required=True)
    _add_field_args(p_fr)
    p_fr.add_argument("--variant", choices=("exact", "paper"), default="exact")
    p_fr.add_argument("--montecarlo", type=int, metavar="M",
                      help="also estimate by M seeded samples")
    p_fr.add_argument("--seed", type=int, help="master seed for --montecarlo")
    _add_output_args(p_fr)
    p_fr.set_defaults(func=_cmd_fullrank)

    p_ens = sub.add_parser("ensemble", help="seeded Monte Carlo over random codes")
    p_ens.add_argument("--n", type=int, required=True)
    p_ens.add_argument("--k", type=int, required=True)
    _add_field_args(p_ens)
    p_ens.add_argument("--samples", type=int, required=True)
    p_ens.add_argument("--seed", type=int, required=True)
    p_ens.add_argument("--strategy", choices=("auto", "direct", "dual"), default="auto")
    p_ens.add_argument("--cap", type=int, default=codes.DEFAULT_ENUMERATION_CAP)
    p_ens.add_argument("--jobs", type=int, default=1)
    p_ens.add_argument("--summary", help="write summary JSON here")
    p_ens.add_argument("--records", help="write per-sample CSV here")
    p_ens.add_argument("--assert", dest="assert_", action="store_true",
                       help="exit 3 if any statistical invariant is violated")
    p_ens.add_argument("--stamp", action="store_true",
                       help="add a timestamp to the summary (breaks byte-stability)")
    _add_output_args(p_ens)
    p_ens.set_defaults(func=_cmd_ensemble)

    p_ver = sub.add_parser("verify", help="run a deterministic verification suite")
    p_ver.add_argument("--suite", required=True, choices=("bounds",))
    p_ver.add_argument("--nmax", type=int, default=12)
    p_ver.add_argument("--qmax", type=int, default=64)
    _add_output_args(p_ver)
    p_ver.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "fullrank" and args.montecarlo and args.seed is None:
        parser.error("--montecarlo requires --seed")
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
