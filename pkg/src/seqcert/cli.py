"""Command line front end: ``seqcert {gen,check,asym,bounds,reproduce}``.

Exit codes: 0 every claim holds, 1 a claim failed, 2 usage or input error,
3 a quantity stayed undecided at the maximum precision.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import acceptance, asymptotics as asy, bounds
from .comparator import Claim, check
from .interval import IntervalValue
from .io import (CacheError, Report, bound_report, cache_filename, certificate_report,
                 emit_report, load_window, save_window)
from .sequences import Family, SequenceId, parse_exponents, value, window

log = logging.getLogger("seqcert")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3
CACHE_ENV = "SEQCERT_CACHE_DIR"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    precision_bits: int = 128
    max_precision_bits: int = 512
    fmt: str = "json"
    cache_dir: Path = Path(".seqcert-cache")

    def __post_init__(self):
        if self.precision_bits > self.max_precision_bits:
            raise UsageError("--precision must not exceed --max-precision")
        if self.precision_bits < 32:
            raise UsageError("--precision must be at least 32 bits")

    @property
    def schedule(self) -> tuple[int, ...]:
        steps, p = [], self.precision_bits
        while p < self.max_precision_bits:
            steps.append(p)
            p *= 2
        steps.append(self.max_precision_bits)
        return tuple(steps)


def _config(args) -> CliConfig:
    cache = getattr(args, "cache_dir", None) or os.environ.get(CACHE_ENV) or ".seqcert-cache"
    return CliConfig(
        precision_bits=getattr(args, "precision", 128),
        max_precision_bits=getattr(args, "max_precision", 512),
        fmt=getattr(args, "format", "json"),
        cache_dir=Path(cache),
    )


def _sequence(args) -> SequenceId:
    try:
        fam = Family.from_token(args.family)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if fam is Family.S_FAMILY:
        if not args.r:
            raise UsageError("--family sfam needs --r (comma-separated exponents)")
        try:
            return SequenceId(fam, parse_exponents(args.r))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if getattr(args, "r", None):
        raise UsageError(f"--r only applies to sfam, not {fam.token}")
    return SequenceId(fam)


def _range(lo: int, hi: int) -> tuple[int, int]:
    if hi < lo:
        raise UsageError(f"empty range [{lo}, {hi}]")
    return lo, hi


def _write(data: bytes, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_bytes(data)
    else:
        sys.stdout.write(data.decode("utf-8"))


# --- subcommands -----------------------------------------------------------------

def cmd_gen(args) -> int:
    seq = _sequence(args)
    cfg = _config(args)
    start = seq.first_index if args.from_ is None else args.from_
    lo, hi = _range(start, args.to)
    if lo < seq.first_index:
        raise UsageError(f"{seq} starts at index {seq.first_index}")
    win = window(seq, lo, hi - lo + 1)
    out = Path(args.out) if args.out else cfg.cache_dir / cache_filename(seq)
    save_window(out, win)
    print(" ".join(str(v) for v in win.values))
    print(f"wrote {len(win)} values to {out}", file=sys.stderr)
    return EXIT_OK


def cmd_check(args) -> int:
    seq = _sequence(args)
    cfg = _config(args)
    claim = Claim.from_token(args.claim)
    lo, hi = _range(args.from_, args.to)
    cert = check(seq, claim, (lo, hi), schedule=cfg.schedule)
    meta = {"precision_schedule": list(cfg.schedule)}
    _write(emit_report(certificate_report(cert, meta), cfg.fmt, with_metadata=args.with_metadata), args.out)
    summary = f"{seq} {claim.value} [{lo},{hi}]: all_hold={cert.all_hold}"
    if not cert.all_hold:
        summary += f" first_failure={cert.first_failure}"
    summary += f" observed_start={cert.observed_start}"
    print(summary, file=sys.stderr)
    return EXIT_OK if cert.all_hold else EXIT_FAIL


def _n_list(text: str) -> list[int]:
    try:
        ns = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise UsageError(f"--n expects comma-separated integers, got {text!r}") from None
    if any(n < 1 for n in ns):
        raise UsageError("--n values must be positive")
    return ns


def cmd_asym(args) -> int:
    cfg = _config(args)
    ns = _n_list(args.n)
    rows = []
    if args.r:
        try:
            r = parse_exponents(args.r)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        model = asy.solve_lambda(r, args.tolerance, schedule=cfg.schedule)
        seq = SequenceId.sfam(*r)
        print(f"r={','.join(map(str, r))}: lambda={_show(model.lam)} mu={_show(model.mu)} "
              f"nu={_show(model.nu)} residual<={float(model.residual):.3e}", file=sys.stderr)
        for n in ns:
            approx = asy.leading_term(model, n)
            exact = value(seq, n)
            rows.append({"sequence": str(seq), "n": n, "exact": exact, "approx": approx,
                         "rel_err": asy.relative_error(exact, approx), "terms": 0})
        meta = {"lambda": model.lam, "mu": model.mu, "nu": model.nu, "residual": model.residual,
                "precision_bits": model.precision_bits}
    elif args.family:
        try:
            spec = asy.expansion_for(args.family)
        except ValueError:
            raise UsageError("asym --family takes motzkin, schroder or trinomial") from None
        terms = len(spec.correction_coeffs) if args.terms is None else args.terms
        for n in ns:
            try:
                approx = asy.evaluate_expansion(spec, n, terms, cfg.precision_bits)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            exact = spec.exact(n)
            rows.append({"sequence": spec.family.value, "n": n, "exact": exact, "approx": approx,
                         "rel_err": asy.relative_error(exact, approx), "terms": terms})
        meta = {"growth_base": str(spec.growth_base), "prefactor": str(spec.prefactor),
                "coefficients": [str(c) for c in spec.correction_coeffs[:terms]],
                "index_shift": spec.index_shift}
    else:
        raise UsageError("asym needs --r or --family")
    for row in rows:
        print(f"n={row['n']} rel_err={float(row['rel_err'].mid):.6e}", file=sys.stderr)
    _write(emit_report(Report("asym_table", rows, meta), cfg.fmt, with_metadata=args.with_metadata), args.out)
    return EXIT_OK


def _show(iv: IntervalValue) -> str:
    return f"{float(iv.mid):.15g}(+/-{float(iv.width) / 2:.1e})"


BOUND_CHECKS = ("delta1", "delta2", "stirling", "eta", "consistency", "elementary")


def cmd_bounds(args) -> int:
    cfg = _config(args)
    which, kind = args.which, args.kind
    prec = cfg.precision_bits
    if which == "elementary":
        lo, hi = _range(1 if args.from_ is None else args.from_, args.to)
        xs = [Fraction(i, 16) for i in range(9)]
        results = bounds.elementary_inequalities(xs, range(lo, hi + 1), precision_bits=prec)
    else:
        default_lo = {"delta1": 3, "delta2": 4, "consistency": 4}.get(which, 1)
        lo, hi = _range(default_lo if args.from_ is None else args.from_, args.to)
        ns = range(lo, hi + 1)
        if which == "delta1":
            results = [bounds.delta1_lower_bound(n, kind, prec) for n in ns]
        elif which == "delta2":
            results = [bounds.delta2_upper_bound(n, kind, prec) for n in ns]
        elif which == "stirling":
            results = [bounds.stirling_theta(n, prec) for n in ns]
        elif which == "eta":
            results = [bounds.eta_bound(kind, n, prec) for n in ns]
        else:
            results = [bounds.delta_consistency(kind, n, prec) for n in ns]
    report = bound_report(results, {"which": which, "kind": kind, "precision_bits": prec})
    _write(emit_report(report, cfg.fmt, with_metadata=args.with_metadata), args.out)
    bad = [r.index for r in results if not r.holds]
    print(f"{which}: {len(results) - len(bad)}/{len(results)} hold"
          + (f"; failures at {[str(b) for b in bad[:10]]}" if bad else ""), file=sys.stderr)
    return EXIT_OK if not bad else EXIT_FAIL


CACHED_SEQUENCES = (
    acceptance.BERNOULLI, acceptance.TANGENT, acceptance.EULER, acceptance.MOTZKIN,
    acceptance.SCHROEDER, acceptance.TRINOMIAL,
    *(SequenceId.sfam(*r) for r in acceptance.S_VECTORS),
)


def _sync_cache(cache_dir: Path, upto: int) -> None:
    """Validate existing cache files against the generators, writing missing ones."""
    for seq in CACHED_SEQUENCES:
        path = cache_dir / cache_filename(seq)
        if path.exists():
            try:
                load_window(path, verify=True)
            except CacheError as exc:
                raise CacheError(f"{path}: {exc}") from None
        else:
            save_window(path, window(seq, seq.first_index, upto - seq.first_index + 1))


def _acceptance_report(results, max_n) -> Report:
    rows = [{"criterion": r.number, "title": r.title, "passed": r.passed, "detail": r.detail}
            for r in results]
    return Report("acceptance", rows, {"max_n": max_n, "all_passed": all(r.passed for r in results)})


def cmd_reproduce(args) -> int:
    cfg = _config(args)
    _sync_cache(cfg.cache_dir, acceptance.ORACLE_MAX)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    results = acceptance.run_all(args.max_n)
    first = emit_report(_acceptance_report(results, args.max_n), cfg.fmt)
    for r in results:
        print(r.line())
    # determinism: a second independent pass must render the same bytes
    again = emit_report(_acceptance_report(acceptance.run_all(args.max_n), args.max_n), cfg.fmt)
    same = first == again
    det = acceptance.CriterionResult(10, "reproduce output is byte-identical across runs", same,
                                     "identical" if same else "second pass differs")
    print(det.line())
    results.append(det)
    report = _acceptance_report(results, args.max_n)
    path = out_dir / f"acceptance.{cfg.fmt}"
    path.write_bytes(emit_report(report, cfg.fmt, with_metadata=args.with_metadata))
    print(f"report written to {path}", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# --- parser -------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, *, report: bool = True) -> None:
    p.add_argument("--precision", type=int, default=128, help="starting interval precision in bits")
    p.add_argument("--max-precision", type=int, default=512, help="escalation ceiling in bits")
    p.add_argument("--cache-dir", help=f"cache directory (default ${CACHE_ENV} or ./.seqcert-cache)")
    if report:
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--with-metadata", action="store_true", help="add a timestamp to report metadata")


def build_parser() -> argparse.ArgumentParser:
    families = ", ".join(f.token for f in Family)
    claims = ", ".join(c.value for c in Claim)
    parser = argparse.ArgumentParser(
        prog="seqcert",
        description="Exact sequence generation and certified monotonicity/bound checks.",
        epilog=f"families: {families}\nclaims: {claims}",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a window of exact values into a cache file")
    p.add_argument("--family", required=True, help=families)
    p.add_argument("--r", help="exponent vector for sfam, e.g. 2,2")
    p.add_argument("--from", dest="from_", type=int)
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--out", help="cache file path (default: <cache-dir>/<family>.txt)")
    p.add_argument("--cache-dir")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="certify a root/ratio monotonicity claim over a range")
    p.add_argument("--family", required=True, help=families)
    p.add_argument("--r")
    p.add_argument("--claim", required=True, choices=[c.value for c in Claim])
    p.add_argument("--from", dest="from_", type=int, default=1)
    p.add_argument("--to", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("asym", help="compare exact values with asymptotic approximations")
    p.add_argument("--r", help="exponent vector for the binomial-power sum")
    p.add_argument("--family", choices=[f.value for f in asy.ExpansionFamily])
    p.add_argument("--n", required=True, help="comma-separated indices")
    p.add_argument("--terms", type=int, help="number of correction terms (default: all)")
    p.add_argument("--tolerance", type=float, default=asy.DEFAULT_TOLERANCE)
    _common(p)
    p.set_defaults(func=cmd_asym)

    p = sub.add_parser("bounds", help="verify an explicit inequality over a range")
    p.add_argument("--which", required=True, choices=BOUND_CHECKS)
    p.add_argument("--kind", choices=bounds.KINDS, default="bernoulli")
    p.add_argument("--from", dest="from_", type=int)
    p.add_argument("--to", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("reproduce", help="run every acceptance criterion and write a consolidated report")
    p.add_argument("--max-n", type=int, help="cap the index grids (default: full criteria ranges)")
    p.add_argument("--out-dir", default="reports")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--with-metadata", action="store_true")
    p.add_argument("--cache-dir")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, CacheError) as exc:
        print(f"seqcert {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (bounds.UndecidedError, asy.SolverError) as exc:
        print(f"seqcert {args.command}: undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except ValueError as exc:
        print(f"seqcert {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
