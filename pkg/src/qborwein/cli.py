"""Command-line front end.

Exit codes: 0 verified, 1 violation, 2 inconclusive, 3 usage error.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import click

from .cache import CACHE_ENV, cache_from_option
from .dissection import (
    Dissection3,
    Status,
    interval_exponent,
    verify_finite_borwein,
    verify_series,
    worst_status,
)
from .qproducts import ProductSpec, build_product, jacobi_triple_product_check
from .region import DEFAULT_SYMBOLIC_ORDER, feasible_region
from .rings import (
    CRITICAL_EXPONENT,
    QuadraticElement,
    parse_rational,
    serialize_value,
)

USAGE_EXIT = 3
CONJECTURE_SAMPLES = ("23/100", "1/2", "1", "2", "5/2", "3")


class UsageProblem(click.UsageError):
    exit_code = USAGE_EXIT


@dataclass(frozen=True)
class RunConfig:
    order: int
    d_text: str = "1"
    ring: str | None = None
    bits: int = 128
    fmt: str = "text"
    cache_dir: str | None = None
    jobs: int = 1
    quad: str | None = None

    def __post_init__(self):
        if self.order < 0:
            raise UsageProblem("--order must be >= 0")
        if self.jobs < 1:
            raise UsageProblem("--jobs must be >= 1")
        if self.bits < 2:
            raise UsageProblem("--bits must be >= 2")

    def exponent(self):
        """The exponent as an exact value or an interval, per ``--ring``."""
        text = self.d_text.strip()
        if text.lower() in ("d", "formal"):
            raise UsageProblem("a formal exponent has no sign verdict; use the `region` command")
        if text == "critical":
            if self.ring not in (None, "quadratic"):
                raise UsageProblem("d=critical is (9-sqrt 73)/2 and requires the quadratic ring")
            value = CRITICAL_EXPONENT
        elif self.quad is not None:
            value = parse_quadratic(self.quad)
        else:
            try:
                value = parse_rational(text)
            except ValueError as exc:
                raise UsageProblem(str(exc)) from exc
        if self.ring == "interval":
            return interval_exponent(value, self.bits)
        if self.ring == "rational" and isinstance(value, QuadraticElement):
            raise UsageProblem("quadratic exponent given with --ring rational")
        if self.ring == "quadratic" and not isinstance(value, QuadraticElement):
            value = QuadraticElement(value, 0, 73)
        return value

    def spec(self, value) -> ProductSpec:
        return ProductSpec(N=self.order, d=value)


def parse_quadratic(text: str) -> QuadraticElement:
    try:
        a, b, D = (part.strip() for part in text.split(","))
        return QuadraticElement(parse_rational(a), parse_rational(b), int(D))
    except ValueError as exc:
        raise UsageProblem(f"--quad expects 'a,b,D' with square-free D, got {text!r}") from exc


def parse_domain(text: str) -> tuple[Fraction, Fraction]:
    try:
        lo, hi = text.split(":")
        lo, hi = parse_rational(lo), parse_rational(hi)
    except ValueError as exc:
        raise UsageProblem(f"--domain expects lo:hi, got {text!r}") from exc
    if lo > hi:
        raise UsageProblem("--domain lower end exceeds upper end")
    return lo, hi


def _product(cfg: RunConfig, value):
    spec = cfg.spec(value)
    cache = cache_from_option(cfg.cache_dir)
    if cache is None:
        return build_product(spec)
    return cache.get_or_build(spec, build_product)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _verify_one(cfg: RunConfig):
    value = cfg.exponent()
    report = verify_series(_product(cfg, value), cfg.spec(value).to_json())
    if cfg.ring == "interval" and report.status is Status.INCONCLUSIVE and cfg.bits < 1024:
        bumped = RunConfig(**{**cfg.__dict__, "bits": min(2 * cfg.bits, 1024)})
        value = bumped.exponent()
        report = verify_series(_product(bumped, value), bumped.spec(value).to_json())
    report.params["d_input"] = cfg.d_text if cfg.quad is None else cfg.quad
    return report


def _scan_worker(cfg: RunConfig) -> dict:
    return _verify_one(cfg).to_json()


class _Group(click.Group):
    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.UsageError as exc:
            exc.show()
            code = USAGE_EXIT
        except click.ClickException as exc:
            exc.show()
            code = USAGE_EXIT
        except click.Abort:
            click.echo("Aborted!", err=True)
            code = 1
        else:
            code = rv if isinstance(rv, int) else 0
        if standalone_mode:
            sys.exit(code)
        return code


def _common(fn):
    options = [
        click.option("--order", "-N", type=int, required=True, help="Truncation order (highest power of q)."),
        click.option("--d", "d_text", default="1", show_default=True, help="Exponent: p/q, decimal, or 'critical'."),
        click.option("--ring", type=click.Choice(["rational", "quadratic", "interval"]), default=None),
        click.option("--bits", type=int, default=128, show_default=True, help="Interval precision."),
        click.option("--quad", default=None, help="Explicit quadratic exponent 'a,b,D' = a + b*sqrt(D)."),
        click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="text"),
        click.option("--cache-dir", envvar=CACHE_ENV, default=None, help=f"Series cache (env {CACHE_ENV})."),
    ]
    for opt in reversed(options):
        fn = opt(fn)
    return fn


@click.group(cls=_Group)
def cli():
    """Fractional powers of (q, q^2; q^3)_inf and their 3-dissections."""


@cli.command()
@_common
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
def expand(order, d_text, ring, bits, quad, fmt, cache_dir, output):
    """Coefficients of (q, q^2; q^3)_inf^d up to q^N."""
    cfg = RunConfig(order, d_text, ring, bits, fmt, cache_dir, quad=quad)
    series = _product(cfg, cfg.exponent())
    if fmt == "json":
        text = _dump(series.to_json())
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "coefficient"])
        for t in range(len(series)):
            w.writerow([t, _cell(series, t)])
        text = buf.getvalue().rstrip("\n")
    else:
        text = f"order {series.order}, ring {series.ring.tag}\n[" + ", ".join(str(c) for c in series) + "]"
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)
    return 0


@cli.command()
@_common
def dissect(order, d_text, ring, bits, quad, fmt, cache_dir):
    """Components A, B, C of the (+, -, -) 3-dissection, as a table."""
    cfg = RunConfig(order, d_text, ring, bits, fmt, cache_dir, quad=quad)
    parts = Dissection3.of(_product(cfg, cfg.exponent()))
    comps = parts.components
    if fmt == "json":
        click.echo(_dump({
            "version": 1,
            "checked_order": parts.source_order,
            "components": {k: v.to_json() for k, v in comps.items()},
        }))
        return 0
    rows = max(len(v) for v in comps.values())
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "A", "B", "C"])
        for k in range(rows):
            w.writerow([k] + [_cell(comps[n], k) for n in "ABC"])
        click.echo(buf.getvalue().rstrip("\n"))
    else:
        click.echo(f"order {parts.source_order}")
        click.echo(f"{'k':>4}  {'A':>20}  {'B':>20}  {'C':>20}")
        for k in range(rows):
            click.echo(f"{k:>4}  " + "  ".join(f"{_cell(comps[n], k):>20}" for n in "ABC"))
    return 0


def _cell(part, k) -> str:
    if k >= len(part):
        return ""
    v = serialize_value(part[k])
    return v if isinstance(v, str) else str(part[k])


def _emit_report(report, fmt):
    if fmt == "json":
        click.echo(_dump(report.to_json()))
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["component", "first_violation", "witness"])
        for name, v in report.to_json()["components"].items():
            wit = v["witness"]
            w.writerow([name, "" if v["first_violation"] is None else v["first_violation"],
                        "" if wit is None else (wit if isinstance(wit, str) else json.dumps(wit))])
        click.echo(buf.getvalue().rstrip("\n"))
    else:
        click.echo(report.summary())
        if report.research_finding:
            click.echo("RESEARCH FINDING: violation of the squared (second) dissection; see the JSON report")


@cli.command()
@_common
def verify(order, d_text, ring, bits, quad, fmt, cache_dir):
    """Check nonnegativity of A, B, C for one exponent."""
    cfg = RunConfig(order, d_text, ring, bits, fmt, cache_dir, quad=quad)
    report = _verify_one(cfg)
    _emit_report(report, fmt)
    return report.exit_code


@cli.command()
@click.option("--n", "n", type=int, required=True, help="Number of factor pairs.")
@click.option("--squared", is_flag=True, help="Square the product first.")
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="text")
def finite(n, squared, fmt):
    """Dissect and verify the finite product (q, q^2; q^3)_n (optionally squared)."""
    if n < 0:
        raise UsageProblem("--n must be >= 0")
    report = verify_finite_borwein(n, squared)
    _emit_report(report, fmt)
    return report.exit_code


@cli.command()
@click.option("--order", "-N", type=int, default=DEFAULT_SYMBOLIC_ORDER, show_default=True)
@click.option("--domain", default="0:4", show_default=True, help="d-range lo:hi.")
@click.option("--samples", default=",".join(CONJECTURE_SAMPLES), show_default=True,
              help="Comma-separated d values the region is expected to contain.")
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="text")
def region(order, domain, samples, fmt):
    """Exact region of exponents d where every coefficient up to q^N has the right sign."""
    if order < 1:
        raise UsageProblem("--order must be >= 1")
    lo, hi = parse_domain(domain)
    try:
        points = [parse_rational(s) for s in samples.split(",") if s.strip()]
    except ValueError as exc:
        raise UsageProblem(str(exc)) from exc
    reg = feasible_region(order, (lo, hi))
    checks = {str(p): reg.contains(p) for p in points if lo <= p <= hi}
    missing = [p for p, ok in checks.items() if not ok]
    if fmt == "json":
        out = reg.to_json()
        out["samples"] = checks
        click.echo(_dump(out))
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lo", "hi", "lo_approx", "hi_approx"])
        for a, b in reg.intervals:
            w.writerow([str(a), str(b), f"{float(a):.15g}", f"{float(b):.15g}"])
        click.echo(buf.getvalue().rstrip("\n"))
    else:
        click.echo(reg.summary())
        for label, ts in reg.binding().items():
            click.echo(f"  endpoint {label}: binding t = {ts}")
        gap = reg.gap_report()
        click.echo(f"  gap (1, 2) fully feasible: {gap['fully_feasible']}")
    if missing:
        click.echo(
            "POTENTIAL COUNTEREXAMPLE: region excludes " + ", ".join(missing)
            + f" at order {order}; constraints: "
            + json.dumps({f"t={t}": str(p) for t, p in enumerate(reg.constraints, 1)}),
            err=True,
        )
        return 1
    return 0


def _grid_values(grid: str) -> list[str]:
    if ":" in grid:
        try:
            lo, hi, count = grid.split(":")
            lo, hi, count = parse_rational(lo), parse_rational(hi), int(count)
        except ValueError as exc:
            raise UsageProblem(f"--grid expects lo:hi:count, got {grid!r}") from exc
        if count < 1:
            raise UsageProblem("--grid count must be >= 1")
        if count == 1:
            return [str(lo)]
        return [str(lo + (hi - lo) * Fraction(i, count - 1)) for i in range(count)]
    return [s.strip() for s in grid.split(",") if s.strip()]


@cli.command()
@click.option("--order", "-N", type=int, required=True)
@click.option("--d", "d_list", multiple=True, help="Exponent (repeatable).")
@click.option("--grid", default=None, help="Comma list 'a,b,c' or 'lo:hi:count'.")
@click.option("--ring", type=click.Choice(["rational", "quadratic", "interval"]), default=None)
@click.option("--bits", type=int, default=128, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="text")
@click.option("--cache-dir", envvar=CACHE_ENV, default=None)
@click.option("--jobs", type=int, default=1, show_default=True)
def scan(order, d_list, grid, ring, bits, fmt, cache_dir, jobs):
    """Verify many exponents; exit code is the worst status."""
    values = list(d_list) + (_grid_values(grid) if grid else [])
    if not values:
        raise UsageProblem("scan needs at least one --d or a --grid")
    configs = [RunConfig(order, v, ring, bits, fmt, cache_dir, jobs) for v in values]
    for c in configs:
        c.exponent()  # surface bad input before any work starts
    if jobs > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(configs))) as pool:
            reports = list(pool.map(_scan_worker, configs))
    else:
        reports = [_scan_worker(c) for c in configs]
    status = worst_status(Status(r["status"]) for r in reports)
    if fmt == "json":
        click.echo(_dump({"version": 1, "status": status.value, "checked_order": order, "results": reports}))
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["d", "status", "A", "B", "C"])
        for v, r in zip(values, reports):
            w.writerow([v, r["status"]] + [
                "" if r["components"][n]["first_violation"] is None else r["components"][n]["first_violation"]
                for n in "ABC"
            ])
        click.echo(buf.getvalue().rstrip("\n"))
    else:
        for v, r in zip(values, reports):
            bad = [f"{n}[{c['first_violation']}]" for n, c in r["components"].items()
                   if c["first_violation"] is not None]
            click.echo(f"d={v}: {r['status']}" + (f" at {', '.join(bad)}" if bad else ""))
        click.echo(f"overall: {status.value} (order {order})")
    return status.exit_code


@cli.command()
@click.option("--order", "-N", type=int, required=True)
@click.option("--K", "K", type=int, default=None, help="Summation bound (default: smallest valid).")
@click.option("--z", "z", type=click.Choice(["1", "-1", "both"]), default="both")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def jtp(order, K, z, fmt):
    """Check the Jacobi triple product at z = 1 and/or z = -1."""
    if order < 0:
        raise UsageProblem("--order must be >= 0")
    if K is None:
        K = math.isqrt(order)
    zs = (1, -1) if z == "both" else (int(z),)
    try:
        checks = [jacobi_triple_product_check(order, K, zz) for zz in zs]
    except ValueError as exc:
        raise UsageProblem(str(exc)) from exc
    if fmt == "json":
        click.echo(_dump([c.to_json() for c in checks]))
    else:
        for c in checks:
            state = "holds" if c.passed else f"FAILS at q^{c.first_mismatch}"
            click.echo(f"z={c.z}: identity {state} to order {c.order}")
    return 0 if all(c.passed for c in checks) else 1


def main():
    cli()


if __name__ == "__main__":
    main()
