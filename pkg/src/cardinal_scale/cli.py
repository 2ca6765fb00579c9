"""Command-line entry points.

Exit codes: 0 success / all checks pass, 1 domain-level failure
(axiom violations, infeasible model, construction failure), 2 usage or
data error (bad flags, malformed documents, oversize models).
"""

from __future__ import annotations

import json
import logging
import os
import random
import sys
from pathlib import Path

import click

from .construct import (
    UtilityFn,
    affine_fit,
    construct_utility,
    quotient_representative,
    verify_representation,
)
from .errors import (
    BadConfig,
    CardinalScaleError,
    ModelTooLarge,
    NonMonotoneGenerator,
    SchemaError,
)
from .feasibility import describe_constraint, solve_additive_representation
from .models import (
    exhaustive_check,
    ingest_finite_model,
    ingest_utilities_csv,
    make_oracle,
    parse_generator,
)
from .orders import (
    Alt,
    Ordering3,
    check_A1,
    check_A1prime,
    check_A2,
    check_A3_approx,
    check_order_axioms,
)

_USAGE_ERRORS = (BadConfig, SchemaError, ModelTooLarge, NonMonotoneGenerator)


def _configure_logging() -> None:
    level_name = os.environ.get("CARDINAL_SCALE_LOG", "error").strip().lower()
    level = {
        "error": logging.ERROR,
        "info": logging.INFO,
        "debug": logging.DEBUG,
    }.get(level_name, logging.ERROR)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _run(body) -> None:
    try:
        code = body()
    except _USAGE_ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except CardinalScaleError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    sys.exit(code or 0)


def _parse_domain(text: str | None) -> tuple[float, float] | None:
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 2:
        raise BadConfig(f"--domain expects lo,hi: {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise BadConfig(f"--domain expects numbers: {text!r}") from None
    return lo, hi


def _load_model(path: str):
    text = Path(path).read_text(encoding="utf-8")
    if path.endswith(".csv"):
        return ingest_utilities_csv(text)
    return ingest_finite_model(text)


def _oracle_from_flags(gen_text: str, domain_text: str | None, eps: float):
    spec = parse_generator(gen_text, domain=_parse_domain(domain_text), eps_indiff=eps)
    return spec, make_oracle(spec)


def _default_anchors(oracle, a0: float | None, a1: float | None) -> tuple[Alt, Alt]:
    anchor0 = Alt(a0 if a0 is not None else oracle.lo)
    anchor1 = Alt(a1 if a1 is not None else oracle.hi)
    if a0 is not None and a1 is not None:
        return anchor0, anchor1
    if oracle.compare(anchor1, anchor0) is Ordering3.GREATER:
        return anchor0, anchor1
    if a0 is None and a1 is None:
        # Endpoints tie; try class representatives before giving up.
        anchor0 = quotient_representative(oracle, Alt(oracle.lo))
        anchor1 = quotient_representative(oracle, Alt(oracle.hi))
        if oracle.compare(anchor1, anchor0) is Ordering3.GREATER:
            return anchor0, anchor1
    raise BadConfig(
        "default anchors are not strictly ordered; pass --a0 and --a1"
    )


def _print_reports(reports) -> bool:
    all_passed = True
    for report in reports:
        status = "pass" if report.passed else "FAIL"
        click.echo(
            f"{report.axiom:<14} checked={report.checked:<8} "
            f"violations={report.violation_count:<6} {status}"
        )
        if not report.passed and report.violations:
            click.echo(f"  witness: {report.violations[0]}")
            all_passed = False
        elif not report.passed:
            all_passed = False
    return all_passed


@click.group()
@click.version_option("0.1.0", prog_name="cardinal-scale")
def main() -> None:
    """Cardinal utility construction and preference-axiom tooling."""
    _configure_logging()


@main.command("construct")
@click.option(
    "--gen",
    "gen_text",
    required=True,
    help=(
        "Generator as kind:params, one of power:K, linear:A,B, log1p:SCALE, "
        "exponential:K, logistic:K,X0, or pwl:t0,v0;t1,v1;..."
    ),
)
@click.option("--domain", "domain_text", default=None, help="Domain as lo,hi.")
@click.option("--eps", type=float, default=1e-9, show_default=True, help="Indifference band.")
@click.option("--a0", type=float, default=None, help="Anchor with utility 0 (default: domain low end).")
@click.option("--a1", type=float, default=None, help="Anchor with utility 1 (default: domain high end).")
@click.option("--tol", type=float, default=2.0 ** -6, show_default=True, help="Value resolution target.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None, help="Output file (.json or CSV).")
def cmd_construct(gen_text, domain_text, eps, a0, a1, tol, out_path) -> None:
    """Construct a utility function from a closed-form generator."""

    def body() -> int:
        spec, oracle = _oracle_from_flags(gen_text, domain_text, eps)
        anchor0, anchor1 = _default_anchors(oracle, a0, a1)
        utility = construct_utility(oracle, anchor0, anchor1, tol)
        sample = [(p, spec.value(p)) for p, _ in utility.knots]
        summary = [
            f"resolution={utility.resolution:.17g}",
            f"knots={len(utility.knots)}",
        ]
        if len(utility.knots) >= 2:
            fit = affine_fit(list(utility.knots), sample)
            summary.append(f"affine_max_dev={fit.max_dev:.17g}")
        if out_path:
            if out_path.endswith(".json"):
                Path(out_path).write_text(
                    json.dumps(utility.to_json_dict(), indent=2) + "\n",
                    encoding="utf-8",
                )
            else:
                Path(out_path).write_text(utility.to_csv(), encoding="utf-8")
            for line in summary:
                click.echo(line)
        else:
            click.echo(utility.to_csv(), nl=False)
            for line in summary:
                click.echo(line, err=True)
        return 0

    _run(body)


@main.command("axioms")
@click.option("--model", "model_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--gen", "gen_text", default=None)
@click.option("--domain", "domain_text", default=None)
@click.option("--eps", type=float, default=1e-9, show_default=True)
@click.option("--samples", type=int, default=64, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def cmd_axioms(model_path, gen_text, domain_text, eps, samples, seed) -> None:
    """Check the preference axioms on a finite model or a generator."""

    def body() -> int:
        if (model_path is None) == (gen_text is None):
            raise BadConfig("pass exactly one of --model or --gen")
        if model_path is not None:
            reports = exhaustive_check(_load_model(model_path))
        else:
            if samples < 4:
                raise BadConfig("--samples must be at least 4")
            _, oracle = _oracle_from_flags(gen_text, domain_text, eps)
            rng = random.Random(seed)
            points = [
                Alt(oracle.lo + oracle.span * rng.random()) for _ in range(samples)
            ]
            click.echo(f"seed={seed}")
            pick = lambda: rng.choice(points)
            triples = [(pick(), pick(), pick()) for _ in range(samples * 8)]
            quadruples = [(pick(), pick(), pick(), pick()) for _ in range(samples * 8)]
            reports = [
                check_order_axioms(oracle, points[: min(samples, 12)]),
                check_A1(oracle, triples),
                check_A1prime(oracle, triples),
                check_A2(oracle, quadruples),
                check_A3_approx(oracle, max(4, samples // 8), 8, seed=seed),
            ]
        return 0 if _print_reports(reports) else 1

    _run(body)


@main.command("verify")
@click.option("--utility", "utility_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--gen", "gen_text", required=True)
@click.option("--domain", "domain_text", default=None)
@click.option("--eps", type=float, default=1e-9, show_default=True)
@click.option("--quadruples", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def cmd_verify(utility_path, gen_text, domain_text, eps, quadruples, seed) -> None:
    """Verify a stored utility file against a generator oracle."""

    def body() -> int:
        try:
            document = json.loads(Path(utility_path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as bad:
            raise SchemaError(f"utility file is not JSON: {bad}") from None
        utility = UtilityFn.from_json_dict(document)
        _, oracle = _oracle_from_flags(gen_text, domain_text, eps)
        if quadruples < 0:
            raise BadConfig("--quadruples must be nonnegative")
        rng = random.Random(seed)
        quads = [
            tuple(Alt(oracle.lo + oracle.span * rng.random()) for _ in range(4))
            for _ in range(quadruples)
        ]
        report = verify_representation(oracle, utility, quads)
        click.echo(f"seed={seed}")
        click.echo(f"checked={report.checked} violations={report.violation_count}")
        return 0 if report.passed else 1

    _run(body)


@main.command("feasible")
@click.argument("model_path", type=click.Path(exists=True, dir_okay=False))
def cmd_feasible(model_path) -> None:
    """Decide additive representability of a finite model exactly."""

    def body() -> int:
        model = _load_model(model_path)
        result = solve_additive_representation(model)
        if result.representable:
            click.echo("status=Representable")
            for label, value in zip(model.labels, result.values):
                click.echo(f"{label} = {value}")
            return 0
        click.echo("status=Infeasible")
        for index in result.certificate:
            click.echo(f"  [{index}] {describe_constraint(model, index)}")
        return 1

    _run(body)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--stdio", is_flag=True, help="Serve line-delimited JSON over stdio instead of HTTP.")
def cmd_serve(host, port, stdio) -> None:
    """Host the elicitation session protocol."""

    def body() -> int:
        if stdio:
            from .service import serve_stdio

            serve_stdio()
        else:
            from .service import run_http

            run_http(host=host, port=port)
        return 0

    _run(body)


if __name__ == "__main__":
    main()
