"""Command-line interface and analysis orchestration.

Verbs:
  friedman   omnibus screen of a CSV table
  posthoc    screen, then pairwise comparisons (skipped unless the screen
             rejects or --force-posthoc is given)
  stability  re-test one pair inside every pool of a given size
  power      Monte Carlo rejection rate of a target pair (scenario JSON)
  fwer       Monte Carlo family-wise error over an equal-mean subset
  reproduce  run a built-in example end to end and check the known values

Exit codes: 0 success, 1 a reproduce check missed its tolerance, 2 usage,
3 input file parse error, 4 validation error, 5 degenerate data. Seeds
resolve as --seed, then the RANKJUDGE_SEED environment variable, then the
scenario file or built-in default.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional

from . import fixtures
from .errors import (
    DegenerateDataError,
    ParseError,
    ValidationError,
)
from .montecarlo import (
    GaussianAlgorithm,
    PowerScenario,
    analytic_sign_power,
    estimate_fwer,
    estimate_power,
)
from .omnibus import friedman
from .posthoc import (
    CorrectionPolicy,
    mean_ranks_test,
    pairwise_report,
    sign_test,
    wilcoxon_signed_rank,
)
from .ranking import PerformanceMatrix, rank_columns, restrict
from .render import SCHEMA_VERSION, render_structured, render_text
from .stability import subset_stability
from .tableio import ORIENTATIONS, load_csv

# Frozen reference values for `reproduce` (independent oracle computations,
# not produced by this package).
_FRIEDMAN_P_5X20 = 9.437836360697738e-10  # 25 * exp(-24)
_MEAN_RANKS_THRESHOLD_5_20 = 1.4035168841719055  # 2.80703... * 0.5


def _matrix_payload(perf: PerformanceMatrix) -> dict:
    return {
        "m": perf.m,
        "n": perf.n,
        "algorithms": list(perf.algorithm_names),
        "datasets": list(perf.dataset_names),
    }


def run_analysis(
    perf: PerformanceMatrix,
    alpha: float = 0.05,
    test: str = "wilcoxon",
    policy: Optional[CorrectionPolicy] = None,
    force_posthoc: bool = False,
    direction: str = "higher-is-better",
) -> dict:
    """Friedman screen, then pairwise comparisons if warranted.

    The pairwise stage runs when the screen rejects at `alpha` or when
    force_posthoc is set; otherwise the payload carries an explanatory
    note. Degenerate pairs stay inline in the report, never fatal here.
    """
    if policy is None:
        policy = CorrectionPolicy(kind="bonferroni", alpha=alpha)
    screen = friedman(perf, alpha, direction)
    payload = {
        "kind": "analysis",
        "schema_version": SCHEMA_VERSION,
        "matrix": _matrix_payload(perf),
        "direction": direction,
        "friedman": screen.to_dict(),
        "posthoc": None,
        "posthoc_skipped": None,
    }
    if screen.reject or force_posthoc:
        report = pairwise_report(perf, test, policy, direction)
        payload["posthoc"] = report.to_dict()
        if not screen.reject:
            payload["posthoc_skipped"] = None  # ran anyway, note not needed
    else:
        payload["posthoc_skipped"] = (
            f"omnibus screen did not reject at alpha={alpha:g}; pairwise "
            f"comparisons skipped (pass --force-posthoc to run them anyway)"
        )
    return payload


def _check(
    name: str,
    observed,
    expected,
    mode: str,
    tolerance: Optional[float] = None,
    note: Optional[str] = None,
) -> dict:
    if mode == "info" or expected is None:
        ok = None
    elif mode == "exact":
        ok = observed == expected
    elif mode == "abs":
        ok = abs(observed - expected) <= tolerance
    elif mode == "rel":
        ok = abs(observed - expected) <= tolerance * abs(expected)
    elif mode == "upper-bound":
        ok = observed <= expected + (tolerance or 0.0)
    else:
        raise ValueError(f"unknown check mode {mode!r}")
    return {
        "name": name,
        "observed": observed,
        "expected": expected,
        "mode": mode,
        "tolerance": tolerance,
        "pass": ok,
        "note": note,
    }


def _reproduce_benchmark() -> list[dict]:
    perf = fixtures.five_algorithm_benchmark()
    pair = fixtures.contrast_pair()
    checks = []

    sign = sign_test(perf, pair, alpha=0.05, mode="exact")
    checks.append(_check("sign exact p, pair (A,B)", sign.p_value, 1.0, "exact"))

    screen = friedman(perf, 0.05)
    checks.append(_check("Friedman statistic S", screen.statistic, 48.0, "exact"))
    checks.append(
        _check("Friedman p", screen.p_value, _FRIEDMAN_P_5X20, "rel", 1e-12)
    )

    policy = CorrectionPolicy(kind="bonferroni", alpha=0.05)
    full = mean_ranks_test(rank_columns(perf), pair, policy)
    checks.append(
        _check(
            "mean-ranks |difference|, pool of 5", full.statistic, 1.5, "exact"
        )
    )
    checks.append(
        _check(
            "mean-ranks threshold, pool of 5",
            full.detail["critical_value"],
            _MEAN_RANKS_THRESHOLD_5_20,
            "abs",
            0.0005,
        )
    )
    checks.append(
        _check("mean-ranks verdict, pool of 5", full.reject, True, "exact")
    )

    alone = mean_ranks_test(
        rank_columns(restrict(perf, pair)), pair, policy
    )
    checks.append(
        _check("mean-ranks verdict, pool of 2", alone.reject, False, "exact")
    )

    wsr = wilcoxon_signed_rank(perf, pair, alpha=0.05)
    checks.append(
        _check(
            "wilcoxon p, pair (A,B)",
            wsr.p_value,
            1.0,
            "exact",
            note="symmetric, equal-magnitude differences",
        )
    )
    return checks


def _reproduce_power(replicates: int, seed: int) -> list[dict]:
    checks = []
    sign_na = estimate_power(
        fixtures.separated_pool_scenario("sign-normal-approx", replicates, seed)
    )
    checks.append(
        _check(
            "power, sign test (normal approx), pair (A,B)",
            sign_na.estimate,
            0.94,
            "abs",
            0.01,
        )
    )
    ranks = estimate_power(
        fixtures.separated_pool_scenario("mean-ranks", replicates, seed)
    )
    checks.append(
        _check(
            "power, mean-ranks over the full pool, pair (A,B)",
            ranks.estimate,
            0.046,
            "abs",
            0.005,
            note="same data as the sign row; the pool drags the verdict down",
        )
    )
    exact_scn = fixtures.separated_pool_scenario("sign-exact", replicates, seed)
    exact = estimate_power(exact_scn)
    checks.append(
        _check(
            "power, sign test (exact), vs closed-form binomial value",
            exact.estimate,
            analytic_sign_power(exact_scn),
            "abs",
            3 * exact.std_error,
            note="tolerance is 3 standard errors of the simulation",
        )
    )
    return checks


def _reproduce_fwer(replicates: int, seed: int) -> list[dict]:
    checks = []
    sign_scn = fixtures.all_equal_scenario("sign-exact", replicates, seed)
    sign = estimate_fwer(sign_scn)
    checks.append(
        _check(
            "FWER, sign-exact + bonferroni, five equal algorithms",
            sign.estimate,
            sign_scn.policy.alpha,
            "upper-bound",
            3 * sign.std_error,
            note="union bound guarantees control",
        )
    )
    ranks_eq = estimate_fwer(fixtures.all_equal_scenario("mean-ranks", replicates, seed))
    checks.append(
        _check(
            "FWER, mean-ranks + bonferroni, five equal algorithms",
            ranks_eq.estimate,
            None,
            "info",
            note="reported for the side-by-side table; no guarantee claimed",
        )
    )
    ranks_out = estimate_fwer(
        fixtures.outlier_pool_scenario("mean-ranks", replicates, seed)
    )
    checks.append(
        _check(
            "FWER among four equal algorithms, mean-ranks + bonferroni, "
            "one far-ahead outlier in the pool",
            ranks_out.estimate,
            None,
            "info",
            note="pool-sensitivity demonstration; no target value",
        )
    )
    return checks


def reproduce_example(
    example: str,
    replicates: Optional[int] = None,
    seed: Optional[int] = None,
) -> dict:
    """Run one built-in example and compare against its known values."""
    if example not in ("1", "2", "4_4"):
        raise ValidationError(
            f"unknown example {example!r}; choose 1, 2 or 4_4"
        )
    replicates = replicates if replicates is not None else 100_000
    seed = seed if seed is not None else fixtures.DEFAULT_SEED
    if example == "1":
        checks = _reproduce_benchmark()
        replicates = None
        seed = None
    elif example == "2":
        checks = _reproduce_power(replicates, seed)
    else:
        checks = _reproduce_fwer(replicates, seed)
    return {
        "kind": "reproduce",
        "schema_version": SCHEMA_VERSION,
        "example": example,
        "replicates": replicates,
        "seed": seed,
        "checks": checks,
        "all_pass": all(c["pass"] is not False for c in checks),
    }


def _env_seed() -> Optional[int]:
    raw = os.environ.get("RANKJUDGE_SEED")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(
            f"RANKJUDGE_SEED must be an integer, got {raw!r}"
        ) from None


def _resolve_seed(cli_seed: Optional[int], fallback: Optional[int]) -> Optional[int]:
    if cli_seed is not None:
        return cli_seed
    env = _env_seed()
    if env is not None:
        return env
    return fallback


def _load_scenario(path, args) -> PowerScenario:
    """Build a PowerScenario from a JSON file plus CLI overrides."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid scenario JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: scenario must be a JSON object")
    allowed = {
        "algorithms",
        "n_datasets",
        "test",
        "seed",
        "target_pair",
        "correction",
        "replicates",
        "equal_mean_subset",
    }
    unknown = set(doc) - allowed
    if unknown:
        raise ValidationError(
            f"{path}: unknown scenario key(s) {sorted(unknown)}; "
            f"allowed: {sorted(allowed)}"
        )
    for key in ("algorithms", "n_datasets", "test"):
        if key not in doc:
            raise ValidationError(f"{path}: scenario is missing {key!r}")
    try:
        algorithms = tuple(
            GaussianAlgorithm(
                name=a["name"], mean=a["mean"], sd=a.get("sd", 1.0)
            )
            for a in doc["algorithms"]
        )
    except (TypeError, KeyError) as exc:
        raise ValidationError(
            f"{path}: each algorithm needs name and mean (optional sd): {exc!r}"
        ) from None
    corr = doc.get("correction") or {}
    if not isinstance(corr, dict):
        raise ValidationError(f"{path}: correction must be an object")
    policy = CorrectionPolicy(
        kind=corr.get("kind", "none"),
        alpha=corr.get("alpha", 0.05),
        num_comparisons=corr.get("num_comparisons"),
    )
    seed = _resolve_seed(args.seed, doc.get("seed", fixtures.DEFAULT_SEED))
    replicates = (
        args.replicates if args.replicates is not None else doc.get("replicates", 100_000)
    )
    target = doc.get("target_pair")
    return PowerScenario(
        algorithms=algorithms,
        n_datasets=doc["n_datasets"],
        test=doc["test"],
        seed=seed,
        target_pair=tuple(target) if target else None,
        policy=policy,
        replicates=replicates,
        equal_mean_subset=(
            tuple(doc["equal_mean_subset"])
            if doc.get("equal_mean_subset")
            else None
        ),
    )


def _pair_arg(text: str) -> tuple[str, str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise argparse.ArgumentTypeError(
            f"expected two comma-separated names, e.g. A,B; got {text!r}"
        )
    return (parts[0], parts[1])


def _add_table_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("table", help="CSV file of performance scores")
    sp.add_argument(
        "--orientation",
        choices=ORIENTATIONS,
        default="algorithms-in-rows",
        help="which axis of the CSV holds algorithms (default: rows)",
    )
    sp.add_argument(
        "--direction",
        choices=("higher-is-better", "lower-is-better"),
        default="higher-is-better",
        help="score direction for ranking (default: higher-is-better)",
    )
    sp.add_argument("--alpha", type=float, default=0.05, help="significance level")


def _add_format_arg(sp: argparse.ArgumentParser) -> None:
    sp.add_argument(
        "--format",
        choices=("text", "structured"),
        default="text",
        help="text for humans, structured for machines (JSON, bit-stable)",
    )


def _add_posthoc_args(sp: argparse.ArgumentParser, default_test: str) -> None:
    sp.add_argument(
        "--test",
        choices=("sign", "sign-exact", "sign-normal-approx", "wilcoxon", "mean-ranks"),
        default=default_test,
        help=f"pairwise test (default: {default_test})",
    )
    sp.add_argument(
        "--correction",
        choices=("none", "bonferroni", "holm"),
        default="bonferroni",
        help="family-wise correction (default: bonferroni)",
    )
    sp.add_argument(
        "--comparisons",
        type=int,
        default=None,
        metavar="N",
        help="pin the family size instead of deriving it from the pool",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankjudge",
        description="Rank-based comparison of algorithms over benchmark datasets.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("friedman", help="omnibus screen of a CSV table")
    _add_table_args(p)
    _add_format_arg(p)
    p.set_defaults(func=_cmd_friedman)

    p = sub.add_parser("posthoc", help="screen plus pairwise comparisons")
    _add_table_args(p)
    _add_posthoc_args(p, default_test="wilcoxon")
    p.add_argument(
        "--force-posthoc",
        action="store_true",
        help="run pairwise comparisons even if the screen does not reject",
    )
    _add_format_arg(p)
    p.set_defaults(func=_cmd_posthoc)

    p = sub.add_parser(
        "stability", help="re-test one pair inside every pool of a given size"
    )
    _add_table_args(p)
    _add_posthoc_args(p, default_test="mean-ranks")
    p.add_argument(
        "--pair", type=_pair_arg, required=True, metavar="A,B",
        help="the pair to track, as two comma-separated names",
    )
    p.add_argument(
        "--cardinality", type=int, required=True, metavar="K",
        help="pool size to sweep (2..m)",
    )
    _add_format_arg(p)
    p.set_defaults(func=_cmd_stability)

    for verb, helptext, func in (
        ("power", "Monte Carlo rejection rate of a target pair", _cmd_power),
        ("fwer", "Monte Carlo family-wise error over an equal-mean subset", _cmd_fwer),
    ):
        p = sub.add_parser(verb, help=helptext)
        p.add_argument("scenario", help="scenario JSON file (schema in README)")
        p.add_argument("--replicates", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
        _add_format_arg(p)
        p.set_defaults(func=func)

    p = sub.add_parser(
        "reproduce", help="run a built-in example and check its known values"
    )
    p.add_argument("example", choices=("1", "2", "4_4"))
    p.add_argument("--replicates", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    _add_format_arg(p)
    p.set_defaults(func=_cmd_reproduce)

    return parser


def _cmd_friedman(args) -> dict:
    perf = load_csv(args.table, args.orientation)
    screen = friedman(perf, args.alpha, args.direction)
    return {
        "kind": "friedman",
        "schema_version": SCHEMA_VERSION,
        "matrix": _matrix_payload(perf),
        "friedman": screen.to_dict(),
    }


def _cmd_posthoc(args) -> dict:
    perf = load_csv(args.table, args.orientation)
    policy = CorrectionPolicy(
        kind=args.correction, alpha=args.alpha, num_comparisons=args.comparisons
    )
    return run_analysis(
        perf,
        alpha=args.alpha,
        test=args.test,
        policy=policy,
        force_posthoc=args.force_posthoc,
        direction=args.direction,
    )


def _cmd_stability(args) -> dict:
    perf = load_csv(args.table, args.orientation)
    policy = CorrectionPolicy(
        kind=args.correction, alpha=args.alpha, num_comparisons=args.comparisons
    )
    report = subset_stability(
        perf,
        args.pair,
        args.cardinality,
        test=args.test,
        policy=policy,
        direction=args.direction,
    )
    return {
        "kind": "stability",
        "schema_version": SCHEMA_VERSION,
        "matrix": _matrix_payload(perf),
        "stability": report.to_dict(),
    }


def _cmd_power(args) -> dict:
    scenario = _load_scenario(args.scenario, args)
    estimate = estimate_power(scenario)
    return {
        "kind": "power",
        "schema_version": SCHEMA_VERSION,
        "scenario": scenario.to_dict(),
        "estimate": estimate.to_dict(),
    }


def _cmd_fwer(args) -> dict:
    scenario = _load_scenario(args.scenario, args)
    estimate = estimate_fwer(scenario)
    return {
        "kind": "fwer",
        "schema_version": SCHEMA_VERSION,
        "scenario": scenario.to_dict(),
        "estimate": estimate.to_dict(),
    }


def _cmd_reproduce(args) -> dict:
    seed = _resolve_seed(args.seed, None)
    return reproduce_example(args.example, replicates=args.replicates, seed=seed)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return exc.code if isinstance(exc.code, int) else 2
    try:
        payload = args.func(args)
    except ParseError as exc:
        print(f"rankjudge: parse error: {exc}", file=sys.stderr)
        return 3
    except DegenerateDataError as exc:
        print(f"rankjudge: degenerate data: {exc}", file=sys.stderr)
        return 5
    except ValidationError as exc:
        print(f"rankjudge: invalid input: {exc}", file=sys.stderr)
        return 4
    if args.format == "structured":
        sys.stdout.write(render_structured(payload))
    else:
        sys.stdout.write(render_text(payload))
    if payload.get("kind") == "reproduce" and not payload["all_pass"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
