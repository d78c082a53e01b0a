"""Command-line front end.

Subcommands:

* ``simulate``        seeded multi-epoch regret experiment -> CSV + manifest
* ``bound``           theoretical pull/regret bound tables
* ``rank-bench``      cold-start ranking latency benchmark
* ``traffic-compare`` uniform traffic split between policies -> CSV + manifest
* ``selfcheck``       numerical health checks (closed forms, inequalities,
                      concentration Monte-Carlo)

Numbers are serialized with the shortest round-trip decimal
representation and LF line endings, so re-running a command with the
same configuration reproduces every output file byte for byte. Exit
codes: 0 success, 1 input error, 2 failed self-check.

``HB_THREADS`` caps epoch-level worker parallelism (0 = one worker per
CPU, unset = sequential); results do not depend on it.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import (
    best_epsilon,
    expected_pulls_bound_terms,
    regret_lower_bound,
    regret_upper_bound,
)
from .coldstart_ranker import latency_bench, synthetic_traffic_compare
from .reward_models import RewardFamily, hellinger_sq, kl_div, tvd, _hellinger_sq_natural
from .simulator import BanditInstance, run_experiment
from .ucb_indices import (
    IndexRule,
    PolicyConfig,
    _bernoulli_ball_root,
    hellinger_index_bernoulli,
    hellinger_index_generic,
    hellinger_index_poisson,
)

PRESETS = {
    "bernoulli-paper": {
        "family": "bernoulli",
        "means": [0.01, 0.01, 0.01, 0.02, 0.02, 0.02, 0.05, 0.05, 0.05, 0.1],
    },
    "poisson-paper": {
        "family": "poisson",
        "means": [0.03, 0.03, 0.04, 0.04, 0.05, 0.05, 0.1],
    },
}

_SIMULATE_DEFAULTS = {
    "family": "bernoulli",
    "means": [0.05, 0.1],
    "policies": ["hellinger-ucb", "kl-ucb", "ucb1"],
    "horizon": 10_000,
    "epochs": 200,
    "seed": 12345,
    "c_hellinger": 0.26,
    "c_kl_loglog": 0.0,
    "bounds": True,
}


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the artifact reserves 2 for failed
    # self-checks and 1 for input errors.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(self._print_input_error(message))

    def _print_input_error(self, message: str) -> int:
        print(f"error: {message}", file=sys.stderr)
        return 1


def _fmt(value) -> str:
    """Shortest round-trip decimal for floats; plain digits for integers."""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if not isinstance(v, str) else v for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _workers() -> int:
    raw = os.environ.get("HB_THREADS", "")
    if not raw:
        return 1
    n = int(raw)
    if n == 0:
        return os.cpu_count() or 1
    return max(1, n)


def _parse_policies(labels, c_hellinger: float, c_kl_loglog: float):
    configs = []
    for label in labels:
        rule = {r.value: r for r in IndexRule}.get(label)
        if rule is None:
            raise ValueError(
                f"unknown policy {label!r}; choose from "
                f"{sorted(r.value for r in IndexRule)}"
            )
        configs.append(
            PolicyConfig(rule=rule, c_hellinger=c_hellinger, c_kl_loglog=c_kl_loglog)
        )
    return configs


def _parse_means(raw) -> list[float]:
    if isinstance(raw, str):
        return [float(part) for part in raw.split(",") if part.strip()]
    return [float(v) for v in raw]


def _layered_config(args) -> dict:
    """defaults < preset < config file < explicit flags."""
    config = dict(_SIMULATE_DEFAULTS)
    if args.preset:
        if args.preset not in PRESETS:
            raise ValueError(
                f"unknown preset {args.preset!r}; choose from {sorted(PRESETS)}"
            )
        config.update(PRESETS[args.preset])
    if args.config:
        loaded = json.loads(Path(args.config).read_text(encoding="utf-8"))
        if "config" in loaded and isinstance(loaded["config"], dict):
            loaded = loaded["config"]  # accept a manifest as config source
        config.update(loaded)
    for flag, key in [
        ("family", "family"),
        ("means", "means"),
        ("policies", "policies"),
        ("horizon", "horizon"),
        ("epochs", "epochs"),
        ("seed", "seed"),
        ("c_hellinger", "c_hellinger"),
        ("c_kl_loglog", "c_kl_loglog"),
        ("bounds", "bounds"),
    ]:
        value = getattr(args, flag, None)
        if value is not None:
            config[key] = value
    config["means"] = _parse_means(config["means"])
    if isinstance(config["policies"], str):
        config["policies"] = [
            p.strip() for p in config["policies"].split(",") if p.strip()
        ]
    return config


def _write_manifest(out_dir: Path, command: str, config: dict, outputs: list[str]):
    manifest = {
        "command": command,
        "config": config,
        "version": __version__,
        "outputs": outputs,
        "master_seed": config["seed"],
    }
    path = out_dir / "manifest.json"
    path.write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8", newline="\n"
    )


def cmd_simulate(args) -> int:
    config = _layered_config(args)
    family = RewardFamily(config["family"])
    instance = BanditInstance(family=family, means=tuple(config["means"]))
    configs = _parse_policies(
        config["policies"], config["c_hellinger"], config["c_kl_loglog"]
    )
    result = run_experiment(
        instance,
        configs,
        horizon=int(config["horizon"]),
        epochs=int(config["epochs"]),
        master_seed=int(config["seed"]),
        n_workers=_workers(),
    )

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    labels = result.policies
    outputs = []

    def curve_rows(curves):
        for i, t in enumerate(result.timesteps):
            yield [t] + [curves[lab][i] for lab in labels]

    _write_csv(out_dir / "regret_mean.csv", ["t"] + labels, curve_rows(result.mean_regret))
    _write_csv(out_dir / "regret_q25.csv", ["t"] + labels, curve_rows(result.q25_regret))
    _write_csv(out_dir / "regret_q75.csv", ["t"] + labels, curve_rows(result.q75_regret))
    outputs += ["regret_mean.csv", "regret_q25.csv", "regret_q75.csv"]

    final_rows = [
        [lab, epoch, value]
        for lab in labels
        for epoch, value in enumerate(result.final_regrets[lab])
    ]
    _write_csv(out_dir / "final_regret.csv", ["policy", "epoch", "regret"], final_rows)
    outputs.append("final_regret.csv")

    pull_rows = [
        [lab, arm, value]
        for lab in labels
        for arm, value in enumerate(result.mean_pulls[lab])
    ]
    _write_csv(out_dir / "pulls.csv", ["policy", "arm", "mean_pulls"], pull_rows)
    outputs.append("pulls.csv")

    if config["bounds"]:
        c = float(config["c_hellinger"])
        rows = []
        for t in result.timesteps:
            upper = regret_upper_bound(instance, c, None, int(t))
            lower = regret_lower_bound(instance, int(t)) if t >= 2 else 0.0
            rows.append([t, upper, lower])
        _write_csv(out_dir / "bounds.csv", ["t", "upper_bound", "lower_bound"], rows)
        outputs.append("bounds.csv")

    _write_manifest(out_dir, "simulate", config, outputs)
    print(f"wrote {len(outputs)} files to {out_dir}")
    return 0


def cmd_bound(args) -> int:
    family = RewardFamily(args.family)
    c = args.c
    horizon = args.horizon
    if args.means is not None:
        means = _parse_means(args.means)
        instance = BanditInstance(family=family, means=tuple(means))
        mu_star = instance.best_mean
        arm_means = list(instance.means)
    elif args.mu_star is not None and args.mu_i is not None:
        mu_star, arm_means = args.mu_star, [args.mu_star, args.mu_i]
        instance = BanditInstance(family=family, means=(args.mu_star, args.mu_i))
    else:
        raise ValueError("provide either --means or both --mu-star and --mu-i")

    header = [
        "arm", "mu_i", "gap", "h_sq", "epsilon", "C1", "C2",
        "leading", "polynomial", "p_series", "constant", "pulls_bound",
        "regret_contribution",
    ]
    rows = []
    for i, mu_i in enumerate(arm_means):
        gap = mu_star - mu_i
        if gap == 0.0:
            continue
        if args.epsilon is not None:
            eps = args.epsilon
        else:
            eps, _ = best_epsilon(family, mu_star, mu_i, c, horizon)
        terms = expected_pulls_bound_terms(family, mu_star, mu_i, c, eps, horizon)
        rows.append([
            i, mu_i, gap, terms.hellinger_sq, eps,
            terms.constants.C1, terms.constants.C2,
            terms.leading, terms.polynomial, terms.p_series, terms.constant,
            terms.total, gap * terms.total,
        ])
    if not rows:
        raise ValueError("no sub-optimal arms: every mean equals the best mean")

    widths = [max(len(h), 12) for h in header]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    for row in rows:
        print("  ".join(_fmt(v).ljust(w) for v, w in zip(row, widths)))
    upper = regret_upper_bound(instance, c, args.epsilon, horizon)
    print(f"regret_upper_bound: {_fmt(upper)}")
    if horizon >= 2:
        print(f"regret_lower_bound: {_fmt(regret_lower_bound(instance, horizon))}")
    if args.out:
        _write_csv(Path(args.out), header, rows)
        print(f"wrote {args.out}")
    return 0


def cmd_rank_bench(args) -> int:
    stats = latency_bench(args.num_arms, args.k, args.repetitions, args.seed)
    verdict = "PASS" if stats.median_ms < args.budget_ms else "FAIL"
    print(
        f"rank_top_k over {args.num_arms} arms, k={args.k}, "
        f"{args.repetitions} repetitions"
    )
    print(f"min_ms: {_fmt(stats.min_ms)}")
    print(f"median_ms: {_fmt(stats.median_ms)}")
    print(f"p99_ms: {_fmt(stats.p99_ms)}")
    print(f"budget_ms: {_fmt(args.budget_ms)} -> {verdict}")
    if args.out_dir:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        _write_csv(
            out_dir / "latency.csv",
            ["repetition", "ms"],
            ([i, ms] for i, ms in enumerate(stats.per_call_ms)),
        )
        print(f"wrote {out_dir / 'latency.csv'}")
    return 0


def cmd_traffic_compare(args) -> int:
    configs = _parse_policies(
        [p.strip() for p in args.policies.split(",") if p.strip()],
        args.c_hellinger,
        args.c_kl_loglog,
    )
    trajectories = synthetic_traffic_compare(
        args.arms, args.horizon, configs, args.seed
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    labels = [c.label for c in configs]
    rows = (
        [t + 1] + [trajectories[lab][t] for lab in labels]
        for t in range(args.horizon)
    )
    _write_csv(out_dir / "cumulative_reward.csv", ["t"] + labels, rows)
    config = {
        "arms": args.arms,
        "horizon": args.horizon,
        "policies": labels,
        "seed": args.seed,
        "c_hellinger": args.c_hellinger,
        "c_kl_loglog": args.c_kl_loglog,
    }
    manifest = {
        "command": "traffic-compare",
        "config": config,
        "version": __version__,
        "outputs": ["cumulative_reward.csv"],
        "master_seed": args.seed,
    }
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8", newline="\n"
    )
    print(f"wrote cumulative_reward.csv to {out_dir}")
    return 0


def _check_closed_vs_bisection(perturb: float) -> tuple[bool, str]:
    p_grid = np.concatenate(([0.0, 1.0], np.linspace(0.005, 0.995, 38)))
    r_grid = np.concatenate(([0.0, 1.0 - 1e-9], np.linspace(1e-6, 0.95, 38)))
    worst = 0.0
    for p in p_grid:
        for r in r_grid:
            if perturb and 0.0 < p < 1.0 and 0.0 < r < 1.0 - math.sqrt(p):
                closed = _bernoulli_ball_root(float(p), float(r), 1.0 + perturb)
            else:
                closed = hellinger_index_bernoulli(float(p), float(r))
            generic = hellinger_index_generic(RewardFamily.BERNOULLI, float(p), float(r))
            worst = max(worst, abs(closed - generic))
    for lam in np.linspace(0.0, 30.0, 25):
        for r in r_grid:
            x = -math.log1p(-r)
            closed = hellinger_index_poisson(float(lam), x)
            generic = hellinger_index_generic(RewardFamily.POISSON, float(lam), float(r))
            worst = max(worst, abs(closed - generic))
    return worst <= 1e-8, f"max |closed - bisection| = {worst:.3e} (tol 1e-8)"


def _check_distance_identity() -> tuple[bool, str]:
    grid = np.linspace(0.001, 0.999, 50)
    worst = 0.0
    for p in grid:
        for q in grid:
            direct = hellinger_sq(RewardFamily.BERNOULLI, float(p), float(q))
            natural = _hellinger_sq_natural(RewardFamily.BERNOULLI, float(p), float(q))
            worst = max(worst, abs(direct - natural))
    return worst <= 1e-12, f"max |closed - cumulant form| = {worst:.3e} (tol 1e-12)"


def _check_inequalities() -> tuple[bool, str]:
    rng = np.random.default_rng(0)
    worst = 0.0
    for family in RewardFamily:
        if family is RewardFamily.BERNOULLI:
            points = rng.uniform(0.0, 1.0, size=(2000, 3))
        else:
            points = rng.uniform(0.0, 8.0, size=(2000, 3))
        for a, b, m in points:
            h2 = hellinger_sq(family, a, b)
            kl = kl_div(family, b, a)
            if math.isfinite(kl):
                worst = max(worst, 2.0 * h2 - kl)
                worst = max(worst, -math.log1p(-min(h2, 1.0 - 1e-16)) - 0.5 * kl)
            worst = max(worst, h2 - tvd(family, a, b))
            tri = (
                math.sqrt(hellinger_sq(family, a, b))
                - math.sqrt(hellinger_sq(family, a, m))
                - math.sqrt(hellinger_sq(family, m, b))
            )
            worst = max(worst, tri)
    return worst <= 1e-12, f"max inequality violation = {worst:.3e} (tol 1e-12)"


def _check_concentration() -> tuple[bool, str]:
    rng = np.random.default_rng(1)
    trials = 10**5
    n, f_n = 100, 2.0
    report = []
    ok = True
    for mu in (0.1, 0.5):
        threshold = f_n / n
        counts = np.bincount(rng.binomial(n, mu, size=trials), minlength=n + 1)
        freq = 0.0
        for successes, count in enumerate(counts):
            if count == 0:
                continue
            mu_hat = successes / n
            if mu_hat > mu and kl_div(RewardFamily.BERNOULLI, mu_hat, mu) > threshold:
                freq += count / trials
        limit = math.exp(-f_n) + 3.0 * math.sqrt(math.exp(-f_n) / trials)
        ok = ok and freq <= limit
        report.append(f"mu={mu}: freq={freq:.5f} <= {limit:.5f}")
    return ok, "; ".join(report)


def cmd_selfcheck(args) -> int:
    checks = [
        ("closed-form-vs-bisection", lambda: _check_closed_vs_bisection(args.perturb_quadratic)),
        ("hellinger-distance-identity", _check_distance_identity),
        ("distance-inequality-chain", _check_inequalities),
        ("concentration-monte-carlo", _check_concentration),
    ]
    all_ok = True
    for name, run in checks:
        ok, detail = run()
        all_ok = all_ok and ok
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    return 0 if all_ok else 2


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hellinger-bandits", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a seeded regret experiment")
    sim.add_argument("--family", choices=["bernoulli", "poisson"])
    sim.add_argument("--means", help="comma-separated arm means")
    sim.add_argument("--policies", help="comma-separated policy labels")
    sim.add_argument("--horizon", type=int)
    sim.add_argument("--epochs", type=int)
    sim.add_argument("--seed", type=int)
    sim.add_argument("--c-hellinger", dest="c_hellinger", type=float)
    sim.add_argument("--c-kl-loglog", dest="c_kl_loglog", type=float)
    sim.add_argument("--preset", help="named instance: " + ", ".join(sorted(PRESETS)))
    sim.add_argument("--config", help="JSON config (or manifest) file")
    sim.add_argument("--bounds", dest="bounds", action="store_true", default=None)
    sim.add_argument("--no-bounds", dest="bounds", action="store_false")
    sim.add_argument("--out-dir", required=True)
    sim.set_defaults(func=cmd_simulate)

    bound = sub.add_parser("bound", help="evaluate theoretical bound curves")
    bound.add_argument("--family", choices=["bernoulli", "poisson"], required=True)
    bound.add_argument("--means", help="instance means (table over all arms)")
    bound.add_argument("--mu-star", dest="mu_star", type=float)
    bound.add_argument("--mu-i", dest="mu_i", type=float)
    bound.add_argument("--c", type=float, default=0.26)
    bound.add_argument("--epsilon", type=float, help="fixed eps (default: minimize)")
    bound.add_argument("--horizon", type=int, default=10_000)
    bound.add_argument("--out", help="optional CSV output path")
    bound.set_defaults(func=cmd_bound)

    bench = sub.add_parser("rank-bench", help="cold-start ranking latency benchmark")
    bench.add_argument("--num-arms", dest="num_arms", type=int, default=10_000)
    bench.add_argument("--k", type=int, default=50)
    bench.add_argument("--repetitions", type=int, default=1000)
    bench.add_argument("--seed", type=int, default=12345)
    bench.add_argument("--budget-ms", dest="budget_ms", type=float, default=10.0)
    bench.add_argument("--out-dir")
    bench.set_defaults(func=cmd_rank_bench)

    traffic = sub.add_parser(
        "traffic-compare", help="uniform traffic split between policies"
    )
    traffic.add_argument("--arms", type=int, default=30)
    traffic.add_argument("--horizon", type=int, default=6000)
    traffic.add_argument("--seed", type=int, default=12345)
    traffic.add_argument("--policies", default="hellinger-ucb,kl-ucb,ucb1")
    traffic.add_argument("--c-hellinger", dest="c_hellinger", type=float, default=0.26)
    traffic.add_argument("--c-kl-loglog", dest="c_kl_loglog", type=float, default=0.0)
    traffic.add_argument("--out-dir", required=True)
    traffic.set_defaults(func=cmd_traffic_compare)

    check = sub.add_parser("selfcheck", help="run numerical health checks")
    check.add_argument(
        "--perturb-quadratic",
        dest="perturb_quadratic",
        type=float,
        default=0.0,
        help="negative-control hook: scale the ball quadratic's linear coefficient",
    )
    check.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
