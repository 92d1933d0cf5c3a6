"""Command line experiment driver.

Each subcommand writes one report with a fixed row schema::

    experiment,param_n,param_m,param_s,method,value,stderr,trunc_meta,seed

preceded (CSV) by ``#`` comment lines for the tool version, the full
configuration and a timestamp. The timestamp sits alone on the last comment
line (JSON: the ``timestamp`` key, on its own line), so that two runs with the
same configuration differ nowhere else.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import math
import os
import sys

from . import __version__
from .streams import DEFAULT_SEED, ENV_SEED, run_workers

COLUMNS = ["experiment", "param_n", "param_m", "param_s", "method", "value", "stderr", "trunc_meta", "seed"]


class ConfigError(ValueError):
    pass


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _meta(**kw) -> str:
    return ";".join(f"{k}={v}" for k, v in kw.items())


class Report:
    def __init__(self, config: argparse.Namespace):
        self.config = config
        self.rows: list[dict] = []

    def add(self, method, value, stderr=None, **trunc):
        c = self.config
        self.rows.append({
            "experiment": c.subcommand,
            "param_n": getattr(c, "n", None),
            "param_m": getattr(c, "m", None),
            "param_s": getattr(c, "s", None),
            "method": method,
            "value": value,
            "stderr": stderr,
            "trunc_meta": _meta(**trunc),
            "seed": c.seed,
        })

    def config_items(self) -> dict:
        return {k: v for k, v in sorted(vars(self.config).items()) if k not in ("output", "func")}

    def render(self, fmt: str, timestamp: str) -> str:
        if fmt == "json":
            head = {"tool": "zetalaws", "version": __version__, "config": self.config_items(),
                    "columns": COLUMNS, "rows": self.rows}
            body = json.dumps(head, indent=1, sort_keys=False)
            # timestamp on a separate final line, outside the deterministic part
            return body[:-2] + ',\n "timestamp": ' + json.dumps(timestamp) + "\n}\n"
        lines = [f"# zetalaws {__version__}",
                 "# config: " + ";".join(f"{k}={v}" for k, v in self.config_items().items()),
                 f"# timestamp: {timestamp}",
                 ",".join(COLUMNS)]
        for row in self.rows:
            lines.append(",".join(_fmt(row[c]) for c in COLUMNS))
        return "\n".join(lines) + "\n"


def _require(cond: bool, msg: str):
    if not cond:
        raise ConfigError(msg)


def _sum_counts(results):
    return [sum(col) for col in zip(*results)]


def _estimate(hits: int, samples: int):
    from .densities import Estimate

    return Estimate.from_counts(hits, samples)


def cmd_densities(c, rep: Report):
    from .arith import sieve
    from .densities import coprime_density_exact, mc_coprime_density, mfree_density_exact
    from .zeta import zeta_value

    _require(c.n >= 2, "--n must be >= 2")
    _require(c.m >= 2, "--m must be >= 2")
    _require(c.samples >= 0, "--samples must be >= 0")
    table = sieve(c.n)
    rep.add("coprime_exact", coprime_density_exact(c.n, c.m, table), sieve_limit=c.n)
    rep.add("mfree_exact", mfree_density_exact(c.n, c.m, table), sieve_limit=c.n)
    rep.add("limit_inv_zeta_m", 1.0 / zeta_value(float(c.m)), zeta_tolerance=1e-13)
    if c.samples:
        def task(k, rng):
            if k == 0:
                return (0,)
            est = mc_coprime_density(c.n, c.m, k, rng)
            return (round(est.value * k),)

        (hits,) = _sum_counts(run_workers(task, c.samples, c.seed, c.workers))
        est = _estimate(hits, c.samples)
        rep.add("coprime_mc", est.value, est.stderr, samples=c.samples, workers=c.workers)


def cmd_euler(c, rep: Report):
    from .arith import CHI4, MOBIUS, ONE, sieve
    from .zeta import (MIN_S, dirichlet_beta, dirichlet_series, euler_product_inv_zeta,
                       euler_product_multiplicative, zeta_value)

    _require(c.s >= MIN_S, f"--s must be >= {MIN_S}")
    _require(c.prime_limit >= 2, "--prime-limit must be >= 2")
    _require(c.inner_terms >= 1, "--inner-terms must be >= 1")
    table = sieve(c.prime_limit)
    prod = euler_product_inv_zeta(c.s, table)
    z = zeta_value(c.s)
    rep.add("inv_zeta_product", prod, prime_limit=c.prime_limit)
    rep.add("zeta_value", z, zeta_tolerance=1e-13)
    rep.add("product_times_zeta", prod * z, prime_limit=c.prime_limit)
    for spec in (ONE, MOBIUS, CHI4):
        rep.add(f"euler_{spec.name}", euler_product_multiplicative(spec, c.s, table, c.inner_terms),
                prime_limit=c.prime_limit, inner_terms=c.inner_terms)
        rep.add(f"series_{spec.name}", dirichlet_series(spec, c.s, table), terms=c.prime_limit)
    rep.add("dirichlet_beta", dirichlet_beta(c.s), beta_tolerance=1e-13)


def cmd_converge(c, rep: Report):
    from .arith import sieve
    from .convergence import TVInterval, tv_distance
    from .densities import cesaro_gap, gcd_law_exact, radical_law_exact
    from .zeta import ZetaLaw

    _require(c.n >= 1, "--n must be >= 1")
    _require(c.m >= 2, "--m must be >= 2")
    support = c.zeta_support or 10 * c.n
    _require(support >= c.n, "--zeta-support must be >= --n")
    table = sieve(max(c.n, 2))
    law = ZetaLaw(float(c.m)).truncated_pmf(support)
    for name, emp in (("gcd", gcd_law_exact(c.n, c.m, table)), ("radical", radical_law_exact(c.n, c.m, table))):
        d = tv_distance(emp, law)
        if isinstance(d, TVInterval):
            rep.add(f"tv_{name}_zeta_lower", d.lower, zeta_support=support, deficiency=law.deficiency)
            rep.add(f"tv_{name}_zeta_upper", d.upper, zeta_support=support, deficiency=law.deficiency)
        else:
            rep.add(f"tv_{name}_zeta", d, zeta_support=support, deficiency=law.deficiency)
    rep.add("cesaro_gap", cesaro_gap(c.n, c.m, table), exact="true")


def cmd_gauss(c, rep: Report):
    from .gauss import DEFAULT_PROFILE_CLASSES, ball_class_array, gauss_coprime_experiment
    from .zeta import dirichlet_beta, zeta_value

    _require(c.n >= 2, "--n must be >= 2")
    _require(c.samples >= 1, "--samples must be >= 1")
    ball = ball_class_array(c.n)
    classes = list(DEFAULT_PROFILE_CLASSES)

    def task(k, rng):
        if k == 0:
            return (0,) * (1 + len(classes))
        e = gauss_coprime_experiment(c.n, k, rng, classes, ball=ball)
        return (round(e.unit.value * k),) + tuple(round(e.profile[z].value * k) for z in classes)

    counts = _sum_counts(run_workers(task, c.samples, c.seed, c.workers))
    est = _estimate(counts[0], c.samples)
    meta = dict(samples=c.samples, workers=c.workers, ball_size=len(ball))
    rep.add("unit_gcd_mc", est.value, est.stderr, **meta)
    rep.add("limit_inv_zeta2_beta2", 1.0 / (zeta_value(2.0) * dirichlet_beta(2.0)), series_tolerance=1e-13)
    for z, h in zip(classes, counts[1:]):
        e = _estimate(h, c.samples)
        rep.add(f"divides_{z}", e.value, e.stderr, **meta)
        rep.add(f"limit_divides_{z}", float(z.norm()) ** -2, exact="true")


def cmd_sample(c, rep: Report):
    import numpy as np

    from .zeta import MIN_S, ZetaLaw, pmf, sample, zeta_value

    _require(c.s >= MIN_S, f"--s must be >= {MIN_S}")
    _require(c.samples >= 1, "--samples must be >= 1")
    law = ZetaLaw(c.s)

    def task(k, rng):
        if k == 0:
            return (0, 0, 0.0)
        x = sample(law, rng, k)
        ones = int(np.count_nonzero(x == 1))
        even = int(np.count_nonzero(x % 2 == 0))
        inv = math.fsum(1.0 / float(v) for v in x) if x.dtype == object else math.fsum((1.0 / x).tolist())
        return (ones, even, inv)

    ones, even, inv = _sum_counts(run_workers(task, c.samples, c.seed, c.workers))
    meta = dict(samples=c.samples, workers=c.workers)
    e1 = _estimate(ones, c.samples)
    e2 = _estimate(even, c.samples)
    rep.add("freq_X_eq_1", e1.value, e1.stderr, **meta)
    rep.add("pmf_1", pmf(law, 1), zeta_tolerance=law.series_tolerance)
    rep.add("freq_2_divides_X", e2.value, e2.stderr, **meta)
    rep.add("prob_2_divides_X", 2.0**-c.s, exact="true")
    rep.add("mean_inv_X", inv / c.samples, None, **meta)
    rep.add("expected_inv_X", zeta_value(c.s + 1) / law.zeta_s, zeta_tolerance=law.series_tolerance)


COMMANDS = {
    "densities": cmd_densities,
    "euler": cmd_euler,
    "converge": cmd_converge,
    "gauss": cmd_gauss,
    "sample": cmd_sample,
}


def _default_seed() -> int:
    raw = os.environ.get(ENV_SEED)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"{ENV_SEED}={raw!r} is not an integer")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zetalaws", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"zetalaws {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, seed=True):
        if seed:
            p.add_argument("--seed", type=int, default=_default_seed(), help=f"random seed (env {ENV_SEED})")
            p.add_argument("--workers", type=int, default=1)
        else:
            p.set_defaults(seed=None, workers=1)
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--output", "-o", default=None, help="report path (default stdout)")

    p = sub.add_parser("densities", help="coprime and m-free densities at n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--samples", type=int, default=0, help="Monte Carlo tuples (0 = exact only)")
    common(p)

    p = sub.add_parser("euler", help="truncated Euler products at s")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--prime-limit", type=int, required=True)
    p.add_argument("--inner-terms", type=int, default=64)
    common(p, seed=False)

    p = sub.add_parser("converge", help="distance of gcd and radical laws to the Zeta(m) law")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--zeta-support", type=int, default=None, help="Zeta pmf truncation (default 10 n)")
    common(p, seed=False)

    p = sub.add_parser("gauss", help="coprimality of uniform Gaussian classes of norm <= n^2")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    common(p)

    p = sub.add_parser("sample", help="Zeta law sampler diagnostics")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--samples", type=int, required=True)
    common(p)
    return parser


def run(config: argparse.Namespace, timestamp: str | None = None) -> str:
    """Run one configured experiment and return the rendered report."""
    if config.workers < 1:
        raise ConfigError("--workers must be >= 1")
    if config.seed is not None and config.seed < 0:
        raise ConfigError("--seed must be non-negative")
    rep = Report(config)
    COMMANDS[config.subcommand](config, rep)
    if timestamp is None:
        timestamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return rep.render(config.format, timestamp)


def main(argv=None) -> int:
    parser = build_parser()
    config = parser.parse_args(argv)
    try:
        text = run(config)
    except ConfigError as exc:
        parser.print_usage(sys.stderr)
        print(f"zetalaws {config.subcommand}: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, OverflowError) as exc:
        print(f"zetalaws {config.subcommand}: error: {exc}", file=sys.stderr)
        return 1
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
