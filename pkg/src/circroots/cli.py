"""Command-line front end.

Subcommands: ``spectrum`` (extreme singular values of one circulant or
g-circulant), ``roots`` (root cloud + localization statistics), ``experiment``
(config-driven Monte Carlo sweep with CSV/JSON/SVG outputs) and ``pilot``
(freeze empirically pinned regression thresholds into a JSON file).

Exit codes: 0 ok, 2 usage or config error, 3 numerical failure, 4 missing
pilot-threshold file.  RS_THREADS overrides any --threads setting.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
import time
from dataclasses import asdict

import numpy as np

from . import __version__
from .circulant import Circulant, GCirculant, extreme_singular_values, gcirc_spectral
from .coeff_dist import parse_dist
from .errors import (CertificationError, CircrootsError, ConfigError,
                     DomainError, InsufficientDataError, NumericalError,
                     ResolutionError, SizeError, UnsupportedError)
from .montecarlo import (ExperimentConfig, run_experiment, trial_seed_block,
                         wilson_interval, write_results_csv, xi_rows)
from .polynomial import RandomPoly, build_poly, parse_weight
from .rng import mix_array, stream_block, u64_to_unit
from .roots import annulus_stats, default_widths, find_roots
from .svgplot import svg_root_scatter, svg_tail_curves

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_NO_PILOT = 4

CONFIG_KEYS = ("experiment", "dist", "phi", "n_list", "param_grid",
               "trials", "base_seed", "threads")


def _parse_row(text: str) -> np.ndarray:
    vals = [complex(tok) for tok in text.split(",") if tok.strip()]
    if not vals:
        raise ConfigError("--row needs at least one entry")
    arr = np.array(vals)
    return arr.real if np.all(arr.imag == 0) else arr


def _sample_row(dist_spec: str, n: int, seed: int, trial: int) -> np.ndarray:
    dist = parse_dist(dist_spec)
    seeds = trial_seed_block(seed, n, trial, trial + 1)
    return xi_rows(dist, seeds, n)[0]


def cmd_spectrum(args) -> int:
    if args.row is not None:
        row = _parse_row(args.row)
        if args.n is not None and args.n != row.size:
            raise ConfigError("--n disagrees with the --row length")
        rows = [row]
    else:
        if args.n is None or args.dist is None:
            raise ConfigError("need either --row or both --n and --dist")
        trials = args.trials or 1
        rows = [_sample_row(args.dist, args.n, args.seed, t)
                for t in range(trials)]
    summaries = []
    for row in rows:
        if args.g != 1:
            summaries.append(gcirc_spectral(GCirculant(row, args.g)))
        else:
            summaries.append(extreme_singular_values(Circulant(row)))
    if len(summaries) == 1:
        s = summaries[0]
        flag = "  numerically_singular" if s.numerically_singular else ""
        k = "-" if s.argmin_k is None else s.argmin_k
        print(f"s_min={s.s_min!r} s_max={s.s_max!r} argmin_k={k}{flag}")
    else:
        smins = np.array([s.s_min for s in summaries])
        print(f"trials={len(summaries)} s_min_min={smins.min()!r} "
              f"s_min_median={float(np.median(smins))!r} s_min_max={smins.max()!r}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("trial,k,re,im\n")
            for t, s in enumerate(summaries):
                if s.eigenvalues is None:
                    continue
                for k, lam in enumerate(s.eigenvalues):
                    fh.write(f"{t},{k},{lam.real!r},{lam.imag!r}\n")
    return EXIT_OK


_BUILTIN_POLY = re.compile(r"^z(\d+)-1$")


def cmd_roots(args) -> int:
    if args.poly:
        m = _BUILTIN_POLY.match(args.poly)
        if not m:
            raise ConfigError(f"unknown builtin polynomial {args.poly!r}")
        d = int(m.group(1))
        coeffs = np.zeros(d + 1)
        coeffs[0], coeffs[-1] = -1.0, 1.0
        poly = RandomPoly(d + 1, coeffs, "builtin", "const", 0)
    else:
        if args.n is None or args.dist is None:
            raise ConfigError("need either --poly or --n/--dist/--phi/--seed")
        poly = build_poly(parse_dist(args.dist), parse_weight(args.phi),
                          args.n, args.seed)
    rs = find_roots(poly)
    if not rs.converged:
        raise NumericalError("root finding did not converge")
    widths = ([float(w) for w in args.widths.split(",")]
              if args.widths else default_widths(poly.n))
    stats = annulus_stats(rs, poly.n, widths=widths)
    prefix = args.out
    csv_path = f"{prefix}_roots.csv"
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write("re,im,abs_z_minus_1,arg\n")
        for z in rs.roots:
            fh.write(f"{z.real!r},{z.imag!r},{abs(abs(z) - 1.0)!r},"
                     f"{float(np.mod(np.angle(z), 2 * np.pi))!r}\n")
    stats_path = f"{prefix}_stats.json"
    with open(stats_path, "w", encoding="utf-8") as fh:
        json.dump({"n": stats.n,
                   "frac_within": {str(k): v for k, v in stats.frac_within.items()},
                   "min_scaled_dist": stats.min_scaled_dist,
                   "ks_uniform": stats.ks_uniform,
                   "iterations": rs.iterations,
                   "max_residual": float(rs.residuals.max())},
                  fh, indent=2, sort_keys=True)
        fh.write("\n")
    outputs = [csv_path, stats_path]
    if args.plot:
        svg_path = f"{prefix}_roots.svg"
        svg_root_scatter(svg_path, list(rs.roots), widths=widths[:3],
                         title=f"roots n={poly.n} {poly.dist_tag}/{poly.weight_tag}")
        outputs.append(svg_path)
    print("wrote " + " ".join(outputs))
    return EXIT_OK


def parse_config_file(path: str) -> ExperimentConfig:
    """Flat key=value config; lists are comma-separated."""
    fields: dict = {}
    try:
        text = open(path, encoding="utf-8").read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, eq, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if not eq or key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: bad line {raw!r}")
        fields[key] = val
    missing = [k for k in CONFIG_KEYS if k not in fields and k != "threads"]
    if missing:
        raise ConfigError(f"{path}: missing keys {missing}")
    try:
        return ExperimentConfig(
            experiment=fields["experiment"],
            dist=fields["dist"],
            phi=fields["phi"],
            n_list=tuple(int(v) for v in fields["n_list"].split(",")),
            param_grid=tuple(float(v) for v in fields["param_grid"].split(",")),
            trials=int(fields["trials"]),
            base_seed=int(fields["base_seed"]),
            threads=int(fields.get("threads", "1")),
        )
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for blk in iter(lambda: fh.read(65536), b""):
            h.update(blk)
    return h.hexdigest()


def cmd_experiment(args) -> int:
    cfg = parse_config_file(args.config)
    threads = cfg.threads
    if args.threads is not None:
        threads = args.threads
    env = os.environ.get("RS_THREADS")
    if env:
        threads = int(env)
    if threads != cfg.threads:
        cfg = ExperimentConfig(cfg.experiment, cfg.dist, cfg.phi, cfg.n_list,
                               cfg.param_grid, cfg.trials, cfg.base_seed, threads)
    thresholds = None
    thresholds_hash = None
    if args.thresholds:
        if not os.path.exists(args.thresholds):
            print(f"pilot threshold file missing: {args.thresholds}",
                  file=sys.stderr)
            return EXIT_NO_PILOT
        with open(args.thresholds, encoding="utf-8") as fh:
            thresholds = json.load(fh)
        thresholds_hash = _sha256(args.thresholds)
    os.makedirs(args.out_dir, exist_ok=True)
    started = time.strftime("%Y-%m-%dT%H:%M:%S")
    result = run_experiment(cfg)
    csv_path = os.path.join(args.out_dir, "results.csv")
    write_results_csv(csv_path, cfg, result.estimates)
    summary = dict(result.summary)
    if thresholds is not None:
        summary["pilot_thresholds"] = thresholds
    summary_path = os.path.join(args.out_dir, "summary.json")
    with open(summary_path, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    outputs = [csv_path, summary_path]
    if args.plot and result.estimates:
        series = []
        for n in cfg.n_list:
            pts = [(e.param, e.p_hat, e.ci_lo, e.ci_hi)
                   for e in result.estimates if e.n == n]
            series.append({"label": f"n={n}", "points": pts})
        fit = None
        fits = summary.get("fits") or {}
        first = fits.get(str(cfg.n_list[0]))
        if first:
            fit = (first["slope"], first["intercept"])
        svg_path = os.path.join(args.out_dir, "plot.svg")
        svg_tail_curves(svg_path, series, title=cfg.experiment, fit=fit)
        outputs.append(svg_path)
    manifest = {
        "config": asdict(cfg),
        "version": __version__,
        "started_at": started,
        "finished_at": time.strftime("%Y-%m-%dT%H:%M:%S"),
        "outputs": [os.path.basename(p) for p in outputs],
        "thresholds_sha256": thresholds_hash,
    }
    manifest_path = os.path.join(args.out_dir, "manifest.json")
    with open(manifest_path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print("wrote " + " ".join(outputs + [manifest_path]))
    return EXIT_OK


# -- pilot --------------------------------------------------------------------

def _cfg(experiment, dist, phi, n_list, params, trials, seed, threads=1):
    return ExperimentConfig(experiment, dist, phi, tuple(n_list),
                            tuple(params), trials, seed, threads)


def run_pilot_suite(trials: int, seed: int) -> dict:
    """Compute every empirically pinned regression threshold.

    Heavy sub-experiments run at internally capped trial counts (annulus
    2000, root draws 200) so the whole suite stays desk-scale.
    """
    out: dict = {"config": {"suite": "all", "trials": trials, "seed": seed,
                            "version": __version__}}

    res = run_experiment(_cfg("SnTailEps", "rademacher", "const", [256],
                              [0.1, 0.2, 0.4, 0.8], trials, seed))
    ratios = {repr(e.param): e.p_hat / e.param for e in res.estimates}
    entry = {"ratio": ratios, "max_ratio": max(ratios.values())}
    fits = res.summary["fits"].get("256")
    entry["slope"] = None if fits is None else fits["slope"]
    out["sn_tail_eps_n256_rademacher"] = entry

    res = run_experiment(_cfg("SnTailEps", "gaussian", "const", [256],
                              [0.1, 0.2, 0.4, 0.8], trials, seed))
    ratios = {repr(e.param): e.p_hat / e.param for e in res.estimates}
    fits = res.summary["fits"].get("256")
    out["sn_tail_eps_n256_gaussian"] = {
        "ratio": ratios, "max_ratio": max(ratios.values()),
        "slope": None if fits is None else fits["slope"]}

    res = run_experiment(_cfg("SnTailRho", "rademacher", "const",
                              [127, 251, 509], [0.3], trials, seed))
    out["sn_tail_rho_primes_rademacher"] = {
        "rho": 0.3, "p_hat": {str(e.n): e.p_hat for e in res.estimates}}

    ann_trials = min(trials, 2000)
    res = run_experiment(_cfg("AnnulusInf", "gaussian", "const", [128],
                              [0.25, 0.5, 1.0], ann_trials, seed))
    ratios = {repr(e.param): e.p_hat / e.param for e in res.estimates}
    out["annulus_inf_n128_gaussian"] = {
        "trials": ann_trials, "ratio": ratios, "max_ratio": max(ratios.values())}

    res = run_experiment(_cfg("SalemZygmund", "rademacher", "const", [256],
                              [6.0], min(trials, 10000), seed))
    est = res.estimates[0]
    out["salem_zygmund_n256_rademacher_c6"] = {
        "violations": est.hits, "trials": est.trials,
        "target_rate": res.summary["sup_violation_rate_target"]["256"]}

    res = run_experiment(_cfg("SecondDeriv", "gaussian", "const", [64],
                              [1.0], trials, seed))
    est = res.estimates[0]
    out["second_deriv_n64_gaussian"] = {
        "rate": est.p_hat,
        "markov_rate_bound": res.summary["markov_rate_bound"]["64"]}

    res = run_experiment(_cfg("SmallBall", "rademacher", "const", [256],
                              [0.02, 0.05, 0.1, 0.2], trials, seed))
    fits = res.summary["fits"].get("256")
    out["small_ball_n256_rademacher"] = {
        "slope": None if fits is None else fits["slope"],
        "p_hat": {repr(e.param): e.p_hat for e in res.estimates}}

    draws = max(100, min(trials, 200))
    res = run_experiment(_cfg("RootStats", "gaussian", "const", [256],
                              [10.0 / 256.0], draws, seed))
    pn = res.summary["per_n"]["256"]
    out["root_stats_n256_gaussian"] = {
        "draws": pn["draws"],
        "median_frac_within_10_over_n":
            pn["median_frac_within"][str(10.0 / 256.0)],
        "ks_median": pn["ks_median"], "ks_p90": pn["ks_p90"],
        "min_scaled_dist_median": pn["min_scaled_dist_median"]}

    row = _sample_row("rademacher", 65536, 1, 0)
    s = extreme_singular_values(Circulant(row))
    out["spectrum_n65536_rademacher_seed1"] = {"s_min": s.s_min, "s_max": s.s_max}

    # Wilson coverage reference: seeded Bernoulli(0.3), 1000 repetitions of 250
    reps, per = 1000, 250
    seeds = mix_array(np.uint64(seed), np.uint64(999), np.uint64(0),
                      np.arange(reps, dtype=np.uint64))
    u = u64_to_unit(stream_block(seeds, 0, per))
    hits = (u < 0.3).sum(axis=1)
    cover = 0
    for h in hits:
        lo, hi = wilson_interval(int(h), per)
        cover += lo <= 0.3 <= hi
    out["wilson_coverage_bernoulli_03"] = {"reps": reps, "per_rep": per,
                                           "coverage": cover / reps}
    return out


def cmd_pilot(args) -> int:
    if args.suite != "all":
        raise ConfigError(f"unknown pilot suite {args.suite!r}")
    data = run_pilot_suite(args.trials, args.seed)
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {args.out}")
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="circroots",
        description="Random circulant spectra and random polynomial root "
                    "localization experiments.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="extreme singular values of a "
                                         "circulant or g-circulant")
    sp.add_argument("--n", type=int)
    sp.add_argument("--dist", type=str)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--g", type=int, default=1)
    sp.add_argument("--trials", type=int)
    sp.add_argument("--row", type=str, help="explicit first row, comma-separated")
    sp.add_argument("--out", type=str, help="optional eigenvalue CSV path")
    sp.set_defaults(func=cmd_spectrum)

    rp = sub.add_parser("roots", help="root cloud and localization statistics")
    rp.add_argument("--n", type=int)
    rp.add_argument("--dist", type=str)
    rp.add_argument("--phi", type=str, default="const")
    rp.add_argument("--seed", type=int, default=0)
    rp.add_argument("--poly", type=str, help="builtin test polynomial, e.g. z8-1")
    rp.add_argument("--widths", type=str, help="comma-separated annulus widths")
    rp.add_argument("--plot", action="store_true")
    rp.add_argument("--out", type=str, default="roots_out")
    rp.set_defaults(func=cmd_roots)

    ep = sub.add_parser("experiment", help="run a configured Monte Carlo sweep")
    ep.add_argument("--config", type=str, required=True)
    ep.add_argument("--out-dir", type=str, default=".")
    ep.add_argument("--plot", action="store_true")
    ep.add_argument("--threads", type=int)
    ep.add_argument("--thresholds", type=str,
                    help="pilot thresholds JSON to embed in the summary")
    ep.set_defaults(func=cmd_experiment)

    pp = sub.add_parser("pilot", help="freeze regression thresholds")
    pp.add_argument("--suite", type=str, default="all")
    pp.add_argument("--trials", type=int, default=10000)
    pp.add_argument("--seed", type=int, default=1)
    pp.add_argument("--out", type=str, default="thresholds.json")
    pp.set_defaults(func=cmd_pilot)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ConfigError, DomainError, SizeError, CertificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, ResolutionError, InsufficientDataError,
            UnsupportedError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except CircrootsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
