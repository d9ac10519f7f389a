"""Deterministic, parallel Monte Carlo estimation of tail probabilities.

Every experiment draws trial t of size n from the stream keyed
mix(base_seed, n, 0, t); the third slot is held at zero so the whole
parameter grid (eps, rho, t, C0) shares one sample per trial and event
indicators are exactly monotone in the threshold, not just statistically.
Trials are partitioned into fixed-size chunks whose integer hit counts are
summed, so results are bitwise independent of the thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .coeff_dist import (CoeffDistribution, GAUSSIAN, LAPLACE, RADEMACHER,
                         UNIFORM, abs_mean, parse_dist, sample_streams)
from .dft import _dft_last
from .errors import (ConfigError, DomainError, InsufficientDataError,
                     NumericalError)
from .polynomial import (WeightFn, annulus_grid_points, annulus_min_from_values,
                         build_poly, circle_abs_val_deriv, circle_values,
                         parse_weight, second_deriv_majorant)
from .rng import mix_array
from .roots import annulus_stats, find_roots

EXPERIMENTS = ("SnTailEps", "SnTailRho", "AnnulusInf", "SalemZygmund",
               "SecondDeriv", "SmallBall", "RootStats", "CharFn")

# generic evaluation angle (2*pi times the golden-ratio conjugate) and a
# generic ray direction for the characteristic-function scan
GENERIC_ANGLE = 2.0 * math.pi * ((math.sqrt(5.0) - 1.0) / 2.0)
CHAR_FN_RAY = (math.cos(1.0), math.sin(1.0))

_CHUNK = {
    "SnTailEps": 2048,
    "SnTailRho": 2048,
    "AnnulusInf": 4,
    "SalemZygmund": 256,
    "SecondDeriv": 4096,
    "SmallBall": 8192,
    "RootStats": 8,
}


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    dist: str
    phi: str
    n_list: tuple
    param_grid: tuple
    trials: int
    base_seed: int
    threads: int = 1

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if not self.n_list:
            raise ConfigError("n_list must be nonempty")
        if not self.param_grid:
            raise ConfigError("param_grid must be nonempty")
        if self.trials < 100:
            raise ConfigError("trials must be >= 100")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        object.__setattr__(self, "n_list", tuple(int(n) for n in self.n_list))
        object.__setattr__(self, "param_grid",
                           tuple(float(p) for p in self.param_grid))
        try:
            parse_dist(self.dist)
            parse_weight(self.phi)
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc


@dataclass(frozen=True)
class TailEstimate:
    n: int
    param: float
    hits: int
    trials: int
    p_hat: float
    ci_lo: float
    ci_hi: float


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    estimates: list
    summary: dict


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def wilson_interval(hits: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    """95% (by default) Wilson score interval for a binomial proportion."""
    if trials < 1 or not 0 <= hits <= trials:
        raise DomainError("need 0 <= hits <= trials, trials >= 1")
    p = hits / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p + z2 / (2.0 * trials)) / denom
    half = z * math.sqrt(p * (1.0 - p) / trials + z2 / (4.0 * trials * trials)) / denom
    lo = 0.0 if hits == 0 else max(0.0, center - half)
    hi = 1.0 if hits == trials else min(1.0, center + half)
    return lo, hi


def _estimate(n: int, param: float, hits: int, trials: int) -> TailEstimate:
    lo, hi = wilson_interval(hits, trials)
    return TailEstimate(int(n), float(param), int(hits), int(trials),
                        hits / trials, lo, hi)


def scaling_fit(points) -> tuple[float, float, float]:
    """(slope, intercept, r^2) of a least-squares fit on (log x, log p).

    Nonpositive points are filtered; fewer than 3 survivors raise.  A
    constant p gives slope 0 with r^2 = 1 by convention.
    """
    pts = [(x, p) for x, p in points if x > 0 and p > 0]
    if len(pts) < 3:
        raise InsufficientDataError("need >= 3 points with positive p_hat")
    lx = np.log([x for x, _ in pts])
    lp = np.log([p for _, p in pts])
    slope, intercept = np.polyfit(lx, lp, 1)
    resid = lp - (slope * lx + intercept)
    ss_tot = float(((lp - lp.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - float((resid ** 2).sum()) / ss_tot
    return float(slope), float(intercept), r2


# -- trial sampling -----------------------------------------------------------

def trial_seed_block(base_seed: int, n: int, lo: int, hi: int) -> np.ndarray:
    """Seeds of trials lo..hi-1 (the parameter slot is fixed to 0: coupled)."""
    t = np.arange(lo, hi, dtype=np.uint64)
    return mix_array(np.uint64(base_seed), np.uint64(n), np.uint64(0), t)


def xi_rows(dist: CoeffDistribution, trial_seeds: np.ndarray, n: int) -> np.ndarray:
    """(trials, n) variate matrix; row t equals the coefficient stream of
    build_poly at seed trial_seeds[t]."""
    streams = mix_array(trial_seeds[:, None], np.arange(n, dtype=np.uint64)[None, :])
    return sample_streams(dist, streams)


def _run_chunked(cfg: ExperimentConfig, n: int, chunk_fn, chunk: int) -> np.ndarray:
    """Sum chunk_fn(lo, hi) over fixed trial chunks, optionally threaded."""
    edges = [(lo, min(lo + chunk, cfg.trials)) for lo in range(0, cfg.trials, chunk)]
    if cfg.threads == 1:
        parts = [chunk_fn(lo, hi) for lo, hi in edges]
    else:
        with ThreadPoolExecutor(max_workers=cfg.threads) as ex:
            parts = list(ex.map(lambda e: chunk_fn(*e), edges))
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    return total


def _threshold_runner(cfg: ExperimentConfig, stat_fn, thr_fn, op) -> list:
    """Count per-parameter events op(stat, threshold) over coupled trials."""
    dist = parse_dist(cfg.dist)
    params = np.array(cfg.param_grid)
    out = []
    for n in cfg.n_list:
        thr = np.array([thr_fn(n, p) for p in params])

        def chunk_hits(lo, hi, n=n, thr=thr):
            stats = stat_fn(dist, n, lo, hi)
            return op(stats[:, None], thr[None, :]).sum(axis=0)

        hits = _run_chunked(cfg, n, chunk_hits, _CHUNK[cfg.experiment])
        out.extend(_estimate(n, p, h, cfg.trials)
                   for p, h in zip(params, hits))
    return out


# -- experiments --------------------------------------------------------------

def _smin_stat(cfg):
    def stat(dist, n, lo, hi):
        rows = xi_rows(dist, trial_seed_block(cfg.base_seed, n, lo, hi), n)
        return np.abs(_dft_last(rows)).min(axis=1)
    return stat


def run_sn_tail_eps(cfg: ExperimentConfig) -> list:
    """Pr(s_min(circ(xi)) <= eps * n^-1/2) over (n, eps)."""
    assert cfg.experiment == "SnTailEps"
    return _threshold_runner(cfg, _smin_stat(cfg),
                             lambda n, eps: eps * n ** -0.5, np.less_equal)


def run_sn_tail_rho(cfg: ExperimentConfig) -> list:
    """Pr(s_min(circ(xi)) <= n^-rho) over (n, rho)."""
    assert cfg.experiment == "SnTailRho"
    return _threshold_runner(cfg, _smin_stat(cfg),
                             lambda n, rho: n ** -rho, np.less_equal)


def run_annulus_inf(cfg: ExperimentConfig) -> list:
    """Pr(annulus minimum-modulus estimate < eps * n^-1/2) over (n, eps).

    All eps share one circle grid at the spacing required by the smallest
    eps (finer grids satisfy every larger eps), which makes the per-trial
    event indicator exactly monotone across the eps grid.
    """
    assert cfg.experiment == "AnnulusInf"
    dist = parse_dist(cfg.dist)
    phi = parse_weight(cfg.phi)
    params = np.array(cfg.param_grid)
    if np.any(params <= 0):
        raise ConfigError("AnnulusInf needs strictly positive eps values")
    out = []
    for n in cfg.n_list:
        m = annulus_grid_points(n, float(params.min()))
        weights = phi(np.arange(n) / n)
        thresholds = params * n ** -0.5

        def chunk_hits(lo, hi, n=n, m=m, weights=weights, thresholds=thresholds):
            seeds = trial_seed_block(cfg.base_seed, n, lo, hi)
            rows = xi_rows(dist, seeds, n) * weights
            hits = np.zeros(params.size, dtype=np.int64)
            for row in rows:     # row-wise keeps the grid arrays cache-sized
                abs_t, abs_tp = circle_abs_val_deriv(row, m, ordered=False)
                m2 = second_deriv_majorant(row, n)
                for i, eps in enumerate(params):
                    est = annulus_min_from_values(abs_t, abs_tp, eps, n, m2)
                    hits[i] += est < thresholds[i]
            return hits

        hits = _run_chunked(cfg, n, chunk_hits, _CHUNK["AnnulusInf"])
        out.extend(_estimate(n, p, h, cfg.trials) for p, h in zip(params, hits))
    return out


def weight_sq_sum(phi: WeightFn, n: int) -> float:
    """sum_j phi(j/n)^2, the variance budget of the trigonometric polynomial."""
    return float((phi(np.arange(n) / n) ** 2).sum())


def run_salem_zygmund(cfg: ExperimentConfig) -> list:
    """Rate of certified sup-norm violations ||t||_inf >= C0 sqrt(r_n log n).

    Uses the certified LOWER bound (the grid maximum), so a violation is
    counted only when it provably occurred.
    """
    assert cfg.experiment == "SalemZygmund"
    phi = parse_weight(cfg.phi)

    def stat(dist, n, lo, hi):
        seeds = trial_seed_block(cfg.base_seed, n, lo, hi)
        rows = xi_rows(dist, seeds, n) * phi(np.arange(n) / n)
        return np.abs(circle_values(rows, 8 * n)).max(axis=-1)

    def thr(n, c0):
        return c0 * math.sqrt(weight_sq_sum(phi, n) * math.log(n))

    return _threshold_runner(cfg, stat, thr, np.greater_equal)


def run_second_deriv(cfg: ExperimentConfig) -> list:
    """Rate of majorant exceedances sum j(j-1)|c_j|(1+n^-2)^(j-2) > param * n^13/4.

    The parameter scales the threshold; param 1.0 reproduces the plain
    n^13/4 cut.
    """
    assert cfg.experiment == "SecondDeriv"
    phi = parse_weight(cfg.phi)

    def stat(dist, n, lo, hi):
        seeds = trial_seed_block(cfg.base_seed, n, lo, hi)
        rows = xi_rows(dist, seeds, n) * phi(np.arange(n) / n)
        return second_deriv_majorant(rows, n, exponent_shift=-2)

    return _threshold_runner(cfg, stat,
                             lambda n, param: param * n ** (13.0 / 4.0),
                             np.greater)


def run_small_ball(cfg: ExperimentConfig) -> ExperimentResult:
    """Pr(|t(x)| < t * sqrt(n)) at a fixed generic angle, with a log-log fit."""
    assert cfg.experiment == "SmallBall"
    phi = parse_weight(cfg.phi)

    def stat(dist, n, lo, hi):
        seeds = trial_seed_block(cfg.base_seed, n, lo, hi)
        rows = xi_rows(dist, seeds, n) * phi(np.arange(n) / n)
        phase = np.exp(1j * GENERIC_ANGLE * np.arange(n))
        return np.abs(rows @ phase)

    ests = _threshold_runner(cfg, stat,
                             lambda n, t: t * math.sqrt(n), np.less)
    summary = {"x": GENERIC_ANGLE, "fits": _per_n_fits(ests)}
    return ExperimentResult(cfg, ests, summary)


def run_root_stats(cfg: ExperimentConfig) -> ExperimentResult:
    """Root-localization sweep: per width, the fraction of all computed roots
    with ||z|-1| <= width, plus argument-uniformity and repulsion summaries."""
    assert cfg.experiment == "RootStats"
    dist = parse_dist(cfg.dist)
    phi = parse_weight(cfg.phi)
    widths = np.array(cfg.param_grid)
    ests = []
    summary_per_n = {}
    for n in cfg.n_list:
        def chunk_stats(lo, hi, n=n):
            seeds = trial_seed_block(cfg.base_seed, n, lo, hi)
            inside = np.zeros(widths.size, dtype=np.int64)
            total = 0
            ks, msd, fracs = [], [], []
            for s in seeds:
                p = build_poly(dist, phi, n, int(s))
                rs = find_roots(p)
                if not rs.converged:
                    raise NumericalError(
                        f"root finding did not converge (n={n}, seed={int(s)})")
                st = annulus_stats(rs, n, widths=widths.tolist())
                d = np.abs(np.abs(rs.roots) - 1.0)
                inside += (d[:, None] <= widths[None, :]).sum(axis=0)
                total += rs.roots.size
                ks.append(st.ks_uniform)
                msd.append(st.min_scaled_dist)
                fracs.append([st.frac_within[float(w)] for w in widths])
            return inside, total, ks, msd, fracs

        parts_edges = [(lo, min(lo + _CHUNK["RootStats"], cfg.trials))
                       for lo in range(0, cfg.trials, _CHUNK["RootStats"])]
        if cfg.threads == 1:
            parts = [chunk_stats(lo, hi) for lo, hi in parts_edges]
        else:
            with ThreadPoolExecutor(max_workers=cfg.threads) as ex:
                parts = list(ex.map(lambda e: chunk_stats(*e), parts_edges))
        inside = sum(p[0] for p in parts)
        total = sum(p[1] for p in parts)
        ks = np.sort(np.concatenate([p[2] for p in parts]))
        msd = np.sort(np.concatenate([p[3] for p in parts]))
        fr = np.concatenate([p[4] for p in parts], axis=0)
        ests.extend(_estimate(n, w, c, total) for w, c in zip(widths, inside))
        summary_per_n[str(n)] = {
            "draws": cfg.trials,
            "ks_median": float(np.quantile(ks, 0.5)),
            "ks_p90": float(np.quantile(ks, 0.9)),
            "min_scaled_dist_median": float(np.quantile(msd, 0.5)),
            "median_frac_within": {str(float(w)): float(np.median(fr[:, i]))
                                   for i, w in enumerate(widths)},
        }
    return ExperimentResult(cfg, ests, {"per_n": summary_per_n})


def char_fn_product(dist: CoeffDistribution, phi: WeightFn, n: int,
                    x: float, s: tuple[float, float]) -> float:
    """Product over j of E cos(pi xi psi_j) with
    psi_j = phi(j/n) (s1 cos(jx) + s2 sin(jx)) / (pi sqrt(n)).

    Closed forms per law; only symmetric laws are supported (all four are).
    """
    j = np.arange(n)
    psi = phi(j / n) * (s[0] * np.cos(j * x) + s[1] * np.sin(j * x)) \
        / (math.pi * math.sqrt(n))
    if dist.kind == RADEMACHER:
        factors = np.cos(math.pi * psi)
    elif dist.kind == GAUSSIAN:
        factors = np.exp(-0.5 * (math.pi * psi) ** 2)
    elif dist.kind == UNIFORM:
        factors = np.sinc(dist.param * psi)   # sin(pi a psi) / (pi a psi)
    elif dist.kind == LAPLACE:
        factors = 1.0 / (1.0 + (math.pi * dist.param * psi) ** 2)
    else:
        raise DomainError(f"unsupported distribution kind {dist.kind!r}")
    return float(np.prod(factors))


def run_char_fn(cfg: ExperimentConfig) -> ExperimentResult:
    """Deterministic scan of the characteristic-function product along a ray;
    param values are the radii |s|."""
    assert cfg.experiment == "CharFn"
    dist = parse_dist(cfg.dist)
    phi = parse_weight(cfg.phi)
    values = {}
    for n in cfg.n_list:
        values[str(n)] = {
            str(r): char_fn_product(
                dist, phi, n, GENERIC_ANGLE,
                (r * CHAR_FN_RAY[0], r * CHAR_FN_RAY[1]))
            for r in cfg.param_grid
        }
    return ExperimentResult(cfg, [], {"x": GENERIC_ANGLE, "ray": CHAR_FN_RAY,
                                      "values": values})


# -- dispatch and reporting ---------------------------------------------------

def _per_n_fits(estimates) -> dict:
    fits = {}
    for n in sorted({e.n for e in estimates}):
        pts = [(e.param, e.p_hat) for e in estimates if e.n == n]
        try:
            slope, intercept, r2 = scaling_fit(pts)
            fits[str(n)] = {"slope": slope, "intercept": intercept, "r2": r2}
        except InsufficientDataError:
            fits[str(n)] = None
    return fits


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Run any configured experiment and attach the standard summary."""
    if cfg.experiment == "SmallBall":
        return run_small_ball(cfg)
    if cfg.experiment == "RootStats":
        return run_root_stats(cfg)
    if cfg.experiment == "CharFn":
        return run_char_fn(cfg)
    runner = {
        "SnTailEps": run_sn_tail_eps,
        "SnTailRho": run_sn_tail_rho,
        "AnnulusInf": run_annulus_inf,
        "SalemZygmund": run_salem_zygmund,
        "SecondDeriv": run_second_deriv,
    }[cfg.experiment]
    ests = runner(cfg)
    summary: dict = {"fits": _per_n_fits(ests)}
    if cfg.experiment == "SnTailRho":
        summary["delta"] = {str(p): min(p, 0.1) for p in cfg.param_grid}
        summary["prime_n"] = {str(n): is_prime(n) for n in cfg.n_list}
    if cfg.experiment == "SalemZygmund":
        summary["sup_violation_rate_target"] = {
            str(n): 8.0 * math.pi / n ** 2 for n in cfg.n_list}
    if cfg.experiment == "SecondDeriv":
        dist = parse_dist(cfg.dist)
        summary["markov_rate_bound"] = {
            str(n): math.e * abs_mean(dist)
            * float((np.arange(n) ** 2).sum()) / n ** (13.0 / 4.0)
            for n in cfg.n_list}
    return ExperimentResult(cfg, ests, summary)


CSV_HEADER = "experiment,dist,phi,n,param,trials,hits,p_hat,ci_lo,ci_hi,base_seed,prime_n"


def results_csv_lines(cfg: ExperimentConfig, estimates) -> list[str]:
    lines = [CSV_HEADER]
    for e in estimates:
        lines.append(",".join([
            cfg.experiment, cfg.dist, cfg.phi, str(e.n), repr(e.param),
            str(e.trials), str(e.hits), repr(e.p_hat), repr(e.ci_lo),
            repr(e.ci_hi), str(cfg.base_seed), "1" if is_prime(e.n) else "0",
        ]))
    return lines


def write_results_csv(path, cfg: ExperimentConfig, estimates) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(results_csv_lines(cfg, estimates)) + "\n")
