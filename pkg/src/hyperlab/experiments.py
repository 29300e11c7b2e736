"""Monte Carlo harness: sample, decompose, rank components, compare to theory.

Each trial samples one hypergraph, decomposes it into j-components, ranks
them by size (ties broken by smaller component id) and records the top m.
Trial t runs on seed splitmix64-mixed from the base seed, so trials are
reproducible in isolation and the full record list is byte-identical
regardless of worker count.

The centered statistic delta*L_i - (log lambda - 2.5 log log lambda)
should stay within a bounded band as n grows; its empirical 5-95% spread
is the operational stand-in for that bounded-in-probability claim.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .combinatorics import TheoryParams
from .enumeration import predicted_L1, predicted_M1
from .errors import ResourceLimitError, ValidationError
from .hypergraph import j_components, sample_hypergraph
from .rng import RNG_ALGORITHM, SEED_MIXER, trial_seed

QUANTILES = (0.05, 0.25, 0.50, 0.75, 0.95)
DEFAULT_EDGE_BUDGET = 5_000_000
# informational cutoff for "large" asymptotic proxies reported in summaries
REGIME_PROXY_MIN = 10.0


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    k: int
    j: int
    epsilon: float
    trials: int
    m: int = 3
    base_seed: int = 1
    cap: int = DEFAULT_EDGE_BUDGET

    def __post_init__(self) -> None:
        if not 1 <= self.j <= self.k - 1 < self.n:
            raise ValidationError(
                f"need 1 <= j <= k-1 < n, got j={self.j}, k={self.k}, n={self.n}"
            )
        if not 0.0 < self.epsilon < 1.0:
            raise ValidationError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.trials < 1:
            raise ValidationError(f"trials must be >= 1, got {self.trials}")
        if self.m < 1:
            raise ValidationError(f"m must be >= 1, got {self.m}")
        if self.cap < 1:
            raise ValidationError(f"cap must be >= 1, got {self.cap}")

    def params(self) -> TheoryParams:
        return TheoryParams(self.n, self.k, self.j, self.epsilon)


@dataclass(frozen=True)
class TrialRecord:
    """Top-m component statistics of one sampled hypergraph."""

    trial: int
    seed: int
    edges: int
    sizes: tuple[int, ...]
    orders: tuple[int, ...]
    hypertree: tuple[Optional[bool], ...]
    nonhypertree_count: int
    largest_nonhypertree: int


@dataclass(frozen=True)
class ExperimentSummary:
    config: ExperimentConfig
    theory: dict[str, float]
    regime: dict[str, float]
    l_quantiles: tuple[tuple[float, ...], ...]
    centered_quantiles: tuple[tuple[float, ...], ...]
    hypertree_frac: tuple[Optional[float], ...]
    runtime_seconds: float

    @property
    def median_L1(self) -> float:
        return self.l_quantiles[0][2]

    @property
    def centered_p05(self) -> float:
        return self.centered_quantiles[0][0]

    @property
    def centered_p95(self) -> float:
        return self.centered_quantiles[0][4]


def run_trial(params: TheoryParams, seed: int, m: int) -> TrialRecord:
    h = sample_hypergraph(params, seed)
    comps, _ = j_components(h, params.j)
    ranked = sorted(comps, key=lambda c: (-c.size, c.id))
    sizes, orders, flags = [], [], []
    for i in range(m):
        if i < len(ranked):
            sizes.append(ranked[i].size)
            orders.append(ranked[i].order)
            flags.append(ranked[i].is_hypertree)
        else:
            sizes.append(0)
            orders.append(0)
            flags.append(None)
    nonhyp = [c.size for c in comps if not c.is_hypertree]
    return TrialRecord(
        trial=0,  # caller stamps the index
        seed=seed,
        edges=len(h.edges),
        sizes=tuple(sizes),
        orders=tuple(orders),
        hypertree=tuple(flags),
        nonhypertree_count=len(nonhyp),
        largest_nonhypertree=max(nonhyp, default=0),
    )


def _trial_task(arg: tuple[tuple[int, int, int, float], int, int, int]) -> TrialRecord:
    (n, k, j, epsilon), base_seed, m, t = arg
    params = TheoryParams(n, k, j, epsilon)
    rec = run_trial(params, trial_seed(base_seed, t), m)
    return TrialRecord(
        trial=t,
        seed=rec.seed,
        edges=rec.edges,
        sizes=rec.sizes,
        orders=rec.orders,
        hypertree=rec.hypertree,
        nonhypertree_count=rec.nonhypertree_count,
        largest_nonhypertree=rec.largest_nonhypertree,
    )


def run_experiment(
    config: ExperimentConfig, workers: int = 1
) -> tuple[list[TrialRecord], ExperimentSummary]:
    """Run all trials (optionally in parallel) and aggregate.

    Output is independent of `workers`: each trial owns a splitmix64-mixed
    seed and records are collected in trial order.
    """
    params = config.params()
    expected_edges = math.comb(config.n, config.k) * params.p
    if expected_edges > config.cap:
        raise ResourceLimitError(
            f"expected edge count {expected_edges:.0f} exceeds budget {config.cap}"
        )
    start = time.perf_counter()
    key = (config.n, config.k, config.j, config.epsilon)
    tasks = [(key, config.base_seed, config.m, t) for t in range(config.trials)]
    if workers <= 1:
        records = [_trial_task(task) for task in tasks]
    else:
        chunk = max(1, config.trials // (workers * 4))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_trial_task, tasks, chunksize=chunk))
    runtime = time.perf_counter() - start
    return records, summarize(config, params, records, runtime)


def summarize(
    config: ExperimentConfig,
    params: TheoryParams,
    records: list[TrialRecord],
    runtime: float,
) -> ExperimentSummary:
    loglam = math.log(params.lam) if params.lam > 0 else float("nan")
    target = loglam - 2.5 * math.log(loglam) if params.lam > math.e else float("nan")
    theory = {
        "c0": float(params.c0),
        "p0": params.p0,
        "p": params.p,
        "delta": params.delta,
        "lambda": params.lam,
        "predicted_L1": predicted_L1(params) if params.lam > math.e else float("nan"),
        "predicted_M1": predicted_M1(params) if params.lam > math.e else float("nan"),
    }
    regime = {
        "eps4_nj": config.epsilon**4 * config.n**config.j,
        "eps2_nkj_over_logn": config.epsilon**2
        * config.n ** (config.k - config.j)
        / math.log(config.n),
        "lambda": params.lam,
    }
    lq, cq, frac = [], [], []
    for i in range(config.m):
        sizes = np.array([r.sizes[i] for r in records], dtype=np.float64)
        lq.append(tuple(float(v) for v in np.quantile(sizes, QUANTILES)))
        centered = params.delta * sizes - target
        cq.append(tuple(float(v) for v in np.quantile(centered, QUANTILES)))
        flags = [r.hypertree[i] for r in records if r.hypertree[i] is not None]
        frac.append(sum(flags) / len(flags) if flags else None)
    return ExperimentSummary(
        config=config,
        theory=theory,
        regime=regime,
        l_quantiles=tuple(lq),
        centered_quantiles=tuple(cq),
        hypertree_frac=tuple(frac),
        runtime_seconds=runtime,
    )


class Criterion(NamedTuple):
    name: str
    passed: bool
    detail: str


class VerdictReport(NamedTuple):
    criteria: list[Criterion]
    passed: bool


def compare_to_theory(
    summary: ExperimentSummary,
    records: list[TrialRecord],
    spread_width: float = 6.0,
    hypertree_threshold: float = 0.95,
) -> VerdictReport:
    """Pass/fail verdicts: (a) bounded centered spread for the largest
    component, (b) hypertree fraction across the recorded top-m, (c) the
    exact order identity M = 1 + c0*L on every hypertree-flagged entry."""
    if summary.config.trials < 30:
        raise ValidationError(
            f"comparison needs >= 30 trials, got {summary.config.trials}"
        )
    spread = summary.centered_p95 - summary.centered_p05
    crit_a = Criterion(
        name="centered_spread",
        passed=bool(spread <= spread_width),
        detail=f"p95-p05 spread of delta*L_1 - target = {spread:.4g} (limit {spread_width:g})",
    )
    flags = [f for r in records for f in r.hypertree if f is not None]
    if flags:
        frac = sum(flags) / len(flags)
        crit_b = Criterion(
            name="hypertree_fraction",
            passed=bool(frac >= hypertree_threshold),
            detail=f"top-m hypertree fraction = {frac:.4g} (threshold {hypertree_threshold:g})",
        )
    else:
        crit_b = Criterion(
            name="hypertree_fraction",
            passed=True,
            detail="no components recorded; fraction undefined (null)",
        )
    c0 = summary.config.params().c0
    violations = sum(
        1
        for r in records
        for L, M, f in zip(r.sizes, r.orders, r.hypertree)
        if f and M != 1 + c0 * L
    )
    crit_c = Criterion(
        name="order_identity",
        passed=violations == 0,
        detail=f"M = 1 + c0*L violations among hypertree entries: {violations}",
    )
    criteria = [crit_a, crit_b, crit_c]
    return VerdictReport(criteria=criteria, passed=all(c.passed for c in criteria))


# -- output formats ----------------------------------------------------------

CSV_HEADER = "trial,seed,edges,i,L_i,M_i,hypertree"


def csv_lines(records: list[TrialRecord]) -> str:
    """One row per (trial, rank); empty hypertree field for missing ranks."""
    out = [CSV_HEADER]
    for r in records:
        for i, (L, M, f) in enumerate(zip(r.sizes, r.orders, r.hypertree), start=1):
            flag = "" if f is None else ("1" if f else "0")
            out.append(f"{r.trial},{r.seed},{r.edges},{i},{L},{M},{flag}")
    return "\n".join(out) + "\n"


def _fmt(x: Optional[float]) -> str:
    if x is None:
        return "null"
    return f"{x:.10g}"


def machine_block(summary: ExperimentSummary) -> str:
    lines = [
        f"rng={RNG_ALGORITHM}",
        f"seed_mixer={SEED_MIXER}",
        f"trials={summary.config.trials}",
        f"predicted_L1={_fmt(summary.theory['predicted_L1'])}",
        f"median_L1={_fmt(summary.median_L1)}",
        f"centered_p05={_fmt(summary.centered_p05)}",
        f"centered_p95={_fmt(summary.centered_p95)}",
        f"hypertree_frac_1={_fmt(summary.hypertree_frac[0])}",
    ]
    return "\n".join(lines) + "\n"


def format_summary(summary: ExperimentSummary, footer: bool = True) -> str:
    cfg = summary.config
    th = summary.theory
    lines = [
        "== experiment summary ==",
        f"config: n={cfg.n} k={cfg.k} j={cfg.j} epsilon={_fmt(cfg.epsilon)} "
        f"trials={cfg.trials} m={cfg.m} base_seed={cfg.base_seed} cap={cfg.cap}",
        f"theory: c0={th['c0']:.0f} p0={_fmt(th['p0'])} p={_fmt(th['p'])} "
        f"delta={_fmt(th['delta'])} lambda={_fmt(th['lambda'])} "
        f"predicted_L1={_fmt(th['predicted_L1'])} predicted_M1={_fmt(th['predicted_M1'])}",
        "regime proxies (informational, large means the asymptotic regime is plausible):",
    ]
    for key, val in summary.regime.items():
        ok = "yes" if val >= REGIME_PROXY_MIN else "no"
        lines.append(f"  {key}={_fmt(val)} large={ok}")
    lines.append("per-rank statistics (quantiles 5/25/50/75/95):")
    for i in range(cfg.m):
        ls = " ".join(_fmt(v) for v in summary.l_quantiles[i])
        cs = " ".join(_fmt(v) for v in summary.centered_quantiles[i])
        lines.append(f"  i={i + 1} L=[{ls}] centered=[{cs}] "
                     f"hypertree_frac={_fmt(summary.hypertree_frac[i])}")
    lines.append("machine:")
    lines.append(machine_block(summary).rstrip("\n"))
    if footer:
        lines.append(f"# footer: runtime_seconds={summary.runtime_seconds:.3f}")
    return "\n".join(lines) + "\n"


def parse_config_file(text: str) -> dict[str, str]:
    """Flat key/value config: one `key = value` per line, `#` comments."""
    out: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"config line must be 'key = value': {raw!r}")
        key, val = (part.strip() for part in line.split("=", 1))
        if not key or not val:
            raise ValidationError(f"config line must be 'key = value': {raw!r}")
        out[key] = val
    return out
