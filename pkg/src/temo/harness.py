"""Experiment harness: configured runs, seeded repeats, timing, persistence.

A run is fully described by a RunConfig; the same config always reproduces
the same numeric trajectory (wall times aside). Each repeat draws from its
own split of the seed stream. Per-generation wall time excludes indicator
computation; with ``time_selection_only`` it narrows further to the
environmental-selection call. Records are written as one CSV per repeat
(fixed columns) plus a JSON mirror of the whole record.
"""

from __future__ import annotations

import dataclasses
import json
import math
import platform
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from . import baselines, hype, moead, nsga3, rvea
from .directions import DirectionSet, das_dennis, largest_h_for, lattice_size, neighbors
from .indicators import hv_indicator, igd
from .problems import ProblemSpec, evaluate, make_problem, true_front
from .rng import RngStream
from .variation import VariationParams, pair_parents, polynomial_mutation, sbx

ALGORITHMS = ("nsga3", "moead", "hype", "rvea", "nsga3-seq", "moead-seq")
CSV_COLUMNS = ("generation", "time_s", "igd", "hv")


class ConfigError(ValueError):
    """Invalid or unsupported run configuration."""


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce one experiment."""

    algorithm: str = "nsga3"
    problem: str = "dtlz2"
    objectives: int = 3
    dim: int | None = None
    pop_size: int = 100
    generations: int = 100
    seed: int = 0
    repeats: int = 1
    eta_c: float = 20.0
    eta_m: float = 20.0
    pm: float | None = None
    theta: float = 5.0
    neighborhood: int | None = None
    divisions: int | None = None
    alpha: float = 2.0
    hv_samples: int | None = None
    hv_ref: str = "auto"
    indicators: tuple[str, ...] = ("igd", "hv")
    indicator_every: int = 1
    ref_front_size: int = 1000
    time_selection_only: bool = False
    out: str | None = None

    def validate(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}")
        if self.objectives < 2 or self.pop_size < 2 or self.repeats < 1:
            raise ConfigError("objectives >= 2, pop-size >= 2, repeats >= 1 required")
        if self.generations < 0 or self.indicator_every < 0:
            raise ConfigError("generations and indicator-every must be non-negative")
        if self.ref_front_size < self.objectives:
            raise ConfigError("ref-front-size must be at least the objective count")
        for name in self.indicators:
            if name not in ("igd", "hv", "eu"):
                raise ConfigError(f"unknown indicator {name!r}")
        if self.hv_ref != "auto":
            try:
                _parse_ref_vector(self.hv_ref, self.objectives)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None


def _parse_ref_vector(text: str, m: int) -> np.ndarray:
    parts = [float(v) for v in str(text).split(",")]
    if len(parts) != m:
        raise ValueError(f"hv-ref needs {m} comma-separated values")
    return np.asarray(parts)


@dataclass
class GenRow:
    generation: int
    time_s: float
    igd: float
    hv: float
    ideal: list[float]


@dataclass
class RepeatRecord:
    repeat: int
    initial: dict
    rows: list[GenRow] = field(default_factory=list)
    mean_gen_time_s: float = math.nan
    final_igd: float = math.nan
    final_hv: float = math.nan
    timed_out: bool = False


@dataclass
class RunRecord:
    config: dict
    metadata: dict
    repeats: list[RepeatRecord]
    summary: dict


@dataclass
class ScaleCell:
    size: int
    mean_gen_time_s: float
    generations_done: int
    status: str  # "ok" | "timeout"


@dataclass
class ScaleResult:
    kind: str
    config: dict
    metadata: dict
    cells: list[ScaleCell]


def _metadata() -> dict:
    from . import __version__

    return {
        "library": f"temo {__version__}",
        "platform": platform.platform(),
        "python": platform.python_version(),
        "numpy": np.__version__,
    }


def _resolve(config: RunConfig) -> tuple[ProblemSpec, DirectionSet, int]:
    """Problem spec, direction set, and the effective population size."""
    spec = make_problem(config.problem, m=config.objectives, d=config.dim)
    if config.divisions is not None:
        if config.divisions < 1:
            raise ConfigError("divisions must be positive")
        H = config.divisions
    else:
        if config.pop_size < config.objectives:
            raise ConfigError("pop-size below objective count leaves no directions")
        H = largest_h_for(config.pop_size, config.objectives)
    R = das_dennis(config.objectives, H)
    # decomposition-style algorithms need one subproblem per direction
    n_eff = R.count if config.algorithm in ("moead", "moead-seq", "rvea") else config.pop_size
    return spec, R, n_eff


class _Stepper:
    """Per-algorithm generation step; returns the new state and selection seconds."""

    def __init__(self, config: RunConfig, spec: ProblemSpec, R: DirectionSet, n: int):
        self.config = config
        self.spec = spec
        self.R = R
        self.n = n
        self.params = VariationParams(
            eta_c=config.eta_c,
            eta_m=config.eta_m,
            p_m=config.pm,
            lower=spec.lower,
            upper=spec.upper,
        )
        self.evaluate = lambda X: evaluate(spec, X)
        alg = config.algorithm
        if alg in ("moead", "moead-seq"):
            T = config.neighborhood or moead.default_neighborhood(n)
            if not 2 <= T <= n:
                raise ConfigError(f"neighborhood {T} out of range [2, {n}]")
            self.table = neighbors(R, T)

    def init(self, gen: np.random.Generator):
        X = self.spec.lower + gen.random((self.n, self.spec.d)) * (
            self.spec.upper - self.spec.lower
        )
        F = self.evaluate(X)
        if self.config.algorithm in ("moead", "moead-seq"):
            return moead.init_state(X, F, self.R.W, self.table, self.config.theta)
        return X, F

    def population(self, state) -> tuple[np.ndarray, np.ndarray]:
        if isinstance(state, moead.MoeadState):
            return state.X, state.F1
        return state

    def _offspring(self, X: np.ndarray, gen: np.random.Generator) -> np.ndarray:
        i1, i2 = pair_parents(gen, X.shape[0])
        children = sbx(gen, X[i1], X[i2], self.params)
        return polynomial_mutation(gen, children, self.params)

    def step(self, state, g: int, gen: np.random.Generator):
        alg = self.config.algorithm
        if alg == "moead":
            t0 = time.perf_counter()
            new = moead.step(state, gen, self.params, self.evaluate)
            return new, time.perf_counter() - t0
        if alg == "moead-seq":
            t0 = time.perf_counter()
            new = baselines.moead_step_sequential(state, gen, self.params, self.evaluate)
            return new, time.perf_counter() - t0

        X, F = state
        if X.shape[0] >= 2:
            O = self._offspring(X, gen)
            FO = self.evaluate(O)
            Xm = np.concatenate([X, O])
            Fm = np.concatenate([F, FO])
        else:  # degenerate shrunken population: mutate in place
            O = polynomial_mutation(gen, X, self.params)
            Xm = np.concatenate([X, O])
            Fm = np.concatenate([F, self.evaluate(O)])

        t0 = time.perf_counter()
        if alg == "nsga3":
            out = nsga3.environmental_selection(Xm, Fm, self.R, self.n, gen)
        elif alg == "nsga3-seq":
            out = baselines.nsga3_select_sequential(Xm, Fm, self.R, self.n, gen)
        elif alg == "hype":
            ref = (
                None
                if self.config.hv_ref == "auto"
                else _parse_ref_vector(self.config.hv_ref, self.spec.m)
            )
            s = self.config.hv_samples or 10 * self.n
            out = hype.environmental_selection(Xm, Fm, ref, self.n, s, gen)
        elif alg == "rvea":
            params = rvea.ApdParams(
                self.config.alpha, t=g, t_max=max(self.config.generations, 1)
            )
            out = rvea.apd_select(Xm, Fm, self.R, params)
        else:  # pragma: no cover
            raise ConfigError(f"unknown algorithm {alg!r}")
        return out, time.perf_counter() - t0


class _Indicators:
    """Cached reference front and HV corner for per-generation metrics."""

    def __init__(self, config: RunConfig, spec: ProblemSpec):
        self.want_igd = "igd" in config.indicators
        self.want_hv = "hv" in config.indicators
        self.front = None
        self.hv_ref = None
        if self.want_igd or self.want_hv:
            self.front = true_front(spec, config.ref_front_size)
            self.hv_ref = 1.1 * self.front.max(axis=0)
            self.hv_ref[self.hv_ref <= 0] = 1e-6

    def measure(self, F: np.ndarray) -> tuple[float, float]:
        gi = igd(F, self.front) if self.want_igd else math.nan
        gh = hv_indicator(F, self.hv_ref) if self.want_hv else math.nan
        return gi, gh


def run(config: RunConfig, deadline: float | None = None) -> RunRecord:
    """Execute all repeats of a configured run (optionally up to a deadline)."""
    config.validate()
    spec, R, n_eff = _resolve(config)
    stepper = _Stepper(config, spec, R, n_eff)
    metrics = _Indicators(config, spec)
    root = RngStream(config.seed)

    repeats: list[RepeatRecord] = []
    for rep in range(config.repeats):
        gen = root.split(rep).generator()
        state = stepper.init(gen)
        X, F = stepper.population(state)
        gi, gh = metrics.measure(F)
        record = RepeatRecord(
            repeat=rep,
            initial={"igd": gi, "hv": gh, "ideal": F.min(axis=0).tolist()},
        )
        for g in range(1, config.generations + 1):
            t0 = time.perf_counter()
            state, sel_s = stepper.step(state, g, gen)
            total_s = time.perf_counter() - t0
            time_s = sel_s if config.time_selection_only else total_s
            X, F = stepper.population(state)
            every = config.indicator_every
            if every > 0 and g % every == 0:
                gi, gh = metrics.measure(F)
            else:
                gi, gh = math.nan, math.nan
            record.rows.append(GenRow(g, time_s, gi, gh, F.min(axis=0).tolist()))
            if deadline is not None and time.perf_counter() > deadline:
                record.timed_out = True
                break
        X, F = stepper.population(state)
        fi, fh = metrics.measure(F)
        record.final_igd, record.final_hv = fi, fh
        if record.rows:
            record.mean_gen_time_s = float(np.mean([r.time_s for r in record.rows]))
        repeats.append(record)
        if deadline is not None and time.perf_counter() > deadline:
            break

    summary = {
        "median_final_igd": float(np.median([r.final_igd for r in repeats])),
        "median_final_hv": float(np.median([r.final_hv for r in repeats])),
        "mean_gen_time_s": float(np.mean([r.mean_gen_time_s for r in repeats])),
        "effective_pop_size": n_eff,
        "directions": R.count,
    }
    return RunRecord(dataclasses.asdict(config), _metadata(), repeats, summary)


def scaling_experiment(
    kind: str,
    base: RunConfig,
    steps: int,
    timeout_s: float | None = None,
) -> ScaleResult:
    """Double the population or the dimension per step and time each cell.

    A cell past its timeout is recorded as missing (NaN mean, status
    "timeout"); sibling cells still run.
    """
    if kind not in ("population", "dimension"):
        raise ConfigError("scale kind must be 'population' or 'dimension'")
    if steps < 1:
        raise ConfigError("steps must be at least 1")
    base.validate()
    cells: list[ScaleCell] = []
    for step_idx in range(steps):
        if kind == "population":
            size = base.pop_size * (2**step_idx)
            cfg = dataclasses.replace(base, pop_size=size, out=None)
        else:
            start = base.dim if base.dim is not None else 1024
            size = start * (2**step_idx)
            cfg = dataclasses.replace(base, dim=size, out=None)
        deadline = None if timeout_s is None else time.perf_counter() + timeout_s
        record = run(cfg, deadline=deadline)
        timed_out = any(r.timed_out for r in record.repeats) or len(
            record.repeats
        ) < cfg.repeats
        done = sum(len(r.rows) for r in record.repeats)
        if timed_out:
            cells.append(ScaleCell(size, math.nan, done, "timeout"))
        else:
            mean = float(np.mean([r.mean_gen_time_s for r in record.repeats]))
            cells.append(ScaleCell(size, mean, done, "ok"))
    return ScaleResult(kind, dataclasses.asdict(base), _metadata(), cells)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def emit(record: RunRecord, fmt: str, out_dir: str | Path) -> list[Path]:
    """Write a RunRecord as per-repeat CSVs or a single JSON mirror."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    if fmt == "csv":
        for rep in record.repeats:
            path = out / f"run_rep{rep.repeat}.csv"
            with open(path, "w") as fh:
                for key in ("algorithm", "problem", "seed"):
                    fh.write(f"# {key}={record.config[key]}\n")
                fh.write(f"# library={record.metadata['library']}\n")
                fh.write(f"# repeat={rep.repeat}\n")
                fh.write(",".join(CSV_COLUMNS) + "\n")
                for row in rep.rows:
                    fh.write(
                        f"{row.generation},{_fmt(row.time_s)},{_fmt(row.igd)},{_fmt(row.hv)}\n"
                    )
            written.append(path)
    elif fmt == "json":
        path = out / "run.json"
        with open(path, "w") as fh:
            json.dump(dataclasses.asdict(record), fh, indent=2)
        written.append(path)
    else:
        raise ConfigError(f"unknown emit format {fmt!r}")
    return written


def emit_scale(result: ScaleResult, out_dir: str | Path) -> list[Path]:
    """Write the scaling table as scale.csv plus a JSON mirror."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "scale.csv"
    with open(csv_path, "w") as fh:
        fh.write(f"# kind={result.kind}\n")
        fh.write(f"# algorithm={result.config['algorithm']}\n")
        fh.write(f"# library={result.metadata['library']}\n")
        fh.write("size,mean_gen_time_s,generations,status\n")
        for cell in result.cells:
            fh.write(
                f"{cell.size},{_fmt(cell.mean_gen_time_s)},{cell.generations_done},{cell.status}\n"
            )
    json_path = out / "scale.json"
    with open(json_path, "w") as fh:
        json.dump(dataclasses.asdict(result), fh, indent=2)
    return [csv_path, json_path]


def parse_run_csv(path: str | Path) -> tuple[dict, list[tuple[int, float, float, float]]]:
    """Read back an emitted per-repeat CSV: (metadata, data rows)."""
    meta: dict = {}
    rows: list[tuple[int, float, float, float]] = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                meta[key] = value
                continue
            if line.startswith("generation"):
                continue
            g, t, gi, gh = line.split(",")
            rows.append((int(g), float(t), float(gi), float(gh)))
    return meta, rows
