"""Reproduction sweeps: paired analytic and Monte Carlo columns per study.

Each supported figure id maps to a sweep (interference versus user offset,
spectral efficiency versus the SINR factor, energy efficiency versus
antenna counts) evaluated on a deterministic per-point seed lattice, so a
run is reproducible bit-for-bit regardless of worker count.
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import metadata as _im

import numpy as np

from .config import ExperimentConfig, load_config
from .energy import EnergyModel, TrafficModel, energy_efficiency_mc, energy_efficiency_quad
from .errors import ConfigurationError, ParameterError
from .channel import ChannelParams
from .interference import (
    InterferenceScenario,
    avg_interference_hcpp,
    avg_interference_ppp,
    mc_interference,
    mc_interference_ppp,
)
from .point_process import HcppParams, Window, first_moment
from .zf_capacity import AntennaConfig, spectral_efficiency_bound, spectral_efficiency_mc

__all__ = ["FIGURE_IDS", "ResultRow", "ResultTable", "run_figure"]

FIGURE_IDS = (2, 3, 4, 6, 7, 8, 9, 10, 11)

WORKERS_ENV = "HCPPNET_WORKERS"

try:
    _VERSION = _im.version("hcppnet")
except _im.PackageNotFoundError:
    _VERSION = "0.0.0"


@dataclass(frozen=True)
class ResultRow:
    series: str
    sweep_value: float
    analytic: float
    mc_mean: float
    mc_std_error: float
    replications: int
    units: str


@dataclass
class ResultTable:
    figure_id: int
    axis: str
    rows: list[ResultRow]
    metadata: dict = field(default_factory=dict)

    CSV_HEADER = ("series", "sweep_value", "analytic", "mc_mean", "mc_std_error", "replications", "units")

    def write_csv(self, path: str) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(self.CSV_HEADER)
            for row in self.rows:
                writer.writerow(
                    (
                        row.series,
                        repr(float(row.sweep_value)),
                        repr(float(row.analytic)),
                        repr(float(row.mc_mean)),
                        repr(float(row.mc_std_error)),
                        row.replications,
                        row.units,
                    )
                )

    def write_metadata(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.metadata, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _rng_for(master: int, figure_id: int, series_idx: int, point_idx: int) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=master, spawn_key=(figure_id, series_idx, point_idx))
    return np.random.Generator(np.random.PCG64(seq))


def _eval_task(task: dict) -> ResultRow:
    kind = task["kind"]
    rng = _rng_for(task["master_seed"], task["figure_id"], task["series_idx"], task["point_idx"])
    reps = task["reps"]
    if kind == "itf_hcpp":
        scenario = task["scenario"]
        window = Window.square(task["window_side"]) if task.get("window_side") else None
        analytic = avg_interference_hcpp(scenario)
        est = mc_interference(scenario, reps, rng, window=window)
        units = "W"
    elif kind == "itf_ppp":
        scenario = task["scenario"]
        window = Window.square(task["window_side"]) if task.get("window_side") else None
        analytic = avg_interference_ppp(scenario)
        est = mc_interference_ppp(scenario, reps, rng, window=window)
        units = "W"
    elif kind == "se":
        cfg = task["antennas"]
        analytic = spectral_efficiency_bound(cfg, task["xi"])
        est = spectral_efficiency_mc(cfg, task["xi"], reps, rng)
        units = "bit/s/Hz"
    elif kind == "ee":
        cfg = task["antennas"]
        tm = task["traffic"]
        scenario = task["scenario"]
        energy = task["energy"]
        if task["model"] == "ppp":
            i_avg = avg_interference_ppp(scenario)
            intensity = scenario.hcpp.lambda_p
        else:
            i_avg = avg_interference_hcpp(scenario)
            intensity = first_moment(scenario.hcpp)
        analytic = energy_efficiency_quad(
            cfg, tm, scenario, energy, i_avg=i_avg, station_intensity=intensity
        )
        est = energy_efficiency_mc(
            cfg, tm, scenario, energy, reps, rng, i_avg=i_avg, station_intensity=intensity
        )
        units = "bit/Hz/J"
    else:
        raise ParameterError(f"unknown task kind {kind!r}")
    return ResultRow(
        series=task["series"],
        sweep_value=task["sweep_value"],
        analytic=float(analytic),
        mc_mean=est.mean,
        mc_std_error=est.std_error,
        replications=est.replications,
        units=units,
    )


def _grid(cfg: ExperimentConfig, axis: str, default: list[float]) -> list[float]:
    if cfg.sweep_axis is None:
        return default
    if cfg.sweep_axis != axis:
        raise ConfigurationError(
            f"config sweep axis {cfg.sweep_axis!r} does not match this figure's axis {axis!r}"
        )
    return list(cfg.sweep_values)


def _interference_tasks(figure_id: int, cfg: ExperimentConfig, reps: int) -> tuple[str, list[dict]]:
    base = cfg.scenario()
    tasks: list[dict] = []
    if figure_id == 2:
        axis = "x_off"
        grid = _grid(cfg, axis, [50.0 * k for k in range(1, 9)])
        series_idx = 0
        for alpha in (3.4, 3.8, 4.2):
            channel = ChannelParams(base.channel.beta, alpha, base.channel.sigma_s_db)
            for model in ("hcpp", "ppp"):
                for point_idx, x in enumerate(grid):
                    tasks.append(
                        {
                            "kind": f"itf_{model}",
                            "series": f"{model} alpha={alpha:g}",
                            "series_idx": series_idx,
                            "point_idx": point_idx,
                            "sweep_value": x,
                            "scenario": InterferenceScenario(
                                base.hcpp, channel, x, base.mean_tx_power
                            ),
                            "window_side": cfg.window_side,
                            "reps": reps,
                        }
                    )
                series_idx += 1
    elif figure_id == 3:
        axis = "x_off"
        grid = _grid(cfg, axis, [40.0 * k for k in range(0, 8)])
        for series_idx, delta in enumerate((300.0, 400.0, 500.0)):
            hcpp = HcppParams(base.hcpp.lambda_p, delta)
            for point_idx, x in enumerate(grid):
                tasks.append(
                    {
                        "kind": "itf_hcpp",
                        "series": f"hcpp delta={delta:g}",
                        "series_idx": series_idx,
                        "point_idx": point_idx,
                        "sweep_value": x,
                        "scenario": InterferenceScenario(hcpp, base.channel, x, base.mean_tx_power),
                        "window_side": cfg.window_side,
                        "reps": reps,
                    }
                )
    elif figure_id == 4:
        axis = "x_off"
        grid = _grid(cfg, axis, [50.0 * k for k in range(0, 9)])
        for series_idx, factor in enumerate((0.5, 1.0, 2.0)):
            hcpp = HcppParams(base.hcpp.lambda_p * factor, base.hcpp.delta)
            for point_idx, x in enumerate(grid):
                tasks.append(
                    {
                        "kind": "itf_hcpp",
                        "series": f"hcpp lambda_p={hcpp.lambda_p:.4e}",
                        "series_idx": series_idx,
                        "point_idx": point_idx,
                        "sweep_value": x,
                        "scenario": InterferenceScenario(hcpp, base.channel, x, base.mean_tx_power),
                        "window_side": cfg.window_side,
                        "reps": reps,
                    }
                )
    else:
        raise ParameterError(f"not an interference figure: {figure_id}")
    return axis, tasks


def _se_tasks(figure_id: int, cfg: ExperimentConfig, reps: int) -> tuple[str, list[dict]]:
    axis = "xi"
    grid = _grid(cfg, axis, list(np.logspace(-2.0, 4.0, 13)))
    tasks: list[dict] = []
    if figure_id == 6:
        serieses = [(f"n_t={n}", AntennaConfig(n, 1)) for n in (2, 4, 8)]
    else:
        serieses = [(f"s={s}", AntennaConfig(8, s)) for s in (1, 2, 4, 8)]
    for series_idx, (label, antennas) in enumerate(serieses):
        for point_idx, xi in enumerate(grid):
            tasks.append(
                {
                    "kind": "se",
                    "series": label,
                    "series_idx": series_idx,
                    "point_idx": point_idx,
                    "sweep_value": xi,
                    "antennas": antennas,
                    "xi": xi,
                    "reps": reps,
                }
            )
    return axis, tasks


def _ee_tasks(figure_id: int, cfg: ExperimentConfig, reps: int) -> tuple[str, list[dict]]:
    base = cfg.ee_scenario()
    tasks: list[dict] = []

    def add(series, series_idx, point_idx, value, antennas, tm, scenario, model):
        tasks.append(
            {
                "kind": "ee",
                "series": series,
                "series_idx": series_idx,
                "point_idx": point_idx,
                "sweep_value": float(value),
                "antennas": antennas,
                "traffic": tm,
                "scenario": scenario,
                "energy": cfg.energy,
                "model": model,
                "reps": reps,
            }
        )

    if figure_id == 8:
        axis = "s"
        series_idx = 0
        for n_t in (8, 12, 16):
            grid = [v for v in _grid(cfg, axis, [float(s) for s in range(1, n_t + 1)]) if v <= n_t]
            if not grid:
                raise ConfigurationError(f"sweep grid has no feasible stream counts for n_t={n_t}")
            for model in ("hcpp", "ppp"):
                for point_idx, s in enumerate(grid):
                    add(
                        f"{model} n_t={n_t}",
                        series_idx,
                        point_idx,
                        s,
                        AntennaConfig(n_t, int(s)),
                        cfg.traffic,
                        base,
                        model,
                    )
                series_idx += 1
        return axis, tasks

    axis = "n"
    grid = _grid(cfg, axis, [float(n) for n in range(1, 17)])
    if figure_id == 9:
        series_idx = 0
        for delta in (300.0, 400.0, 500.0):
            hcpp = HcppParams(base.hcpp.lambda_p, delta)
            scenario = InterferenceScenario(hcpp, base.channel, base.x_off, base.mean_tx_power)
            for point_idx, n in enumerate(grid):
                add(f"hcpp delta={delta:g}", series_idx, point_idx, n, AntennaConfig(int(n), int(n)), cfg.traffic, scenario, "hcpp")
            series_idx += 1
        # station spacing does not enter the Poisson baseline, so one curve
        for point_idx, n in enumerate(grid):
            add("ppp", series_idx, point_idx, n, AntennaConfig(int(n), int(n)), cfg.traffic, base, "ppp")
    elif figure_id == 10:
        series_idx = 0
        for theta in (1.2, 1.5, 1.8):
            tm = TrafficModel(theta, cfg.traffic.rho_min, cfg.traffic.b_w)
            for model in ("hcpp", "ppp"):
                for point_idx, n in enumerate(grid):
                    add(f"{model} theta={theta:g}", series_idx, point_idx, n, AntennaConfig(int(n), int(n)), tm, base, model)
                series_idx += 1
    elif figure_id == 11:
        series_idx = 0
        for alpha in (3.8, 4.0, 4.2):
            channel = ChannelParams(base.channel.beta, alpha, base.channel.sigma_s_db)
            scenario = InterferenceScenario(base.hcpp, channel, base.x_off, base.mean_tx_power)
            for model in ("hcpp", "ppp"):
                for point_idx, n in enumerate(grid):
                    add(f"{model} alpha={alpha:g}", series_idx, point_idx, n, AntennaConfig(int(n), int(n)), cfg.traffic, scenario, model)
                series_idx += 1
    else:
        raise ParameterError(f"not an energy figure: {figure_id}")
    return axis, tasks


def _resolve_workers(workers: int | None, figure_id: int, n_tasks: int) -> int:
    if workers is None:
        env = os.environ.get(WORKERS_ENV)
        if env is not None:
            try:
                workers = int(env)
            except ValueError as exc:
                raise ConfigurationError(f"{WORKERS_ENV} must be an integer, got {env!r}") from exc
        elif figure_id in (2, 3, 4):
            # pattern-level Monte Carlo dominates these; fan out by default
            workers = min(4, os.cpu_count() or 1)
        else:
            workers = 1
    if workers < 1:
        raise ConfigurationError(f"worker count must be >= 1, got {workers}")
    return min(workers, n_tasks)


def run_figure(
    figure_id: int,
    cfg: ExperimentConfig | None = None,
    reps: int | None = None,
    seed: int | None = None,
    workers: int | None = None,
) -> ResultTable:
    """Produce the data table behind one figure.

    ``reps`` overrides the per-point Monte Carlo effort, ``seed`` the
    config's master seed, ``workers`` the process fan-out (default: the
    environment variable, else automatic).  Identical inputs give an
    identical table regardless of worker count.
    """
    if figure_id not in FIGURE_IDS:
        raise ParameterError(f"unknown figure id {figure_id}; supported: {FIGURE_IDS}")
    if cfg is None:
        cfg = load_config(None)
    master_seed = cfg.seed if seed is None else int(seed)

    if figure_id in (2, 3, 4):
        axis, tasks = _interference_tasks(figure_id, cfg, reps or cfg.realizations)
    elif figure_id in (6, 7):
        axis, tasks = _se_tasks(figure_id, cfg, reps or cfg.se_draws)
    else:
        axis, tasks = _ee_tasks(figure_id, cfg, reps or cfg.ee_draws)

    for task in tasks:
        task["master_seed"] = master_seed
        task["figure_id"] = figure_id

    n_workers = _resolve_workers(workers, figure_id, len(tasks))
    if n_workers > 1:
        try:
            with ProcessPoolExecutor(max_workers=n_workers) as pool:
                rows = list(pool.map(_eval_task, tasks))
        except OSError:
            rows = [_eval_task(t) for t in tasks]
    else:
        rows = [_eval_task(t) for t in tasks]

    metadata = {
        "figure": figure_id,
        "axis": axis,
        "seed": master_seed,
        "workers_affect_output": False,
        "package_version": _VERSION,
        "series": sorted({r.series for r in rows}),
        "units": rows[0].units if rows else None,
        "columns": list(ResultTable.CSV_HEADER),
        "config": cfg.raw,
    }
    return ResultTable(figure_id=figure_id, axis=axis, rows=rows, metadata=metadata)
