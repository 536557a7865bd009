"""Candidate enumeration, placement ranking, and model comparison.

A placement run moves the panel across a candidate set, scores each
position by a cell-edge statistic of the reflected-path SINR map, and
ranks candidates best-first.  Ties break by distance from the service
area's ground center, then by coordinates, so rankings are total and
reproducible.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .coverage import (
    CellExtent,
    EdgeStats,
    cell_edge_points,
    edge_stats,
    sinr_map_conventional,
    sinr_map_irs,
)
from .linkbudget import Position3D, distance
from .scenario import Objective, Scenario, with_panel_position


@dataclass(frozen=True)
class ExplicitList:
    """Candidate positions given verbatim."""

    positions: tuple[Position3D, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "positions", tuple(self.positions))
        if len(self.positions) == 0:
            raise ValueError("candidate list must not be empty")


@dataclass(frozen=True)
class GridSweep:
    """Candidates on a step lattice over an extent, boundary included."""

    extent: CellExtent
    step: float  # m
    height: float  # m

    def __post_init__(self) -> None:
        if not (math.isfinite(self.step) and self.step > 0):
            raise ValueError("sweep step must be positive")
        if not math.isfinite(self.height):
            raise ValueError("sweep height must be finite")


CandidateSpec = ExplicitList | GridSweep


@dataclass(frozen=True)
class PlacementResult:
    """One scored candidate: its position, objective, and edge summary."""

    irs_position: Position3D
    objective_db: float
    edge: EdgeStats


@dataclass(frozen=True)
class ComparisonReport:
    """Edge statistics of the direct and reflected serving models."""

    conventional_power: float  # W
    irs_power: float  # W
    irs_position: Position3D
    conventional_edge: EdgeStats
    irs_edge: EdgeStats
    power_reduction_fraction: float

    def __post_init__(self) -> None:
        expected = 1.0 - self.irs_power / self.conventional_power
        if self.power_reduction_fraction != expected:
            raise ValueError("power_reduction_fraction is inconsistent with the powers")
        if not 0.0 <= self.power_reduction_fraction <= 1.0:
            raise ValueError("power_reduction_fraction must lie in [0, 1]")


def _sweep_axis(origin: float, span: float, step: float) -> list[float]:
    ticks = [origin + k * step for k in range(int(math.floor(span / step)) + 1)]
    far = origin + span
    if ticks[-1] != far:
        ticks.append(far)
    return ticks


def enumerate_candidates(spec: CandidateSpec) -> list[Position3D]:
    """Expand a candidate spec into a deterministic position list.

    Grid sweeps are row-major and always include the extent boundary, so
    a step wider than the extent still yields the four corners.
    """
    if isinstance(spec, ExplicitList):
        return list(spec.positions)
    xs = _sweep_axis(spec.extent.origin_x, spec.extent.width, spec.step)
    ys = _sweep_axis(spec.extent.origin_y, spec.extent.depth, spec.step)
    return [Position3D(x, y, spec.height) for y in ys for x in xs]


def _objective_value(stats: EdgeStats, objective: Objective) -> float:
    return stats.min_db if objective is Objective.EDGE_MIN else stats.mean_db


def evaluate_placement(
    scenario: Scenario, irs_position: Position3D, objective: Objective
) -> PlacementResult:
    """Score one panel position by the requested cell-edge statistic."""
    if distance(scenario.micro_bs_position, irs_position) == 0.0:
        raise ValueError("candidate position coincides with the base station")
    candidate = with_panel_position(scenario, irs_position)
    sinr_map = sinr_map_irs(candidate)
    edge = cell_edge_points(
        scenario.micro_extent, scenario.grid_resolution, scenario.user_height
    )
    stats = edge_stats(sinr_map, edge)
    return PlacementResult(
        irs_position=irs_position,
        objective_db=_objective_value(stats, objective),
        edge=stats,
    )


def optimize_placement(
    scenario: Scenario,
    spec: CandidateSpec,
    objective: Objective,
    max_workers: int = 1,
) -> list[PlacementResult]:
    """Rank every candidate, best objective first.

    Candidates are independent, so evaluation may fan out over threads;
    the ranking never depends on worker count.  Ties order by distance
    from the service area's ground center, then by (x, y, z).
    """
    candidates = enumerate_candidates(spec)
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = list(
                pool.map(lambda c: evaluate_placement(scenario, c, objective), candidates)
            )
    else:
        results = [evaluate_placement(scenario, c, objective) for c in candidates]
    cx, cy = scenario.micro_extent.center()
    center = Position3D(cx, cy, 0.0)

    def sort_key(result: PlacementResult) -> tuple:
        position = result.irs_position
        return (
            -result.objective_db,
            distance(position, center),
            position.x,
            position.y,
            position.z,
        )

    return sorted(results, key=sort_key)


def compare_models(scenario: Scenario, best: PlacementResult) -> ComparisonReport:
    """Contrast direct full-power service with panel-assisted reduced power.

    The direct map runs at the conventional power; the reflected map runs
    at the reduced power with the panel at the given placement.  Both are
    summarized over the same cell-edge points.
    """
    edge = cell_edge_points(
        scenario.micro_extent, scenario.grid_resolution, scenario.user_height
    )
    conventional_edge = edge_stats(sinr_map_conventional(scenario), edge)
    irs_scenario = with_panel_position(scenario, best.irs_position)
    irs_edge = edge_stats(sinr_map_irs(irs_scenario), edge)
    return ComparisonReport(
        conventional_power=scenario.micro_power_conventional,
        irs_power=scenario.micro_power_irs,
        irs_position=best.irs_position,
        conventional_edge=conventional_edge,
        irs_edge=irs_edge,
        power_reduction_fraction=1.0 - scenario.micro_power_irs / scenario.micro_power_conventional,
    )


def _format_value(value: float) -> str:
    if value == -math.inf:
        return "-inf"
    return repr(float(value))


def ranking_to_csv(results: list[PlacementResult]) -> str:
    """Serialize a ranking as CSV, one row per candidate, rank from 1."""
    lines = ["rank,x_m,y_m,z_m,objective_db,edge_min_db,edge_mean_db,edge_max_db"]
    for rank, result in enumerate(results, start=1):
        p = result.irs_position
        lines.append(
            ",".join(
                [
                    str(rank),
                    _format_value(p.x),
                    _format_value(p.y),
                    _format_value(p.z),
                    _format_value(result.objective_db),
                    _format_value(result.edge.min_db),
                    _format_value(result.edge.mean_db),
                    _format_value(result.edge.max_db),
                ]
            )
        )
    return "\n".join(lines) + "\n"
