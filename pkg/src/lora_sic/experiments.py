"""Parameter sweeps, capacity tables and target-reliability planning."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from . import mcsim
from .analytic import NetworkConfig, coverage, with_capture_threshold
from .geometry import interferer_intensity, nodes_from_alpha, ring_of, uniform_traffic
from .params import SfParams

SWEEP_VARIABLES = ("d1", "alpha", "gamma_db", "nbar")


class InfeasibleTargetError(ValueError):
    """The requested reliability target cannot be met at any positive load."""


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional grid over d1, alpha, gamma_db or nbar.

    Non-swept parameters are pinned by ``d1`` and by exactly one of ``alpha``
    or ``nbar`` (``nbar`` converts to per-ring intensities through the traffic
    model).  ``mc_trials`` = 0 keeps the sweep purely analytic.
    """

    variable: str
    start: float
    stop: float
    step: float
    d1: float = 3000.0
    alpha: float | None = 1.0
    nbar: float | None = None
    mc_trials: int = 0
    seed: int = mcsim.DEFAULT_SEED

    def __post_init__(self) -> None:
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(
                f"variable must be one of {SWEEP_VARIABLES}, got {self.variable!r}"
            )
        if self.step <= 0:
            raise ValueError(f"step must be positive, got {self.step}")
        if self.stop < self.start:
            raise ValueError("stop must not precede start")
        if self.mc_trials < 0:
            raise ValueError("mc_trials must be nonnegative")
        if self.alpha is not None and self.nbar is not None:
            raise ValueError("give either alpha or nbar, not both")

    def grid(self) -> list[float]:
        # The slack absorbs binary representation error in (stop-start)/step;
        # the clamp keeps the last point from drifting past stop.
        count = int(math.floor((self.stop - self.start) / self.step + 1e-6)) + 1
        return [min(self.start + i * self.step, self.stop) for i in range(count)]


@dataclass(frozen=True)
class SweepRow:
    """One grid point; MC fields stay None on analytic-only sweeps."""

    x: float
    h1: float
    q1: float
    q2: float
    c1: float
    c1_sic: float
    mc_c1: float | None = None
    mc_c1_ci95: float | None = None
    mc_c1_sic: float | None = None
    mc_c1_sic_ci95: float | None = None


def resolve_intensity(
    cfg: NetworkConfig, d1: float, alpha: float | None, nbar: float | None
) -> float:
    """Pin the interferer intensity for the ring containing ``d1``.

    An explicit ``alpha`` wins; otherwise ``nbar`` (or the scenario's own
    traffic model) is pushed through the intensity formula.
    """
    if alpha is not None:
        return alpha
    traffic = cfg.traffic
    if nbar is not None:
        traffic = uniform_traffic(nbar, cfg.traffic.duty_cycles[0], cfg.layout.n_rings)
    return interferer_intensity(ring_of(d1, cfg.layout), traffic, cfg.layout)


def sweep(spec: SweepSpec, cfg: NetworkConfig) -> list[SweepRow]:
    """Evaluate the breakdown over the grid, in grid order.

    Deterministic given ``spec.seed``; each grid point gets its own derived
    MC seed so rows are statistically independent.
    """
    rows: list[SweepRow] = []
    for index, x in enumerate(spec.grid()):
        point_cfg = cfg
        d1, alpha, nbar = spec.d1, spec.alpha, spec.nbar
        if spec.variable == "d1":
            d1 = x
        elif spec.variable == "alpha":
            alpha, nbar = x, None
        elif spec.variable == "nbar":
            alpha, nbar = None, x
        else:
            point_cfg = with_capture_threshold(cfg, x)
        alpha_i = resolve_intensity(point_cfg, d1, alpha, nbar)
        breakdown = coverage(d1, point_cfg, alpha_i)
        row = SweepRow(
            x=x,
            h1=breakdown.h1,
            q1=breakdown.q1,
            q2=breakdown.q2,
            c1=breakdown.c1,
            c1_sic=breakdown.c1_sic,
        )
        if spec.mc_trials > 0:
            report = mcsim.estimate(
                d1,
                point_cfg,
                alpha_i,
                spec.mc_trials,
                seed=mcsim.derive_seed(spec.seed, index),
            )
            row = replace(
                row,
                mc_c1=report.success_c1.mean,
                mc_c1_ci95=report.success_c1.ci95_halfwidth,
                mc_c1_sic=report.success_c1_sic.mean,
                mc_c1_sic_ci95=report.success_c1_sic.ci95_halfwidth,
            )
        rows.append(row)
    return rows


@dataclass(frozen=True)
class CapacityRow:
    """Supported node counts per SF at one network usage intensity."""

    alpha: float
    nodes: tuple[int, ...]
    total: int


def capacity_table(
    alphas: list[float] | tuple[float, ...], sf_table: tuple[SfParams, ...]
) -> list[CapacityRow]:
    """Node counts sustaining intensity ``alpha`` per SF under the tabulated duty cycles."""
    rows = []
    for alpha in alphas:
        if alpha <= 0:
            raise ValueError(f"alphas must be positive, got {alpha}")
        nodes = tuple(nodes_from_alpha(alpha, row.duty_cycle) for row in sf_table)
        rows.append(CapacityRow(alpha=alpha, nodes=nodes, total=sum(nodes)))
    return rows


def find_alpha_for_target(
    target: float,
    d1: float,
    cfg: NetworkConfig,
    with_sic: bool,
    alpha_max: float = 10.0,
    tol: float = 1e-4,
) -> float:
    """Largest intensity whose coverage probability still meets ``target``.

    Bisects the (verified monotone) objective c1(alpha) or c1_sic(alpha) to
    absolute tolerance ``tol``.  Raises :class:`InfeasibleTargetError` when
    even a silent network misses the target, or when the target is still
    exceeded at ``alpha_max``.
    """
    if not 0.0 < target < 1.0:
        raise ValueError(f"target must lie in (0, 1), got {target}")

    def objective(alpha: float) -> float:
        breakdown = coverage(d1, cfg, alpha)
        return breakdown.c1_sic if with_sic else breakdown.c1

    ceiling = objective(0.0)  # equals h1: no interference at zero load
    if target > ceiling:
        raise InfeasibleTargetError(
            f"target {target} exceeds the zero-load coverage {ceiling:.6f} at d1={d1}"
        )
    if target == ceiling:
        return 0.0

    samples = [objective(alpha_max * i / 8) for i in range(9)]
    if any(b > a + 1e-12 for a, b in zip(samples, samples[1:])):
        raise ValueError(
            "coverage objective is not monotone decreasing on the bracket; "
            "refusing to bisect"
        )
    if objective(alpha_max) > target:
        raise InfeasibleTargetError(
            f"objective still exceeds {target} at alpha_max={alpha_max}"
        )

    lo, hi = 0.0, alpha_max
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if objective(mid) >= target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
