"""Sampling campaigns: random polytopes per (d, s) cell, each run through the
bound checker and the equality classifier."""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .bounds import BoundReport, EqualityClass, check_lower_bound, phi
from .oracle import PointConfig, SamplingExhausted, lattice_from_points, random_polytope

SAMPLE_HEADER = (
    "d", "s", "sample", "seed", "source", "f_vector", "slacks",
    "equality_ks", "verdict", "equality_class", "facet_profile",
)


class CampaignConfigError(ValueError):
    pass


@dataclass
class CampaignConfig:
    d_range: tuple[int, int]
    s_range: tuple[int, int]
    samples_per_cell: int
    base_seed: int = 0
    out_csv: Optional[str] = None
    out_json: Optional[str] = None
    fixtures: dict[tuple[int, int], list[PointConfig]] = field(default_factory=dict)

    def __post_init__(self):
        d_lo, d_hi = self.d_range
        s_lo, s_hi = self.s_range
        if d_lo > d_hi or s_lo > s_hi:
            raise CampaignConfigError("ranges must be non-empty (lo <= hi)")
        if s_lo < 2:
            raise CampaignConfigError(f"s must be >= 2, got s_min={s_lo}")
        if s_hi > d_hi:
            raise CampaignConfigError(f"s_max={s_hi} exceeds d_max={d_hi}; need s <= d")
        if self.samples_per_cell < 1:
            raise CampaignConfigError("samples_per_cell must be >= 1")
        for (d, s) in self.fixtures:
            if (d, s) not in self.cells():
                raise CampaignConfigError(f"fixture cell {(d, s)} is not in the campaign")

    def cells(self) -> list[tuple[int, int]]:
        return [
            (d, s)
            for d in range(self.d_range[0], self.d_range[1] + 1)
            for s in range(self.s_range[0], self.s_range[1] + 1)
            if s <= d
        ]

    def seed_for(self, cell_index: int, sample_index: int) -> int:
        return self.base_seed + cell_index * self.samples_per_cell + sample_index


@dataclass
class SampleResult:
    d: int
    s: int
    sample: int
    seed: Optional[int]
    source: str
    f_vector: tuple[int, ...]
    report: BoundReport

    def row(self) -> tuple:
        r = self.report
        return (
            self.d, self.s, self.sample,
            "" if self.seed is None else self.seed,
            self.source,
            " ".join(map(str, self.f_vector)),
            " ".join(map(str, r.slacks())),
            " ".join(map(str, sorted(r.equality_ks))),
            r.verdict,
            r.equality_class.value if r.equality_class else "",
            "" if r.facet_profile is None else str(r.facet_profile).lower(),
        )


@dataclass
class CellSummary:
    d: int
    s: int
    samples: int = 0
    violations: int = 0
    classes: dict[str, int] = field(default_factory=dict)
    profile_failures: int = 0
    componentwise_min: Optional[tuple[int, ...]] = None
    phi_vector: tuple[int, ...] = ()
    min_attained: bool = False

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "s": self.s,
            "samples": self.samples,
            "violations": self.violations,
            "equality_classes": dict(sorted(self.classes.items())),
            "profile_failures": self.profile_failures,
            "componentwise_min_f": list(self.componentwise_min or ()),
            "phi": list(self.phi_vector),
            "min_attained_by_a_sample": self.min_attained,
        }


@dataclass
class CampaignResult:
    samples: list[SampleResult]
    cells: list[CellSummary]

    @property
    def failed(self) -> bool:
        return any(not s.report.ok for s in self.samples)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SAMPLE_HEADER)
        w.writerows(s.row() for s in self.samples)
        return buf.getvalue()

    def summary(self) -> dict:
        return {
            "cells": [c.to_dict() for c in self.cells],
            "total_samples": len(self.samples),
            "total_violations": sum(c.violations for c in self.cells),
            "tight_but_not_isomorphic": sum(
                c.classes.get(EqualityClass.TIGHT_NOT_ISOMORPHIC.value, 0) for c in self.cells
            ),
            "ok": not self.failed,
        }


def _check_points(pc: PointConfig) -> tuple[tuple[int, ...], BoundReport]:
    P = lattice_from_points(pc)
    return P.f_vector(), check_lower_bound(P)


def _run_seeded(job: tuple[int, int, int, int]) -> SampleResult:
    d, s, sample, seed = job
    try:
        pc = random_polytope(d, d + s, seed)
    except SamplingExhausted as exc:
        raise SamplingExhausted(f"cell (d={d}, s={s}) sample {sample}: {exc}") from exc
    f, report = _check_points(pc)
    return SampleResult(d, s, sample, seed, "random", f, report)


def _summarize(cell: tuple[int, int], results: list[SampleResult]) -> CellSummary:
    d, s = cell
    out = CellSummary(d, s, phi_vector=tuple(phi(k, d + s, d) for k in range(d)))
    for r in results:
        out.samples += 1
        if r.report.violation_at is not None:
            out.violations += 1
        cls = r.report.equality_class.value if r.report.equality_class else "n/a"
        out.classes[cls] = out.classes.get(cls, 0) + 1
        if r.report.facet_profile is False:
            out.profile_failures += 1
        if out.componentwise_min is None:
            out.componentwise_min = r.f_vector
        else:
            out.componentwise_min = tuple(map(min, out.componentwise_min, r.f_vector))
    out.min_attained = any(r.f_vector == out.componentwise_min for r in results)
    return out


def run_campaign(config: CampaignConfig, workers: int = 1) -> CampaignResult:
    jobs = []
    for ci, (d, s) in enumerate(config.cells()):
        for k in range(config.samples_per_cell):
            jobs.append((d, s, k, config.seed_for(ci, k)))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_seeded, jobs, chunksize=8))
    else:
        results = [_run_seeded(j) for j in jobs]

    by_cell: dict[tuple[int, int], list[SampleResult]] = {c: [] for c in config.cells()}
    for r in results:
        by_cell[(r.d, r.s)].append(r)
    for cell, fixtures in config.fixtures.items():
        for i, pc in enumerate(fixtures):
            f, report = _check_points(pc)
            if len(f) != cell[0] or f[0] - cell[0] != cell[1]:
                raise CampaignConfigError(f"fixture {i} does not belong to cell {cell}: f={f}")
            by_cell[cell].append(
                SampleResult(cell[0], cell[1], config.samples_per_cell + i, None, "fixture", f, report)
            )

    ordered = [r for cell in config.cells() for r in by_cell[cell]]
    result = CampaignResult(ordered, [_summarize(c, by_cell[c]) for c in config.cells()])
    if config.out_csv:
        with open(config.out_csv, "w", newline="") as fh:
            fh.write(result.to_csv())
    if config.out_json:
        with open(config.out_json, "w") as fh:
            json.dump(result.summary(), fh, indent=2, sort_keys=True)
    return result
