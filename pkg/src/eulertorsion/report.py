"""Batch driver: run verification suites over a genus range and render reports."""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .chains import dump_chain
from .checks import Check, SuiteReport
from .detection import (Connector, detect_cycle, torsion_bound, verify_bound,
                        verify_detection, verify_obstruction)
from .inversives import verify_inversive_action
from .mapping import verify_identities
from .transition import (chain_c1, chain_e_g, chain_e_g_half, chain_L, transition_cycle,
                         verify_transition)
from .words import GenusContext

SUITES = ("identities", "action", "transition", "detect", "bound", "obstruction")
_NEEDS_DETECT = {"detect", "bound", "obstruction"}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    genus_list: list[int] = field(default_factory=lambda: [1, 2, 3])
    suites: list[str] = field(default_factory=lambda: list(SUITES))
    format: str = "text"
    out_path: str | None = None
    dump_path: str | None = None
    max_word_len: int = 96
    orbit_depth: int = 1
    seed: int = 0
    parallel: bool = False
    timings: bool = False

    def validate(self) -> "RunConfig":
        if not self.genus_list:
            raise ConfigError("genus list is empty")
        if any(not isinstance(g, int) or g < 1 for g in self.genus_list):
            raise ConfigError(f"genus values must be integers >= 1: {self.genus_list}")
        bad = [s for s in self.suites if s not in SUITES]
        if bad or not self.suites:
            raise ConfigError(f"unknown or empty suite selection: {bad or self.suites}")
        if self.format not in ("text", "json"):
            raise ConfigError(f"format must be text or json, got {self.format!r}")
        if self.max_word_len < 1 or self.orbit_depth < 1:
            raise ConfigError("caps must be positive")
        return self


@dataclass
class GenusResult:
    genus: int
    suites: dict[str, list[Check]]
    detection: dict | None
    notes: list[str]
    runtime_ms: int

    @property
    def ok(self) -> bool:
        return all(c.passed for checks in self.suites.values() for c in checks)


@dataclass
class VerificationReport:
    genus_results: list[GenusResult]
    seed: int
    version: str = __version__

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.genus_results)

    def to_dict(self) -> dict:
        return {
            "genus_results": [{
                "genus": r.genus,
                "suites": {name: [{"check": c.name, "pass": c.passed, "witness": c.witness}
                                  for c in checks] for name, checks in r.suites.items()},
                "detection": r.detection,
                "notes": list(r.notes),
                "runtime_ms": r.runtime_ms,
            } for r in self.genus_results],
            "seed": self.seed,
            "version": self.version,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        results = [GenusResult(
            r["genus"],
            {name: [Check(c["check"], c["pass"], c["witness"]) for c in checks]
             for name, checks in r["suites"].items()},
            r["detection"], list(r["notes"]), r["runtime_ms"]) for r in d["genus_results"]]
        return cls(results, d["seed"], d["version"])


def dump_chains(ctx: GenusContext, directory: str | Path) -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    g = ctx.g
    chains = {"e_g_half": chain_e_g_half(ctx), "e_g": chain_e_g(ctx), "c1": chain_c1(ctx),
              "t": transition_cycle(ctx)}
    chains.update({f"L{k}": chain_L(ctx, k) for k in range(g + 1)})
    paths = []
    for name, c in chains.items():
        p = out / f"g{g}_{name}.txt"
        p.write_text(dump_chain(c, g))
        paths.append(p)
    return paths


def run_genus(g: int, cfg: RunConfig) -> GenusResult:
    start = time.perf_counter()
    ctx = GenusContext(g, max_word_len=cfg.max_word_len)
    reports: list[SuiteReport] = []
    detection = None
    detect_t = None
    if _NEEDS_DETECT & set(cfg.suites):
        detect_t = detect_cycle(transition_cycle(ctx), Connector(ctx))
    for name in SUITES:
        if name not in cfg.suites:
            continue
        if name == "identities":
            reports.append(verify_identities(ctx))
        elif name == "action":
            reports.append(verify_inversive_action(ctx))
        elif name == "transition":
            reports.append(verify_transition(ctx, cfg.orbit_depth))
        elif name == "detect":
            seeds = (cfg.seed, cfg.seed + 1, cfg.seed + 2)
            reports.append(verify_detection(ctx, seeds=seeds, rng_seed=cfg.seed))
        elif name == "bound":
            rep, _ = verify_bound(ctx, detect_t)
            reports.append(rep)
        elif name == "obstruction":
            reports.append(verify_obstruction(ctx, detect_t))
    if detect_t is not None:
        detection = torsion_bound(ctx, detect_t).detection_dict()
    if cfg.dump_path:
        dump_chains(ctx, cfg.dump_path)
    notes = []
    for rep in reports:
        notes.extend(n for n in rep.notes if n not in notes)
    elapsed = int((time.perf_counter() - start) * 1000) if cfg.timings else 0
    return GenusResult(g, {r.suite: r.checks for r in reports}, detection, notes, elapsed)


def run(cfg: RunConfig) -> VerificationReport:
    cfg.validate()
    if cfg.parallel and len(cfg.genus_list) > 1:
        with ProcessPoolExecutor() as pool:
            results = list(pool.map(run_genus, cfg.genus_list, [cfg] * len(cfg.genus_list)))
    else:
        results = [run_genus(g, cfg) for g in cfg.genus_list]
    return VerificationReport(results, cfg.seed)


def render(report: VerificationReport, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    if fmt != "text":
        raise ConfigError(f"unknown format {fmt!r}")
    lines = []
    for r in report.genus_results:
        lines.append(f"== genus {r.genus} ==")
        for name, checks in r.suites.items():
            lines.append(f"[{name}]")
            for c in checks:
                tag = "PASS" if c.passed else "FAIL"
                line = f"  {tag}  {c.name}"
                if not c.passed and c.witness is not None:
                    line += f"    witness: {c.witness}"
                lines.append(line)
        if r.detection:
            lines.append("detection: " + ", ".join(f"{k}={v}" for k, v in r.detection.items()))
        for n in r.notes:
            lines.append(f"note: {n}")
        if r.runtime_ms:
            lines.append(f"runtime: {r.runtime_ms} ms")
    total = sum(len(c) for r in report.genus_results for c in r.suites.values())
    failed = sum(not x.passed for r in report.genus_results for c in r.suites.values() for x in c)
    lines.append(f"{total - failed}/{total} checks passed (seed {report.seed}, version {report.version})")
    return "\n".join(lines) + "\n"
