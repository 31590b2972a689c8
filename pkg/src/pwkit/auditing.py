"""Batch audit driver: kernelize seeded random instances and record how the
measured structural counts compare to the asserted bounds."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import generators
from .graph import Instance
from .kernels import (
    DEFAULT_CONSTANTS,
    DecidedNo,
    DecidedYes,
    KernelConstants,
    KernelResult,
    kernelize_bounded_components,
    kernelize_star_forest,
    kernelize_vertex_cover,
)
from .rules import application_budget


@dataclass(frozen=True)
class FamilySpec:
    """Audit target: 'stars', 'vc', or 'bounded' with a component cap."""

    kind: str
    c: int = 1

    @staticmethod
    def parse(text: str) -> "FamilySpec":
        if text == "stars":
            return FamilySpec("stars")
        if text == "vc":
            return FamilySpec("vc")
        if text.startswith("bounded:"):
            return FamilySpec("bounded", int(text.split(":", 1)[1]))
        raise ValueError(f"unknown family {text!r}; use vc, bounded:<c>, or stars")


def generate_instance(spec: FamilySpec, rng: random.Random) -> Instance:
    if spec.kind == "stars":
        ell = rng.randint(1, 4)
        return generators.random_star_forest_instance(rng, ell, rng.randint(0, ell))
    if spec.kind == "vc":
        ell = rng.randint(1, 5)
        return generators.random_vertex_cover_instance(rng, ell, rng.randint(0, max(0, ell - 1)))
    ell = rng.randint(1, 4)
    k_hi = max(0, spec.c + ell - 2)
    return generators.random_bounded_instance(rng, ell, spec.c, rng.randint(0, k_hi))


def kernelize_for(spec: FamilySpec, inst: Instance,
                  constants: KernelConstants = DEFAULT_CONSTANTS,
                  strict: bool = False) -> KernelResult:
    if spec.kind == "stars":
        return kernelize_star_forest(inst, constants, strict=strict)
    if spec.kind == "vc":
        return kernelize_vertex_cover(inst, constants, strict=strict)
    return kernelize_bounded_components(inst, spec.c, constants, strict=strict)


AUDIT_COLUMNS = [
    "index", "n", "modulator", "k", "outcome", "applications",
    "application_budget", "vertices_out", "components", "simplicial_components",
    "simplicial_bound", "nonsimplicial_components", "nonsimplicial_bound",
    "bound_ok", "violations",
]


def run_audit(spec: FamilySpec, count: int, seed: int,
              constants: KernelConstants = DEFAULT_CONSTANTS) -> tuple[list[dict], bool]:
    """Kernelize `count` seeded instances; returns per-instance rows and
    whether every bound held."""
    rng = random.Random(seed)
    rows = []
    all_ok = True
    for idx in range(count):
        inst = generate_instance(spec, rng)
        result = kernelize_for(spec, inst, constants, strict=False)
        ell, k = len(inst.modulator), inst.target
        outcome = {DecidedYes: "yes", DecidedNo: "no"}.get(type(result.outcome), "reduced")
        rows.append({
            "index": idx,
            "n": inst.graph.n,
            "modulator": ell,
            "k": k,
            "outcome": outcome,
            "applications": result.applications,
            "application_budget": application_budget(inst.graph.n, k,
                                                     constants.budget_constant),
            "vertices_out": result.stats.vertices,
            "components": result.stats.components,
            "simplicial_components": result.stats.simplicial_components,
            "simplicial_bound": (2 * k + 3) * ell * ell,
            "nonsimplicial_components": result.stats.nonsimplicial_components,
            "nonsimplicial_bound": k * ell * ell,
            "bound_ok": result.bound_ok,
            "violations": ";".join(result.violations) or "-",
        })
        all_ok = all_ok and result.bound_ok
    return rows, all_ok


def render_rows(rows: list[dict]) -> str:
    lines = ["\t".join(AUDIT_COLUMNS)]
    for row in rows:
        lines.append("\t".join(str(row[c]) for c in AUDIT_COLUMNS))
    return "\n".join(lines) + "\n"
