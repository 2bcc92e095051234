"""Machine-readable validation reports.

Validators never raise on axiom failures; every finding becomes a
:class:`Violation` so callers (and the CLI) can show all failures at once.
Reports are canonically sorted, so output does not depend on the order in
which checks ran.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True, order=True)
class Violation:
    axiom: str
    color: tuple
    cells: tuple
    detail: str = ""

    def render(self) -> str:
        cells = ",".join(str(c) for c in self.cells)
        out = f"{self.axiom} color={list(self.color)} cells={cells}"
        if self.detail:
            out += f" {self.detail}"
        return out


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, axiom, color, cells, detail=""):
        self.violations.append(Violation(axiom, tuple(color), tuple(cells), detail))

    def extend(self, other: "ValidationReport"):
        self.violations.extend(other.violations)

    def sorted(self) -> "ValidationReport":
        return ValidationReport(sorted(set(self.violations)))

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def render(self) -> str:
        return "\n".join(v.render() for v in self.sorted().violations)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [
                {
                    "axiom": v.axiom,
                    "color": list(v.color),
                    "cells": [str(c) for c in v.cells],
                    "detail": v.detail,
                }
                for v in self.sorted().violations
            ],
        }
