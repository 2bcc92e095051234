"""Partial composition over pullbacks and the positional axioms.

Composition ``a *_d b`` is defined exactly when the d-source of ``a`` equals
the d-target of ``b`` ("a after b").  Tables are keyed by the operand pair;
validation demands the key set equal the full pullback, since the operation
is defined on the whole pullback.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .colors import Color, add, addable_entries, minus
from .core import SOURCE, TARGET, CellId, MultipleSet, face, validate_multiple_set
from .errors import NotComposable, UnknownCell
from .reflexive import ReflexiveStructure, validate_reflexive
from .report import ValidationReport


@dataclass
class MagmaStructure:
    base: MultipleSet
    # (color, direction) -> (a, b) -> composite, with s_d(a) == t_d(b)
    comp: dict[tuple[Color, int], dict[tuple[CellId, CellId], CellId]] = field(
        default_factory=dict
    )
    refl: ReflexiveStructure | None = None


def composable_pairs(ms: MultipleSet, c: Color, d: int) -> list[tuple[CellId, CellId]]:
    """The pullback: pairs (a, b) with s_d(a) == t_d(b)."""
    stab = ms.table(SOURCE, c, d)
    ttab = ms.table(TARGET, c, d)
    by_target: dict[CellId, list[CellId]] = {}
    for b in ms.cells_at(c):
        by_target.setdefault(ttab[b], []).append(b)
    return [
        (a, b)
        for a in ms.cells_at(c)
        for b in by_target.get(stab[a], ())
    ]


def compose(m: MagmaStructure, c: Color, a: CellId, b: CellId, d: int) -> CellId:
    ms = m.base
    for x in (a, b):
        if not ms.has_cell(c, x):
            raise UnknownCell(c, x)
    sa = face(ms, c, a, d, SOURCE)
    tb = face(ms, c, b, d, TARGET)
    if sa != tb:
        raise NotComposable(c, d, a, b, sa, tb)
    return m.comp[(c, d)][(a, b)]


def validate_magma(m: MagmaStructure, require_total: bool = True) -> ValidationReport:
    """Totality on the pullback, POS1 and POS2."""
    ms = m.base
    report = ValidationReport()
    base_report = validate_multiple_set(ms)
    if not base_report.ok:
        return base_report

    if require_total:
        for c in ms.colors():
            for d in c:
                tab = m.comp.get((c, d), {})
                for pair in composable_pairs(ms, c, d):
                    if pair not in tab:
                        report.add("TOTAL", c, pair, f"composite undefined for direction {d}")

    for (c, d), tab in m.comp.items():
        for (a, b), r in tab.items():
            if not ms.has_cell(c, r):
                report.add("TOTAL", c, (a, b), f"composite {r!r} not a cell at {list(c)}")
                continue
            if face(ms, c, r, d, SOURCE) != face(ms, c, b, d, SOURCE):
                report.add("POS1", c, (a, b), f"direction={d} polarity={SOURCE}")
            if face(ms, c, r, d, TARGET) != face(ms, c, a, d, TARGET):
                report.add("POS1", c, (a, b), f"direction={d} polarity={TARGET}")
            for k in c:
                if k == d:
                    continue
                lower = minus(c, k)
                lower_tab = m.comp.get((lower, d), {})
                for pol in (SOURCE, TARGET):
                    fa = face(ms, c, a, k, pol)
                    fb = face(ms, c, b, k, pol)
                    if (fa, fb) not in lower_tab:
                        report.add(
                            "POS2", c, (a, b),
                            f"direction={d} entry={k} polarity={pol} face composite undefined",
                        )
                    elif lower_tab[(fa, fb)] != face(ms, c, r, k, pol):
                        report.add("POS2", c, (a, b), f"direction={d} entry={k} polarity={pol}")
    return report.sorted()


def validate_reflexive_magma(m: MagmaStructure, require_total: bool = True) -> ValidationReport:
    """Degeneracies distribute over composition (the DIST law)."""
    report = ValidationReport()
    if m.refl is None:
        report.add("TOTAL", (), (), "no reflexive structure attached")
        return report
    report.extend(validate_magma(m, require_total=require_total))
    report.extend(validate_reflexive(m.refl, require_total=require_total))
    # the distribution scan below is pure table lookup, so it stays
    # meaningful (and safe) even when the layers above already failed

    for (c, d), tab in m.comp.items():
        for l in addable_entries(c, m.base.universe_bound):
            if len(c) + 1 > m.base.dim_bound:
                continue
            refl_tab = m.refl.refl.get((c, l))
            up_tab = m.comp.get((add(c, l), d), {})
            if refl_tab is None:
                continue
            for (a, b), r in tab.items():
                da, db, dr = refl_tab.get(a), refl_tab.get(b), refl_tab.get(r)
                if None in (da, db, dr):
                    continue
                if up_tab.get((da, db)) != dr:
                    report.add("DIST", c, (a, b), f"direction={d} added={l}")
    return report.sorted()
