"""Finite multiple sets: tabulated cell complexes with source/target maps.

Cells live in per-color sets; a cell at a color of dimension n has one
source and one target face for every entry of its color, landing one
dimension lower.  Validity means the three face-commutation squares hold
for every cell and every pair of distinct entries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations

from .colors import Color, add, colors_within, minus
from .errors import EntryAbsent, UnknownCell
from .report import ValidationReport

CellId = str

SOURCE = "source"
TARGET = "target"
POLARITIES = (SOURCE, TARGET)


@dataclass
class MultipleSet:
    universe_bound: int
    dim_bound: int
    # color -> sorted list of cell ids; ids are unique within one color
    cells: dict[Color, list[CellId]] = field(default_factory=dict)
    # (color, entry) -> cell -> face cell at minus(color, entry)
    src: dict[tuple[Color, int], dict[CellId, CellId]] = field(default_factory=dict)
    tgt: dict[tuple[Color, int], dict[CellId, CellId]] = field(default_factory=dict)

    def colors(self) -> list[Color]:
        return sorted((c for c in self.cells if self.cells[c]), key=lambda c: (len(c), c))

    def cells_at(self, c: Color) -> list[CellId]:
        return self.cells.get(c, [])

    def has_cell(self, c: Color, x: CellId) -> bool:
        return x in self.cells.get(c, ())

    def table(self, polarity: str, c: Color, d: int) -> dict[CellId, CellId]:
        tabs = self.src if polarity == SOURCE else self.tgt
        return tabs.get((c, d), {})


def face(ms: MultipleSet, c: Color, x: CellId, d: int, polarity: str) -> CellId:
    """Tabulated face of ``x`` (a cell at color ``c``) in direction ``d``."""
    if d not in c:
        raise EntryAbsent(c, d)
    if not ms.has_cell(c, x):
        raise UnknownCell(c, x)
    tab = ms.table(polarity, c, d)
    if x not in tab:
        raise UnknownCell(c, x)
    return tab[x]


def iterated_face(ms: MultipleSet, c: Color, x: CellId, ds) -> tuple[Color, CellId]:
    """Composite face along a list of (entry, polarity) steps.

    Order-independent on validated structures; returns the final color too,
    since the cell id alone does not locate a cell.
    """
    for d, pol in ds:
        x = face(ms, c, x, d, pol)
        c = minus(c, d)
    return c, x


def _shape_check(ms: MultipleSet, report: ValidationReport) -> bool:
    """Check that face tables exist, are total, and land in the right sets."""
    ok = True
    for c in ms.colors():
        for d in c:
            lower = minus(c, d)
            for tabs, name in ((ms.src, "src"), (ms.tgt, "tgt")):
                tab = tabs.get((c, d))
                if tab is None:
                    report.add("SHAPE", c, (), f"missing {name} table for entry {d}")
                    ok = False
                    continue
                for x in ms.cells_at(c):
                    if x not in tab:
                        report.add("SHAPE", c, (x,), f"{name} undefined for entry {d}")
                        ok = False
                    elif not ms.has_cell(lower, tab[x]):
                        report.add(
                            "SHAPE", c, (x,),
                            f"{name}[{d}] lands outside cells{list(lower)}",
                        )
                        ok = False
    return ok


def validate_multiple_set(ms: MultipleSet) -> ValidationReport:
    """Shape checks plus the SS, TT and ST face-commutation axioms."""
    report = ValidationReport()
    if not _shape_check(ms, report):
        return report.sorted()
    for c in ms.colors():
        if len(c) < 2:
            continue
        for j in c:
            for k in c:
                if j == k:
                    continue
                for x in ms.cells_at(c):
                    sj = face(ms, c, x, j, SOURCE)
                    sk = face(ms, c, x, k, SOURCE)
                    tj = face(ms, c, x, j, TARGET)
                    tk = face(ms, c, x, k, TARGET)
                    if j < k:
                        if face(ms, minus(c, j), sj, k, SOURCE) != face(
                            ms, minus(c, k), sk, j, SOURCE
                        ):
                            report.add("SS", c, (x,), f"entries=({j},{k})")
                        if face(ms, minus(c, j), tj, k, TARGET) != face(
                            ms, minus(c, k), tk, j, TARGET
                        ):
                            report.add("TT", c, (x,), f"entries=({j},{k})")
                    # ST is not symmetric in (j, k): check both orders
                    if face(ms, minus(c, j), sj, k, TARGET) != face(
                        ms, minus(c, k), tk, j, SOURCE
                    ):
                        report.add("ST", c, (x,), f"entries=(s{j},t{k})")
    return report.sorted()


@dataclass
class MsMorphism:
    source: MultipleSet
    target: MultipleSet
    maps: dict[Color, dict[CellId, CellId]]

    def apply(self, c: Color, x: CellId) -> CellId:
        return self.maps[c][x]


def identity_morphism(ms: MultipleSet) -> MsMorphism:
    return MsMorphism(ms, ms, {c: {x: x for x in ms.cells_at(c)} for c in ms.colors()})


def validate_morphism(f: MsMorphism) -> ValidationReport:
    """Totality plus the face-compatibility squares."""
    report = ValidationReport()
    for c in f.source.colors():
        fmap = f.maps.get(c)
        if fmap is None:
            report.add("MOR-TOTAL", c, (), "no component at this color")
            continue
        for x in f.source.cells_at(c):
            if x not in fmap:
                report.add("MOR-TOTAL", c, (x,), "unmapped cell")
                continue
            if not f.target.has_cell(c, fmap[x]):
                report.add("MOR-TOTAL", c, (x,), f"image {fmap[x]!r} not a cell")
                continue
            for d in c:
                lower = minus(c, d)
                for pol, axiom in ((SOURCE, "MOR-S"), (TARGET, "MOR-T")):
                    fx_face = face(f.target, c, fmap[x], d, pol)
                    x_face = face(f.source, c, x, d, pol)
                    mapped = f.maps.get(lower, {}).get(x_face)
                    if mapped != fx_face:
                        report.add(axiom, c, (x,), f"entry={d} polarity={pol}")
    return report.sorted()


def compose_morphisms(g: MsMorphism, f: MsMorphism) -> MsMorphism:
    """g after f."""
    maps = {}
    for c, fmap in f.maps.items():
        gmap = g.maps.get(c, {})
        maps[c] = {x: gmap[y] for x, y in fmap.items()}
    return MsMorphism(f.source, g.target, maps)


def morphisms_equal(f: MsMorphism, g: MsMorphism) -> bool:
    cols = set(f.maps) | set(g.maps)
    return all(f.maps.get(c, {}) == g.maps.get(c, {}) for c in cols)


def terminal_multiple_set(universe_bound: int, dim_bound: int) -> MultipleSet:
    """One cell per color; every face is the unique lower cell."""
    ms = MultipleSet(universe_bound, dim_bound)
    for c in colors_within(universe_bound, dim_bound):
        ms.cells[c] = ["*"]
        for d in c:
            ms.src[(c, d)] = {"*": "*"}
            ms.tgt[(c, d)] = {"*": "*"}
    return ms


def _grid_cell_id(base: str, assignment: tuple) -> CellId:
    if not assignment:
        return base
    parts = [f"{'s' if pol == SOURCE else 't'}{d}" for d, pol in assignment]
    return base + "." + "".join(parts)


def random_multiple_set(
    universe_bound: int,
    dim_bound: int,
    sizes: int = 1,
    seed: int = 0,
    glue_prob: float = 0.3,
) -> MultipleSet:
    """A valid multiple set, deterministic in ``seed``.

    Each generator spawns its own grid of faces indexed by which entries have
    been collapsed to a polarity; commutation holds by construction.  Object
    cells (dimension 0) carry no faces, so gluing them pairwise afterwards
    preserves validity while varying the shape with the seed.
    """
    rng = random.Random(seed)
    ms = MultipleSet(universe_bound, dim_bound)
    cells: dict[Color, set[CellId]] = {c: set() for c in colors_within(universe_bound, dim_bound)}
    src: dict[tuple[Color, int], dict[CellId, CellId]] = {}
    tgt: dict[tuple[Color, int], dict[CellId, CellId]] = {}

    for c in colors_within(universe_bound, dim_bound):
        for idx in range(sizes):
            base = f"g{''.join(map(str, c))}n{idx}"
            # all partial polarity assignments, as sorted tuples of (entry, pol)
            stack = [((), c)]
            seen = set()
            while stack:
                assignment, col = stack.pop()
                if assignment in seen:
                    continue
                seen.add(assignment)
                cid = _grid_cell_id(base, assignment)
                cells[col].add(cid)
                for d in col:
                    for pol, tabs in ((SOURCE, src), (TARGET, tgt)):
                        nxt = tuple(sorted(assignment + ((d, pol),)))
                        tabs.setdefault((col, d), {})[cid] = _grid_cell_id(base, nxt)
                        stack.append((nxt, minus(col, d)))

    # glue some vertices: map later vertices onto earlier ones
    verts = sorted(cells.get((), set()))
    rename = {}
    for i, v in enumerate(verts):
        if i > 0 and rng.random() < glue_prob:
            rename[v] = verts[rng.randrange(i)]
    if rename:
        cells[()] = {v for v in cells[()] if v not in rename}
        for key, tab in list(src.items()) + list(tgt.items()):
            if len(key[0]) == 1:
                for x, y in tab.items():
                    while y in rename:
                        y = rename[y]
                    tab[x] = y

    ms.cells = {c: sorted(xs) for c, xs in cells.items() if xs}
    ms.src = src
    ms.tgt = tgt
    return ms
