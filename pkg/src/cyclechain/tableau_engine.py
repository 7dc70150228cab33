"""Displacement tableaux on rectangles [cols x rows].

Cell ``(x, y)`` is column x, row y, both 1-based.  A tableau is valid for a
torsion profile when it is strictly increasing along rows and columns and equal
values sit on cells whose x - y agree mod the torsion of that value.

Two search strategies live here.  :func:`enumerate_tableaux` is a plain
column-major backtracker.  Existence questions go through a layered search over
Young diagrams: the cells holding value v form a set of addable corners of the
diagram filled by 1..v-1, so the state after each value is just a diagram.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator, Optional

from .chain_model import Generic, RepresentingDivisor, TorsionProfile, congruent


@dataclass(frozen=True)
class GridShape:
    cols: int
    rows: int

    def __post_init__(self):
        if self.rows < 1:
            raise ValueError(f"rows must be >= 1, got {self.rows}")
        if self.cols < 0:
            raise ValueError(f"cols must be >= 0, got {self.cols}")

    @property
    def is_empty(self) -> bool:
        return self.cols == 0

    def cells(self) -> list[tuple[int, int]]:
        """Column-major cell order."""
        return [(x, y) for x in range(1, self.cols + 1) for y in range(1, self.rows + 1)]


@dataclass(frozen=True)
class DisplacementTableau:
    shape: GridShape
    rows: tuple[tuple[int, ...], ...]  # rows[y-1][x-1] = t(x, y)

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        if len(self.rows) != self.shape.rows or any(len(r) != self.shape.cols for r in self.rows):
            raise ValueError("values do not match the shape")

    def __call__(self, x: int, y: int) -> int:
        return self.rows[y - 1][x - 1]

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        for x, y in self.shape.cells():
            yield (x, y), self(x, y)

    def image(self) -> set[int]:
        return {v for row in self.rows for v in row}

    def count(self, value: int) -> int:
        return sum(row.count(value) for row in self.rows)

    def to_json(self) -> dict:
        return {"cols": self.shape.cols, "rows": self.shape.rows, "values": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "DisplacementTableau":
        return cls(GridShape(int(data["cols"]), int(data["rows"])), tuple(tuple(r) for r in data["values"]))

    @classmethod
    def from_cells(cls, shape: GridShape, values: dict[tuple[int, int], int]) -> "DisplacementTableau":
        return cls(shape, tuple(tuple(values[x, y] for x in range(1, shape.cols + 1))
                                for y in range(1, shape.rows + 1)))


def empty_tableau(shape: GridShape) -> DisplacementTableau:
    return DisplacementTableau(shape, ((),) * shape.rows)


def is_valid_tableau(t: DisplacementTableau, p: TorsionProfile) -> bool:
    g = p.genus
    cols, rows = t.shape.cols, t.shape.rows
    for (x, y), v in t.items():
        if not 1 <= v <= g:
            return False
        if x < cols and t(x + 1, y) <= v:
            return False
        if y < rows and t(x, y + 1) <= v:
            return False
    residue: dict[int, int] = {}
    for (x, y), v in t.items():
        if v in residue:
            if not congruent(residue[v], x - y, p.torsion(v)):
                return False
        else:
            residue[v] = x - y
    return True


def hyperelliptic_tableau(g: int) -> DisplacementTableau:
    """t(i, j) = i + j - 1 on [(g - 1) x 2]."""
    if g < 2:
        raise ValueError("the hyperelliptic tableau needs g >= 2")
    shape = GridShape(g - 1, 2)
    return DisplacementTableau(shape, (tuple(range(1, g)), tuple(range(2, g + 1))))


def enumerate_tableaux(p: TorsionProfile, shape: GridShape) -> Iterator[DisplacementTableau]:
    """Every valid tableau on ``shape``, in lexicographic order of the column-major filling."""
    if shape.is_empty:
        yield empty_tableau(shape)
        return
    g = p.genus
    cols, rows = shape.cols, shape.rows
    cells = shape.cells()
    torsion = [0] + [p.torsion(i) for i in range(1, g + 1)]
    grid: dict[tuple[int, int], int] = {}
    anchor: dict[int, int] = {}  # value -> x - y of its first placement
    uses = [0] * (g + 1)

    def fill(idx: int) -> Iterator[DisplacementTableau]:
        if idx == len(cells):
            yield DisplacementTableau.from_cells(shape, grid)
            return
        x, y = cells[idx]
        lo = max(grid.get((x - 1, y), 0), grid.get((x, y - 1), 0)) + 1
        hi = g - (cols - x) - (rows - y)
        for v in range(lo, hi + 1):
            if uses[v] and not congruent(anchor[v], x - y, torsion[v]):
                continue
            if not uses[v]:
                anchor[v] = x - y
            uses[v] += 1
            grid[x, y] = v
            yield from fill(idx + 1)
            uses[v] -= 1
            if not uses[v]:
                del anchor[v]
        grid.pop((x, y), None)

    yield from fill(0)


# value, x, y -> may this value occupy this cell
CellRule = Callable[[int, int, int], bool]


def _diagram_search(g: int, shape: GridShape, torsion: list[int],
                    allowed: Optional[CellRule]) -> Optional[DisplacementTableau]:
    """Layered reachability over diagrams; returns one tableau or None.

    With ``allowed`` given, every cell of value v must satisfy it (compatibility
    with a divisor, which already pins a single residue per value).  Without it,
    the cells of value v must share x - y mod m_v.
    """
    if shape.is_empty:
        return empty_tableau(shape)
    cols, rows = shape.cols, shape.rows
    start = (0,) * rows
    full = (cols,) * rows
    # parent[v][diagram] = (previous diagram, cells added with value v)
    layer = {start: None}
    history = []
    for v in range(1, g + 1):
        left = g - v  # values still available after v
        m = torsion[v]
        nxt: dict[tuple[int, ...], tuple] = {}
        for lam in layer:
            nxt.setdefault(lam, (lam, ()))
            corners = [(lam[y] + 1, y + 1) for y in range(rows)
                       if lam[y] < cols and (y == 0 or lam[y - 1] > lam[y])]
            if allowed is not None:
                corners = [c for c in corners if allowed(v, *c)]
                groups = [corners]
            elif m == 0:
                groups = [[c] for c in corners]
            else:
                by_res: dict[int, list] = {}
                for c in corners:
                    by_res.setdefault((c[0] - c[1]) % m, []).append(c)
                groups = list(by_res.values())
            for group in groups:
                for size in range(1, len(group) + 1):
                    for chosen in combinations(group, size):
                        mu = list(lam)
                        for x, y in chosen:
                            mu[y - 1] = x
                        mu = tuple(mu)
                        if mu in nxt:
                            continue
                        # longest remaining chain must fit in the values left
                        if any(mu[y] < cols and (cols - mu[y]) + (rows - 1 - y) > left
                               for y in range(rows)):
                            continue
                        nxt[mu] = (lam, chosen)
        history.append(nxt)
        layer = nxt
        if full in layer:
            break
    if full not in layer:
        return None
    values: dict[tuple[int, int], int] = {}
    lam = full
    for v in range(len(history), 0, -1):
        prev, chosen = history[v - 1][lam]
        for cell in chosen:
            values[cell] = v
        lam = prev
    return DisplacementTableau.from_cells(shape, values)


def _torsion_list(p: TorsionProfile) -> list[int]:
    return [0] + [p.torsion(i) for i in range(1, p.genus + 1)]


def find_tableau(p: TorsionProfile, shape: GridShape) -> Optional[DisplacementTableau]:
    """Some valid tableau on ``shape``, or None."""
    return _diagram_search(p.genus, shape, _torsion_list(p), None)


def tableau_exists(p: TorsionProfile, shape: GridShape) -> bool:
    return find_tableau(p, shape) is not None


def compatible(t: DisplacementTableau, p: TorsionProfile, D: RepresentingDivisor) -> bool:
    """Every cell (x, y) names a cycle whose position is an integer class = x - y mod its torsion."""
    for (x, y), v in t.items():
        pos = D.positions[v - 1]
        if isinstance(pos, Generic) or not congruent(pos.value, x - y, p.torsion(v)):
            return False
    return True


def exists_compatible_tableau(p: TorsionProfile, D: RepresentingDivisor,
                              shape: GridShape) -> Optional[DisplacementTableau]:
    if D.genus != p.genus:
        raise ValueError(f"divisor has {D.genus} cycles, profile has genus {p.genus}")
    torsion = _torsion_list(p)
    positions = D.positions

    def allowed(v: int, x: int, y: int) -> bool:
        pos = positions[v - 1]
        return not isinstance(pos, Generic) and congruent(pos.value, x - y, torsion[v])

    return _diagram_search(p.genus, shape, torsion, allowed)


def row_deletions(t: DisplacementTableau, g: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Values missing from each row of a two-row tableau relative to the hyperelliptic rows."""
    if t.shape.rows != 2:
        raise ValueError("deletions are defined for two-row tableaux")
    top = tuple(v for v in range(1, g) if v not in t.rows[0])
    bottom = tuple(v for v in range(2, g + 1) if v not in t.rows[1])
    return top, bottom


def two_row_by_deletion(p: TorsionProfile, l: int) -> Iterator[DisplacementTableau]:
    """Valid tableaux on [(g - l - 1) x 2] obtained by deleting l values from each hyperelliptic row."""
    g = p.genus
    if not 0 <= l <= g - 2:
        raise ValueError(f"need 0 <= l <= g - 2 = {g - 2}, got {l}")
    shape = GridShape(g - l - 1, 2)
    top_full, bottom_full = list(range(1, g)), list(range(2, g + 1))
    for del_top in combinations(top_full, l):
        top = tuple(v for v in top_full if v not in del_top)
        for del_bottom in combinations(bottom_full, l):
            bottom = tuple(v for v in bottom_full if v not in del_bottom)
            t = DisplacementTableau(shape, (top, bottom))
            if is_valid_tableau(t, p):
                yield t
