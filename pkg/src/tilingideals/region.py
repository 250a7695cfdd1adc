"""Cubiculated regions: finite sets of unit cells on the integer lattice.

A cell is identified with the minimal corner of its unit cube.  Two file
layouts are understood (see :func:`parse_region`): a 2D ASCII picture and an
explicit ``dim n`` coordinate list.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator

Cell = tuple[int, ...]


class RegionError(ValueError):
    """Raised for malformed region text or regions violating a precondition."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Region:
    dim: int
    cells: frozenset[Cell]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise RegionError(f"dimension must be positive, got {self.dim}")
        for c in self.cells:
            if len(c) != self.dim:
                raise RegionError(f"cell {c} does not have {self.dim} coordinates")

    @classmethod
    def from_cells(cls, cells: Iterable[Iterable[int]], dim: int | None = None) -> "Region":
        cs = frozenset(tuple(int(x) for x in c) for c in cells)
        if dim is None:
            if not cs:
                raise RegionError("cannot infer the dimension of an empty region")
            dim = len(next(iter(cs)))
        return cls(dim, cs)

    @classmethod
    def box(cls, *sides: int) -> "Region":
        """The full box with the given side lengths along x, y, z, ..."""
        if not sides or any(s < 1 for s in sides):
            raise RegionError(f"invalid box sides {sides}")
        return cls(len(sides), frozenset(product(*(range(s) for s in sides))))

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[Cell]:
        return iter(sorted(self.cells))

    def __contains__(self, cell: object) -> bool:
        return cell in self.cells

    def neighbors(self, cell: Cell) -> Iterator[Cell]:
        """Cells of the region sharing a codimension-one face with ``cell``."""
        for axis in range(self.dim):
            for step in (-1, 1):
                other = cell[:axis] + (cell[axis] + step,) + cell[axis + 1:]
                if other in self.cells:
                    yield other

    def components(self) -> list[frozenset[Cell]]:
        """Face-connected components, ordered by their smallest cell."""
        seen: set[Cell] = set()
        comps = []
        for start in sorted(self.cells):
            if start in seen:
                continue
            seen.add(start)
            comp = {start}
            queue = deque([start])
            while queue:
                c = queue.popleft()
                for n in self.neighbors(c):
                    if n not in seen:
                        seen.add(n)
                        comp.add(n)
                        queue.append(n)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def color_counts(self) -> tuple[int, int]:
        """Number of cells with even and odd coordinate sum."""
        even = sum(1 for c in self.cells if sum(c) % 2 == 0)
        return even, len(self.cells) - even


def bounding_box(region: Region) -> tuple[Cell, Cell]:
    """Componentwise minimum and maximum + 1 over the cell coordinates."""
    if not region.cells:
        raise RegionError("empty region has no bounding box")
    lo = tuple(min(c[i] for c in region.cells) for i in range(region.dim))
    hi = tuple(max(c[i] for c in region.cells) + 1 for i in range(region.dim))
    return lo, hi


def _meaningful_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        stripped = line.strip()
        if not stripped or stripped.startswith("//"):
            continue
        yield lineno, line


def parse_region(text: str) -> Region:
    """Parse the ``.region`` text format.

    Either an ASCII picture (``#`` = cell, ``.`` = empty; the first row is the
    northernmost, i.e. has the largest y) or a ``dim <n>`` header followed by one
    cell per line as ``n`` whitespace-separated integers.  Blank lines and
    ``//`` comment lines are ignored everywhere.
    """
    lines = list(_meaningful_lines(text))
    if not lines:
        raise RegionError("empty region")
    first_no, first = lines[0]
    if first.split()[0] == "dim":
        return _parse_coordinate_list(lines)
    return _parse_ascii(lines)


def _parse_ascii(lines: list[tuple[int, str]]) -> Region:
    rows = []
    for lineno, line in lines:
        line = line.rstrip()
        for col, ch in enumerate(line, start=1):
            if ch not in "#.":
                raise RegionError(f"unexpected character {ch!r}", lineno, col)
        rows.append(line)
    height = len(rows)
    cells = {
        (x, height - 1 - r)
        for r, row in enumerate(rows)
        for x, ch in enumerate(row)
        if ch == "#"
    }
    if not cells:
        raise RegionError("empty region")
    return Region(2, frozenset(cells))


def _parse_coordinate_list(lines: list[tuple[int, str]]) -> Region:
    header_no, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise RegionError("expected 'dim <n>'", header_no, 1)
    try:
        dim = int(parts[1])
    except ValueError:
        raise RegionError(f"invalid dimension {parts[1]!r}", header_no, header.index(parts[1]) + 1) from None
    if dim < 1:
        raise RegionError(f"dimension must be positive, got {dim}", header_no)
    cells: set[Cell] = set()
    for lineno, line in lines[1:]:
        fields = line.split()
        if len(fields) != dim:
            raise RegionError(f"expected {dim} coordinates, got {len(fields)}", lineno, 1)
        coords = []
        for f in fields:
            try:
                coords.append(int(f))
            except ValueError:
                raise RegionError(f"invalid integer {f!r}", lineno, line.index(f) + 1) from None
        cell = tuple(coords)
        if cell in cells:
            raise RegionError(f"duplicate cell {cell}", lineno, 1)
        cells.add(cell)
    if not cells:
        raise RegionError("empty region")
    return Region(dim, frozenset(cells))


def serialize_region(region: Region) -> str:
    """Canonical text form; 2D regions become ASCII pictures."""
    if not region.cells:
        raise RegionError("empty region")
    if region.dim != 2:
        body = "\n".join(" ".join(map(str, c)) for c in sorted(region.cells))
        return f"dim {region.dim}\n{body}\n"
    (x0, y0), (x1, y1) = bounding_box(region)
    rows = []
    for y in range(y1 - 1, y0 - 1, -1):
        rows.append("".join("#" if (x, y) in region.cells else "." for x in range(x0, x1)))
    # Parsing anchors the picture at x = 0 and y = 0, so translate explicitly.
    if (x0, y0) != (0, 0):
        body = "\n".join(f"{x} {y}" for x, y in sorted(region.cells))
        return f"dim 2\n{body}\n"
    return "\n".join(rows) + "\n"


def load_region(path: str) -> Region:
    with open(path, encoding="utf-8") as fh:
        return parse_region(fh.read())


def euler_characteristic(region: Region) -> int:
    """V - E + F of the closed cubical complex formed by the 2D cells."""
    if region.dim != 2:
        raise RegionError("Euler characteristic is only implemented for 2D regions")
    corners: set[Cell] = set()
    edges: set[tuple[Cell, Cell]] = set()
    for x, y in region.cells:
        a, b, c, d = (x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)
        corners.update((a, b, c, d))
        edges.update(((a, b), (d, c), (a, d), (b, c)))
    return len(corners) - len(edges) + len(region.cells)


def is_simply_connected(region: Region) -> bool:
    """True iff the connected 2D region has no holes (Euler characteristic 1)."""
    if region.dim != 2:
        raise RegionError(f"simple connectivity needs a 2D region, got dim {region.dim}")
    if not region.cells:
        raise RegionError("empty region")
    if not region.is_connected():
        raise RegionError("region is not edge-connected")
    return euler_characteristic(region) == 1
