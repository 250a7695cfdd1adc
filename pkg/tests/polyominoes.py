"""Free polyomino generation for exhaustive fixture sweeps."""

from __future__ import annotations

import gzip
from functools import lru_cache
from pathlib import Path

from tilingideals.region import Region

DATA = Path(__file__).parent / "data" / "polyominoes_le12.txt.gz"

# OEIS A000105: free polyominoes with n cells.
FREE_COUNTS = {1: 1, 2: 1, 3: 2, 4: 5, 5: 12, 6: 35, 7: 108, 8: 369, 9: 1285,
               10: 4655, 11: 17073, 12: 63600}


def _normalize(cells):
    mx = min(x for x, _ in cells)
    my = min(y for _, y in cells)
    return tuple(sorted((x - mx, y - my) for x, y in cells))


def canonical(cells) -> tuple:
    forms = []
    for sx in (1, -1):
        for sy in (1, -1):
            for swap in (False, True):
                pts = [((y, x) if swap else (x, y)) for x, y in cells]
                forms.append(_normalize([(sx * x, sy * y) for x, y in pts]))
    return min(forms)


def grow(n_max: int) -> dict[int, list[tuple]]:
    """Canonical free polyominoes by size, grown one cell at a time."""
    levels = {1: [((0, 0),)]}
    for n in range(2, n_max + 1):
        seen = set()
        for p in levels[n - 1]:
            occupied = set(p)
            for x, y in p:
                for c in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                    if c not in occupied:
                        seen.add(canonical(p + (c,)))
        levels[n] = sorted(seen)
    return levels


def _encode(p) -> str:
    return ";".join(f"{x},{y}" for x, y in p)


def _decode(s: str) -> tuple:
    return tuple(tuple(int(v) for v in c.split(",")) for c in s.split(";"))


def write_data(n_max: int = 12) -> None:
    levels = grow(n_max)
    DATA.parent.mkdir(exist_ok=True)
    with gzip.open(DATA, "wt") as fh:
        for n in sorted(levels):
            for p in levels[n]:
                fh.write(_encode(p) + "\n")


@lru_cache(maxsize=None)
def polyominoes(n: int) -> tuple[tuple, ...]:
    if n <= 8 or not DATA.exists():
        return tuple(grow(n)[n])
    with gzip.open(DATA, "rt") as fh:
        return tuple(p for p in map(_decode, fh.read().split()) if len(p) == n)


def regions(n: int) -> list[Region]:
    return [Region(2, frozenset(p)) for p in polyominoes(n)]


if __name__ == "__main__":
    write_data()
