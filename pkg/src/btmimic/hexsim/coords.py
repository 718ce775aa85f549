"""Axial hex-grid geometry.

Cells are plain ``(q, r)`` tuples so they can be dict keys in the hot
simulation loops. The six neighbor offsets follow the standard pointy-top
axial convention.
"""

from __future__ import annotations

from typing import Iterator

Coord = tuple[int, int]

DIRECTIONS: tuple[Coord, ...] = ((1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1))


def neighbors(cell: Coord) -> list[Coord]:
    q, r = cell
    return [(q + dq, r + dr) for dq, dr in DIRECTIONS]


def distance(a: Coord, b: Coord) -> int:
    """Hex steps between two cells (cube distance on axial coords)."""
    dq = a[0] - b[0]
    dr = a[1] - b[1]
    return max(abs(dq), abs(dr), abs(dq + dr))


def cells_within(center: Coord, radius: int) -> Iterator[Coord]:
    """All cells at hex distance <= radius, in deterministic (q, r) order."""
    cq, cr = center
    for dq in range(-radius, radius + 1):
        lo = max(-radius, -dq - radius)
        hi = min(radius, -dq + radius)
        for dr in range(lo, hi + 1):
            yield (cq + dq, cr + dr)
