"""A* pathfinding over the hex board.

Paths avoid disabled cells and cells occupied by enemy entities at
computation time; the destination cell is exempt from the occupancy
check so that attack moves can target an occupied cell. Ties in the
open list break on (f, h, q, r), which pins down one shortest path.
"""

from __future__ import annotations

import heapq

from .coords import DIRECTIONS, Coord, distance
from .state import GameState, opponent


def blocked_cells(state: GameState, player: str,
                  include_own_units: bool = False) -> set[Coord]:
    enemy = opponent(player)
    blocked: set[Coord] = set()
    for b in state.buildings.values():
        if b.owner == enemy:
            blocked.add(b.pos)
    for u in state.units.values():
        if u.owner == enemy or (include_own_units and u.owner == player):
            blocked.add(u.pos)
    return blocked


def find_path(state: GameState, src: Coord, dst: Coord, player: str,
              include_own_units: bool = False) -> list[Coord] | None:
    """Shortest path from src to dst, excluding src, or None.

    include_own_units additionally treats the player's own unit cells as
    blocked; used when re-planning around a blocked next step.
    """
    gm = state.game_map
    if not gm.is_enabled(dst) or not gm.is_enabled(src):
        return None
    if src == dst:
        return []
    blocked = blocked_cells(state, player, include_own_units)
    blocked.discard(dst)
    blocked.discard(src)

    open_heap: list[tuple[int, int, int, int]] = []
    h0 = distance(src, dst)
    heapq.heappush(open_heap, (h0, h0, src[0], src[1]))
    g_cost: dict[Coord, int] = {src: 0}
    came: dict[Coord, Coord] = {}
    closed: set[Coord] = set()

    while open_heap:
        f, h, q, r = heapq.heappop(open_heap)
        cur = (q, r)
        if cur in closed:
            continue
        if cur == dst:
            path = [cur]
            while cur in came:
                cur = came[cur]
                path.append(cur)
            path.reverse()
            return path[1:]
        closed.add(cur)
        ng = g_cost[cur] + 1
        for dq, dr in DIRECTIONS:
            nxt = (q + dq, r + dr)
            if nxt in closed or nxt in blocked:
                continue
            if not gm.is_enabled(nxt):
                continue
            if ng < g_cost.get(nxt, 1 << 30):
                g_cost[nxt] = ng
                came[nxt] = cur
                nh = distance(nxt, dst)
                heapq.heappush(open_heap, (ng + nh, nh, nxt[0], nxt[1]))
    return None
