"""Behavior-tree nodes and tick semantics.

Every node kind is one ``Node`` value: composites carry children, leaves
carry an args dict whose values may be parameter slots until bound.
Statuses are plain booleans (SUCCESS/FAILURE); there is no running
state, a tick always completes.

Core leaves registered here:

  delay_manager   counts down between actions; failure prunes the tick
  game_query      issues the query action and refreshes the blackboard
  *_action        issue the action a service prepared under bb["pending"]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..hexsim.actions import Query

SUCCESS = True
FAILURE = False
NodeStatus = bool


class BlackBoard(dict):
    """Shared (key, value) memory of one tree instance."""


@dataclass(frozen=True)
class Slot:
    """A named parameter slot awaiting a bound value."""
    name: str


@dataclass(frozen=True)
class Node:
    kind: str
    children: tuple["Node", ...] = ()
    args: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind in ("selector", "sequence") and not self.children:
            raise ValueError(f"{self.kind} node needs at least one child")
        if self.kind == "timedep":
            j = len(self.children)
            intervals = self.args.get("intervals", ())
            if j < 1 or len(intervals) != j - 1:
                raise ValueError("timedep needs j children and j-1 intervals")
        if self.kind == "switch" and not self.children:
            raise ValueError("switch node needs at least one child")

    def __eq__(self, other):
        if not isinstance(other, Node):
            return NotImplemented
        return (self.kind == other.kind and self.children == other.children
                and self.args == other.args)

    def __hash__(self):
        return hash((self.kind, self.children,
                     tuple(sorted(self.args.items(), key=lambda kv: kv[0]))))


@dataclass
class TickContext:
    handle: object            # GameHandle: view/issue/check/round
    bb: BlackBoard
    delay_table: dict[str, int]


LeafFn = Callable[[TickContext, dict], bool]
LEAF_REGISTRY: dict[str, LeafFn] = {}


def register_leaf(kind: str):
    def deco(fn: LeafFn) -> LeafFn:
        LEAF_REGISTRY[kind] = fn
        return fn
    return deco


def select_time_phase(lengths, t: float) -> int:
    """1-based phase index: smallest i with t < l_1 + ... + l_i, else j.

    The last phase is open ended; zero-length phases are skipped."""
    acc = 0.0
    for i, length in enumerate(lengths, start=1):
        acc += length
        if t < acc:
            return i
    return len(lengths) + 1


def tick(node: Node, ctx: TickContext) -> NodeStatus:
    kind = node.kind
    if kind == "selector":
        for child in node.children:
            if tick(child, ctx):
                return SUCCESS
        return FAILURE
    if kind == "sequence":
        for child in node.children:
            if not tick(child, ctx):
                return FAILURE
        return SUCCESS
    if kind == "timedep":
        phase = select_time_phase(node.args["intervals"], ctx.handle.round)
        return tick(node.children[phase - 1], ctx)
    if kind == "switch":
        v = int(node.args["value"])
        if not 1 <= v <= len(node.children):
            raise ValueError(f"switch value {v} outside 1..{len(node.children)}")
        return tick(node.children[v - 1], ctx)
    try:
        leaf = LEAF_REGISTRY[kind]
    except KeyError:
        raise ValueError(f"unknown node kind {kind!r}") from None
    return leaf(ctx, node.args)


# -- core leaves --------------------------------------------------------------

@register_leaf("delay_manager")
def delay_manager(ctx: TickContext, args: dict) -> NodeStatus:
    bb = ctx.bb
    countdown = bb.get("delay.countdown", 0)
    if countdown > 0:
        bb["delay.countdown"] = countdown - 1
        return FAILURE
    issued = bb.get("issued.last") or []
    if issued:
        delay = max(ctx.delay_table.get(a.kind, 0) for a in issued)
        bb["issued.last"] = []
        if delay > 0:
            bb["delay.countdown"] = delay
            return FAILURE
    return SUCCESS


@register_leaf("game_query")
def game_query(ctx: TickContext, args: dict) -> NodeStatus:
    ctx.handle.issue(Query())
    ctx.bb.setdefault("issued.last", []).append(Query())
    view = ctx.handle.view()
    bb = ctx.bb
    bb["view"] = view
    bb["gold"] = view.gold
    bb["round"] = view.round
    bb["rules"] = view.rules
    bb.pop("pending", None)
    return SUCCESS


def _issue_pending(ctx: TickContext, expected_kind: str) -> NodeStatus:
    action = ctx.bb.get("pending")
    if action is not None and action.kind == expected_kind:
        ctx.handle.issue(action)
        ctx.bb.setdefault("issued.last", []).append(action)
        ctx.bb["pending"] = None
    # action leaves issue only prepared, valid actions: always success
    return SUCCESS


for _kind in ("move", "spawn", "settle", "upgrade", "repair"):
    def _make(k):
        def leaf(ctx: TickContext, args: dict) -> NodeStatus:
            return _issue_pending(ctx, k)
        return leaf
    LEAF_REGISTRY[f"{_kind}_action"] = _make(_kind)
