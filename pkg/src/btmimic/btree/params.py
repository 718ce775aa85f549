"""Parameter descriptors, domains, and binding vectors into templates.

A template's slots are indexed by the depth-first order of their first
occurrence; the domain must list descriptors in exactly that order (one
slot name may appear at several nodes and binds to the same value).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .nodes import Node, Slot

CONTINUOUS = "continuous"
DISCRETE = "discrete"


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class ParameterDescriptor:
    name: str
    kind: str                       # continuous | discrete
    lo: float = 0.0                 # continuous bounds (closed interval)
    hi: float = 0.0
    choices: tuple = ()             # discrete finite set, ordered

    def __post_init__(self):
        if self.kind == CONTINUOUS:
            if not self.lo <= self.hi:
                raise DomainError(f"{self.name}: empty interval")
        elif self.kind == DISCRETE:
            if not self.choices:
                raise DomainError(f"{self.name}: no choices")
        else:
            raise DomainError(f"{self.name}: unknown kind {self.kind!r}")

    def contains(self, value) -> bool:
        if self.kind == CONTINUOUS:
            return isinstance(value, (int, float)) and self.lo <= value <= self.hi
        return value in self.choices

    def sample(self, rng):
        if self.kind == CONTINUOUS:
            return rng.uniform(self.lo, self.hi)
        return self.choices[rng.randrange(len(self.choices))]


class ParameterDomain:
    """Ordered list of descriptors; the cartesian product is the domain."""

    def __init__(self, descriptors):
        self.descriptors: tuple[ParameterDescriptor, ...] = tuple(descriptors)
        self.index = {d.name: i for i, d in enumerate(self.descriptors)}
        if len(self.index) != len(self.descriptors):
            raise DomainError("duplicate parameter names")

    def __len__(self) -> int:
        return len(self.descriptors)

    def __iter__(self):
        return iter(self.descriptors)

    def __getitem__(self, name: str) -> ParameterDescriptor:
        return self.descriptors[self.index[name]]

    def names(self) -> list[str]:
        return [d.name for d in self.descriptors]

    def validate(self, p) -> None:
        if len(p) != len(self.descriptors):
            raise DomainError(
                f"vector has {len(p)} values, domain has {len(self.descriptors)}")
        for d, v in zip(self.descriptors, p):
            if not d.contains(v):
                raise DomainError(f"parameter {d.name!r}: value {v!r} out of domain")

    def sample(self, rng) -> list:
        return [d.sample(rng) for d in self.descriptors]

    def restrict(self, name: str, *, lo=None, hi=None,
                 choices=None) -> "ParameterDomain":
        """A copy with one slot's domain narrowed."""
        d = self[name]
        if d.kind == CONTINUOUS:
            new = replace(d, lo=d.lo if lo is None else float(lo),
                          hi=d.hi if hi is None else float(hi))
            if new.lo < d.lo or new.hi > d.hi:
                raise DomainError(f"{name}: restriction must narrow the domain")
        else:
            if not choices:
                raise DomainError(f"{name}: discrete restriction needs choices")
            bad = [c for c in choices if c not in d.choices]
            if bad:
                raise DomainError(f"{name}: {bad} not in original choices")
            new = replace(d, choices=tuple(choices))
        out = list(self.descriptors)
        out[self.index[name]] = new
        return ParameterDomain(out)


def collect_slots(node: Node) -> list[str]:
    """Slot names in depth-first first-occurrence order."""
    seen: list[str] = []

    def walk(nd: Node) -> None:
        for value in nd.args.values():
            for part in value if isinstance(value, tuple) else (value,):
                if isinstance(part, Slot) and part.name not in seen:
                    seen.append(part.name)
        for child in nd.children:
            walk(child)

    walk(node)
    return seen


@dataclass(frozen=True)
class AdaptiveBehaviorTree:
    """A template with named slots, its domain, and the default vector."""
    template: Node
    domain: ParameterDomain
    defaults: tuple

    def __post_init__(self):
        slots = collect_slots(self.template)
        if slots != self.domain.names():
            raise DomainError(
                "domain order must match depth-first slot order: "
                f"{self.domain.names()} != {slots}")
        self.domain.validate(self.defaults)

    def bind(self, p) -> Node:
        return bind_parameters(self, p)


def bind_parameters(abt: AdaptiveBehaviorTree, p) -> Node:
    """Replace every slot with its vector value; pure, validates first."""
    abt.domain.validate(p)
    values = {name: p[i] for name, i in abt.domain.index.items()}

    def subst(value):
        if isinstance(value, Slot):
            return values[value.name]
        if isinstance(value, tuple):
            return tuple(subst(v) for v in value)
        return value

    def walk(node: Node) -> Node:
        return Node(
            kind=node.kind,
            children=tuple(walk(c) for c in node.children),
            args={k: subst(v) for k, v in node.args.items()},
        )

    return walk(abt.template)
