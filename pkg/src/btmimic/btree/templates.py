"""Text formats for tree templates and parameter files.

Template files: one node per line, two-space indentation for children,
``kind key=value ...`` with ``$name`` marking parameter slots and
comma-separated tuples for interval lists.

Parameter files: one slot per line, in depth-first template order:

    <name> continuous <default> <lo> <hi>
    <name> discrete <default> <choice|choice|...>
"""

from __future__ import annotations

from .nodes import Node, Slot
from .params import (
    CONTINUOUS,
    DISCRETE,
    AdaptiveBehaviorTree,
    ParameterDescriptor,
    ParameterDomain,
)


class TemplateError(ValueError):
    pass


def _parse_atom(token: str):
    if token.startswith("$"):
        return Slot(token[1:])
    try:
        return int(token)
    except ValueError:
        pass
    try:
        return float(token)
    except ValueError:
        pass
    return token


def _format_atom(value) -> str:
    if isinstance(value, Slot):
        return f"${value.name}"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_value(token: str):
    if "," in token:
        return tuple(_parse_atom(t) for t in token.split(","))
    return _parse_atom(token)


def _format_value(value) -> str:
    if isinstance(value, tuple):
        return ",".join(_format_atom(v) for v in value)
    return _format_atom(value)


def parse_template(text: str) -> Node:
    entries: list[tuple[int, str, dict]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if "\t" in line:
            raise TemplateError(f"line {lineno}: tabs not allowed")
        stripped = line.lstrip(" ")
        indent = len(line) - len(stripped)
        if indent % 2 != 0:
            raise TemplateError(f"line {lineno}: indentation must be 2 spaces")
        parts = stripped.split()
        args: dict = {}
        for part in parts[1:]:
            if "=" not in part:
                raise TemplateError(f"line {lineno}: expected key=value, got {part!r}")
            key, val = part.split("=", 1)
            args[key] = _parse_value(val)
        entries.append((indent // 2, parts[0], args))
    if not entries:
        raise TemplateError("empty template")

    def build(pos: int, depth: int) -> tuple[Node, int]:
        d, kind, args = entries[pos]
        if d != depth:
            raise TemplateError(f"unexpected indentation at entry {pos}")
        pos += 1
        children = []
        while pos < len(entries) and entries[pos][0] == depth + 1:
            child, pos = build(pos, depth + 1)
            children.append(child)
        if pos < len(entries) and entries[pos][0] > depth + 1:
            raise TemplateError(f"indentation jumps at entry {pos}")
        return Node(kind, tuple(children), args), pos

    root, end = build(0, 0)
    if end != len(entries):
        raise TemplateError("multiple roots in template file")
    return root


def format_template(node: Node) -> str:
    lines: list[str] = []

    def walk(nd: Node, depth: int) -> None:
        head = "  " * depth + nd.kind
        for key in nd.args:
            head += f" {key}={_format_value(nd.args[key])}"
        lines.append(head)
        for child in nd.children:
            walk(child, depth + 1)

    walk(node, 0)
    return "\n".join(lines) + "\n"


def parse_params(text: str) -> tuple[ParameterDomain, tuple]:
    descriptors: list[ParameterDescriptor] = []
    defaults: list = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) < 4:
            raise TemplateError(f"line {lineno}: expected name kind default domain")
        name, kind = parts[0], parts[1]
        if kind == CONTINUOUS:
            if len(parts) != 5:
                raise TemplateError(f"line {lineno}: continuous needs default lo hi")
            default, lo, hi = (float(parts[2]), float(parts[3]), float(parts[4]))
            descriptors.append(ParameterDescriptor(name, CONTINUOUS, lo=lo, hi=hi))
            defaults.append(default)
        elif kind == DISCRETE:
            if len(parts) != 4:
                raise TemplateError(f"line {lineno}: discrete needs default choices")
            choices = tuple(_parse_atom(c) for c in parts[3].split("|"))
            default = _parse_atom(parts[2])
            descriptors.append(ParameterDescriptor(name, DISCRETE, choices=choices))
            defaults.append(default)
        else:
            raise TemplateError(f"line {lineno}: unknown kind {kind!r}")
    return ParameterDomain(descriptors), tuple(defaults)


def format_params(domain: ParameterDomain, defaults) -> str:
    lines = []
    for d, v in zip(domain, defaults):
        if d.kind == CONTINUOUS:
            lines.append(f"{d.name} continuous {_format_atom(float(v))} "
                         f"{_format_atom(float(d.lo))} {_format_atom(float(d.hi))}")
        else:
            choices = "|".join(_format_atom(c) for c in d.choices)
            lines.append(f"{d.name} discrete {_format_atom(v)} {choices}")
    return "\n".join(lines) + "\n"


def load_abt(template_text: str, params_text: str) -> AdaptiveBehaviorTree:
    template = parse_template(template_text)
    domain, defaults = parse_params(params_text)
    return AdaptiveBehaviorTree(template, domain, defaults)
