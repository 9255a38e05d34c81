# diagram/serializers.py
"""
Morse 图的文本格式（UTF-8，按行，# 开头为注释）：

    morse v1
    handle A
    handle B
    component 1 : B+ A+ B- A-
    event slide A+ left over B+
    event cross A- right
"""

import re

from pydantic import ValidationError

from core.exceptions import ParseError
from surface_core.types import BoundaryComponent, BoundaryConfiguration, EndpointLabel

from .services import validate_diagram
from .types import Cross, Direction, MorseDiagram, Slide

HEADER = 'morse v1'
_COMPONENT = re.compile(r'^component\s+(\d+)\s*:\s*(.*)$')


def _label(token: str, line: int) -> EndpointLabel:
    try:
        return EndpointLabel.parse(token)
    except (ValueError, ValidationError):
        raise ParseError(line, f"无法识别的端点标签 '{token}'")


def _direction(token: str, line: int) -> Direction:
    try:
        return Direction(token)
    except ValueError:
        raise ParseError(line, f"方向必须是 left 或 right，收到 '{token}'")


def parse_diagram(text: str) -> MorseDiagram:
    handles: list[str] = []
    components: list[BoundaryComponent] = []
    events: list = []
    header_seen = False

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if not header_seen:
            if line != HEADER:
                raise ParseError(number, f"文件首行必须是 '{HEADER}'")
            header_seen = True
            continue

        parts = line.split()
        keyword = parts[0]
        if keyword == 'handle':
            if len(parts) != 2:
                raise ParseError(number, "handle 行格式应为 'handle <id>'")
            if parts[1] in handles:
                raise ParseError(number, f"把手 {parts[1]} 重复声明")
            handles.append(parts[1])
        elif keyword == 'component':
            match = _COMPONENT.match(line)
            if not match:
                raise ParseError(number, "component 行格式应为 'component <int> : <label>*'")
            labels = tuple(_label(t, number) for t in match.group(2).split())
            try:
                components.append(BoundaryComponent(component_id=int(match.group(1)), labels=labels))
            except ValidationError:
                raise ParseError(number, "边界分支编号必须是正整数")
        elif keyword == 'event':
            if len(parts) == 6 and parts[1] == 'slide' and parts[4] == 'over':
                events.append(Slide(
                    mover=_label(parts[2], number),
                    direction=_direction(parts[3], number),
                    entry=_label(parts[5], number),
                ))
            elif len(parts) == 4 and parts[1] == 'cross':
                events.append(Cross(mover=_label(parts[2], number), direction=_direction(parts[3], number)))
            else:
                raise ParseError(number, f"无法识别的事件 '{line}'")
        else:
            raise ParseError(number, f"未知的关键字 '{keyword}'")

    if not header_seen:
        raise ParseError(1, "空文件")
    try:
        diagram = MorseDiagram(
            handles=tuple(handles),
            initial=BoundaryConfiguration(components=tuple(components)),
            events=tuple(events),
        )
    except ValidationError as exc:
        raise ParseError(1, f"把手名不合法: {exc.errors()[0]['msg']}")
    validate_diagram(diagram)
    return diagram


def serialize_diagram(d: MorseDiagram) -> str:
    lines = [HEADER]
    lines += [f"handle {h}" for h in d.handles]
    for component in d.initial.components:
        labels = ' '.join(str(x) for x in component.labels)
        lines.append(f"component {component.component_id} : {labels}".rstrip())
    lines += [f"event {e}" for e in d.events]
    return '\n'.join(lines) + '\n'
