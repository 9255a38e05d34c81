# diagram/services.py
"""
Morse 图的事件语义：弧滑动（瞬移）与越过基点。
基点是 Slide 的硬边界，越过基点必须显式地写成 Cross 事件。
"""

import logging
from typing import Union

from core.exceptions import EventError, MissingPartner, NotAdjacent, NotRealizable, SelfSlide, UnknownLabel
from surface_core.services import handles_of, is_realizable, validate_configuration
from surface_core.types import BoundaryConfiguration, EndpointLabel, Sign

from .types import Cross, DiagramRun, Direction, HandleProfile, MorseDiagram, Slide

logger = logging.getLogger(__name__)

Event = Union[Slide, Cross]


def _locate(cfg: BoundaryConfiguration, label: EndpointLabel) -> tuple[int, int]:
    position = cfg.locate(label)
    if position is None:
        raise UnknownLabel(label)
    return position


def apply_event(cfg: BoundaryConfiguration, event: Event) -> BoundaryConfiguration:
    lists = cfg.as_lists()
    ci, i = _locate(cfg, event.mover)
    row = lists[ci]

    if isinstance(event, Cross):
        at_end = i == 0 if event.direction is Direction.LEFT else i == len(row) - 1
        if not at_end:
            raise NotAdjacent(f"{event.mover} 与基点不相邻，无法向 {event.direction.value} 越过基点")
        row.pop(i)
        if event.direction is Direction.LEFT:
            row.append(event.mover)
        else:
            row.insert(0, event.mover)
        return cfg.with_lists(lists)

    if event.entry.handle == event.mover.handle:
        raise SelfSlide(event.mover)
    _locate(cfg, event.entry)
    j = i - 1 if event.direction is Direction.LEFT else i + 1
    if not 0 <= j < len(row) or row[j] != event.entry:
        raise NotAdjacent(f"{event.mover} 在 {event.direction.value} 方向上的相邻对象不是 {event.entry}")

    row.pop(i)
    target = event.entry.partner
    tj = next(k for k, r in enumerate(lists) if target in r)
    pos = lists[tj].index(target)
    # 落在配对端点的远侧：向左则紧贴其前，向右则紧贴其后
    lists[tj].insert(pos if event.direction is Direction.LEFT else pos + 1, event.mover)
    return cfg.with_lists(lists)


def inverse_event(event: Event) -> Event:
    if isinstance(event, Cross):
        return Cross(mover=event.mover, direction=event.direction.opposite)
    return Slide(mover=event.mover, direction=event.direction.opposite, entry=event.entry.partner)


def applicable_events(cfg: BoundaryConfiguration) -> list[Event]:
    """列出在 cfg 上可以执行的全部事件（按标签顺序，先左后右）。"""
    events: list[Event] = []
    for row in cfg.as_lists():
        for i, mover in enumerate(row):
            for direction, j in ((Direction.LEFT, i - 1), (Direction.RIGHT, i + 1)):
                if 0 <= j < len(row):
                    if row[j].handle != mover.handle:
                        events.append(Slide(mover=mover, direction=direction, entry=row[j]))
                else:
                    events.append(Cross(mover=mover, direction=direction))
    return events


def validate_diagram(d: MorseDiagram) -> None:
    """
    静态校验：边界配置合法、声明的把手与配置一致、事件只引用已知标签且没有自滑动。
    不执行事件序列。
    """
    validate_configuration(d.initial)
    present = handles_of(d.initial)
    for handle in d.handles:
        if handle not in present:
            raise MissingPartner(handle)
    for handle in present:
        if handle not in d.handles:
            raise UnknownLabel(EndpointLabel(handle=handle, sign=Sign.PLUS))

    known = set(d.initial.labels())
    for index, event in enumerate(d.events):
        if event.mover not in known:
            raise UnknownLabel(event.mover).at(index)
        if isinstance(event, Slide):
            if event.entry not in known:
                raise UnknownLabel(event.entry).at(index)
            if event.entry.handle == event.mover.handle:
                raise SelfSlide(event.mover).at(index)


def run_diagram(d: MorseDiagram) -> DiagramRun:
    validate_diagram(d)
    if not is_realizable(d.initial):
        raise NotRealizable("初始边界配置不可实现")

    configurations = [d.initial]
    for index, event in enumerate(d.events):
        try:
            configurations.append(apply_event(configurations[-1], event))
        except EventError as exc:
            raise exc.at(index)
    closed = configurations[-1] == d.initial
    logger.debug("执行了 %d 个事件，closed=%s", len(d.events), closed)
    return DiagramRun(configurations=tuple(configurations), closed=closed)


def is_closed(d: MorseDiagram) -> bool:
    return run_diagram(d).closed


def moving_profile(d: MorseDiagram) -> dict[str, HandleProfile]:
    """统计每个把手两个端点作为 mover 的全部移动方向。"""
    run_diagram(d)
    moves: dict[str, dict[Sign, list[Direction]]] = {h: {Sign.PLUS: [], Sign.MINUS: []} for h in d.handles}
    for event in d.events:
        moves[event.mover.handle][event.mover.sign].append(event.direction)
    return {
        h: HandleProfile(plus_moves=tuple(m[Sign.PLUS]), minus_moves=tuple(m[Sign.MINUS]))
        for h, m in moves.items()
    }
