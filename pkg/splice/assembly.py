# splice/assembly.py
"""
拼接的边界装配与事件展开引擎。

新的边界圆周由两个因子的区间交替拼成，每个圆周是一个循环列表，元素为：
- EndpointLabel（把手名已加 "1." / "2." 前缀）
- Junction：区间之间的接缝，不可见
- BasepointMark：继承下来的基点，每个圆周至多一个可见，其余只作标记
- FreshBasepoint：没有继承基点的圆周上新加的基点
导出配置时从可见基点之后开始读取，只保留标签。
"""

import logging
from dataclasses import dataclass
from typing import Optional, Union

from core.exceptions import NonTermination
from diagram.types import Cross, Direction, MorseDiagram, Slide
from surface_core.types import BoundaryConfiguration, EndpointLabel

from .types import StarSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Junction:
    index: int


@dataclass(frozen=True)
class BasepointMark:
    factor: int
    component_id: int


@dataclass(frozen=True)
class FreshBasepoint:
    circle: int


Item = Union[EndpointLabel, Junction, BasepointMark, FreshBasepoint]
Event = Union[Slide, Cross]


def prefix_label(label: EndpointLabel, factor: int) -> EndpointLabel:
    return EndpointLabel(handle=f"{factor}.{label.handle}", sign=label.sign)


def prefix_event(event: Event, factor: int) -> Event:
    if isinstance(event, Cross):
        return Cross(mover=prefix_label(event.mover, factor), direction=event.direction)
    return Slide(
        mover=prefix_label(event.mover, factor),
        direction=event.direction,
        entry=prefix_label(event.entry, factor),
    )


def factor_of(label: EndpointLabel) -> int:
    return int(label.handle.split('.', 1)[0])


def _intervals(d: MorseDiagram, s: StarSet, factor: int) -> list[list[Item]]:
    """区间 r_j：从 p_j 向右到同一分支上的下一个标记点，必要时绕过基点。"""
    lists = {c.component_id: [prefix_label(x, factor) for x in c.labels] for c in d.initial.components}
    on_component: dict[int, list[int]] = {}
    for j, p in enumerate(s.points):
        on_component.setdefault(p.component, []).append(j)
    for members in on_component.values():
        members.sort(key=lambda j: (s.points[j].gap, s.points[j].sub_index))

    intervals: list[list[Item]] = []
    for j, p in enumerate(s.points):
        labels = lists[p.component]
        members = on_component[p.component]
        nxt = s.sigma[j]
        end_gap = s.points[nxt].gap
        if members.index(nxt) > members.index(j):
            intervals.append(list(labels[p.gap:end_gap]))
        else:
            intervals.append(list(labels[p.gap:]) + [BasepointMark(factor, p.component)] + list(labels[:end_gap]))
    return intervals


def _untouched(d: MorseDiagram, s: StarSet, factor: int) -> list[list[Item]]:
    marked = {p.component for p in s.points}
    return [
        [BasepointMark(factor, c.component_id)] + [prefix_label(x, factor) for x in c.labels]
        for c in d.initial.components if c.component_id not in marked
    ]


class SpliceLayout:
    """拼接过程中可变的边界状态，以及已经发出的事件。"""

    def __init__(self, circles: list[list[Item]], step_limit: int):
        self.circles = circles
        self.visible: set[Item] = set()
        for k, circle in enumerate(circles):
            marks = [x for x in circle if isinstance(x, BasepointMark)]
            if marks:
                self.visible.add(min(marks, key=lambda m: (m.factor, m.component_id)))
            else:
                fresh = FreshBasepoint(k)
                circle.insert(0, fresh)
                self.visible.add(fresh)
        self.events: list[Event] = []
        self.step_limit = step_limit
        self.steps = 0
        self.home = {label: self.anchor(label) for label in self.labels()}

    @classmethod
    def assemble(cls, d1: MorseDiagram, s1: StarSet, d2: MorseDiagram, s2: StarSet, step_factor: int) -> "SpliceLayout":
        first, second = _intervals(d1, s1, 1), _intervals(d2, s2, 2)
        n = s1.n
        circles: list[list[Item]] = []
        seen: set[int] = set()
        junction = 0
        # r^1_j 之后接 r^2_{σ1(j)}，r^2_k 之后接 r^1_{σ2(k+1)}；s2 已按反向编号给出
        for start in range(n):
            if start in seen:
                continue
            circle: list[Item] = []
            j = start
            while j not in seen:
                seen.add(j)
                k = s1.sigma[j]
                circle += first[j] + [Junction(junction)] + second[k] + [Junction(junction + 1)]
                junction += 2
                j = s2.sigma[(k + 1) % n]
            circles.append(circle)
        circles += _untouched(d1, s1, 1) + _untouched(d2, s2, 2)

        total_items = sum(len(c) for c in circles) + len(circles)
        # 漂移补全也计入步数：事件数之外再加上标签数
        total_events = len(d1.events) + len(d2.events) + sum(len(c.labels) for d in (d1, d2) for c in d.initial.components) + 1
        logger.debug("拼接得到 %d 个边界圆周", len(circles))
        return cls(circles, step_factor * total_items * total_events)

    # --- 查询 ---

    def labels(self) -> list[EndpointLabel]:
        return [x for c in self.circles for x in c if isinstance(x, EndpointLabel)]

    def locate(self, item: Item) -> tuple[int, int]:
        for ci, circle in enumerate(self.circles):
            if item in circle:
                return ci, circle.index(item)
        raise NonTermination(f"拼接边界中找不到 {item}")

    def neighbor(self, label: EndpointLabel, direction: Direction) -> Item:
        ci, i = self.locate(label)
        circle = self.circles[ci]
        step = -1 if direction is Direction.LEFT else 1
        return circle[(i + step) % len(circle)]

    def anchor(self, label: EndpointLabel) -> Optional[Item]:
        """右侧第一个不属于同一因子标签的元素，用来确定标签所在的槽位。"""
        ci, i = self.locate(label)
        circle = self.circles[ci]
        own = factor_of(label)
        for k in range(1, len(circle)):
            item = circle[(i + k) % len(circle)]
            if not (isinstance(item, EndpointLabel) and factor_of(item) == own):
                return item
        return None

    def export(self) -> BoundaryConfiguration:
        lists = []
        for circle in self.circles:
            v = next(i for i, x in enumerate(circle) if x in self.visible)
            rotated = circle[v + 1:] + circle[:v]
            lists.append([x for x in rotated if isinstance(x, EndpointLabel)])
        return BoundaryConfiguration.from_lists(lists)

    # --- 移动 ---

    def _tick(self) -> None:
        self.steps += 1
        if self.steps > self.step_limit:
            raise NonTermination(f"事件展开超过了 {self.step_limit} 步的安全上限")

    def _insert_beside(self, label: EndpointLabel, target: Item, direction: Direction) -> None:
        ci, k = self.locate(target)
        self.circles[ci].insert(k if direction is Direction.LEFT else k + 1, label)

    def _pass(self, label: EndpointLabel, direction: Direction) -> None:
        target = self.neighbor(label, direction)
        ci, i = self.locate(label)
        self.circles[ci].pop(i)
        self._insert_beside(label, target, direction)

    def _slide(self, label: EndpointLabel, direction: Direction, entry: EndpointLabel) -> None:
        self.events.append(Slide(mover=label, direction=direction, entry=entry))
        ci, i = self.locate(label)
        self.circles[ci].pop(i)
        self._insert_beside(label, entry.partner, direction)

    def _cross(self, label: EndpointLabel, direction: Direction) -> None:
        self.events.append(Cross(mover=label, direction=direction))
        self._pass(label, direction)

    def expand(self, event: Event) -> None:
        """
        按遇到的顺序展开一个因子事件：
        越过另一因子的标签时瞬移，越过可见的外来基点时发出 Cross，
        接缝与不可见标记静默通过，到达自身的目标后停止。
        """
        mover, direction = event.mover, event.direction
        own = factor_of(mover)
        while True:
            self._tick()
            item = self.neighbor(mover, direction)
            if isinstance(item, EndpointLabel):
                if factor_of(item) != own:
                    self._slide(mover, direction, item)
                    continue
                if isinstance(event, Slide) and item == event.entry:
                    self._slide(mover, direction, item)
                    return
                raise NonTermination(f"{mover} 在到达目标之前遇到了本因子的 {item}")
            if isinstance(item, BasepointMark) and item.factor == own:
                if not isinstance(event, Cross):
                    raise NonTermination(f"{mover} 的滑动路径经过了本因子的基点")
                if item in self.visible:
                    self._cross(mover, direction)
                else:
                    self._pass(mover, direction)
                return
            if item in self.visible:
                self._cross(mover, direction)
            else:
                self._pass(mover, direction)

    def _drift(self, label: EndpointLabel, direction: Direction) -> tuple[bool, bool]:
        moved = False
        own = factor_of(label)
        while self.anchor(label) != self.home[label]:
            self._tick()
            item = self.neighbor(label, direction)
            if isinstance(item, EndpointLabel):
                if factor_of(item) == own:
                    return moved, False
                self._slide(label, direction, item)
            elif isinstance(item, BasepointMark) and item.factor == own:
                return moved, False
            elif item in self.visible:
                self._cross(label, direction)
            else:
                self._pass(label, direction)
            moved = True
        return moved, True

    def settle(self, factor: int, last_direction: dict[EndpointLabel, Direction]) -> None:
        """
        因子的事件全部展开后，仍不在原槽位的标签沿最后的方向继续移动，直到回到原槽位。
        本因子的标签与基点会挡住移动：先推迟重试，仍无进展时改为反方向。
        """
        directions = {
            label: last_direction.get(label, Direction.RIGHT)
            for label in self.home if factor_of(label) == factor
        }
        pending = [label for label in directions if self.anchor(label) != self.home[label]]
        flipped = False
        while pending:
            progressed = False
            blocked = []
            for label in pending:
                moved, done = self._drift(label, directions[label])
                progressed = progressed or moved
                if not done:
                    blocked.append(label)
            if blocked and not progressed:
                if flipped:
                    raise NonTermination("标签无法回到原槽位: " + ', '.join(str(x) for x in blocked))
                for label in blocked:
                    directions[label] = directions[label].opposite
                flipped = True
            elif progressed:
                flipped = False
            pending = blocked
