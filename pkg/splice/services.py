# splice/services.py
"""
Murasugi 和：标记点与星形集合、两个 Morse 图的拼接、Hopf 带以及稳定化。
"""

import logging
import re
from dataclasses import dataclass
from typing import Sequence

from django.conf import settings

from core.exceptions import MismatchedN, MorseError, NonClosedInput, NonTermination, NotRealizable, NotStarlike, ParseError
from diagram.services import run_diagram
from diagram.types import Cross, Direction, MorseDiagram
from surface_core.services import cut_circles, handles_of, is_realizable
from surface_core.types import BoundaryConfiguration

from .assembly import SpliceLayout, prefix_event
from .types import BandSign, MarkedPoint, StarOrder, StarSet

logger = logging.getLogger(__name__)

_POINT = re.compile(r'^(\d+):(\d+)(?:\.(\d+))?$')

# Hopf 带上的标准标记点：每个环面分支各一个，紧跟在唯一的标签之后
HOPF_POINTS = "1:1.0,2:1.0"


def parse_points(text: str) -> list[MarkedPoint]:
    """解析 'c:g.s,c:g.s,...'，subIndex 可省略。"""
    points = []
    for token in text.split(','):
        match = _POINT.match(token.strip())
        if not match:
            raise ParseError(None, f"无法识别的标记点 '{token.strip()}'，格式应为 component:gap.subIndex")
        component, gap, sub = match.groups()
        points.append(MarkedPoint(component=int(component), gap=int(gap), sub_index=int(sub or 0)))
    return points


def _check_points(cfg: BoundaryConfiguration, points: Sequence[MarkedPoint]) -> None:
    if not points:
        raise NotStarlike("至少需要一个标记点")
    sizes = {c.component_id: len(c.labels) for c in cfg.components}
    for p in points:
        if p.component not in sizes:
            raise NotStarlike(f"标记点 {p} 所在的边界分支不存在")
        if p.gap > sizes[p.component]:
            raise NotStarlike(f"标记点 {p} 的 gap 超出范围")
    if len(set(points)) != len(points):
        raise NotStarlike("标记点重复")


@dataclass(frozen=True)
class _PointMarker:
    index: int


def star_order(cfg: BoundaryConfiguration, points: Sequence[MarkedPoint]) -> StarOrder:
    """
    在 cut-to-disc 过程中跟踪标记点；最后唯一圆周上标记点的循环顺序即星形顺序。
    给定编号是星形的，当且仅当它与该循环顺序只差一个旋转。
    """
    _check_points(cfg, points)
    if not is_realizable(cfg):
        raise NotRealizable("边界配置不可实现")

    circles = []
    for component in cfg.components:
        here = sorted(
            (j for j, p in enumerate(points) if p.component == component.component_id),
            key=lambda j: (points[j].gap, points[j].sub_index),
        )
        circle: list = []
        for g in range(len(component.labels) + 1):
            circle += [_PointMarker(j) for j in here if points[j].gap == g]
            if g < len(component.labels):
                circle.append(component.labels[g])
        circles.append(tuple(circle))

    steps = cut_circles(circles, handles_of(cfg))
    final = steps[-1] if steps else circles
    order = [x.index for x in final[0] if isinstance(x, _PointMarker)]
    start = order.index(0)
    order = order[start:] + order[:start]
    return StarOrder(order=tuple(order), starlike=order == list(range(len(points))))


def make_star_set(cfg: BoundaryConfiguration, points: Sequence[MarkedPoint]) -> StarSet:
    """计算 σ：每个 r_j 的右端点是同一分支上循环意义下的下一个标记点。"""
    _check_points(cfg, points)
    sigma = [0] * len(points)
    for component in cfg.components:
        here = sorted(
            (j for j, p in enumerate(points) if p.component == component.component_id),
            key=lambda j: (points[j].gap, points[j].sub_index),
        )
        for pos, j in enumerate(here):
            sigma[j] = here[(pos + 1) % len(here)]
    return StarSet(points=tuple(points), sigma=tuple(sigma))


def _check_factor(d: MorseDiagram, s: StarSet) -> None:
    if not run_diagram(d).closed:
        raise NonClosedInput("只能拼接闭合的 Morse 图")
    if make_star_set(d.initial, s.points).sigma != s.sigma:
        raise NotStarlike("σ 与标记点的位置不一致")
    if not star_order(d.initial, s.points).starlike:
        raise NotStarlike("标记点的编号不是星形顺序")


def _reverse_indexing(cfg: BoundaryConfiguration, s: StarSet) -> StarSet:
    n = s.n
    return make_star_set(cfg, [s.points[(-j) % n] for j in range(n)])


def splice(d1: MorseDiagram, s1: StarSet, d2: MorseDiagram, s2: StarSet) -> MorseDiagram:
    """
    两个闭合 Morse 图的 Murasugi 和。
    两组标记点都按各自的星形顺序编号；第二个因子沿多边形反向绕行，拼装前把它的编号 j 换成 -j (mod n)。
    先展开第一个因子的全部事件，再展开第二个因子的；每一半结束后补全漂移，使输出闭合。
    """
    if s1.n != s2.n:
        raise MismatchedN(f"两组标记点个数不同: {s1.n} 与 {s2.n}")
    _check_factor(d1, s1)
    _check_factor(d2, s2)
    s2 = _reverse_indexing(d2.initial, s2)

    step_factor = getattr(settings, 'MORSE_SPLICE_STEP_FACTOR', 4)
    layout = SpliceLayout.assemble(d1, s1, d2, s2, step_factor)
    initial = layout.export()

    for factor, d in ((1, d1), (2, d2)):
        last_direction = {}
        for event in d.events:
            expanded = prefix_event(event, factor)
            layout.expand(expanded)
            last_direction[expanded.mover] = expanded.direction
        layout.settle(factor, last_direction)
        logger.debug("第 %d 个因子展开后共 %d 个事件", factor, len(layout.events))

    handles = tuple(f"1.{h}" for h in d1.handles) + tuple(f"2.{h}" for h in d2.handles)
    result = MorseDiagram(handles=handles, initial=initial, events=tuple(layout.events))
    try:
        closed = run_diagram(result).closed
    except MorseError as exc:
        raise NonTermination(f"展开后的事件序列无法执行: {exc.message}")
    if not closed:
        raise NonTermination("展开后的 Morse 图没有闭合")
    return result


def hopf_band(sign: BandSign) -> MorseDiagram:
    direction = Direction.RIGHT if sign is BandSign.POSITIVE else Direction.LEFT
    initial = BoundaryConfiguration.from_lists([['H+'], ['H-']])
    mover = initial.components[1].labels[0]
    return MorseDiagram(handles=('H',), initial=initial, events=(Cross(mover=mover, direction=direction),))


def stabilize(d: MorseDiagram, sign: BandSign, p1: MarkedPoint, p2: MarkedPoint) -> MorseDiagram:
    """沿连接 p1、p2 的弧做稳定化（与 Hopf 带拼接，n = 2）。"""
    band = hopf_band(sign)
    return splice(
        d, make_star_set(d.initial, [p1, p2]),
        band, make_star_set(band.initial, parse_points(HOPF_POINTS)),
    )
