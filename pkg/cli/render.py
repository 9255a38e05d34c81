# cli/render.py
"""
Morse 图的 ASCII / SVG 渲染，纯函数：相同的图得到逐字节相同的输出。

- 每个边界配置占一行，相邻两行之间是一个事件带
- 槽位从左到右：每个边界分支先是基点（虚线），再是它的标签
- Slide 画成撞进 entry 的轨迹、再从 entry 的配对端点冒出
- Cross 画成从一侧基点离开、从另一侧回到本分支
"""

from enum import Enum

import drawsvg as draw
from django.conf import settings

from core.exceptions import MorseError, NonRunnable
from diagram.services import run_diagram
from diagram.types import Cross, Direction, MorseDiagram, Slide
from surface_core.types import BoundaryConfiguration, EndpointLabel

SLOT = 48
BAND = 60
MARGIN = 36
BASEPOINT_COLOUR = '#888888'


class RenderFormat(str, Enum):
    ASCII = 'ascii'
    SVG = 'svg'


def _configurations(d: MorseDiagram) -> tuple[BoundaryConfiguration, ...]:
    try:
        return run_diagram(d).configurations
    except MorseError as exc:
        raise NonRunnable(f"Morse 图无法执行，不能渲染: {exc.message}")


class _Row:
    """一个边界配置的槽位坐标（以槽位为单位）。"""

    def __init__(self, cfg: BoundaryConfiguration):
        self.cfg = cfg
        self.x: dict[EndpointLabel, float] = {}
        # 每个分支的 (基点列, 右边缘)
        self.edges: list[tuple[float, float]] = []
        column = 0
        for component in cfg.components:
            left = column
            for label in component.labels:
                column += 1
                self.x[label] = column
            self.edges.append((left, column + 0.5))
            column += 1

    def component_of(self, label: EndpointLabel) -> int:
        return self.cfg.locate(label)[0]


def render(d: MorseDiagram, fmt: RenderFormat = RenderFormat.ASCII) -> str:
    configurations = _configurations(d)
    if RenderFormat(fmt) is RenderFormat.SVG:
        return _render_svg(d, configurations)
    return _render_ascii(d, configurations)


# --- ASCII ---

def _ascii_row(cfg: BoundaryConfiguration, width: int, marks: dict) -> str:
    cells: list[str] = []
    for ci, component in enumerate(cfg.components):
        cells.append(marks.get(ci, '|'))
        cells.extend(marks.get(label, str(label)) for label in component.labels)
    return ' '.join(cell.ljust(width) for cell in cells).rstrip()


def _marks(event) -> dict:
    arrow = '<' if event.direction is Direction.LEFT else '>'
    marks: dict = {event.mover: arrow}
    if isinstance(event, Slide):
        marks[event.entry] = 'x'
        marks[event.entry.partner] = 'o'
    return marks


def _render_ascii(d: MorseDiagram, configurations) -> str:
    width = max((len(str(label)) for label in d.initial.labels()), default=2)
    lines = [f"handles: {' '.join(d.handles)}"]
    for index, event in enumerate(d.events):
        cfg = configurations[index]
        lines.append(f"{index:>4}  {_ascii_row(cfg, width, {})}")
        marks = _marks(event)
        if isinstance(event, Cross):
            marks[cfg.locate(event.mover)[0]] = '*'
        lines.append(f"{'':>4}  {_ascii_row(cfg, width, marks)}    {event}")
    lines.append(f"{len(d.events):>4}  {_ascii_row(configurations[-1], width, {})}")
    return '\n'.join(lines) + '\n'


# --- SVG ---

def _colours(d: MorseDiagram) -> dict[str, str]:
    palette = settings.MORSE_RENDER_PALETTE
    return {handle: palette[i % len(palette)] for i, handle in enumerate(d.handles)}


def _px(column: float) -> float:
    return MARGIN + column * SLOT


def _y(row: int) -> float:
    return MARGIN + BAND / 2 + row * BAND


def _stroke(canvas: draw.Drawing, colour: str, points: list[tuple[float, float]]) -> None:
    path = draw.Path(stroke=colour, stroke_width=2, fill='none')
    (x0, y0), rest = points[0], points[1:]
    path.M(x0, y0)
    for x, y in rest:
        path.L(x, y)
    canvas.append(path)


def _dash(canvas: draw.Drawing, x0: float, y0: float, x1: float, y1: float) -> None:
    canvas.append(draw.Line(x0, y0, x1, y1, stroke=BASEPOINT_COLOUR, stroke_width=1, stroke_dasharray='4,4'))


def _band(canvas: draw.Drawing, colours: dict[str, str], index: int, event, before: _Row, after: _Row) -> None:
    top, bottom = _y(index), _y(index + 1)
    middle = (top + bottom) / 2
    for (left, _), (next_left, _) in zip(before.edges, after.edges):
        _dash(canvas, _px(left), top, _px(next_left), bottom)

    for label, x in before.x.items():
        colour = colours[label.handle]
        if label != event.mover:
            _stroke(canvas, colour, [(_px(x), top), (_px(after.x[label]), bottom)])
            continue
        if isinstance(event, Slide):
            hit = before.x[event.entry]
            emerge = before.x[event.entry.partner]
        else:
            left, right = before.edges[before.component_of(label)]
            hit, emerge = (left, right) if event.direction is Direction.LEFT else (right, left)
        _stroke(canvas, colour, [(_px(x), top), (_px(hit), middle)])
        _stroke(canvas, colour, [(_px(emerge), middle), (_px(after.x[label]), bottom)])


def _render_svg(d: MorseDiagram, configurations) -> str:
    rows = [_Row(cfg) for cfg in configurations]
    colours = _colours(d)
    columns = len(d.initial.labels()) + len(d.initial.components)
    width = 2 * MARGIN + columns * SLOT
    height = 2 * MARGIN + len(rows) * BAND
    canvas = draw.Drawing(width, height)

    first, last = rows[0], rows[-1]
    top, bottom = MARGIN, height - MARGIN
    # 没有事件时每条轨迹是一整条竖线
    lead = _y(0) if d.events else bottom
    for label, x in first.x.items():
        canvas.append(draw.Text(str(label), 12, _px(x), MARGIN - 8, text_anchor='middle', fill=colours[label.handle]))
        _stroke(canvas, colours[label.handle], [(_px(x), top), (_px(x), lead)])
    for left, _ in first.edges:
        _dash(canvas, _px(left), top, _px(left), lead)
    if not d.events:
        return canvas.as_svg()

    for index, event in enumerate(d.events):
        _band(canvas, colours, index, event, rows[index], rows[index + 1])

    end = _y(len(rows) - 1)
    for label, x in last.x.items():
        _stroke(canvas, colours[label.handle], [(_px(x), end), (_px(x), bottom)])
    for left, _ in last.edges:
        _dash(canvas, _px(left), end, _px(left), bottom)
    return canvas.as_svg()
