# torus_mcg/moves.py
"""
一孔环面 Morse 图上的 Morse 移动，以及寻找左转把手的改写搜索。

- M1：插入 / 删除一对相邻的互逆事件
- M2：把一个增强移动换成同一把手、同一方向、另一端点的增强移动
- M3：辫关系，X Y X -> Y X Y（三个同向增强移动）
- M4：四次同向越过基点 <-> 十二个交替的首选滑动（链关系）
每个移动都保持单值化不变量，输出仍然闭合。
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from django.conf import settings
from pydantic import BaseModel, ConfigDict

from core.exceptions import MorseError, PatternMismatch
from detect.services import find_left_veering
from detect.types import LeftVeeringWitness
from diagram.services import apply_event, applicable_events, inverse_event, run_diagram
from diagram.types import Direction, MorseDiagram
from surface_core.types import BoundaryConfiguration

from .services import check_torus_page, enhanced_moves, full_rotation, preferred_move
from .types import EnhancedMove, Event, MoveId, MoveStep

logger = logging.getLogger(__name__)


class SearchResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    path: tuple[MoveStep, ...]
    witness: LeftVeeringWitness


@lru_cache(maxsize=4096)
def _enhanced(cfg: BoundaryConfiguration) -> tuple[EnhancedMove, ...]:
    return tuple(enhanced_moves(cfg))


@lru_cache(maxsize=4096)
def _preferred(cfg: BoundaryConfiguration, handle: str, direction: Direction) -> tuple[Event, ...]:
    return preferred_move(cfg, handle, direction).events


@dataclass
class _Context:
    diagram: MorseDiagram
    configurations: tuple[BoundaryConfiguration, ...]
    handles: tuple[str, str]

    @classmethod
    def of(cls, d: MorseDiagram) -> "_Context":
        handles = check_torus_page(d)
        return cls(d, run_diagram(d).configurations, handles)

    @property
    def events(self) -> tuple[Event, ...]:
        return self.diagram.events

    def blocks_at(self, site: int) -> list[EnhancedMove]:
        if site >= len(self.events):
            return []
        return [
            m for m in _enhanced(self.configurations[site])
            if self.events[site:site + len(m.events)] == m.events
        ]

    def chain(self, site: int, direction: Direction) -> tuple[Event, ...]:
        cfg = self.configurations[site]
        a, b = self.handles
        return tuple(e for k in range(12) for e in _preferred(cfg, (a, b)[k % 2], direction))

    def replace(self, start: int, end: int, new: tuple[Event, ...]) -> tuple[Event, ...]:
        return self.events[:start] + new + self.events[end:]


def _m1_insert(ctx: _Context, site: int, event: Optional[Event]) -> Optional[tuple[Event, ...]]:
    if event is None or site > len(ctx.events):
        return None
    try:
        apply_event(ctx.configurations[site], event)
    except MorseError:
        return None
    return ctx.replace(site, site, (event, inverse_event(event)))


def _m1_delete(ctx: _Context, site: int, event: Optional[Event]) -> Optional[tuple[Event, ...]]:
    if site + 1 < len(ctx.events) and ctx.events[site + 1] == inverse_event(ctx.events[site]):
        return ctx.replace(site, site + 2, ())
    return None


def _m2(ctx: _Context, site: int, event: Optional[Event]) -> Optional[tuple[Event, ...]]:
    cfg = ctx.configurations[site] if site < len(ctx.configurations) else None
    for block in ctx.blocks_at(site):
        for partner in _enhanced(cfg):
            if (partner.handle == block.handle and partner.direction is block.direction
                    and partner.slide.mover != block.slide.mover):
                return ctx.replace(site, site + len(block.events), partner.events)
    return None


def _m3(ctx: _Context, site: int, event: Optional[Event]) -> Optional[tuple[Event, ...]]:
    for x in ctx.blocks_at(site):
        mid = site + len(x.events)
        for y in ctx.blocks_at(mid):
            end = mid + len(y.events)
            for z in ctx.blocks_at(end):
                if (z.handle == x.handle != y.handle
                        and x.direction is y.direction is z.direction):
                    cfg = ctx.configurations[site]
                    new = (_preferred(cfg, y.handle, x.direction)
                           + _preferred(cfg, x.handle, x.direction)
                           + _preferred(cfg, y.handle, x.direction))
                    return ctx.replace(site, end + len(z.events), new)
    return None


def _m4_expand(ctx: _Context, site: int, event: Optional[Event]) -> Optional[tuple[Event, ...]]:
    window = ctx.events[site:site + 4]
    if len(window) < 4 or any(e.kind != 'cross' for e in window):
        return None
    direction = window[0].direction
    if any(e.direction is not direction for e in window):
        return None
    return ctx.replace(site, site + 4, ctx.chain(site, direction))


def _m4_contract(ctx: _Context, site: int, event: Optional[Event]) -> Optional[tuple[Event, ...]]:
    if site >= len(ctx.events):
        return None
    for direction in (Direction.LEFT, Direction.RIGHT):
        chain = ctx.chain(site, direction)
        if ctx.events[site:site + len(chain)] == chain:
            rotation = tuple(full_rotation(ctx.configurations[site], direction))
            return ctx.replace(site, site + len(chain), rotation)
    return None


_MATCHERS = {
    MoveId.M1_INSERT: _m1_insert,
    MoveId.M1_DELETE: _m1_delete,
    MoveId.M2: _m2,
    MoveId.M3: _m3,
    MoveId.M4_EXPAND: _m4_expand,
    MoveId.M4_CONTRACT: _m4_contract,
}


def _rewrites(ctx: _Context, include_insertions: bool) -> Iterator[tuple[MoveStep, tuple[Event, ...]]]:
    for site in range(len(ctx.events) + 1):
        if include_insertions:
            for event in applicable_events(ctx.configurations[site]):
                yield MoveStep(move=MoveId.M1_INSERT, site=site, event=event), _m1_insert(ctx, site, event)
        for move, matcher in _MATCHERS.items():
            if move is MoveId.M1_INSERT:
                continue
            new = matcher(ctx, site, None)
            if new is not None:
                yield MoveStep(move=move, site=site), new


def enumerate_moves(d: MorseDiagram, include_insertions: bool = False) -> list[MoveStep]:
    return [step for step, _ in _rewrites(_Context.of(d), include_insertions)]


def apply_morse_move(d: MorseDiagram, move: MoveId, site: int, event: Optional[Event] = None) -> MorseDiagram:
    ctx = _Context.of(d)
    if site < 0 or site > len(d.events):
        raise PatternMismatch(f"位置 {site} 超出范围")
    new = _MATCHERS[move](ctx, site, event)
    if new is None:
        raise PatternMismatch(f"{move.value} 在位置 {site} 处不匹配")
    return d.with_events(new)


def certificate_search(d: MorseDiagram, depth: int, max_nodes: Optional[int] = None) -> Optional[SearchResult]:
    """
    在 Morse 移动（不含 M1 插入）生成的改写空间中做广度优先搜索，
    返回第一个带左转把手的图及其移动路径；depth 层内找不到时返回 None。
    """
    witness = find_left_veering(d)
    if witness is not None:
        return SearchResult(path=(), witness=witness)

    limit = max_nodes if max_nodes is not None else getattr(settings, 'MORSE_SEARCH_MAX_NODES', 20000)
    visited = {d.events}
    frontier: deque[tuple[MorseDiagram, tuple[MoveStep, ...]]] = deque([(d, ())])
    while frontier:
        node, path = frontier.popleft()
        if len(path) >= depth:
            continue
        for step, events in _rewrites(_Context.of(node), include_insertions=False):
            if events in visited:
                continue
            visited.add(events)
            if len(visited) > limit:
                logger.warning("改写搜索达到节点上限 %d，停止", limit)
                return None
            child = node.with_events(events)
            witness = find_left_veering(child)
            if witness is not None:
                logger.debug("在深度 %d 找到左转把手 %s", len(path) + 1, witness.handle)
                return SearchResult(path=path + (step,), witness=witness)
            frontier.append((child, path + (step,)))
        logger.debug("搜索队列长度 %d，已访问 %d", len(frontier), len(visited))
    return None
