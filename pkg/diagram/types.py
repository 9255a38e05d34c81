# diagram/types.py

from enum import Enum
from typing import Annotated, Iterable, Literal, Union

from pydantic import BaseModel, ConfigDict, Field

from surface_core.types import BoundaryConfiguration, EndpointLabel, HandleId, Sign


class Direction(str, Enum):
    # right = 边界正方向（平面图中 x 增大）
    LEFT = 'left'
    RIGHT = 'right'

    @property
    def opposite(self) -> "Direction":
        return Direction.RIGHT if self is Direction.LEFT else Direction.LEFT


class Slide(BaseModel):
    """弧滑动：mover 越过相邻的 entry，从 entry 的配对端点另一侧出来（瞬移）。"""
    model_config = ConfigDict(frozen=True)

    kind: Literal['slide'] = 'slide'
    mover: EndpointLabel
    direction: Direction
    entry: EndpointLabel

    def __str__(self) -> str:
        return f"slide {self.mover} {self.direction.value} over {self.entry}"


class Cross(BaseModel):
    """端点越过基点，从列表一端移到另一端。"""
    model_config = ConfigDict(frozen=True)

    kind: Literal['cross'] = 'cross'
    mover: EndpointLabel
    direction: Direction

    def __str__(self) -> str:
        return f"cross {self.mover} {self.direction.value}"


DiagramEvent = Annotated[Union[Slide, Cross], Field(discriminator='kind')]


class MorseDiagram(BaseModel):
    model_config = ConfigDict(frozen=True)

    handles: tuple[HandleId, ...]
    initial: BoundaryConfiguration
    # 第 0 个事件位于图的最下方
    events: tuple[DiagramEvent, ...] = ()

    def with_events(self, events: Iterable[Union[Slide, Cross]]) -> "MorseDiagram":
        return MorseDiagram(handles=self.handles, initial=self.initial, events=tuple(events))


class DiagramRun(BaseModel):
    model_config = ConfigDict(frozen=True)

    # configurations[0] 是初始配置，configurations[i + 1] 是第 i 个事件之后的配置
    configurations: tuple[BoundaryConfiguration, ...]
    closed: bool

    @property
    def final(self) -> BoundaryConfiguration:
        return self.configurations[-1]


class HandleProfile(BaseModel):
    model_config = ConfigDict(frozen=True)

    plus_moves: tuple[Direction, ...] = ()
    minus_moves: tuple[Direction, ...] = ()

    def moves(self, sign: Sign) -> tuple[Direction, ...]:
        return self.plus_moves if sign is Sign.PLUS else self.minus_moves
