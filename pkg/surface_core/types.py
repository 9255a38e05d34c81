# surface_core/types.py

from enum import Enum
from typing import Annotated, Iterable, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, StringConstraints, model_validator

# 把手名：字母/数字开头，拼接时会加上 "1." / "2." 前缀
HandleId = Annotated[str, StringConstraints(pattern=r'^[A-Za-z0-9][A-Za-z0-9._]*$')]


class Sign(str, Enum):
    PLUS = '+'
    MINUS = '-'

    @property
    def opposite(self) -> "Sign":
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS


class EndpointLabel(BaseModel):
    """余核端点：A+ 为有向余核 A* 的终点，A- 为起点。"""
    model_config = ConfigDict(frozen=True)

    handle: HandleId
    sign: Sign

    @property
    def partner(self) -> "EndpointLabel":
        return EndpointLabel(handle=self.handle, sign=self.sign.opposite)

    @classmethod
    def parse(cls, token: str) -> "EndpointLabel":
        token = token.strip().replace('−', '-')
        if len(token) < 2 or token[-1] not in '+-':
            raise ValueError(f"无法识别的端点标签 '{token}'")
        return cls(handle=token[:-1], sign=Sign(token[-1]))

    def __str__(self) -> str:
        return f"{self.handle}{self.sign.value}"


def as_label(value: "EndpointLabel | str") -> EndpointLabel:
    return value if isinstance(value, EndpointLabel) else EndpointLabel.parse(value)


class BoundaryComponent(BaseModel):
    model_config = ConfigDict(frozen=True)

    component_id: int = Field(gt=0)
    # 从基点之后开始，沿边界正方向读取
    labels: tuple[EndpointLabel, ...] = ()


class BoundaryConfiguration(BaseModel):
    """边界配置：每个边界分支一个带基点的有序标签列表。"""
    model_config = ConfigDict(frozen=True)

    components: tuple[BoundaryComponent, ...]

    @classmethod
    def from_lists(
        cls,
        lists: Sequence[Sequence["EndpointLabel | str"]],
        component_ids: Optional[Sequence[int]] = None,
    ) -> "BoundaryConfiguration":
        ids = list(component_ids) if component_ids is not None else list(range(1, len(lists) + 1))
        return cls(components=tuple(
            BoundaryComponent(component_id=cid, labels=tuple(as_label(x) for x in labels))
            for cid, labels in zip(ids, lists)
        ))

    @property
    def component_ids(self) -> list[int]:
        return [c.component_id for c in self.components]

    def as_lists(self) -> list[list[EndpointLabel]]:
        return [list(c.labels) for c in self.components]

    def with_lists(self, lists: Iterable[Iterable[EndpointLabel]]) -> "BoundaryConfiguration":
        return BoundaryConfiguration(components=tuple(
            BoundaryComponent(component_id=c.component_id, labels=tuple(labels))
            for c, labels in zip(self.components, lists)
        ))

    def labels(self) -> list[EndpointLabel]:
        return [label for c in self.components for label in c.labels]

    def locate(self, label: EndpointLabel) -> Optional[tuple[int, int]]:
        for ci, component in enumerate(self.components):
            if label in component.labels:
                return ci, component.labels.index(label)
        return None

    def __str__(self) -> str:
        return ' '.join('[' + ' '.join(str(x) for x in c.labels) + ']' for c in self.components)


class SurfaceType(BaseModel):
    model_config = ConfigDict(frozen=True)

    genus: int = Field(ge=0)
    boundary_count: int = Field(gt=0)
    handle_count: int = Field(ge=0)

    @model_validator(mode='after')
    def _euler_characteristic(self) -> "SurfaceType":
        if 1 - self.handle_count != 2 - 2 * self.genus - self.boundary_count:
            raise ValueError("欧拉示性数不一致")
        return self

    @property
    def euler_characteristic(self) -> int:
        return 1 - self.handle_count

    def as_tuple(self) -> tuple[int, int, int]:
        return self.genus, self.boundary_count, self.handle_count


class CutTrace(BaseModel):
    """cut_to_disc 的记录：每切掉一个把手后的圆周集合。"""
    model_config = ConfigDict(frozen=True)

    handles: tuple[str, ...]
    steps: tuple[tuple[tuple[EndpointLabel, ...], ...], ...]
    realizable: bool
