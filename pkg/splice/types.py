# splice/types.py

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class MarkedPoint(BaseModel):
    """边界上的标记点。gap g 位于列表第 g-1 与第 g 个标签之间，gap 0 紧跟基点。"""
    model_config = ConfigDict(frozen=True)

    component: int = Field(gt=0)
    gap: int = Field(ge=0)
    sub_index: int = Field(default=0, ge=0)

    def __str__(self) -> str:
        return f"{self.component}:{self.gap}.{self.sub_index}"


class StarSet(BaseModel):
    """
    按星形顺序编号的标记点。
    sigma[j] 是区间 r_j 右端点的编号（编号从 0 开始）。
    """
    model_config = ConfigDict(frozen=True)

    points: tuple[MarkedPoint, ...]
    sigma: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.points)


class BandSign(str, Enum):
    POSITIVE = 'pos'
    NEGATIVE = 'neg'


class StarOrder(BaseModel):
    """切割后唯一圆周上标记点的循环顺序（从编号 0 开始旋转）。"""
    model_config = ConfigDict(frozen=True)

    order: tuple[int, ...]
    starlike: bool
