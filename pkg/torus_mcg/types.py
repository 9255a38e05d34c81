# torus_mcg/types.py

from enum import Enum
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from diagram.types import Cross, DiagramEvent, Direction, Slide
from surface_core.types import HandleId

# 2x2 整数矩阵，按行存储；列向量约定，基为 (A, B)
Matrix = tuple[tuple[int, int], tuple[int, int]]
Vector = tuple[int, int]


class Curve(str, Enum):
    A = 'A'
    B = 'B'
    # 平行于边界的曲线
    C = 'C'


class TwistGen(BaseModel):
    model_config = ConfigDict(frozen=True)

    curve: Curve
    power: int

    @field_validator('power')
    @classmethod
    def _nonzero(cls, value: int) -> int:
        if value == 0:
            raise ValueError("Dehn 扭转的幂次不能为 0")
        return value

    def __str__(self) -> str:
        return self.curve.value if self.power == 1 else f"{self.curve.value}^{self.power}"


class TwistWord(BaseModel):
    """gens[0] 是最左边的因子；复合时最右边的先作用。"""
    model_config = ConfigDict(frozen=True)

    gens: tuple[TwistGen, ...] = ()

    @classmethod
    def of(cls, *pairs: tuple[str, int]) -> "TwistWord":
        return cls(gens=tuple(TwistGen(curve=Curve(c), power=p) for c, p in pairs))

    def inverse(self) -> "TwistWord":
        return TwistWord(gens=tuple(TwistGen(curve=g.curve, power=-g.power) for g in reversed(self.gens)))

    def __add__(self, other: "TwistWord") -> "TwistWord":
        return TwistWord(gens=self.gens + other.gens)

    def __str__(self) -> str:
        return ' '.join(str(g) for g in self.gens) if self.gens else '1'


def _det(m: Matrix) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


class MappingClassInvariant(BaseModel):
    """(H_1 上的作用矩阵, 指数和)，对一孔环面映射类是完全不变量。"""
    model_config = ConfigDict(frozen=True)

    matrix: Matrix
    exponent_sum: int

    @model_validator(mode='after')
    def _unimodular(self) -> "MappingClassInvariant":
        if _det(self.matrix) != 1:
            raise ValueError("矩阵行列式必须为 1")
        return self


class CoreState(BaseModel):
    """当前两条核心曲线在固定基 (A, B) 下的同调类。"""
    model_config = ConfigDict(frozen=True)

    a: Vector
    b: Vector

    @model_validator(mode='after')
    def _paired(self) -> "CoreState":
        if self.a[0] * self.b[1] - self.a[1] * self.b[0] != 1:
            raise ValueError("核心曲线的交数必须为 +1")
        return self


class Monodromy(BaseModel):
    model_config = ConfigDict(frozen=True)

    invariant: MappingClassInvariant
    factorization: TwistWord


class EvolvingTwist(BaseModel):
    model_config = ConfigDict(frozen=True)

    core: Vector
    sign: int = Field(ge=-1, le=1)


class EvolvingFactorization(BaseModel):
    """按滑动顺序的演化核心扭转，以及逆序的固定核心因子分解。"""
    model_config = ConfigDict(frozen=True)

    evolving: tuple[EvolvingTwist, ...]
    fixed: TwistWord


class EnhancedMove(BaseModel):
    """保持边界配置的增强移动：一次弧滑动，前后可能带一次越过基点。"""
    model_config = ConfigDict(frozen=True)

    handle: HandleId
    direction: Direction
    events: tuple[DiagramEvent, ...]

    @property
    def preferred(self) -> bool:
        return len(self.events) == 1

    @property
    def slide(self) -> Slide:
        return next(e for e in self.events if isinstance(e, Slide))


class MoveId(str, Enum):
    M1_INSERT = 'M1+'
    M1_DELETE = 'M1-'
    M2 = 'M2'
    M3 = 'M3'
    M4_EXPAND = 'M4+'
    M4_CONTRACT = 'M4-'


class MoveStep(BaseModel):
    model_config = ConfigDict(frozen=True)

    move: MoveId
    site: int = Field(ge=0)
    # 仅 M1 插入需要
    event: Optional[DiagramEvent] = None

    def __str__(self) -> str:
        suffix = f" [{self.event}]" if self.event is not None else ''
        return f"{self.move.value}@{self.site}{suffix}"


Event = Union[Slide, Cross]


class EquivalenceMode(str, Enum):
    STRICT = 'strict'
    CONJUGACY = 'conjugacy'
