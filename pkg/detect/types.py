# detect/types.py

from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field

from surface_core.types import HandleId, Sign
from torus_mcg.types import MoveStep


class LeftVeeringWitness(BaseModel):
    """左转把手：vertical_end 从不移动，moving_end 至少移动一次且每次都向左。"""
    model_config = ConfigDict(frozen=True)

    handle: HandleId
    vertical_end: Sign
    moving_end: Sign
    # 事件下标从 0 开始
    event_indices: tuple[int, ...] = Field(min_length=1)


class OvertwistedCertified(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal['overtwisted'] = 'overtwisted'
    witness: LeftVeeringWitness
    move_path: tuple[MoveStep, ...] = ()


class Unknown(BaseModel):
    # 不代表紧致
    model_config = ConfigDict(frozen=True)

    kind: Literal['unknown'] = 'unknown'


Verdict = Annotated[Union[OvertwistedCertified, Unknown], Field(discriminator='kind')]
