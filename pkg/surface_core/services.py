# surface_core/services.py
"""
边界配置的校验、切割成圆盘（cut-to-disc）以及曲面类型的恢复。
所有函数都是纯函数，输入输出均为不可变的值对象。
"""

import logging
from typing import Hashable, Sequence

from core.exceptions import DuplicateComponent, DuplicateLabel, MissingPartner, NotRealizable

from .types import BoundaryConfiguration, CutTrace, EndpointLabel, Sign, SurfaceType

logger = logging.getLogger(__name__)

# 圆周按循环字处理；元素可以是 EndpointLabel，也可以是被跟踪的标记点
Circle = tuple[Hashable, ...]


def validate_configuration(cfg: BoundaryConfiguration) -> None:
    """
    校验边界配置：
    - 分支编号严格递增；
    - 任何标签不重复；
    - 每个把手恰好有一个 + 端点和一个 - 端点。
    """
    previous = 0
    for component in cfg.components:
        if component.component_id <= previous:
            raise DuplicateComponent(component.component_id)
        previous = component.component_id

    seen: set[EndpointLabel] = set()
    for label in cfg.labels():
        if label in seen:
            raise DuplicateLabel(label)
        seen.add(label)

    for handle in handles_of(cfg):
        for sign in Sign:
            if EndpointLabel(handle=handle, sign=sign) not in seen:
                raise MissingPartner(handle)


def handles_of(cfg: BoundaryConfiguration) -> list[str]:
    """按首次出现的顺序返回把手名。"""
    handles: list[str] = []
    for label in cfg.labels():
        if label.handle not in handles:
            handles.append(label.handle)
    return handles


def _locate(circles: Sequence[Circle], item: Hashable) -> tuple[int, int]:
    for ci, circle in enumerate(circles):
        if item in circle:
            return ci, circle.index(item)
    raise NotRealizable(f"切割过程中找不到 {item}")


def cut_handle(circles: Sequence[Circle], handle: str) -> list[Circle]:
    """
    沿一个把手的余核切开。
    X+ 与 X- 在同一圆周 (X+ α X- β) 上时分裂为 (α)、(β)；
    在不同圆周 (X+ α)、(X- β) 上时合并为 (α β)。
    """
    plus = EndpointLabel(handle=handle, sign=Sign.PLUS)
    minus = plus.partner
    ci, i = _locate(circles, plus)
    cj, j = _locate(circles, minus)

    result = list(circles)
    if ci == cj:
        word = circles[ci][i:] + circles[ci][:i]
        k = word.index(minus)
        result[ci:ci + 1] = [word[1:k], word[k + 1:]]
    else:
        alpha = (circles[ci][i:] + circles[ci][:i])[1:]
        beta = (circles[cj][j:] + circles[cj][:j])[1:]
        result[ci] = alpha + beta
        del result[cj]
    return result


def cut_circles(circles: Sequence[Circle], handles: Sequence[str]) -> list[list[Circle]]:
    """依次切掉 handles 中的把手，返回每一步之后的圆周集合。"""
    steps: list[list[Circle]] = []
    current = list(circles)
    for handle in handles:
        current = cut_handle(current, handle)
        logger.debug("切掉把手 %s 后剩余 %d 个圆周", handle, len(current))
        steps.append(current)
    return steps


def _is_single_disc(circles: Sequence[Circle]) -> bool:
    return len(circles) == 1 and not any(isinstance(x, EndpointLabel) for x in circles[0])


def cut_to_disc(cfg: BoundaryConfiguration) -> CutTrace:
    validate_configuration(cfg)
    handles = handles_of(cfg)
    start = [tuple(c.labels) for c in cfg.components]
    steps = cut_circles(start, handles)
    final = steps[-1] if steps else start
    return CutTrace(
        handles=tuple(handles),
        steps=tuple(tuple(step) for step in steps),
        realizable=_is_single_disc(final),
    )


def is_realizable(cfg: BoundaryConfiguration) -> bool:
    return cut_to_disc(cfg).realizable


def surface_type(cfg: BoundaryConfiguration) -> SurfaceType:
    """由边界配置恢复曲面类型 (亏格, 边界数, 把手数)。"""
    trace = cut_to_disc(cfg)
    if not trace.realizable:
        raise NotRealizable("切割后没有得到唯一的圆盘，该边界配置不可实现")

    n = len(trace.handles)
    b = len(cfg.components)
    twice_genus = 1 + n - b
    if twice_genus < 0 or twice_genus % 2:
        raise NotRealizable(f"亏格 (1 + {n} - {b})/2 不是非负整数")
    return SurfaceType(genus=twice_genus // 2, boundary_count=b, handle_count=n)
