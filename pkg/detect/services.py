# detect/services.py
"""
通过左转把手给出过扭（overtwisted）证书。
Unknown 只表示没有找到证书，不表示紧致。
"""

import logging
from typing import Optional, Union

from core.exceptions import NonClosedInput, NotTorusPage
from diagram.services import run_diagram
from diagram.types import Direction, MorseDiagram
from surface_core.types import Sign

from .types import LeftVeeringWitness, OvertwistedCertified, Unknown

logger = logging.getLogger(__name__)


def _require_closed(d: MorseDiagram) -> None:
    if not run_diagram(d).closed:
        raise NonClosedInput("检测只适用于闭合的 Morse 图")


def find_left_veering(d: MorseDiagram) -> Optional[LeftVeeringWitness]:
    _require_closed(d)
    for handle in d.handles:
        moves = {Sign.PLUS: [], Sign.MINUS: []}
        for index, event in enumerate(d.events):
            if event.mover.handle == handle:
                moves[event.mover.sign].append((index, event.direction))
        for vertical, moving in ((Sign.PLUS, Sign.MINUS), (Sign.MINUS, Sign.PLUS)):
            if moves[vertical] or not moves[moving]:
                continue
            if all(direction is Direction.LEFT for _, direction in moves[moving]):
                return LeftVeeringWitness(
                    handle=handle,
                    vertical_end=vertical,
                    moving_end=moving,
                    event_indices=tuple(i for i, _ in moves[moving]),
                )
    return None


def ot_verdict(d: MorseDiagram, search_depth: int = 0) -> Union[OvertwistedCertified, Unknown]:
    """
    先直接检测左转把手；一孔环面页面上再在 Morse 移动的改写空间中做广度优先搜索。
    """
    witness = find_left_veering(d)
    if witness is not None:
        return OvertwistedCertified(witness=witness)
    if search_depth <= 0:
        return Unknown()

    # 延迟导入：torus_mcg.moves 依赖本模块
    from torus_mcg.moves import certificate_search
    from torus_mcg.services import check_torus_page

    try:
        check_torus_page(d)
    except NotTorusPage:
        logger.debug("不是一孔环面页面，跳过改写搜索")
        return Unknown()
    found = certificate_search(d, search_depth)
    if found is None:
        return Unknown()
    return OvertwistedCertified(witness=found.witness, move_path=found.path)
