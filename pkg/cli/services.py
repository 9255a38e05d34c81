# cli/services.py
"""
命令行各子命令的服务层：读入文件、调用库操作、把结果整理成 ServiceResult。
data 的键按输出顺序排列，每个键输出为一行 `key: value`。
"""

import logging
from functools import wraps
from pathlib import Path
from typing import Callable, Optional

from core.exceptions import MorseError, ParseError
from core.types import CODE_INTERNAL, CODE_OK, ServiceResult
from detect.services import ot_verdict
from detect.types import OvertwistedCertified
from diagram.serializers import parse_diagram, serialize_diagram
from diagram.services import run_diagram
from diagram.types import MorseDiagram
from splice.services import make_star_set, parse_points, splice, stabilize
from splice.types import BandSign, MarkedPoint
from surface_core.services import surface_type
from torus_mcg.services import (
    diagram_monodromy, format_word, parse_word, same_open_book, standardize, synthesize,
)
from torus_mcg.types import EquivalenceMode

from .render import RenderFormat, render

logger = logging.getLogger(__name__)


def _service(func: Callable[..., ServiceResult]) -> Callable[..., ServiceResult]:
    @wraps(func)
    def wrapper(*args, **kwargs) -> ServiceResult:
        try:
            return func(*args, **kwargs)
        except MorseError as e:
            logger.debug("%s 失败: %s", func.__name__, e.message)
            return {"code": e.code, "message": e.message, "data": e.to_data()}
        except Exception as e:
            logger.exception("%s 发生未预期的错误", func.__name__)
            return {"code": CODE_INTERNAL, "message": f"内部错误: {e}", "data": None}
    return wrapper


def _load(path: str) -> MorseDiagram:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise ParseError(None, f"无法读取 {path}: {e.strerror}")
    return parse_diagram(text)


def _save(d: MorseDiagram, out: str) -> None:
    Path(out).write_text(serialize_diagram(d), encoding='utf-8')


def _point(text: str) -> MarkedPoint:
    points = parse_points(text)
    if len(points) != 1:
        raise ParseError(None, f"需要恰好一个标记点，收到 '{text}'")
    return points[0]


def _summary(d: MorseDiagram) -> dict:
    shape = surface_type(d.initial)
    return {
        "handles": len(d.handles),
        "boundary": shape.boundary_count,
        "genus": shape.genus,
        "events": len(d.events),
        "closed": run_diagram(d).closed,
    }


@_service
def info(path: str) -> ServiceResult:
    d = _load(path)
    data = _summary(d)
    message = f"亏格 {data['genus']}、{data['boundary']} 个边界分支的页面，共 {data['events']} 个事件。"
    return {"code": CODE_OK, "message": message, "data": data}


@_service
def splice_files(path: str, other: str, points1: str, points2: str, out: str) -> ServiceResult:
    d1, d2 = _load(path), _load(other)
    s1 = make_star_set(d1.initial, parse_points(points1))
    s2 = make_star_set(d2.initial, parse_points(points2))
    result = splice(d1, s1, d2, s2)
    _save(result, out)
    data = _summary(result)
    data["out"] = out
    return {"code": CODE_OK, "message": f"拼接完成（n = {s1.n}），已写入 {out}。", "data": data}


@_service
def stabilize_file(path: str, sign: str, p1: str, p2: str, out: str) -> ServiceResult:
    result = stabilize(_load(path), BandSign(sign), _point(p1), _point(p2))
    _save(result, out)
    data = _summary(result)
    data["out"] = out
    return {"code": CODE_OK, "message": f"稳定化完成，已写入 {out}。", "data": data}


@_service
def detect_ot(path: str, search_depth: int = 0) -> ServiceResult:
    verdict = ot_verdict(_load(path), search_depth)
    if not isinstance(verdict, OvertwistedCertified):
        data = {"verdict": verdict.kind, "search_depth": search_depth}
        return {"code": CODE_OK, "message": "没有找到左转把手（这并不说明接触结构是紧的）。", "data": data}
    w = verdict.witness
    data = {
        "verdict": verdict.kind,
        "handle": w.handle,
        "vertical_end": f"{w.handle}{w.vertical_end.value}",
        "moving_end": f"{w.handle}{w.moving_end.value}",
        "event_indices": ','.join(str(i) for i in w.event_indices),
        "moves": ' '.join(str(step) for step in verdict.move_path) or '-',
    }
    return {"code": CODE_OK, "message": f"把手 {w.handle} 是左转的，接触结构是过扭的。", "data": data}


@_service
def monodromy(path: str) -> ServiceResult:
    result = diagram_monodromy(_load(path))
    (a, b), (c, d) = result.invariant.matrix
    data = {
        "matrix_row1": f"{a} {b}",
        "matrix_row2": f"{c} {d}",
        "exponent": result.invariant.exponent_sum,
        "factorization": format_word(result.factorization),
        "trace": a + d,
    }
    return {"code": CODE_OK, "message": "单值化按复合顺序书写，最右边的扭转最先作用。", "data": data}


@_service
def equiv(path: str, other: str, mode: str = EquivalenceMode.CONJUGACY.value) -> ServiceResult:
    equivalent = same_open_book(_load(path), _load(other), EquivalenceMode(mode))
    data = {"equivalent": equivalent, "mode": mode}
    message = "两个 Morse 图给出同一个开书。" if equivalent else "两个 Morse 图的单值化不等价。"
    return {"code": CODE_OK, "message": message, "data": data}


@_service
def synth(word: str, out: str) -> ServiceResult:
    w = parse_word(word)
    d = synthesize(w)
    _save(d, out)
    data = {"word": format_word(w), "events": len(d.events), "out": out}
    return {"code": CODE_OK, "message": f"已合成 Morse 图并写入 {out}。", "data": data}


@_service
def render_file(path: str, fmt: str = RenderFormat.ASCII.value, out: Optional[str] = None) -> ServiceResult:
    text = render(_load(path), RenderFormat(fmt))
    if out and out != '-':
        Path(out).write_text(text, encoding='utf-8')
        return {"code": CODE_OK, "message": f"已渲染到 {out}。", "data": {"format": fmt, "out": out}}
    return {"code": CODE_OK, "message": "", "data": {"rendered": text}}


@_service
def standardize_file(path: str, out: str) -> ServiceResult:
    result = standardize(_load(path))
    _save(result, out)
    data = {"events": len(result.events), "out": out}
    return {"code": CODE_OK, "message": f"已写入只含首选滑动与整圈旋转的 Morse 图 {out}。", "data": data}


COMMANDS: dict[str, Callable[..., ServiceResult]] = {
    "info": info,
    "splice": splice_files,
    "stabilize": stabilize_file,
    "detect-ot": detect_ot,
    "monodromy": monodromy,
    "equiv": equiv,
    "synth": synth,
    "render": render_file,
    "standardize": standardize_file,
}
