# torus_mcg/services.py
"""
一孔环面页面的单值化（monodromy）计算：
扭转字、(矩阵, 指数和) 不变量、从 Morse 图读出因子分解、由扭转字合成 Morse 图、开书等价。

约定：
- 参考边界配置为 [B+ A+ B- A-]，A、B 按把手声明顺序指定；只接受它的旋转。
- 每个 Slide 贡献一个关于 mover 所在把手核心的扭转，向右为正、向左为负。
- 基点旋转累计为 frame，闭合时 frame 为 4 的倍数，贡献 τ_C^d，d = -frame/4。
"""

import logging
import re
from typing import Sequence

from core.exceptions import NonClosedInput, NotTorusPage, ParseError, PatternMismatch
from diagram.services import apply_event, run_diagram
from diagram.types import Cross, Direction, MorseDiagram, Slide
from surface_core.types import BoundaryConfiguration, EndpointLabel, Sign

from . import sl2z
from .types import (
    CoreState, Curve, EnhancedMove, EquivalenceMode, EvolvingFactorization, EvolvingTwist,
    MappingClassInvariant, Matrix, Monodromy, TwistGen, TwistWord,
)

logger = logging.getLogger(__name__)

_GENERATORS: dict[Curve, Matrix] = {
    Curve.A: ((1, 1), (0, 1)),
    Curve.B: ((1, 0), (-1, 1)),
    Curve.C: sl2z.IDENTITY,
}
_WEIGHT = {Curve.A: 1, Curve.B: 1, Curve.C: 12}


# --- 扭转字 ---

def generator_matrix(g: TwistGen) -> Matrix:
    return sl2z.power(_GENERATORS[g.curve], g.power)


def word_invariant(w: TwistWord) -> MappingClassInvariant:
    matrix = sl2z.IDENTITY
    exponent = 0
    for g in w.gens:
        matrix = sl2z.mul(matrix, generator_matrix(g))
        exponent += g.power * _WEIGHT[g.curve]
    return MappingClassInvariant(matrix=matrix, exponent_sum=exponent)


# 记号之间以空白或括号分隔，"AB" 这样粘连的写法不接受
_TOKEN = re.compile(r'\(|\)(?:\^[^\s()]*)?|[^\s()]+')
_GENERATOR = re.compile(r'[ABC](?:\^(?:-?\d+|-))?')
_GROUP_END = re.compile(r'\)(?:\^(?:-?\d+|-))?')


def _exponent(token: str) -> int:
    if '^' not in token:
        return 1
    text = token.split('^', 1)[1]
    return -1 if text == '-' else int(text)


def parse_word(text: str) -> TwistWord:
    """
    解析扭转字：以空白分隔的 A、B、C，可带后缀 ^k、^-1 或 ^-；
    支持 "(A B)^6" 这样的分组。空串或 "1" 表示恒等。
    """
    text = text.strip()
    if text in ('', '1'):
        return TwistWord()
    stack: list[list[TwistGen]] = [[]]
    for token in _TOKEN.findall(text):
        if token == '(':
            stack.append([])
        elif token.startswith(')'):
            if not _GROUP_END.fullmatch(token):
                raise ParseError(None, f"无法识别的分组幂次 '{token}'")
            if len(stack) == 1:
                raise ParseError(None, "括号不匹配")
            group = stack.pop()
            k = _exponent(token)
            if k == 0:
                raise ParseError(None, "分组的幂次不能为 0")
            if k < 0:
                group = list(TwistWord(gens=tuple(group)).inverse().gens)
            stack[-1].extend(group * abs(k))
        elif _GENERATOR.fullmatch(token):
            k = _exponent(token)
            if k == 0:
                raise ParseError(None, f"'{token}' 的幂次不能为 0")
            stack[-1].append(TwistGen(curve=Curve(token[0]), power=k))
        else:
            raise ParseError(None, f"无法识别的扭转 '{token}'")
    if len(stack) != 1:
        raise ParseError(None, "括号不匹配")
    return TwistWord(gens=tuple(stack[0]))


def format_word(w: TwistWord) -> str:
    return str(w)


def merge_adjacent(gens: Sequence[TwistGen]) -> TwistWord:
    """合并相邻的同一曲线扭转，去掉幂次为 0 的项。"""
    merged: list[TwistGen] = []
    for g in gens:
        if merged and merged[-1].curve is g.curve:
            total = merged.pop().power + g.power
            if total:
                merged.append(TwistGen(curve=g.curve, power=total))
        else:
            merged.append(g)
    return TwistWord(gens=tuple(merged))


# --- 一孔环面页面 ---

def _label(handle: str, sign: Sign) -> EndpointLabel:
    return EndpointLabel(handle=handle, sign=sign)


def reference_configuration(a: str = 'A', b: str = 'B') -> BoundaryConfiguration:
    return BoundaryConfiguration.from_lists([[
        _label(b, Sign.PLUS), _label(a, Sign.PLUS), _label(b, Sign.MINUS), _label(a, Sign.MINUS),
    ]])


def _rotations(row: Sequence[EndpointLabel]) -> list[list[EndpointLabel]]:
    return [list(row[i:]) + list(row[:i]) for i in range(len(row))]


def torus_configurations(a: str = 'A', b: str = 'B') -> list[BoundaryConfiguration]:
    """一孔环面的八个带基点配置：参考类的四个旋转，以及镜像类 [A+ B+ A- B-] 的四个旋转。"""
    reference = reference_configuration(a, b).components[0].labels
    mirror = [_label(a, Sign.PLUS), _label(b, Sign.PLUS), _label(a, Sign.MINUS), _label(b, Sign.MINUS)]
    return [BoundaryConfiguration.from_lists([row]) for row in _rotations(reference) + _rotations(mirror)]


def check_torus_page(d: MorseDiagram) -> tuple[str, str]:
    """返回 (A, B) 对应的把手名；不是参考类的一孔环面配置时抛出 NotTorusPage。"""
    if len(d.handles) != 2 or len(d.initial.components) != 1:
        raise NotTorusPage("页面不是一孔环面（需要恰好两个把手和一个边界分支）")
    a, b = d.handles
    row = list(d.initial.components[0].labels)
    if row not in _rotations(reference_configuration(a, b).components[0].labels):
        raise NotTorusPage(f"边界配置 {d.initial} 不是参考配置 [{b}+ {a}+ {b}- {a}-] 的旋转")
    return a, b


def _frame_shift(before: BoundaryConfiguration, after: BoundaryConfiguration) -> int:
    lb = list(before.components[0].labels)
    la = list(after.components[0].labels)
    if la == lb:
        return 0
    if la == lb[1:] + lb[:1]:
        return 1
    if la == lb[-1:] + lb[:-1]:
        return -1
    raise NotTorusPage(f"配置从 {before} 变为 {after}，不是单步旋转")


def _sign(direction: Direction) -> int:
    return 1 if direction is Direction.RIGHT else -1


def diagram_monodromy(d: MorseDiagram) -> Monodromy:
    run = run_diagram(d)
    a, _ = check_torus_page(d)
    if not run.closed:
        raise NonClosedInput("单值化只对闭合的 Morse 图有定义")

    frame = 0
    twists: list[TwistGen] = []
    for event, before, after in zip(d.events, run.configurations, run.configurations[1:]):
        frame += _frame_shift(before, after)
        if isinstance(event, Slide):
            curve = Curve.A if event.mover.handle == a else Curve.B
            twists.append(TwistGen(curve=curve, power=_sign(event.direction)))

    gens = list(reversed(twists))
    if frame:
        gens.append(TwistGen(curve=Curve.C, power=-frame // 4))
    factorization = merge_adjacent(gens)
    logger.debug("frame=%d，因子分解 %s", frame, factorization)
    return Monodromy(invariant=word_invariant(factorization), factorization=factorization)


def _evolve(d: MorseDiagram) -> tuple[list[CoreState], list[EvolvingTwist], list[TwistGen]]:
    run_diagram(d)
    a, _ = check_torus_page(d)
    cores = {Curve.A: (1, 0), Curve.B: (0, 1)}
    states = [CoreState(a=cores[Curve.A], b=cores[Curve.B])]
    evolving: list[EvolvingTwist] = []
    fixed: list[TwistGen] = []
    for event in d.events:
        if not isinstance(event, Slide):
            continue
        curve = Curve.A if event.mover.handle == a else Curve.B
        sign = _sign(event.direction)
        evolving.append(EvolvingTwist(core=cores[curve], sign=sign))
        fixed.append(TwistGen(curve=curve, power=sign))
        # 滑动对核心曲线的作用与单值化符号相反
        m = sl2z.twist_matrix(cores[curve], -sign)
        cores = {k: sl2z.apply(m, v) for k, v in cores.items()}
        states.append(CoreState(a=cores[Curve.A], b=cores[Curve.B]))
    return states, evolving, fixed


def trace_cores(d: MorseDiagram) -> list[CoreState]:
    """返回初始核心 (A, B) 以及每次滑动之后的核心同调类。"""
    if not run_diagram(d).closed:
        raise NonClosedInput("只对闭合的 Morse 图追踪核心曲线")
    return _evolve(d)[0]


def evolving_factorization(d: MorseDiagram) -> EvolvingFactorization:
    """不要求闭合：按滑动顺序的演化核心扭转之积等于固定核心扭转的逆序积。"""
    _, evolving, fixed = _evolve(d)
    return EvolvingFactorization(evolving=tuple(evolving), fixed=TwistWord(gens=tuple(reversed(fixed))))


# --- 增强移动与合成 ---

def enhanced_moves(cfg: BoundaryConfiguration) -> list[EnhancedMove]:
    """
    每个端点、每个方向尝试一次：若端点在该方向上紧贴基点，先越过基点再滑动；
    否则先滑动，配置改变时再越过基点。只保留最终恢复 cfg 的移动。
    """
    moves: list[EnhancedMove] = []
    for row in cfg.as_lists():
        for mover in row:
            for direction in (Direction.LEFT, Direction.RIGHT):
                events = _enhanced_events(cfg, mover, direction)
                if events:
                    moves.append(EnhancedMove(handle=mover.handle, direction=direction, events=tuple(events)))
    return moves


def _neighbor(cfg: BoundaryConfiguration, mover: EndpointLabel, direction: Direction):
    ci, i = cfg.locate(mover)
    row = cfg.components[ci].labels
    j = i - 1 if direction is Direction.LEFT else i + 1
    return row[j] if 0 <= j < len(row) else None


def _enhanced_events(cfg: BoundaryConfiguration, mover: EndpointLabel, direction: Direction) -> list:
    events: list = []
    current = cfg
    neighbor = _neighbor(current, mover, direction)
    if neighbor is None:
        events.append(Cross(mover=mover, direction=direction))
        current = apply_event(current, events[-1])
        neighbor = _neighbor(current, mover, direction)
    if neighbor is None or neighbor.handle == mover.handle:
        return []
    events.append(Slide(mover=mover, direction=direction, entry=neighbor))
    current = apply_event(current, events[-1])
    if current != cfg and len(events) == 1 and _neighbor(current, mover, direction) is None:
        events.append(Cross(mover=mover, direction=direction))
        current = apply_event(current, events[-1])
    return events if current == cfg else []


def preferred_move(cfg: BoundaryConfiguration, handle: str, direction: Direction) -> EnhancedMove:
    """优先选单次滑动的增强移动，否则取最短的一个。"""
    candidates = [m for m in enhanced_moves(cfg) if m.handle == handle and m.direction is direction]
    if not candidates:
        raise PatternMismatch(f"{cfg} 上没有把手 {handle} 向 {direction.value} 的增强移动")
    return min(candidates, key=lambda m: len(m.events))


def full_rotation(cfg: BoundaryConfiguration, direction: Direction, turns: int = 1) -> list[Cross]:
    """沿一个方向越过基点 4·turns 次，配置回到 cfg。"""
    events: list[Cross] = []
    current = cfg
    for _ in range(len(cfg.components[0].labels) * turns):
        row = current.components[0].labels
        mover = row[0] if direction is Direction.LEFT else row[-1]
        events.append(Cross(mover=mover, direction=direction))
        current = apply_event(current, events[-1])
    return events


def synthesize(w: TwistWord, handles: tuple[str, str] = ('A', 'B')) -> MorseDiagram:
    """
    合成单值化为 w 的闭合 Morse 图：按复合顺序（从右往左）读 w，
    A、B 的扭转对应参考配置上保持配置的滑动，τ_C^{±1} 对应四次同向越过基点。
    """
    a, b = handles
    cfg = reference_configuration(a, b)
    events: list = []
    for g in reversed(w.gens):
        direction = Direction.RIGHT if g.power > 0 else Direction.LEFT
        if g.curve is Curve.C:
            events += full_rotation(cfg, direction, abs(g.power))
        else:
            move = preferred_move(cfg, a if g.curve is Curve.A else b, direction)
            events += list(move.events) * abs(g.power)
    return MorseDiagram(handles=(a, b), initial=cfg, events=tuple(events))


def standardize(d: MorseDiagram) -> MorseDiagram:
    """只由首选滑动和整圈旋转组成、与 d 单值化相同的 Morse 图。"""
    handles = check_torus_page(d)
    return synthesize(diagram_monodromy(d).factorization, handles)


def same_open_book(d1: MorseDiagram, d2: MorseDiagram, mode: EquivalenceMode = EquivalenceMode.CONJUGACY) -> bool:
    m1 = diagram_monodromy(d1).invariant
    m2 = diagram_monodromy(d2).invariant
    if mode is EquivalenceMode.STRICT:
        return m1 == m2
    return m1.exponent_sum == m2.exponent_sum and sl2z.conjugate_in_sl2z(m1.matrix, m2.matrix)
