# core/testing.py
"""
测试共用的 hypothesis 策略与配置。
导入本模块即注册并加载 'morse' 配置：关闭 deadline（拼接与搜索的耗时波动较大）。
"""

from hypothesis import HealthCheck, settings, strategies as st

from diagram.services import applicable_events, apply_event, inverse_event
from diagram.types import MorseDiagram
from splice.services import make_star_set, star_order
from splice.types import MarkedPoint, StarSet
from surface_core.services import handles_of
from surface_core.types import BoundaryConfiguration
from torus_mcg.moves import apply_morse_move
from torus_mcg.services import synthesize
from torus_mcg.types import Curve, MoveId, TwistGen, TwistWord

settings.register_profile(
    'morse',
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile('morse')

# 可实现的边界配置：环面、两个三孔球面、一孔环面、二孔环面
FIXTURE_CONFIGURATIONS = [
    [['A+'], ['A-']],
    [['A+', 'B-'], ['A-'], ['B+']],
    [['B-'], ['A-'], ['B+', 'A+']],
    [['B+', 'A+', 'B-', 'A-']],
    [['H+', 'B+', 'A+'], ['H-', 'B-', 'A-']],
]


def configuration(lists) -> BoundaryConfiguration:
    return BoundaryConfiguration.from_lists(lists)


@st.composite
def walks(draw, lists=None, max_steps: int = 6) -> MorseDiagram:
    """随机游走得到的可执行（通常不闭合）的 Morse 图。"""
    cfg = configuration(lists if lists is not None else draw(st.sampled_from(FIXTURE_CONFIGURATIONS)))
    events = []
    current = cfg
    for _ in range(draw(st.integers(0, max_steps))):
        event = draw(st.sampled_from(applicable_events(current)))
        events.append(event)
        current = apply_event(current, event)
    return MorseDiagram(handles=tuple(handles_of(cfg)), initial=cfg, events=tuple(events))


@st.composite
def closed_diagrams(draw, lists=None, max_steps: int = 5) -> MorseDiagram:
    """随机游走之后再按逆序走回来，得到闭合的 Morse 图。"""
    d = draw(walks(lists, max_steps))
    return d.with_events(d.events + tuple(inverse_event(e) for e in reversed(d.events)))


@st.composite
def marked_pairs(draw, cfg: BoundaryConfiguration) -> tuple[MarkedPoint, MarkedPoint]:
    points = [
        MarkedPoint(component=c.component_id, gap=g)
        for c in cfg.components for g in range(len(c.labels) + 1)
    ]
    first, second = draw(st.lists(st.sampled_from(points), min_size=2, max_size=2, unique=True))
    return first, second


@st.composite
def star_sets(draw, cfg: BoundaryConfiguration, n: int) -> StarSet:
    """n 个互不相同的标记点，按星形顺序重新编号。"""
    candidates = [
        MarkedPoint(component=c.component_id, gap=g, sub_index=k)
        for c in cfg.components for g in range(len(c.labels) + 1) for k in range(2)
    ]
    points = draw(st.lists(st.sampled_from(candidates), min_size=n, max_size=n, unique=True))
    order = star_order(cfg, points).order
    return make_star_set(cfg, [points[j] for j in order])


twist_gens = st.builds(
    TwistGen,
    curve=st.sampled_from(list(Curve)),
    power=st.integers(-2, 2).filter(bool),
)


def twist_words(max_size: int = 12):
    return st.lists(twist_gens, max_size=max_size).map(lambda gens: TwistWord(gens=tuple(gens)))


@st.composite
def torus_diagrams(draw, max_size: int = 6) -> MorseDiagram:
    """合成的一孔环面 Morse 图，随机插入若干对互逆事件。"""
    d = synthesize(draw(twist_words(max_size)))
    for _ in range(draw(st.integers(0, 2))):
        site = draw(st.integers(0, len(d.events)))
        cfg = d.initial
        for event in d.events[:site]:
            cfg = apply_event(cfg, event)
        event = draw(st.sampled_from(applicable_events(cfg)))
        d = apply_morse_move(d, MoveId.M1_INSERT, site, event)
    return d
