# torus_mcg/sl2z.py
"""
SL(2,Z) 上的整数矩阵运算与共轭判定。
元素可能随字长指数增长，因此只用 Python 的任意精度整数。

共轭判定：迹必须相等；迹为 0 时比较左下角元素的符号；
否则把矩阵写成 PSL(2,Z) = Z/2 * Z/3 中的约化循环字，比较是否只差一个旋转。
"""

from itertools import product
from typing import Optional

from .types import Matrix, Vector

IDENTITY: Matrix = ((1, 0), (0, 1))


def mul(m: Matrix, n: Matrix) -> Matrix:
    return (
        (m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]),
        (m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]),
    )


def det(m: Matrix) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def trace(m: Matrix) -> int:
    return m[0][0] + m[1][1]


def inverse(m: Matrix) -> Matrix:
    # 仅对行列式为 1 的矩阵成立
    return ((m[1][1], -m[0][1]), (-m[1][0], m[0][0]))


def power(m: Matrix, k: int) -> Matrix:
    base = m if k >= 0 else inverse(m)
    result = IDENTITY
    for _ in range(abs(k)):
        result = mul(result, base)
    return result


def apply(m: Matrix, v: Vector) -> Vector:
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def intersection(x: Vector, y: Vector) -> int:
    return x[0] * y[1] - x[1] * y[0]


def twist_matrix(c: Vector, k: int = 1) -> Matrix:
    """τ_c^k(x) = x - k·i(x, c)·c。"""
    c1, c2 = c
    return ((1 - k * c1 * c2, k * c1 * c1), (-k * c2 * c2, 1 + k * c1 * c2))


# --- PSL(2,Z) 中的自由积范式 ---

_ORDER = {'s': 2, 'u': 3}
Syllable = tuple[str, int]


def _push(stack: list[Syllable], gen: str, exponent: int) -> None:
    exponent %= _ORDER[gen]
    if not exponent:
        return
    if stack and stack[-1][0] == gen:
        merged = (stack[-1][1] + exponent) % _ORDER[gen]
        stack.pop()
        if merged:
            stack.append((gen, merged))
    else:
        stack.append((gen, exponent))


def _t_power(stack: list[Syllable], k: int) -> None:
    # T = s·u，T^-1 = u²·s（在 PSL 中）
    for _ in range(abs(k)):
        if k > 0:
            _push(stack, 's', 1)
            _push(stack, 'u', 1)
        else:
            _push(stack, 'u', 2)
            _push(stack, 's', 1)


def psl_word(m: Matrix) -> list[Syllable]:
    """用辗转相除把 m 写成 T^q1 S T^q2 S ... T^k，再约化为 s、u 交替的字。"""
    (a, b), (c, d) = m
    stack: list[Syllable] = []
    while c != 0:
        q = a // c
        _t_power(stack, q)
        _push(stack, 's', 1)
        # m <- S^-1 T^-q m
        a, b = a - q * c, b - q * d
        a, b, c, d = c, d, -a, -b
    _t_power(stack, b if a == 1 else -b)
    return stack


def cyclic_normal_form(m: Matrix) -> tuple[Syllable, ...]:
    word = psl_word(m)
    while len(word) >= 2 and word[0][0] == word[-1][0]:
        gen = word[0][0]
        merged = (word[0][1] + word[-1][1]) % _ORDER[gen]
        word = word[1:-1] if not merged else [(gen, merged)] + word[1:-1]
    if not word:
        return ()
    return min(tuple(word[i:] + word[:i]) for i in range(len(word)))


def conjugate_in_sl2z(m: Matrix, n: Matrix) -> bool:
    if det(m) != 1 or det(n) != 1:
        return False
    if trace(m) != trace(n):
        return False
    if trace(m) == 0:
        # 4 阶元素分两类，由 x ↦ det(x, Mx) 的符号区分
        return (m[1][0] > 0) == (n[1][0] > 0)
    return cyclic_normal_form(m) == cyclic_normal_form(n)


def find_conjugator(m: Matrix, n: Matrix, bound: int) -> Optional[Matrix]:
    """有界穷举：寻找 |p|,|q|,|r| ≤ bound 且 P·M = N·P 的 P ∈ SL(2,Z)。"""
    span = range(-bound, bound + 1)
    for p, q, r in product(span, span, span):
        if p == 0:
            if q * r != -1:
                continue
            candidates = span
        else:
            if (1 + q * r) % p:
                continue
            candidates = ((1 + q * r) // p,)
        for s in candidates:
            conj = ((p, q), (r, s))
            if mul(conj, m) == mul(n, conj):
                return conj
    return None
