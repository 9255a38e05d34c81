# core/exceptions.py
"""
所有库操作抛出的异常都继承自 MorseError。
每个异常类带有一个 code，服务层据此构造 ServiceResult。
"""

from typing import Any, Optional

from .types import CODE_DATA_ERROR, CODE_INVALID, CODE_NOT_APPLICABLE


class MorseError(Exception):
    code = CODE_INVALID

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_data(self) -> dict[str, Any]:
        data: dict[str, Any] = {"error": type(self).__name__}
        data.update({k: str(v) for k, v in self.details.items()})
        return data


class ParseError(MorseError):
    code = CODE_DATA_ERROR

    def __init__(self, line: Optional[int], message: str):
        text = f"第 {line} 行: {message}" if line is not None else message
        super().__init__(text, line=line)
        self.line = line


# --- 边界配置校验 ---

class DuplicateLabel(MorseError):
    def __init__(self, label: Any):
        super().__init__(f"标签 {label} 重复出现", label=label)
        self.label = label


class MissingPartner(MorseError):
    def __init__(self, handle: str):
        super().__init__(f"把手 {handle} 缺少配对的端点", handle=handle)
        self.handle = handle


class DuplicateComponent(MorseError):
    def __init__(self, component_id: int):
        super().__init__(f"边界分支编号 {component_id} 重复或未严格递增", component=component_id)
        self.component_id = component_id


class NotRealizable(MorseError):
    pass


# --- 事件 ---

class EventError(MorseError):
    event_index: Optional[int] = None

    def at(self, index: int) -> "EventError":
        self.event_index = index
        self.details["event_index"] = index
        self.message = f"事件 #{index}: {self.message}"
        self.args = (self.message,)
        return self


class NotAdjacent(EventError):
    pass


class UnknownLabel(EventError):
    def __init__(self, label: Any):
        super().__init__(f"未知的标签 {label}", label=label)
        self.label = label


class SelfSlide(EventError):
    def __init__(self, mover: Any):
        super().__init__(f"{mover} 不能滑过自身把手的余核", mover=mover)


class NonClosedInput(MorseError):
    pass


class NonRunnable(MorseError):
    pass


# --- 拼接 ---

class NotStarlike(MorseError):
    pass


class MismatchedN(MorseError):
    pass


class NonTermination(MorseError):
    pass


# --- 一孔环面 ---

class NotTorusPage(MorseError):
    code = CODE_NOT_APPLICABLE


class PatternMismatch(MorseError):
    pass
