from typing import TypedDict, Dict, Any

class ServiceResult(TypedDict):
    code: int
    message: str
    data: Dict[str, Any] | None


# 服务层统一使用的返回码
CODE_OK = 200
CODE_DATA_ERROR = 300       # 输入文件/参数格式错误
CODE_INVALID = 400          # 校验失败或前置条件不满足
CODE_NOT_APPLICABLE = 405   # 该操作不适用于此页面（例如非一孔环面）
CODE_INTERNAL = 500

# 返回码 -> 进程退出码
EXIT_CODES = {
    CODE_OK: 0,
    CODE_DATA_ERROR: 2,
    CODE_INVALID: 3,
    CODE_NOT_APPLICABLE: 4,
    CODE_INTERNAL: 1,
}


def exit_code_for(result: ServiceResult) -> int:
    return EXIT_CODES.get(result['code'], 1)
