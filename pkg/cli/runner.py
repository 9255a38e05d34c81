# cli/runner.py

import sys
from typing import Optional, Sequence, TextIO

from django.core.management import call_command
from django.core.management.base import CommandError


def run_cli(argv: Sequence[str], stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """在进程内执行 morse 子命令，返回退出码（不调用 sys.exit）。"""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        call_command('morse', *argv, stdout=stdout, stderr=stderr)
    except CommandError as e:
        stderr.write(f"{e}\n")
        return e.returncode
    return 0
