# cli/management/commands/morse.py
"""
python manage.py morse <子命令> ...

成功时逐行输出 `key: value`，最后一行是说明文字；失败时以非零退出码结束：
1 用法错误，2 解析错误，3 校验或前置条件不满足，4 操作不适用于该页面。
"""

import inspect
import sys

from django.core.management.base import BaseCommand, CommandError

from cli.render import RenderFormat
from cli.services import COMMANDS
from core.types import exit_code_for
from splice.types import BandSign
from torus_mcg.types import EquivalenceMode


def _format(value) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    return str(value)


class Command(BaseCommand):
    help = "组合 Morse 结构：校验、拼接、稳定化、过扭检测与一孔环面单值化"
    requires_system_checks: list = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        # 参数错误一律抛出 CommandError，由 run_from_argv 以退出码 1 结束
        parser.called_from_command_line = False
        return parser

    def add_arguments(self, parser):
        sub = parser.add_subparsers(dest='command', required=True)

        def command(name: str, help_text: str):
            return sub.add_parser(name, help=help_text, called_from_command_line=False)

        p = command('info', "页面类型与闭合性")
        p.add_argument('path')

        p = command('splice', "沿星形点集拼接两个 Morse 图")
        p.add_argument('path')
        p.add_argument('other')
        p.add_argument('--points1', required=True)
        p.add_argument('--points2', required=True)
        p.add_argument('--out', required=True)

        p = command('stabilize', "与正/负 Hopf 带拼接")
        p.add_argument('path')
        p.add_argument('--sign', choices=[s.value for s in BandSign], required=True)
        p.add_argument('--p1', required=True)
        p.add_argument('--p2', required=True)
        p.add_argument('--out', required=True)

        p = command('detect-ot', "寻找左转把手")
        p.add_argument('path')
        p.add_argument('--search-depth', dest='search_depth', type=int, default=0)

        p = command('monodromy', "一孔环面页面的单值化")
        p.add_argument('path')

        p = command('equiv', "比较两个一孔环面开书")
        p.add_argument('path')
        p.add_argument('other')
        p.add_argument('--mode', choices=[m.value for m in EquivalenceMode], default=EquivalenceMode.CONJUGACY.value)

        p = command('synth', "由扭转字合成 Morse 图")
        p.add_argument('--word', required=True)
        p.add_argument('--out', required=True)

        p = command('render', "ASCII 或 SVG 渲染")
        p.add_argument('path')
        p.add_argument('--format', dest='fmt', choices=[f.value for f in RenderFormat], default=RenderFormat.ASCII.value)
        p.add_argument('--out', default='-')

        p = command('standardize', "改写为只含首选滑动的 Morse 图")
        p.add_argument('path')
        p.add_argument('--out', required=True)

    def run_from_argv(self, argv):
        try:
            super().run_from_argv(argv)
        except CommandError as e:
            self.stderr.write(str(e))
            sys.exit(e.returncode)

    def handle(self, *args, **options):
        func = COMMANDS[options['command']]
        params = inspect.signature(func).parameters
        result = func(**{name: options[name] for name in params if name in options})

        data = result['data'] or {}
        if 'rendered' in data:
            self.stdout.write(data['rendered'], ending='')
        else:
            for key, value in data.items():
                self.stdout.write(f"{key}: {_format(value)}")
            if result['message']:
                self.stdout.write(result['message'])

        code = exit_code_for(result)
        if code:
            raise CommandError(result['message'], returncode=code)
