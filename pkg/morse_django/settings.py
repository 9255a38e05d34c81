import os
from pathlib import Path
from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / '.env')

SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'morse-local-key-not-used-for-anything')

DEBUG = os.environ.get('DEBUG', 'True') != 'False'

ALLOWED_HOSTS: list[str] = []

INSTALLED_APPS = [
    'core.apps.CoreConfig',
    'surface_core.apps.SurfaceCoreConfig',
    'diagram.apps.DiagramConfig',
    'splice.apps.SpliceConfig',
    'detect.apps.DetectConfig',
    'torus_mcg.apps.TorusMcgConfig',
    'cli.apps.CliConfig',
]

# 纯计算项目，不需要数据库
DATABASES: dict = {}

LANGUAGE_CODE = 'zh-Hans'
TIME_ZONE = 'Asia/Shanghai'
USE_I18N = True
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# --- 组合 Morse 结构相关配置 ---

# 证书搜索最多访问的图数量（与深度无关的硬上限）
MORSE_SEARCH_MAX_NODES = int(os.environ.get('MORSE_SEARCH_MAX_NODES', '20000'))

# 拼接模拟的安全上限系数：factor * 槽位对象总数 * (事件数 + 标签数 + 1)
MORSE_SPLICE_STEP_FACTOR = int(os.environ.get('MORSE_SPLICE_STEP_FACTOR', '4'))

_DEFAULT_PALETTE = '#1f77b4,#d62728,#2ca02c,#ff7f0e,#9467bd,#8c564b,#e377c2,#17becf'
MORSE_RENDER_PALETTE = [
    colour.strip()
    for colour in os.environ.get('MORSE_RENDER_PALETTE', _DEFAULT_PALETTE).split(',')
    if colour.strip()
]

MORSE_LOG_LEVEL = os.environ.get('MORSE_LOG_LEVEL', 'WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        app: {'handlers': ['console'], 'level': MORSE_LOG_LEVEL, 'propagate': False}
        for app in ('core', 'surface_core', 'diagram', 'splice', 'detect', 'torus_mcg', 'cli')
    },
}
