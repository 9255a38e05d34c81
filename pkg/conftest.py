import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'morse_django.settings')
django.setup()
