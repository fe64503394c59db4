"""Configure Django before the test modules (which import django.test) are collected."""
import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'rotlab.settings')
django.setup()
