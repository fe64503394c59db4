"""
Django settings for rotlab project.

Generated by 'django-admin startproject' using Django 5.2.3.

The project only runs management commands (no web server, no database), so
most of the web-oriented settings are gone. The computation defaults used by
the commands live at the bottom of this file.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

from pathlib import Path
import os

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv('DJANGO_SECRET_KEY', 'django-insecure-q7$k1r!o0t8m-2v#t9s@x4e5w6n3b_c+h&j%l*p')

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.getenv('DEBUG', 'False') == 'True'

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'rotation',
]

# Sin base de datos: todos los resultados se escriben en ficheros.
DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True


# Logging
# https://docs.djangoproject.com/en/5.2/topics/logging/

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
        'rotation': {
            'handlers': ['console'],
            'level': 'DEBUG' if DEBUG else 'INFO',
            'propagate': False,
        },
    },
}


# --- PARÁMETROS DE CÁLCULO ---

# Directorio de salida por defecto (la única variable de entorno del dominio).
ROTATION_OUTPUT_DIR = Path(os.getenv('ROTATION_OUTPUT_DIR', BASE_DIR.parent / 'runs'))

# Semilla fija y documentada para los puntos iniciales aleatorios.
ROTATION_DEFAULT_SEED = 1

# Longitud de los segmentos de órbita.
ROTATION_DEFAULT_LENGTH = 1000

# Lado de la cuadrícula de cuadratura para el vector de rotación medio.
ROTATION_DEFAULT_QUADRATURE = 1024

ROTATION_DEFAULT_WORKERS = os.cpu_count() or 1
