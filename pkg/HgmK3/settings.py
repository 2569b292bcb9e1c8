"""
Django settings for the HgmK3 project.

The project has no web surface: it exists to host the ``hgm.V1`` app, its
management commands and the optional sweep store.  Every tunable is read
through python-decouple so a ``.env`` file or the environment can override it.
"""

from pathlib import Path
from decouple import config
from .db import DATABASES

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY: load from environment or .env using python-decouple
SECRET_KEY = config('SECRET_KEY', default='django-insecure-hgmk3-local')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
]

# Third-party apps and project apps
INSTALLED_APPS += [
    'rest_framework',
    # project apps
    'hgm.V1',
]

MIDDLEWARE = []

TEMPLATES = []


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Default primary key field type

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': (
        'rest_framework.renderers.JSONRenderer',
    ),
    'UNAUTHENTICATED_USER': None,
}


# Computation settings

# working precision (bits) of the Gauss tables
HGMK3_PRECISION = config('HGMK3_PRECISION', default=53, cast=int)

# every randomized check is seeded from here unless --seed is given
HGMK3_SEED = config('HGMK3_SEED', default=24301, cast=int)

HGMK3_HIGH_PRECISION_Q = config('HGMK3_HIGH_PRECISION_Q', default=10 ** 4, cast=int)
HGMK3_HIGH_PRECISION_BITS = config('HGMK3_HIGH_PRECISION_BITS', default=128, cast=int)

# largest q for which tables are built
HGMK3_FIELD_BOUND = config('HGMK3_FIELD_BOUND', default=2 ** 24, cast=int)

HGMK3_JOBS = config('HGMK3_JOBS', default=1, cast=int)

HGMK3_SCHEMA_VERSION = 'hgmk3/1'

CM_FIXTURE_PATH = BASE_DIR / 'hgm' / 'V1' / 'fixtures' / 'cm_tables.json'


# Logging: stderr only, stdout is reserved for reports.

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name} {process:d} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'hgm': {
            'handlers': ['console'],
            'level': config('HGMK3_LOG_LEVEL', default='WARNING'),
            'propagate': False,
        },
    },
}
