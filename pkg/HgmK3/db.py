from decouple import config
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent

# Sweeps are only persisted with --save; sqlite is enough for a desk run.
DATABASES = {
    'default': {
        'ENGINE': config("DB_ENGINE", default='django.db.backends.sqlite3'),
        'NAME': config("DB_NAME", default=str(BASE_DIR / 'db.sqlite3')),
        'USER': config("DB_USER", default=''),
        'PASSWORD': config("DB_PASSWORD", default=''),
        'HOST': config("DB_HOST", default=''),
        'PORT': config("DB_PORT", default=''),
    }
}
