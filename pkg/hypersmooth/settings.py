"""
Django settings for hypersmooth project.
"""

from pathlib import Path
from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# No web surface is served; the key only satisfies Django's startup checks.
SECRET_KEY = config('SECRET_KEY', default='django-insecure-hypersmooth-local-key')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',

    # Local apps
    'infinitesimal',
    'transition',
    'lineelement',
    'geodesics',
    'reports',
]


# Database
# SQLite unless DB_ENGINE selects PostgreSQL for a shared run ledger.

DB_ENGINE = config('DB_ENGINE', default='sqlite3')

if DB_ENGINE == 'postgresql':
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.postgresql',
            'NAME': config('DB_NAME', default='hypersmooth_db'),
            'USER': config('DB_USER', default='hypersmooth_user'),
            'PASSWORD': config('DB_PASSWORD', default='hypersmooth_password'),
            'HOST': config('DB_HOST', default='localhost'),
            'PORT': config('DB_PORT', default='5432'),
        }
    }
else:
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.sqlite3',
            'NAME': config('DB_NAME', default=str(BASE_DIR / 'hypersmooth.sqlite3')),
        }
    }


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Default primary key field type

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Logging

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
        app: {
            'handlers': ['console'],
            'level': config('HF_LOG_LEVEL', default='WARNING'),
            'propagate': False,
        }
        for app in ('infinitesimal', 'transition', 'lineelement', 'geodesics', 'reports')
    },
}


# Run defaults (overridable per run through flags or a key = value file)
HF_SEED = config('HF_SEED', default=20240601, cast=int)
HF_WINDOW = config('HF_WINDOW', default='4')  # width of the retained exponent window
HF_MAX_TERMS = config('HF_MAX_TERMS', default=32, cast=int)
HF_UNITS = config('HF_UNITS', default='geometric')  # geometric (G = c = 1) or si
HF_OUTPUT_DIR = config('HF_OUTPUT_DIR', default=str(BASE_DIR / 'output'))
HF_FORMAT = config('HF_FORMAT', default='csv')
HF_SCHEMA_VERSION = 1
