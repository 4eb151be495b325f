"""
Django settings for the suspensionlab project.

Numerical apps (dist, intensity, criteria, simulate) are plain Python modules
wrapped as Django apps; cli owns the run ledger and the `lab` command.
Everything environment-dependent is read from os.environ below.
"""
import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('SECRET_KEY', 'django-insecure-suspensionlab-local-only')

DEBUG = os.environ.get('DEBUG', 'False').lower() in ('1', 'true', 'yes')

ALLOWED_HOSTS = ['localhost']

# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'rest_framework',
    'dist',
    'intensity',
    'criteria',
    'simulate',
    'cli',
]

# Database
# https://docs.djangoproject.com/en/5.0/ref/settings/#databases

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}

# Internationalization
# https://docs.djangoproject.com/en/5.0/topics/i18n/

LANGUAGE_CODE = 'en-gb'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

LAB_LOG_LEVEL = os.environ.get('LAB_LOG_LEVEL', 'INFO').upper()

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': LAB_LOG_LEVEL,
            'propagate': False,
        }
        for app in ('dist', 'intensity', 'criteria', 'simulate', 'cli')
    },
}

# Monte Carlo streams per experiment; each stream is one Celery task.
LAB_WORKERS = int(os.environ.get('LAB_WORKERS', 4))

LAB_REPORT_DIR = Path(os.environ.get('LAB_REPORT_DIR', BASE_DIR / 'reports'))

LAB_REPORT_SCHEMA_VERSION = 1

CELERY_BROKER_URL = os.environ.get('CELERY_BROKER_URL', 'redis://localhost:6379')
CELERY_RESULT_BACKEND = os.environ.get('CELERY_RESULT_BACKEND', 'redis://localhost:6379')
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = 'UTC'
# Stream batches run in-process unless a worker pool is started with run-celery.sh.
CELERY_TASK_ALWAYS_EAGER = os.environ.get('LAB_CELERY_EAGER', 'true').lower() in ('1', 'true', 'yes')
CELERY_TASK_EAGER_PROPAGATES = True

REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'COERCE_DECIMAL_TO_STRING': False,
}
