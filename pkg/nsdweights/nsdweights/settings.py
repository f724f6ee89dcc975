"""
Django settings for the nsdweights project.

The project has no web surface and no database models: Django provides the
settings layer, the logging configuration, the management-command CLI and
the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Optional overrides for the WEIGHTING_* values below
load_dotenv(BASE_DIR / ".env")

# Only used by Django internals (signing); nothing here is served.
SECRET_KEY = os.environ.get(
    "DJANGO_SECRET_KEY", "nsdweights-local-only-not-a-secret"
)

DEBUG = False

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    "weighting",
]

# Certificates, graphs and fixtures are plain files
DATABASES = {}

# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# Construction parameters
# Defaults are the values that carry the decomposition theorem's guarantee
# (minimum degree >= 10**6, q = 9/20, t = 18). Desk-scale runs override q and
# t per command; see README.md for which regimes are guaranteed.
WEIGHTING_Q = os.environ.get("WEIGHTING_Q", "9/20")
WEIGHTING_T = int(os.environ.get("WEIGHTING_T", "18"))
WEIGHTING_SEED = int(os.environ.get("WEIGHTING_SEED", "0"))

# Resampling stops after this many rounds per vertex of the input graph
WEIGHTING_MAX_ROUNDS_PER_VERTEX = 100

# Degree-constrained subgraph solver
WEIGHTING_DCS_BUDGET = int(os.environ.get("WEIGHTING_DCS_BUDGET", "1000000"))
WEIGHTING_DCS_EXACT_THRESHOLD = 30
WEIGHTING_DCS_RESTARTS = 1

# Brute-force oracles
WEIGHTING_BRUTE_THRESHOLD = 10**8
WEIGHTING_BRUTE22_MAX_EDGES = 20

# Random regular graphs: pairing-model rounds before giving up
WEIGHTING_REGULAR_MAX_ATTEMPTS = 100

WEIGHTING_LOG_LEVEL = os.environ.get("WEIGHTING_LOG_LEVEL", "INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "{levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "plain",
        },
    },
    "loggers": {
        "weighting": {
            "handlers": ["console"],
            "level": WEIGHTING_LOG_LEVEL,
            "propagate": False,
        },
    },
}
