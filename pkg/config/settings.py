from pathlib import Path
import os
from dotenv import load_dotenv


def _env_bool(name: str, default: bool = False) -> bool:
	val = os.getenv(name)
	if val is None:
		return default
	return str(val).strip().lower() in ("1", "true", "yes", "on")


def _env_int(name: str, default: int) -> int:
	val = os.getenv(name)
	if val is None or not str(val).strip():
		return default
	return int(val)


# Choose which env file to load by default.
# - Local/dev: .env
# - Production: production.env
# Can be overridden via ENV_FILE or DJANGO_ENV_FILE.
_bootstrap_env = os.getenv("DJANGO_ENV", "").strip().lower()

_default_env_file = ".env"
if _bootstrap_env in ("prod", "production"):
	_default_env_file = "production.env"

ENV_FILE = os.getenv("ENV_FILE", os.getenv("DJANGO_ENV_FILE", _default_env_file))
load_dotenv(ENV_FILE)

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv("SECRET_KEY", "change-me")
DEBUG = _env_bool("DEBUG", True)
ALLOWED_HOSTS = [host.strip() for host in os.getenv("ALLOWED_HOSTS", "localhost,127.0.0.1").split(",") if host.strip()]

INSTALLED_APPS = [
	'django.contrib.contenttypes',
	'django.contrib.auth',
	'toolkit',
	'audit',
]

# Database configuration (sqlite unless DB_ENGINE says otherwise)
DATABASES = {
	'default': {
		'ENGINE': os.getenv('DB_ENGINE', 'django.db.backends.sqlite3'),
		'NAME': os.getenv('DB_NAME', str(BASE_DIR / 'grlkit.sqlite3')),
		'USER': os.getenv('DB_USER', ''),
		'PASSWORD': os.getenv('DB_PASSWORD', ''),
		'HOST': os.getenv('DB_HOST', ''),
		'PORT': os.getenv('DB_PORT', ''),
	}
}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# ============================================================================
# GRL TOOLKIT
# ============================================================================

# Projective classes a single enumeration may visit (q^k ~ 10^7 at q=11)
GRL_DEFAULT_BUDGET = _env_int('GRL_DEFAULT_BUDGET', 2_000_000)

# Largest q with a default modulus and table-driven square roots
GRL_MAX_FIELD_ORDER = _env_int('GRL_MAX_FIELD_ORDER', 4096)

# Worker pool size; 0/unset means all cores
GRL_THREADS = _env_int('GRL_THREADS', 0) or (os.cpu_count() or 1)

# Messages per codeword-enumeration task
GRL_ENUM_CHUNK = _env_int('GRL_ENUM_CHUNK', 32768)

# Persist every CLI run as an audit.RunLog row
GRL_RECORD_RUNS = _env_bool('GRL_RECORD_RUNS', False)

GRL_LOG_LEVEL = os.getenv('GRL_LOG_LEVEL', 'INFO').upper()

LOGGING = {
	'version': 1,
	'disable_existing_loggers': False,
	'formatters': {
		'plain': {'format': '%(asctime)s %(levelname)s %(name)s %(message)s'},
	},
	'handlers': {
		'console': {
			'class': 'logging.StreamHandler',
			'stream': 'ext://sys.stderr',
			'formatter': 'plain',
		},
	},
	'root': {'handlers': ['console'], 'level': GRL_LOG_LEVEL},
}

# Locale / TZ defaults
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True
