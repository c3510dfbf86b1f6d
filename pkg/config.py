import os
import logging
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

# Load environment variables
load_dotenv()

BACKENDS = ('paper', 'literal', 'prime-field')


def _int_env(name, default):
    raw = os.getenv(name)
    if raw is None or raw == '':
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}, using {default}")
        return default


def _bool_env(name, default):
    raw = os.getenv(name)
    if raw is None or raw == '':
        return default
    return raw.strip().lower() in ('1', 'true', 'yes', 'on')


def get_engine_config():
    """Get engine configuration from environment variables"""
    backend = os.getenv('TUTTE_BACKEND', 'prime-field')
    if backend not in BACKENDS:
        logger.warning(f"Unknown TUTTE_BACKEND={backend!r}, falling back to prime-field")
        backend = 'prime-field'

    return {
        'log_level': os.getenv('TUTTE_LOG_LEVEL', 'INFO').upper(),
        'debug_dir': os.getenv('TUTTE_DEBUG_DIR', 'logs'),
        'save_reports': _bool_env('TUTTE_SAVE_REPORTS', False),
        'minor_max_n': _int_env('TUTTE_MINOR_MAX_N', 4),
        'minor_max_hyperplanes': _int_env('TUTTE_MINOR_MAX_HYPERPLANES', 20),
        'workers': max(1, _int_env('TUTTE_WORKERS', 1)),
        'chunk_points': max(1, _int_env('TUTTE_CHUNK_POINTS', 50000)),
        'backend': backend,
        'prime_search_limit': _int_env('TUTTE_PRIME_SEARCH_LIMIT', 500),
    }


# Engine configuration (compute once at module load)
ENGINE_CONFIG = get_engine_config()
