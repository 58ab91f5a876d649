"""Settings and configuration parameters of qdiv."""

import os
from logging import config as logging_config

# Running in debug mode or not?
DEBUG = os.environ.get('DEBUG', False)

# Budgets, overridable per invocation from the command line
DEFAULT_SEED = int(os.environ.get('QDIV_SEED', 0))
DEFAULT_TRIALS = int(os.environ.get('QDIV_TRIALS', 1000))
DEFAULT_SAMPLES = int(os.environ.get('QDIV_SAMPLES', 64))
DEFAULT_MAX_DEGREE = int(os.environ.get('QDIV_MAX_DEGREE', 5))

# Pivot discovery prime for the kernel solver; must be prime
MODULAR_PRIME = int(os.environ.get('QDIV_MODULAR_PRIME', 2147483647))

# Height of sampled rationals: numerators in [-H, H], denominators in [1, H]
SAMPLE_HEIGHT = int(os.environ.get('QDIV_SAMPLE_HEIGHT', 9))


LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'standard': {
            'format': '%(asctime)s [%(levelname)s] %(name)s: %(message)s'
        }
    },
    'handlers': {
        'console': {
            'level': 'DEBUG' if DEBUG else 'INFO',
            'formatter': 'standard',
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
        },
    },
    'loggers': {
        '': {
            'handlers': ['console'],
            'level': 'DEBUG' if DEBUG else 'WARNING',
            'propagate': False
        },
        'qdiv': {
            'handlers': ['console'],
            'level': 'DEBUG' if DEBUG else 'INFO',
            'propagate': False
        },
    }
}


logging_config.dictConfig(LOGGING)
