"""
Configuration helpers: pydantic validation wrapper, key=value config files and
environment defaults.
"""

import logging
import os

from dotenv import dotenv_values, load_dotenv
from pydantic import ValidationError

from common.errors import ConfigError, MissingInputError

# Set up logging
logger = logging.getLogger(__name__)

DEFAULT_LOG_LEVEL = "INFO"


def build_config(model_cls, **values):
    """Instantiate a pydantic config, turning validation failures into ConfigError."""
    try:
        return model_cls(**values)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or model_cls.__name__}: {err['msg']}"
            for err in e.errors()
        )
        raise ConfigError(f"invalid {model_cls.__name__}: {problems}") from e


def load_environment():
    """Load a .env file from the working directory if present."""
    load_dotenv(override=False)


def read_config_file(path):
    """Read a key=value config file; keys are flag names with '-' mapped to '_'."""
    if not os.path.exists(path):
        raise MissingInputError(f"config file not found: {path}", path=path)
    values = dotenv_values(path)
    config = {}
    for key, value in values.items():
        normalized = key.strip().lstrip("-").replace("-", "_")
        if value is None:
            raise ConfigError(f"config key '{key}' has no value", path=path)
        config[normalized] = value
    logger.info(f"Loaded {len(config)} settings from {path}")
    return config


def default_threads():
    """Worker count: LINKBENCH_THREADS if set, otherwise available cores."""
    value = os.getenv("LINKBENCH_THREADS")
    if value:
        try:
            threads = int(value)
        except ValueError:
            raise ConfigError(f"LINKBENCH_THREADS must be an integer, got '{value}'")
        if threads < 1:
            raise ConfigError("LINKBENCH_THREADS must be >= 1")
        return threads
    return os.cpu_count() or 1


def default_log_level():
    return os.getenv("LINKBENCH_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()
