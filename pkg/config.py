
import os


def _env_float(name, default):
    return float(os.environ.get(name, default))


def _env_bool(name, default):
    return os.environ.get(name, str(default)).strip().lower() in ("1", "true", "yes", "on")


class Config:
    # Dense oracles (materialize_dense, embed) refuse dimensions above this
    ORACLE_CAP = int(os.environ.get("ORACLE_CAP", 1024))
    # Auto mode runs the full register simulation up to this n, fast path above
    REGISTER_MAX_N = int(os.environ.get("REGISTER_MAX_N", 2 ** 12))

    FREQ_THRESHOLD_REL = _env_float("FREQ_THRESHOLD_REL", 1e-12)
    SINGULAR_THRESHOLD_REL = _env_float("SINGULAR_THRESHOLD_REL", 1e-12)
    NORM_TOLERANCE = _env_float("NORM_TOLERANCE", 1e-12)
    ANCILLA_TOLERANCE = _env_float("ANCILLA_TOLERANCE", 1e-12)
    ZERO_PROBABILITY = _env_float("ZERO_PROBABILITY", 1e-26)

    # k = sqrt(max|lambda|) instead of max|lambda|; only valid when max|lambda| <= 1
    LITERAL_SCALE = _env_bool("LITERAL_SCALE", False)

    DEFAULT_SHOTS = int(os.environ.get("DEFAULT_SHOTS", 1000))
    DEFAULT_SEED = int(os.environ["DEFAULT_SEED"]) if os.environ.get("DEFAULT_SEED") else None
    BATCH_WORKERS = int(os.environ.get("BATCH_WORKERS", 4))

    # Logging Configuration
    LOG_FILE = os.path.join(os.path.abspath(os.path.dirname(__file__)), "logs", "toeplitz_sim.log")
    LOG_LEVEL = os.environ.get("LOG_LEVEL", "INFO").upper()


class DevelopmentConfig(Config):
    DEBUG = True
    LOG_LEVEL = "DEBUG"


class ProductionConfig(Config):
    DEBUG = False
    LOG_LEVEL = "INFO"


class TestingConfig(Config):
    DEBUG = True
    LOG_FILE = None
    LOG_LEVEL = "DEBUG"
    DEFAULT_SEED = 1234


config_by_name = {
    "development": DevelopmentConfig,
    "production": ProductionConfig,
    "testing": TestingConfig,
    "default": DevelopmentConfig
}


_selected_name = None


def get_config(name=None):
    """Return the config class selected by name, by select_config or by TOEPLITZ_SIM_CONFIG."""
    name = name or _selected_name or os.environ.get("TOEPLITZ_SIM_CONFIG", "development")
    return config_by_name.get(name, config_by_name["default"])


def select_config(name=None):
    """Pin the profile that later get_config() calls resolve to; None falls back to the environment."""
    global _selected_name
    _selected_name = name
    return get_config()
