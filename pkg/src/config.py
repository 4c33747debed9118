"""
Configuration and logging setup
"""
import logging
import os
from pathlib import Path

import yaml
from dotenv import load_dotenv

CONFIG_PATH = Path(__file__).resolve().parent.parent / "config.yaml"

DEFAULTS = {
    "suite": {"seed": 42, "trials": 20, "max_deg": 2, "report_dir": "reports"},
    "solver": {"window_margin": 2, "escalations": 2, "escalation_step": 2},
    "generator": {"terms_per_component": 1, "max_numerator": 3, "pi_exponents": [0, 1]},
    "logging": {
        "level": "WARNING",
        "format": "%(asctime)s %(levelname)s %(name)s: %(message)s",
    },
    "paths": {"lie_dir": "data/lie"},
}

load_dotenv()


def load_config(path=None):
    """Load configuration from config.yaml, filling in defaults"""
    config_file = Path(path) if path else CONFIG_PATH
    loaded = {}
    if config_file.exists():
        with open(config_file, "r") as f:
            loaded = yaml.safe_load(f) or {}
    config = {}
    for section, values in DEFAULTS.items():
        config[section] = {**values, **(loaded.get(section) or {})}
    for section, values in loaded.items():
        config.setdefault(section, values)
    return config


def setup_logging(level=None, config=None):
    """Configure the root logger once"""
    config = config or load_config()
    level = level or os.getenv("VALCONV_LOG_LEVEL") or config["logging"]["level"]
    logging.basicConfig(level=getattr(logging, str(level).upper(), logging.WARNING),
                        format=config["logging"]["format"])


def color_enabled():
    """ANSI colour is on unless VALCONV_COLOR is set to a false-like value"""
    value = os.getenv("VALCONV_COLOR", "1").strip().lower()
    return value not in ("0", "false", "no", "off")
