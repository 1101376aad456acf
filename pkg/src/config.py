import os
from dotenv import load_dotenv
from typing import Dict, Any
import json

load_dotenv()

PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

class Config:
    # Result cache
    CACHE_DIR = os.getenv("DEGFLAG_CACHE", ".degflag_cache")

    # Enumeration
    THREADS = int(os.getenv("DEGFLAG_THREADS", "1"))
    BOUNDS_CONFIG_PATH = os.getenv("DEGFLAG_BOUNDS_PATH", os.path.join(PROJECT_ROOT, "config", "enumeration_bounds.json"))
    TORUS_SAMPLES = int(os.getenv("DEGFLAG_TORUS_SAMPLES", "64"))
    TORUS_SEED = int(os.getenv("DEGFLAG_TORUS_SEED", "20130601"))

    # Type C: "alternating" or "constant" signs on the antidiagonal block of E
    SYMPLECTIC_SIGNS = os.getenv("DEGFLAG_SYMPLECTIC_SIGNS", "alternating")

    # Tests
    SLOW_TESTS = os.getenv("DEGFLAG_SLOW_TESTS", "0").lower() in ("1", "true", "yes")

    # Logging
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")

    @classmethod
    def validate(cls) -> bool:
        if cls.THREADS < 1:
            raise ValueError("DEGFLAG_THREADS must be a positive integer")
        if cls.SYMPLECTIC_SIGNS not in ("alternating", "constant"):
            raise ValueError(f"DEGFLAG_SYMPLECTIC_SIGNS must be 'alternating' or 'constant', got {cls.SYMPLECTIC_SIGNS!r}")
        if cls.TORUS_SAMPLES < 1:
            raise ValueError("DEGFLAG_TORUS_SAMPLES must be a positive integer")
        return True

    @classmethod
    def load_bounds_config(cls, config_path: str = None) -> Dict[str, Any]:
        config_path = config_path or cls.BOUNDS_CONFIG_PATH
        try:
            with open(config_path, 'r') as f:
                return json.load(f)
        except FileNotFoundError:
            raise FileNotFoundError(f"Enumeration bounds file not found: {config_path}")
        except json.JSONDecodeError:
            raise ValueError(f"Invalid JSON in enumeration bounds: {config_path}")

# Validate configuration on import (only if not in testing)
if __name__ != "__main__":
    try:
        Config.validate()
    except Exception:
        # Don't fail on import; the CLI re-validates and reports
        pass
