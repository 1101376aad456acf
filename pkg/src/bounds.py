#!/usr/bin/env python3
"""
Enumeration Bounds Manager
Loads the exhaustive-enumeration caps and enforces them as hard errors.
"""

import json
import logging
from typing import Dict, Optional, Any
from dataclasses import dataclass, field

from src.config import Config

logger = logging.getLogger(__name__)

DEFAULT_BOUNDS: Dict[str, Any] = {
    "quotient": {"max_size": 12},
    "genocchi": {"max_n": 5},
    "grassmannian": {"max_ambient": {"2": 8, "3": 6, "default": 4}},
    "degflag": {"max_n": {"2": 4, "3": 3, "default": 2}},
    "quiver": {"max_n": {"2": 3, "3": 3, "default": 2}},
    "symplectic": {"max_m": {"2": 2, "3": 2, "default": 1}},
    "schubert_scan": {"max_ambient": {"2": 6, "3": 4, "default": 2}},
}


class BoundExceededError(ValueError):
    """An exhaustive enumeration was requested beyond its configured cap."""


@dataclass
class PrimeTable:
    values: Dict[str, int] = field(default_factory=dict)

    def for_prime(self, p: int) -> int:
        return int(self.values.get(str(p), self.values.get('default', 0)))


@dataclass
class EnumerationBounds:
    quotient_max_size: int
    genocchi_max_n: int
    grassmannian_max_ambient: PrimeTable
    degflag_max_n: PrimeTable
    quiver_max_n: PrimeTable
    symplectic_max_m: PrimeTable
    schubert_scan_max_ambient: PrimeTable


class BoundsManager:
    def __init__(self, config_path: Optional[str] = None):
        self.config_path = config_path or Config.BOUNDS_CONFIG_PATH
        self.config = self._load_config()
        self.bounds = self._parse_bounds()

    def _load_config(self) -> Dict:
        """Load bounds from JSON, falling back to the built-in table per section"""
        merged = json.loads(json.dumps(DEFAULT_BOUNDS))
        try:
            loaded = Config.load_bounds_config(self.config_path)
            logger.debug(f"Loaded enumeration bounds from {self.config_path}")
        except FileNotFoundError:
            logger.warning(f"Bounds file not found: {self.config_path}; using built-in bounds")
            return merged
        except ValueError as e:
            logger.error(f"{e}; using built-in bounds")
            return merged

        for section, values in loaded.items():
            if isinstance(values, dict) and section in merged:
                merged[section].update(values)
            else:
                merged[section] = values
        return merged

    def _parse_bounds(self) -> EnumerationBounds:
        c = self.config
        return EnumerationBounds(
            quotient_max_size=int(c['quotient']['max_size']),
            genocchi_max_n=int(c['genocchi']['max_n']),
            grassmannian_max_ambient=PrimeTable(c['grassmannian']['max_ambient']),
            degflag_max_n=PrimeTable(c['degflag']['max_n']),
            quiver_max_n=PrimeTable(c['quiver']['max_n']),
            symplectic_max_m=PrimeTable(c['symplectic']['max_m']),
            schubert_scan_max_ambient=PrimeTable(c['schubert_scan']['max_ambient']),
        )

    def check_quotient(self, size: int):
        if size > self.bounds.quotient_max_size:
            raise BoundExceededError(
                f"quotient enumeration of Sym_{size} exceeds cap 2n <= {self.bounds.quotient_max_size}")

    def check_genocchi(self, max_n: int):
        if max_n > self.bounds.genocchi_max_n:
            raise BoundExceededError(f"genocchi max_n={max_n} exceeds cap {self.bounds.genocchi_max_n}")

    def check_grassmannian(self, m: int, p: int):
        cap = self.bounds.grassmannian_max_ambient.for_prime(p)
        if m > cap:
            raise BoundExceededError(f"Grassmannian enumeration in F_{p}^{m} exceeds cap m <= {cap}")

    def check_degflag(self, n: int, p: int):
        cap = self.bounds.degflag_max_n.for_prime(p)
        if n > cap:
            raise BoundExceededError(f"degenerate flag enumeration n={n} at p={p} exceeds cap n <= {cap}")

    def check_quiver(self, n: int, p: int):
        cap = self.bounds.quiver_max_n.for_prime(p)
        if n > cap:
            raise BoundExceededError(f"quiver collection enumeration n={n} at p={p} exceeds cap n <= {cap}")

    def check_symplectic(self, m: int, p: int):
        cap = self.bounds.symplectic_max_m.for_prime(p)
        if m > cap:
            raise BoundExceededError(f"symplectic enumeration m={m} at p={p} exceeds cap m <= {cap}")

    def allows_schubert_scan(self, ambient: int, p: int) -> bool:
        return ambient <= self.bounds.schubert_scan_max_ambient.for_prime(p)

    def reload_config(self):
        self.config = self._load_config()
        self.bounds = self._parse_bounds()
        logger.info("Enumeration bounds reloaded")


_default_manager: Optional[BoundsManager] = None


def get_bounds() -> BoundsManager:
    """Process-wide bounds manager, loaded on first use"""
    global _default_manager
    if _default_manager is None:
        _default_manager = BoundsManager()
    return _default_manager


def set_bounds(manager: Optional[BoundsManager]):
    global _default_manager
    _default_manager = manager
