"""Configuration settings for the Hochschild homology toolkit."""

from pydantic_settings import BaseSettings
from typing import List, Optional, Tuple
from functools import lru_cache


def _parse_range(text: str) -> Tuple[int, int]:
    """Parse an inclusive integer range written as ``lo..hi``."""
    lo, _, hi = text.partition("..")
    if not hi:
        value = int(lo)
        return value, value
    return int(lo), int(hi)


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables (prefix GWA_)."""

    # System Settings
    log_level: str = "INFO"
    log_file: Optional[str] = None

    # Scalars
    max_cyclotomic_order: int = 64

    # Job defaults
    default_truncations: str = "16,20,24"
    default_weights: str = "-3..3"
    default_degrees: str = "0..4"
    default_jobs: Optional[int] = None

    @property
    def default_truncations_list(self) -> List[int]:
        """Parse truncation degrees from comma-separated string."""
        return [int(value.strip()) for value in self.default_truncations.split(",") if value.strip()]

    @property
    def default_weights_range(self) -> Tuple[int, int]:
        return _parse_range(self.default_weights)

    @property
    def default_degrees_range(self) -> Tuple[int, int]:
        return _parse_range(self.default_degrees)

    # Engine Settings
    boundary_margin_factor: int = 2
    stabilization_windows: int = 3

    # Identity validation bounds
    identity_h_degree_bound: int = 8
    identity_degree_bound: int = 5
    identity_weight_bound: int = 4
    identity_exponent_bound: int = 6

    # Reporting
    report_schema: str = "gwa-hh/1"

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        env_prefix = "GWA_"
        case_sensitive = False

    def boundary_margin(self, degree_a: int, order: int) -> int:
        """Extra h-degree allowed for preimages of boundaries."""
        return self.boundary_margin_factor * (degree_a + order)


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
