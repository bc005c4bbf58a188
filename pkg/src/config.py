"""Configuration management using Pydantic settings."""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", case_sensitive=False, extra="ignore"
    )

    # Application Settings
    environment: str = "development"
    log_level: str = "WARNING"  # Console sink (stderr); stdout carries results only
    log_to_file: bool = False
    log_dir: str = "logs"

    # Parallelism
    oracle_workers: int = 1  # ORACLE_WORKERS; 1 keeps everything in-process
    parallel_chunk_size: int = 64

    # Search limits
    descent_max_steps: int = 10_000
    s344_max_steps: int = 10_000
    default_orbit_bound: int = 1_000
    conic_default_range: int = 6

    @property
    def parallel_enabled(self) -> bool:
        """Check if oracle work should be spread across processes."""
        return self.oracle_workers > 1

    @property
    def is_development(self) -> bool:
        """Check if running in development."""
        return self.environment.lower() == "development"


# Global settings instance
settings = Settings()
