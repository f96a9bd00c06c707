"""
Runtime settings for the q(n) Weyl module toolkit.

Values come from the environment (prefix ``QWEYL_``) or a local ``.env`` file.
Nothing is required; every setting has a default and CLI flags override them.
"""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="QWEYL_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Local Weyl depth doubling stops with DepthOverflowError past this depth
    depth_cap: int = Field(default=24, ge=1)
    # Re-check every linear solve by substitution (switched on by the tests)
    verify_solves: bool = False
    log_level: str = "WARNING"
    # Matrices with at most this many cells are reduced densely
    dense_threshold: int = Field(default=400, ge=0)
    jobs: int = Field(default=1, ge=1)


settings = Settings()
