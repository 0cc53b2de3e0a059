from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process-wide settings, loaded from L2BOOST_* environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="L2BOOST_",
        env_file=".env",
        case_sensitive=True,
        extra="ignore",
    )

    # Application
    APP_NAME: str = "l2boost"
    VERSION: str = "1.0.0"

    # Logging
    LOG_LEVEL: str = "WARNING"

    # Execution
    THREADS: int = Field(1, ge=1)
    OUTPUT_DIR: str = "."

    # Reproducibility; recorded in every report header
    RNG_ALGORITHM: str = "PCG64"


settings = Settings()
