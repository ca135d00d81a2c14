from pathlib import Path
from pydantic_settings import BaseSettings, SettingsConfigDict


# Repository root: src/mutdiff/core/config.py sits three levels below it
PROJECT_ROOT = Path(__file__).resolve().parents[3]


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=PROJECT_ROOT / ".env", env_file_encoding="utf-8", env_prefix="MUTDIFF_", extra="ignore"
    )

    PROJECT_NAME: str = "mutdiff"
    VERSION: str = "0.1.0"

    LOG_LEVEL: str = "INFO"

    # Detection defaults
    DEFAULT_ND: int = 2
    DEFAULT_ND_MAX: int = 5
    MAX_BLOCKING_ROUNDS: int = 1024

    # Finite domain shared by interpreter and solver
    DEFAULT_INT_MIN: int = -128
    DEFAULT_INT_MAX: int = 127
    SOLVER_TIMEOUT: float = 300.0

    # Interpreter
    MAX_STEPS: int = 1_000_000

    DEFAULT_JOBS: int = 1


settings = Settings()
