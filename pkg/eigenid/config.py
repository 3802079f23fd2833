from dotenv import load_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict
from typing import Optional
import logging
import os

logger = logging.getLogger(__name__)

ENV_PATH = os.getenv("ENVPATH", "local")  # e.g., 'dev', 'bench', or 'local'
env_file_path = os.path.join("env", f".env.{ENV_PATH}")

# Plain environment wins over the dotenv file; the file only fills gaps.
load_dotenv(env_file_path, override=False)


class Settings(BaseSettings):
    # Engine
    EIGENID_WORKERS: Optional[int] = None
    EIGENID_BATCH_SIZE: int = 64
    EIGENID_DEGENERACY_TOL: float = 1e-12
    EIGENID_BACKEND: str = "householder-ql"

    # Verification
    EIGENID_ORACLE_CAP: int = 200

    # Logging
    LOG_FILE: Optional[str] = None
    LOG_CONSOLE_LEVEL: str = "WARNING"
    LOG_FILE_LEVEL: str = "DEBUG"

    @property
    def default_workers(self) -> int:
        """Worker count used when a config does not name one"""
        if self.EIGENID_WORKERS is not None and self.EIGENID_WORKERS >= 1:
            return self.EIGENID_WORKERS
        return os.cpu_count() or 1

    # Pydantic v2 config
    model_config = SettingsConfigDict(
        env_file=env_file_path,
        env_file_encoding="utf-8",
        env_ignore_empty=True,
        extra="ignore"
    )


settings = Settings()
logger.debug("ENVPATH=%s env_file_path=%s", ENV_PATH, env_file_path)
