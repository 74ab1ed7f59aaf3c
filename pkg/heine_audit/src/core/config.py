from fractions import Fraction
from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .errors import UsageError

PROJECT_DIR = Path(__file__).resolve().parents[2]
MIN_ORDER = 2


def parse_rational(text: str) -> Fraction:
    """Parse NUM/DEN (or a plain integer) into an exact rational"""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"malformed rational {text!r}: expected NUM/DEN") from e
    return value


class Settings(BaseSettings):
    degree: int = 8
    log_level: str = "INFO"
    golden_path: Path = PROJECT_DIR / "golden" / "verdicts.yaml"
    workers: int = 1
    q_check: Optional[str] = None

    model_config = SettingsConfigDict(env_prefix="QAUDIT_", env_file=".env", extra="ignore")


class RunConfig(BaseModel):
    order: int = 8
    ids: Optional[List[str]] = None
    n_values: Optional[List[int]] = None
    k_values: Optional[List[int]] = None
    format: Literal["text", "json", "csv"] = "text"
    output: Optional[Path] = None
    q_check: Optional[Fraction] = None
    workers: int = 1

    @field_validator("order")
    @classmethod
    def _order_is_informative(cls, value: int) -> int:
        if value < MIN_ORDER:
            raise ValueError(f"order must be >= {MIN_ORDER}, got {value}")
        return value

    @field_validator("workers")
    @classmethod
    def _workers_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("workers must be >= 1")
        return value


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Forget the cached settings so the next call re-reads the environment"""
    global _settings
    _settings = None
