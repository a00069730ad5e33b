import os
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator
from sympy import isprime

# Try to load .env file if it exists
load_dotenv()

ENV_PREFIX = "QPRISM_"

# Path setup
BASE_DIR = Path(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
OUTPUT_DIR = os.getenv("QPRISM_OUTPUT_DIR", str(BASE_DIR / "reports"))
LOG_DIR = os.getenv("QPRISM_LOG_DIR", str(BASE_DIR / "logs"))
LOG_LEVEL = os.getenv("QPRISM_LOG_LEVEL", "INFO")

# Arithmetic defaults
DEFAULT_PRIME = int(os.getenv("QPRISM_PRIME", 3))
DEFAULT_PRECISION = int(os.getenv("QPRISM_PRECISION", 32))
DEFAULT_ORDER = int(os.getenv("QPRISM_ORDER", 64))
DEFAULT_LEVEL = int(os.getenv("QPRISM_LEVEL", 1))
DEFAULT_BIVAR_ORDER = int(os.getenv("QPRISM_BIVAR_ORDER", 20))
DEFAULT_SEED = int(os.getenv("QPRISM_SEED", 0))
DEFAULT_WORKERS = int(os.getenv("QPRISM_WORKERS", 1))

# Number of seeded random inputs drawn per randomized check
DEFAULT_SAMPLES = int(os.getenv("QPRISM_SAMPLES", 20))

SUITES = ("qcomb", "padic", "series", "prism", "qlog")

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class RunConfig(BaseModel):
    """Everything a verification run depends on; a fixed config gives a fixed report."""

    prime: int = DEFAULT_PRIME
    precision: int = DEFAULT_PRECISION
    order: int = DEFAULT_ORDER
    level: int = DEFAULT_LEVEL
    bivar_order_q: int = DEFAULT_BIVAR_ORDER
    bivar_order_x: int = DEFAULT_BIVAR_ORDER
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    workers: int = DEFAULT_WORKERS
    suites: List[str] = Field(default_factory=lambda: list(SUITES))
    out: Optional[str] = None

    @field_validator("prime")
    @classmethod
    def prime_must_be_prime(cls, value: int) -> int:
        if not isprime(value):
            raise ValueError(f"{value} is not prime")
        return value

    @field_validator("precision", "order", "bivar_order_q", "bivar_order_x", "samples", "workers")
    @classmethod
    def must_be_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be at least 1")
        return value

    @field_validator("level")
    @classmethod
    def level_nonnegative(cls, value: int) -> int:
        if value < 0:
            raise ValueError("tower level must be nonnegative")
        return value

    @field_validator("suites")
    @classmethod
    def suites_known(cls, value: List[str]) -> List[str]:
        unknown = [name for name in value if name not in SUITES]
        if unknown:
            raise ValueError(f"unknown suites: {', '.join(unknown)}")
        return sorted(set(value), key=SUITES.index)

    @classmethod
    def from_env(cls, **overrides) -> "RunConfig":
        """Build a config from the environment defaults, then apply non-None overrides."""
        return cls(**{key: value for key, value in overrides.items() if value is not None})


# Create necessary directories
def create_directories():
    Path(OUTPUT_DIR).mkdir(parents=True, exist_ok=True)
    Path(LOG_DIR).mkdir(parents=True, exist_ok=True)


if __name__ == "__main__":
    create_directories()
    print("Configuration loaded and directories created.")
