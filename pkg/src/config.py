import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv

load_dotenv()


@dataclass(frozen=True)
class Settings:
    """
    Runtime settings read from the environment (and an optional .env file).

    Attributes:
        log_level (str): Logging level name for the CLI
        output_dir (str): Directory where result files are written
        seed (int): Default seed for sampled suites
        output_format (str): Default trajectory format, csv or json
        samples (int): Default number of cases per check suite
    """

    log_level: str = "INFO"
    output_dir: str = "output"
    seed: int = 0
    output_format: str = "csv"
    samples: int = 100


def load_settings():
    """
    Build a Settings object from the current environment.

    Returns:
        Settings: settings with environment overrides applied
    """
    return Settings(
        log_level=os.environ.get("POISSON_LOG_LEVEL", "INFO").upper(),
        output_dir=os.environ.get("POISSON_OUTPUT_DIR", "output"),
        seed=int(os.environ.get("POISSON_SEED", "0")),
        output_format=os.environ.get("POISSON_FORMAT", "csv").lower(),
        samples=int(os.environ.get("POISSON_SAMPLES", "100")),
    )


def setup_logging(level="INFO"):
    """Set up logging configuration."""
    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    return logging.getLogger("poisson_motion")
