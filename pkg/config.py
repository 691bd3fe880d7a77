import os
import logging
from dataclasses import dataclass, replace

from dotenv import load_dotenv

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


@dataclass(frozen=True)
class Settings:
    """Runtime settings shared by the CLI and the report service"""
    threads: int = 1
    tol: float = 1e-10
    max_iterations: int = 100000
    dense_budget: int = 10 ** 7
    log_level: str = 'WARNING'

    @classmethod
    def from_env(cls) -> 'Settings':
        """
        Build settings from HYPERTEN_* environment variables (a .env file is honoured)

        Returns:
            Settings: defaults overridden by whatever the environment declares
        """
        load_dotenv()
        defaults = cls()
        return cls(
            threads=max(1, int(os.environ.get('HYPERTEN_THREADS', defaults.threads))),
            tol=float(os.environ.get('HYPERTEN_TOL', defaults.tol)),
            max_iterations=int(os.environ.get('HYPERTEN_MAX_ITERS', defaults.max_iterations)),
            dense_budget=int(os.environ.get('HYPERTEN_DENSE_BUDGET', defaults.dense_budget)),
            log_level=os.environ.get('HYPERTEN_LOG_LEVEL', defaults.log_level).upper(),
        )

    def override(self, **changes) -> 'Settings':
        """Return a copy with the non-None keyword values applied"""
        return replace(self, **{key: value for key, value in changes.items() if value is not None})


def configure_logging(level: str) -> None:
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format=LOG_FORMAT)
