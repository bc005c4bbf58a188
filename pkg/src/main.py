"""Command-line entry point: ``python -m src.main <command> ...``."""

import sys
from typing import Optional, Sequence

from src.config import settings
from src.handlers.cli import run
from src.utils.logger import log


def main(argv: Optional[Sequence[str]] = None) -> int:
    log.debug(f"Starting cluster-orbit CLI (environment={settings.environment}, workers={settings.oracle_workers})")
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
