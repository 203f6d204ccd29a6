"""Main entry point for the Hochschild homology toolkit."""

import logging
import sys
from pathlib import Path
from typing import List, Optional

# Add project root to Python path
sys.path.append(str(Path(__file__).parent.parent))

from config.settings import get_settings
from src.cli.jobs import exit_code_for, parse_config, run
from src.cli.report import emit
from src.errors import GWAError

settings = get_settings()


def configure_logging() -> None:
    """Logs go to stderr (and optionally a file); stdout carries the report."""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if settings.log_file:
        Path(settings.log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(settings.log_file))
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
    )


logger = logging.getLogger(__name__)


def main(argv: Optional[List[str]] = None) -> int:
    configure_logging()
    try:
        config = parse_config(sys.argv[1:] if argv is None else argv)
        report, code = run(config)
    except GWAError as e:
        code = exit_code_for(e)
        logger.error(f"{type(e).__name__}: {e} (exit code {code})")
        return code
    sys.stdout.write(emit(report, config.format))
    if config.format == "json":
        sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
