"""
Entry point for the command line.

This script loads environment variables, initializes the logging system and
dispatches to the ``ktres`` subcommands.
"""
import logging
import sys

from dotenv import load_dotenv

load_dotenv()

from ktres.cli import LOG_FORMAT, main  # noqa: E402
from ktres.config import LOG_LEVEL  # noqa: E402

logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)
logger = logging.getLogger(__name__)


if __name__ == "__main__":
    logger.debug("Starting ktres")
    sys.exit(main())
