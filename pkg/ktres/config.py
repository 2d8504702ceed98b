"""
Configuration module for the package.

This module loads environment variables and defines the global defaults used
by the command line and the services. Command line flags take precedence.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

DEFAULT_FIELD = os.getenv("KTRES_FIELD", "QQ")
DEFAULT_MAX_DEGREE = int(os.getenv("KTRES_MAX_DEGREE", "6"))
DEFAULT_MAX_LENGTH = int(os.getenv("KTRES_MAX_LENGTH", "10"))
DEFAULT_SEED = int(os.getenv("KTRES_SEED", "0"))
MAX_WORKERS = int(os.getenv("KTRES_MAX_WORKERS", "4"))
TREE_CACHE_SIZE = int(os.getenv("KTRES_TREE_CACHE_SIZE", "65536"))
LOG_LEVEL = os.getenv("KTRES_LOG_LEVEL", "INFO")
FIXTURES_DIR = Path(
    os.getenv("KTRES_FIXTURES_DIR", str(Path(__file__).parent / "fixtures"))
)
