"""
Entry point: run from backend/ as `python -m src.main <command> [options]`.
"""
import sys

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
